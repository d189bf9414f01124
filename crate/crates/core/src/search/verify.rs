//! Runs a theorem's claim over a corpus of enumerated or sampled sets and
//! collects per-branch counts and self-contained counterexamples.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::ball::BallSpec;
use super::construct::{construct_4k5, random_two_ap};
use super::enumerate::{Normalization, ProductTable, SquareBound};
use crate::abelian::{ap_cover, classify_abelian, lattice_points, subgroup_rank, AbelianMode, StructureBranch};
use crate::error::{Error, Result};
use crate::group::{Family, GroupSpec};
use crate::nonabelian::{
    bounded_membership, law_check, match_extension_form, match_set, match_triple_form,
    validate_form, Law,
};
use crate::product::{make_subset, partition_square, square_size, FiniteSubset};

pub const CORPUS_VERSION: &str = "1";

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1_5_i,
    T1_1,
    T1_2,
    T1_4,
    T1_5_iv,
    P5_forms,
    P6_forms,
    T1_6_k4,
    T1_8_s1,
    T1_9,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T1_5_i,
        TheoremId::T1_1,
        TheoremId::T1_2,
        TheoremId::T1_4,
        TheoremId::T1_5_iv,
        TheoremId::P5_forms,
        TheoremId::P6_forms,
        TheoremId::T1_6_k4,
        TheoremId::T1_8_s1,
        TheoremId::T1_9,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::T1_5_i => "T1_5_i",
            TheoremId::T1_1 => "T1_1",
            TheoremId::T1_2 => "T1_2",
            TheoremId::T1_4 => "T1_4",
            TheoremId::T1_5_iv => "T1_5_iv",
            TheoremId::P5_forms => "P5_forms",
            TheoremId::P6_forms => "P6_forms",
            TheoremId::T1_6_k4 => "T1_6_k4",
            TheoremId::T1_8_s1 => "T1_8_s1",
            TheoremId::T1_9 => "T1_9",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown theorem id {s:?}")))
    }
}

/// Parameters of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub theorem: Option<TheoremId>,
    /// Balls searched exhaustively.
    pub balls: Vec<BallSpec>,
    /// Balls from which `samples` random `k`-subsets are drawn.
    pub sample_balls: Vec<BallSpec>,
    pub k: (usize, usize),
    pub seed: u64,
    /// Random instances: two-progression sets or sampled subsets.
    pub samples: u64,
    pub law_radius: usize,
    pub law_samples: u64,
    pub bound: Option<SquareBound>,
    pub normalize: Option<Normalization>,
    /// Generator bound of the `ck` mode.
    pub c: Option<u32>,
    /// Excess over `3k - 2` for the metabelian claim.
    pub s: u32,
    pub max_gap: i64,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus {
            theorem: None,
            balls: Vec::new(),
            sample_balls: Vec::new(),
            k: (3, 3),
            seed: 0,
            samples: 0,
            law_radius: 5,
            law_samples: 1000,
            bound: None,
            normalize: None,
            c: None,
            s: 1,
            max_gap: 1_000_000,
        }
    }
}

fn get_u64(v: &Value, key: &str, default: u64) -> Result<u64> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(default),
        Some(x) => x
            .as_u64()
            .ok_or_else(|| Error::Input(format!("{key} must be a non-negative integer"))),
    }
}

impl Corpus {
    pub fn from_json(v: &Value) -> Result<Self> {
        if !v.is_object() {
            return Err(Error::Input("corpus must be a JSON object".into()));
        }
        match v.get("version").and_then(Value::as_str) {
            Some(CORPUS_VERSION) | None => {}
            Some(other) => return Err(Error::UnsupportedVersion(other.to_string())),
        }
        let d = Corpus::default();
        let balls = |key: &str| -> Result<Vec<BallSpec>> {
            match v.get(key) {
                None | Some(Value::Null) => Ok(Vec::new()),
                Some(Value::Array(xs)) => xs.iter().map(BallSpec::from_json).collect(),
                Some(_) => Err(Error::Input(format!("{key} must be a list of balls"))),
            }
        };
        let k = match v.get("k") {
            None | Some(Value::Null) => d.k,
            Some(Value::Number(n)) => {
                let k = n.as_u64().ok_or_else(|| Error::Input("k must be a positive integer".into()))?;
                (k as usize, k as usize)
            }
            Some(Value::Array(r)) if r.len() == 2 => {
                let lo = r[0].as_u64();
                let hi = r[1].as_u64();
                match (lo, hi) {
                    (Some(lo), Some(hi)) if lo <= hi => (lo as usize, hi as usize),
                    _ => return Err(Error::Input("k must be [lo, hi] with lo <= hi".into())),
                }
            }
            Some(_) => return Err(Error::Input("k must be an integer or [lo, hi]".into())),
        };
        Ok(Corpus {
            theorem: match v.get("theorem").and_then(Value::as_str) {
                Some(t) => Some(TheoremId::parse(t)?),
                None => None,
            },
            balls: balls("balls")?,
            sample_balls: balls("sample_balls")?,
            k,
            seed: get_u64(v, "seed", d.seed)?,
            samples: get_u64(v, "samples", d.samples)?,
            law_radius: get_u64(v, "law_radius", d.law_radius as u64)? as usize,
            law_samples: get_u64(v, "law_samples", d.law_samples)?,
            bound: match v.get("bound") {
                None | Some(Value::Null) => None,
                Some(b) => Some(SquareBound::from_json(b)?),
            },
            normalize: match v.get("normalize").and_then(Value::as_str) {
                Some(n) => Some(Normalization::parse(n)?),
                None => None,
            },
            c: match v.get("c") {
                None | Some(Value::Null) => None,
                Some(c) => Some(
                    c.as_u64()
                        .ok_or_else(|| Error::Input("c must be a positive integer".into()))?
                        as u32,
                ),
            },
            s: get_u64(v, "s", d.s as u64)? as u32,
            max_gap: v.get("max_gap").and_then(Value::as_i64).unwrap_or(d.max_gap),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": CORPUS_VERSION,
            "theorem": self.theorem.map(|t| t.name()),
            "balls": self.balls.iter().map(BallSpec::to_json).collect::<Vec<_>>(),
            "sample_balls": self.sample_balls.iter().map(BallSpec::to_json).collect::<Vec<_>>(),
            "k": [self.k.0, self.k.1],
            "seed": self.seed,
            "samples": self.samples,
            "law_radius": self.law_radius,
            "law_samples": self.law_samples,
            "bound": self.bound.map(|b| b.to_json()),
            "normalize": self.normalize.map(|n| n.name()),
            "c": self.c,
            "s": self.s,
            "max_gap": self.max_gap,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceLevel {
    Exact,
    Sampled,
}

impl EvidenceLevel {
    pub fn name(&self) -> &'static str {
        match self {
            EvidenceLevel::Exact => "exact",
            EvidenceLevel::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub corpus_size: u64,
    pub verdicts: BTreeMap<String, u64>,
    pub counterexamples: Vec<Value>,
    /// Per corpus source: what was scanned and how many sets entered.
    pub sources: Vec<Value>,
    pub notes: Vec<String>,
    pub cap_hits: Vec<Value>,
    pub evidence_level: EvidenceLevel,
    pub seed: u64,
    pub runtime_ms: u64,
}

impl VerificationReport {
    fn new(theorem: TheoremId, seed: u64, evidence_level: EvidenceLevel) -> Self {
        VerificationReport {
            theorem,
            corpus_size: 0,
            verdicts: BTreeMap::new(),
            counterexamples: Vec::new(),
            sources: Vec::new(),
            notes: Vec::new(),
            cap_hits: Vec::new(),
            evidence_level,
            seed,
            runtime_ms: 0,
        }
    }

    /// `verified` iff there are no counterexamples and no cap hits.
    pub fn status(&self) -> &'static str {
        if !self.counterexamples.is_empty() {
            "counterexample"
        } else if !self.cap_hits.is_empty() {
            "undecided"
        } else {
            "verified"
        }
    }

    fn absorb(&mut self, o: Outcome) {
        self.corpus_size += 1;
        for t in o.tags {
            *self.verdicts.entry(t).or_default() += 1;
        }
        self.counterexamples.extend(o.counterexamples);
    }

    /// The report body; `runtime_ms` is left out so the body is reproducible.
    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem.name(),
            "status": self.status(),
            "corpus_size": self.corpus_size,
            "verdicts": self.verdicts,
            "counterexamples": self.counterexamples,
            "sources": self.sources,
            "notes": self.notes,
            "cap_hits": self.cap_hits,
            "evidence_level": self.evidence_level.name(),
            "seed": self.seed,
        })
    }
}

/// One checkable claim about a single set.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Check {
    OrderBound,
    ZEquality,
    Classify(AbelianMode),
    TwoApBranch,
    GeneratorBound,
    TripleForm,
    ExtensionForm,
    Young,
    Law {
        law: Law,
        radius: usize,
        samples: u64,
        seed: u64,
        expect_violation: bool,
    },
    Construction,
    /// The standard generators of the ambient are words of length <= 2 in `S`.
    Generation,
}

impl Check {
    fn to_json(&self) -> Value {
        match self {
            Check::OrderBound => json!({"check": "order_bound"}),
            Check::ZEquality => json!({"check": "z_equality"}),
            Check::Classify(m) => json!({"check": "classify", "mode": m.name()}),
            Check::TwoApBranch => json!({"check": "two_ap_branch"}),
            Check::GeneratorBound => json!({"check": "generator_bound"}),
            Check::TripleForm => json!({"check": "triple_form"}),
            Check::ExtensionForm => json!({"check": "extension_form"}),
            Check::Young => json!({"check": "young"}),
            Check::Law {
                law,
                radius,
                samples,
                seed,
                expect_violation,
            } => json!({
                "check": "law",
                "law": law.name(),
                "radius": radius,
                "samples": samples,
                "seed": seed,
                "expect_violation": expect_violation,
            }),
            Check::Construction => json!({"check": "construction"}),
            Check::Generation => json!({"check": "generation"}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let name = v
            .get("check")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Input("counterexample lacks check".into()))?;
        Ok(match name {
            "order_bound" => Check::OrderBound,
            "z_equality" => Check::ZEquality,
            "classify" => Check::Classify(AbelianMode::parse(
                v.get("mode")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Input("classify check lacks mode".into()))?,
            )?),
            "two_ap_branch" => Check::TwoApBranch,
            "generator_bound" => Check::GeneratorBound,
            "triple_form" => Check::TripleForm,
            "extension_form" => Check::ExtensionForm,
            "young" => Check::Young,
            "law" => Check::Law {
                law: Law::parse(
                    v.get("law")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Input("law check lacks law".into()))?,
                )?,
                radius: get_u64(v, "radius", 1)? as usize,
                samples: get_u64(v, "samples", 0)?,
                seed: get_u64(v, "seed", 0)?,
                expect_violation: v
                    .get("expect_violation")
                    .and_then(Value::as_bool)
                    .unwrap_or(false),
            },
            "construction" => Check::Construction,
            "generation" => Check::Generation,
            other => return Err(Error::Input(format!("unknown check {other:?}"))),
        })
    }

    /// Runs the claim on `s`: verdict tags, and whether it is violated.
    fn run(&self, s: &FiniteSubset) -> Result<(Vec<String>, bool)> {
        let g = s.spec();
        let k = s.len();
        let q = square_size(s);
        let one = |t: &str, bad: bool| Ok((vec![t.to_string()], bad));
        match self {
            Check::OrderBound => {
                if q < 2 * k - 1 {
                    one("violation", true)
                } else if q == 2 * k - 1 {
                    one("equality", false)
                } else {
                    one("strict", false)
                }
            }
            Check::ZEquality => {
                let is_ap = ap_cover(&lattice_points(s)?)?.is_some_and(|c| c.length == k.into());
                let equal = q == 2 * k - 1;
                let tag = match (equal, is_ap) {
                    (true, true) => "equality_ap",
                    (false, false) => "strict_non_ap",
                    _ => "mismatch",
                };
                one(tag, equal != is_ap)
            }
            Check::Classify(mode) => match classify_abelian(&lattice_points(s)?, *mode) {
                Ok(v) => one(v.branch.tag(), false),
                Err(Error::Counterexample(_)) => one("counterexample", true),
                Err(Error::Hypothesis(_)) => one("outside_hypothesis", false),
                Err(e) => Err(e),
            },
            Check::TwoApBranch => match classify_abelian(&lattice_points(s)?, AbelianMode::ThreeKMinus3) {
                Ok(v) => {
                    let ok = matches!(v.branch, StructureBranch::TwoProgressions(_));
                    one(&format!("two_ap:{}", v.branch.tag()), !ok)
                }
                Err(Error::Counterexample(_)) | Err(Error::Hypothesis(_)) => one("two_ap:failed", true),
                Err(e) => Err(e),
            },
            Check::GeneratorBound => {
                let b = q as i64 - (3 * k as i64 - 3);
                if b < 1 {
                    return one("no_claim", false);
                }
                if !g.is_abelian() {
                    return one("evidence_only", false);
                }
                let m = subgroup_rank(&lattice_points(s)?)? as i64;
                let ok = m <= b + 2 || (k == 4 && b == 1 && m <= 4);
                one(&format!("b{b}:rank{m}"), !ok)
            }
            Check::TripleForm if k != 3 || q != 7 || s.is_commutative() => one("outside_hypothesis", false),
            Check::ExtensionForm | Check::Young if k < 3 || q != 3 * k - 2 => one("outside_hypothesis", false),
            Check::TripleForm => match match_triple_form(g, s)? {
                Some(f) => {
                    let ok = validate_form(g, s, &f)?;
                    one(f.kind.name(), !ok)
                }
                None => one("unmatched", true),
            },
            Check::ExtensionForm => {
                if s.is_commutative() {
                    return one("abelian", false);
                }
                let has_abelian_t = (0..k).any(|i| s.without(i).is_some_and(|t| t.is_commutative()));
                if !has_abelian_t {
                    return one("outside_hypothesis", false);
                }
                match match_extension_form(g, s)? {
                    Some(f) => {
                        let ok = validate_form(g, s, &f)?;
                        one(f.kind.name(), !ok)
                    }
                    None => one("unmatched", true),
                }
            }
            Check::Young => {
                if s.is_commutative() {
                    return one("abelian", false);
                }
                match match_set(g, s)? {
                    Some(f) => {
                        let ok = validate_form(g, s, &f)?;
                        one(f.kind.name(), !ok)
                    }
                    None => one("unmatched", true),
                }
            }
            Check::Law {
                law,
                radius,
                samples,
                seed,
                expect_violation,
            } => {
                if s.is_commutative() {
                    // <S> is abelian, so every law checked here holds exactly
                    return one(&format!("{}:abelian", law.name()), *expect_violation);
                }
                let r = law_check(g, s.elems(), *law, *radius, *samples, *seed)?;
                let tag = format!("{}:{}", law.name(), if r.holds { "holds" } else { "violated" });
                one(&tag, r.holds == *expect_violation)
            }
            Check::Construction => {
                let p = partition_square(s, false)?;
                let exact = q + 5 == 4 * k
                    && p.t_square.len() + 3 == 2 * k
                    && p.cross.len() + 3 == 2 * k
                    && p.is_disjoint;
                one(if exact { "exact" } else { "inexact" }, !exact)
            }
            Check::Generation => {
                let mut all = true;
                for x in g.standard_generators() {
                    all &= bounded_membership(g, &x, s.elems(), 2)?.is_some();
                }
                one(if all { "generates" } else { "not_generated" }, !all)
            }
        }
    }
}

struct Outcome {
    tags: Vec<String>,
    counterexamples: Vec<Value>,
}

fn counterexample_json(check: &Check, s: &FiniteSubset) -> Value {
    let mut v = check.to_json();
    v["group"] = serde_json::to_value(s.spec()).expect("spec serializes");
    v["set"] = s.to_json();
    v
}

fn run_checks(checks: &[Check], s: &FiniteSubset) -> Result<Outcome> {
    let mut o = Outcome {
        tags: Vec::new(),
        counterexamples: Vec::new(),
    };
    for c in checks {
        let (tags, bad) = c.run(s)?;
        o.tags.extend(tags);
        if bad {
            o.counterexamples.push(counterexample_json(c, s));
        }
    }
    Ok(o)
}

/// Re-runs a serialized counterexample from its own data; true iff the
/// violation reproduces.
pub fn recheck_counterexample(v: &Value) -> Result<bool> {
    let check = Check::from_json(v)?;
    let spec: GroupSpec = serde_json::from_value(
        v.get("group")
            .cloned()
            .ok_or_else(|| Error::Input("counterexample lacks group".into()))?,
    )?;
    let elems = spec.parse_elements(
        v.get("set")
            .ok_or_else(|| Error::Input("counterexample lacks set".into()))?,
    )?;
    let s = make_subset(&spec, elems)?;
    Ok(check.run(&s)?.1)
}

fn default_normalization(theorem: TheoremId, spec: &GroupSpec) -> Normalization {
    match theorem {
        TheoremId::T1_1 | TheoremId::T1_2 | TheoremId::T1_4 | TheoremId::T1_5_iv => match spec.family {
            Family::IntegerLattice(1) => Normalization::TranslateAndPrimitiveRatio,
            _ if spec.is_abelian() => Normalization::TranslateMinToIdentity,
            _ => Normalization::None,
        },
        _ => Normalization::None,
    }
}

fn ck_mode(corpus: &Corpus) -> Result<AbelianMode> {
    match corpus.c {
        Some(c) if c >= 2 => Ok(AbelianMode::CK(c)),
        _ => Err(Error::Input("T1_4 needs an integer c >= 2".into())),
    }
}

/// Default bound for `theorem` and the exact square size it filters to.
fn bound_and_filter(theorem: TheoremId, corpus: &Corpus, k: usize) -> Result<(Option<SquareBound>, Option<usize>)> {
    let s = corpus.s as i64;
    let (bound, filter) = match theorem {
        TheoremId::T1_5_i | TheoremId::T1_9 => (None, None),
        TheoremId::T1_1 => (Some(SquareBound::affine(3, -3)), None),
        TheoremId::T1_2 => (Some(SquareBound::affine(3, -2)), Some(3 * k - 2)),
        TheoremId::T1_4 => {
            let c = match ck_mode(corpus)? {
                AbelianMode::CK(c) => c as i64,
                _ => unreachable!(),
            };
            (Some(SquareBound::affine(c + 1, -c * (c + 1) / 2 - 1)), None)
        }
        TheoremId::T1_5_iv => (Some(SquareBound::affine(3, 0)), None),
        TheoremId::P5_forms => (Some(SquareBound::affine(0, 7)), Some(7)),
        TheoremId::P6_forms | TheoremId::T1_6_k4 => (Some(SquareBound::affine(3, -2)), Some(3 * k - 2)),
        TheoremId::T1_8_s1 => (
            Some(SquareBound::affine(3, -2 + s)),
            Some((3 * k as i64 - 2 + s) as usize),
        ),
    };
    Ok((corpus.bound.or(bound), filter))
}

fn law(law: Law, corpus: &Corpus, expect_violation: bool) -> Check {
    Check::Law {
        law,
        radius: corpus.law_radius,
        samples: corpus.law_samples,
        seed: corpus.seed,
        expect_violation,
    }
}

fn checks_for(theorem: TheoremId, corpus: &Corpus, spec: &GroupSpec) -> Result<Vec<Check>> {
    Ok(match theorem {
        TheoremId::T1_5_i => {
            let mut c = vec![Check::OrderBound];
            if spec.family == Family::IntegerLattice(1) {
                c.push(Check::ZEquality);
            }
            c
        }
        TheoremId::T1_1 => vec![Check::Classify(AbelianMode::ThreeKMinus3)],
        TheoremId::T1_2 => vec![Check::Classify(AbelianMode::ThreeKMinus2)],
        TheoremId::T1_4 => vec![Check::Classify(ck_mode(corpus)?)],
        TheoremId::T1_5_iv => vec![Check::GeneratorBound],
        TheoremId::P5_forms => vec![Check::TripleForm],
        TheoremId::P6_forms => vec![Check::ExtensionForm],
        TheoremId::T1_6_k4 | TheoremId::T1_8_s1 => {
            let mut c = Vec::new();
            if theorem == TheoremId::T1_6_k4 {
                c.push(Check::Young);
            }
            c.push(law(Law::Metabelian, corpus, false));
            if spec.is_nilpotent() {
                c.push(law(Law::Class2, corpus, false));
            }
            c
        }
        TheoremId::T1_9 => vec![Check::Construction],
    })
}

fn family_label(spec: &GroupSpec) -> Value {
    serde_json::to_value(spec).expect("spec serializes")
}

fn workers_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Input(format!("cannot start workers: {e}")))
}

/// Runs `theorem` over `corpus` on `workers` threads. The report body does
/// not depend on `workers`.
pub fn verify(theorem: TheoremId, corpus: &Corpus, workers: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let evidence = match theorem {
        TheoremId::T1_6_k4 | TheoremId::T1_8_s1 => EvidenceLevel::Sampled,
        _ => EvidenceLevel::Exact,
    };
    let mut report = VerificationReport::new(theorem, corpus.seed, evidence);
    let pool = workers_pool(workers)?;
    if corpus.k.0 < 1 {
        return Err(Error::Input("k must be >= 1".into()));
    }
    if theorem == TheoremId::T1_9 {
        verify_construction(corpus, &mut report, &pool)?;
    } else {
        if corpus.balls.is_empty() && corpus.sample_balls.is_empty() && corpus.samples == 0 {
            return Err(Error::Input(format!("{} needs balls or samples", theorem.name())));
        }
        if theorem == TheoremId::T1_5_iv {
            report
                .notes
                .push("non-abelian sets are counted as evidence_only; generator counts are decided for lattice ambients".into());
        }
        for (bi, b) in corpus.balls.iter().enumerate() {
            exhaustive_source(theorem, corpus, bi, b, &mut report, &pool, workers)?;
        }
        for (bi, b) in corpus.sample_balls.iter().enumerate() {
            sampled_source(theorem, corpus, bi, b, &mut report, &pool)?;
        }
        if theorem == TheoremId::T1_1 && corpus.samples > 0 {
            two_ap_source(corpus, &mut report, &pool)?;
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn table_or_cap(
    b: &BallSpec,
    source: &str,
    bi: usize,
    report: &mut VerificationReport,
) -> Result<Option<ProductTable>> {
    match ProductTable::from_ball(b) {
        Ok(t) => Ok(Some(t)),
        Err(e @ Error::BallCap { .. }) => {
            report.cap_hits.push(json!({
                "source": source,
                "ball": bi,
                "group": family_label(&b.spec),
                "error": e.to_string(),
            }));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn check_sets(
    pool: &rayon::ThreadPool,
    checks: &[Check],
    sets: Vec<FiniteSubset>,
    report: &mut VerificationReport,
) -> Result<()> {
    let outcomes: Vec<Outcome> = pool.install(|| {
        sets.par_iter()
            .map(|s| run_checks(checks, s))
            .collect::<Result<Vec<_>>>()
    })?;
    for o in outcomes {
        report.absorb(o);
    }
    Ok(())
}

fn exhaustive_source(
    theorem: TheoremId,
    corpus: &Corpus,
    bi: usize,
    b: &BallSpec,
    report: &mut VerificationReport,
    pool: &rayon::ThreadPool,
    workers: usize,
) -> Result<()> {
    let Some(t) = table_or_cap(b, "ball", bi, report)? else {
        return Ok(());
    };
    let normalize = corpus
        .normalize
        .unwrap_or_else(|| default_normalization(theorem, &b.spec));
    let checks = checks_for(theorem, corpus, &b.spec)?;
    for k in corpus.k.0..=corpus.k.1.min(t.len()) {
        let (bound, filter) = bound_and_filter(theorem, corpus, k)?;
        let e = t.enumerate(k, bound, normalize, workers)?;
        let sets: Vec<FiniteSubset> = e
            .sets
            .iter()
            .zip(&e.square_sizes)
            .filter(|(_, &q)| filter.is_none_or(|f| q as usize == f))
            .map(|(s, _)| t.subset(s))
            .collect();
        let selected = sets.len();
        report.sources.push(json!({
            "source": "ball",
            "ball": bi,
            "group": family_label(&b.spec),
            "ball_size": t.len(),
            "k": k,
            "normalize": normalize.name(),
            "bound": bound.map(|b| b.to_json()),
            "enumerated": e.len(),
            "selected": selected,
        }));
        if let (0, Some(q)) = (selected, filter) {
            report.notes.push(format!(
                "ball {bi} ({}), k = {k}: no set has |S^2| = {q}",
                b.spec.family_name()
            ));
        }
        check_sets(pool, &checks, sets, report)?;
    }
    Ok(())
}

fn sampled_source(
    theorem: TheoremId,
    corpus: &Corpus,
    bi: usize,
    b: &BallSpec,
    report: &mut VerificationReport,
    pool: &rayon::ThreadPool,
) -> Result<()> {
    let Some(t) = table_or_cap(b, "sample_ball", bi, report)? else {
        return Ok(());
    };
    let checks = checks_for(theorem, corpus, &b.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed);
    rng.set_stream(1 + bi as u64);
    for k in corpus.k.0..=corpus.k.1.min(t.len()) {
        let (bound, filter) = bound_and_filter(theorem, corpus, k)?;
        let mut chosen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for _ in 0..corpus.samples {
            let mut idx: Vec<u32> = sample(&mut rng, t.len(), k).into_iter().map(|i| i as u32).collect();
            idx.sort_unstable();
            let q = t.square_size(&idx);
            let keep = match filter {
                Some(f) => q == f,
                None => bound.is_none_or(|b| q as i64 <= b.limit(k)),
            };
            if keep {
                chosen.insert(idx);
            }
        }
        let sets: Vec<FiniteSubset> = chosen.iter().map(|s| t.subset(s)).collect();
        report.sources.push(json!({
            "source": "sample_ball",
            "ball": bi,
            "group": family_label(&b.spec),
            "ball_size": t.len(),
            "k": k,
            "samples": corpus.samples,
            "selected": sets.len(),
        }));
        if sets.is_empty() {
            report.notes.push(format!(
                "sample ball {bi} ({}), k = {k}: none of {} sampled sets passed the filter",
                b.spec.family_name(),
                corpus.samples
            ));
        }
        check_sets(pool, &checks, sets, report)?;
    }
    Ok(())
}

fn two_ap_source(corpus: &Corpus, report: &mut VerificationReport, pool: &rayon::ThreadPool) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(corpus.seed);
    let mut sets = Vec::with_capacity(corpus.samples as usize);
    let k_lo = corpus.k.0.max(3);
    let k_hi = corpus.k.1.max(k_lo);
    for _ in 0..corpus.samples {
        let k = rng.gen_range(k_lo..=k_hi);
        let split = rng.gen_range(1..k);
        let ratio = rng.gen_range(1..=7i64);
        let min_gap = 2 * k as i64 * ratio + 1;
        let gap = rng.gen_range(min_gap..=corpus.max_gap.max(min_gap));
        sets.push(random_two_ap(k, gap, split, ratio, rng.gen())?);
    }
    report.sources.push(json!({
        "source": "random_two_ap",
        "k": [k_lo, k_hi],
        "samples": corpus.samples,
        "max_gap": corpus.max_gap,
    }));
    check_sets(pool, &[Check::TwoApBranch], sets, report)
}

fn verify_construction(corpus: &Corpus, report: &mut VerificationReport, pool: &rayon::ThreadPool) -> Result<()> {
    let lo = corpus.k.0.max(3);
    let sets = (lo..=corpus.k.1).map(construct_4k5).collect::<Result<Vec<_>>>()?;
    report.sources.push(json!({"source": "construction", "k": [lo, corpus.k.1]}));
    let checks = [
        Check::Construction,
        Check::Generation,
        law(Law::Metabelian, corpus, true),
    ];
    check_sets(pool, &checks, sets, report)?;
    Ok(())
}
