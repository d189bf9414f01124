//! Certificates: the input, verdict and witness of one command, in a form
//! that can be re-checked offline by recomputation.

use serde_json::{json, Value};

use crate::abelian::{
    abelian_profile, classify_abelian, parse_lattice_set, points_json, validate_verdict,
    AbelianMode, LatticePoint,
};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::nonabelian::{law_check, match_set, validate_form, Law, YoungForm};
use crate::product::{doubling_report, make_subset, partition_square, square, square_size, FiniteSubset};
use crate::search::verify::{recheck_counterexample, verify, Corpus, EvidenceLevel, TheoremId};
use crate::search::{construct_4k5, construction_group};

pub const CERT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub version: String,
    pub command: String,
    pub group: GroupSpec,
    /// The order the verdict was computed under.
    pub order: String,
    pub input: Value,
    pub verdict: String,
    pub witness: Value,
    pub evidence_level: EvidenceLevel,
    pub seed: u64,
    pub counterexamples: Vec<Value>,
}

impl Certificate {
    fn new(command: &str, group: &GroupSpec, input: Value) -> Self {
        Certificate {
            version: CERT_VERSION.into(),
            command: command.into(),
            group: group.clone(),
            order: group.order_name(),
            input,
            verdict: String::new(),
            witness: Value::Null,
            evidence_level: EvidenceLevel::Exact,
            seed: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": self.version,
            "command": self.command,
            "group": serde_json::to_value(&self.group).expect("spec serializes"),
            "order": self.order,
            "input": self.input,
            "verdict": self.verdict,
            "witness": self.witness,
            "evidence_level": self.evidence_level.name(),
            "seed": self.seed,
            "counterexamples": self.counterexamples,
        })
    }

    /// The certificate wrapped with its runtime, which validation ignores.
    pub fn envelope(&self, runtime_ms: u64) -> Value {
        json!({"certificate": self.to_json(), "runtime_ms": runtime_ms})
    }

    /// 1 when a counterexample was found, 3 when undecided, else 0.
    pub fn exit_code(&self) -> i32 {
        if !self.counterexamples.is_empty() {
            1
        } else if self.verdict == "undecided" {
            3
        } else {
            0
        }
    }
}

fn set_input(s: &FiniteSubset) -> Value {
    json!({"set": s.to_json()})
}

fn parse_set(group: &GroupSpec, input: &Value) -> Result<FiniteSubset> {
    let raw = input
        .get("set")
        .ok_or_else(|| Error::Input("input lacks set".into()))?;
    make_subset(group, group.parse_elements(raw)?)
}

fn lattice_group(points: &[LatticePoint]) -> Result<GroupSpec> {
    match points.first() {
        Some(p) => Ok(GroupSpec::lattice(p.len())),
        None => Err(Error::Input("empty set".into())),
    }
}

pub fn certify_square(s: &FiniteSubset) -> Result<Certificate> {
    let mut c = Certificate::new("square", s.spec(), set_input(s));
    let sq = square(s)?;
    let report = if s.len() >= 2 { Some(doubling_report(s)?) } else { None };
    let holds = report.as_ref().is_none_or(|r| r.order_bound_holds);
    c.verdict = if holds { "order_bound_holds" } else { "order_bound_violated" }.into();
    c.witness = json!({"square": sq.to_json(), "doubling": report});
    if !holds {
        c.counterexamples.push(json!({"check": "order_bound", "set": s.to_json()}));
    }
    Ok(c)
}

pub fn certify_classify(points: &[LatticePoint], mode: AbelianMode) -> Result<Certificate> {
    let g = lattice_group(points)?;
    let mut c = Certificate::new(
        "classify",
        &g,
        json!({"set": points_json(points), "mode": mode.name()}),
    );
    match classify_abelian(points, mode) {
        Ok(v) => {
            c.verdict = v.branch.tag().into();
            c.witness = v.to_json();
        }
        Err(Error::Hypothesis(msg)) => {
            c.verdict = "outside_hypothesis".into();
            c.witness = json!({"reason": msg});
        }
        Err(Error::Counterexample(cx)) => {
            c.verdict = "counterexample".into();
            c.counterexamples.push(serde_json::from_str(&cx)?);
        }
        Err(e) => return Err(e),
    }
    Ok(c)
}

pub fn certify_dim(points: &[LatticePoint]) -> Result<Certificate> {
    let g = lattice_group(points)?;
    let mut c = Certificate::new("dim", &g, json!({"set": points_json(points)}));
    match abelian_profile(points) {
        Ok(p) => {
            c.verdict = "inequalities_hold".into();
            c.witness = serde_json::to_value(p)?;
        }
        Err(Error::Counterexample(cx)) => {
            c.verdict = "counterexample".into();
            c.counterexamples.push(serde_json::from_str(&cx)?);
        }
        Err(e) => return Err(e),
    }
    Ok(c)
}

/// Triples with `|S^2| = 7` and sets with `|S^2| = 3|S| - 2` get a young
/// form; a missing triple form is a counterexample, a missing form for
/// larger sets only undecided (the witness search is bounded).
pub fn certify_match(s: &FiniteSubset) -> Result<Certificate> {
    let mut c = Certificate::new("match", s.spec(), set_input(s));
    let k = s.len();
    let q = square_size(s);
    if k < 3 || q != 3 * k - 2 {
        c.verdict = "outside_hypothesis".into();
        c.witness = json!({"k": k, "square_size": q});
        return Ok(c);
    }
    if s.is_commutative() {
        c.verdict = "abelian".into();
        return Ok(c);
    }
    match match_set(s.spec(), s)? {
        Some(f) => {
            c.verdict = f.kind.name().into();
            c.witness = f.to_json();
        }
        None if k == 3 => {
            c.verdict = "unmatched".into();
            c.counterexamples
                .push(json!({"check": "triple_form", "group": s.spec(), "set": s.to_json()}));
        }
        None => c.verdict = "undecided".into(),
    }
    Ok(c)
}

pub fn certify_construct(k: usize) -> Result<Certificate> {
    let g = construction_group();
    let s = construct_4k5(k)?;
    let mut c = Certificate::new("construct", &g, json!({"k": k}));
    let q = square_size(&s);
    let p = partition_square(&s, false)?;
    let exact = q + 5 == 4 * k && p.t_square.len() + 3 == 2 * k && p.cross.len() + 3 == 2 * k && p.is_disjoint;
    c.verdict = if exact { "exact" } else { "inexact" }.into();
    c.witness = json!({
        "set": s.to_json(),
        "square_size": q,
        "expected": 4 * k - 5,
        "partition": {
            "y": p.y.to_json(),
            "t_square_size": p.t_square.len(),
            "cross_size": p.cross.len(),
            "top": p.top.to_json(),
            "is_disjoint": p.is_disjoint,
        },
    });
    if !exact {
        c.counterexamples.push(json!({"check": "construction", "k": k}));
    }
    Ok(c)
}

pub fn certify_laws(
    g: &GroupSpec,
    generators: &[crate::Element],
    law: Law,
    radius: usize,
    samples: u64,
    seed: u64,
) -> Result<Certificate> {
    let mut c = Certificate::new(
        "laws",
        g,
        json!({
            "generators": generators.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "law": law.name(),
            "radius": radius,
            "samples": samples,
        }),
    );
    let r = law_check(g, generators, law, radius, samples, seed)?;
    c.seed = seed;
    c.verdict = if r.holds { "holds" } else { "violated" }.into();
    c.evidence_level = if r.holds { EvidenceLevel::Sampled } else { EvidenceLevel::Exact };
    c.witness = r.to_json();
    Ok(c)
}

/// The report body is the witness; its runtime goes in the envelope.
pub fn certify_verify(theorem: TheoremId, corpus: &Corpus, workers: usize) -> Result<(Certificate, u64)> {
    let r = verify(theorem, corpus, workers)?;
    let group = corpus
        .balls
        .first()
        .or(corpus.sample_balls.first())
        .map(|b| b.spec.clone())
        .unwrap_or_else(|| match theorem {
            TheoremId::T1_9 => construction_group(),
            _ => GroupSpec::lattice(1),
        });
    let mut input = corpus.to_json();
    input["theorem"] = json!(theorem.name());
    let mut c = Certificate::new("verify", &group, input);
    c.verdict = match r.status() {
        "undecided" => "undecided",
        s => s,
    }
    .into();
    c.evidence_level = r.evidence_level;
    c.seed = corpus.seed;
    c.witness = r.to_json();
    c.counterexamples = r.counterexamples.clone();
    Ok((c, r.runtime_ms))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Input(format!("certificate lacks {key}")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| Error::Input(format!("{key} must be a string")))
}

/// Recomputes the certificate from its group and input and compares the
/// verdict, witness and counterexamples. Accepts a bare certificate or its
/// envelope.
pub fn validate_certificate(v: &Value) -> Result<bool> {
    let cert = v.get("certificate").unwrap_or(v);
    let version = str_field(cert, "version")?;
    if version != CERT_VERSION {
        return Err(Error::UnsupportedVersion(version.to_string()));
    }
    let group: GroupSpec = serde_json::from_value(field(cert, "group")?.clone())?;
    let input = field(cert, "input")?;
    let seed = cert.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let fresh = match str_field(cert, "command")? {
        "square" => certify_square(&parse_set(&group, input)?)?,
        "classify" => {
            let pts = parse_lattice_set(field(input, "set")?)?;
            let mode = AbelianMode::parse(str_field(input, "mode")?)?;
            let fresh = certify_classify(&pts, mode)?;
            if fresh.verdict != "counterexample"
                && fresh.verdict != "outside_hypothesis"
                && !validate_verdict(&pts, &cert["witness"])?
            {
                return Ok(false);
            }
            fresh
        }
        "dim" => certify_dim(&parse_lattice_set(field(input, "set")?)?)?,
        "match" => {
            let s = parse_set(&group, input)?;
            let fresh = certify_match(&s)?;
            let w = &cert["witness"];
            if w.get("kind").is_some() && !validate_form(&group, &s, &YoungForm::from_json(&group, w)?)? {
                return Ok(false);
            }
            fresh
        }
        "construct" => certify_construct(
            field(input, "k")?
                .as_u64()
                .ok_or_else(|| Error::Input("k must be an integer".into()))? as usize,
        )?,
        "laws" => {
            let gens = group.parse_elements(field(input, "generators")?)?;
            let law = Law::parse(str_field(input, "law")?)?;
            let radius = field(input, "radius")?.as_u64().unwrap_or(0) as usize;
            let samples = field(input, "samples")?.as_u64().unwrap_or(0);
            certify_laws(&group, &gens, law, radius, samples, seed)?
        }
        "verify" => {
            let theorem = TheoremId::parse(str_field(input, "theorem")?)?;
            let corpus = Corpus::from_json(input)?;
            let cxs = cert
                .get("counterexamples")
                .and_then(Value::as_array)
                .cloned()
                .unwrap_or_default();
            for cx in &cxs {
                if !recheck_counterexample(cx)? {
                    return Ok(false);
                }
            }
            certify_verify(theorem, &corpus, 1)?.0
        }
        other => return Err(Error::Input(format!("unknown command {other:?}"))),
    };
    Ok(fresh.to_json() == *cert)
}
