//! Additive structure of finite subsets of `Z^m`: subgroup rank, Freiman
//! dimension, covers by one or two arithmetic progressions, and the
//! classification checks for small doubling in the abelian case.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{bigint_json, parse_bigint, Element, Family};
use crate::product::FiniteSubset;

pub type LatticePoint = Vec<BigInt>;

/// Coordinates of a subset of an integer lattice, in the subset's order.
pub fn lattice_points(s: &FiniteSubset) -> Result<Vec<LatticePoint>> {
    if !matches!(s.spec().family, Family::IntegerLattice(_)) {
        return Err(Error::Precondition(format!(
            "additive structure needs an integer lattice, got {}",
            s.spec().family_name()
        )));
    }
    Ok(s.elems()
        .iter()
        .map(|e| e.as_vector().expect("lattice element").to_vec())
        .collect())
}

/// Sorted, deduplicated lattice points from small integers.
pub fn points(raw: &[&[i64]]) -> Vec<LatticePoint> {
    let mut v: Vec<LatticePoint> = raw
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    v.sort();
    v.dedup();
    v
}

fn check_points(s: &[LatticePoint], min_len: usize) -> Result<usize> {
    if s.len() < min_len {
        return Err(Error::Precondition(format!("needs at least {min_len} points")));
    }
    let m = s[0].len();
    if s.iter().any(|p| p.len() != m) {
        return Err(Error::Precondition("points of mixed dimension".into()));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "points must be distinct and in ascending lexicographic order".into(),
        ));
    }
    Ok(m)
}

/// Rank of the subgroup of `Z^m` spanned by `rows`, by integer row reduction
/// (Euclidean steps on each pivot column, as in a Hermite normal form).
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let Some(ncols) = m.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        loop {
            let pivot = (rank..m.len())
                .filter(|&r| !m[r][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(p) = pivot else { break };
            m.swap(rank, p);
            let (head, tail) = m.split_at_mut(rank + 1);
            let prow = &head[rank];
            let mut clean = true;
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = &row[col] / &prow[col];
                for (x, y) in row.iter_mut().zip(prow) {
                    *x -= &q * y;
                }
                if !row[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                rank += 1;
                break;
            }
        }
    }
    rank
}

/// `m(S)`: the rank of `<S>`.
pub fn subgroup_rank(s: &[LatticePoint]) -> Result<usize> {
    check_points(s, 1)?;
    Ok(integer_rank(s))
}

/// Sums `s_i + s_j` (`i <= j`) grouped by value.
fn sum_classes(s: &[LatticePoint]) -> HashMap<Vec<BigInt>, Vec<(usize, usize)>> {
    let mut sums: HashMap<Vec<BigInt>, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..s.len() {
        for j in i..s.len() {
            let v: Vec<BigInt> = s[i].iter().zip(&s[j]).map(|(a, b)| a + b).collect();
            sums.entry(v).or_default().push((i, j));
        }
    }
    sums
}

/// `|S + S|`.
pub fn sumset_size(s: &[LatticePoint]) -> usize {
    sum_classes(s).len()
}

fn relation_rank(k: usize, sums: &HashMap<Vec<BigInt>, Vec<(usize, usize)>>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for pairs in sums.values() {
        let (p, q) = pairs[0];
        for &(i, j) in &pairs[1..] {
            let mut v = vec![0i64; k];
            v[i] += 1;
            v[j] += 1;
            v[p] -= 1;
            v[q] -= 1;
            rows.push(v.into_iter().map(BigInt::from).collect());
        }
    }
    rows.sort();
    rows.dedup();
    integer_rank(&rows)
}

/// `d(S) = (k - 1) - rank V`, with `V` spanned by `e_i + e_j - e_p - e_q` over
/// all coincidences `s_i + s_j = s_p + s_q`.
pub fn freiman_dimension(s: &[LatticePoint]) -> Result<usize> {
    check_points(s, 2)?;
    let sums = sum_classes(s);
    Ok(s.len() - 1 - relation_rank(s.len(), &sums))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AbelianProfile {
    pub k: usize,
    pub rank_m: usize,
    pub freiman_d: usize,
    pub square_size: usize,
}

impl AbelianProfile {
    /// `m <= d + 1 <= k` and `|2S| >= (d+1)k - d(d+1)/2`.
    pub fn inequalities_hold(&self) -> bool {
        let (k, m, d, sq) = (self.k, self.rank_m, self.freiman_d, self.square_size);
        m <= d + 1 && d < k && sq + d * (d + 1) / 2 >= (d + 1) * k
    }
}

pub fn abelian_profile(s: &[LatticePoint]) -> Result<AbelianProfile> {
    check_points(s, 2)?;
    let sums = sum_classes(s);
    let profile = AbelianProfile {
        k: s.len(),
        rank_m: integer_rank(s),
        freiman_d: s.len() - 1 - relation_rank(s.len(), &sums),
        square_size: sums.len(),
    };
    if !profile.inequalities_hold() {
        return Err(Error::Counterexample(
            json!({"check": "abelian_profile", "set": points_json(s), "profile": profile})
                .to_string(),
        ));
    }
    Ok(profile)
}

pub fn points_json(s: &[LatticePoint]) -> Value {
    Value::Array(s.iter().map(|p| point_json(p)).collect())
}

fn point_json(p: &[BigInt]) -> Value {
    Value::Array(p.iter().map(bigint_json).collect())
}

fn parse_point(v: &Value) -> Result<LatticePoint> {
    match v {
        Value::Array(xs) => xs.iter().map(parse_bigint).collect(),
        _ => Ok(vec![parse_bigint(v)?]),
    }
}

fn parse_points(v: &Value) -> Result<Vec<LatticePoint>> {
    v.as_array()
        .ok_or_else(|| Error::Input("expected an array of lattice points".into()))?
        .iter()
        .map(parse_point)
        .collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(t: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| t * x).collect()
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `lambda` with `d = lambda * t`, if it exists. `t` must be nonzero.
fn multiple_of(d: &[BigInt], t: &[BigInt]) -> Option<BigInt> {
    let j = t.iter().position(|x| !x.is_zero())?;
    let (q, r) = d[j].div_rem(&t[j]);
    if !r.is_zero() {
        return None;
    }
    (scale(&q, t).as_slice() == d).then_some(q)
}

/// `v / gcd(v)`, sign-normalised so its first nonzero entry is positive.
fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if first_neg { -g } else { g };
    v.iter().map(|x| x / &g).collect()
}

/// `{base, base + ratio, ..., base + (length-1) ratio}` containing `S`;
/// `positions[i]` is the index of the i-th point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APCover {
    pub base: LatticePoint,
    pub ratio: LatticePoint,
    pub length: BigInt,
    pub positions: Vec<BigInt>,
}

impl APCover {
    pub fn to_json(&self) -> Value {
        json!({
            "base": point_json(&self.base),
            "ratio": point_json(&self.ratio),
            "length": bigint_json(&self.length),
            "positions": self.positions.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Input(format!("progression cover lacks {name:?}")))
        };
        Ok(APCover {
            base: parse_point(field("base")?)?,
            ratio: parse_point(field("ratio")?)?,
            length: parse_bigint(field("length")?)?,
            positions: field("positions")?
                .as_array()
                .ok_or_else(|| Error::Input("positions must be an array".into()))?
                .iter()
                .map(parse_bigint)
                .collect::<Result<_>>()?,
        })
    }

    /// True iff `members` sit at the recorded positions of this progression.
    pub fn covers(&self, members: &[&LatticePoint]) -> bool {
        self.ratio.iter().any(|x| !x.is_zero())
            && self.length >= BigInt::one()
            && self.positions.len() == members.len()
            && members.iter().zip(&self.positions).all(|(p, i)| {
                !i.is_negative()
                    && i < &self.length
                    && add(&self.base, &scale(i, &self.ratio)) == **p
            })
    }
}

/// The shortest progression containing `S` when `S - min S` spans a rank-1
/// lattice; its ratio generates that lattice.
pub fn ap_cover(s: &[LatticePoint]) -> Result<Option<APCover>> {
    check_points(s, 2)?;
    Ok(ap_cover_of(s))
}

fn ap_cover_of(s: &[LatticePoint]) -> Option<APCover> {
    let base = &s[0];
    let dir = primitive(&sub(&s[1], base));
    let mut ts = Vec::with_capacity(s.len());
    for p in s {
        ts.push(multiple_of(&sub(p, base), &dir)?);
    }
    let g = ts.iter().fold(BigInt::zero(), |acc, t| acc.gcd(t));
    let positions: Vec<BigInt> = ts.iter().map(|t| t / &g).collect();
    let length = positions.iter().max().expect("nonempty") + 1;
    Some(APCover {
        base: base.clone(),
        ratio: scale(&g, &dir),
        length,
        positions,
    })
}

/// Two progressions with a common ratio; `membership[i]` says which one
/// holds the i-th point (0 for `first`, which contains `min S`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoAPCover {
    pub first: APCover,
    pub second: APCover,
    pub shared_ratio: LatticePoint,
    pub membership: Vec<u8>,
}

impl TwoAPCover {
    pub fn length_sum(&self) -> BigInt {
        &self.first.length + &self.second.length
    }

    pub fn to_json(&self) -> Value {
        json!({
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "shared_ratio": point_json(&self.shared_ratio),
            "membership": self.membership,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Input(format!("two-progression cover lacks {name:?}")))
        };
        let membership = field("membership")?
            .as_array()
            .ok_or_else(|| Error::Input("membership must be an array".into()))?
            .iter()
            .map(|x| match x.as_u64() {
                Some(b @ 0..=1) => Ok(b as u8),
                _ => Err(Error::Input("membership entries are 0 or 1".into())),
            })
            .collect::<Result<_>>()?;
        Ok(TwoAPCover {
            first: APCover::from_json(field("first")?)?,
            second: APCover::from_json(field("second")?)?,
            shared_ratio: parse_point(field("shared_ratio")?)?,
            membership,
        })
    }

    /// Re-checks the cover against `S` and the required total length.
    pub fn covers(&self, s: &[LatticePoint], required_length_sum: &BigInt) -> bool {
        if self.membership.len() != s.len()
            || self.first.ratio != self.shared_ratio
            || self.second.ratio != self.shared_ratio
            || &self.length_sum() != required_length_sum
        {
            return false;
        }
        let part = |b: u8| -> Vec<&LatticePoint> {
            s.iter()
                .zip(&self.membership)
                .filter(|(_, &m)| m == b)
                .map(|(p, _)| p)
                .collect()
        };
        let (a, b) = (part(0), part(1));
        !a.is_empty() && !b.is_empty() && self.first.covers(&a) && self.second.covers(&b)
    }
}

fn block_cover(members: &[&LatticePoint], ratio: &[BigInt]) -> APCover {
    let base = members[0].clone();
    let positions: Vec<BigInt> = members
        .iter()
        .map(|p| multiple_of(&sub(p, &base), ratio).expect("same class"))
        .collect();
    let length = positions.last().expect("nonempty") + 1;
    APCover {
        base,
        ratio: ratio.to_vec(),
        length,
        positions,
    }
}

/// Candidate ratios: all pairwise differences (oriented positive), ordered
/// by squared Euclidean norm, then lexicographically.
fn candidate_ratios(s: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut c: Vec<(BigInt, LatticePoint)> = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            let d = sub(&s[j], &s[i]);
            let n: BigInt = d.iter().map(|x| x * x).sum();
            c.push((n, d));
        }
    }
    c.sort();
    c.dedup();
    c.into_iter().map(|(_, d)| d).collect()
}

/// Splits `S` into two progressions with a common ratio whose minimal
/// lengths sum to at most `required_length_sum`; the second one is extended
/// so the sum is exact. Both parts are nonempty.
pub fn two_ap_cover(s: &[LatticePoint], required_length_sum: &BigInt) -> Result<Option<TwoAPCover>> {
    check_points(s, 2)?;
    for t in candidate_ratios(s) {
        if let Some(c) = two_ap_with_ratio(s, &t, required_length_sum) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn two_ap_with_ratio(s: &[LatticePoint], t: &[BigInt], required: &BigInt) -> Option<TwoAPCover> {
    let mut class_of = vec![0u8; s.len()];
    let mut reps: Vec<&LatticePoint> = vec![&s[0]];
    for (i, p) in s.iter().enumerate().skip(1) {
        match reps.iter().position(|r| multiple_of(&sub(p, r), t).is_some()) {
            Some(c) => class_of[i] = c as u8,
            None if reps.len() == 2 => return None,
            None => {
                class_of[i] = 1;
                reps.push(p);
            }
        }
    }
    let finish = |membership: Vec<u8>| -> Option<TwoAPCover> {
        let pick = |b: u8| -> Vec<&LatticePoint> {
            s.iter()
                .zip(&membership)
                .filter(|(_, &m)| m == b)
                .map(|(p, _)| p)
                .collect()
        };
        let first = block_cover(&pick(0), t);
        let mut second = block_cover(&pick(1), t);
        let sum = &first.length + &second.length;
        if &sum > required {
            return None;
        }
        second.length += required - sum;
        Some(TwoAPCover {
            first,
            second,
            shared_ratio: t.to_vec(),
            membership,
        })
    };
    if reps.len() == 2 {
        return finish(class_of);
    }
    // one class: a prefix/suffix split; longer prefixes are lexicographically smaller
    (1..s.len()).rev().find_map(|cut| {
        let membership: Vec<u8> = (0..s.len()).map(|i| u8::from(i >= cut)).collect();
        finish(membership)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianMode {
    /// `|S^2| <= 3|S| - 3`.
    ThreeKMinus3,
    /// `|S^2| = 3|S| - 2`.
    ThreeKMinus2,
    /// `|S^2| < (c+1)|S| - c(c+1)/2`.
    CK(u32),
}

impl AbelianMode {
    pub fn name(&self) -> String {
        match self {
            AbelianMode::ThreeKMinus3 => "3k3".into(),
            AbelianMode::ThreeKMinus2 => "3k2".into(),
            AbelianMode::CK(c) => format!("ck:{c}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "3k3" => Ok(AbelianMode::ThreeKMinus3),
            "3k2" => Ok(AbelianMode::ThreeKMinus2),
            _ => s
                .strip_prefix("ck:")
                .and_then(|c| c.parse().ok())
                .map(AbelianMode::CK)
                .ok_or_else(|| Error::Input(format!("unknown mode {s:?}"))),
        }
    }

    /// Whether `(k, |S^2|)` satisfies the mode's hypothesis.
    pub fn hypothesis(&self, k: usize, square: usize) -> bool {
        let (k, sq) = (k as i64, square as i64);
        match *self {
            AbelianMode::ThreeKMinus3 => sq <= 3 * k - 3,
            AbelianMode::ThreeKMinus2 => sq == 3 * k - 2,
            AbelianMode::CK(c) => {
                let c = c as i64;
                c >= 2 && 2 * sq < 2 * (c + 1) * k - c * (c + 1)
            }
        }
    }

    fn rank_ok(&self, k: usize, m: usize) -> (usize, bool) {
        match *self {
            AbelianMode::ThreeKMinus3 => (3, m <= 3),
            AbelianMode::ThreeKMinus2 => (3, k == 4 || m <= 3),
            AbelianMode::CK(c) => (c as usize, m <= c as usize),
        }
    }

    /// Size from which a structural witness is claimed, and the bounds on it:
    /// maximal single-progression length and required two-progression sum.
    fn structure(&self, k: usize) -> Option<(usize, usize, usize)> {
        match self {
            AbelianMode::ThreeKMinus3 => Some((11, 2 * k - 1, k)),
            AbelianMode::ThreeKMinus2 => Some((12, 2 * k + 1, k + 1)),
            AbelianMode::CK(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureBranch {
    /// Branch (i): one progression, within the length bound.
    Progression(APCover),
    /// Branch (ii): two progressions with the required length sum.
    TwoProgressions(TwoAPCover),
    /// Below the size threshold: no structural claim; covers found, if any.
    SmallCase {
        progression: Option<APCover>,
        two_progressions: Option<TwoAPCover>,
    },
    /// Modes without a structural clause.
    RankOnly,
}

impl StructureBranch {
    pub fn tag(&self) -> &'static str {
        match self {
            StructureBranch::Progression(_) => "i",
            StructureBranch::TwoProgressions(_) => "ii",
            StructureBranch::SmallCase { .. } => "small_case",
            StructureBranch::RankOnly => "rank_only",
        }
    }

    pub fn witness_json(&self) -> Value {
        match self {
            StructureBranch::Progression(c) => json!({"progression": c.to_json()}),
            StructureBranch::TwoProgressions(c) => json!({"two_progressions": c.to_json()}),
            StructureBranch::SmallCase {
                progression,
                two_progressions,
            } => json!({
                "progression": progression.as_ref().map(APCover::to_json),
                "two_progressions": two_progressions.as_ref().map(TwoAPCover::to_json),
            }),
            StructureBranch::RankOnly => Value::Null,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub mode: AbelianMode,
    pub k: usize,
    pub square_size: usize,
    pub rank_m: usize,
    pub rank_bound: usize,
    pub branch: StructureBranch,
}

impl ClassificationVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode.name(),
            "k": self.k,
            "square_size": self.square_size,
            "rank_m": self.rank_m,
            "rank_bound": self.rank_bound,
            "branch": self.branch.tag(),
            "witness": self.branch.witness_json(),
        })
    }
}

fn counterexample(s: &[LatticePoint], mode: AbelianMode, reason: &str) -> Error {
    Error::Counterexample(
        json!({"check": "classify_abelian", "mode": mode.name(), "set": points_json(s), "reason": reason})
            .to_string(),
    )
}

/// Checks the mode's hypothesis, the rank bound and, at qualifying sizes,
/// finds the structural witness. A failed theorem clause is a
/// [`Error::Counterexample`]; a failed hypothesis is [`Error::Hypothesis`].
pub fn classify_abelian(s: &[LatticePoint], mode: AbelianMode) -> Result<ClassificationVerdict> {
    check_points(s, 2)?;
    let k = s.len();
    let square_size = sumset_size(s);
    if !mode.hypothesis(k, square_size) {
        return Err(Error::Hypothesis(format!(
            "|S^2| = {square_size} with |S| = {k} is outside mode {}",
            mode.name()
        )));
    }
    let rank_m = integer_rank(s);
    let (rank_bound, rank_ok) = mode.rank_ok(k, rank_m);
    if !rank_ok {
        return Err(counterexample(s, mode, "rank bound"));
    }
    let branch = match mode.structure(k) {
        None => StructureBranch::RankOnly,
        Some((threshold, max_len, sum)) => {
            let ap = ap_cover_of(s).filter(|c| c.length <= BigInt::from(max_len));
            let two = || two_ap_cover(s, &BigInt::from(sum));
            if k < threshold {
                StructureBranch::SmallCase {
                    two_progressions: if ap.is_none() { two()? } else { None },
                    progression: ap,
                }
            } else if let Some(c) = ap {
                StructureBranch::Progression(c)
            } else if let Some(c) = two()? {
                StructureBranch::TwoProgressions(c)
            } else {
                return Err(counterexample(s, mode, "no structural branch"));
            }
        }
    };
    Ok(ClassificationVerdict {
        mode,
        k,
        square_size,
        rank_m,
        rank_bound,
        branch,
    })
}

/// Re-checks a serialized verdict against `S` without trusting its search.
pub fn validate_verdict(s: &[LatticePoint], verdict: &Value) -> Result<bool> {
    let mode = AbelianMode::parse(
        verdict
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Input("verdict lacks mode".into()))?,
    )?;
    let fresh = classify_abelian(s, mode)?;
    let same_numbers = ["k", "square_size", "rank_m", "rank_bound"]
        .iter()
        .all(|f| verdict.get(*f) == fresh.to_json().get(*f));
    let branch = verdict.get("branch").and_then(Value::as_str).unwrap_or("");
    if !same_numbers || branch != fresh.branch.tag() {
        return Ok(false);
    }
    let witness = verdict.get("witness").cloned().unwrap_or(Value::Null);
    let (_, max_len, sum) = match mode.structure(s.len()) {
        Some(x) => x,
        None => return Ok(witness.is_null()),
    };
    let all: Vec<&LatticePoint> = s.iter().collect();
    let ap_ok = |v: &Value| -> Result<bool> {
        let c = APCover::from_json(v)?;
        Ok(c.covers(&all) && c.length <= BigInt::from(max_len))
    };
    let two_ok = |v: &Value| -> Result<bool> {
        Ok(TwoAPCover::from_json(v)?.covers(s, &BigInt::from(sum)))
    };
    match branch {
        "i" => ap_ok(&witness["progression"]),
        "ii" => two_ok(&witness["two_progressions"]),
        _ => {
            let p = &witness["progression"];
            let t = &witness["two_progressions"];
            Ok((p.is_null() || ap_ok(p)?) && (t.is_null() || two_ok(t)?))
        }
    }
}

/// Parses `[[x, y], ...]` or `[x, ...]` into sorted distinct points.
pub fn parse_lattice_set(v: &Value) -> Result<Vec<LatticePoint>> {
    let mut pts = parse_points(v)?;
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Maps elements of an abelian subgroup to lattice coordinates by a
/// caller-declared embedding.
pub fn embed<F>(elems: &[Element], embedding: F) -> Result<Vec<LatticePoint>>
where
    F: Fn(&Element) -> Result<LatticePoint>,
{
    let mut pts = elems.iter().map(embedding).collect::<Result<Vec<_>>>()?;
    pts.sort();
    let n = pts.len();
    pts.dedup();
    if pts.len() != n {
        return Err(Error::Precondition("embedding is not injective on the set".into()));
    }
    Ok(pts)
}
