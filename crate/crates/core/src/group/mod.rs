//! Concrete ordered groups with exact arithmetic.
//!
//! Six families are modelled: integer lattices `Z^m`, free groups `F_n`
//! (ordered through the Magnus embedding), the integral Heisenberg group,
//! the Baumslag-Solitar group `BS(1,2)` as dyadic affine maps, the golden
//! semidirect product `Z[phi] x| Z`, and direct products of these. Every
//! element has a canonical representation, so structural equality is group
//! equality and `Hash` can be used freely.

pub mod dyadic;
pub mod golden;
pub mod magnus;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use dyadic::Dyadic;
pub use golden::ZPhi;

use crate::error::{Error, Result};

pub const DEFAULT_MAGNUS_INITIAL_DEGREE: u32 = 4;
pub const DEFAULT_MAGNUS_MAX_DEGREE: u32 = 64;
const MAX_PRODUCT_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    IntegerLattice(usize),
    FreeGroup(usize),
    Heisenberg,
    BaumslagSolitar12,
    GoldenSemidirect,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
}

/// One concrete ordered group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct GroupSpec {
    pub family: Family,
    pub magnus_initial_degree: u32,
    pub magnus_max_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    IntegerVector(Vec<BigInt>),
    /// Freely reduced; letters are signed 1-based generator indices.
    ReducedWord(Vec<i32>),
    HeisenbergTriple(BigInt, BigInt, BigInt),
    DyadicAffine(Dyadic, i64),
    GoldenPair(ZPhi, i64),
    Pair(Box<Element>, Box<Element>),
}

impl GroupSpec {
    fn with_family(family: Family) -> Self {
        GroupSpec {
            family,
            magnus_initial_degree: DEFAULT_MAGNUS_INITIAL_DEGREE,
            magnus_max_degree: DEFAULT_MAGNUS_MAX_DEGREE,
        }
    }

    pub fn lattice(rank: usize) -> Self {
        Self::with_family(Family::IntegerLattice(rank))
    }

    pub fn free(rank: usize) -> Self {
        Self::with_family(Family::FreeGroup(rank))
    }

    pub fn heisenberg() -> Self {
        Self::with_family(Family::Heisenberg)
    }

    pub fn bs12() -> Self {
        Self::with_family(Family::BaumslagSolitar12)
    }

    pub fn golden() -> Self {
        Self::with_family(Family::GoldenSemidirect)
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> Self {
        Self::with_family(Family::DirectProduct(Box::new(left), Box::new(right)))
    }

    pub fn with_magnus_degrees(mut self, initial: u32, max: u32) -> Self {
        self.magnus_initial_degree = initial;
        self.magnus_max_degree = max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_depth(0)
    }

    fn validate_depth(&self, depth: usize) -> Result<()> {
        if self.magnus_initial_degree == 0 || self.magnus_initial_degree > self.magnus_max_degree {
            return Err(Error::InvalidSpec(format!(
                "magnus degrees must satisfy 1 <= initial ({}) <= max ({})",
                self.magnus_initial_degree, self.magnus_max_degree
            )));
        }
        match &self.family {
            Family::IntegerLattice(0) | Family::FreeGroup(0) => {
                Err(Error::InvalidSpec("rank must be at least 1".into()))
            }
            Family::DirectProduct(l, r) => {
                if depth + 1 > MAX_PRODUCT_DEPTH {
                    return Err(Error::InvalidSpec(format!(
                        "direct products nest at most {MAX_PRODUCT_DEPTH} deep"
                    )));
                }
                l.validate_depth(depth + 1)?;
                r.validate_depth(depth + 1)
            }
            _ => Ok(()),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::IntegerLattice(_) => "lattice",
            Family::FreeGroup(_) => "free",
            Family::Heisenberg => "heisenberg",
            Family::BaumslagSolitar12 => "bs12",
            Family::GoldenSemidirect => "golden",
            Family::DirectProduct(..) => "product",
        }
    }

    /// True when the whole group is abelian.
    /// The order used on this group, as recorded in certificates.
    pub fn order_name(&self) -> String {
        match &self.family {
            Family::IntegerLattice(_) => "lexicographic".into(),
            Family::FreeGroup(_) => format!(
                "magnus(degrees {}..{})",
                self.magnus_initial_degree, self.magnus_max_degree
            ),
            Family::Heisenberg => "lexicographic(a, b, c)".into(),
            Family::BaumslagSolitar12 => "lexicographic(n, t)".into(),
            Family::GoldenSemidirect => "lexicographic(n, real value of h)".into(),
            Family::DirectProduct(l, r) => {
                format!("lexicographic({}; {})", l.order_name(), r.order_name())
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.family {
            Family::IntegerLattice(_) => true,
            Family::FreeGroup(n) => *n == 1,
            Family::DirectProduct(l, r) => l.is_abelian() && r.is_abelian(),
            _ => false,
        }
    }

    /// True when the whole group is nilpotent.
    pub fn is_nilpotent(&self) -> bool {
        match &self.family {
            Family::IntegerLattice(_) | Family::Heisenberg => true,
            Family::FreeGroup(n) => *n == 1,
            Family::DirectProduct(l, r) => l.is_nilpotent() && r.is_nilpotent(),
            _ => false,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.family {
            Family::IntegerLattice(m) => Element::IntegerVector(vec![BigInt::zero(); *m]),
            Family::FreeGroup(_) => Element::ReducedWord(Vec::new()),
            Family::Heisenberg => {
                Element::HeisenbergTriple(BigInt::zero(), BigInt::zero(), BigInt::zero())
            }
            Family::BaumslagSolitar12 => Element::DyadicAffine(Dyadic::zero(), 0),
            Family::GoldenSemidirect => Element::GoldenPair(ZPhi::zero(), 0),
            Family::DirectProduct(l, r) => {
                Element::Pair(Box::new(l.identity()), Box::new(r.identity()))
            }
        }
    }

    /// Standard generators: unit vectors, free letters, `(1,0,0), (0,1,0)`,
    /// `c = (1,0), b = (0,1)`, `a = (1,0), b = (0,1)`; products list the left
    /// factor's generators first.
    pub fn standard_generators(&self) -> Vec<Element> {
        match &self.family {
            Family::IntegerLattice(m) => (0..*m)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); *m];
                    v[i] = BigInt::from(1);
                    Element::IntegerVector(v)
                })
                .collect(),
            Family::FreeGroup(n) => (1..=*n as i32).map(|i| Element::ReducedWord(vec![i])).collect(),
            Family::Heisenberg => vec![Element::heis(1, 0, 0), Element::heis(0, 1, 0)],
            Family::BaumslagSolitar12 => vec![Element::dyadic(1, 0), Element::dyadic(0, 1)],
            Family::GoldenSemidirect => vec![Element::golden(1, 0, 0), Element::golden(0, 0, 1)],
            Family::DirectProduct(l, r) => {
                let le = l.identity();
                let re = r.identity();
                let mut out: Vec<Element> = l
                    .standard_generators()
                    .into_iter()
                    .map(|g| Element::pair(g, re.clone()))
                    .collect();
                out.extend(
                    r.standard_generators()
                        .into_iter()
                        .map(|g| Element::pair(le.clone(), g)),
                );
                out
            }
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (&self.family, x) {
            (Family::IntegerLattice(m), Element::IntegerVector(v)) => v.len() == *m,
            (Family::FreeGroup(n), Element::ReducedWord(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *n)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Family::Heisenberg, Element::HeisenbergTriple(..)) => true,
            (Family::BaumslagSolitar12, Element::DyadicAffine(..)) => true,
            (Family::GoldenSemidirect, Element::GoldenPair(..)) => true,
            (Family::DirectProduct(l, r), Element::Pair(a, b)) => l.contains(a) && r.contains(b),
            _ => false,
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                group: self.family_name().to_string(),
                element: x.to_string(),
            })
        }
    }

    /// Exact group product `a * b`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        use Element::*;
        match (&self.family, a, b) {
            (_, IntegerVector(x), IntegerVector(y)) => {
                IntegerVector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (_, ReducedWord(x), ReducedWord(y)) => ReducedWord(reduce_concat(x, y)),
            (_, HeisenbergTriple(a1, b1, c1), HeisenbergTriple(a2, b2, c2)) => {
                HeisenbergTriple(a1 + a2, b1 + b2, c1 + c2 + a1 * b2)
            }
            (_, DyadicAffine(t1, n1), DyadicAffine(t2, n2)) => {
                DyadicAffine(t1 + &t2.mul_pow2(-*n1), n1 + n2)
            }
            (_, GoldenPair(h1, n1), GoldenPair(h2, n2)) => {
                let scaled = &ZPhi::phi_pow(-*n1) * h2;
                GoldenPair(h1 + &scaled, n1 + n2)
            }
            (Family::DirectProduct(l, r), Pair(a1, b1), Pair(a2, b2)) => Pair(
                Box::new(l.mul_unchecked(a1, a2)),
                Box::new(r.mul_unchecked(b1, b2)),
            ),
            _ => unreachable!("family checked by caller"),
        }
    }

    pub fn invert(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &Element) -> Element {
        use Element::*;
        match (&self.family, a) {
            (_, IntegerVector(x)) => IntegerVector(x.iter().map(|p| -p).collect()),
            (_, ReducedWord(w)) => ReducedWord(w.iter().rev().map(|l| -l).collect()),
            (_, HeisenbergTriple(a, b, c)) => HeisenbergTriple(-a, -b, a * b - c),
            // (t, n)^-1 = (-2^n t, -n)
            (_, DyadicAffine(t, n)) => DyadicAffine(-&t.mul_pow2(*n), -n),
            (_, GoldenPair(h, n)) => GoldenPair(-&(&ZPhi::phi_pow(*n) * h), -n),
            (Family::DirectProduct(l, r), Pair(x, y)) => {
                Pair(Box::new(l.inv_unchecked(x)), Box::new(r.inv_unchecked(y)))
            }
            _ => unreachable!("family checked by caller"),
        }
    }

    /// Total bi-invariant order.
    pub fn compare(&self, a: &Element, b: &Element) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        self.cmp_unchecked(a, b)
    }

    pub(crate) fn cmp_unchecked(&self, a: &Element, b: &Element) -> Result<Ordering> {
        use Element::*;
        if a == b {
            return Ok(Ordering::Equal);
        }
        Ok(match (&self.family, a, b) {
            (_, IntegerVector(x), IntegerVector(y)) => x.cmp(y),
            (_, HeisenbergTriple(a1, b1, c1), HeisenbergTriple(a2, b2, c2)) => {
                (a1, b1, c1).cmp(&(a2, b2, c2))
            }
            // a^-1 b = (2^n (t' - t), n' - n), positive iff lexicographically (n, t) grows
            (_, DyadicAffine(t1, n1), DyadicAffine(t2, n2)) => n1.cmp(n2).then_with(|| t1.cmp(t2)),
            (_, GoldenPair(h1, n1), GoldenPair(h2, n2)) => {
                n1.cmp(n2).then_with(|| (h1 - h2).signum())
            }
            (Family::FreeGroup(_), ReducedWord(x), ReducedWord(y)) => {
                let inv: Vec<i32> = x.iter().rev().map(|l| -l).collect();
                let w = reduce_concat(&inv, y);
                match magnus::sign(
                    &w,
                    self.magnus_initial_degree as usize,
                    self.magnus_max_degree as usize,
                ) {
                    Ok(Ordering::Greater) => Ordering::Less,
                    Ok(Ordering::Less) => Ordering::Greater,
                    Ok(Ordering::Equal) => Ordering::Equal,
                    Err(cap) => {
                        return Err(Error::UndecidedOrder {
                            degree: cap as u32,
                            left: a.to_string(),
                            right: b.to_string(),
                        })
                    }
                }
            }
            (Family::DirectProduct(l, r), Pair(a1, b1), Pair(a2, b2)) => {
                match l.cmp_unchecked(a1, a2)? {
                    Ordering::Equal => r.cmp_unchecked(b1, b2)?,
                    o => o,
                }
            }
            _ => unreachable!("family checked by caller"),
        })
    }

    pub fn power(&self, a: &Element, e: i64) -> Result<Element> {
        self.check(a)?;
        Ok(self.pow_unchecked(a, e))
    }

    pub(crate) fn pow_unchecked(&self, a: &Element, e: i64) -> Element {
        let mut base = if e < 0 {
            self.inv_unchecked(a)
        } else {
            a.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.comm_unchecked(a, b))
    }

    pub(crate) fn comm_unchecked(&self, a: &Element, b: &Element) -> Element {
        let ai = self.inv_unchecked(a);
        let bi = self.inv_unchecked(b);
        let x = self.mul_unchecked(&ai, &bi);
        let y = self.mul_unchecked(&x, a);
        self.mul_unchecked(&y, b)
    }

    /// `a^b = b^-1 a b`.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.conj_unchecked(a, b))
    }

    pub(crate) fn conj_unchecked(&self, a: &Element, b: &Element) -> Element {
        let bi = self.inv_unchecked(b);
        let x = self.mul_unchecked(&bi, a);
        self.mul_unchecked(&x, b)
    }

    pub fn commutes(&self, a: &Element, b: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b) == self.mul_unchecked(b, a))
    }

    pub fn is_identity(&self, a: &Element) -> bool {
        *a == self.identity()
    }

    /// Parses an element from its JSON coordinate array.
    pub fn parse_element(&self, v: &Value) -> Result<Element> {
        let bad = |why: &str| Error::InvalidElement(format!("{why}: {v}"));
        let arr = |v: &Value| -> Result<Vec<Value>> {
            v.as_array().cloned().ok_or_else(|| bad("expected an array"))
        };
        let x = match &self.family {
            Family::IntegerLattice(m) => {
                // bare integers are accepted for Z
                if *m == 1 && !v.is_array() {
                    Element::IntegerVector(vec![parse_bigint(v)?])
                } else {
                    let coords = arr(v)?
                        .iter()
                        .map(parse_bigint)
                        .collect::<Result<Vec<_>>>()?;
                    if coords.len() != *m {
                        return Err(bad("wrong number of coordinates"));
                    }
                    Element::IntegerVector(coords)
                }
            }
            Family::FreeGroup(_) => {
                let letters = arr(v)?
                    .iter()
                    .map(|l| {
                        l.as_i64()
                            .and_then(|l| i32::try_from(l).ok())
                            .ok_or_else(|| bad("letters are signed generator indices"))
                    })
                    .collect::<Result<Vec<i32>>>()?;
                if letters.contains(&0) {
                    return Err(bad("letter 0 is not a generator"));
                }
                Element::ReducedWord(reduce_concat(&letters, &[]))
            }
            Family::Heisenberg => {
                let a = arr(v)?;
                if a.len() != 3 {
                    return Err(bad("expected [a, b, c]"));
                }
                Element::HeisenbergTriple(
                    parse_bigint(&a[0])?,
                    parse_bigint(&a[1])?,
                    parse_bigint(&a[2])?,
                )
            }
            Family::BaumslagSolitar12 => {
                let a = arr(v)?;
                if a.len() != 2 {
                    return Err(bad("expected [t, n]"));
                }
                let t = match &a[0] {
                    Value::String(s) => s.parse::<Dyadic>().map_err(|e| bad(&e.to_string()))?,
                    other => Dyadic::from_int(parse_bigint(other)?),
                };
                Element::DyadicAffine(t, parse_i64(&a[1])?)
            }
            Family::GoldenSemidirect => {
                let a = arr(v)?;
                if a.len() != 3 {
                    return Err(bad("expected [u, v, n]"));
                }
                Element::GoldenPair(
                    ZPhi::new(parse_bigint(&a[0])?, parse_bigint(&a[1])?),
                    parse_i64(&a[2])?,
                )
            }
            Family::DirectProduct(l, r) => {
                let a = arr(v)?;
                if a.len() != 2 {
                    return Err(bad("expected [left, right]"));
                }
                Element::Pair(Box::new(l.parse_element(&a[0])?), Box::new(r.parse_element(&a[1])?))
            }
        };
        self.check(&x)?;
        Ok(x)
    }

    pub fn parse_elements(&self, v: &Value) -> Result<Vec<Element>> {
        v.as_array()
            .ok_or_else(|| Error::InvalidElement(format!("expected an array of elements: {v}")))?
            .iter()
            .map(|e| self.parse_element(e))
            .collect()
    }
}

pub(crate) fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| Error::InvalidElement(format!("not an integer: {v}"))),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidElement(format!("not an integer: {v}"))),
        _ => Err(Error::InvalidElement(format!("not an integer: {v}"))),
    }
}

fn parse_i64(v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::InvalidElement(format!("exponent must fit in i64: {v}")))
}

pub(crate) fn bigint_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(x.to_string()),
    }
}

/// Concatenates two words and freely reduces the result.
pub(crate) fn reduce_concat(x: &[i32], y: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(x.len() + y.len());
    for &l in x.iter().chain(y) {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Element {
    pub fn int(x: i64) -> Element {
        Element::IntegerVector(vec![BigInt::from(x)])
    }

    pub fn vector(xs: &[i64]) -> Element {
        Element::IntegerVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn word(letters: &[i32]) -> Element {
        Element::ReducedWord(reduce_concat(letters, &[]))
    }

    pub fn heis(a: i64, b: i64, c: i64) -> Element {
        Element::HeisenbergTriple(a.into(), b.into(), c.into())
    }

    pub fn dyadic(t: i64, n: i64) -> Element {
        Element::DyadicAffine(Dyadic::from_int(t), n)
    }

    pub fn golden(u: i64, v: i64, n: i64) -> Element {
        Element::GoldenPair(ZPhi::new(u, v), n)
    }

    pub fn pair(l: Element, r: Element) -> Element {
        Element::Pair(Box::new(l), Box::new(r))
    }

    /// JSON coordinate array; integers outside `i64` become decimal strings.
    pub fn to_json(&self) -> Value {
        match self {
            Element::IntegerVector(v) => Value::Array(v.iter().map(bigint_json).collect()),
            Element::ReducedWord(w) => Value::Array(w.iter().map(|&l| Value::from(l)).collect()),
            Element::HeisenbergTriple(a, b, c) => {
                Value::Array(vec![bigint_json(a), bigint_json(b), bigint_json(c)])
            }
            Element::DyadicAffine(t, n) => {
                let tj = if t.is_integer() {
                    bigint_json(t.numerator())
                } else {
                    Value::String(t.to_string())
                };
                Value::Array(vec![tj, Value::from(*n)])
            }
            Element::GoldenPair(h, n) => {
                Value::Array(vec![bigint_json(&h.u), bigint_json(&h.v), Value::from(*n)])
            }
            Element::Pair(a, b) => Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }

    /// Coordinates of a lattice element, if it is one.
    pub fn as_vector(&self) -> Option<&[BigInt]> {
        match self {
            Element::IntegerVector(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

// ---- GroupSpec JSON ----

#[derive(Serialize, Deserialize)]
struct RawSpec {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<Box<RawSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<Box<RawSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    magnus_initial_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    magnus_max_degree: Option<u32>,
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = Error;

    fn try_from(r: RawSpec) -> Result<Self> {
        let family = match r.family.as_str() {
            "lattice" => Family::IntegerLattice(r.rank.unwrap_or(1)),
            "free" => Family::FreeGroup(r.rank.unwrap_or(2)),
            "heisenberg" => Family::Heisenberg,
            "bs12" => Family::BaumslagSolitar12,
            "golden" => Family::GoldenSemidirect,
            "product" => {
                let missing = || Error::InvalidSpec("product needs left and right".into());
                let l = GroupSpec::try_from(*r.left.ok_or_else(missing)?)?;
                let rr = GroupSpec::try_from(*r.right.ok_or_else(missing)?)?;
                Family::DirectProduct(Box::new(l), Box::new(rr))
            }
            other => return Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        };
        let spec = GroupSpec {
            family,
            magnus_initial_degree: r.magnus_initial_degree.unwrap_or(DEFAULT_MAGNUS_INITIAL_DEGREE),
            magnus_max_degree: r.magnus_max_degree.unwrap_or(DEFAULT_MAGNUS_MAX_DEGREE),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<GroupSpec> for RawSpec {
    fn from(g: GroupSpec) -> RawSpec {
        let mut raw = RawSpec {
            family: g.family_name().to_string(),
            rank: None,
            left: None,
            right: None,
            magnus_initial_degree: None,
            magnus_max_degree: None,
        };
        match g.family {
            Family::IntegerLattice(m) => raw.rank = Some(m),
            Family::FreeGroup(n) => {
                raw.rank = Some(n);
                raw.magnus_initial_degree = Some(g.magnus_initial_degree);
                raw.magnus_max_degree = Some(g.magnus_max_degree);
            }
            Family::DirectProduct(l, r) => {
                raw.left = Some(Box::new(RawSpec::from(*l)));
                raw.right = Some(Box::new(RawSpec::from(*r)));
            }
            _ => {}
        }
        raw
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match serde_json::to_string(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => Err(fmt::Error),
        }
    }
}

/// True when `x` is strictly positive under the order of `spec`.
pub fn is_positive(spec: &GroupSpec, x: &Element) -> Result<bool> {
    Ok(spec.compare(x, &spec.identity())? == Ordering::Greater)
}
