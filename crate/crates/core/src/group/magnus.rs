//! Magnus ordering of free groups.
//!
//! A free generator `g_i` maps to `1 + X_i` in the ring of non-commuting
//! integer power series. For words `u`, `v` the series `M(v) - M(u)` equals
//! `M(u) (M(u^{-1} v) - 1)`, and left or right multiplication by a series with
//! constant term 1 leaves the lowest-degree homogeneous part unchanged. So the
//! sign of the first nonzero coefficient of `M(u^{-1} v) - 1`, in graded
//! lexicographic monomial order, decides `u < v`, and that order is bi-invariant.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A homogeneous-by-degree truncated series: `components[d]` holds the
/// degree-`d` monomials (as letter sequences) with nonzero coefficients.
#[derive(Clone, Debug)]
struct Series {
    components: Vec<BTreeMap<Vec<u16>, BigInt>>,
}

impl Series {
    fn one(max_degree: usize) -> Self {
        let mut components = vec![BTreeMap::new(); max_degree + 1];
        components[0].insert(Vec::new(), BigInt::one());
        Series { components }
    }

    fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    /// Right-multiplies by `(1 + X_var)^power`, truncated.
    fn mul_syllable(&mut self, var: u16, power: i64) {
        let d_max = self.max_degree();
        let coeffs = binomial_series(power, d_max);
        let mut out = vec![BTreeMap::new(); d_max + 1];
        for (d, comp) in self.components.iter().enumerate() {
            for (mono, c) in comp {
                for (j, cj) in coeffs.iter().enumerate() {
                    if d + j > d_max {
                        break;
                    }
                    if cj.is_zero() {
                        continue;
                    }
                    let mut m = mono.clone();
                    m.extend(std::iter::repeat_n(var, j));
                    let entry: &mut BigInt = out[d + j].entry(m).or_insert_with(BigInt::zero);
                    *entry += c * cj;
                }
            }
        }
        for comp in out.iter_mut() {
            comp.retain(|_, c| !c.is_zero());
        }
        self.components = out;
    }

    /// Sign of the first nonzero coefficient above degree 0, if any.
    fn leading_sign(&self) -> Option<Ordering> {
        self.components.iter().skip(1).find_map(|comp| {
            comp.values().next().map(|c| {
                if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
        })
    }
}

/// Coefficients of `(1 + X)^power` up to `X^d_max`.
fn binomial_series(power: i64, d_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(d_max + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    // generalized binomial: C(p, j) = C(p, j-1) * (p - j + 1) / j
    for j in 1..=d_max {
        c = c * BigInt::from(power - (j as i64) + 1) / BigInt::from(j as i64);
        out.push(c.clone());
        if c.is_zero() && power >= 0 {
            out.resize(d_max + 1, BigInt::zero());
            break;
        }
    }
    out
}

/// Groups a reduced word (signed 1-based letters) into syllables `(var, power)`.
fn syllables(word: &[i32]) -> Vec<(u16, i64)> {
    let mut out: Vec<(u16, i64)> = Vec::new();
    for &l in word {
        let var = (l.unsigned_abs() - 1) as u16;
        let s = l.signum() as i64;
        match out.last_mut() {
            Some((v, p)) if *v == var => *p += s,
            _ => out.push((var, s)),
        }
    }
    out.retain(|&(_, p)| p != 0);
    out
}

/// Sign of a reduced word under the Magnus order at a fixed truncation degree:
/// `Some(Greater)` if the word is positive, `Some(Less)` if negative, `None` if
/// the truncated series is indistinguishable from 1.
pub fn sign_at_degree(word: &[i32], degree: usize) -> Option<Ordering> {
    if word.is_empty() {
        return Some(Ordering::Equal);
    }
    let mut s = Series::one(degree);
    for (var, power) in syllables(word) {
        s.mul_syllable(var, power);
    }
    s.leading_sign()
}

/// Sign of a nonempty reduced word, escalating the truncation degree by
/// doubling from `initial` up to `cap`. Returns `Err(cap)` if undecided.
pub fn sign(word: &[i32], initial: usize, cap: usize) -> Result<Ordering, usize> {
    if word.is_empty() {
        return Ok(Ordering::Equal);
    }
    let mut d = initial.max(1).min(cap);
    loop {
        if let Some(o) = sign_at_degree(word, d) {
            return Ok(o);
        }
        if d >= cap {
            return Err(cap);
        }
        d = (d * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        let b: Vec<i64> = binomial_series(-1, 4)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(b, vec![1, -1, 1, -1, 1]);
        let b: Vec<i64> = binomial_series(2, 4)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(b, vec![1, 2, 1, 0, 0]);
        let b: Vec<i64> = binomial_series(-2, 3)
            .iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(b, vec![1, -2, 3, -4]);
    }

    #[test]
    fn generators_positive_inverses_negative() {
        assert_eq!(sign(&[1], 4, 64), Ok(Ordering::Greater));
        assert_eq!(sign(&[-2], 4, 64), Ok(Ordering::Less));
    }

    #[test]
    fn commutator_decided_at_degree_two() {
        // [g1, g2] = g1^-1 g2^-1 g1 g2 -> 1 + X1X2 - X2X1 + ...
        assert_eq!(sign_at_degree(&[-1, -2, 1, 2], 1), None);
        assert_eq!(sign_at_degree(&[-1, -2, 1, 2], 2), Some(Ordering::Greater));
    }

    #[test]
    fn class_three_commutator_needs_degree_three() {
        // [[g1, g2], g1], freely reduced
        let w = [-2, -1, 2, -1, -2, 1, 2, 1];
        assert_eq!(sign_at_degree(&w, 2), None);
        assert!(sign_at_degree(&w, 3).is_some());
        assert_eq!(sign(&w, 1, 2), Err(2));
    }
}
