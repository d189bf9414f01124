use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::product::{make_subset, FiniteSubset};

/// `Z × F_2`, the ambient group of [`construct_4k5`].
pub fn construction_group() -> GroupSpec {
    GroupSpec::product(GroupSpec::lattice(1), GroupSpec::free(2))
}

/// `S = {a, ac, ..., ac^{k-2}, b}` in `Z × F_2` with `a = (1, e)`,
/// `b = (0, g1)`, `c = (0, g2)`. `|S^2| = 4k - 5` and `<S>` is not soluble.
pub fn construct_4k5(k: usize) -> Result<FiniteSubset> {
    if k < 3 {
        return Err(Error::Precondition("construction needs k >= 3".into()));
    }
    let g = construction_group();
    let mut elems: Vec<Element> = (0..k - 1)
        .map(|i| Element::pair(Element::int(1), Element::word(&vec![2; i])))
        .collect();
    elems.push(Element::pair(Element::int(0), Element::word(&[1])));
    make_subset(&g, elems)
}

/// `{0, r, ..., (split-1)r} ∪ {gap, gap+r, ...}` with `k` elements in
/// total, translated by an offset drawn from `seed`.
pub fn random_two_ap(k: usize, gap: i64, split: usize, ratio: i64, seed: u64) -> Result<FiniteSubset> {
    if split < 1 || split + 1 > k {
        return Err(Error::Precondition("need 1 <= split <= k - 1".into()));
    }
    if ratio < 1 {
        return Err(Error::Precondition("ratio must be >= 1".into()));
    }
    if BigInt::from(gap) <= BigInt::from(split as i64 - 1) * ratio {
        return Err(Error::Precondition("gap must exceed the first progression".into()));
    }
    let offset = ChaCha8Rng::seed_from_u64(seed).gen_range(-1_000_000i64..=1_000_000);
    let offset = BigInt::from(offset);
    let r = BigInt::from(ratio);
    let g = BigInt::from(gap);
    let mut elems = Vec::with_capacity(k);
    for i in 0..split {
        elems.push(Element::IntegerVector(vec![&offset + &r * i]));
    }
    for j in 0..k - split {
        elems.push(Element::IntegerVector(vec![&offset + &g + &r * j]));
    }
    make_subset(&GroupSpec::lattice(1), elems)
}
