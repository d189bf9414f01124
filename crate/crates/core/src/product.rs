//! Finite subsets of an ordered group and their square sets `S^2`.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};

/// A nonempty finite subset, stored strictly increasing under the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubset {
    spec: GroupSpec,
    elems: Vec<Element>,
}

/// Sorts ascending under the group order, surfacing the first comparison error.
pub fn sort_elements(spec: &GroupSpec, elems: &mut [Element]) -> Result<()> {
    let mut err = None;
    elems.sort_by(|a, b| match spec.cmp_unchecked(a, b) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Deduplicates and sorts `raw`.
pub fn make_subset(spec: &GroupSpec, raw: Vec<Element>) -> Result<FiniteSubset> {
    FiniteSubset::new(spec.clone(), raw)
}

impl FiniteSubset {
    pub fn new(spec: GroupSpec, raw: Vec<Element>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Precondition("a subset needs at least one element".into()));
        }
        for x in &raw {
            spec.multiply(x, &spec.identity())?;
        }
        let mut elems = raw;
        sort_elements(&spec, &mut elems)?;
        elems.dedup();
        Ok(FiniteSubset { spec, elems })
    }

    /// Caller guarantees membership, strict ascending order and nonemptiness.
    pub(crate) fn from_sorted(spec: GroupSpec, elems: Vec<Element>) -> Self {
        debug_assert!(!elems.is_empty());
        FiniteSubset { spec, elems }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elems(&self) -> &[Element] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> &Element {
        &self.elems[0]
    }

    pub fn max(&self) -> &Element {
        &self.elems[self.elems.len() - 1]
    }

    /// The subset with the element at `idx` removed; `None` if that empties it.
    pub fn without(&self, idx: usize) -> Option<FiniteSubset> {
        if self.elems.len() <= 1 {
            return None;
        }
        let mut elems = self.elems.clone();
        elems.remove(idx);
        Some(FiniteSubset::from_sorted(self.spec.clone(), elems))
    }

    /// True iff every pair of elements commutes.
    pub fn is_commutative(&self) -> bool {
        let g = &self.spec;
        self.elems.iter().enumerate().all(|(i, x)| {
            self.elems[i + 1..]
                .iter()
                .all(|y| g.mul_unchecked(x, y) == g.mul_unchecked(y, x))
        })
    }

    /// Some pair that does not commute, as ascending indices.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let g = &self.spec;
        let k = self.elems.len();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let (x, y) = (&self.elems[i], &self.elems[j]);
                g.mul_unchecked(x, y) != g.mul_unchecked(y, x)
            })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.elems.iter().map(Element::to_json).collect())
    }
}

/// The distinct products `x_i x_j`, ascending, each with every ordered index
/// pair (0-based) that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSet {
    pub values: Vec<Element>,
    pub witnesses: Vec<Vec<(usize, usize)>>,
}

impl SquareSet {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "values": self.values.iter().map(Element::to_json).collect::<Vec<_>>(),
            "witnesses": self.witnesses,
        })
    }
}

impl Serialize for SquareSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SquareSet", 2)?;
        st.serialize_field("values", &self.values)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.end()
    }
}

type Run = Vec<(Element, Vec<(usize, usize)>)>;

fn merge_runs(spec: &GroupSpec, a: Run, b: Run) -> Result<Run> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => spec.cmp_unchecked(&x.0, &y.0)?,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (v, mut w) = ia.next().unwrap();
                w.extend(ib.next().unwrap().1);
                out.push((v, w));
            }
        }
    }
    Ok(out)
}

/// `S^2` by a k-way merge of the rows `x_i S`, each already ascending because
/// left multiplication preserves the order.
pub fn square(s: &FiniteSubset) -> Result<SquareSet> {
    let g = &s.spec;
    let mut runs: Vec<Run> = s
        .elems
        .iter()
        .enumerate()
        .map(|(i, x)| {
            s.elems
                .iter()
                .enumerate()
                .map(|(j, y)| (g.mul_unchecked(x, y), vec![(i, j)]))
                .collect()
        })
        .collect();
    while runs.len() > 1 {
        let mut next = Vec::with_capacity(runs.len().div_ceil(2));
        let mut it = runs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge_runs(g, a, b)?),
                None => next.push(a),
            }
        }
        runs = next;
    }
    let merged = runs.pop().unwrap_or_default();
    let mut values = Vec::with_capacity(merged.len());
    let mut witnesses = Vec::with_capacity(merged.len());
    for (v, mut w) in merged {
        w.sort_unstable();
        values.push(v);
        witnesses.push(w);
    }
    Ok(SquareSet { values, witnesses })
}

/// Number of distinct products, without ordering them.
pub fn square_size(s: &FiniteSubset) -> usize {
    let g = &s.spec;
    let mut seen = HashSet::with_capacity(s.len() * s.len());
    for x in &s.elems {
        for y in &s.elems {
            seen.insert(g.mul_unchecked(x, y));
        }
    }
    seen.len()
}

/// `|S^2|` against the affine thresholds `3k - 3` and `3k - 2`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DoublingReport {
    pub k: i64,
    pub square_size: i64,
    pub deficit_3k3: i64,
    pub b_excess: i64,
    pub s_excess: i64,
    pub order_bound_holds: bool,
}

pub fn doubling_report(s: &FiniteSubset) -> Result<DoublingReport> {
    if s.len() < 2 {
        return Err(Error::Precondition("doubling report needs |S| >= 2".into()));
    }
    Ok(report_from_sizes(s.len(), square_size(s)))
}

pub fn report_from_sizes(k: usize, square: usize) -> DoublingReport {
    let k = k as i64;
    let sq = square as i64;
    DoublingReport {
        k,
        square_size: sq,
        deficit_3k3: sq - (3 * k - 3),
        b_excess: sq - (3 * k - 3),
        s_excess: sq - (3 * k - 2),
        order_bound_holds: sq >= 2 * k - 1,
    }
}

/// True iff `[y, t] = 1` for every `t` in `T`.
pub fn elementwise_commutes(spec: &GroupSpec, y: &Element, t: &FiniteSubset) -> Result<bool> {
    for x in t.elems() {
        if !spec.commutes(y, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S^2` split as `T^2`, `yT ∪ Ty` and `{y^2}` for `y` an extreme element.
#[derive(Clone, Debug)]
pub struct SquarePartition {
    pub y: Element,
    pub t_square: SquareSet,
    pub cross: Vec<Element>,
    pub top: Element,
    pub is_disjoint: bool,
}

impl SquarePartition {
    pub fn to_json(&self) -> Value {
        json!({
            "y": self.y.to_json(),
            "t_square": self.t_square.to_json(),
            "cross": self.cross.iter().map(Element::to_json).collect::<Vec<_>>(),
            "top": self.top.to_json(),
            "is_disjoint": self.is_disjoint,
        })
    }
}

/// Removes `max S` (or `min S`) as `y` and computes the three blocks.
pub fn partition_square(s: &FiniteSubset, split_at_max: bool) -> Result<SquarePartition> {
    if s.len() < 2 {
        return Err(Error::Precondition("partition needs |S| >= 2".into()));
    }
    let g = &s.spec;
    let idx = if split_at_max { s.len() - 1 } else { 0 };
    let y = s.elems[idx].clone();
    let t = s.without(idx).expect("|S| >= 2");
    let t_square = square(&t)?;
    let mut cross: Vec<Element> = Vec::with_capacity(2 * t.len());
    for x in t.elems() {
        cross.push(g.mul_unchecked(&y, x));
        cross.push(g.mul_unchecked(x, &y));
    }
    sort_elements(g, &mut cross)?;
    cross.dedup();
    let top = g.mul_unchecked(&y, &y);
    let t_set: HashSet<&Element> = t_square.values.iter().collect();
    let is_disjoint = !t_set.contains(&top)
        && !cross.contains(&top)
        && cross.iter().all(|v| !t_set.contains(v));
    Ok(SquarePartition {
        y,
        t_square,
        cross,
        top,
        is_disjoint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zset(xs: &[i64]) -> FiniteSubset {
        make_subset(&GroupSpec::lattice(1), xs.iter().map(|&x| Element::int(x)).collect()).unwrap()
    }

    fn ints(v: &[Element]) -> Vec<i64> {
        v.iter()
            .map(|e| i64::try_from(&e.as_vector().unwrap()[0]).unwrap())
            .collect()
    }

    #[test]
    fn make_subset_sorts_and_dedups() {
        assert_eq!(ints(zset(&[3, 1, 1, 0]).elems()), vec![0, 1, 3]);
        let h = GroupSpec::heisenberg();
        let s = make_subset(&h, vec![Element::heis(1, 0, 0), Element::heis(0, 1, 0)]).unwrap();
        assert_eq!(s.elems(), &[Element::heis(0, 1, 0), Element::heis(1, 0, 0)]);
        let f = GroupSpec::free(2);
        let s = make_subset(&f, vec![Element::word(&[1, 2]), Element::word(&[1])]).unwrap();
        assert_eq!(s.elems(), &[Element::word(&[1]), Element::word(&[1, 2])]);
        assert!(make_subset(&f, vec![]).is_err());
        assert!(make_subset(&f, vec![Element::int(1)]).is_err());
    }

    #[test]
    fn square_of_progression() {
        let sq = square(&zset(&[0, 1, 2])).unwrap();
        assert_eq!(ints(&sq.values), vec![0, 1, 2, 3, 4]);
        assert_eq!(sq.witnesses[2], vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn square_in_bs12() {
        let g = GroupSpec::bs12();
        let x = Element::dyadic(0, 1);
        let c = Element::dyadic(1, 0);
        let xc = g.multiply(&x, &c).unwrap();
        let xc2 = g.multiply(&xc, &c).unwrap();
        let s = make_subset(&g, vec![x, xc, xc2]).unwrap();
        assert_eq!(square(&s).unwrap().len(), 7);
    }

    #[test]
    fn doubling_examples() {
        let r = doubling_report(&zset(&[0, 1, 2])).unwrap();
        assert_eq!((r.k, r.square_size, r.deficit_3k3), (3, 5, -1));
        let r = doubling_report(&zset(&[0, 1, 3])).unwrap();
        assert_eq!((r.square_size, r.deficit_3k3, r.s_excess), (6, 0, -1));
        assert!(doubling_report(&zset(&[4])).is_err());
    }

    #[test]
    fn commutation_checks() {
        let h = GroupSpec::heisenberg();
        let t = make_subset(&h, vec![Element::heis(1, 0, 0), Element::heis(3, -2, 5)]).unwrap();
        assert!(elementwise_commutes(&h, &Element::heis(0, 0, 1), &t).unwrap());
        let g = GroupSpec::bs12();
        let t = make_subset(&g, vec![Element::dyadic(1, 0)]).unwrap();
        assert!(!elementwise_commutes(&g, &Element::dyadic(0, 1), &t).unwrap());
        let p = GroupSpec::product(GroupSpec::lattice(1), GroupSpec::free(2));
        let a = Element::pair(Element::int(1), Element::word(&[]));
        let ac = Element::pair(Element::int(1), Element::word(&[2]));
        let t = make_subset(&p, vec![a.clone(), ac]).unwrap();
        assert!(elementwise_commutes(&p, &a, &t).unwrap());
    }

    #[test]
    fn partition_detects_collisions() {
        let part = partition_square(&zset(&[0, 1, 2]), true).unwrap();
        assert!(!part.is_disjoint);
        let g = GroupSpec::bs12();
        let x = Element::dyadic(0, 1);
        let c = Element::dyadic(1, 0);
        let xc = g.multiply(&x, &c).unwrap();
        let xc2 = g.multiply(&xc, &c).unwrap();
        let s = make_subset(&g, vec![x, xc, xc2.clone()]).unwrap();
        let part = partition_square(&s, true).unwrap();
        assert_eq!(part.y, xc2);
        // brute force: T^2, the cross block and y^2 against S^2
        let total = part.t_square.len() + part.cross.len() + 1;
        let sq = square(&s).unwrap().len();
        assert_eq!(part.is_disjoint, total == sq);
    }

    fn families() -> Vec<GroupSpec> {
        vec![
            GroupSpec::lattice(2),
            GroupSpec::free(2),
            GroupSpec::heisenberg(),
            GroupSpec::bs12(),
            GroupSpec::golden(),
            GroupSpec::product(GroupSpec::lattice(1), GroupSpec::free(2)),
        ]
    }

    fn random_element(spec: &GroupSpec, seed: &[i64]) -> Element {
        // the standard generators raised to the exponents in `seed`, multiplied in turn
        let gens = spec.standard_generators();
        let mut x = spec.identity();
        for (i, &e) in seed.iter().enumerate() {
            let gpow = spec.power(&gens[i % gens.len()], e).unwrap();
            x = spec.multiply(&x, &gpow).unwrap();
        }
        x
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn square_set_invariants(
            fam in 0usize..6,
            raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..7),
            shuffle_seed in any::<u64>(),
        ) {
            let g = families()[fam].clone();
            let elems: Vec<Element> = raw.iter().map(|r| random_element(&g, r)).collect();
            let s = make_subset(&g, elems.clone()).unwrap();
            let k = s.len();
            let sq = square(&s).unwrap();
            prop_assert!(sq.len() >= 2 * k - 1);
            prop_assert!(sq.len() <= k * k);
            let mut pairs: Vec<(usize, usize)> = sq.witnesses.iter().flatten().copied().collect();
            pairs.sort_unstable();
            let all: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
            prop_assert_eq!(pairs, all);
            for (v, ws) in sq.values.iter().zip(&sq.witnesses) {
                prop_assert!(!ws.is_empty());
                for &(i, j) in ws {
                    prop_assert_eq!(&g.multiply(&s.elems()[i], &s.elems()[j]).unwrap(), v);
                }
            }
            for w in sq.values.windows(2) {
                prop_assert_eq!(g.compare(&w[0], &w[1]).unwrap(), Ordering::Less);
            }
            prop_assert_eq!(&sq.values[0], &g.multiply(s.min(), s.min()).unwrap());
            prop_assert_eq!(sq.values.last().unwrap(), &g.multiply(s.max(), s.max()).unwrap());
            prop_assert_eq!(square_size(&s), sq.len());
            let mut perm = elems;
            let n = perm.len();
            for i in 0..n {
                let j = (shuffle_seed as usize).wrapping_mul(i + 7) % n;
                perm.swap(i, j);
            }
            let s2 = make_subset(&g, perm).unwrap();
            prop_assert_eq!(square(&s2).unwrap(), sq);
        }
    }
}
