//! Recognition of the non-abelian small-doubling shapes by normal-form
//! matching, young-group relation checks, law checking by exhaustion and
//! seeded sampling, and bounded subgroup membership.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{is_positive, Element, GroupSpec};
use crate::product::{make_subset, sort_elements, square_size, FiniteSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YoungKind {
    /// `<a, b>` with `[[a,b],a] = [[a,b],b] = 1`.
    TypeI,
    /// `<a> x <b, c>` with `c^b = c^2` or `(c^2)^b = c`.
    TypeII,
    /// `<a, b>` with `a^b = a^2`.
    TypeIII,
    /// `<a, b>` with `a^{b^2} = a a^b` and `[a, a^b] = 1`.
    TypeIV,
    /// A triple meeting the centre of the subgroup it generates.
    Central3,
    /// `{a, a^b, b}` with `a a^b = a^b a`.
    Conjugate3,
    /// `{x, xc, xc^x}`, or the `x^{-1}` variant.
    P5a,
    /// `{x, xc, xcc^x}`, or the `x^{-1}` variant.
    P5b,
    /// `{x, xc, xc^2}`.
    P5c,
    /// `{a, ac, ..., ac^{k-2}, y}` with `c = [a,y]^{±1}` central.
    P6a,
    /// `{a, ac, ac^2, y}` with `(c^2)^y = c`.
    P6b,
    /// `{a, ac, ac^2, y}` with `c^y = c^2`.
    P6c,
}

impl YoungKind {
    pub const ALL: [YoungKind; 12] = [
        YoungKind::TypeI,
        YoungKind::TypeII,
        YoungKind::TypeIII,
        YoungKind::TypeIV,
        YoungKind::Central3,
        YoungKind::Conjugate3,
        YoungKind::P5a,
        YoungKind::P5b,
        YoungKind::P5c,
        YoungKind::P6a,
        YoungKind::P6b,
        YoungKind::P6c,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            YoungKind::TypeI => "TypeI",
            YoungKind::TypeII => "TypeII",
            YoungKind::TypeIII => "TypeIII",
            YoungKind::TypeIV => "TypeIV",
            YoungKind::Central3 => "Central3",
            YoungKind::Conjugate3 => "Conjugate3",
            YoungKind::P5a => "P5a",
            YoungKind::P5b => "P5b",
            YoungKind::P5c => "P5c",
            YoungKind::P6a => "P6a",
            YoungKind::P6b => "P6b",
            YoungKind::P6c => "P6c",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        YoungKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown young form {s:?}")))
    }

    /// Witness names in the order used by generation words.
    pub fn symbols(&self) -> &'static [&'static str] {
        match self {
            YoungKind::TypeI | YoungKind::TypeIII | YoungKind::TypeIV => &["a", "b"],
            YoungKind::TypeII => &["a", "b", "c"],
            YoungKind::Central3 => &["z"],
            YoungKind::Conjugate3 => &["a", "b"],
            YoungKind::P5a | YoungKind::P5b => &["x", "c", "base"],
            YoungKind::P5c => &["x", "c"],
            YoungKind::P6a | YoungKind::P6b | YoungKind::P6c => &["a", "c", "y"],
        }
    }

    fn is_group_type(&self) -> bool {
        matches!(
            self,
            YoungKind::TypeI | YoungKind::TypeII | YoungKind::TypeIII | YoungKind::TypeIV
        )
    }
}

/// A matched shape. For the four group types, `generation[i]` writes the i-th
/// element of `S` in the witnesses and `derivation[j]` writes the j-th
/// witness in `S`, so `<S>` equals the group the witnesses generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YoungForm {
    pub kind: YoungKind,
    pub witnesses: BTreeMap<String, Element>,
    pub generation: Vec<Vec<i32>>,
    pub derivation: Vec<Vec<i32>>,
}

impl YoungForm {
    fn new(kind: YoungKind, named: &[(&str, &Element)]) -> Self {
        YoungForm {
            kind,
            witnesses: named
                .iter()
                .map(|(n, e)| (n.to_string(), (*e).clone()))
                .collect(),
            generation: Vec::new(),
            derivation: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Result<&Element> {
        self.witnesses
            .get(name)
            .ok_or_else(|| Error::Input(format!("{} form lacks witness {name:?}", self.kind.name())))
    }

    fn ordered_witnesses(&self) -> Result<Vec<Element>> {
        self.kind
            .symbols()
            .iter()
            .map(|n| self.get(n).cloned())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let w: serde_json::Map<String, Value> = self
            .witnesses
            .iter()
            .map(|(k, v)| (k.clone(), v.to_json()))
            .collect();
        let mut out = json!({"kind": self.kind.name(), "witnesses": w});
        if self.kind.is_group_type() {
            out["generation"] = json!(self.generation);
            out["derivation"] = json!(self.derivation);
        }
        out
    }

    pub fn from_json(spec: &GroupSpec, v: &Value) -> Result<Self> {
        let kind = YoungKind::parse(
            v.get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Input("form lacks kind".into()))?,
        )?;
        let mut witnesses = BTreeMap::new();
        if let Some(obj) = v.get("witnesses").and_then(Value::as_object) {
            for (k, e) in obj {
                witnesses.insert(k.clone(), spec.parse_element(e)?);
            }
        }
        let words = |name: &str| -> Result<Vec<Vec<i32>>> {
            match v.get(name) {
                None | Some(Value::Null) => Ok(Vec::new()),
                Some(x) => Ok(serde_json::from_value(x.clone())?),
            }
        };
        Ok(YoungForm {
            kind,
            witnesses,
            generation: words("generation")?,
            derivation: words("derivation")?,
        })
    }
}

/// Evaluates a word of signed 1-based letters over `gens`.
pub fn eval_word(spec: &GroupSpec, gens: &[Element], word: &[i32]) -> Result<Element> {
    let mut x = spec.identity();
    for &l in word {
        let i = l.unsigned_abs() as usize;
        if l == 0 || i > gens.len() {
            return Err(Error::Input(format!("letter {l} out of range")));
        }
        let g = if l > 0 {
            gens[i - 1].clone()
        } else {
            spec.invert(&gens[i - 1])?
        };
        x = spec.multiply(&x, &g)?;
    }
    Ok(x)
}

struct Ops<'a>(&'a GroupSpec);

impl Ops<'_> {
    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.0.mul_unchecked(a, b)
    }
    fn inv(&self, a: &Element) -> Element {
        self.0.inv_unchecked(a)
    }
    fn comm(&self, a: &Element, b: &Element) -> Element {
        self.0.comm_unchecked(a, b)
    }
    fn conj(&self, a: &Element, b: &Element) -> Element {
        self.0.conj_unchecked(a, b)
    }
    fn sq(&self, a: &Element) -> Element {
        self.0.mul_unchecked(a, a)
    }
    fn one(&self, a: &Element) -> bool {
        self.0.is_identity(a)
    }
    fn commute(&self, a: &Element, b: &Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
}

fn check_all(spec: &GroupSpec, xs: &[&Element]) -> Result<()> {
    for x in xs {
        spec.invert(x)?;
    }
    Ok(())
}

/// Evaluates the defining relations of `kind` on the named witnesses.
/// Set-shape conditions are checked by [`validate_form`].
pub fn check_young_relations(
    spec: &GroupSpec,
    kind: YoungKind,
    witnesses: &BTreeMap<String, Element>,
) -> Result<bool> {
    let w = |n: &str| {
        witnesses
            .get(n)
            .ok_or_else(|| Error::Input(format!("{} needs witness {n:?}", kind.name())))
    };
    let named: Vec<&Element> = kind.symbols().iter().map(|n| w(n)).collect::<Result<_>>()?;
    check_all(spec, &named)?;
    let o = Ops(spec);
    Ok(match kind {
        YoungKind::TypeI => {
            let (a, b) = (w("a")?, w("b")?);
            let ab = o.comm(a, b);
            o.one(&o.comm(&ab, a)) && o.one(&o.comm(&ab, b))
        }
        YoungKind::TypeII => {
            let (a, b, c) = (w("a")?, w("b")?, w("c")?);
            !o.one(c)
                && o.commute(a, b)
                && o.commute(a, c)
                && (o.conj(c, b) == o.sq(c) || o.conj(&o.sq(c), b) == *c)
        }
        YoungKind::TypeIII => {
            let (a, b) = (w("a")?, w("b")?);
            !o.one(a) && o.conj(a, b) == o.sq(a)
        }
        YoungKind::TypeIV => {
            let (a, b) = (w("a")?, w("b")?);
            let ab = o.conj(a, b);
            !o.one(a) && o.conj(a, &o.sq(b)) == o.mul(a, &ab) && o.commute(a, &ab)
        }
        YoungKind::Central3 => true,
        YoungKind::Conjugate3 => {
            let (a, b) = (w("a")?, w("b")?);
            o.commute(a, &o.conj(a, b))
        }
        YoungKind::P5a | YoungKind::P5b => {
            let (x, c, base) = (w("x")?, w("c")?, w("base")?);
            let cx = o.conj(c, x);
            (base == x || *base == o.inv(x))
                && is_positive(spec, c)?
                && o.conj(c, &o.sq(x)) == o.mul(c, &cx)
                && o.commute(c, &cx)
        }
        YoungKind::P5c => {
            let (x, c) = (w("x")?, w("c")?);
            let c2 = o.sq(c);
            is_positive(spec, c)? && (o.conj(c, x) == c2 || o.conj(&c2, x) == *c)
        }
        YoungKind::P6a => {
            let (a, c, y) = (w("a")?, w("c")?, w("y")?);
            (o.comm(a, y) == *c || o.comm(y, a) == *c) && o.commute(c, y) && o.commute(c, a)
        }
        YoungKind::P6b => {
            let (a, c, y) = (w("a")?, w("c")?, w("y")?);
            let ay = o.comm(a, y);
            (ay == *c || o.one(&ay)) && o.commute(c, a) && o.conj(&o.sq(c), y) == *c
        }
        YoungKind::P6c => {
            let (a, c, y) = (w("a")?, w("c")?, w("y")?);
            (o.one(&o.comm(a, y)) || o.comm(y, a) == o.sq(c))
                && o.commute(c, a)
                && o.conj(c, y) == o.sq(c)
        }
    })
}

fn same_set(spec: &GroupSpec, s: &FiniteSubset, elems: Vec<Element>) -> Result<bool> {
    let n = elems.len();
    let t = make_subset(spec, elems)?;
    Ok(t.len() == n && t.elems() == s.elems())
}

/// The progression `{a, ac, ..., ac^{n-1}}`.
fn progression(o: &Ops, a: &Element, c: &Element, n: usize) -> Vec<Element> {
    let mut out = Vec::with_capacity(n);
    let mut x = a.clone();
    for _ in 0..n {
        out.push(x.clone());
        x = o.mul(&x, c);
    }
    out
}

/// Re-checks a matched form against `S`: its relations and that `S` has
/// exactly the shape the form describes.
pub fn validate_form(spec: &GroupSpec, s: &FiniteSubset, form: &YoungForm) -> Result<bool> {
    if !check_young_relations(spec, form.kind, &form.witnesses)? {
        return Ok(false);
    }
    let o = Ops(spec);
    let k = s.len();
    match form.kind {
        YoungKind::TypeI | YoungKind::TypeII | YoungKind::TypeIII | YoungKind::TypeIV => {
            let gens = form.ordered_witnesses()?;
            if form.generation.len() != k || form.derivation.len() != gens.len() {
                return Ok(false);
            }
            for (x, w) in s.elems().iter().zip(&form.generation) {
                if eval_word(spec, &gens, w)? != *x {
                    return Ok(false);
                }
            }
            for (g, w) in gens.iter().zip(&form.derivation) {
                if eval_word(spec, s.elems(), w)? != *g {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        YoungKind::Central3 => {
            let z = form.get("z")?;
            Ok(k == 3 && s.elems().contains(z) && s.elems().iter().all(|x| o.commute(x, z)))
        }
        YoungKind::Conjugate3 => {
            let (a, b) = (form.get("a")?, form.get("b")?);
            Ok(k == 3 && same_set(spec, s, vec![a.clone(), o.conj(a, b), b.clone()])?)
        }
        YoungKind::P5a | YoungKind::P5b => {
            let (x, c, base) = (form.get("x")?, form.get("c")?, form.get("base")?);
            let cx = o.conj(c, x);
            let third = if form.kind == YoungKind::P5a {
                o.mul(base, &cx)
            } else {
                o.mul(&o.mul(base, c), &cx)
            };
            Ok(k == 3 && same_set(spec, s, vec![base.clone(), o.mul(base, c), third])?)
        }
        YoungKind::P5c => {
            let (x, c) = (form.get("x")?, form.get("c")?);
            Ok(k == 3 && same_set(spec, s, progression(&o, x, c, 3))?)
        }
        YoungKind::P6a | YoungKind::P6b | YoungKind::P6c => {
            let (a, c, y) = (form.get("a")?, form.get("c")?, form.get("y")?);
            if k < 4 || (form.kind != YoungKind::P6a && k != 4) {
                return Ok(false);
            }
            let mut elems = progression(&o, a, c, k - 1);
            elems.push(y.clone());
            same_set(spec, s, elems)
        }
    }
}

/// Classifies a non-abelian triple with `|S^2| = 7`: a central element, the
/// conjugate shape `{a, a^b, b}`, or one of the three progression-like shapes
/// built from `x_1` and `c = x_1^{-1} x_2`. Tried in that order.
pub fn match_triple_form(spec: &GroupSpec, s: &FiniteSubset) -> Result<Option<YoungForm>> {
    if s.len() != 3 {
        return Err(Error::Precondition("triple matching needs |S| = 3".into()));
    }
    if square_size(s) != 7 {
        return Err(Error::Precondition("triple matching needs |S^2| = 7".into()));
    }
    if s.noncommuting_pair().is_none() {
        return Err(Error::Precondition("triple matching needs a non-commuting pair".into()));
    }
    let o = Ops(spec);
    let e = s.elems();
    for z in e {
        if e.iter().all(|x| o.commute(x, z)) {
            return Ok(Some(YoungForm::new(YoungKind::Central3, &[("z", z)])));
        }
    }
    for a in e {
        for b in e {
            if a == b {
                continue;
            }
            let ab = o.conj(a, b);
            if ab != *a && ab != *b && e.contains(&ab) && o.commute(a, &ab) {
                return Ok(Some(YoungForm::new(YoungKind::Conjugate3, &[("a", a), ("b", b)])));
            }
        }
    }
    let (x1, x2, x3) = (&e[0], &e[1], &e[2]);
    let c = o.mul(&o.inv(x1), x2);
    let x1_inv = o.inv(x1);
    let try_kind = |kind: YoungKind, x: &Element| -> Result<Option<YoungForm>> {
        let form = YoungForm::new(kind, &[("x", x), ("c", &c), ("base", x1)]);
        let cx = o.conj(&c, x);
        let third = match kind {
            YoungKind::P5a => o.mul(x1, &cx),
            _ => o.mul(&o.mul(x1, &c), &cx),
        };
        if third == *x3 && check_young_relations(spec, kind, &form.witnesses)? {
            Ok(Some(form))
        } else {
            Ok(None)
        }
    };
    for kind in [YoungKind::P5a, YoungKind::P5b] {
        for x in [x1, &x1_inv] {
            if let Some(f) = try_kind(kind, x)? {
                return Ok(Some(f));
            }
        }
    }
    let form = YoungForm::new(YoungKind::P5c, &[("x", x1), ("c", &c)]);
    if o.mul(x2, &c) == *x3 && check_young_relations(spec, YoungKind::P5c, &form.witnesses)? {
        return Ok(Some(form));
    }
    Ok(None)
}

/// For `S = T ∪ {y}` with `T = {a, ac, ..., ac^{k-2}}` a commuting progression,
/// matches the three extension shapes. Candidates `y` are tried ascending,
/// and `T` is read from its minimum first, then from its maximum.
pub fn match_extension_form(spec: &GroupSpec, s: &FiniteSubset) -> Result<Option<YoungForm>> {
    let k = s.len();
    if k < 4 {
        return Err(Error::Precondition("extension matching needs |S| >= 4".into()));
    }
    if square_size(s) != 3 * k - 2 {
        return Err(Error::Precondition("extension matching needs |S^2| = 3|S| - 2".into()));
    }
    let o = Ops(spec);
    for idx in 0..k {
        let y = &s.elems()[idx];
        let t = s.without(idx).expect("k >= 4");
        let te = t.elems();
        if te.iter().all(|x| o.commute(x, y)) {
            continue;
        }
        let kinds: &[YoungKind] = if k == 4 {
            &[YoungKind::P6a, YoungKind::P6b, YoungKind::P6c]
        } else {
            &[YoungKind::P6a]
        };
        // T read upwards (c > 1), then downwards (c < 1)
        let descending: Vec<Element> = te.iter().rev().cloned().collect();
        for run in [te, &descending[..]] {
            let a = &run[0];
            let c = o.mul(&o.inv(a), &run[1]);
            if !o.commute(a, &c) || progression(&o, a, &c, k - 1) != run {
                continue;
            }
            for &kind in kinds {
                let form = YoungForm::new(kind, &[("a", a), ("c", &c), ("y", y)]);
                if check_young_relations(spec, kind, &form.witnesses)? {
                    return Ok(Some(form));
                }
            }
        }
    }
    Ok(None)
}

/// Candidate generators: the elements of `S`, their inverses and the
/// quotients `s^{-1} t`, `t s^{-1}`, each with a word over `S`.
fn generator_pool(spec: &GroupSpec, s: &FiniteSubset) -> Result<Vec<(Element, Vec<i32>)>> {
    let o = Ops(spec);
    let e = s.elems();
    let mut pool: Vec<(Element, Vec<i32>)> = Vec::new();
    let mut seen = HashSet::new();
    let mut push = |x: Element, w: Vec<i32>| {
        if !spec.is_identity(&x) && seen.insert(x.clone()) {
            pool.push((x, w));
        }
    };
    for (i, x) in e.iter().enumerate() {
        let li = i as i32 + 1;
        push(x.clone(), vec![li]);
        push(o.inv(x), vec![-li]);
    }
    for (i, x) in e.iter().enumerate() {
        for (j, y) in e.iter().enumerate() {
            if i != j {
                let (li, lj) = (i as i32 + 1, j as i32 + 1);
                push(o.mul(&o.inv(x), y), vec![-li, lj]);
                push(o.mul(y, &o.inv(x)), vec![lj, -li]);
            }
        }
    }
    let mut keys: Vec<Element> = pool.iter().map(|p| p.0.clone()).collect();
    sort_elements(spec, &mut keys)?;
    let mut by_elem: HashMap<Element, Vec<i32>> = pool.into_iter().collect();
    Ok(keys
        .into_iter()
        .map(|x| {
            let w = by_elem.remove(&x).expect("pooled");
            (x, w)
        })
        .collect())
}

/// Breadth-first search over products of `gens` and their inverses, at most
/// `radius` letters; returns a shortest word for each target reached.
fn bfs_words(
    spec: &GroupSpec,
    gens: &[Element],
    targets: &[Element],
    radius: usize,
    cap: usize,
) -> Vec<Option<Vec<i32>>> {
    let o = Ops(spec);
    let mut letters: Vec<(i32, Element)> = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.iter().enumerate() {
        letters.push((i as i32 + 1, g.clone()));
        letters.push((-(i as i32) - 1, o.inv(g)));
    }
    let mut found: Vec<Option<Vec<i32>>> = vec![None; targets.len()];
    let mut remaining = targets.len();
    let record = |x: &Element, w: &Vec<i32>, found: &mut Vec<Option<Vec<i32>>>| -> usize {
        let mut hits = 0;
        for (slot, t) in found.iter_mut().zip(targets) {
            if slot.is_none() && t == x {
                *slot = Some(w.clone());
                hits += 1;
            }
        }
        hits
    };
    let id = spec.identity();
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut frontier: Vec<(Element, Vec<i32>)> = vec![(id.clone(), Vec::new())];
    remaining -= record(&id, &Vec::new(), &mut found);
    for _ in 0..radius {
        if remaining == 0 || seen.len() > cap {
            break;
        }
        let mut next = Vec::new();
        for (x, w) in &frontier {
            for (l, g) in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let y = o.mul(x, g);
                if seen.insert(y.clone()) {
                    let mut wy = w.clone();
                    wy.push(*l);
                    remaining -= record(&y, &wy, &mut found);
                    next.push((y, wy));
                }
            }
        }
        frontier = next;
    }
    found
}

/// A word of length at most `radius` in `gens` and inverses evaluating to
/// `x`, if one exists. Absence is not a proof of non-membership.
pub fn bounded_membership(
    spec: &GroupSpec,
    x: &Element,
    gens: &[Element],
    radius: usize,
) -> Result<Option<Vec<i32>>> {
    if radius < 1 {
        return Err(Error::Precondition("membership search needs radius >= 1".into()));
    }
    check_all(spec, &gens.iter().chain([x]).collect::<Vec<_>>())?;
    Ok(bfs_words(spec, gens, std::slice::from_ref(x), radius, usize::MAX)
        .pop()
        .flatten())
}

const MEMBERSHIP_CAP: usize = 200_000;

/// Searches generators among short words in `S` satisfying the relations of
/// one of the four young types, such that every element of `S` is reached
/// within `radius` letters. Both inclusions are recorded as words, so a match
/// shows `<S>` is generated by witnesses obeying those relations.
pub fn match_young_group(
    spec: &GroupSpec,
    s: &FiniteSubset,
    radius: usize,
) -> Result<Option<YoungForm>> {
    if s.noncommuting_pair().is_none() {
        return Ok(None);
    }
    let o = Ops(spec);
    let pool = generator_pool(spec, s)?;
    let targets = s.elems();
    let attempt = |kind: YoungKind, chosen: &[&(Element, Vec<i32>)]| -> Option<YoungForm> {
        let gens: Vec<Element> = chosen.iter().map(|p| p.0.clone()).collect();
        let words = bfs_words(spec, &gens, targets, radius, MEMBERSHIP_CAP);
        let generation: Option<Vec<Vec<i32>>> = words.into_iter().collect();
        let generation = generation?;
        let named: Vec<(&str, &Element)> = kind.symbols().iter().copied().zip(&gens).collect();
        let mut form = YoungForm::new(kind, &named);
        form.generation = generation;
        form.derivation = chosen.iter().map(|p| p.1.clone()).collect();
        Some(form)
    };
    for kind in [YoungKind::TypeI, YoungKind::TypeIII, YoungKind::TypeIV] {
        for pa in &pool {
            for pb in &pool {
                let (a, b) = (&pa.0, &pb.0);
                if a == b {
                    continue;
                }
                let ok = match kind {
                    YoungKind::TypeI => {
                        let ab = o.comm(a, b);
                        !o.one(&ab) && o.commute(&ab, a) && o.commute(&ab, b)
                    }
                    YoungKind::TypeIII => o.conj(a, b) == o.sq(a),
                    _ => {
                        let ab = o.conj(a, b);
                        o.conj(&ab, b) == o.mul(a, &ab) && o.commute(a, &ab)
                    }
                };
                if ok {
                    if let Some(f) = attempt(kind, &[pa, pb]) {
                        return Ok(Some(f));
                    }
                }
            }
        }
    }
    for pb in &pool {
        for pc in &pool {
            let (b, c) = (&pb.0, &pc.0);
            if o.commute(b, c) || !(o.conj(c, b) == o.sq(c) || o.conj(&o.sq(c), b) == *c) {
                continue;
            }
            for pa in &pool {
                let a = &pa.0;
                if o.commute(a, b) && o.commute(a, c) {
                    if let Some(f) = attempt(YoungKind::TypeII, &[pa, pb, pc]) {
                        return Ok(Some(f));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Default word radius for [`match_young_group`].
pub const YOUNG_GROUP_RADIUS: usize = 10;

/// The shape-specific matcher for `S`: triples use [`match_triple_form`];
/// larger sets try [`match_extension_form`], then [`match_young_group`].
pub fn match_set(spec: &GroupSpec, s: &FiniteSubset) -> Result<Option<YoungForm>> {
    if s.len() == 3 {
        return match_triple_form(spec, s);
    }
    if let Some(f) = match_extension_form(spec, s)? {
        return Ok(Some(f));
    }
    match_young_group(spec, s, YOUNG_GROUP_RADIUS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `[[x,y],[z,w]] = 1`.
    Metabelian,
    /// `[[x,y],z] = 1`.
    Class2,
    /// `[x,y] = 1`.
    Abelian,
}

impl Law {
    pub fn name(&self) -> &'static str {
        match self {
            Law::Metabelian => "Metabelian",
            Law::Class2 => "Class2",
            Law::Abelian => "Abelian",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "metabelian" => Ok(Law::Metabelian),
            "class2" => Ok(Law::Class2),
            "abelian" => Ok(Law::Abelian),
            _ => Err(Error::Input(format!("unknown law {s:?}"))),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Law::Metabelian => 4,
            Law::Class2 => 3,
            Law::Abelian => 2,
        }
    }

    fn eval(&self, spec: &GroupSpec, xs: &[Element]) -> Element {
        let o = Ops(spec);
        match self {
            Law::Metabelian => o.comm(&o.comm(&xs[0], &xs[1]), &o.comm(&xs[2], &xs[3])),
            Law::Class2 => o.comm(&o.comm(&xs[0], &xs[1]), &xs[2]),
            Law::Abelian => o.comm(&xs[0], &xs[1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub radius: usize,
    pub samples_checked: u64,
    pub seed: u64,
    /// Every tuple of words of at most this length was checked (0: none).
    pub exhaustive_length: usize,
    pub exhaustive_tuples: u64,
    pub holds: bool,
    pub first_violation: Option<Vec<Element>>,
}

impl LawReport {
    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law.name(),
            "radius": self.radius,
            "samples_checked": self.samples_checked,
            "seed": self.seed,
            "exhaustive_length": self.exhaustive_length,
            "exhaustive_tuples": self.exhaustive_tuples,
            "holds": self.holds,
            "first_violation": self.first_violation.as_ref().map(|v| v.iter().map(Element::to_json).collect::<Vec<_>>()),
        })
    }
}

const EXHAUSTIVE_CAP: u64 = 200_000;
const SAMPLE_CHUNK: u64 = 256;

/// Distinct values of the words of length at most `len`, in discovery order.
fn short_word_values(spec: &GroupSpec, gens: &[Element], len: usize) -> Vec<Element> {
    let o = Ops(spec);
    let letters: Vec<Element> = gens.iter().flat_map(|g| [g.clone(), o.inv(g)]).collect();
    let id = spec.identity();
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &letters {
                let y = o.mul(x, g);
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    out
}

fn random_word(spec: &GroupSpec, letters: &[Element], radius: usize, rng: &mut ChaCha8Rng) -> Element {
    let len = rng.gen_range(1..=radius);
    let mut x = letters[rng.gen_range(0..letters.len())].clone();
    for _ in 1..len {
        x = spec.mul_unchecked(&x, &letters[rng.gen_range(0..letters.len())]);
    }
    x
}

/// Checks `law` on the subgroup generated by `generators`: exhaustively on
/// all tuples of short words where that is cheap, then on `sample_count`
/// seeded random tuples of words of length at most `radius`. A violation is
/// a proof; `holds = true` is evidence only.
pub fn law_check(
    spec: &GroupSpec,
    generators: &[Element],
    law: Law,
    radius: usize,
    sample_count: u64,
    seed: u64,
) -> Result<LawReport> {
    if radius < 1 {
        return Err(Error::Precondition("law check needs radius >= 1".into()));
    }
    if generators.is_empty() {
        return Err(Error::Precondition("law check needs generators".into()));
    }
    check_all(spec, &generators.iter().collect::<Vec<_>>())?;
    let arity = law.arity();
    let mut report = LawReport {
        law,
        radius,
        samples_checked: 0,
        seed,
        exhaustive_length: 0,
        exhaustive_tuples: 0,
        holds: true,
        first_violation: None,
    };
    for len in [2usize, 1] {
        let values = short_word_values(spec, generators, len);
        let n = values.len() as u64;
        let tuples = n.checked_pow(arity as u32).unwrap_or(u64::MAX);
        if tuples > EXHAUSTIVE_CAP {
            continue;
        }
        report.exhaustive_length = len;
        report.exhaustive_tuples = tuples;
        let violation = (0..tuples).into_par_iter().find_map_first(|mut idx| {
            let mut tuple = Vec::with_capacity(arity);
            for _ in 0..arity {
                tuple.push(values[(idx % n) as usize].clone());
                idx /= n;
            }
            tuple.reverse();
            (!spec.is_identity(&law.eval(spec, &tuple))).then_some(tuple)
        });
        if let Some(t) = violation {
            report.holds = false;
            report.first_violation = Some(t);
            return Ok(report);
        }
        break;
    }
    let o = Ops(spec);
    let letters: Vec<Element> = generators.iter().flat_map(|g| [g.clone(), o.inv(g)]).collect();
    let chunks = sample_count.div_ceil(SAMPLE_CHUNK);
    let violation = (0..chunks).into_par_iter().find_map_first(|c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let end = ((c + 1) * SAMPLE_CHUNK).min(sample_count);
        for _ in c * SAMPLE_CHUNK..end {
            let tuple: Vec<Element> = (0..arity)
                .map(|_| random_word(spec, &letters, radius, &mut rng))
                .collect();
            if !spec.is_identity(&law.eval(spec, &tuple)) {
                return Some(tuple);
            }
        }
        None
    });
    report.samples_checked = sample_count;
    if let Some(t) = violation {
        report.holds = false;
        report.first_violation = Some(t);
    }
    Ok(report)
}
