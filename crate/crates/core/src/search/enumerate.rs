use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::ball::{ball, BallSpec};
use crate::error::{Error, Result};
use crate::group::{Element, Family, GroupSpec};
use crate::product::{sort_elements, FiniteSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    None,
    /// Abelian ambient only: `min S` is the identity.
    TranslateMinToIdentity,
    /// `Z` only: `min S = 0` and the elements have gcd 1.
    TranslateAndPrimitiveRatio,
}

impl Normalization {
    pub fn name(&self) -> &'static str {
        match self {
            Normalization::None => "none",
            Normalization::TranslateMinToIdentity => "translate_min_to_identity",
            Normalization::TranslateAndPrimitiveRatio => "translate_and_primitive_ratio",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Normalization::None),
            "translate_min_to_identity" => Ok(Normalization::TranslateMinToIdentity),
            "translate_and_primitive_ratio" => Ok(Normalization::TranslateAndPrimitiveRatio),
            _ => Err(Error::Input(format!("unknown normalization {s:?}"))),
        }
    }

    fn check(&self, spec: &GroupSpec) -> Result<()> {
        match self {
            Normalization::None => Ok(()),
            Normalization::TranslateMinToIdentity if spec.is_abelian() => Ok(()),
            Normalization::TranslateAndPrimitiveRatio
                if spec.family == Family::IntegerLattice(1) =>
            {
                Ok(())
            }
            _ => Err(Error::Precondition(format!(
                "normalization {} does not apply to {}",
                self.name(),
                spec.family_name()
            ))),
        }
    }
}

/// `|S^2| <= alpha k + beta` with `alpha = alpha_num / alpha_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareBound {
    pub alpha_num: i64,
    pub alpha_den: i64,
    pub beta: i64,
}

impl SquareBound {
    pub fn new(alpha_num: i64, alpha_den: i64, beta: i64) -> Result<Self> {
        if alpha_den < 1 {
            return Err(Error::Input("alpha denominator must be positive".into()));
        }
        Ok(SquareBound {
            alpha_num,
            alpha_den,
            beta,
        })
    }

    pub fn affine(alpha: i64, beta: i64) -> Self {
        SquareBound {
            alpha_num: alpha,
            alpha_den: 1,
            beta,
        }
    }

    /// The largest admissible `|S^2|` for `|S| = k`.
    pub fn limit(&self, k: usize) -> i64 {
        (self.alpha_num * k as i64).div_euclid(self.alpha_den) + self.beta
    }

    pub fn to_json(&self) -> Value {
        let alpha = if self.alpha_den == 1 {
            json!(self.alpha_num)
        } else {
            json!(format!("{}/{}", self.alpha_num, self.alpha_den))
        };
        json!({"alpha": alpha, "beta": self.beta})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let beta = v
            .get("beta")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Input("bound lacks integer beta".into()))?;
        let alpha = v
            .get("alpha")
            .ok_or_else(|| Error::Input("bound lacks alpha".into()))?;
        match alpha {
            Value::Number(n) => {
                let a = n
                    .as_i64()
                    .ok_or_else(|| Error::Input("alpha must be an integer or \"p/q\"".into()))?;
                Ok(SquareBound::affine(a, beta))
            }
            Value::String(s) => {
                let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let p = p.trim().parse().map_err(|_| Error::Input(format!("bad alpha {s:?}")))?;
                let q = q.trim().parse().map_err(|_| Error::Input(format!("bad alpha {s:?}")))?;
                SquareBound::new(p, q, beta)
            }
            _ => Err(Error::Input("alpha must be an integer or \"p/q\"".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub ball: BallSpec,
    pub k: usize,
    /// `None` enumerates every `k`-subset.
    pub bound: Option<SquareBound>,
    pub normalize: Normalization,
}

/// The ball with all pairwise products interned, so that a subset search
/// touches only integer ids.
#[derive(Clone, Debug)]
pub struct ProductTable {
    pub spec: GroupSpec,
    pub ball: Vec<Element>,
    table: Vec<u32>,
    products: usize,
    identity: Option<u32>,
    values: Option<Vec<BigInt>>,
}

impl ProductTable {
    /// `ball` is sorted and deduplicated first; pruning relies on the order.
    pub fn new(spec: &GroupSpec, mut ball: Vec<Element>) -> Result<Self> {
        for x in &ball {
            spec.invert(x)?;
        }
        sort_elements(spec, &mut ball)?;
        ball.dedup();
        let n = ball.len();
        let mut ids: HashMap<Element, u32> = HashMap::new();
        let mut table = Vec::with_capacity(n * n);
        for x in &ball {
            for y in &ball {
                let p = spec.mul_unchecked(x, y);
                let next = ids.len() as u32;
                table.push(*ids.entry(p).or_insert(next));
            }
        }
        let id = spec.identity();
        let identity = ball.iter().position(|x| *x == id).map(|i| i as u32);
        let values = match spec.family {
            Family::IntegerLattice(1) => Some(
                ball.iter()
                    .map(|x| x.as_vector().expect("lattice element")[0].clone())
                    .collect(),
            ),
            _ => None,
        };
        Ok(ProductTable {
            spec: spec.clone(),
            ball,
            table,
            products: ids.len(),
            identity,
            values,
        })
    }

    pub fn from_ball(b: &BallSpec) -> Result<Self> {
        ProductTable::new(&b.spec, ball(b)?)
    }

    pub fn len(&self) -> usize {
        self.ball.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ball.is_empty()
    }

    /// Id of the product `ball[i] * ball[j]`.
    pub fn product(&self, i: u32, j: u32) -> u32 {
        self.table[i as usize * self.ball.len() + j as usize]
    }

    /// `|S^2|` for a set of ball indices.
    pub fn square_size(&self, idx: &[u32]) -> usize {
        let mut seen = vec![false; self.products];
        let mut count = 0;
        for &i in idx {
            for &j in idx {
                let p = self.product(i, j) as usize;
                if !seen[p] {
                    seen[p] = true;
                    count += 1;
                }
            }
        }
        count
    }

    pub fn subset(&self, idx: &[u32]) -> FiniteSubset {
        FiniteSubset::from_sorted(
            self.spec.clone(),
            idx.iter().map(|&i| self.ball[i as usize].clone()).collect(),
        )
    }

    fn first_choices(&self, normalize: Normalization) -> Vec<u32> {
        match normalize {
            Normalization::None => (0..self.ball.len() as u32).collect(),
            _ => self.identity.into_iter().collect(),
        }
    }

    fn accepts(&self, normalize: Normalization, idx: &[u32]) -> bool {
        if normalize != Normalization::TranslateAndPrimitiveRatio || idx.len() < 2 {
            return true;
        }
        let values = self.values.as_ref().expect("checked rank-1 lattice");
        let mut g = BigInt::zero();
        for &i in idx {
            g = g.gcd(&values[i as usize]);
        }
        g.is_one()
    }

    /// The `k`-subsets of the ball with `|S^2|` within `bound`, modulo
    /// `normalize`, in lexicographic order of ball indices. The search tree
    /// is split after two levels and run on `workers` threads; the merge
    /// keeps task order, so the output does not depend on `workers`.
    pub fn enumerate(
        &self,
        k: usize,
        bound: Option<SquareBound>,
        normalize: Normalization,
        workers: usize,
    ) -> Result<Enumeration> {
        normalize.check(&self.spec)?;
        if k < 1 || k > self.ball.len() {
            return Err(Error::Precondition(format!(
                "need 1 <= k <= |ball| = {}",
                self.ball.len()
            )));
        }
        let limit = match bound {
            Some(b) => b.limit(k),
            None => (k * k) as i64,
        };
        let mut prefixes: Vec<Vec<u32>> = Vec::new();
        for i in self.first_choices(normalize) {
            if k == 1 {
                prefixes.push(vec![i]);
            } else {
                for j in i + 1..self.ball.len() as u32 {
                    prefixes.push(vec![i, j]);
                }
            }
        }
        let run = |p: &Vec<u32>| -> Vec<(Vec<u32>, u32)> {
            let mut dfs = Dfs::new(self, k, limit, normalize);
            dfs.run(p);
            dfs.out
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()
            .map_err(|e| Error::Input(format!("cannot start workers: {e}")))?;
        let chunks: Vec<Vec<(Vec<u32>, u32)>> = pool.install(|| prefixes.par_iter().map(run).collect());
        let mut sets = Vec::new();
        let mut square_sizes = Vec::new();
        for (s, q) in chunks.into_iter().flatten() {
            sets.push(s);
            square_sizes.push(q);
        }
        Ok(Enumeration {
            k,
            bound,
            normalize,
            sets,
            square_sizes,
        })
    }
}

struct Dfs<'a> {
    t: &'a ProductTable,
    k: usize,
    limit: i64,
    normalize: Normalization,
    counts: Vec<u32>,
    distinct: i64,
    stack: Vec<u32>,
    out: Vec<(Vec<u32>, u32)>,
}

impl<'a> Dfs<'a> {
    fn new(t: &'a ProductTable, k: usize, limit: i64, normalize: Normalization) -> Self {
        Dfs {
            t,
            k,
            limit,
            normalize,
            counts: vec![0; t.products],
            distinct: 0,
            stack: Vec::with_capacity(k),
            out: Vec::new(),
        }
    }

    fn bump(&mut self, p: u32) {
        let c = &mut self.counts[p as usize];
        if *c == 0 {
            self.distinct += 1;
        }
        *c += 1;
    }

    fn drop_one(&mut self, p: u32) {
        let c = &mut self.counts[p as usize];
        *c -= 1;
        if *c == 0 {
            self.distinct -= 1;
        }
    }

    fn push(&mut self, x: u32) {
        for i in 0..self.stack.len() {
            let y = self.stack[i];
            self.bump(self.t.product(x, y));
            self.bump(self.t.product(y, x));
        }
        self.bump(self.t.product(x, x));
        self.stack.push(x);
    }

    fn pop(&mut self) {
        let x = self.stack.pop().expect("non-empty");
        self.drop_one(self.t.product(x, x));
        for i in 0..self.stack.len() {
            let y = self.stack[i];
            self.drop_one(self.t.product(x, y));
            self.drop_one(self.t.product(y, x));
        }
    }

    /// Every later element lies above the current maximum, so it adds at
    /// least two new products (`z max` and `z^2`).
    fn viable(&self) -> bool {
        self.distinct + 2 * (self.k - self.stack.len()) as i64 <= self.limit
    }

    fn run(&mut self, prefix: &[u32]) {
        for &x in prefix {
            self.push(x);
            if !self.viable() {
                return;
            }
        }
        self.descend();
    }

    fn descend(&mut self) {
        if self.stack.len() == self.k {
            if self.t.accepts(self.normalize, &self.stack) {
                self.out.push((self.stack.clone(), self.distinct as u32));
            }
            return;
        }
        let n = self.t.ball.len() as u32;
        let need = (self.k - self.stack.len()) as u32;
        let start = self.stack.last().expect("prefix") + 1;
        for x in start..=n - need {
            self.push(x);
            if self.viable() {
                self.descend();
            }
            self.pop();
        }
    }
}

/// Subsets found by [`ProductTable::enumerate`], as ball indices with their
/// square sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub k: usize,
    pub bound: Option<SquareBound>,
    pub normalize: Normalization,
    pub sets: Vec<Vec<u32>>,
    pub square_sizes: Vec<u32>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn subsets<'a>(&'a self, t: &'a ProductTable) -> impl Iterator<Item = FiniteSubset> + 'a {
        self.sets.iter().map(move |s| t.subset(s))
    }

    /// One JSON object per subset.
    pub fn json_line(&self, t: &ProductTable, i: usize) -> Value {
        json!({
            "k": self.k,
            "indices": self.sets[i],
            "set": t.subset(&self.sets[i]).to_json(),
            "square_size": self.square_sizes[i],
        })
    }
}

pub fn enumerate_small_doubling(task: &EnumerationTask, workers: usize) -> Result<(ProductTable, Enumeration)> {
    let t = ProductTable::from_ball(&task.ball)?;
    let e = t.enumerate(task.k, task.bound, task.normalize, workers)?;
    Ok((t, e))
}

impl EnumerationTask {
    pub fn to_json(&self) -> Value {
        json!({
            "ball": self.ball.to_json(),
            "k": self.k,
            "bound": self.bound.map(|b| b.to_json()),
            "normalize": self.normalize.name(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ball = BallSpec::from_json(
            v.get("ball")
                .ok_or_else(|| Error::Input("task lacks ball".into()))?,
        )?;
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input("task lacks integer k".into()))? as usize;
        let bound = match v.get("bound") {
            None | Some(Value::Null) => None,
            Some(b) => Some(SquareBound::from_json(b)?),
        };
        let normalize = match v.get("normalize").and_then(Value::as_str) {
            None => Normalization::None,
            Some(s) => Normalization::parse(s)?,
        };
        Ok(EnumerationTask {
            ball,
            k,
            bound,
            normalize,
        })
    }
}
