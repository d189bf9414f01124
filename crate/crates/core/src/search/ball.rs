use std::collections::HashSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec};
use crate::product::sort_elements;

pub const DEFAULT_BALL_CAP: usize = 100_000;

/// Products of at most `radius` letters from `generators` and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSpec {
    pub spec: GroupSpec,
    pub generators: Vec<Element>,
    pub radius: usize,
    pub cap: usize,
}

impl BallSpec {
    /// Ball over the standard generators of `spec`.
    pub fn standard(spec: GroupSpec, radius: usize) -> Self {
        let generators = spec.standard_generators();
        BallSpec {
            spec,
            generators,
            radius,
            cap: DEFAULT_BALL_CAP,
        }
    }

    pub fn with_generators(spec: GroupSpec, generators: Vec<Element>, radius: usize) -> Self {
        BallSpec {
            spec,
            generators,
            radius,
            cap: DEFAULT_BALL_CAP,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": serde_json::to_value(&self.spec).expect("spec serializes"),
            "generators": self.generators.iter().map(Element::to_json).collect::<Vec<_>>(),
            "radius": self.radius,
            "cap": self.cap,
        })
    }

    /// `group` and `radius` are required; `generators` defaults to the
    /// standard ones and `cap` to [`DEFAULT_BALL_CAP`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_value(
            v.get("group")
                .cloned()
                .ok_or_else(|| Error::Input("ball lacks group".into()))?,
        )?;
        let radius = v
            .get("radius")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input("ball lacks a non-negative integer radius".into()))?
            as usize;
        let generators = match v.get("generators") {
            None | Some(Value::Null) => spec.standard_generators(),
            Some(g) => spec.parse_elements(g)?,
        };
        let cap = match v.get("cap") {
            None | Some(Value::Null) => DEFAULT_BALL_CAP,
            Some(c) => c
                .as_u64()
                .ok_or_else(|| Error::Input("cap must be a non-negative integer".into()))?
                as usize,
        };
        Ok(BallSpec {
            spec,
            generators,
            radius,
            cap,
        })
    }
}

/// The ball of `b`, deduplicated and sorted ascending.
pub fn ball(b: &BallSpec) -> Result<Vec<Element>> {
    if b.radius < 1 {
        return Err(Error::Precondition("ball radius must be >= 1".into()));
    }
    if b.generators.is_empty() {
        return Err(Error::Precondition("ball needs at least one generator".into()));
    }
    let g = &b.spec;
    let mut letters = Vec::with_capacity(2 * b.generators.len());
    for x in &b.generators {
        letters.push(x.clone());
        letters.push(g.invert(x)?);
    }
    let id = g.identity();
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..b.radius {
        let mut next = Vec::new();
        for x in &frontier {
            for l in &letters {
                let y = g.mul_unchecked(x, l);
                if seen.insert(y.clone()) {
                    if seen.len() > b.cap {
                        return Err(Error::BallCap {
                            cap: b.cap,
                            radius: b.radius,
                        });
                    }
                    out.push(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    sort_elements(g, &mut out)?;
    Ok(out)
}
