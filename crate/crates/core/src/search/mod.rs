//! Balls in the model groups, pruned enumeration of small-doubling subsets,
//! explicit constructions and the verification harness.

mod ball;
mod construct;
mod enumerate;
pub mod verify;

pub use ball::{ball, BallSpec, DEFAULT_BALL_CAP};
pub use construct::{construct_4k5, construction_group, random_two_ap};
pub use enumerate::{
    enumerate_small_doubling, Enumeration, EnumerationTask, Normalization, ProductTable,
    SquareBound,
};

/// Worker count from `SMALLDOUBLING_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("SMALLDOUBLING_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
