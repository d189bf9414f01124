//! Exact arithmetic in concrete ordered groups, square sets `S^2 = {xy : x, y in S}`,
//! structure checks for sets of small doubling, and an exhaustive
//! verification harness that emits re-checkable certificates.

pub mod abelian;
pub mod cert;
pub mod error;
pub mod group;
pub mod nonabelian;
pub mod product;
pub mod search;

pub use error::{Error, Result};
pub use group::{Element, Family, GroupSpec};
pub use product::{FiniteSubset, SquareSet};
