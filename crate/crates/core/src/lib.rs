//! Discrete derivatives of permutations and the combinatorics built on them:
//! difference triangles, Costas-type predicates, two-valued derivatives,
//! variation extremes, convex permutations and exact enumeration over `S_n`.

pub mod convexity;
pub mod costas;
pub mod dpair;
pub mod error;
pub mod perm;
pub mod search;
pub mod triangle;
pub mod variation;

pub use error::{Error, Result};
pub use perm::{derivative, integrate, is_realizable, sum_characteristic, Derivative, Permutation};
pub use triangle::{DifferenceTriangle, IntSequence, RenderMode};
