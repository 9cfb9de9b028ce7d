//! Extreme points of the polytope of G-invariant couplings of two finite
//! sets with fixed marginals.
//!
//! The crate computes orbit structure of a finite permutation action,
//! decides goodness of grid subsets and G-goodness of orbit sets, counts and
//! enumerates maximal (G-)good sets, and enumerates the extreme couplings in
//! exact rational arithmetic, checking them against the binomial bound
//! `C(m12, m1 + n1 - 1)`.

pub mod cli;
pub mod counting_asymptotics;
pub mod error;
pub mod extreme_measures;
pub mod g_good;
pub mod good_sets;
pub mod group_action;
pub mod instance;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use extreme_measures::{InvariantMeasure, Marginals};
pub use g_good::{GInvariantSubset, OrbitGrid};
pub use good_sets::{Cell, GridSubset, LoopWitness};
pub use group_action::{ActionSpec, Generator, OrbitPartition};
