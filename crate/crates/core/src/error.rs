use thiserror::Error;

use crate::group_action::ValidationReport;
use crate::good_sets::LoopWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid action: {0}")]
    InvalidAction(ValidationReport),

    #[error("cell ({0}, {1}) is outside the {2}x{3} grid")]
    CellOutOfRange(usize, usize, usize, usize),

    #[error("duplicate cell ({0}, {1})")]
    DuplicateCell(usize, usize),

    #[error("grid dimensions must be positive, got {0}x{1}")]
    EmptyGrid(usize, usize),

    #[error("not a good set: {0}")]
    NotGood(LoopWitness),

    #[error("function domain does not match the cell set")]
    DomainMismatch,

    #[error("unknown orbit id {0}")]
    UnknownOrbit(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("k = {k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("fixed-point counts need m, n >= 2, got {0}x{1}")]
    DegenerateCount(usize, usize),

    #[error("enumeration needs {needed} items, above the cap of {cap}")]
    CapExceeded { needed: String, cap: u64 },

    #[error("marginal mass mismatch: sum mu1 = {0}, sum mu2 = {1}")]
    MarginalMassMismatch(String, String),

    #[error("marginals must have total mass 1, got {0}")]
    NotProbability(String),

    #[error("marginal {which}[{index}] = {value} is not strictly positive")]
    NonPositiveMarginal {
        which: &'static str,
        index: usize,
        value: String,
    },

    #[error("marginal {0} is not constant on orbits")]
    NonInvariantMarginal(&'static str),

    #[error("measure is not in the polytope of couplings")]
    NotInPolytope,

    #[error("support is not a maximal G-good set")]
    NotMaximalGGood,

    #[error("inconsistent linear system on a maximal G-good support")]
    InconsistentSystem,

    #[error("instance too large for the brute-force oracle: {0} product orbits")]
    OracleTooLarge(usize),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::OracleTooLarge(_))
    }
}
