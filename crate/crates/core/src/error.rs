use thiserror::Error;

use crate::space::PointSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("inconsistent space description: {0}")]
    InconsistentSpec(String),
    #[error("convergence is not centered at element {0}")]
    NotCentered(usize),
    #[error("convergence is not monotone: kernel {smaller:#x} is contained in {larger:#x} but its limits do not include those of the larger kernel")]
    NotMonotone { smaller: u64, larger: u64 },
    #[error("{maps} maps were given for {targets} target convergences")]
    ArityMismatch { maps: usize, targets: usize },
    #[error("collection contains no nonempty family")]
    DegenerateAlpha,
    #[error("family at index {0} is not a cover of the target open set")]
    NotACover(usize),
    #[error("family is not openly isotone: {0:?} is a member but a larger open is not")]
    NotIsotone(PointSet),
    #[error("filter base element {0} is empty")]
    EmptyBase(usize),
    #[error("truncation depth {depth} is too small: filter preimage has not stabilized")]
    TruncationInsufficient { depth: usize },
    #[error("hyperconvergence is not solid (fails: {0})")]
    NotSolid(String),
    #[error("affine map must have positive slope")]
    NonPositiveSlope,
    #[error("requested size {requested} exceeds the supported maximum {max}")]
    SizeTooLarge { requested: usize, max: usize },
    #[error("carrier of {0} elements is too large for kernel bitmasks")]
    CarrierTooLarge(usize),
    #[error("unknown law id `{0}`")]
    UnknownLaw(String),
    #[error("filters have no supremum (kernels are disjoint)")]
    NoSupremum,
    #[error("filter kernel must be nonempty")]
    EmptyKernel,
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
