use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("nodes and values differ in length ({nodes} vs {values})")]
    LengthMismatch { nodes: usize, values: usize },

    #[error("sample set is empty")]
    Empty,

    #[error("nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("evaluation point coincides with node {node}")]
    EvalPointCollision { node: usize },

    #[error("tableau nodes {first} and {second} are too close to divide by")]
    DegenerateNodes { first: usize, second: usize },

    #[error("index {index} out of range for a stencil with n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("base value for power {power} at node {node} is not finite")]
    Overflow { power: usize, node: usize },

    #[error("workspace depth {k_max} is below requested order {order}")]
    InsufficientDepth { k_max: usize, order: usize },

    #[error("derivative order {order} exceeds stencil degree {n}")]
    OrderExceedsStencil { order: usize, n: usize },

    #[error("leading a-coefficient must be 1, got {0}")]
    BadCoefficients(f64),

    #[error("step must be nonzero and finite")]
    ZeroStep,

    #[error("panel count must be at least 1")]
    NoPanels,

    #[error("dropping colliding nodes left an empty stencil")]
    EmptyStencil,
}

impl Error {
    /// True for failures caused by the numerics at the requested point
    /// (collisions, overflow, degeneracy) rather than by malformed input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::EvalPointCollision { .. }
                | Error::DegenerateNodes { .. }
                | Error::Overflow { .. }
                | Error::EmptyStencil
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
