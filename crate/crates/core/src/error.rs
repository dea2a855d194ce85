use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(usize, usize),
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("no edge {0} -> {1} in the follower graph")]
    NotAnEdge(usize, usize),
    #[error("G_C not strongly connected")]
    NotStronglyConnected,
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
    #[error("action profile has {got} entries, expected {expected}")]
    ProfileLength { got: usize, expected: usize },
    #[error("action x[{index}] = {value} outside [0, {x_max}]")]
    ActionOutOfBounds { index: usize, value: f64, x_max: f64 },
}

impl Error {
    pub(crate) fn param(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
