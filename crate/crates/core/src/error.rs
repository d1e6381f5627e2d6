use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex count n={n} (need n >= {min})")]
    VertexCount { n: usize, min: usize },
    #[error("invalid weight cap q={0} (need q >= 1)")]
    WeightCap(u32),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("weight {weight} out of range 1..={q}")]
    WeightRange { weight: u32, q: u32 },
    #[error("duplicate edge {0}")]
    Duplicate(alloc::string::String),
    #[error("threshold s must be at least 1")]
    Threshold,
    #[error("pattern has no vertices")]
    EmptyPattern,
    #[error("instance too large: {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("unknown pattern name `{0}`")]
    UnknownPattern(alloc::string::String),
    #[error("invalid parameter: {0}")]
    Parameter(alloc::string::String),
}
