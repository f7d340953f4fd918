use thiserror::Error;

/// Errors raised by the algebra kernel, the tile geometry and the deciders.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("the generator list is empty")]
    EmptyBasis,

    #[error("tile size n = {0} is not supported (n must be even and at least {1})")]
    UnsupportedTileSize(u32, u32),

    #[error("completion exceeded the step cap of {cap} pair treatments")]
    ResourceCap { cap: usize },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("region is not contained in the solver window")]
    RegionOutsideWindow,

    #[error("no claim is available for {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    /// True for the step-cap failure, which is never a mathematical verdict.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
