use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("alpha^2 = {alpha2} is not positive at E = {energy}")]
    NonPositiveAlpha2 { energy: f64, alpha2: f64 },

    #[error("omega and omega_tilde both vanish; no confining interaction")]
    DegenerateProblem,

    #[error("Kummer parameter a = {kummer_a} does not match -n_r = -{n_r}")]
    QuantizationMismatch { kummer_a: f64, n_r: u32 },

    #[error("energy {energy} is too close to the rest mass; E^2 - m^2 vanishes")]
    EnergyAtMass { energy: f64 },

    #[error("integrated charge {charge} is too small to normalize")]
    NullCharge { charge: f64 },

    #[error("radial grid has {nodes} nodes, at least {required} are needed")]
    GridTooCoarse { nodes: usize, required: usize },

    #[error("grid is malformed: {0}")]
    MalformedGrid(String),

    #[error("p~^2/m^2 = {value} exceeds the pair-creation threshold 4")]
    AboveThreshold { value: f64 },

    #[error("bandgap m vanishes")]
    ZeroGap,
}

impl Error {
    /// Stable identifier used in machine-readable error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::NonPositiveAlpha2 { .. } => "NonPositiveAlpha2",
            Error::DegenerateProblem => "DegenerateProblem",
            Error::QuantizationMismatch { .. } => "QuantizationMismatch",
            Error::EnergyAtMass { .. } => "EnergyAtMass",
            Error::NullCharge { .. } => "NullCharge",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::MalformedGrid(_) => "MalformedGrid",
            Error::AboveThreshold { .. } => "AboveThreshold",
            Error::ZeroGap => "ZeroGap",
        }
    }
}
