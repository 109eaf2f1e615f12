use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("product is not cyclic: net shift {net_shift}, net kick {net_kick}")]
    NonCyclic { net_shift: String, net_kick: String },

    #[error("map `{map}` expects {expected} particle(s), got {got}")]
    Arity {
        map: String,
        expected: usize,
        got: usize,
    },

    #[error("map `{0}` needs a frame trajectory")]
    MissingTrajectory(String),

    #[error("frame map is singular")]
    SingularMap,

    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),

    #[error("Hamiltonian is not quadratic along the requested chain: {0}")]
    NonQuadratic(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("packet does not fit: {0}")]
    PacketTooWide(String),

    #[error("Hamiltonian is not split-step separable: {0}")]
    NonSeparable(String),

    #[error("packet within 8 sigma of the grid boundary on axis {axis} at t = {time}")]
    BoundaryBreach { axis: usize, time: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("bad checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
