use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("phase index {0} is outside 1..=8")]
    InvalidPhase(u8),

    #[error("tau_{phase} = {value} is negative")]
    NonNegativityViolation { phase: u8, value: f64 },

    #[error("time shares sum to {sum}, exceeding 1")]
    SimplexViolation { sum: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("malformed model: {0}")]
    Model(String),

    #[error("half-duplex violation at step {step}: node {node} both transmits and receives")]
    HalfDuplexViolation { step: usize, node: u8 },

    #[error("step {step}: node {node} sends bit {bit} it does not hold")]
    UnknownBitViolation { step: usize, node: u8, bit: String },

    #[error("step {step}: link {src}>{dst} used more than once")]
    DuplicateLink { step: usize, src: u8, dst: u8 },

    #[error("invalid node id {0} (expected 1, 2 or 3)")]
    InvalidNode(u8),

    #[error("invalid sweep configuration: {0}")]
    Config(String),
}
