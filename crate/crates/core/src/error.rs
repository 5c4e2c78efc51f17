use thiserror::Error;

/// Errors raised by the algebra layer. The session front end reports these
/// verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("degree undefined for the zero polynomial")]
    DegreeUndefined,
    #[error("inhomogeneous polynomial {poly}: components of degrees {degrees:?}")]
    Inhomogeneous { poly: String, degrees: Vec<i64> },
    #[error("colon by zero ideal")]
    ColonByZero,
    #[error("Groebner basis exceeded the size cap of {cap} elements")]
    BasisCap { cap: usize },
    #[error("invalid presentation entry ({row},{col}): {reason}")]
    Presentation { row: usize, col: usize, reason: String },
    #[error("invalid presentation: {0}")]
    Shape(String),
    #[error("irrelevant prime: every variable lies in the ideal")]
    IrrelevantPrime,
    #[error("not a prime ideal: {0}")]
    NotPrime(String),
    #[error("section not defined at P: {0}")]
    NotDefinedAtPrime(String),
    #[error("empty basic open target: {0}")]
    EmptyBasicOpen(String),
    #[error("invalid section: {0}")]
    InvalidSection(String),
    #[error("sections live on different basic opens or ambient rings")]
    AmbientMismatch,
    #[error("unknown identifier '{0}'")]
    UnknownIdentifier(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("lattice axiom {axiom} fails: {detail}")]
    LatticeAxiom { axiom: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
