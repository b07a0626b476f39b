use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M_ij - conj(M_ji)| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    NotConverged {
        what: &'static str,
        iterations: usize,
    },

    #[error("inverse temperature must be finite and positive, got {0}")]
    InvalidBeta(f64),

    #[error("Lambert W_-1 is defined on [-1/e, 0), got {0}")]
    LambertDomain(f64),

    #[error("asymptote invalid at this temperature: {0}")]
    AsymptoteInvalid(String),

    #[error("no low-temperature asymptote: {0}")]
    NoLowTAsymptote(String),

    #[error("root not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error("coupling is not canonical: {0}")]
    NotCanonical(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
