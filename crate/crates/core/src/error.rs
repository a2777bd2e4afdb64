use thiserror::Error;

/// Errors raised by the model and solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no plasmon resonance: ω_p²/(ε_∞ + f ε_b) = {omega_sq:.6e} meV² ≤ γ_p² = {gamma_sq:.6e} meV²")]
    NoPlasmonResonance { omega_sq: f64, gamma_sq: f64 },
    #[error("polarizability pole at ω = {0} meV")]
    Pole(f64),
    #[error("degenerate flux: normalization moment {0:e} underflows")]
    DegenerateFlux(f64),
    #[error("degenerate steady state: {0}")]
    DegenerateSteadyState(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("no inflection in window: {0}")]
    NoInflection(String),
    #[error("config error at `{path}`: {msg}")]
    Config { path: String, msg: String },
    #[error("at λ = {lambda} nm, n = {n}: {source}")]
    AtPoint {
        lambda: f64,
        n: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Config { path: path.into(), msg: msg.into() }
    }

    pub fn at(self, lambda: f64, n: f64) -> Self {
        Error::AtPoint { lambda, n, source: Box::new(self) }
    }

    /// True for errors caused by invalid inputs rather than numerics.
    pub fn is_config(&self) -> bool {
        match self {
            Error::Config { .. } | Error::Domain(_) | Error::NoPlasmonResonance { .. } => true,
            Error::AtPoint { source, .. } => source.is_config(),
            _ => false,
        }
    }
}
