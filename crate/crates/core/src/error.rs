use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("z = {re} + {im}i lies on the branch cut (1, ∞); use li2_upper_boundary for boundary values")]
    BranchCut { re: f64, im: f64 },

    #[error("argument {0} is within 1e-10 of a pole at an integer multiple of π")]
    Pole(f64),

    #[error("target {target} is not strictly bracketed by g(lo) = {g_lo} and g(hi) = {g_hi}")]
    Bracket { target: f64, g_lo: f64, g_hi: f64 },

    #[error("{what} budget exhausted: best estimate {best} with error estimate {error}")]
    BudgetExhausted {
        what: &'static str,
        best: f64,
        error: f64,
    },

    #[error("a = {a} is not admissible: psi(a) = {psi}, phi_a(pi) = {phi_pi}")]
    Inadmissible { a: f64, psi: f64, phi_pi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
