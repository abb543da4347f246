use thiserror::Error;

/// Errors produced by the flow library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Parameter validation failed (negative viscosity, zero density, ...).
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// The relaxation time is below the floor where the Oldroyd-B root
    /// formulas are numerically meaningful; use the second-grade or
    /// Newtonian evaluation path instead.
    #[error("relaxation time {lambda:e} below floor {floor:e}; use the second-grade/Newtonian path")]
    DegenerateLambda { lambda: f64, floor: f64 },

    /// A complex-mode evaluation produced a value whose imaginary part is
    /// too large to discard.
    #[error("non-real result: |Im| = {im:e} exceeds tolerance for |Re| = {re:e}")]
    NonRealResult { re: f64, im: f64 },

    /// Iterated error-function order outside the supported range.
    #[error("unsupported iterated-erfc order {0} (supported: 0..=2)")]
    UnsupportedOrder(u32),

    /// An integrand returned a non-finite value at an evaluation node.
    #[error("non-finite integrand value at xi = {0:e}")]
    NonFiniteIntegrand(f64),

    /// A quadrature failed badly enough that the result is unusable.
    #[error("quadrature failure in {context}: {source}")]
    QuadratureFailure {
        context: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// A finite-difference stencil would leave the domain y, t >= 0.
    #[error("stencil out of domain at (y={y}, t={t}) with steps (hy={hy:e}, ht={ht:e})")]
    StencilOutOfDomain { y: f64, t: f64, hy: f64, ht: f64 },

    /// Asymptotic formulas requested outside their validity region.
    #[error("outside asymptotic regime: beta = {beta:e} >= {threshold:e}")]
    OutsideAsymptoticRegime { beta: f64, threshold: f64 },

    /// Operation requires strictly positive time.
    #[error("operation requires t > 0, got t = {0}")]
    NonPositiveTime(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an error with the name of the quantity being integrated.
    pub fn in_context(self, context: &'static str) -> Error {
        Error::QuadratureFailure {
            context,
            source: Box::new(self),
        }
    }
}
