use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument outside domain ({detail})")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function}: pole at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("quadrature did not converge: estimate {estimate:e}, error estimate {abs_error:e}")]
    QuadratureNonConvergence { estimate: f64, abs_error: f64 },

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("root finder exceeded {iterations} iterations")]
    RootIterations { iterations: usize },

    #[error("shooting bracket [{lo}, {hi}] shows constant node count {nodes}")]
    BracketFailure { lo: f64, hi: f64, nodes: usize },

    #[error("ODE step size underflow at xi = {at}")]
    StepUnderflow { at: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
