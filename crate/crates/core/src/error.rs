use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semi-definite (eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("Hermitian eigensolver did not converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("invalid tolerance {name} = {value}: must lie in (0, 1)")]
    InvalidTolerance { name: &'static str, value: f64 },

    #[error("unknown example `{0}` (expected trine, tetrad, roulette-xz or roulette-diag)")]
    UnknownExample(String),

    #[error("parameter {name} = {value} out of range {range}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid random POVM request: {0}")]
    InvalidRequest(String),

    #[error("sum of random PSD draws stayed singular after {attempts} attempts")]
    SingularTotal { attempts: usize },

    #[error("factor has Y^dagger Y eigenvalue 1 + {:.3e} > 1", max_eigenvalue - 1.0)]
    FactorTooLarge { max_eigenvalue: f64 },

    #[error("orthogonal completion left residual {residual:.3e} against projector {against}")]
    InconsistentOrthogonality { against: usize, residual: f64 },

    #[error("input is not a valid POVM: {0}")]
    InvalidPovm(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
