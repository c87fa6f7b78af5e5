//! Dense complex linear algebra used by the extension builder and verifier.

mod eigen;
mod layout;
mod matrix;
mod psd;

pub use eigen::{canonicalize_phases, hermitian_eig, HermitianEigen};
pub use layout::{embed_upper_left, kron, partial_trace_first};
pub use matrix::ComplexMatrix;
pub use psd::{pinv_on_support, psd_factor, sqrt_psd, FactorMode};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by construction and verification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Eigenvalues at or below `rank_tol · max(λ_max, 1)` count as zero.
    pub rank_tol: f64,
    /// Residual threshold for skip and consistency checks while building.
    pub check_tol: f64,
    /// Residual threshold for verification verdicts.
    pub verify_tol: f64,
    /// Components smaller than this are ignored when fixing eigenvector phases.
    pub phase_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol: 1e-12,
            check_tol: 1e-10,
            verify_tol: 1e-8,
            phase_tol: 1e-12,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol: f64, check_tol: f64, verify_tol: f64, phase_tol: f64) -> Result<Self> {
        let cfg = Self {
            rank_tol,
            check_tol,
            verify_tol,
            phase_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_verify_tol(self, verify_tol: f64) -> Result<Self> {
        Self::new(self.rank_tol, self.check_tol, verify_tol, self.phase_tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("rank_tol", self.rank_tol),
            ("check_tol", self.check_tol),
            ("verify_tol", self.verify_tol),
            ("phase_tol", self.phase_tol),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }

    /// Eigenvalue threshold below which a direction is outside the support.
    pub(crate) fn support_cutoff(&self, lambda_max: f64) -> f64 {
        self.rank_tol * lambda_max.max(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_must_lie_in_open_unit_interval() {
        assert!(ToleranceConfig::default().validate().is_ok());
        assert!(ToleranceConfig::new(0.0, 1e-10, 1e-8, 1e-12).is_err());
        assert!(ToleranceConfig::new(1e-12, 1.0, 1e-8, 1e-12).is_err());
        assert!(ToleranceConfig::new(1e-12, 1e-10, f64::NAN, 1e-12).is_err());
        assert!(ToleranceConfig::default().with_verify_tol(-1.0).is_err());
    }
}
