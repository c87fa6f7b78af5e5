use serde::{Deserialize, Serialize};

use super::{hermitian_eig, ComplexMatrix, HermitianEigen, ToleranceConfig};
use crate::error::{Error, Result};

/// How a PSD block `P` is factored as `Y Y^†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorMode {
    /// `Y = V_r √Λ_r`, one column per nonzero eigenvalue.
    #[default]
    Thin,
    /// `Y = V √Λ V^†`, the principal square root.
    Hermitian,
}

impl FactorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorMode::Thin => "thin",
            FactorMode::Hermitian => "hermitian",
        }
    }
}

impl std::str::FromStr for FactorMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "thin" => Ok(FactorMode::Thin),
            "hermitian" => Ok(FactorMode::Hermitian),
            other => Err(format!("unknown factor mode `{other}` (expected thin or hermitian)")),
        }
    }
}

/// Eigendecomposition of a PSD matrix with slightly negative eigenvalues
/// clamped to zero. Returns the decomposition and the support cutoff.
fn psd_eig(p: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<(HermitianEigen, f64)> {
    let mut eig = hermitian_eig(p, cfg)?;
    let cutoff = cfg.support_cutoff(eig.max_value());
    let min = eig.min_value();
    if min < -cutoff {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    for l in &mut eig.values {
        if *l <= cutoff {
            *l = 0.0;
        }
    }
    Ok((eig, cutoff))
}

/// Factor `P = Y Y^†` of a Hermitian PSD matrix.
pub fn psd_factor(p: &ComplexMatrix, mode: FactorMode, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let (eig, _) = psd_eig(p, cfg)?;
    match mode {
        FactorMode::Thin => {
            let support: Vec<usize> = (0..eig.dim()).filter(|&k| eig.values[k] > 0.0).collect();
            let roots: Vec<f64> = support.iter().map(|&k| eig.values[k].sqrt()).collect();
            Ok(eig.vectors.select_columns(&support).scale_columns(&roots))
        }
        FactorMode::Hermitian => Ok(eig.reconstruct_with(f64::sqrt)),
    }
}

/// Principal square root of a Hermitian PSD matrix.
pub fn sqrt_psd(p: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    psd_factor(p, FactorMode::Hermitian, cfg)
}

/// Moore-Penrose inverse of a Hermitian PSD matrix, inverting only
/// eigenvalues above the support cutoff.
pub fn pinv_on_support(p: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let (eig, _) = psd_eig(p, cfg)?;
    Ok(eig.reconstruct_with(|l| if l > 0.0 { 1.0 / l } else { 0.0 }))
}
