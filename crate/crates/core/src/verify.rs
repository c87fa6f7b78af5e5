//! Checks every defining property of an extension against its source POVM.
//!
//! Nothing here calls into the builder; only `linalg` primitives are used, so
//! a report is evidence about the projectors and not about the code that
//! produced them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::NaimarkExtension;
use crate::linalg::{embed_upper_left, hermitian_eig, kron, ComplexMatrix, ToleranceConfig};
use crate::povm::{ginibre, Povm};

/// Unit-trace Hermitian PSD matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        let eig = hermitian_eig(&matrix, cfg)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > cfg.verify_tol || trace.im.abs() > cfg.verify_tol {
            return Err(Error::InvalidRequest(format!("density matrix trace is {trace}")));
        }
        if eig.min_value() < -cfg.verify_tol {
            return Err(Error::NotPsd {
                min_eigenvalue: eig.min_value(),
            });
        }
        Ok(Self(matrix))
    }

    /// `G G^† / Tr[G G^†]` for a square complex Gaussian `G`.
    pub fn random(dim: usize, rng: &mut ChaCha8Rng) -> Self {
        let g = ginibre(dim, dim, rng);
        let w = g.mul_adjoint(&g).hermitian_part();
        let t = w.trace().re;
        Self(w.scale(1.0 / t))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }
}

/// `(‖E² − E‖_F, ‖E − E^†‖_F)`
pub fn check_projector(e: &ComplexMatrix) -> (f64, f64) {
    let idempotence = (&e.matmul(e) - e).frobenius_norm();
    (idempotence, e.hermiticity_residual())
}

/// The upper-left `d × d` block, i.e. `Tr_A[(|e₁⟩⟨e₁| ⊗ I) E]` in the
/// ancilla-left layout.
pub fn recover_element(e: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    if !e.is_square() || e.rows() < d {
        return Err(Error::DimensionMismatch(format!(
            "cannot recover a {d}x{d} block from a {}x{} matrix",
            e.rows(),
            e.cols()
        )));
    }
    Ok(e.block(0, 0, d, d))
}

/// POVM element paired with each projector. A trailing extra projector
/// (the complement of a completed PVM) pairs with the zero matrix.
fn paired_elements(povm: &Povm, ext: &NaimarkExtension) -> Result<Vec<ComplexMatrix>> {
    if ext.system_dim != povm.dim() {
        return Err(Error::DimensionMismatch(format!(
            "extension is for dimension {}, POVM has dimension {}",
            ext.system_dim,
            povm.dim()
        )));
    }
    ext.check_shape()?;
    let mut elements: Vec<ComplexMatrix> = povm.matrices().cloned().collect();
    match ext.projectors.len() {
        n if n == povm.len() => {}
        n if n == povm.len() + 1 => elements.push(ComplexMatrix::zeros(povm.dim(), povm.dim())),
        n => {
            return Err(Error::DimensionMismatch(format!(
                "{n} projectors for a POVM with {} elements",
                povm.len()
            )))
        }
    }
    Ok(elements)
}

/// `max_{ρ, m} |Tr[Π_m ρ] − Tr[(|e₁⟩⟨e₁| ⊗ ρ) E_m]|` over seeded random
/// states. The right-hand side is evaluated on the full enlarged space.
pub fn born_rule_residual(povm: &Povm, ext: &NaimarkExtension, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidRequest("at least one sample is required".into()));
    }
    let elements = paired_elements(povm, ext)?;
    let d = povm.dim();
    let n = ext.total_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let rho = DensityMatrix::random(d, &mut rng);
        let embedded = embed_state(rho.matrix(), n)?;
        for (pi, proj) in elements.iter().zip(&ext.projectors) {
            let system = pi.trace_product(rho.matrix());
            let enlarged = embedded.trace_product(&proj.matrix);
            worst = worst.max((system - enlarged).norm());
        }
    }
    Ok(worst)
}

/// `|e₁⟩⟨e₁| ⊗ ρ` when `d | n`; otherwise `ρ` in the upper-left corner.
fn embed_state(rho: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    let d = rho.rows();
    if n.is_multiple_of(d) {
        let mut ancilla = ComplexMatrix::zeros(n / d, n / d);
        ancilla[(0, 0)] = 1.0.into();
        Ok(kron(&ancilla, rho))
    } else {
        embed_upper_left(rho, n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectorResiduals {
    pub label: String,
    pub idempotence: f64,
    pub hermiticity: f64,
    pub block_recovery: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub first: usize,
    pub second: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub idempotent: bool,
    pub hermitian: bool,
    pub orthogonal: bool,
    pub block_recovery: bool,
    pub born_rule: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub verify_tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub projectors: Vec<ProjectorResiduals>,
    /// `‖E_m E_n‖_F` for every ordered pair `m ≠ n`.
    pub orthogonality: Vec<PairResidual>,
    pub born_rule: f64,
    pub verdicts: Verdicts,
    pub passed: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn max_idempotence(&self) -> f64 {
        self.projectors.iter().map(|p| p.idempotence).fold(0.0, f64::max)
    }

    pub fn max_hermiticity(&self) -> f64 {
        self.projectors.iter().map(|p| p.hermiticity).fold(0.0, f64::max)
    }

    pub fn max_block_recovery(&self) -> f64 {
        self.projectors.iter().map(|p| p.block_recovery).fold(0.0, f64::max)
    }

    pub fn max_orthogonality(&self) -> f64 {
        self.orthogonality.iter().map(|p| p.residual).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> String {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        format!(
            "idempotence {} ({:.3e}), hermiticity {} ({:.3e}), orthogonality {} ({:.3e}), \
             block recovery {} ({:.3e}), Born rule {} ({:.3e}); tolerance {:.1e}",
            mark(self.verdicts.idempotent),
            self.max_idempotence(),
            mark(self.verdicts.hermitian),
            self.max_hermiticity(),
            mark(self.verdicts.orthogonal),
            self.max_orthogonality(),
            mark(self.verdicts.block_recovery),
            self.max_block_recovery(),
            mark(self.verdicts.born_rule),
            self.born_rule,
            self.verify_tol,
        )
    }
}

/// Full verification: projector residuals, pairwise orthogonality, corner
/// recovery and Born-rule agreement on `samples` random states.
pub fn verify_extension(
    povm: &Povm,
    ext: &NaimarkExtension,
    cfg: &ToleranceConfig,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let elements = paired_elements(povm, ext)?;
    let d = povm.dim();

    let projectors = ext
        .projectors
        .iter()
        .zip(&elements)
        .map(|(p, pi)| {
            let (idempotence, hermiticity) = check_projector(&p.matrix);
            let block_recovery = (&recover_element(&p.matrix, d)? - pi).frobenius_norm();
            Ok(ProjectorResiduals {
                label: p.label.clone(),
                idempotence,
                hermiticity,
                block_recovery,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut orthogonality = Vec::new();
    for (m, em) in ext.projectors.iter().enumerate() {
        for (n, en) in ext.projectors.iter().enumerate() {
            if m != n {
                orthogonality.push(PairResidual {
                    first: m,
                    second: n,
                    residual: em.matrix.matmul(&en.matrix).frobenius_norm(),
                });
            }
        }
    }

    let born_rule = born_rule_residual(povm, ext, samples, seed)?;
    let tol = cfg.verify_tol;
    let verdicts = Verdicts {
        idempotent: projectors.iter().all(|p| p.idempotence <= tol),
        hermitian: projectors.iter().all(|p| p.hermiticity <= tol),
        orthogonal: orthogonality.iter().all(|p| p.residual <= tol),
        block_recovery: projectors.iter().all(|p| p.block_recovery <= tol),
        born_rule: born_rule <= tol,
    };
    let passed = verdicts.idempotent
        && verdicts.hermitian
        && verdicts.orthogonal
        && verdicts.block_recovery
        && verdicts.born_rule;
    Ok(VerificationReport {
        verify_tol: tol,
        samples,
        seed,
        projectors,
        orthogonality,
        born_rule,
        verdicts,
        passed,
    })
}
