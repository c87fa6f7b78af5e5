//! The two block-completion steps.
//!
//! Given a factor `Y` of a corner block `Π = Y Y^†`, the idempotent step
//! borders it with `A = Y R`, `B = R²` where `R = √(I − Y^†Y)`, so that
//! `[[Π, A], [A^†, B]] = Z Z^†` with `Z = [Y; R]` is a projector.
//!
//! Given a factor `X` of a new corner block and a completed projector
//! `E_i = Z_i Z_i^†`, the orthogonal step appends rows `−R_i^+ Y_i^† X` in the
//! band owned by `E_i`, which makes `Z_i^† X_next = 0` and hence
//! `E_i · X_next X_next^† = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, pinv_on_support, ComplexMatrix, ToleranceConfig};

/// A matrix `Y` standing for the block `Y Y^†`, together with the widths of
/// the bands its rows occupy in the enlarged space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub matrix: ComplexMatrix,
    pub band_widths: Vec<usize>,
}

impl Factor {
    pub fn new(matrix: ComplexMatrix, band_widths: Vec<usize>) -> Self {
        assert_eq!(
            band_widths.iter().sum::<usize>(),
            matrix.rows(),
            "band widths must cover every row"
        );
        Self { matrix, band_widths }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `Y Y^†`
    pub fn gram(&self) -> ComplexMatrix {
        self.matrix.mul_adjoint(&self.matrix).hermitian_part()
    }

    fn stacked(&self, below: &ComplexMatrix) -> Self {
        let mut band_widths = self.band_widths.clone();
        band_widths.push(below.rows());
        Self::new(ComplexMatrix::vstack(&self.matrix, below), band_widths)
    }
}

/// Bordering blocks `A` and `B` of a completed corner.
#[derive(Debug, Clone, PartialEq)]
pub struct CompletionBlocks {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

/// Result of [`idempotent_completion`].
#[derive(Debug, Clone)]
pub struct IdempotentCompletion {
    /// `None` when `Y Y^†` was already idempotent.
    pub blocks: Option<CompletionBlocks>,
    /// Nonzero region of the projector, `[[Y Y^†, A], [A^†, B]]`.
    pub projector: ComplexMatrix,
    /// `[Y; R]`, or `Y` itself when skipped.
    pub z: Factor,
    /// `R = √(I − Y^†Y)`; zero rows when skipped.
    pub root: ComplexMatrix,
}

impl IdempotentCompletion {
    pub fn skipped(&self) -> bool {
        self.blocks.is_none()
    }

    /// Width of the band this step appends.
    pub fn band_width(&self) -> usize {
        self.root.rows()
    }
}

/// Borders `Y Y^†` with the blocks that make it idempotent.
pub fn idempotent_completion(y: &Factor, cfg: &ToleranceConfig) -> Result<IdempotentCompletion> {
    let r = y.cols();
    let gram = y.matrix.adjoint_mul(&y.matrix).hermitian_part();
    let eig = hermitian_eig(&gram, cfg)?;
    let top = eig.max_value();
    // Π ≤ I only holds to the accuracy the POVM was validated at
    if top > 1.0 + cfg.check_tol {
        return Err(Error::FactorTooLarge { max_eigenvalue: top });
    }

    let corner = y.gram();
    if (&corner.matmul(&corner) - &corner).frobenius_norm() <= cfg.check_tol {
        return Ok(IdempotentCompletion {
            blocks: None,
            projector: corner,
            z: y.stacked(&ComplexMatrix::zeros(0, r)),
            root: ComplexMatrix::zeros(0, r),
        });
    }

    // √(I − Y^†Y); eigenvalues of Y^†Y within check_tol of 1 are exactly 1,
    // otherwise R^+ would amplify rounding noise in every later step
    let cutoff = cfg.check_tol;
    let root = eig.reconstruct_with(|l| {
        let b = 1.0 - l.min(1.0);
        if b <= cutoff {
            0.0
        } else {
            b.sqrt()
        }
    });
    let a = y.matrix.matmul(&root);
    let b = root.matmul(&root).hermitian_part();
    let projector = ComplexMatrix::from_blocks(&corner, &a, &a.adjoint(), &b);
    Ok(IdempotentCompletion {
        blocks: Some(CompletionBlocks { a, b }),
        projector,
        z: y.stacked(&root),
        root,
    })
}

/// What later steps need from a finished projector `E_i = Z_i Z_i^†`,
/// `Z_i = [Y_i; R_i]`.
#[derive(Debug, Clone)]
pub struct CompletedFactor {
    /// `Y_i`, the factor of the corner block before idempotent completion.
    pub y: Factor,
    /// `R_i`, `w_i × cols(Y_i)`; `w_i = 0` when the idempotent step was skipped.
    pub root: ComplexMatrix,
    /// `R_i^+ Y_i^†`, cached for every later orthogonal step.
    pub root_pinv_y_adj: ComplexMatrix,
}

impl CompletedFactor {
    pub fn new(y: Factor, root: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        let root_pinv_y_adj = if root.rows() == 0 {
            ComplexMatrix::zeros(0, y.rows())
        } else {
            pinv_on_support(&root, cfg)?.mul_adjoint(&y.matrix)
        };
        Ok(Self {
            y,
            root,
            root_pinv_y_adj,
        })
    }

    pub fn from_completion(y: Factor, completion: &IdempotentCompletion, cfg: &ToleranceConfig) -> Result<Self> {
        Self::new(y, completion.root.clone(), cfg)
    }

    pub fn band_width(&self) -> usize {
        self.root.rows()
    }

    /// `Z_i = [Y_i; R_i]`
    pub fn z(&self) -> ComplexMatrix {
        ComplexMatrix::vstack(&self.y.matrix, &self.root)
    }
}

/// Extends `X` by the rows that make `X_next X_next^†` orthogonal to the
/// projector described by `prev`. `against` is the index of that projector,
/// used in error reports. Returns the extended factor and whether the step
/// was skipped because the blocks were already orthogonal.
pub fn orthogonal_completion(
    x: &Factor,
    prev: &CompletedFactor,
    against: usize,
    cfg: &ToleranceConfig,
) -> Result<(Factor, bool)> {
    if x.rows() != prev.y.rows() {
        return Err(Error::DimensionMismatch(format!(
            "factor spans {} rows but projector {against} spans {}",
            x.rows(),
            prev.y.rows()
        )));
    }
    let overlap = prev.y.matrix.adjoint_mul(&x.matrix);
    let x_norm_sq = x.matrix.frobenius_norm().powi(2);
    // ‖X X^† Y‖_F
    if x.matrix.mul_adjoint(&overlap).frobenius_norm() <= cfg.check_tol * x_norm_sq {
        let zeros = ComplexMatrix::zeros(prev.band_width(), x.cols());
        return Ok((x.stacked(&zeros), true));
    }

    let appended = -&prev.root_pinv_y_adj.matmul(&x.matrix);
    // Z_i^† X_next = Y_i^† X + R_i^† W
    let residual = (&overlap + &prev.root.adjoint_mul(&appended)).frobenius_norm();
    if residual > cfg.check_tol * x.matrix.frobenius_norm().max(1.0) {
        return Err(Error::InconsistentOrthogonality { against, residual });
    }
    Ok((x.stacked(&appended), false))
}
