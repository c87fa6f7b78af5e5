//! Iterative construction of Naimark extensions.
//!
//! Projectors are built in order. Outcome `m` starts from a factor of `Π_m`,
//! is made orthogonal to each earlier projector in turn, and is then made
//! idempotent. Each idempotent step that is not skipped appends one band of
//! rows/columns to the enlarged space; the band layout is recorded as
//! `[D, w_1, ..., w_M]`.
//!
//! Two routes produce the projectors. [`factor_chain`] stacks factors and
//! reads `E_m = Z_m Z_m^†`; [`build_extension`] assembles `E_m` block by
//! block from `Π_m` and the cached terms `R_i^+ Y_i^†`. They agree to
//! rounding.

mod completion;

pub use completion::{
    idempotent_completion, orthogonal_completion, CompletedFactor, CompletionBlocks, Factor, IdempotentCompletion,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{embed_upper_left, psd_factor, ComplexMatrix, FactorMode, ToleranceConfig};
use crate::povm::{validate_povm, LabeledMatrix, Povm};

/// Label of the optional complement projector `I_N − Σ_m E_m`.
pub const COMPLEMENT_LABEL: &str = "complement";
/// Phase convention recorded in every extension.
pub const PHASE_CONVENTION: &str = "first-nonzero-real-positive";

/// Factor history of one outcome.
#[derive(Debug, Clone)]
pub struct OutcomeChain {
    pub label: String,
    /// `X_m^{(1)}, ..., X_m^{(m)}`; the last entry is `Y_m`.
    pub steps: Vec<Factor>,
    /// Which orthogonal steps found the blocks already orthogonal.
    pub orthogonal_skipped: Vec<bool>,
    pub idempotent_skipped: bool,
    /// `Z_m`, with `E_m = Z_m Z_m^†` before padding.
    pub z: Factor,
}

impl OutcomeChain {
    pub fn y(&self) -> &Factor {
        self.steps.last().expect("chain has at least one step")
    }

    pub fn band_width(&self) -> usize {
        self.z.band_widths.last().copied().unwrap_or(0)
    }

    /// `Z_m Z_m^†`
    pub fn projector(&self) -> ComplexMatrix {
        self.z.gram()
    }
}

#[derive(Debug, Clone)]
pub struct FactorChain {
    pub system_dim: usize,
    pub mode: FactorMode,
    pub outcomes: Vec<OutcomeChain>,
    /// Per outcome, `Y_m`, `R_m` and the cached `R_m^+ Y_m^†`.
    pub completed: Vec<CompletedFactor>,
}

impl FactorChain {
    /// `[D, w_1, ..., w_M]`
    pub fn band_layout(&self) -> Vec<usize> {
        std::iter::once(self.system_dim)
            .chain(self.outcomes.iter().map(OutcomeChain::band_width))
            .collect()
    }

    /// Dimension of the enlarged space before padding.
    pub fn raw_dim(&self) -> usize {
        self.band_layout().iter().sum()
    }
}

/// Stacked-factor route: every `X_m^{(i)}`, `Y_m` and `Z_m`.
pub fn factor_chain(povm: &Povm, mode: FactorMode, cfg: &ToleranceConfig) -> Result<FactorChain> {
    cfg.validate()?;
    let matrices: Vec<ComplexMatrix> = povm.matrices().cloned().collect();
    let report = validate_povm(&matrices, cfg)?;
    if !report.passed() {
        return Err(Error::InvalidPovm(report.summary()));
    }

    let d = povm.dim();
    let mut outcomes = Vec::with_capacity(povm.len());
    let mut completed: Vec<CompletedFactor> = Vec::with_capacity(povm.len());
    for element in povm.elements() {
        let mut x = Factor::new(psd_factor(&element.matrix, mode, cfg)?, vec![d]);
        let mut steps = vec![x.clone()];
        let mut orthogonal_skipped = Vec::with_capacity(completed.len());
        for (i, prev) in completed.iter().enumerate() {
            let (next, skipped) = orthogonal_completion(&x, prev, i, cfg)?;
            orthogonal_skipped.push(skipped);
            steps.push(next.clone());
            x = next;
        }
        let done = idempotent_completion(&x, cfg)?;
        completed.push(CompletedFactor::from_completion(x, &done, cfg)?);
        outcomes.push(OutcomeChain {
            label: element.label.clone(),
            steps,
            orthogonal_skipped,
            idempotent_skipped: done.skipped(),
            z: done.z,
        });
    }
    Ok(FactorChain {
        system_dim: d,
        mode,
        outcomes,
        completed,
    })
}

/// Smallest multiple of `d` that holds `raw_dim`, and the matching ancilla
/// dimension.
pub fn pad_to_tensor(raw_dim: usize, d: usize) -> (usize, usize) {
    assert!(d >= 1 && raw_dim >= d, "need raw_dim >= d >= 1");
    let ancilla = raw_dim.div_ceil(d);
    (ancilla * d, ancilla)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub mode: FactorMode,
    /// Round the enlarged dimension up to a multiple of `D`.
    pub pad: bool,
    /// Append `I_N − Σ_m E_m` as an extra projector.
    pub complete_pvm: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            mode: FactorMode::Thin,
            pad: true,
            complete_pvm: false,
        }
    }
}

impl From<FactorMode> for BuildOptions {
    fn from(mode: FactorMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub factor_mode: FactorMode,
    pub phase: String,
    pub tolerances: ToleranceConfig,
    pub padded: bool,
    pub complete_pvm: bool,
}

/// Projectors `E_m` on an `N`-dimensional space whose upper-left `D × D`
/// blocks are the POVM elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaimarkExtension {
    pub system_dim: usize,
    pub total_dim: usize,
    /// `N / D`; absent only for unpadded extensions with `D ∤ N`.
    pub ancilla_dim: Option<usize>,
    /// `[D, w_1, ..., w_M]`; sums to the unpadded dimension.
    pub band_widths: Vec<usize>,
    pub conventions: Conventions,
    pub projectors: Vec<LabeledMatrix>,
}

impl NaimarkExtension {
    pub fn raw_dim(&self) -> usize {
        self.band_widths.iter().sum()
    }

    pub fn projector(&self, m: usize) -> &ComplexMatrix {
        &self.projectors[m].matrix
    }

    /// Structural checks on a deserialized extension.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.total_dim;
        if self.system_dim == 0 || self.system_dim > n {
            return Err(Error::DimensionMismatch(format!(
                "system dimension {} incompatible with total dimension {n}",
                self.system_dim
            )));
        }
        for p in &self.projectors {
            if p.matrix.shape() != (n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "projector `{}` is {}x{}, expected {n}x{n}",
                    p.label,
                    p.matrix.rows(),
                    p.matrix.cols()
                )));
            }
        }
        if let Some(a) = self.ancilla_dim {
            if a * self.system_dim != n {
                return Err(Error::DimensionMismatch(format!(
                    "ancilla dimension {a} times system dimension {} is not {n}",
                    self.system_dim
                )));
            }
        }
        Ok(())
    }
}

/// Builds the extension with default padding and no complement projector.
/// The factor chain used along the way is returned as well.
pub fn build_extension(
    povm: &Povm,
    mode: FactorMode,
    cfg: &ToleranceConfig,
) -> Result<(NaimarkExtension, FactorChain)> {
    build_extension_with(povm, &BuildOptions::from(mode), cfg)
}

pub fn build_extension_with(
    povm: &Povm,
    options: &BuildOptions,
    cfg: &ToleranceConfig,
) -> Result<(NaimarkExtension, FactorChain)> {
    let chain = factor_chain(povm, options.mode, cfg)?;
    let d = povm.dim();
    let raw = chain.raw_dim();
    let (total_dim, ancilla_dim) = if options.pad {
        let (n, a) = pad_to_tensor(raw, d);
        (n, Some(a))
    } else {
        (raw, raw.is_multiple_of(d).then_some(raw / d))
    };

    let mut projectors = Vec::with_capacity(povm.len() + 1);
    for (m, element) in povm.elements().iter().enumerate() {
        let mut block = element.matrix.clone();
        // orthogonality against each earlier projector:
        // [[P, −P C^†], [−C P, C P C^†]] with C = R_i^+ Y_i^†
        for prev in &chain.completed[..m] {
            let cache = &prev.root_pinv_y_adj;
            let a = -&block.matmul(&cache.adjoint());
            let b = cache.matmul(&block).mul_adjoint(cache).hermitian_part();
            block = ComplexMatrix::from_blocks(&block, &a, &a.adjoint(), &b);
        }
        // idempotent bordering: A = Y_m R_m^†, B = R_m R_m^†
        let own = &chain.completed[m];
        let a = own.y.matrix.mul_adjoint(&own.root);
        let b = own.root.mul_adjoint(&own.root);
        let e = ComplexMatrix::from_blocks(&block, &a, &a.adjoint(), &b).hermitian_part();
        projectors.push(LabeledMatrix::new(
            element.label.clone(),
            embed_upper_left(&e, total_dim)?,
        ));
    }

    if options.complete_pvm {
        let total = projectors
            .iter()
            .fold(ComplexMatrix::zeros(total_dim, total_dim), |acc, p| &acc + &p.matrix);
        let complement = (&ComplexMatrix::identity(total_dim) - &total).hermitian_part();
        projectors.push(LabeledMatrix::new(COMPLEMENT_LABEL, complement));
    }

    let ext = NaimarkExtension {
        system_dim: d,
        total_dim,
        ancilla_dim,
        band_widths: chain.band_layout(),
        conventions: Conventions {
            factor_mode: options.mode,
            phase: PHASE_CONVENTION.to_string(),
            tolerances: *cfg,
            padded: options.pad,
            complete_pvm: options.complete_pvm,
        },
        projectors,
    };
    Ok((ext, chain))
}
