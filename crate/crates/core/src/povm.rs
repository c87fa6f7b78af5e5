//! POVM data model, validation, the builtin example corpus and a seeded
//! random generator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, pinv_on_support, sqrt_psd, ComplexMatrix, ToleranceConfig};

/// A matrix carrying an outcome label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub label: String,
    pub matrix: ComplexMatrix,
}

impl LabeledMatrix {
    pub fn new(label: impl Into<String>, matrix: ComplexMatrix) -> Self {
        Self {
            label: label.into(),
            matrix,
        }
    }
}

/// Ordered list of `M ≥ 1` PSD `D × D` elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    dim: usize,
    elements: Vec<LabeledMatrix>,
}

impl Povm {
    /// Validates the elements and builds the POVM. Fails with
    /// [`Error::InvalidPovm`] when any check in [`validate_povm`] fails.
    pub fn new(elements: Vec<LabeledMatrix>, cfg: &ToleranceConfig) -> Result<Self> {
        let matrices: Vec<ComplexMatrix> = elements.iter().map(|e| e.matrix.clone()).collect();
        let report = validate_povm(&matrices, cfg)?;
        if !report.passed() {
            return Err(Error::InvalidPovm(report.summary()));
        }
        Ok(Self {
            dim: matrices[0].rows(),
            elements,
        })
    }

    /// Builds a POVM from elements labelled `"1"`, `"2"`, ...
    pub fn from_matrices(matrices: Vec<ComplexMatrix>, cfg: &ToleranceConfig) -> Result<Self> {
        let elements = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| LabeledMatrix::new((k + 1).to_string(), m))
            .collect();
        Self::new(elements, cfg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LabeledMatrix] {
        &self.elements
    }

    pub fn element(&self, m: usize) -> &ComplexMatrix {
        &self.elements[m].matrix
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.elements.iter().map(|e| &e.matrix)
    }
}

/// Per-check residuals for a candidate POVM.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmValidationReport {
    pub hermiticity_residuals: Vec<f64>,
    pub min_eigenvalues: Vec<f64>,
    pub completeness_residual: f64,
    pub verify_tol: f64,
    pub hermitian: bool,
    pub positive: bool,
    pub complete: bool,
}

impl PovmValidationReport {
    pub fn passed(&self) -> bool {
        self.hermitian && self.positive && self.complete
    }

    pub fn summary(&self) -> String {
        let worst_herm = self.hermiticity_residuals.iter().copied().fold(0.0, f64::max);
        let worst_eig = self.min_eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        format!(
            "hermiticity {} (max residual {worst_herm:.3e}), positivity {} (min eigenvalue {worst_eig:.3e}), \
             completeness {} (residual {:.3e}), tolerance {:.1e}",
            verdict(self.hermitian),
            verdict(self.positive),
            verdict(self.complete),
            self.completeness_residual,
            self.verify_tol,
        )
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Checks Hermiticity, positivity and completeness of a candidate element
/// list. Check failures are reported, not returned as errors.
pub fn validate_povm(candidate: &[ComplexMatrix], cfg: &ToleranceConfig) -> Result<PovmValidationReport> {
    let first = candidate
        .first()
        .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
    let d = first.rows();
    if d == 0 {
        return Err(Error::InvalidPovm("system dimension must be at least 1".into()));
    }
    for (k, m) in candidate.iter().enumerate() {
        if m.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "element {k} is {}x{}, expected {d}x{d}",
                m.rows(),
                m.cols()
            )));
        }
        m.ensure_finite()?;
    }

    let hermiticity_residuals: Vec<f64> = candidate.iter().map(ComplexMatrix::hermiticity_residual).collect();
    let min_eigenvalues = candidate
        .iter()
        .map(|m| hermitian_eig(&m.hermitian_part(), cfg).map(|e| e.min_value()))
        .collect::<Result<Vec<f64>>>()?;
    let total = candidate.iter().fold(ComplexMatrix::zeros(d, d), |acc, m| &acc + m);
    let completeness_residual = (&total - &ComplexMatrix::identity(d)).frobenius_norm();

    let tol = cfg.verify_tol;
    Ok(PovmValidationReport {
        hermitian: hermiticity_residuals.iter().all(|&r| r <= tol),
        positive: min_eigenvalues.iter().all(|&l| l >= -tol),
        complete: completeness_residual <= tol,
        hermiticity_residuals,
        min_eigenvalues,
        completeness_residual,
        verify_tol: tol,
    })
}

/// Names accepted by [`builtin_povm`].
pub const BUILTIN_NAMES: [&str; 4] = ["trine", "tetrad", "roulette-xz", "roulette-diag"];

/// The literature examples: Helstrom's trine and tetrad, and the two rank-2
/// quantum roulettes.
///
/// `roulette-xz` takes `params = [z]` with `z ∈ (0, 1)`; `roulette-diag`
/// takes `params = [f]` with `f ∈ (0, 1/2)`. The other two take none.
pub fn builtin_povm(name: &str, params: &[f64]) -> Result<Povm> {
    let cfg = ToleranceConfig::default();
    if matches!(name, "trine" | "tetrad") && !params.is_empty() {
        return Err(Error::InvalidRequest(format!("`{name}` takes no parameters")));
    }
    match name {
        "trine" => {
            let e = |phi: f64| Complex64::from_polar(1.0, phi);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let states = [
                [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                [e(-PI / 3.0) * s, e(PI / 3.0) * s],
                [-e(PI / 3.0) * s, -e(-PI / 3.0) * s],
            ];
            let elements = states
                .iter()
                .map(|psi| ComplexMatrix::outer(psi).scale(2.0 / 3.0))
                .collect();
            Povm::from_matrices(elements, &cfg)
        }
        "tetrad" => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let elements = (0..4)
                .map(|k| {
                    let phi = k as f64 * PI / 4.0;
                    let psi = [Complex64::from_polar(s, -phi), Complex64::from_polar(s, phi)];
                    ComplexMatrix::outer(&psi).scale(0.5)
                })
                .collect();
            Povm::from_matrices(elements, &cfg)
        }
        "roulette-xz" => {
            let z = single_param(name, params, "z")?;
            if !(z > 0.0 && z < 1.0) {
                return Err(Error::ParamOutOfRange {
                    name: "z",
                    value: z,
                    range: "(0, 1)",
                });
            }
            let plus = ComplexMatrix::from_real_rows(&[vec![2.0 - z, z], vec![z, z]])?.scale(0.5);
            let minus = ComplexMatrix::from_real_rows(&[vec![z, -z], vec![-z, 2.0 - z]])?.scale(0.5);
            roulette(plus, minus, &cfg)
        }
        "roulette-diag" => {
            let f = single_param(name, params, "f")?;
            if !(f > 0.0 && f < 0.5) {
                return Err(Error::ParamOutOfRange {
                    name: "f",
                    value: f,
                    range: "(0, 1/2)",
                });
            }
            let plus = ComplexMatrix::from_real_diagonal(&[0.5 + f, 0.5 - f]);
            let minus = ComplexMatrix::from_real_diagonal(&[0.5 - f, 0.5 + f]);
            roulette(plus, minus, &cfg)
        }
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn single_param(example: &str, params: &[f64], name: &'static str) -> Result<f64> {
    match params {
        [x] => Ok(*x),
        _ => Err(Error::InvalidRequest(format!(
            "{example} takes exactly one parameter ({name}), got {}",
            params.len()
        ))),
    }
}

fn roulette(plus: ComplexMatrix, minus: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Povm> {
    Povm::new(
        vec![LabeledMatrix::new("1", plus), LabeledMatrix::new("-1", minus)],
        cfg,
    )
}

const RANDOM_POVM_ATTEMPTS: usize = 16;
/// Smallest accepted `λ_min / λ_max` of the summed random draws.
const MIN_TOTAL_CONDITION: f64 = 1e-6;

/// Seeded random POVM: `Π_k = S^{-1/2} A_k S^{-1/2}` with `A_k = G_k G_k^†`
/// for complex Gaussian `D × r_k` matrices `G_k` and `S = Σ_k A_k`.
pub fn random_povm(dim: usize, elements: usize, ranks: &[usize], seed: u64) -> Result<Povm> {
    if dim == 0 || elements == 0 {
        return Err(Error::InvalidRequest(
            "dimension and element count must be at least 1".into(),
        ));
    }
    if ranks.len() != elements {
        return Err(Error::InvalidRequest(format!(
            "{} ranks given for {elements} elements",
            ranks.len()
        )));
    }
    if let Some(&r) = ranks.iter().find(|&&r| r == 0 || r > dim) {
        return Err(Error::InvalidRequest(format!("rank {r} outside [1, {dim}]")));
    }

    let cfg = ToleranceConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_POVM_ATTEMPTS {
        let draws: Vec<ComplexMatrix> = ranks
            .iter()
            .map(|&r| {
                let g = ginibre(dim, r, &mut rng);
                g.mul_adjoint(&g)
            })
            .collect();
        let total = draws
            .iter()
            .fold(ComplexMatrix::zeros(dim, dim), |acc, a| &acc + a)
            .hermitian_part();
        let eig = hermitian_eig(&total, &cfg)?;
        if eig.min_value() <= MIN_TOTAL_CONDITION * eig.max_value() {
            continue;
        }
        let inv_root = pinv_on_support(&sqrt_psd(&total, &cfg)?, &cfg)?;
        let matrices = draws
            .iter()
            .map(|a| inv_root.matmul(a).matmul(&inv_root).hermitian_part())
            .collect();
        return Povm::from_matrices(matrices, &cfg);
    }
    Err(Error::SingularTotal {
        attempts: RANDOM_POVM_ATTEMPTS,
    })
}

/// `rows × cols` matrix of independent standard complex Gaussians.
pub(crate) fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    use rand_distr::{Distribution, StandardNormal};
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let data = (0..rows * cols)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re * s, im * s)
        })
        .collect();
    ComplexMatrix::from_row_major(rows, cols, data).expect("gaussian draws are finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::psd_factor;
    use crate::linalg::FactorMode;
    use proptest::prelude::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn trine_first() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]])
            .unwrap()
            .scale(1.0 / 3.0)
    }

    #[test]
    fn trine_validates_tightly() {
        let trine = builtin_povm("trine", &[]).unwrap();
        let mats: Vec<_> = trine.matrices().cloned().collect();
        let report = validate_povm(&mats, &cfg()).unwrap();
        assert!(report.passed());
        assert!(report.completeness_residual < 1e-15);
    }

    #[test]
    fn singleton_identity_is_a_povm() {
        for d in 1..4 {
            assert!(validate_povm(&[ComplexMatrix::identity(d)], &cfg()).unwrap().passed());
        }
    }

    #[test]
    fn duplicated_trine_element_is_incomplete() {
        let report = validate_povm(&[trine_first(), trine_first()], &cfg()).unwrap();
        assert!(report.hermitian && report.positive);
        assert!(!report.complete);
        // (2/3)·2·P − I with P the projector onto (1,1)/√2 has eigenvalues 1/3 and −1
        let want = ((1.0f64 / 3.0).powi(2) + 1.0).sqrt();
        assert!((report.completeness_residual - want).abs() < 1e-14);
        assert!(!report.passed());
    }

    #[test]
    fn reports_each_failed_check() {
        let bad = ComplexMatrix::from_rows(&[vec![c(1.5, 0.0), c(0.0, 0.0)], vec![c(0.3, 0.0), c(-0.5, 0.0)]]).unwrap();
        let report = validate_povm(&[bad], &cfg()).unwrap();
        assert!(!report.hermitian);
        assert!(!report.positive);
        assert!(!report.complete);
    }

    #[test]
    fn ragged_and_empty_inputs_are_errors() {
        assert!(matches!(
            validate_povm(&[ComplexMatrix::identity(2), ComplexMatrix::identity(3)], &cfg()),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(validate_povm(&[], &cfg()), Err(Error::InvalidPovm(_))));
        assert!(matches!(
            validate_povm(&[ComplexMatrix::zeros(2, 3)], &cfg()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_elements_are_accepted() {
        let povm = Povm::from_matrices(vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::identity(2)], &cfg()).unwrap();
        assert_eq!(povm.len(), 2);
    }

    #[test]
    fn trine_second_element_matches_closed_form() {
        let trine = builtin_povm("trine", &[]).unwrap();
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let want = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), w.conj()], vec![w, c(1.0, 0.0)]])
            .unwrap()
            .scale(1.0 / 3.0);
        assert!(trine.element(1).max_abs_diff(&want) < 1e-15);
        assert!(trine.element(0).max_abs_diff(&trine_first()) < 1e-15);
    }

    #[test]
    fn tetrad_matches_closed_form() {
        let tetrad = builtin_povm("tetrad", &[]).unwrap();
        let i = c(0.0, 1.0);
        let one = c(1.0, 0.0);
        let want = [
            [[one, one], [one, one]],
            [[one, -i], [i, one]],
            [[one, -one], [-one, one]],
            [[one, i], [-i, one]],
        ];
        for (k, rows) in want.iter().enumerate() {
            let m = ComplexMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
                .unwrap()
                .scale(0.25);
            assert!(tetrad.element(k).max_abs_diff(&m) < 1e-15, "element {k}");
        }
    }

    #[test]
    fn roulettes_at_reference_parameters() {
        let xz = builtin_povm("roulette-xz", &[0.5]).unwrap();
        let want = ComplexMatrix::from_real_rows(&[vec![3.0, 1.0], vec![1.0, 1.0]])
            .unwrap()
            .scale(0.25);
        assert!(xz.element(0).max_abs_diff(&want) < 1e-15);
        assert_eq!(xz.elements()[1].label, "-1");

        let diag = builtin_povm("roulette-diag", &[0.25]).unwrap();
        assert!(
            diag.element(0)
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.75, 0.25]))
                < 1e-15
        );
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(builtin_povm("pentad", &[]), Err(Error::UnknownExample(_))));
        assert!(matches!(
            builtin_povm("roulette-xz", &[1.0]),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            builtin_povm("roulette-xz", &[0.0]),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            builtin_povm("roulette-diag", &[0.5]),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            builtin_povm("roulette-diag", &[]),
            Err(Error::InvalidRequest(_))
        ));
        assert!(matches!(builtin_povm("trine", &[0.3]), Err(Error::InvalidRequest(_))));
    }

    #[test]
    fn builtin_examples_validate_and_have_expected_traces() {
        let examples = [
            builtin_povm("trine", &[]).unwrap(),
            builtin_povm("tetrad", &[]).unwrap(),
            builtin_povm("roulette-xz", &[0.3]).unwrap(),
            builtin_povm("roulette-diag", &[0.1]).unwrap(),
        ];
        for povm in &examples {
            let mats: Vec<_> = povm.matrices().cloned().collect();
            let report = validate_povm(&mats, &cfg()).unwrap();
            assert!(report.completeness_residual < 1e-12);
            assert!(report.hermiticity_residuals.iter().all(|&r| r < 1e-12));
        }
        for m in examples[0].matrices() {
            assert!((m.trace() - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        }
        for m in examples[1].matrices() {
            assert!((m.trace() - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn random_povm_small_cases() {
        let povm = random_povm(2, 2, &[1, 1], 7).unwrap();
        let mats: Vec<_> = povm.matrices().cloned().collect();
        let report = validate_povm(&mats, &cfg()).unwrap();
        assert!(report.completeness_residual < 1e-12);
        assert!(report.hermiticity_residuals.iter().all(|&r| r < 1e-12));
        assert!(report.min_eigenvalues.iter().all(|&l| l > -1e-12));

        let scalars = random_povm(1, 3, &[1, 1, 1], 3).unwrap();
        let total: f64 = scalars.matrices().map(|m| m[(0, 0)].re).sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!(scalars.matrices().all(|m| m[(0, 0)].re >= 0.0 && m[(0, 0)].im == 0.0));
    }

    #[test]
    fn random_povm_is_deterministic_per_seed() {
        let a = random_povm(3, 4, &[1, 2, 3, 1], 42).unwrap();
        let b = random_povm(3, 4, &[1, 2, 3, 1], 42).unwrap();
        assert_eq!(a, b);
        let c = random_povm(3, 4, &[1, 2, 3, 1], 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_povm_rejects_bad_requests() {
        assert!(matches!(random_povm(3, 1, &[2], 0), Err(Error::SingularTotal { .. })));
        assert!(random_povm(0, 2, &[1, 1], 0).is_err());
        assert!(random_povm(2, 2, &[1], 0).is_err());
        assert!(random_povm(2, 2, &[1, 3], 0).is_err());
    }

    #[test]
    fn random_povm_preserves_requested_ranks() {
        let povm = random_povm(4, 3, &[1, 2, 4], 5).unwrap();
        for (m, want) in povm.matrices().zip([1, 2, 4]) {
            assert_eq!(psd_factor(m, FactorMode::Thin, &cfg()).unwrap().cols(), want);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn random_povms_validate(
            dim in 1usize..=5,
            ranks in prop::collection::vec(1usize..=5, 1..=6),
            seed in any::<u64>(),
        ) {
            let ranks: Vec<usize> = ranks.into_iter().map(|r| r.min(dim)).collect();
            prop_assume!(ranks.iter().sum::<usize>() >= dim);
            let povm = random_povm(dim, ranks.len(), &ranks, seed).unwrap();
            let mats: Vec<_> = povm.matrices().cloned().collect();
            let report = validate_povm(&mats, &cfg()).unwrap();
            prop_assert!(report.passed());
            prop_assert!(report.completeness_residual < 1e-12);
        }
    }
}
