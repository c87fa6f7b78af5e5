use num_complex::Complex64;

use super::{ComplexMatrix, ToleranceConfig};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition `H = V · diag(λ) · V^†` of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order and column `k` of `vectors`
/// pairs with `values[k]`. Each column is scaled so that its first component
/// with magnitude above `phase_tol` is real and positive.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `V · diag(f(λ)) · V^†`
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.vectors
            .scale_columns(&mapped)
            .mul_adjoint(&self.vectors)
            .hermitian_part()
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    h.ensure_finite()?;
    let norm = h.frobenius_norm();
    let residual = h.hermiticity_residual();
    if residual > cfg.check_tol * norm.max(1.0) {
        return Err(Error::NotHermitian { residual });
    }

    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = f64::EPSILON * norm;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NoConvergence { iterations: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = v.select_columns(&order);
    canonicalize_phases(&mut vectors, cfg.phase_tol);
    Ok(HermitianEigen { values, vectors })
}

/// Rotates each column so its first component above `phase_tol` in magnitude
/// is real and positive.
pub fn canonicalize_phases(vectors: &mut ComplexMatrix, phase_tol: f64) {
    for j in 0..vectors.cols() {
        let pivot = (0..vectors.rows())
            .map(|i| vectors[(i, j)])
            .find(|z| z.norm() > phase_tol);
        if let Some(z) = pivot {
            let phase = z.conj() / z.norm();
            for i in 0..vectors.rows() {
                vectors[(i, j)] *= phase;
            }
            // exact zero imaginary part on the pivot
            if let Some(i) = (0..vectors.rows()).find(|&i| vectors[(i, j)].norm() > phase_tol) {
                vectors[(i, j)] = Complex64::new(vectors[(i, j)].norm(), 0.0);
            }
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing `a[(p, q)]`, accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // phase that makes the (p, q) entry real, then a real symmetric rotation
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s·conj(phase), c·conj(phase)]] on the (p, q) plane
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..v.rows() {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
