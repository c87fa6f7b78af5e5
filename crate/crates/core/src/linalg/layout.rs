//! Ancilla-left Kronecker layout: the enlarged space is ordered `H_A ⊗ H_S`,
//! so `|e₁⟩⟨e₁| ⊗ B` occupies the upper-left `dS × dS` block.

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Kronecker product `A ⊗ B`; block `(i, j)` is `a_ij · B`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = b.shape();
    let mut out = ComplexMatrix::zeros(a.rows() * br, a.cols() * bc);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Trace over the ancilla factor: the sum of the `dA` diagonal `dS × dS` blocks.
pub fn partial_trace_first(m: &ComplexMatrix, d_a: usize, d_s: usize) -> Result<ComplexMatrix> {
    let n = d_a * d_s;
    if m.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "partial trace over a {d_a}x{d_s} layout needs a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(d_s, d_s);
    for a in 0..d_a {
        out = &out + &m.block(a * d_s, a * d_s, d_s, d_s);
    }
    Ok(out)
}

/// Places a square block in the upper-left corner of an `n × n` zero matrix.
pub fn embed_upper_left(b: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "embedded block must be square, got {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    if b.rows() > n {
        return Err(Error::DimensionMismatch(format!(
            "cannot embed a {0}x{0} block into {n}x{n}",
            b.rows()
        )));
    }
    let mut out = ComplexMatrix::zeros(n, n);
    out.set_block(0, 0, b);
    Ok(out)
}
