#![allow(dead_code)]

use std::f64::consts::PI;

use naimark::{random_povm, ComplexMatrix, Povm};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

pub fn matrix(rows: &[&[Complex64]], scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .unwrap()
        .scale(scale)
}

/// Published trine projectors (4×4, zero fourth row and column).
pub fn trine_projectors() -> Vec<ComplexMatrix> {
    let one = c(1.0, 0.0);
    let o = c(0.0, 0.0);
    let w = phase(2.0 * PI / 3.0);
    let wb = phase(-2.0 * PI / 3.0);
    vec![
        matrix(
            &[
                &[one, one, one, o],
                &[one, one, one, o],
                &[one, one, one, o],
                &[o, o, o, o],
            ],
            1.0 / 3.0,
        ),
        matrix(
            &[&[one, wb, w, o], &[w, one, wb, o], &[wb, w, one, o], &[o, o, o, o]],
            1.0 / 3.0,
        ),
        matrix(
            &[&[one, w, wb, o], &[wb, one, w, o], &[w, wb, one, o], &[o, o, o, o]],
            1.0 / 3.0,
        ),
    ]
}

/// Published tetrad projectors.
pub fn tetrad_projectors() -> Vec<ComplexMatrix> {
    let one = c(1.0, 0.0);
    let o = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    let r2 = c(2f64.sqrt(), 0.0);
    let two = c(2.0, 0.0);
    let p = phase(PI / 4.0);
    let pb = phase(-PI / 4.0);
    let p3 = phase(3.0 * PI / 4.0);
    vec![
        matrix(
            &[&[one, one, r2, o], &[one, one, r2, o], &[r2, r2, two, o], &[o, o, o, o]],
            0.25,
        ),
        matrix(
            &[
                &[one, -i, -pb, pb],
                &[i, one, -p, p],
                &[-p, -pb, one, -one],
                &[p, pb, -one, one],
            ],
            0.25,
        ),
        matrix(
            &[
                &[one, -one, o, i * r2],
                &[-one, one, o, -i * r2],
                &[o, o, o, o],
                &[-i * r2, i * r2, o, two],
            ],
            0.25,
        ),
        matrix(
            &[
                &[one, i, -p, -p],
                &[-i, one, -pb, p3],
                &[-pb, -p, one, one],
                &[p3, -p, one, one],
            ],
            0.25,
        ),
    ]
}

/// Published E₁ for the x/z roulette.
pub fn roulette_xz_e1(z: f64) -> ComplexMatrix {
    let s = ((1.0 - z) * z).sqrt() / 2f64.sqrt();
    ComplexMatrix::from_real_rows(&[
        vec![1.0 - z / 2.0, z / 2.0, s, 0.0],
        vec![z / 2.0, z / 2.0, 0.0, s],
        vec![s, 0.0, z / 2.0, -z / 2.0],
        vec![0.0, s, -z / 2.0, 1.0 - z / 2.0],
    ])
    .unwrap()
}

/// Published E₁ for the diagonal roulette.
pub fn roulette_diag_e1(f: f64) -> ComplexMatrix {
    let s = 0.5 * (1.0 - 4.0 * f * f).sqrt();
    ComplexMatrix::from_real_rows(&[
        vec![0.5 + f, 0.0, s, 0.0],
        vec![0.0, 0.5 - f, 0.0, s],
        vec![s, 0.0, 0.5 - f, 0.0],
        vec![0.0, s, 0.0, 0.5 + f],
    ])
    .unwrap()
}

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

/// Helstrom's own four-projector extension of the trine, `|ξ_k⟩⟨ξ_k|` with
/// the ancilla factor on the left.
pub fn helstrom_trine_extension() -> Vec<ComplexMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi1 = [c(s, 0.0), c(s, 0.0)];
    let psi2 = [phase(-PI / 3.0) * s, phase(PI / 3.0) * s];
    let psi3 = [-phase(PI / 3.0) * s, -phase(-PI / 3.0) * s];
    let psi3p = [-phase(PI / 3.0) * s, phase(-PI / 3.0) * s];
    let v1 = [c(1.0, 0.0), c(0.0, 0.0)];
    let v2 = [c(0.0, 0.0), c(1.0, 0.0)];
    let a = (2.0f64 / 3.0).sqrt();
    let b = (1.0f64 / 3.0).sqrt();
    let combine = |x: Vec<Complex64>, y: Vec<Complex64>, wy: f64| -> Vec<Complex64> {
        x.iter().zip(&y).map(|(p, q)| p * a + q * wy).collect()
    };
    let xi = [
        combine(kron_vec(&v1, &psi1), kron_vec(&v2, &psi3), b),
        combine(kron_vec(&v1, &psi2), kron_vec(&v2, &psi3), -b),
        combine(kron_vec(&v1, &psi3), kron_vec(&v2, &psi3), b),
        kron_vec(&v2, &psi3p),
    ];
    xi.iter().map(|v| ComplexMatrix::outer(v)).collect()
}

/// Published matrix of Helstrom's E₁.
pub fn helstrom_e1_printed() -> ComplexMatrix {
    let one = c(1.0, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let w = phase(2.0 * PI / 3.0) * s;
    let wb = phase(-2.0 * PI / 3.0) * s;
    let h = c(0.5, 0.0);
    let q = phase(-PI / 3.0) * -0.5;
    let qb = phase(PI / 3.0) * -0.5;
    matrix(
        &[&[one, one, w, wb], &[one, one, w, wb], &[wb, wb, h, q], &[w, w, qb, h]],
        1.0 / 3.0,
    )
}

/// One instance of the random corpus.
pub struct RandomCase {
    pub seed: u64,
    pub ranks: Vec<usize>,
    pub povm: Povm,
}

/// Deterministic corpus: `D ∈ {2, 3, 4}`, `M ∈ {2..5}`, ranks drawn from
/// `1..=D` (redrawn until they can span the space).
pub fn random_corpus(count: usize, base_seed: u64) -> Vec<RandomCase> {
    (0..count as u64)
        .map(|k| {
            let seed = base_seed + k;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let d = 2 + (k % 3) as usize;
            let m = 2 + ((k / 3) % 4) as usize;
            let ranks = loop {
                let r: Vec<usize> = (0..m).map(|_| rng.random_range(1..=d)).collect();
                if r.iter().sum::<usize>() >= d {
                    break r;
                }
            };
            let povm = random_povm(d, m, &ranks, seed).unwrap();
            RandomCase { seed, ranks, povm }
        })
        .collect()
}

/// Element-wise absolute values.
pub fn abs_entries(m: &ComplexMatrix) -> ComplexMatrix {
    m.map(|z| c(z.norm(), 0.0))
}
