//! Random test corpora. Every matrix is built from a known spectrum or a
//! known rank, so the tests have an oracle that does not go through the
//! library's own eigensolver.

#![allow(dead_code)]

use pseudosusy::numkernel::{condition_number, hermitian_eigenvalues};
use pseudosusy::{ComplexMatrix, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let entries: Vec<C64> = (0..rows * cols).map(|_| random_complex(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, &entries).unwrap()
}

/// `I + G/√n`, redrawn until `cond ≤ max_cond`.
pub fn well_conditioned(rng: &mut ChaCha8Rng, n: usize, max_cond: f64) -> ComplexMatrix {
    loop {
        let g = random_matrix(rng, n, n).scale_real(0.6 / (n as f64).sqrt());
        let w = ComplexMatrix::identity(n) + g;
        if condition_number(&w) <= max_cond {
            return w;
        }
    }
}

/// `X†X + δI`: Hermitian positive definite.
pub fn positive_definite(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let x = well_conditioned(rng, n, 20.0);
    x.adjoint() * &x + ComplexMatrix::identity(n).scale_real(0.1)
}

pub fn min_eigenvalue(hermitian: &ComplexMatrix) -> f64 {
    hermitian_eigenvalues(hermitian)[0]
}

/// Spectra made of real values and conjugate pairs, separated by at least
/// `GAP`, with occasional exact degeneracies.
pub const GAP: f64 = 0.25;

fn far_enough(existing: &[C64], z: C64) -> bool {
    existing.iter().all(|e| (e - z).norm() >= GAP)
}

/// Eigenvalue list (with repeats) of length `n`.
/// `pairs` permits conjugate pairs; `degenerate` permits repeated values.
pub fn paired_spectrum(rng: &mut ChaCha8Rng, n: usize, pairs: bool, degenerate: bool) -> Vec<C64> {
    let mut distinct: Vec<C64> = Vec::new();
    let mut out: Vec<C64> = Vec::with_capacity(n);
    while out.len() < n {
        let room = n - out.len();
        let mult = if degenerate && room >= 2 && rng.gen_bool(0.2) { 2 } else { 1 };
        if pairs && room >= 2 * mult && rng.gen_bool(0.4) {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(0.4..3.0));
            if far_enough(&distinct, z) && far_enough(&distinct, z.conj()) {
                distinct.push(z);
                distinct.push(z.conj());
                for _ in 0..mult {
                    out.push(z);
                    out.push(z.conj());
                }
            }
        } else if room >= mult {
            let z = c(rng.gen_range(-4.0..4.0), 0.0);
            if far_enough(&distinct, z) {
                distinct.push(z);
                out.extend(std::iter::repeat(z).take(mult));
            }
        }
    }
    out
}

/// Same as [`paired_spectrum`] with one complex value lacking its partner.
pub fn unpairable_spectrum(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    let mut values = paired_spectrum(rng, n - 1, false, false);
    loop {
        let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..3.0));
        if far_enough(&values, z) && far_enough(&values, z.conj()) {
            values.push(z);
            return values;
        }
    }
}

/// `W·diag(values)·W⁻¹` together with `W`.
pub fn similar_to(rng: &mut ChaCha8Rng, values: &[C64]) -> (ComplexMatrix, ComplexMatrix) {
    let w = well_conditioned(rng, values.len(), 30.0);
    let h = &w * &ComplexMatrix::from_diagonal(values) * w.inverse().unwrap();
    (h, w)
}

/// Largest distance from a computed eigenvalue to its nearest expected one,
/// and the other way around.
pub fn spectral_mismatch(expected: &[C64], computed: &[C64]) -> f64 {
    let one_way = |a: &[C64], b: &[C64]| {
        a.iter()
            .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    if expected.len() != computed.len() {
        return f64::INFINITY;
    }
    one_way(expected, computed).max(one_way(computed, expected))
}

/// `A·B` with inner dimension `r`: rank exactly `r` almost surely.
pub fn rank_deficient(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize) -> ComplexMatrix {
    if r == 0 {
        return ComplexMatrix::zeros(rows, cols);
    }
    random_matrix(rng, rows, r) * random_matrix(rng, r, cols)
}
