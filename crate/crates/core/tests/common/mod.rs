#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wgmres::linalg::ComplexMatrix;
use wgmres::C64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    ComplexMatrix::new(rows, cols, data).unwrap()
}

pub fn random_real(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
    ComplexMatrix::new(rows, cols, data).unwrap()
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

/// `G G^* + shift I`.
pub fn random_hpd(rng: &mut impl Rng, n: usize, shift: f64) -> ComplexMatrix {
    let g = random_complex(rng, n, n);
    let mut m = g.matmul(&g.adjoint());
    for i in 0..n {
        m[(i, i)] += shift;
    }
    m
}

/// Hermitian positive definite part plus a random skew part.
pub fn random_pd(rng: &mut impl Rng, n: usize, skew: f64) -> ComplexMatrix {
    let m = random_hpd(rng, n, 1.0);
    let g = random_complex(rng, n, n);
    let s = (&g - &g.adjoint()).scale_real(0.5 * skew);
    &m + &s
}

pub fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).max_abs()
}

pub fn vec_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
