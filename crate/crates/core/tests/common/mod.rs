#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Direct O(L^2) evaluation of the DFT sum. The phase index `k*n` is
/// reduced mod L and looked up in a table of the L roots of unity.
pub fn naive_dft(x: &[f64]) -> Vec<Complex64> {
    let l = x.len();
    let roots: Vec<Complex64> = (0..l)
        .map(|m| Complex64::from_polar(1.0, -2.0 * PI * m as f64 / l as f64))
        .collect();
    (0..l)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, &xn) in x.iter().enumerate() {
                acc += roots[(k * n) % l] * xn;
            }
            acc
        })
        .collect()
}

/// Relative error of one bin, against the oracle value.
pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
}

pub fn random_frames(seed: u64, count: usize, len: usize) -> Vec<Vec<f64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
