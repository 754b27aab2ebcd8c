//! Seeded random instances for property sweeps.
//!
//! Per-instance seeds come from a master seed through [`derive_seed`], a
//! splitmix64 finalizer applied to `master + (index + 1) * 0x9e3779b97f4a7c15`.
//! Each instance then draws from its own ChaCha8 stream, so results do not
//! depend on how instances are scheduled.

use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::fourier::GroupFunction;
use crate::group::FiniteGroup;
use crate::matrix::ComplexMatrix;
use crate::operators::BandLimiter;
use crate::reps::IrrepCatalog;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// The splitmix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of instance `index` under master seed `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (independent N(0, 1/2) parts).
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Function with i.i.d. complex Gaussian values.
pub fn random_function(group: &Arc<FiniteGroup>, rng: &mut impl Rng) -> GroupFunction {
    GroupFunction::from_fn(Arc::clone(group), |_| complex_gaussian(rng))
}

/// Function with Gaussian values on a random support of uniform size in `1..=|G|`.
pub fn random_sparse_function(group: &Arc<FiniteGroup>, rng: &mut impl Rng) -> GroupFunction {
    let n = group.order();
    let k = rng.random_range(1..=n);
    let support = sample_indices(rng, n, k);
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for x in support {
        let mut z = complex_gaussian(rng);
        while z.norm() < 1e-3 {
            z = complex_gaussian(rng);
        }
        values[x] = z;
    }
    GroupFunction::new(Arc::clone(group), values).expect("finite values")
}

/// Sorted list of `k` distinct elements of `0..n`.
pub fn sample_indices(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(k);
    all.sort_unstable();
    all
}

/// Subset of `0..n` with each element kept with probability 1/2.
pub fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-random unitary: modified Gram-Schmidt on a Gaussian matrix, with
/// column phases fixed so that `R` has a positive diagonal.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let a = gaussian_matrix(d, d, rng);
        let mut cols: Vec<Vec<Complex64>> = (0..d).map(|c| a.column(c)).collect();
        let mut ok = true;
        for j in 0..d {
            for k in 0..j {
                let proj: Complex64 = cols[k].iter().zip(&cols[j]).map(|(q, v)| q.conj() * v).sum();
                let qk = cols[k].clone();
                for (v, q) in cols[j].iter_mut().zip(&qk) {
                    *v -= proj * q;
                }
            }
            let norm = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for v in cols[j].iter_mut() {
                *v /= norm;
            }
        }
        if ok {
            return ComplexMatrix::from_fn(d, d, |r, c| cols[c][r]);
        }
    }
}

/// Orthogonal projector of the given rank onto a Haar-random subspace.
pub fn random_projector(d: usize, rank: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(rank <= d, "rank exceeds dimension");
    let q = random_unitary(d, rng);
    ComplexMatrix::from_fn(d, d, |i, j| (0..rank).map(|k| q[(i, k)] * q[(j, k)].conj()).sum())
}

/// Band-limiter with i.i.d. complex Gaussian blocks.
pub fn gaussian_band_limiter(cat: &Arc<IrrepCatalog>, rng: &mut impl Rng) -> BandLimiter {
    let blocks = cat.dims().into_iter().map(|d| gaussian_matrix(d, d, rng)).collect();
    BandLimiter::new(Arc::clone(cat), blocks).expect("block shapes match")
}

/// Band-limiter whose blocks are random orthogonal projectors with rank
/// uniform in `0..=d_rho`.
pub fn projector_band_limiter(cat: &Arc<IrrepCatalog>, rng: &mut impl Rng) -> BandLimiter {
    let blocks = cat
        .dims()
        .into_iter()
        .map(|d| {
            let rank = rng.random_range(0..=d);
            random_projector(d, rank, rng)
        })
        .collect();
    BandLimiter::new(Arc::clone(cat), blocks).expect("block shapes match")
}
