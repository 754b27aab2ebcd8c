//! Shared pieces of the JSON file formats.
//!
//! Complex numbers are written as `[re, im]` pairs and matrices as flat
//! row-major arrays of pairs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub type ComplexPair = [f64; 2];

pub fn to_pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

pub fn from_pair(p: ComplexPair) -> Result<Complex64> {
    if p.iter().all(|v| v.is_finite()) {
        Ok(Complex64::new(p[0], p[1]))
    } else {
        Err(Error::Parse("non-finite number".into()))
    }
}

pub fn values_to_pairs(values: &[Complex64]) -> Vec<ComplexPair> {
    values.iter().copied().map(to_pair).collect()
}

pub fn values_from_pairs(pairs: &[ComplexPair]) -> Result<Vec<Complex64>> {
    pairs.iter().copied().map(from_pair).collect()
}

pub fn matrix_to_pairs(m: &ComplexMatrix) -> Vec<ComplexPair> {
    values_to_pairs(m.as_slice())
}

pub fn matrix_from_pairs(rows: usize, cols: usize, pairs: &[ComplexPair]) -> Result<ComplexMatrix> {
    if pairs.len() != rows * cols {
        return Err(Error::Parse(format!(
            "matrix has {} entries, expected {rows}x{cols}",
            pairs.len()
        )));
    }
    ComplexMatrix::from_vec(rows, cols, values_from_pairs(pairs)?)
}
