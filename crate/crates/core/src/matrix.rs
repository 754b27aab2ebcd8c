//! Dense complex matrices with a Jacobi singular value decomposition.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative tolerance for [`numeric_rank`].
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Wraps row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, k: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)] * other[(r % other.rows, c % other.cols)]
        })
    }

    /// Sum of squared entry moduli (squared Hilbert-Schmidt norm).
    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// Residual of `A^2 = A` and `A = A^dagger`, as the larger entrywise deviation.
    pub fn projector_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let idem = (self * self).max_abs_diff(self);
        let herm = self.adjoint().max_abs_diff(self);
        idem.max(herm)
    }

    /// Entrywise deviation of `A A^dagger` from the identity.
    pub fn unitarity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.rows))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Thin singular value decomposition `M = U diag(sigma) V^dagger`.
///
/// `u` has the shape of `M` (columns for zero singular values are zero),
/// `v` is `cols x cols` unitary and `sigma` is descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Each plane rotation is the Jacobi rotation that annihilates one
/// off-diagonal entry of `M^dagger M`, applied to the columns of `M` instead
/// of to the Gram matrix, so small singular values keep full relative
/// accuracy. Sweeps stop when every column pair is orthogonal to within
/// `1e-15` relative.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (rows, cols) = (m.rows, m.cols);
    // Column-major working copies.
    let mut a: Vec<Vec<Complex64>> = (0..cols).map(|c| m.column(c)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|c| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[c] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns count as orthogonal once their inner product is at rounding
    // level; columns below rounding level of the whole matrix are left alone,
    // otherwise null-space noise is rotated until it underflows.
    let pair_tol = rows.max(1) as f64 * f64::EPSILON;
    let noise_floor = (f64::EPSILON * m.hs_norm_sq().sqrt()).powi(2);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = a[p].iter().map(Complex64::norm_sqr).sum();
                let beta: f64 = a[q].iter().map(Complex64::norm_sqr).sum();
                let gamma: Complex64 = a[p].iter().zip(&a[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || alpha.min(beta) <= noise_floor || g <= pair_tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut a, p, q, phase, c, s);
                rotate_pair(&mut v, p, q, phase, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .map(|(j, col)| (j, col.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()))
        .collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));

    let mut u = ComplexMatrix::zeros(rows, cols);
    let mut vm = ComplexMatrix::zeros(cols, cols);
    let mut sigma = Vec::with_capacity(cols);
    for (k, &(j, s)) in order.iter().enumerate() {
        sigma.push(s);
        for r in 0..rows {
            u[(r, k)] = if s > 0.0 { a[j][r] / s } else { Complex64::new(0.0, 0.0) };
        }
        for r in 0..cols {
            vm[(r, k)] = v[j][r];
        }
    }
    Ok(Svd { u, sigma, v: vm })
}

// (x_p, x_q) <- (c x_p - s e^{-i phi} x_q, s x_p + c e^{-i phi} x_q)
fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, phase: Complex64, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (xp, xq) = (&mut left[p], &mut right[0]);
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bt = *b * phase;
        let na = *a * c - bt * s;
        let nb = *a * s + bt * c;
        *a = na;
        *b = nb;
    }
}

/// Singular values in descending order.
///
/// For a wide matrix the adjoint is decomposed, so the list has
/// `min(rows, cols)` entries padded with zeros up to `cols`.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows < m.cols {
        let mut s = svd(&m.adjoint())?.sigma;
        s.resize(m.cols, 0.0);
        Ok(s)
    } else {
        Ok(svd(m)?.sigma)
    }
}

/// Number of singular values above `rel_tol * max(rows, cols) * sigma_max`.
pub fn numeric_rank(m: &ComplexMatrix, rel_tol: f64) -> Result<usize> {
    validate_rank_tol(rel_tol)?;
    let sigma = singular_values(m)?;
    Ok(rank_from_singular_values(&sigma, m.rows.max(m.cols), rel_tol))
}

pub(crate) fn validate_rank_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "rank tolerance {rel_tol} must lie in (0, 1)"
        )))
    }
}

pub(crate) fn rank_from_singular_values(sigma: &[f64], dim: usize, rel_tol: f64) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let threshold = rel_tol * dim as f64 * top;
    sigma.iter().filter(|&&s| s > threshold).count()
}

/// Hilbert-Schmidt and operator norm of a matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub hs: f64,
    pub op: f64,
}

pub fn norms(m: &ComplexMatrix) -> Result<Norms> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let hs = m.hs_norm_sq().sqrt();
    let op = singular_values(m)?.first().copied().unwrap_or(0.0);
    Ok(Norms { hs, op })
}

/// Largest singular value.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(norms(m)?.op)
}

/// Eigen-decomposition of a Hermitian matrix by cyclic two-sided Jacobi.
///
/// Returns ascending eigenvalues and the matrix whose columns are the
/// corresponding orthonormal eigenvectors. Stops once the off-diagonal
/// Frobenius mass drops below `1e-14` of the total.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("hermitian_eigen needs a square matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let total = a.hs_norm_sq().sqrt();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-14 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Rotate in the plane (p, q) with e^{i phi} = apq / |apq|.
                let phase = apq / g;
                let theta = (aqq - app) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // J has columns e_p' = c e_p - s conj(phase) e_q, e_q' = s phase e_p + c e_q
                // chosen so that (J^dagger A J)_{pq} = 0.
                let jpp = Complex64::new(c, 0.0);
                let jqp = -phase.conj() * s;
                let jpq = phase * s;
                let jqq = Complex64::new(c, 0.0);
                // A <- A J
                for r in 0..n {
                    let (x, y) = (a[(r, p)], a[(r, q)]);
                    a[(r, p)] = x * jpp + y * jqp;
                    a[(r, q)] = x * jpq + y * jqq;
                }
                // A <- J^dagger A
                for col in 0..n {
                    let (x, y) = (a[(p, col)], a[(q, col)]);
                    a[(p, col)] = jpp.conj() * x + jqp.conj() * y;
                    a[(q, col)] = jpq.conj() * x + jqq.conj() * y;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    let (x, y) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = x * jpp + y * jqp;
                    v[(r, q)] = x * jpq + y * jqq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = idx.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, k| v[(r, idx[k])]);
    Ok((values, vectors))
}
