//! The operator-valued Fourier transform on a finite group.
//!
//! Haar measure gives every element mass `1/|G|`, so
//! `f^(rho) = (1/|G|) sum_x f(x) rho(x)^dagger` and the inversion formula
//! `f(x) = sum_rho d_rho tr[f^(rho) rho(x)]` carries no `1/|G|`.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec, Subgroup};
use crate::io::{matrix_from_pairs, matrix_to_pairs, values_from_pairs, values_to_pairs, ComplexPair};
use crate::matrix::{rank_from_singular_values, singular_values, validate_rank_tol, ComplexMatrix};
use crate::reps::IrrepCatalog;

/// Absolute floor, after scaling to unit sup norm, below which a value is zero.
pub const SUPPORT_FLOOR: f64 = 1e-12;

/// A complex-valued function on a finite group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GroupFunction { group, values })
    }

    pub fn from_fn(group: Arc<FiniteGroup>, f: impl FnMut(usize) -> Complex64) -> Self {
        let values = (0..group.order()).map(f).collect();
        GroupFunction { group, values }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Self::constant(group, Complex64::new(0.0, 0.0))
    }

    pub fn constant(group: Arc<FiniteGroup>, c: Complex64) -> Self {
        Self::from_fn(group, |_| c)
    }

    /// Indicator of a set of elements; out-of-range indices are rejected.
    pub fn indicator(group: Arc<FiniteGroup>, set: &[usize]) -> Result<Self> {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        for &x in set {
            *values
                .get_mut(x)
                .ok_or_else(|| Error::InvalidArgument(format!("element {x} out of range")))? = Complex64::new(1.0, 0.0);
        }
        Ok(GroupFunction { group, values })
    }

    pub fn subgroup_indicator(h: &Subgroup) -> Self {
        Self::indicator(Arc::clone(h.parent()), h.members()).expect("subgroup members are valid")
    }

    /// Point mass at `x`.
    pub fn delta(group: Arc<FiniteGroup>, x: usize) -> Result<Self> {
        Self::indicator(group, &[x])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `(1/|G|) sum |f(x)|^2`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(Complex64::norm_sqr).sum::<f64>() / self.values.len() as f64
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// First element where `|f|` is largest.
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        for (i, z) in self.values.iter().enumerate() {
            if z.norm() > self.values[best].norm() {
                best = i;
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// Elements where `|f(x)| / ||f||_inf > 1e-12`.
    pub fn support(&self) -> Vec<usize> {
        let top = self.sup_norm();
        if top == 0.0 {
            return Vec::new();
        }
        (0..self.values.len())
            .filter(|&x| self.values[x].norm() / top > SUPPORT_FLOOR)
            .collect()
    }

    /// Haar measure of the support.
    pub fn support_measure(&self) -> f64 {
        self.support().len() as f64 / self.values.len() as f64
    }

    /// `(L_y f)(x) = f(y^-1 x)`.
    pub fn translate_left(&self, y: usize) -> Self {
        let yi = self.group.inv(y);
        Self::from_fn(Arc::clone(&self.group), |x| self.values[self.group.mul(yi, x)])
    }

    /// `a*self + b*other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(Self::from_fn(Arc::clone(&self.group), |x| {
            a * self.values[x] + b * other.values[x]
        }))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        GroupFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Fourier coefficients: one `d_rho x d_rho` block per irrep.
#[derive(Debug, Clone)]
pub struct Spectrum {
    catalog: Arc<IrrepCatalog>,
    blocks: Vec<ComplexMatrix>,
}

impl Spectrum {
    pub fn new(catalog: Arc<IrrepCatalog>, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        check_blocks(&catalog, &blocks)?;
        Ok(Spectrum { catalog, blocks })
    }

    pub fn zero(catalog: Arc<IrrepCatalog>) -> Self {
        let blocks = catalog.dims().into_iter().map(|d| ComplexMatrix::zeros(d, d)).collect();
        Spectrum { catalog, blocks }
    }

    pub fn catalog(&self) -> &Arc<IrrepCatalog> {
        &self.catalog
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    /// `sum_rho d_rho ||block||_2^2`.
    pub fn weighted_hs_norm_sq(&self) -> f64 {
        self.blocks
            .iter()
            .zip(self.catalog.irreps())
            .map(|(b, r)| r.dim as f64 * b.hs_norm_sq())
            .sum()
    }

    /// Replaces each block by `op(index, block)`.
    pub fn map_blocks(&self, mut op: impl FnMut(usize, &ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        let blocks = self.blocks.iter().enumerate().map(|(i, b)| op(i, b)).collect();
        Spectrum::new(Arc::clone(&self.catalog), blocks)
    }
}

pub(crate) fn check_blocks(catalog: &IrrepCatalog, blocks: &[ComplexMatrix]) -> Result<()> {
    if blocks.len() != catalog.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} blocks for {} irreps",
            blocks.len(),
            catalog.len()
        )));
    }
    for (b, r) in blocks.iter().zip(catalog.irreps()) {
        if b.rows() != r.dim || b.cols() != r.dim {
            return Err(Error::DimensionMismatch(format!(
                "block for {} is {}x{}, expected {d}x{d}",
                r.name,
                b.rows(),
                b.cols(),
                d = r.dim
            )));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

/// `f^(rho) = (1/|G|) sum_x f(x) rho(x)^dagger` for every irrep.
pub fn fourier_transform(f: &GroupFunction, cat: &Arc<IrrepCatalog>) -> Result<Spectrum> {
    if f.group.as_ref() != cat.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let n = f.values.len() as f64;
    let blocks = cat
        .irreps()
        .iter()
        .map(|irrep| {
            let d = irrep.dim;
            let mut acc = ComplexMatrix::zeros(d, d);
            for (x, &fx) in f.values.iter().enumerate() {
                if fx == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let m = irrep.matrix(x);
                for r in 0..d {
                    for c in 0..d {
                        acc[(r, c)] += fx * m[(c, r)].conj();
                    }
                }
            }
            acc.scale(Complex64::new(1.0 / n, 0.0))
        })
        .collect();
    Ok(Spectrum {
        catalog: Arc::clone(cat),
        blocks,
    })
}

/// `f(x) = sum_rho d_rho tr[f^(rho) rho(x)]`.
pub fn inverse_transform(s: &Spectrum) -> Result<GroupFunction> {
    check_blocks(&s.catalog, &s.blocks)?;
    let group = Arc::clone(s.catalog.group());
    Ok(GroupFunction::from_fn(group, |x| inverse_at(s, x)))
}

/// The inversion formula evaluated at a single element.
pub fn inverse_at(s: &Spectrum, x: usize) -> Complex64 {
    s.blocks
        .iter()
        .zip(s.catalog.irreps())
        .map(|(b, irrep)| {
            let m = irrep.matrix(x);
            let d = irrep.dim;
            // tr(B M) = sum_{r,c} B[r,c] M[c,r]
            let mut tr = Complex64::new(0.0, 0.0);
            for r in 0..d {
                for c in 0..d {
                    tr += b[(r, c)] * m[(c, r)];
                }
            }
            tr * d as f64
        })
        .sum()
}

/// `| ||f||_2^2 - sum_rho d_rho ||f^(rho)||_2^2 |`.
pub fn plancherel_residual(f: &GroupFunction, s: &Spectrum) -> Result<f64> {
    if f.group.as_ref() != s.catalog.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    check_blocks(&s.catalog, &s.blocks)?;
    Ok((f.l2_norm_sq() - s.weighted_hs_norm_sq()).abs())
}

/// The support sizes compared by the uncertainty principles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportMetrics {
    /// Haar measure of `supp f`.
    pub mu_supp: f64,
    pub support_size: usize,
    /// `sum_rho d_rho rank f^(rho)`.
    pub rank_sum: usize,
    /// `sum_{f^(rho) != 0} d_rho^2`.
    pub dsq_sum: usize,
    /// `sum_{f^(rho) != 0} d_rho`.
    pub d1_sum: usize,
    pub block_ranks: Vec<usize>,
    /// Set when `f` vanishes identically; the other fields are then zero.
    pub zero_function: bool,
}

impl SupportMetrics {
    pub fn rank_product(&self) -> f64 {
        self.mu_supp * self.rank_sum as f64
    }

    pub fn matolcsi_product(&self) -> f64 {
        self.mu_supp * self.dsq_sum as f64
    }

    pub fn kutyniok_product(&self) -> f64 {
        self.mu_supp * self.d1_sum as f64
    }
}

/// Ranks of the Fourier blocks, with zero blocks (largest singular value at
/// most `rel_tol` times the largest over all blocks) given rank zero.
pub fn block_ranks(s: &Spectrum, rel_tol: f64) -> Result<Vec<usize>> {
    validate_rank_tol(rel_tol)?;
    let sigmas: Vec<Vec<f64>> = s.blocks.iter().map(singular_values).collect::<Result<_>>()?;
    let global = sigmas.iter().filter_map(|s| s.first().copied()).fold(0.0, f64::max);
    Ok(sigmas
        .iter()
        .zip(s.catalog.irreps())
        .map(|(sig, irrep)| {
            let top = sig.first().copied().unwrap_or(0.0);
            if global == 0.0 || top <= rel_tol * global {
                0
            } else {
                rank_from_singular_values(sig, irrep.dim, rel_tol)
            }
        })
        .collect())
}

pub fn support_metrics(f: &GroupFunction, s: &Spectrum, rel_tol: f64) -> Result<SupportMetrics> {
    if f.group.as_ref() != s.catalog.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let ranks = block_ranks(s, rel_tol)?;
    if f.sup_norm() == 0.0 {
        return Ok(SupportMetrics {
            mu_supp: 0.0,
            support_size: 0,
            rank_sum: 0,
            dsq_sum: 0,
            d1_sum: 0,
            block_ranks: ranks,
            zero_function: true,
        });
    }
    let support_size = f.support().len();
    let dims = s.catalog.dims();
    let mut rank_sum = 0;
    let mut dsq_sum = 0;
    let mut d1_sum = 0;
    for (&rank, &d) in ranks.iter().zip(&dims) {
        rank_sum += d * rank;
        if rank > 0 {
            dsq_sum += d * d;
            d1_sum += d;
        }
    }
    Ok(SupportMetrics {
        mu_supp: support_size as f64 / f.values.len() as f64,
        support_size,
        rank_sum,
        dsq_sum,
        d1_sum,
        block_ranks: ranks,
        zero_function: false,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct FunctionFile {
    group_spec: String,
    values: Vec<ComplexPair>,
}

pub fn function_to_json(f: &GroupFunction) -> Result<String> {
    Ok(serde_json::to_string_pretty(&FunctionFile {
        group_spec: f.group.label().to_string(),
        values: values_to_pairs(&f.values),
    })?)
}

/// Reads the group spec named in a function file without decoding values.
pub fn function_file_group(text: &str) -> Result<GroupSpec> {
    let file: FunctionFile = serde_json::from_str(text)?;
    file.group_spec.parse()
}

/// Parses a function file; its group spec must describe `group`.
pub fn parse_function(text: &str, group: &Arc<FiniteGroup>) -> Result<GroupFunction> {
    let file: FunctionFile = serde_json::from_str(text)?;
    let spec: GroupSpec = file.group_spec.parse()?;
    if group.spec() != Some(&spec) {
        return Err(Error::Parse(format!(
            "function file is for {spec}, expected {}",
            group.label()
        )));
    }
    if file.values.len() != group.order() {
        return Err(Error::Parse(format!(
            "{} values for a group of order {}",
            file.values.len(),
            group.order()
        )));
    }
    GroupFunction::new(Arc::clone(group), values_from_pairs(&file.values)?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumBlockFile {
    pub name: String,
    pub dim: usize,
    pub matrix: Vec<ComplexPair>,
}

/// On-disk spectrum; `metrics` is written by the transform command.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub group_spec: String,
    pub order: usize,
    pub count: usize,
    pub blocks: Vec<SpectrumBlockFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<SupportMetrics>,
}

impl SpectrumFile {
    pub fn from_spectrum(s: &Spectrum, metrics: Option<SupportMetrics>) -> Self {
        SpectrumFile {
            group_spec: s.catalog.group().label().to_string(),
            order: s.catalog.group().order(),
            count: s.blocks.len(),
            blocks: s
                .blocks
                .iter()
                .zip(s.catalog.irreps())
                .map(|(b, r)| SpectrumBlockFile {
                    name: r.name.clone(),
                    dim: r.dim,
                    matrix: matrix_to_pairs(b),
                })
                .collect(),
            metrics,
        }
    }

    pub fn into_spectrum(self, cat: &Arc<IrrepCatalog>) -> Result<Spectrum> {
        if self.order != cat.group().order() || self.count != cat.len() || self.blocks.len() != self.count {
            return Err(Error::Parse("spectrum header does not match the catalog".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(cat.irreps())
            .map(|(b, r)| {
                if b.dim != r.dim {
                    return Err(Error::Parse(format!(
                        "block {} has dim {}, expected {}",
                        b.name, b.dim, r.dim
                    )));
                }
                matrix_from_pairs(b.dim, b.dim, &b.matrix)
            })
            .collect::<Result<Vec<_>>>()?;
        Spectrum::new(Arc::clone(cat), blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_symmetric, permutation_rank, subgroup_from_generators};
    use crate::matrix::DEFAULT_RANK_TOL;
    use crate::reps::irreps;

    fn setup(g: FiniteGroup) -> (Arc<FiniteGroup>, Arc<IrrepCatalog>) {
        let g = Arc::new(g);
        let cat = Arc::new(irreps(&g).unwrap());
        (g, cat)
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn transform_of_constant_on_c2() {
        let (g, cat) = setup(make_cyclic(2).unwrap());
        let s = fourier_transform(&GroupFunction::constant(g, one()), &cat).unwrap();
        assert!((s.block(0)[(0, 0)] - one()).norm() < 1e-15);
        assert!(s.block(1)[(0, 0)].norm() < 1e-15);
        let back = inverse_transform(&s).unwrap();
        assert!(back.values().iter().all(|z| (z - one()).norm() < 1e-15));
    }

    #[test]
    fn transform_of_delta_is_scaled_identity() {
        let (g, cat) = setup(make_symmetric(4).unwrap());
        let s = fourier_transform(&GroupFunction::delta(g, 0).unwrap(), &cat).unwrap();
        for (b, r) in s.blocks().iter().zip(cat.irreps()) {
            let expected = ComplexMatrix::identity(r.dim).scale(Complex64::new(1.0 / 24.0, 0.0));
            assert!(b.max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn s3_transposition_subgroup_transform() {
        let (g, cat) = setup(make_symmetric(3).unwrap());
        let t = permutation_rank(&[1, 0, 2]);
        // Two-term oracle: (1/6)(rho(e)^dagger + rho(t)^dagger).
        let f = GroupFunction::indicator(Arc::clone(&g), &[0, t]).unwrap();
        let s = fourier_transform(&f, &cat).unwrap();
        for (i, irrep) in cat.irreps().iter().enumerate() {
            let oracle =
                (&irrep.matrix(0).adjoint() + &irrep.matrix(t).adjoint()).scale(Complex64::new(1.0 / 6.0, 0.0));
            assert!(s.block(i).max_abs_diff(&oracle) < 1e-15);
        }
        let triv = cat.find("[3]").unwrap();
        let sign = cat.find("[1,1,1]").unwrap();
        let std = cat.find("[2,1]").unwrap();
        assert!((s.block(triv)[(0, 0)].re - 1.0 / 3.0).abs() < 1e-15);
        assert!(s.block(sign)[(0, 0)].norm() < 1e-15);
        let sig = singular_values(s.block(std)).unwrap();
        assert!((sig[0] - 1.0 / 3.0).abs() < 1e-14 && sig[1] < 1e-15);
    }

    #[test]
    fn plancherel_small_cases() {
        let (g, cat) = setup(make_cyclic(4).unwrap());
        let f = GroupFunction::constant(Arc::clone(&g), one());
        let s = fourier_transform(&f, &cat).unwrap();
        assert!(plancherel_residual(&f, &s).unwrap() < 1e-15);

        let (g, cat) = setup(make_cyclic(3).unwrap());
        let f = GroupFunction::delta(g, 0).unwrap();
        let s = fourier_transform(&f, &cat).unwrap();
        assert!((s.weighted_hs_norm_sq() - 1.0 / 3.0).abs() < 1e-15);
        assert!(plancherel_residual(&f, &s).unwrap() < 1e-12);
    }

    #[test]
    fn zero_spectrum_inverts_to_zero() {
        let (_, cat) = setup(make_symmetric(3).unwrap());
        let f = inverse_transform(&Spectrum::zero(cat)).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn support_metric_examples() {
        let (g, cat) = setup(make_cyclic(5).unwrap());
        let f = GroupFunction::delta(Arc::clone(&g), 0).unwrap();
        let m = support_metrics(&f, &fourier_transform(&f, &cat).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((m.rank_sum, m.dsq_sum, m.d1_sum), (5, 5, 5));
        assert!((m.mu_supp - 0.2).abs() < 1e-15);

        let (g, cat) = setup(make_symmetric(3).unwrap());
        let h = subgroup_from_generators(&g, &[permutation_rank(&[1, 0, 2])]).unwrap();
        let f = GroupFunction::subgroup_indicator(&h);
        let m = support_metrics(&f, &fourier_transform(&f, &cat).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert!((m.mu_supp - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!((m.rank_sum, m.dsq_sum, m.d1_sum), (3, 5, 3));

        let f = GroupFunction::constant(Arc::clone(&g), one());
        let m = support_metrics(&f, &fourier_transform(&f, &cat).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert_eq!((m.mu_supp, m.rank_sum), (1.0, 1));

        let f = GroupFunction::zero(g);
        let m = support_metrics(&f, &fourier_transform(&f, &cat).unwrap(), DEFAULT_RANK_TOL).unwrap();
        assert!(m.zero_function);
    }

    #[test]
    fn group_mismatch_is_rejected() {
        let (_, c3) = setup(make_cyclic(3).unwrap());
        let (g4, _) = setup(make_cyclic(4).unwrap());
        let f = GroupFunction::zero(g4);
        assert!(matches!(fourier_transform(&f, &c3), Err(Error::GroupMismatch)));
    }

    #[test]
    fn function_file_round_trip_and_errors() {
        let (g, _) = setup(make_symmetric(3).unwrap());
        let f = GroupFunction::from_fn(Arc::clone(&g), |x| Complex64::new(x as f64, -0.5));
        let text = function_to_json(&f).unwrap();
        assert_eq!(parse_function(&text, &g).unwrap(), f);
        assert_eq!(function_file_group(&text).unwrap().to_string(), "S3");

        let short = r#"{"group_spec":"S3","values":[[1,0]]}"#;
        assert!(matches!(parse_function(short, &g), Err(Error::Parse(_))));
        let other = r#"{"group_spec":"C6","values":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#;
        assert!(matches!(parse_function(other, &g), Err(Error::Parse(_))));
    }

    #[test]
    fn spectrum_file_round_trip() {
        let (g, cat) = setup(make_symmetric(3).unwrap());
        let f = GroupFunction::from_fn(g, |x| Complex64::new(1.0 + x as f64, 0.25 * x as f64));
        let s = fourier_transform(&f, &cat).unwrap();
        let json = serde_json::to_string(&SpectrumFile::from_spectrum(&s, None)).unwrap();
        let back: SpectrumFile = serde_json::from_str(&json).unwrap();
        let back = back.into_spectrum(&cat).unwrap();
        for (a, b) in s.blocks().iter().zip(back.blocks()) {
            assert_eq!(a, b);
        }
    }
}
