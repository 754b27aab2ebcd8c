//! Catalogs of unitary irreducible representations.
//!
//! Built-in families:
//!
//! * cyclic `C<n>`: characters `x -> exp(2 pi i k x / n)`, `k = 0..n`;
//! * dihedral `D<n>`: the one-dimensional irreps (two for odd `n`, four for
//!   even `n`) followed by the two-dimensional rotation/reflection blocks;
//! * symmetric `S<n>`: Young's orthogonal form, one irrep per partition in
//!   decreasing lexicographic order (so the trivial irrep comes first and
//!   the sign irrep last);
//! * products: every tensor product of factor irreps, left factor major.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec};
use crate::io::{matrix_from_pairs, matrix_to_pairs, ComplexPair};
use crate::matrix::ComplexMatrix;

/// Tolerance for identities of exactly constructed matrices.
pub const ALGEBRAIC_TOL: f64 = 1e-10;
/// Tolerance for sums over the whole group.
pub const ACCUMULATED_TOL: f64 = 1e-9;
/// Groups up to this order get an exhaustive homomorphism check.
pub const EXHAUSTIVE_HOMOMORPHISM_ORDER: usize = 256;
const RANDOM_HOMOMORPHISM_PAIRS: usize = 10_000;
const HOMOMORPHISM_SEED: u64 = 0x4e0_a0e5;

/// A unitary irreducible representation, one matrix per group element.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<ComplexMatrix>,
}

impl Irrep {
    pub fn matrix(&self, x: usize) -> &ComplexMatrix {
        &self.matrices[x]
    }

    pub fn character(&self, x: usize) -> Complex64 {
        self.matrices[x].trace()
    }
}

/// A complete list of pairwise inequivalent irreps of a group.
#[derive(Debug, Clone)]
pub struct IrrepCatalog {
    group: Arc<FiniteGroup>,
    irreps: Vec<Irrep>,
}

impl IrrepCatalog {
    /// Wraps irreps without verifying them; see [`verify_catalog`].
    pub fn new(group: Arc<FiniteGroup>, irreps: Vec<Irrep>) -> Result<Self> {
        for irrep in &irreps {
            if irrep.matrices.len() != group.order() {
                return Err(Error::DimensionMismatch(format!(
                    "irrep {} has {} matrices for a group of order {}",
                    irrep.name,
                    irrep.matrices.len(),
                    group.order()
                )));
            }
            if irrep.dim == 0
                || irrep
                    .matrices
                    .iter()
                    .any(|m| m.rows() != irrep.dim || m.cols() != irrep.dim)
            {
                return Err(Error::DimensionMismatch(format!(
                    "irrep {} has matrices of the wrong size",
                    irrep.name
                )));
            }
        }
        Ok(IrrepCatalog { group, irreps })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    /// Index of the irrep with the given name.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.irreps.iter().position(|r| r.name == name)
    }

    /// Index of the trivial irrep, if present.
    pub fn trivial_index(&self) -> Option<usize> {
        self.irreps
            .iter()
            .position(|r| r.dim == 1 && r.matrices.iter().all(|m| (m[(0, 0)] - 1.0).norm() < ALGEBRAIC_TOL))
    }

    /// Catalogs are the same if they describe the same group with the same irreps.
    pub fn same_as(&self, other: &IrrepCatalog) -> bool {
        std::ptr::eq(self, other) || (self.group == other.group && self.irreps == other.irreps)
    }
}

/// Irreps of a group built by one of the supported constructors.
pub fn irreps(group: &Arc<FiniteGroup>) -> Result<IrrepCatalog> {
    let spec = group
        .spec()
        .ok_or_else(|| Error::UnsupportedGroup(format!("{} has no known constructor", group.label())))?;
    let irreps = irreps_for_spec(spec)?;
    IrrepCatalog::new(Arc::clone(group), irreps)
}

fn irreps_for_spec(spec: &GroupSpec) -> Result<Vec<Irrep>> {
    Ok(match spec {
        GroupSpec::Cyclic(n) => cyclic_irreps(*n),
        GroupSpec::Dihedral(n) => dihedral_irreps(*n),
        GroupSpec::Symmetric(n) => {
            let group = spec.build()?;
            symmetric_irreps(&group, *n)
        }
        GroupSpec::Product(a, b) => {
            let left = irreps_for_spec(a)?;
            let right = irreps_for_spec(b)?;
            let n2 = b.order();
            let order = a.order() * n2;
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    let matrices = (0..order)
                        .map(|x| l.matrices[x / n2].kron(&r.matrices[x % n2]))
                        .collect();
                    out.push(Irrep {
                        name: format!("{}*{}", l.name, r.name),
                        dim: l.dim * r.dim,
                        matrices,
                    });
                }
            }
            out
        }
    })
}

fn scalar(z: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_vec(1, 1, vec![z]).expect("1x1")
}

fn cyclic_irreps(n: usize) -> Vec<Irrep> {
    (0..n)
        .map(|k| Irrep {
            name: format!("chi{k}"),
            dim: 1,
            matrices: (0..n)
                .map(|x| {
                    let angle = 2.0 * PI * ((k * x) % n) as f64 / n as f64;
                    scalar(Complex64::from_polar(1.0, angle))
                })
                .collect(),
        })
        .collect()
}

fn dihedral_irreps(n: usize) -> Vec<Irrep> {
    let order = 2 * n;
    let one_dim = |name: &str, r_sign: f64, s_sign: f64| Irrep {
        name: name.to_string(),
        dim: 1,
        matrices: (0..order)
            .map(|x| {
                let (j, k) = (x / n, x % n);
                let v = s_sign.powi(j as i32) * r_sign.powi(k as i32);
                scalar(Complex64::new(v, 0.0))
            })
            .collect(),
    };
    let mut out = vec![one_dim("trivial", 1.0, 1.0), one_dim("sign", 1.0, -1.0)];
    if n.is_multiple_of(2) {
        out.push(one_dim("alt_r", -1.0, 1.0));
        out.push(one_dim("alt_rs", -1.0, -1.0));
    }
    for h in 1..=(n - 1) / 2 {
        let matrices = (0..order)
            .map(|x| {
                let (j, k) = (x / n, x % n);
                let theta = 2.0 * PI * ((h * k) % n) as f64 / n as f64;
                let (s, c) = theta.sin_cos();
                // rho(s^j r^k) = rho(s)^j rho(r)^k with rho(s) = diag(1, -1)
                let flip = if j == 1 { -1.0 } else { 1.0 };
                ComplexMatrix::from_vec(
                    2,
                    2,
                    vec![
                        Complex64::new(c, 0.0),
                        Complex64::new(-s, 0.0),
                        Complex64::new(flip * s, 0.0),
                        Complex64::new(flip * c, 0.0),
                    ],
                )
                .expect("2x2")
            })
            .collect();
        out.push(Irrep {
            name: format!("rot{h}"),
            dim: 2,
            matrices,
        });
    }
    out
}

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Standard Young tableaux of a shape; entry `t[v] = (row, col)` locates value `v`.
pub fn standard_tableaux(shape: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        shape: &[usize],
        filled: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n: usize = shape.iter().sum();
        if cells.len() == n {
            out.push(cells.clone());
            return;
        }
        for row in 0..shape.len() {
            let col = filled[row];
            if col < shape[row] && (row == 0 || filled[row - 1] > col) {
                filled[row] += 1;
                cells.push((row, col));
                rec(shape, filled, cells, out);
                cells.pop();
                filled[row] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// Young's orthogonal form of the adjacent transposition swapping `k`, `k+1`.
fn young_generator(tableaux: &[Vec<(usize, usize)>], k: usize) -> ComplexMatrix {
    let dim = tableaux.len();
    let content = |cell: (usize, usize)| cell.1 as f64 - cell.0 as f64;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (i, t) in tableaux.iter().enumerate() {
        let r = content(t[k + 1]) - content(t[k]);
        m[(i, i)] = Complex64::new(1.0 / r, 0.0);
        if r.abs() > 1.0 {
            let mut swapped = t.clone();
            swapped.swap(k, k + 1);
            let j = tableaux.iter().position(|u| *u == swapped).expect("swap is standard");
            m[(j, i)] = Complex64::new((1.0 - 1.0 / (r * r)).sqrt(), 0.0);
        }
    }
    m
}

fn partition_name(shape: &[usize]) -> String {
    let parts: Vec<String> = shape.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn symmetric_irreps(group: &FiniteGroup, n: usize) -> Vec<Irrep> {
    // Adjacent transpositions in one-line notation.
    let generators: Vec<usize> = (0..n.saturating_sub(1))
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(k, k + 1);
            crate::group::permutation_rank(&p)
        })
        .collect();
    partitions(n)
        .into_iter()
        .map(|shape| {
            let tableaux = standard_tableaux(&shape);
            let gen_mats: Vec<ComplexMatrix> = (0..generators.len()).map(|k| young_generator(&tableaux, k)).collect();
            let matrices = extend_from_generators(group, &generators, &gen_mats, tableaux.len());
            Irrep {
                name: partition_name(&shape),
                dim: tableaux.len(),
                matrices,
            }
        })
        .collect()
}

/// Extends generator images to the whole group by breadth-first search over
/// the Cayley graph, using `rho(g x) = rho(g) rho(x)`.
fn extend_from_generators(
    group: &FiniteGroup,
    generators: &[usize],
    images: &[ComplexMatrix],
    dim: usize,
) -> Vec<ComplexMatrix> {
    let mut out: Vec<Option<ComplexMatrix>> = vec![None; group.order()];
    out[group.identity()] = Some(ComplexMatrix::identity(dim));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (g, img) in generators.iter().zip(images) {
            let y = group.mul(*g, x);
            if out[y].is_none() {
                out[y] = Some(img * out[x].as_ref().expect("visited"));
                queue.push_back(y);
            }
        }
    }
    out.into_iter()
        .map(|m| m.expect("generators generate the group"))
        .collect()
}

/// Per-irrep residuals.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IrrepCheck {
    pub name: String,
    pub dim: usize,
    pub identity_residual: f64,
    pub homomorphism_residual: f64,
    pub unitarity_residual: f64,
    /// `|(1/|G|) sum |tr rho(x)|^2 - 1|`.
    pub irreducibility_residual: f64,
    pub passed: bool,
}

/// Result of [`verify_catalog`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub irreps: Vec<IrrepCheck>,
    pub dim_square_sum: usize,
    pub complete: bool,
    /// Largest `|<chi_i, chi_j>|` over distinct pairs.
    pub max_cross_character_product: f64,
    pub inequivalent: bool,
    pub passed: bool,
}

/// Checks unitarity, the homomorphism property, irreducibility,
/// completeness and pairwise inequivalence.
pub fn verify_catalog(group: &FiniteGroup, cat: &IrrepCatalog) -> Result<VerificationReport> {
    let n = group.order();
    if cat.group.as_ref() != group {
        return Err(Error::GroupMismatch);
    }
    for irrep in &cat.irreps {
        if irrep.matrices.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "irrep {} has {} matrices, expected {n}",
                irrep.name,
                irrep.matrices.len()
            )));
        }
    }
    let pairs: Vec<(usize, usize)> = if n <= EXHAUSTIVE_HOMOMORPHISM_ORDER {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(HOMOMORPHISM_SEED);
        (0..RANDOM_HOMOMORPHISM_PAIRS)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect()
    };

    let characters: Vec<Vec<Complex64>> = cat
        .irreps
        .iter()
        .map(|r| (0..n).map(|x| r.character(x)).collect())
        .collect();

    let mut checks = Vec::with_capacity(cat.len());
    for (irrep, chars) in cat.irreps.iter().zip(&characters) {
        let identity_residual = irrep.matrices[group.identity()].max_abs_diff(&ComplexMatrix::identity(irrep.dim));
        let homomorphism_residual = pairs
            .iter()
            .map(|&(x, y)| (&irrep.matrices[x] * &irrep.matrices[y]).max_abs_diff(&irrep.matrices[group.mul(x, y)]))
            .fold(0.0, f64::max);
        let unitarity_residual = irrep
            .matrices
            .iter()
            .map(ComplexMatrix::unitarity_residual)
            .fold(0.0, f64::max);
        let norm: f64 = chars.iter().map(Complex64::norm_sqr).sum::<f64>() / n as f64;
        let irreducibility_residual = (norm - 1.0).abs();
        let passed = identity_residual < ALGEBRAIC_TOL
            && homomorphism_residual < ALGEBRAIC_TOL
            && unitarity_residual < ALGEBRAIC_TOL
            && irreducibility_residual < ACCUMULATED_TOL;
        checks.push(IrrepCheck {
            name: irrep.name.clone(),
            dim: irrep.dim,
            identity_residual,
            homomorphism_residual,
            unitarity_residual,
            irreducibility_residual,
            passed,
        });
    }

    let dim_square_sum: usize = cat.irreps.iter().map(|r| r.dim * r.dim).sum();
    let complete = dim_square_sum == n;
    let mut max_cross = 0.0f64;
    for i in 0..characters.len() {
        for j in i + 1..characters.len() {
            let ip: Complex64 = characters[i]
                .iter()
                .zip(&characters[j])
                .map(|(a, b)| a * b.conj())
                .sum::<Complex64>()
                / n as f64;
            max_cross = max_cross.max(ip.norm());
        }
    }
    let inequivalent = max_cross < ACCUMULATED_TOL;
    let passed = complete && inequivalent && checks.iter().all(|c| c.passed);
    Ok(VerificationReport {
        group: group.label().to_string(),
        order: n,
        irreps: checks,
        dim_square_sum,
        complete,
        max_cross_character_product: max_cross,
        inequivalent,
        passed,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct IrrepFile {
    name: String,
    dim: usize,
    matrices: Vec<Vec<ComplexPair>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogFile {
    group_spec: String,
    order: usize,
    count: usize,
    irreps: Vec<IrrepFile>,
}

/// Serializes a catalog to the JSON catalog format.
pub fn catalog_to_json(cat: &IrrepCatalog) -> Result<String> {
    let file = CatalogFile {
        group_spec: cat.group.label().to_string(),
        order: cat.group.order(),
        count: cat.len(),
        irreps: cat
            .irreps
            .iter()
            .map(|r| IrrepFile {
                name: r.name.clone(),
                dim: r.dim,
                matrices: r.matrices.iter().map(matrix_to_pairs).collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Parses a catalog for `group`; structural problems are [`Error::Parse`].
pub fn parse_catalog(text: &str, group: &Arc<FiniteGroup>) -> Result<IrrepCatalog> {
    let file: CatalogFile = serde_json::from_str(text)?;
    if file.order != group.order() {
        return Err(Error::Parse(format!(
            "catalog is for order {}, group has order {}",
            file.order,
            group.order()
        )));
    }
    if file.count != file.irreps.len() {
        return Err(Error::Parse(format!(
            "header count {} but {} irreps listed",
            file.count,
            file.irreps.len()
        )));
    }
    let mut irreps = Vec::with_capacity(file.irreps.len());
    for r in file.irreps {
        if r.matrices.len() != group.order() {
            return Err(Error::Parse(format!(
                "irrep {} lists {} matrices, expected {}",
                r.name,
                r.matrices.len(),
                group.order()
            )));
        }
        let matrices = r
            .matrices
            .iter()
            .map(|m| matrix_from_pairs(r.dim, r.dim, m))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse(format!("irrep {}: {e}", r.name)))?;
        irreps.push(Irrep {
            name: r.name,
            dim: r.dim,
            matrices,
        });
    }
    IrrepCatalog::new(Arc::clone(group), irreps).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads a catalog file and rejects it unless [`verify_catalog`] passes.
pub fn load_catalog(path: impl AsRef<Path>, group: &Arc<FiniteGroup>) -> Result<IrrepCatalog> {
    let text = fs::read_to_string(path)?;
    let cat = parse_catalog(&text, group)?;
    let report = verify_catalog(group, &cat)?;
    if !report.passed {
        let failing: Vec<&str> = report
            .irreps
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(Error::Verification(format!(
            "complete={}, inequivalent={}, failing irreps={failing:?}",
            report.complete, report.inequivalent
        )));
    }
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_symmetric};

    fn catalog(g: FiniteGroup) -> (Arc<FiniteGroup>, IrrepCatalog) {
        let g = Arc::new(g);
        let cat = irreps(&g).unwrap();
        (g, cat)
    }

    fn sorted_dims(cat: &IrrepCatalog) -> Vec<usize> {
        let mut d = cat.dims();
        d.sort();
        d
    }

    #[test]
    fn dimension_multisets() {
        let (_, c4) = catalog(make_cyclic(4).unwrap());
        assert_eq!(c4.dims(), vec![1; 4]);
        let (_, s3) = catalog(make_symmetric(3).unwrap());
        assert_eq!(sorted_dims(&s3), vec![1, 1, 2]);
        let (_, d4) = catalog(make_dihedral(4).unwrap());
        assert_eq!(sorted_dims(&d4), vec![1, 1, 1, 1, 2]);
        let (_, s4) = catalog(make_symmetric(4).unwrap());
        assert_eq!(sorted_dims(&s4), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn partitions_and_tableaux() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        // Hook length formula: f^(3,2) = 5.
        assert_eq!(standard_tableaux(&[3, 2]).len(), 5);
        assert_eq!(standard_tableaux(&[3, 2, 1]).len(), 16);
    }

    #[test]
    fn builtin_catalogs_verify() {
        for spec in [
            "C1", "C5", "D1", "D3", "D4", "D6", "S1", "S2", "S3", "S4", "C2xS3", "D3xC2",
        ] {
            let g = Arc::new(spec.parse::<GroupSpec>().unwrap().build().unwrap());
            let cat = irreps(&g).unwrap();
            let report = verify_catalog(&g, &cat).unwrap();
            assert!(report.passed, "{spec}: {report:?}");
            assert_eq!(report.dim_square_sum, g.order());
        }
    }

    #[test]
    fn s3_names_and_trivial() {
        let (_, s3) = catalog(make_symmetric(3).unwrap());
        assert_eq!(s3.find("[3]"), Some(0));
        assert_eq!(s3.find("[2,1]"), Some(1));
        assert_eq!(s3.find("[1,1,1]"), Some(2));
        assert_eq!(s3.trivial_index(), Some(0));
    }

    #[test]
    fn duplicated_irrep_fails_inequivalence() {
        let (g, cat) = catalog(make_symmetric(3).unwrap());
        let mut list = cat.irreps().to_vec();
        list.push(list[2].clone());
        let bad = IrrepCatalog::new(Arc::clone(&g), list).unwrap();
        let report = verify_catalog(&g, &bad).unwrap();
        assert!(!report.inequivalent);
        assert!((report.max_cross_character_product - 1.0).abs() < 1e-12);
        assert!(!report.passed);
    }

    #[test]
    fn missing_irrep_fails_completeness() {
        let (g, cat) = catalog(make_cyclic(3).unwrap());
        let bad = IrrepCatalog::new(Arc::clone(&g), cat.irreps()[..2].to_vec()).unwrap();
        let report = verify_catalog(&g, &bad).unwrap();
        assert_eq!(report.dim_square_sum, 2);
        assert!(!report.complete && !report.passed);
    }

    #[test]
    fn json_round_trip() {
        let (g, cat) = catalog(make_cyclic(2).unwrap());
        let text = catalog_to_json(&cat).unwrap();
        let back = parse_catalog(&text, &g).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back.same_as(&cat));
    }

    #[test]
    fn load_rejects_bad_files() {
        let dir = tempfile::tempdir().unwrap();
        let (g, cat) = catalog(make_cyclic(2).unwrap());

        let good = dir.path().join("good.json");
        fs::write(&good, catalog_to_json(&cat).unwrap()).unwrap();
        assert_eq!(load_catalog(&good, &g).unwrap().len(), 2);

        let mut value: serde_json::Value = serde_json::from_str(&catalog_to_json(&cat).unwrap()).unwrap();
        value["irreps"][1]["matrices"][1][0] = serde_json::json!([2.0, 0.0]);
        let nonunitary = dir.path().join("nonunitary.json");
        fs::write(&nonunitary, value.to_string()).unwrap();
        assert!(matches!(load_catalog(&nonunitary, &g), Err(Error::Verification(_))));

        let mut value: serde_json::Value = serde_json::from_str(&catalog_to_json(&cat).unwrap()).unwrap();
        value["irreps"][0]["matrices"].as_array_mut().unwrap().pop();
        let short = dir.path().join("short.json");
        fs::write(&short, value.to_string()).unwrap();
        assert!(matches!(load_catalog(&short, &g), Err(Error::Parse(_))));

        let garbage = dir.path().join("garbage.json");
        fs::write(&garbage, "{not json").unwrap();
        assert!(matches!(load_catalog(&garbage, &g), Err(Error::Parse(_))));
    }

    #[test]
    fn unsupported_group() {
        let table: Vec<usize> = (0..3).flat_map(|x| (0..3).map(move |y| (x + y) % 3)).collect();
        let g = Arc::new(FiniteGroup::from_table(3, table, "custom").unwrap());
        assert!(matches!(irreps(&g), Err(Error::UnsupportedGroup(_))));
    }
}
