//! Time-limiting, band-limiting and translation operators on `L^2(G)`.
//!
//! Operators are materialized in the basis of point masses: the matrix `M`
//! of an operator satisfies `(Op g)(x) = sum_y M[x, y] g(y)`. That basis is a
//! uniform rescaling of an orthonormal basis of `L^2(G)` (each point mass has
//! norm `1/sqrt|G|`), so the Hilbert-Schmidt and operator norms of `M` are
//! the norms of the operator itself.
//!
//! Statements about band-limiters are phrased for operators
//! commuting with *left* translations `(L_x g)(y) = g(x^-1 y)`; these are the
//! band-limiters with [`Side::Left`], which act by `f^(rho) -> R_rho f^(rho)`.
//! [`Side::Right`] gives the mirrored family `f^(rho) -> f^(rho) R_rho`,
//! which commutes with right translations instead.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{
    block_ranks, check_blocks, fourier_transform, inverse_transform, GroupFunction, Spectrum, SpectrumBlockFile,
};
use crate::group::FiniteGroup;
use crate::io::{matrix_from_pairs, matrix_to_pairs, values_from_pairs, values_to_pairs, ComplexPair};
use crate::matrix::{numeric_rank, operator_norm, svd, ComplexMatrix};
use crate::reps::IrrepCatalog;

/// Number of random subsets used by [`commutation_report`].
pub const COMMUTATION_SUBSETS: usize = 64;

/// Which side of `f^(rho)` the band-limiter blocks multiply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

/// A band-limiting operator `R = {R_rho}`.
#[derive(Debug, Clone)]
pub struct BandLimiter {
    catalog: Arc<IrrepCatalog>,
    blocks: Vec<ComplexMatrix>,
    side: Side,
}

impl BandLimiter {
    pub fn new(catalog: Arc<IrrepCatalog>, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        Self::with_side(catalog, blocks, Side::Left)
    }

    pub fn with_side(catalog: Arc<IrrepCatalog>, blocks: Vec<ComplexMatrix>, side: Side) -> Result<Self> {
        check_blocks(&catalog, &blocks)?;
        Ok(BandLimiter { catalog, blocks, side })
    }

    /// `R_rho = 1` for every irrep.
    pub fn identity(catalog: Arc<IrrepCatalog>) -> Self {
        let all: Vec<usize> = (0..catalog.len()).collect();
        Self::onto_irreps(catalog, &all).expect("indices in range")
    }

    pub fn zero(catalog: Arc<IrrepCatalog>) -> Self {
        Self::onto_irreps(catalog, &[]).expect("indices in range")
    }

    /// `R_T`: identity on the irreps in `set`, zero elsewhere.
    pub fn onto_irreps(catalog: Arc<IrrepCatalog>, set: &[usize]) -> Result<Self> {
        if let Some(&bad) = set.iter().find(|&&i| i >= catalog.len()) {
            return Err(Error::InvalidArgument(format!("irrep index {bad} out of range")));
        }
        let blocks = catalog
            .dims()
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                if set.contains(&i) {
                    ComplexMatrix::identity(d)
                } else {
                    ComplexMatrix::zeros(d, d)
                }
            })
            .collect();
        Ok(BandLimiter {
            catalog,
            blocks,
            side: Side::Left,
        })
    }

    /// The isotypic projection `Pi_rho`.
    pub fn isotypic(catalog: Arc<IrrepCatalog>, irrep: usize) -> Result<Self> {
        Self::onto_irreps(catalog, &[irrep])
    }

    pub fn catalog(&self) -> &Arc<IrrepCatalog> {
        &self.catalog
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `||R||_2^2 = sum_rho d_rho ||R_rho||_2^2`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.blocks
            .iter()
            .zip(self.catalog.irreps())
            .map(|(b, r)| r.dim as f64 * b.hs_norm_sq())
            .sum()
    }

    /// Largest idempotence/self-adjointness residual over the blocks.
    pub fn projector_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(ComplexMatrix::projector_residual)
            .fold(0.0, f64::max)
    }

    /// `sum_rho d_rho rank R_rho`, the rank of the operator.
    pub fn rank_sum(&self, rel_tol: f64) -> Result<usize> {
        self.blocks
            .iter()
            .zip(self.catalog.irreps())
            .map(|(b, r)| Ok(r.dim * numeric_rank(b, rel_tol)?))
            .sum()
    }

    /// Applies the blocks to a spectrum on the configured side.
    pub fn act(&self, s: &Spectrum) -> Result<Spectrum> {
        if !s.catalog().same_as(&self.catalog) {
            return Err(Error::GroupMismatch);
        }
        s.map_blocks(|i, b| match self.side {
            Side::Left => &self.blocks[i] * b,
            Side::Right => b * &self.blocks[i],
        })
    }
}

/// Description of an operator that can be materialized.
#[derive(Debug, Clone)]
pub enum OperatorDesc {
    /// Pointwise multiplication `P_m`.
    Time(GroupFunction),
    Band(BandLimiter),
    /// Left translation `L_x`.
    Translate(usize),
    /// Isotypic projection onto the irrep with this index.
    Isotypic(usize),
    /// Product `ops[0] * ops[1] * ...`, so the last operator acts first.
    Compose(Vec<OperatorDesc>),
}

impl OperatorDesc {
    pub fn time_set(group: &Arc<FiniteGroup>, set: &[usize]) -> Result<Self> {
        Ok(OperatorDesc::Time(GroupFunction::indicator(Arc::clone(group), set)?))
    }
}

/// An operator as a `|G| x |G|` matrix in the point-mass basis.
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    group: Arc<FiniteGroup>,
    matrix: ComplexMatrix,
}

impl OperatorMatrix {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn apply(&self, g: &GroupFunction) -> Result<GroupFunction> {
        if g.group().as_ref() != self.group.as_ref() {
            return Err(Error::GroupMismatch);
        }
        let n = self.group.order();
        Ok(GroupFunction::from_fn(Arc::clone(&self.group), |x| {
            (0..n).map(|y| self.matrix[(x, y)] * g.values()[y]).sum()
        }))
    }
}

/// `(P_m g)(x) = m(x) g(x)`.
pub fn apply_time_limiter(m: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if m.group() != g.group() {
        return Err(Error::GroupMismatch);
    }
    Ok(GroupFunction::from_fn(Arc::clone(g.group()), |x| {
        m.values()[x] * g.values()[x]
    }))
}

/// `R g(x) = sum_rho d_rho tr[R_rho g^(rho) rho(x)]` (or `g^(rho) R_rho` for [`Side::Right`]).
pub fn apply_band_limiter(r: &BandLimiter, g: &GroupFunction) -> Result<GroupFunction> {
    let s = fourier_transform(g, &r.catalog)?;
    inverse_transform(&r.act(&s)?)
}

/// Builds the point-mass matrix of an operator description.
pub fn materialize(desc: &OperatorDesc, cat: &Arc<IrrepCatalog>) -> Result<OperatorMatrix> {
    let group = Arc::clone(cat.group());
    let n = group.order();
    let matrix = match desc {
        OperatorDesc::Time(m) => {
            if m.group().as_ref() != group.as_ref() {
                return Err(Error::GroupMismatch);
            }
            ComplexMatrix::from_diagonal(m.values())
        }
        OperatorDesc::Translate(x0) => {
            if *x0 >= n {
                return Err(Error::InvalidArgument(format!("element {x0} out of range")));
            }
            let x0i = group.inv(*x0);
            // (L_{x0} g)(x) = g(x0^-1 x)
            ComplexMatrix::from_fn(n, n, |x, y| {
                if y == group.mul(x0i, x) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        }
        OperatorDesc::Band(r) => {
            if !r.catalog.same_as(cat) {
                return Err(Error::GroupMismatch);
            }
            band_matrix(r)
        }
        OperatorDesc::Isotypic(i) => band_matrix(&BandLimiter::isotypic(Arc::clone(cat), *i)?),
        OperatorDesc::Compose(ops) => {
            let mut acc = ComplexMatrix::identity(n);
            for op in ops {
                acc = &acc * materialize(op, cat)?.matrix();
            }
            acc
        }
    };
    Ok(OperatorMatrix { group, matrix })
}

// Left: M[x,y] = sum_rho (d/|G|) tr[R rho(y^-1 x)]; right: tr[R rho(x y^-1)].
fn band_matrix(r: &BandLimiter) -> ComplexMatrix {
    let group = r.catalog.group();
    let n = group.order();
    let kernel: Vec<Complex64> = (0..n)
        .map(|z| {
            r.blocks
                .iter()
                .zip(r.catalog.irreps())
                .map(|(b, irrep)| (b * irrep.matrix(z)).trace() * (irrep.dim as f64 / n as f64))
                .sum()
        })
        .collect();
    ComplexMatrix::from_fn(n, n, |x, y| {
        let yi = group.inv(y);
        match r.side {
            Side::Left => kernel[group.mul(yi, x)],
            Side::Right => kernel[group.mul(x, yi)],
        }
    })
}

/// Orthogonal projectors onto the column spaces of the Fourier blocks.
///
/// Blocks judged zero under the same rule as [`block_ranks`] give zero
/// projectors.
pub fn image_band_limiter(s: &Spectrum, rel_tol: f64) -> Result<BandLimiter> {
    let ranks = block_ranks(s, rel_tol)?;
    let blocks = s
        .blocks()
        .iter()
        .zip(&ranks)
        .map(|(b, &rank)| {
            let d = b.rows();
            if rank == 0 {
                return Ok(ComplexMatrix::zeros(d, d));
            }
            let u = svd(b)?.u;
            Ok(ComplexMatrix::from_fn(d, d, |i, j| {
                (0..rank).map(|k| u[(i, k)] * u[(j, k)].conj()).sum()
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    BandLimiter::new(Arc::clone(s.catalog()), blocks)
}

/// Commutator residuals, measured in operator norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    /// `max_x ||M L_x - L_x M||`.
    pub left_commutation_residual: f64,
    /// `max_S ||M P_S - P_S M||` over singletons and random subsets.
    pub subset_projection_residual: f64,
    pub subsets_tested: usize,
}

/// Measures how far an operator is from commuting with left translations
/// and with projections onto subsets. Subsets are every singleton plus
/// [`COMMUTATION_SUBSETS`] random subsets drawn from `seed`.
pub fn commutation_report(desc: &OperatorDesc, cat: &Arc<IrrepCatalog>, seed: u64) -> Result<CommutationReport> {
    let m = materialize(desc, cat)?.into_matrix();
    let n = cat.group().order();
    let mut left = 0.0f64;
    for x in 0..n {
        let lx = materialize(&OperatorDesc::Translate(x), cat)?.into_matrix();
        left = left.max(operator_norm(&(&(&m * &lx) - &(&lx * &m)))?);
    }

    // Commutator with a diagonal projection: (M P - P M)[x,y] = M[x,y](p_y - p_x).
    let subset_residual = |mask: &[bool]| {
        let c = ComplexMatrix::from_fn(n, n, |x, y| {
            if mask[x] == mask[y] {
                Complex64::new(0.0, 0.0)
            } else if mask[y] {
                m[(x, y)]
            } else {
                -m[(x, y)]
            }
        });
        operator_norm(&c)
    };
    let mut subset = 0.0f64;
    let mut tested = 0;
    for x in 0..n {
        let mut mask = vec![false; n];
        mask[x] = true;
        subset = subset.max(subset_residual(&mask)?);
        tested += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..COMMUTATION_SUBSETS {
        let mask: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        subset = subset.max(subset_residual(&mask)?);
        tested += 1;
    }
    Ok(CommutationReport {
        left_commutation_residual: left,
        subset_projection_residual: subset,
        subsets_tested: tested,
    })
}

/// Entrywise deviation of `(1/|G|) sum_x L_{x^-1} P_{|f|^2} L_x` from
/// `||f||_2^2 I`, computed from materialized operators.
pub fn averaging_identity_residual(f: &GroupFunction, cat: &Arc<IrrepCatalog>) -> Result<f64> {
    let group = cat.group();
    if f.group().as_ref() != group.as_ref() {
        return Err(Error::GroupMismatch);
    }
    let n = group.order();
    let weight = f.map(|z| Complex64::new(z.norm_sqr(), 0.0));
    let mut acc = ComplexMatrix::zeros(n, n);
    for x in 0..n {
        let term = OperatorDesc::Compose(vec![
            OperatorDesc::Translate(group.inv(x)),
            OperatorDesc::Time(weight.clone()),
            OperatorDesc::Translate(x),
        ]);
        acc = &acc + materialize(&term, cat)?.matrix();
    }
    let avg = acc.scale(Complex64::new(1.0 / n as f64, 0.0));
    let target = ComplexMatrix::identity(n).scale(Complex64::new(f.l2_norm_sq(), 0.0));
    Ok(avg.max_abs_diff(&target))
}

/// JSON form of an operator description.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OperatorFile {
    Time {
        values: Vec<ComplexPair>,
    },
    Band {
        blocks: Vec<SpectrumBlockFile>,
        #[serde(default)]
        side: Side,
    },
    Translate {
        element: usize,
    },
    Isotypic {
        irrep: usize,
    },
    Compose {
        ops: Vec<OperatorFile>,
    },
}

impl OperatorFile {
    pub fn from_desc(desc: &OperatorDesc) -> Self {
        match desc {
            OperatorDesc::Time(m) => OperatorFile::Time {
                values: values_to_pairs(m.values()),
            },
            OperatorDesc::Band(r) => OperatorFile::Band {
                blocks: r
                    .blocks
                    .iter()
                    .zip(r.catalog.irreps())
                    .map(|(b, irrep)| SpectrumBlockFile {
                        name: irrep.name.clone(),
                        dim: irrep.dim,
                        matrix: matrix_to_pairs(b),
                    })
                    .collect(),
                side: r.side,
            },
            OperatorDesc::Translate(x) => OperatorFile::Translate { element: *x },
            OperatorDesc::Isotypic(i) => OperatorFile::Isotypic { irrep: *i },
            OperatorDesc::Compose(ops) => OperatorFile::Compose {
                ops: ops.iter().map(Self::from_desc).collect(),
            },
        }
    }

    pub fn into_desc(self, cat: &Arc<IrrepCatalog>) -> Result<OperatorDesc> {
        Ok(match self {
            OperatorFile::Time { values } => OperatorDesc::Time(GroupFunction::new(
                Arc::clone(cat.group()),
                values_from_pairs(&values)?,
            )?),
            OperatorFile::Band { blocks, side } => {
                if blocks.len() != cat.len() {
                    return Err(Error::Parse(format!(
                        "{} band blocks for {} irreps",
                        blocks.len(),
                        cat.len()
                    )));
                }
                let mats = blocks
                    .iter()
                    .map(|b| matrix_from_pairs(b.dim, b.dim, &b.matrix))
                    .collect::<Result<Vec<_>>>()?;
                OperatorDesc::Band(BandLimiter::with_side(Arc::clone(cat), mats, side)?)
            }
            OperatorFile::Translate { element } => OperatorDesc::Translate(element),
            OperatorFile::Isotypic { irrep } => OperatorDesc::Isotypic(irrep),
            OperatorFile::Compose { ops } => {
                OperatorDesc::Compose(ops.into_iter().map(|o| o.into_desc(cat)).collect::<Result<_>>()?)
            }
        })
    }
}
