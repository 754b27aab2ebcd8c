//! Checkers for the operator and function uncertainty principles.
//!
//! Every checker returns an [`UncertaintyReport`]: the computed quantities,
//! a residual (equalities) or a slack `bound - value` (inequalities), and a
//! verdict. Equalities pass when the residual is within tolerance,
//! inequalities when `slack >= -tolerance`. The zero function is reported
//! as [`Verdict::Flagged`], never as a failure.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, inverse_at, support_metrics, GroupFunction};
use crate::group::{is_normal, Subgroup};
use crate::matrix::{norms, numeric_rank, DEFAULT_RANK_TOL};
use crate::operators::{materialize, BandLimiter, OperatorDesc};
use crate::reps::IrrepCatalog;

/// Default verdict tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest projector residual accepted for blocks that must be projections.
pub const PROJECTOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No verdict: the hypothesis of the statement does not hold (zero input).
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub check: String,
    pub quantities: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

type Quantities = BTreeMap<String, f64>;

fn quantities<const N: usize>(items: [(&str, f64); N]) -> Quantities {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl UncertaintyReport {
    pub fn equality(check: &str, residual: f64, tolerance: f64, quantities: Quantities) -> Self {
        let verdict = if residual.abs() <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        UncertaintyReport {
            check: check.to_string(),
            quantities,
            residual: Some(residual),
            slack: None,
            tolerance,
            verdict,
            note: None,
        }
    }

    pub fn inequality(check: &str, slack: f64, tolerance: f64, quantities: Quantities) -> Self {
        let verdict = if slack >= -tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        UncertaintyReport {
            check: check.to_string(),
            quantities,
            residual: None,
            slack: Some(slack),
            tolerance,
            verdict,
            note: None,
        }
    }

    pub fn flagged(check: &str, tolerance: f64, note: &str) -> Self {
        UncertaintyReport {
            check: check.to_string(),
            quantities: Quantities::new(),
            residual: None,
            slack: None,
            tolerance,
            verdict: Verdict::Flagged,
            note: Some(note.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// A named quantity; panics if absent.
    pub fn get(&self, key: &str) -> f64 {
        *self
            .quantities
            .get(key)
            .unwrap_or_else(|| panic!("no quantity {key:?} in {}", self.check))
    }

    fn and_require(mut self, ok: bool, why: &str) -> Self {
        if !ok && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
            self.note = Some(why.to_string());
        }
        self
    }
}

fn check_pair(f: &GroupFunction, r: &BandLimiter) -> Result<()> {
    if f.group().as_ref() != r.catalog().group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

fn time_band(f: &GroupFunction, r: &BandLimiter) -> Result<crate::matrix::ComplexMatrix> {
    let desc = OperatorDesc::Compose(vec![OperatorDesc::Time(f.clone()), OperatorDesc::Band(r.clone())]);
    Ok(materialize(&desc, r.catalog())?.into_matrix())
}

/// `||P_f R||_2^2 = ||f||_2^2 sum_rho d_rho ||R_rho||_2^2`, with the left
/// side computed from the materialized operator.
pub fn theorem1_check(f: &GroupFunction, r: &BandLimiter, tol: f64) -> Result<UncertaintyReport> {
    check_pair(f, r)?;
    let lhs = time_band(f, r)?.hs_norm_sq();
    let rhs = f.l2_norm_sq() * r.hs_norm_sq();
    let residual = (lhs - rhs).abs() / rhs.max(1.0);
    Ok(UncertaintyReport::equality(
        "theorem1",
        residual,
        tol,
        quantities([("lhs", lhs), ("rhs", rhs)]),
    ))
}

/// `||P_f R|| <= ||f||_2 ||R||_2`.
pub fn main_bound_check(f: &GroupFunction, r: &BandLimiter, tol: f64) -> Result<UncertaintyReport> {
    check_pair(f, r)?;
    let n = norms(&time_band(f, r)?)?;
    let bound = f.l2_norm() * r.hs_norm_sq().sqrt();
    Ok(UncertaintyReport::inequality(
        "main_bound",
        bound - n.op,
        tol,
        quantities([("value", n.op), ("bound", bound), ("hs", n.hs)]),
    )
    .and_require(n.op <= n.hs + tol, "operator norm exceeds Hilbert-Schmidt norm"))
}

/// `mu(supp f) * sum_rho d_rho rank f^(rho) >= 1`, reported alongside the
/// weaker products that count `d_rho^2` or `d_rho` per supported irrep.
pub fn support_rank_check(
    f: &GroupFunction,
    cat: &Arc<IrrepCatalog>,
    rel_tol: f64,
    tol: f64,
) -> Result<UncertaintyReport> {
    let s = fourier_transform(f, cat)?;
    let m = support_metrics(f, &s, rel_tol)?;
    if m.zero_function {
        return Ok(UncertaintyReport::flagged("support_rank", tol, "zero function"));
    }
    let rank_product = m.rank_product();
    Ok(UncertaintyReport::inequality(
        "support_rank",
        rank_product - 1.0,
        tol,
        quantities([
            ("mu_supp", m.mu_supp),
            ("rank_sum", m.rank_sum as f64),
            ("dsq_sum", m.dsq_sum as f64),
            ("d1_sum", m.d1_sum as f64),
            ("rank_product", rank_product),
            ("matolcsi_product", m.matolcsi_product()),
            ("kutyniok_product", m.kutyniok_product()),
        ]),
    ))
}

fn check_subset(n: usize, s: &[usize]) -> Result<()> {
    match s.iter().find(|&&x| x >= n) {
        Some(bad) => Err(Error::InvalidArgument(format!("element {bad} out of range"))),
        None => Ok(()),
    }
}

/// `||P_S R_T||^2 <= |S| sum_{rho in T} d_rho^2 / |G|`.
pub fn corollary_check(cat: &Arc<IrrepCatalog>, s: &[usize], t: &[usize], tol: f64) -> Result<UncertaintyReport> {
    let group = cat.group();
    check_subset(group.order(), s)?;
    let r = BandLimiter::onto_irreps(Arc::clone(cat), t)?;
    let p = GroupFunction::indicator(Arc::clone(group), s)?;
    let value = norms(&time_band(&p, &r)?)?.op.powi(2);
    let dims = cat.dims();
    let mut t_sorted = t.to_vec();
    t_sorted.sort_unstable();
    t_sorted.dedup();
    let s_size = p.support().len() as f64;
    let dsq: usize = t_sorted.iter().map(|&i| dims[i] * dims[i]).sum();
    let bound = s_size * dsq as f64 / group.order() as f64;
    Ok(UncertaintyReport::inequality(
        "corollary2",
        bound - value,
        tol,
        quantities([
            ("value", value),
            ("bound", bound),
            ("s_size", s_size),
            ("t_dsq", dsq as f64),
        ]),
    ))
}

/// `||P_S R||^2 <= rank P_S rank R / |G|` for a band-limiter whose blocks
/// are orthogonal projections.
pub fn corollary1_check(
    cat: &Arc<IrrepCatalog>,
    s: &[usize],
    r: &BandLimiter,
    rel_tol: f64,
    tol: f64,
) -> Result<UncertaintyReport> {
    let group = cat.group();
    check_subset(group.order(), s)?;
    if !r.catalog().same_as(cat) {
        return Err(Error::GroupMismatch);
    }
    let residual = r.projector_residual();
    if residual > PROJECTOR_TOL {
        return Err(Error::InvalidArgument(format!(
            "band-limiter blocks are not projections (residual {residual:.3e})"
        )));
    }
    let p = GroupFunction::indicator(Arc::clone(group), s)?;
    let m = time_band(&p, r)?;
    let n = norms(&m)?;
    let value = n.op.powi(2);
    let rank_p = p.support().len() as f64;
    let rank_r = r.rank_sum(rel_tol)? as f64;
    let bound = rank_p * rank_r / group.order() as f64;
    Ok(UncertaintyReport::inequality(
        "corollary1",
        bound - value,
        tol,
        quantities([
            ("value", value),
            ("bound", bound),
            ("rank_p", rank_p),
            ("rank_r", rank_r),
            ("hs_sq", n.hs * n.hs),
        ]),
    ))
}

/// `sum_x tr(R1 rho1(x)) conj(tr(R2 rho2(x)))` against its closed form: zero
/// for distinct irreps, `rank R * |G| / d_rho` when both sides use the same
/// irrep and projector. For the same irrep with different projectors the
/// expected value is `|G|/d_rho * tr(R1 R2^dagger)`.
pub fn trace_orthogonality_check(
    cat: &Arc<IrrepCatalog>,
    i1: usize,
    i2: usize,
    r1: &crate::matrix::ComplexMatrix,
    r2: &crate::matrix::ComplexMatrix,
    tol: f64,
) -> Result<UncertaintyReport> {
    let irreps = cat.irreps();
    let (rho1, rho2) = match (irreps.get(i1), irreps.get(i2)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidArgument("irrep index out of range".into())),
    };
    for (r, rho) in [(r1, rho1), (r2, rho2)] {
        if r.rows() != rho.dim || r.cols() != rho.dim {
            return Err(Error::DimensionMismatch(format!(
                "block for {} has the wrong size",
                rho.name
            )));
        }
        if r.projector_residual() > PROJECTOR_TOL {
            return Err(Error::InvalidArgument(format!(
                "block for {} is not a projection",
                rho.name
            )));
        }
    }
    let n = cat.group().order();
    let value: Complex64 = (0..n)
        .map(|x| (r1 * rho1.matrix(x)).trace() * (r2 * rho2.matrix(x)).trace().conj())
        .sum();
    let rank1 = numeric_rank(r1, DEFAULT_RANK_TOL)? as f64;
    let (expected, residual, allowed) = if i1 != i2 {
        (Complex64::new(0.0, 0.0), value.norm(), tol * n as f64)
    } else {
        let expected = (r1 * &r2.adjoint()).trace() * (n as f64 / rho1.dim as f64);
        let residual = (value - expected).norm() / expected.norm().max(1.0);
        (expected, residual, tol)
    };
    let mut report = UncertaintyReport::equality(
        "trace_orthogonality",
        residual,
        allowed,
        quantities([
            ("irrep1", i1 as f64),
            ("irrep2", i2 as f64),
            ("value_re", value.re),
            ("value_im", value.im),
            ("expected_re", expected.re),
            ("expected_im", expected.im),
            ("rank1", rank1),
            ("rank_formula", rank1 * n as f64 / rho1.dim as f64),
        ]),
    );
    report.tolerance = allowed;
    Ok(report)
}

/// Fourier-side profile of a subgroup indicator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupProfile {
    pub members: Vec<usize>,
    pub size: usize,
    pub normal: bool,
    /// `rank chi_H^(rho)` per irrep.
    pub ranks: Vec<usize>,
    /// Every rank is either `d_rho` or zero.
    pub all_full_or_zero: bool,
    pub rank_product: f64,
    pub matolcsi_product: f64,
    pub report: UncertaintyReport,
}

/// Tightness of the support-rank principle for `chi_H`, and the
/// full-or-zero rank pattern compared against normality.
pub fn subgroup_profile(h: &Subgroup, cat: &Arc<IrrepCatalog>, rel_tol: f64, tol: f64) -> Result<SubgroupProfile> {
    let group = cat.group();
    if h.parent().as_ref() != group.as_ref() {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let f = GroupFunction::subgroup_indicator(h);
    let s = fourier_transform(&f, cat)?;
    let m = support_metrics(&f, &s, rel_tol)?;
    let dims = cat.dims();
    let all_full_or_zero = m.block_ranks.iter().zip(&dims).all(|(&r, &d)| r == 0 || r == d);
    let normal = is_normal(group, h)?;
    let rank_product = m.rank_product();
    let matolcsi_product = m.matolcsi_product();
    let report = UncertaintyReport::equality(
        "subgroup_profile",
        rank_product - 1.0,
        tol,
        quantities([
            ("size", h.order() as f64),
            ("normal", normal as u8 as f64),
            ("all_full_or_zero", all_full_or_zero as u8 as f64),
            ("rank_product", rank_product),
            ("matolcsi_product", matolcsi_product),
        ]),
    )
    .and_require(
        all_full_or_zero == normal,
        "full-or-zero rank pattern disagrees with normality",
    );
    Ok(SubgroupProfile {
        members: h.members().to_vec(),
        size: h.order(),
        normal,
        ranks: m.block_ranks,
        all_full_or_zero,
        rank_product,
        matolcsi_product,
        report,
    })
}

/// The two links of the elementary proof of the support-rank principle:
///
/// 1. `||f||_2^2 <= mu(supp f) ||f||_inf^2`;
/// 2. `|f(s)|^2 <= (sum d_rho rank f^(rho)) * sum d_rho ||f^(rho)||_2^2`,
///    with `f(s)` recomputed by the inversion formula at a maximizer `s`.
pub fn cauchy_schwarz_chain_check(
    f: &GroupFunction,
    cat: &Arc<IrrepCatalog>,
    rel_tol: f64,
    tol: f64,
) -> Result<UncertaintyReport> {
    let s = fourier_transform(f, cat)?;
    let m = support_metrics(f, &s, rel_tol)?;
    if m.zero_function {
        return Ok(UncertaintyReport::flagged("cauchy_schwarz_chain", tol, "zero function"));
    }
    let l2_sq = f.l2_norm_sq();
    let sup_sq = f.sup_norm().powi(2);
    let argmax = f.argmax_abs();
    let peak_sq = inverse_at(&s, argmax).norm_sqr();
    let plancherel = s.weighted_hs_norm_sq();
    let link1_bound = m.mu_supp * sup_sq;
    let link2_bound = m.rank_sum as f64 * plancherel;
    let slack1 = link1_bound - l2_sq;
    let slack2 = link2_bound - peak_sq;
    Ok(UncertaintyReport::inequality(
        "cauchy_schwarz_chain",
        slack1.min(slack2),
        tol,
        quantities([
            ("l2_sq", l2_sq),
            ("sup_sq", sup_sq),
            ("peak_sq_by_inversion", peak_sq),
            ("argmax", argmax as f64),
            ("mu_supp", m.mu_supp),
            ("rank_sum", m.rank_sum as f64),
            ("plancherel_sum", plancherel),
            ("link1_bound", link1_bound),
            ("link1_slack", slack1),
            ("link2_bound", link2_bound),
            ("link2_slack", slack2),
        ]),
    ))
}
