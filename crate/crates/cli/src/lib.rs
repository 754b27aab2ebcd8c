//! Drivers behind the `ncfourier` binary.
//!
//! Every command returns an [`Outcome`] holding the exit code and the rendered
//! report; the binary only handles argument parsing and I/O. Exit codes:
//! 0 when every verdict passes, 1 when any verdict fails, 2 on usage or
//! configuration errors.

use std::path::PathBuf;
use std::sync::Arc;

use ncfourier::fourier::{plancherel_residual, support_metrics, SpectrumFile};
use ncfourier::group::{all_subgroups, DEFAULT_SUBGROUP_CAP};
use ncfourier::matrix::DEFAULT_RANK_TOL;
use ncfourier::operators::{averaging_identity_residual, commutation_report};
use ncfourier::random::{
    derive_seed, gaussian_band_limiter, projector_band_limiter, random_function, random_projector,
    random_sparse_function, random_subset, rng_from_seed,
};
use ncfourier::reps::{irreps, verify_catalog, VerificationReport};
use ncfourier::uncertainty::{
    cauchy_schwarz_chain_check, corollary1_check, corollary_check, main_bound_check, subgroup_profile,
    support_rank_check, theorem1_check, trace_orthogonality_check, SubgroupProfile,
};
use ncfourier::{
    fourier_transform, inverse_transform, BandLimiter, FiniteGroup, GroupSpec, IrrepCatalog, OperatorDesc, Side,
    UncertaintyReport, Verdict,
};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Tolerance for identities that hold to working precision (inversion,
/// Plancherel, translation, averaging, commutation).
pub const IDENTITY_TOL: f64 = 1e-10;
/// Upper limit accepted for `--tol`.
pub const MAX_TOL: f64 = 1e-3;
/// Largest `2^(|G| + #irreps)` for which `verify` runs the exhaustive
/// subset-pair sweep.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 1 << 13;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] ncfourier::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Command {
    Transform,
    #[default]
    Verify,
    Sweep,
    Subgroups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub group_spec: String,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub format: Format,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub max_order: usize,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
}

impl RunConfig {
    pub fn new(command: Command, group_spec: &str) -> Self {
        RunConfig {
            command,
            group_spec: group_spec.to_string(),
            seed: 0,
            trials: 10,
            tol: ncfourier::uncertainty::DEFAULT_TOL,
            format: Format::Json,
            input: None,
            output: None,
            max_order: DEFAULT_SUBGROUP_CAP,
            workers: 0,
        }
    }

    fn validate(&self) -> Result<GroupSpec, CliError> {
        if !(self.tol > 0.0 && self.tol <= MAX_TOL) {
            return Err(CliError::Config(format!(
                "--tol must lie in (0, {MAX_TOL:e}], got {}",
                self.tol
            )));
        }
        if self.trials == 0 {
            return Err(CliError::Config("--trials must be at least 1".into()));
        }
        if self.max_order == 0 {
            return Err(CliError::Config("--max-order must be at least 1".into()));
        }
        Ok(self.group_spec.parse()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

impl Outcome {
    fn from_failures(failed: usize, output: String) -> Self {
        Outcome {
            exit_code: if failed == 0 { 0 } else { 1 },
            output,
        }
    }
}

/// Runs the configured command. Errors map to exit code 2.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Transform => run_transform(cfg),
        Command::Verify => run_verify(cfg),
        Command::Sweep => run_sweep(cfg),
        Command::Subgroups => run_subgroups(cfg),
    }
}

fn setup(spec: &GroupSpec) -> Result<(Arc<FiniteGroup>, Arc<IrrepCatalog>), CliError> {
    let group = Arc::new(spec.build()?);
    let cat = Arc::new(irreps(&group)?);
    Ok((group, cat))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn to_csv<R: Serialize>(header: Option<&[String]>, rows: impl IntoIterator<Item = R>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}

// ---------------------------------------------------------------- transform

#[derive(Serialize)]
struct SpectrumEntry<'a> {
    irrep: &'a str,
    dim: usize,
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

/// Transforms the function file given by `--in` and emits its spectrum with
/// support metrics.
pub fn run_transform(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.validate()?;
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Config("transform needs --in".into()))?;
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let (group, cat) = setup(&spec)?;
    let f = ncfourier::fourier::parse_function(&text, &group)?;
    let s = fourier_transform(&f, &cat)?;
    let metrics = support_metrics(&f, &s, DEFAULT_RANK_TOL)?;
    let output = match cfg.format {
        Format::Json => to_json(&SpectrumFile::from_spectrum(&s, Some(metrics)))?,
        Format::Csv => {
            let rows = cat.irreps().iter().zip(s.blocks()).flat_map(|(irrep, block)| {
                (0..irrep.dim).flat_map(move |row| {
                    (0..irrep.dim).map(move |col| SpectrumEntry {
                        irrep: &irrep.name,
                        dim: irrep.dim,
                        row,
                        col,
                        re: block[(row, col)].re,
                        im: block[(row, col)].im,
                    })
                })
            });
            to_csv(None, rows)?
        }
    };
    Ok(Outcome { exit_code: 0, output })
}

// ------------------------------------------------------------------- verify

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    /// Sweep instance, absent for whole-group checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<usize>,
    #[serde(flatten)]
    pub report: UncertaintyReport,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
}

impl Summary {
    fn of<'a>(reports: impl IntoIterator<Item = &'a UncertaintyReport>) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            match r.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => s.failed += 1,
                Verdict::Flagged => s.flagged += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group_spec: String,
    pub order: usize,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub catalog: VerificationReport,
    pub records: Vec<Record>,
    pub summary: Summary,
}

fn residual_report(check: &str, residual: f64, tol: f64) -> UncertaintyReport {
    let mut q = std::collections::BTreeMap::new();
    q.insert("residual".to_string(), residual);
    UncertaintyReport::equality(check, residual, tol, q)
}

fn catalog_record(v: &VerificationReport) -> UncertaintyReport {
    let residual = v
        .irreps
        .iter()
        .flat_map(|c| {
            [
                c.identity_residual,
                c.homomorphism_residual,
                c.unitarity_residual,
                c.irreducibility_residual,
            ]
        })
        .chain([v.max_cross_character_product])
        .fold(0.0, f64::max);
    let mut r = residual_report("catalog", residual, ncfourier::reps::ACCUMULATED_TOL);
    r.quantities.insert("dim_square_sum".into(), v.dim_square_sum as f64);
    r.verdict = if v.passed { Verdict::Pass } else { Verdict::Fail };
    r
}

/// Every check for one seeded instance, in a fixed order.
fn instance_reports(
    cat: &Arc<IrrepCatalog>,
    seed: u64,
    index: usize,
    tol: f64,
    max_order: usize,
) -> Result<Vec<UncertaintyReport>, CliError> {
    let group = cat.group();
    let n = group.order();
    let mut rng = rng_from_seed(derive_seed(seed, index as u64));
    let mut out = Vec::new();

    let f = random_function(group, &mut rng);
    let side = if index.is_multiple_of(2) {
        Side::Left
    } else {
        Side::Right
    };
    let r = gaussian_band_limiter(cat, &mut rng);
    let r = BandLimiter::with_side(Arc::clone(cat), r.blocks().to_vec(), side)?;
    out.push(theorem1_check(&f, &r, tol)?);
    out.push(main_bound_check(&f, &r, tol)?);

    let s = fourier_transform(&f, cat)?;
    out.push(residual_report(
        "inversion",
        inverse_transform(&s)?.max_abs_diff(&f),
        IDENTITY_TOL,
    ));
    out.push(residual_report(
        "plancherel",
        plancherel_residual(&f, &s)?,
        IDENTITY_TOL,
    ));
    let y = rng.random_range(0..n);
    let shifted = fourier_transform(&f.translate_left(y), cat)?;
    let translation = cat
        .irreps()
        .iter()
        .enumerate()
        .map(|(k, irrep)| {
            shifted
                .block(k)
                .max_abs_diff(&(s.block(k) * irrep.matrix(group.inv(y))))
        })
        .fold(0.0, f64::max);
    out.push(residual_report("translation", translation, IDENTITY_TOL));
    out.push(residual_report(
        "averaging_identity",
        averaging_identity_residual(&f, cat)?,
        IDENTITY_TOL,
    ));

    let sparse = random_sparse_function(group, &mut rng);
    out.push(support_rank_check(&sparse, cat, DEFAULT_RANK_TOL, tol)?);
    out.push(cauchy_schwarz_chain_check(&sparse, cat, DEFAULT_RANK_TOL, tol)?);

    let p = projector_band_limiter(cat, &mut rng);
    let subset = random_subset(&mut rng, n);
    out.push(corollary1_check(cat, &subset, &p, DEFAULT_RANK_TOL, tol)?);
    let t = random_subset(&mut rng, cat.len());
    out.push(corollary_check(cat, &subset, &t, tol)?);

    let i1 = rng.random_range(0..cat.len());
    let i2 = rng.random_range(0..cat.len());
    let (d1, d2) = (cat.irreps()[i1].dim, cat.irreps()[i2].dim);
    let r1 = random_projector(d1, rng.random_range(0..=d1), &mut rng);
    let r2 = if i1 == i2 {
        r1.clone()
    } else {
        random_projector(d2, rng.random_range(0..=d2), &mut rng)
    };
    out.push(trace_orthogonality_check(cat, i1, i2, &r1, &r2, tol)?);

    if n <= max_order {
        let sub_seed = rng.random();
        let band = commutation_report(
            &OperatorDesc::Band(BandLimiter::new(Arc::clone(cat), r.blocks().to_vec())?),
            cat,
            sub_seed,
        )?;
        out.push(residual_report(
            "commutation_band",
            band.left_commutation_residual,
            IDENTITY_TOL,
        ));
        let time = commutation_report(&OperatorDesc::Time(f), cat, sub_seed)?;
        out.push(residual_report(
            "commutation_time",
            time.subset_projection_residual,
            IDENTITY_TOL,
        ));
    }
    Ok(out)
}

/// Every `(S, T)` pair of element and irrep subsets, summarized by the
/// smallest slack.
fn exhaustive_pairs(cat: &Arc<IrrepCatalog>, tol: f64) -> Result<UncertaintyReport, CliError> {
    let n = cat.group().order();
    let k = cat.len();
    let mut min_slack = f64::INFINITY;
    let mut tight = 0usize;
    for smask in 0u64..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|i| smask >> i & 1 == 1).collect();
        for tmask in 0u64..(1 << k) {
            let t: Vec<usize> = (0..k).filter(|i| tmask >> i & 1 == 1).collect();
            let r = corollary_check(cat, &s, &t, tol)?;
            let slack = r.slack.unwrap_or(0.0);
            if !s.is_empty() && !t.is_empty() && slack < tol {
                tight += 1;
            }
            min_slack = min_slack.min(slack);
        }
    }
    let mut q = std::collections::BTreeMap::new();
    q.insert("cases".to_string(), ((1u64 << n) * (1u64 << k)) as f64);
    q.insert("tight_nonempty_cases".to_string(), tight as f64);
    Ok(UncertaintyReport::inequality(
        "corollary2_exhaustive",
        min_slack,
        tol,
        q,
    ))
}

/// Builds the full verification report.
pub fn verify_report(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    let spec = cfg.validate()?;
    let (group, cat) = setup(&spec)?;
    let catalog = verify_catalog(&group, &cat)?;

    let mut records = vec![Record {
        instance: None,
        report: catalog_record(&catalog),
    }];
    if group.order() <= cfg.max_order {
        for h in all_subgroups(&group, cfg.max_order)? {
            let p = subgroup_profile(&h, &cat, DEFAULT_RANK_TOL, cfg.tol)?;
            records.push(Record {
                instance: None,
                report: p.report,
            });
        }
    }
    if (1usize << group.order().min(63)).saturating_mul(1 << cat.len().min(63)) <= EXHAUSTIVE_PAIR_LIMIT {
        records.push(Record {
            instance: None,
            report: exhaustive_pairs(&cat, cfg.tol)?,
        });
    }

    let per_instance: Vec<Vec<UncertaintyReport>> = pool(cfg.workers)?.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| instance_reports(&cat, cfg.seed, i, cfg.tol, cfg.max_order))
            .collect::<Result<_, _>>()
    })?;
    for (i, reports) in per_instance.into_iter().enumerate() {
        records.extend(reports.into_iter().map(|report| Record {
            instance: Some(i),
            report,
        }));
    }

    let summary = Summary::of(records.iter().map(|r| &r.report));
    Ok(VerifyReport {
        group_spec: spec.to_string(),
        order: group.order(),
        seed: cfg.seed,
        trials: cfg.trials,
        tolerance: cfg.tol,
        catalog,
        records,
        summary,
    })
}

#[derive(Serialize)]
struct RecordRow<'a> {
    instance: Option<usize>,
    check: &'a str,
    verdict: Verdict,
    residual: Option<f64>,
    slack: Option<f64>,
    tolerance: f64,
    note: Option<&'a str>,
}

/// Runs every verifier over `cfg.trials` seeded instances.
pub fn run_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = verify_report(cfg)?;
    let output = match cfg.format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(
            None,
            report.records.iter().map(|r| RecordRow {
                instance: r.instance,
                check: &r.report.check,
                verdict: r.report.verdict,
                residual: r.report.residual,
                slack: r.report.slack,
                tolerance: r.report.tolerance,
                note: r.report.note.as_deref(),
            }),
        )?,
    };
    Ok(Outcome::from_failures(report.summary.failed, output))
}

// -------------------------------------------------------------------- sweep

/// One row of the randomized sweep table.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub instance: usize,
    pub seed: u64,
    pub theorem1_residual: f64,
    pub main_bound_slack: f64,
    pub op_norm: f64,
    pub hs_norm: f64,
    pub corollary1_slack: f64,
    pub mu_supp: f64,
    pub rank_product: f64,
    pub matolcsi_product: f64,
    pub kutyniok_product: f64,
    pub passed: bool,
}

fn sweep_row(cat: &Arc<IrrepCatalog>, master: u64, index: usize, tol: f64) -> Result<SweepRow, CliError> {
    let group = cat.group();
    let seed = derive_seed(master, index as u64);
    let mut rng = rng_from_seed(seed);
    let f = random_function(group, &mut rng);
    let r = gaussian_band_limiter(cat, &mut rng);
    let t1 = theorem1_check(&f, &r, tol)?;
    let mb = main_bound_check(&f, &r, tol)?;
    let p = projector_band_limiter(cat, &mut rng);
    let subset = random_subset(&mut rng, group.order());
    let c1 = corollary1_check(cat, &subset, &p, DEFAULT_RANK_TOL, tol)?;
    let sparse = random_sparse_function(group, &mut rng);
    let sr = support_rank_check(&sparse, cat, DEFAULT_RANK_TOL, tol)?;
    Ok(SweepRow {
        instance: index,
        seed,
        theorem1_residual: t1.residual.unwrap_or(f64::NAN),
        main_bound_slack: mb.slack.unwrap_or(f64::NAN),
        op_norm: mb.get("value"),
        hs_norm: mb.get("hs"),
        corollary1_slack: c1.slack.unwrap_or(f64::NAN),
        mu_supp: sr.get("mu_supp"),
        rank_product: sr.get("rank_product"),
        matolcsi_product: sr.get("matolcsi_product"),
        kutyniok_product: sr.get("kutyniok_product"),
        passed: [&t1, &mb, &c1, &sr].iter().all(|r| !r.failed()),
    })
}

/// Per-instance table of the central quantities.
pub fn run_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.validate()?;
    let (_, cat) = setup(&spec)?;
    let rows: Vec<SweepRow> = pool(cfg.workers)?.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| sweep_row(&cat, cfg.seed, i, cfg.tol))
            .collect::<Result<_, _>>()
    })?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    let output = match cfg.format {
        Format::Json => to_json(&rows)?,
        Format::Csv => to_csv(None, &rows)?,
    };
    Ok(Outcome::from_failures(failed, output))
}

// ---------------------------------------------------------------- subgroups

#[derive(Serialize)]
struct SubgroupTable<'a> {
    group_spec: String,
    order: usize,
    irreps: Vec<&'a str>,
    subgroups: Vec<SubgroupProfile>,
}

/// One row per subgroup: rank pattern of its indicator and normality.
pub fn run_subgroups(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.validate()?;
    if spec.order() > cfg.max_order {
        return Err(CliError::Config(format!(
            "{spec} has order {} above the enumeration cap {}",
            spec.order(),
            cfg.max_order
        )));
    }
    let (group, cat) = setup(&spec)?;
    let profiles = all_subgroups(&group, cfg.max_order)?
        .iter()
        .map(|h| subgroup_profile(h, &cat, DEFAULT_RANK_TOL, cfg.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let failed = profiles.iter().filter(|p| p.report.failed()).count();
    let names: Vec<&str> = cat.irreps().iter().map(|i| i.name.as_str()).collect();
    let output = match cfg.format {
        Format::Json => to_json(&SubgroupTable {
            group_spec: spec.to_string(),
            order: group.order(),
            irreps: names,
            subgroups: profiles,
        })?,
        Format::Csv => {
            let mut header: Vec<String> = ["size", "members", "normal"].iter().map(|s| s.to_string()).collect();
            header.extend(names.iter().map(|n| format!("rank_{n}")));
            header.extend(["all_full_or_zero", "rank_product", "matolcsi_product", "verdict"].map(String::from));
            let rows = profiles.iter().map(|p| {
                let mut row = vec![
                    p.size.to_string(),
                    p.members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
                    p.normal.to_string(),
                ];
                row.extend(p.ranks.iter().map(|r| r.to_string()));
                row.extend([
                    p.all_full_or_zero.to_string(),
                    p.rank_product.to_string(),
                    p.matolcsi_product.to_string(),
                    if p.report.failed() { "fail" } else { "pass" }.to_string(),
                ]);
                row
            });
            to_csv(Some(&header), rows)?
        }
    };
    Ok(Outcome::from_failures(failed, output))
}
