//! Property sweeps over the supported group families.

use std::sync::Arc;

use ncfourier::fourier::{plancherel_residual, support_metrics};
use ncfourier::group::{all_subgroups, is_normal, DEFAULT_SUBGROUP_CAP};
use ncfourier::matrix::{norms, DEFAULT_RANK_TOL};
use ncfourier::operators::{
    apply_band_limiter, averaging_identity_residual, commutation_report, image_band_limiter, materialize,
};
use ncfourier::random::{
    complex_gaussian, derive_seed, gaussian_band_limiter, projector_band_limiter, random_function,
    random_sparse_function, random_subset, rng_from_seed,
};
use ncfourier::reps::{irreps, verify_catalog};
use ncfourier::uncertainty::{
    cauchy_schwarz_chain_check, corollary1_check, main_bound_check, subgroup_profile, support_rank_check,
    theorem1_check, DEFAULT_TOL,
};
use ncfourier::{
    fourier_transform, inverse_transform, BandLimiter, ComplexMatrix, FiniteGroup, GroupFunction, GroupSpec,
    IrrepCatalog, OperatorDesc, Side,
};
use proptest::prelude::*;
use rand::Rng;

const SMALL_GROUPS: &[&str] = &[
    "C1", "C2", "C5", "C12", "D1", "D3", "D4", "D5", "D6", "S3", "S4", "C2xS3", "C3xD4",
];

fn setup(spec: &str) -> (Arc<FiniteGroup>, Arc<IrrepCatalog>) {
    let g = Arc::new(spec.parse::<GroupSpec>().unwrap().build().unwrap());
    let cat = Arc::new(irreps(&g).unwrap());
    (g, cat)
}

#[test]
fn group_axioms_hold_for_every_family() {
    for spec in SMALL_GROUPS {
        let (g, _) = setup(spec);
        let n = g.order();
        for x in 0..n {
            let mut row: Vec<usize> = g.row(x).collect();
            row.sort();
            assert_eq!(row, (0..n).collect::<Vec<_>>());
            let mut col: Vec<usize> = (0..n).map(|y| g.mul(y, x)).collect();
            col.sort();
            assert_eq!(col, (0..n).collect::<Vec<_>>());
            assert_eq!(g.mul(g.identity(), x), x);
            assert_eq!(g.mul(x, g.identity()), x);
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }
}

#[test]
fn subgroups_are_closed_and_respect_lagrange() {
    for spec in ["C12", "D4", "D6", "S3", "S4", "C2xS3"] {
        let (g, _) = setup(spec);
        let subs = all_subgroups(&g, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(subs.first().unwrap().members(), &[g.identity()]);
        assert_eq!(subs.last().unwrap().order(), g.order());
        for h in &subs {
            assert_eq!(g.order() % h.order(), 0);
            for &a in h.members() {
                assert!(h.contains(g.inv(a)));
                for &b in h.members() {
                    assert!(h.contains(g.mul(a, b)));
                }
            }
        }
        let mut sorted = subs.iter().map(|h| h.members().to_vec()).collect::<Vec<_>>();
        sorted.dedup();
        assert_eq!(sorted.len(), subs.len());
    }
}

#[test]
fn catalogs_verify_and_characters_are_orthonormal() {
    for spec in SMALL_GROUPS.iter().chain(&["S5", "D3xD4"]) {
        let (g, cat) = setup(spec);
        let report = verify_catalog(&g, &cat).unwrap();
        assert!(report.passed, "{spec}");
        let n = g.order() as f64;
        for a in cat.irreps() {
            for b in cat.irreps() {
                let ip: ncfourier::Complex64 = (0..g.order())
                    .map(|x| a.character(x) * b.character(x).conj())
                    .sum::<ncfourier::Complex64>()
                    / n;
                let expected = if a.name == b.name { 1.0 } else { 0.0 };
                assert!(
                    (ip.re - expected).abs() < 1e-9 && ip.im.abs() < 1e-9,
                    "{spec}: {} {}",
                    a.name,
                    b.name
                );
            }
        }
    }
}

#[test]
fn fourier_round_trip_plancherel_translation() {
    for spec in ["C12", "D4", "D6", "S3", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        for i in 0..100 {
            let mut rng = rng_from_seed(derive_seed(17, i));
            let f = random_function(&g, &mut rng);
            let s = fourier_transform(&f, &cat).unwrap();
            let back = inverse_transform(&s).unwrap();
            assert!(back.max_abs_diff(&f) < 1e-10, "{spec}");
            assert!(plancherel_residual(&f, &s).unwrap() < 1e-10, "{spec}");

            let y = rng.random_range(0..g.order());
            let shifted = fourier_transform(&f.translate_left(y), &cat).unwrap();
            for (k, irrep) in cat.irreps().iter().enumerate() {
                let law = s.block(k) * irrep.matrix(g.inv(y));
                assert!(shifted.block(k).max_abs_diff(&law) < 1e-10, "{spec}");
            }
        }
    }
}

#[test]
fn transform_is_linear() {
    let (g, cat) = setup("S4");
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        let f = random_function(&g, &mut rng);
        let h = random_function(&g, &mut rng);
        let (a, b) = (complex_gaussian(&mut rng), complex_gaussian(&mut rng));
        let lhs = fourier_transform(&f.combine(a, &h, b).unwrap(), &cat).unwrap();
        let fs = fourier_transform(&f, &cat).unwrap();
        let hs = fourier_transform(&h, &cat).unwrap();
        for k in 0..cat.len() {
            let rhs = &fs.block(k).scale(a) + &hs.block(k).scale(b);
            assert!(lhs.block(k).max_abs_diff(&rhs) < 1e-10);
        }
    }
}

#[test]
fn support_metric_ordering() {
    for spec in ["D6", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        let mut rng = rng_from_seed(6);
        for _ in 0..100 {
            let f = random_sparse_function(&g, &mut rng);
            let m = support_metrics(&f, &fourier_transform(&f, &cat).unwrap(), DEFAULT_RANK_TOL).unwrap();
            assert!(m.d1_sum <= m.rank_sum && m.rank_sum <= m.dsq_sum);
            assert!(m.rank_product() >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn isotypic_projections_resolve_the_identity() {
    for spec in ["D4", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        let n = g.order();
        let projs: Vec<ComplexMatrix> = (0..cat.len())
            .map(|i| materialize(&OperatorDesc::Isotypic(i), &cat).unwrap().into_matrix())
            .collect();
        let mut sum = ComplexMatrix::zeros(n, n);
        for p in &projs {
            sum = &sum + p;
            assert!(p.projector_residual() < 1e-10);
        }
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
        for i in 0..projs.len() {
            for j in 0..projs.len() {
                if i != j {
                    assert!((&projs[i] * &projs[j]).max_abs_diff(&ComplexMatrix::zeros(n, n)) < 1e-10);
                }
            }
        }
    }
}

#[test]
fn averaging_identity() {
    for spec in ["C12", "D4", "D6", "S3", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        for i in 0..20 {
            let f = random_function(&g, &mut rng_from_seed(derive_seed(8, i)));
            assert!(averaging_identity_residual(&f, &cat).unwrap() < 1e-10, "{spec}");
        }
    }
}

#[test]
fn band_materialization_is_consistent_and_hs_accounted() {
    for spec in ["D6", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        let mut rng = rng_from_seed(9);
        for side in [Side::Left, Side::Right] {
            for _ in 0..10 {
                let base = gaussian_band_limiter(&cat, &mut rng);
                let r = BandLimiter::with_side(Arc::clone(&cat), base.blocks().to_vec(), side).unwrap();
                let m = materialize(&OperatorDesc::Band(r.clone()), &cat).unwrap();
                let f = random_function(&g, &mut rng);
                let direct = apply_band_limiter(&r, &f).unwrap();
                assert!(m.apply(&f).unwrap().max_abs_diff(&direct) < 1e-10);
                let hs = m.matrix().hs_norm_sq();
                assert!((hs - r.hs_norm_sq()).abs() <= 1e-9 * hs.max(1.0));
            }
        }
    }
}

#[test]
fn left_band_limiters_commute_with_left_translations() {
    let (g, cat) = setup("S4");
    let mut rng = rng_from_seed(10);
    for i in 0..5 {
        let r = gaussian_band_limiter(&cat, &mut rng);
        let rep = commutation_report(&OperatorDesc::Band(r), &cat, i).unwrap();
        assert!(rep.left_commutation_residual < 1e-10);
        // Band-limiters are not time-limiters.
        assert!(rep.subset_projection_residual > 1e-3);

        let m = random_function(&g, &mut rng);
        let rep = commutation_report(&OperatorDesc::Time(m), &cat, i).unwrap();
        assert!(rep.subset_projection_residual < 1e-12);
        assert!(rep.left_commutation_residual > 1e-3);
    }
}

#[test]
fn theorem_sweeps_on_reference_groups() {
    for spec in ["C12", "D6", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        for i in 0..100 {
            let mut rng = rng_from_seed(derive_seed(42, i));
            let f = random_function(&g, &mut rng);
            let r = gaussian_band_limiter(&cat, &mut rng);
            let t1 = theorem1_check(&f, &r, DEFAULT_TOL).unwrap();
            assert!(t1.passed(), "{spec} {t1:?}");
            let mb = main_bound_check(&f, &r, DEFAULT_TOL).unwrap();
            assert!(mb.passed(), "{spec} {mb:?}");

            let p = projector_band_limiter(&cat, &mut rng);
            let s = random_subset(&mut rng, g.order());
            let c1 = corollary1_check(&cat, &s, &p, DEFAULT_RANK_TOL, DEFAULT_TOL).unwrap();
            assert!(c1.passed(), "{spec} {c1:?}");
            // The Hilbert-Schmidt side is an exact equality.
            assert!((c1.get("hs_sq") - c1.get("bound")).abs() < 1e-9 * c1.get("bound").max(1.0));

            let sparse = random_sparse_function(&g, &mut rng);
            let sr = support_rank_check(&sparse, &cat, DEFAULT_RANK_TOL, DEFAULT_TOL).unwrap();
            assert!(sr.passed());
            assert!(sr.get("rank_product") <= sr.get("matolcsi_product"));
            assert!(sr.get("kutyniok_product") <= sr.get("rank_product"));
            assert!(cauchy_schwarz_chain_check(&sparse, &cat, DEFAULT_RANK_TOL, DEFAULT_TOL)
                .unwrap()
                .passed());
        }
    }
}

#[test]
fn support_rank_principle_is_tight_via_image_projector() {
    // ||P_supp R_img||_2^2 equals the rank product, and ||P R|| = 1.
    let (g, cat) = setup("S4");
    let mut rng = rng_from_seed(12);
    for _ in 0..20 {
        let f = random_sparse_function(&g, &mut rng);
        let s = fourier_transform(&f, &cat).unwrap();
        let m = support_metrics(&f, &s, DEFAULT_RANK_TOL).unwrap();
        let r = image_band_limiter(&s, DEFAULT_RANK_TOL).unwrap();
        let p = GroupFunction::indicator(Arc::clone(&g), &f.support()).unwrap();
        let op = materialize(
            &OperatorDesc::Compose(vec![OperatorDesc::Time(p), OperatorDesc::Band(r)]),
            &cat,
        )
        .unwrap();
        let n = norms(op.matrix()).unwrap();
        assert!((n.hs * n.hs - m.rank_product()).abs() < 1e-9);
        assert!((n.op - 1.0).abs() < 1e-9);
    }
}

#[test]
fn subgroup_tightness_and_normality() {
    for spec in ["C12", "D4", "D6", "S3", "S4", "C2xS3"] {
        let (g, cat) = setup(spec);
        for h in all_subgroups(&g, DEFAULT_SUBGROUP_CAP).unwrap() {
            let p = subgroup_profile(&h, &cat, DEFAULT_RANK_TOL, DEFAULT_TOL).unwrap();
            assert!((p.rank_product - 1.0).abs() < 1e-9);
            assert_eq!(
                p.all_full_or_zero,
                is_normal(&g, &h).unwrap(),
                "{spec} {:?}",
                h.members()
            );
            assert!(p.report.passed());
        }
    }
}

fn spec_strategy() -> impl Strategy<Value = String> {
    let factor = prop_oneof![
        (1usize..9).prop_map(|n| format!("C{n}")),
        (1usize..6).prop_map(|n| format!("D{n}")),
        (1usize..4).prop_map(|n| format!("S{n}")),
    ];
    prop::collection::vec(factor, 1..3).prop_map(|fs| fs.join("x"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn spec_display_round_trips(spec in spec_strategy()) {
        let parsed: GroupSpec = spec.parse().unwrap();
        prop_assert_eq!(parsed.to_string(), spec.clone());
        prop_assert_eq!(spec.to_lowercase().parse::<GroupSpec>().unwrap(), parsed);
    }

    #[test]
    fn random_products_have_complete_catalogs(spec in spec_strategy()) {
        let (g, cat) = setup(&spec);
        let report = verify_catalog(&g, &cat).unwrap();
        prop_assert!(report.passed);
        prop_assert_eq!(cat.dims().iter().map(|d| d * d).sum::<usize>(), g.order());
    }

    #[test]
    fn theorem1_holds_for_random_instances(spec in spec_strategy(), seed in any::<u64>()) {
        let (g, cat) = setup(&spec);
        let mut rng = rng_from_seed(seed);
        let f = random_sparse_function(&g, &mut rng);
        let r = gaussian_band_limiter(&cat, &mut rng);
        prop_assert!(theorem1_check(&f, &r, DEFAULT_TOL).unwrap().passed());
        prop_assert!(support_rank_check(&f, &cat, DEFAULT_RANK_TOL, DEFAULT_TOL).unwrap().passed());
    }
}
