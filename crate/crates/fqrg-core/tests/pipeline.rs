//! End-to-end runs of the classification pipeline across module boundaries.

use fqrg_core::algebra::AlgebraElement;
use fqrg_core::calculus::Calculus;
use fqrg_core::catalog;
use fqrg_core::connection::{classify_connections, ClassifyMode};
use fqrg_core::exterior::{solve_exterior, ExteriorData, QsymFilter};
use fqrg_core::geometry::{curvature, enumerate_lifts, laplacian, lift_offset, ricci, Lift};
use fqrg_core::metric::{invertible_qsym_metrics, try_invert_metric, QuantumMetric};
use fqrg_core::reproduce;

/// From structure constants to Einstein flags without touching any fixture
/// payload except the algebra itself.
#[test]
fn full_pipeline_on_the_group_algebra_model() {
    let alg = catalog::algebra_n3("D").unwrap();
    let cal = Calculus::universal(&alg);
    assert!(cal.validate().is_valid());

    // pick the canonical wedge structure by the quantum-symmetry filter
    let probe = catalog::metric("g_D.1").unwrap();
    let exts = solve_exterior(&cal, QsymFilter::Metric(&probe));
    let ext = exts.first().cloned().expect("a wedge structure exists");

    let metrics = invertible_qsym_metrics(&cal, &ext);
    assert_eq!(metrics.len(), 3);

    let mut flat_total = 0;
    for metric in &metrics {
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 2);
        assert_eq!(result.connections.len(), 4);
        let lifts = enumerate_lifts(&cal, &ext);
        assert_eq!(lifts.len(), 8);
        for (conn, flags) in &result.connections {
            assert!(flags.qlc());
            let curv = curvature(&cal, &ext, conn);
            if curv.flat {
                flat_total += 1;
            }
            let lap = laplacian(&cal, metric, conn);
            // Delta 1 = 0 always
            assert!(lap.apply(&AlgebraElement::one(3)).is_zero());
            let rep = ricci(&cal, &ext, metric, conn, &lifts[0]);
            if curv.flat {
                assert!(rep.ricci.iter().all(|&b| b == 0));
            }
        }
    }
    assert_eq!(flat_total, 3, "one flat connection per metric");
}

#[test]
fn weak_connections_on_the_two_point_models() {
    // In the rank-one exterior the only torsion-free connection is zero, so
    // the weak classification over the flat metric is exactly that one.
    for label in ["A", "B", "C"] {
        let alg = catalog::algebra_n2(label).unwrap();
        let cal = Calculus::universal(&alg);
        let ext = ExteriorData::free(vec![1, 0], vec![0, 0]);
        let g = vec![1u8, 0];
        let result = classify_connections(&cal, &ext, &g, ClassifyMode::Wqlc, 1);
        let gammas: Vec<Vec<u8>> = result.connections.into_iter().map(|x| x.0.gamma).collect();
        assert_eq!(gammas, vec![vec![0, 0]], "algebra {label}");
    }
}

#[test]
fn divergence_of_einstein_agrees_with_direct_divergence() {
    // div Eins computed as div Ricci + dS must agree with the divergence of
    // the assembled Einstein tensor.
    let alg = catalog::algebra_n3("D").unwrap();
    let cal = Calculus::universal(&alg);
    let ext = catalog::exterior("D").unwrap();
    let g = catalog::metric("g_D.1").unwrap();
    let metric = try_invert_metric(&cal, &QuantumMetric::new(g)).unwrap();
    let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
    let base = Lift {
        tensor: catalog::lift_base("D").unwrap(),
    };
    let gm = catalog::lift_gamma_metric("D").unwrap();
    for (conn, _) in &result.connections {
        for b in 0u8..8 {
            let triple = [b >> 2 & 1, b >> 1 & 1, b & 1];
            let gamma_fn = catalog::lift_gamma("D", &triple).unwrap();
            let lift = lift_offset(&cal, &base, &gamma_fn, &gm);
            let rep = ricci(&cal, &ext, &metric, conn, &lift);
            let direct = fqrg_core::geometry::divergence(&cal, &metric, conn, &rep.einstein);
            let ds = cal.differential(&rep.scalar);
            let indirect: Vec<u8> = fqrg_core::geometry::divergence(&cal, &metric, conn, &rep.ricci)
                .iter()
                .zip(ds.iter())
                .map(|(a, b)| a ^ b)
                .collect();
            assert_eq!(direct, indirect);
            assert_eq!(rep.div_eins_zero, direct.iter().all(|&x| x == 0));
        }
    }
}

#[test]
fn reproduce_targets_for_the_main_tables_pass() {
    for target in ["table1", "table2", "table3", "exterior", "lifts"] {
        let report = reproduce::run_target(target, 2).unwrap();
        assert!(report.passed(), "{target}:\n{}", report.render_text());
    }
}

#[test]
fn unknown_reproduce_target_is_rejected() {
    assert!(reproduce::run_target("table99", 1).is_none());
}

/// The D model classification is invariant under which of the three scaled
/// metrics is used, with four connections each.
#[test]
fn qlc_count_is_scaling_invariant_for_d() {
    let alg = catalog::algebra_n3("D").unwrap();
    let cal = Calculus::universal(&alg);
    let ext = catalog::exterior("D").unwrap();
    for id in ["g_D.1", "g_D.2", "g_D.3"] {
        let g = catalog::metric(id).unwrap();
        let result = classify_connections(&cal, &ext, &g, ClassifyMode::Qlc, 1);
        assert_eq!(result.connections.len(), 4, "{id}");
    }
}
