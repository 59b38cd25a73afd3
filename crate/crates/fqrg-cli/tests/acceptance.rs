//! Acceptance suite: every classification figure and invariant the library
//! is required to reproduce, one test per criterion, with a printed pass/fail
//! line for each.
//!
//! Criterion 2 carries one published figure (the m=1 calculus count over the
//! noncommutative algebra G) that is inconsistent with the published
//! equations themselves; that sub-check is asserted as published and fails,
//! with the analysis in the test output. Everything else passes.

use fqrg_core::algebra::{enumerate_unital_algebras, AlgebraElement};
use fqrg_core::calculus::{calculus_iso_classes, enumerate_calculi, Calculus};
use fqrg_core::catalog;
use fqrg_core::connection::{
    classify_connections, classify_connections_brute, sigma_recovery_identity_holds, solve_sigma,
    ClassifyMode, Connection,
};
use fqrg_core::exterior::{solve_exterior, ExteriorData, QsymFilter};
use fqrg_core::f2::{solve_affine, F2Matrix, F2Vector};
use fqrg_core::geometry::{curvature, enumerate_lifts, laplacian, lift_offset, ricci, Lift};
use fqrg_core::metric::{
    invertible_qsym_metrics, quantum_dimension, solve_central_metrics, try_invert_metric,
    QuantumMetric,
};
use fqrg_core::reproduce;
use std::process::Command;

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, clause: &str, ok: bool, detail: &str) {
        if !ok {
            self.failures.push(format!("{clause}: {detail}"));
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("criterion {}: PASS", self.name);
        } else {
            println!("criterion {}: FAIL", self.name);
            for failure in &self.failures {
                println!("  - {failure}");
            }
        }
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.name,
            self.failures
        );
    }
}

fn qlc_setup(metric_id: &str) -> (Calculus, ExteriorData, QuantumMetric) {
    let (label, _) = catalog::metric_context(metric_id).unwrap();
    let alg = catalog::algebra_n3(label).unwrap();
    let cal = Calculus::universal(&alg);
    let ext = catalog::exterior(label).unwrap();
    let metric =
        try_invert_metric(&cal, &QuantumMetric::new(catalog::metric(metric_id).unwrap())).unwrap();
    (cal, ext, metric)
}

#[test]
fn criterion_1_algebra_enumeration() {
    let mut c = Criterion::new("1 (algebra enumeration)");
    let n2 = enumerate_unital_algebras(2, true);
    c.check("n=2 commutative", n2.len() == 3, &format!("{} classes", n2.len()));
    let n3c = enumerate_unital_algebras(3, true);
    c.check("n=3 commutative", n3c.len() == 6, &format!("{} classes", n3c.len()));
    let n3 = enumerate_unital_algebras(3, false);
    let g = catalog::algebra_n3("G").unwrap();
    c.check(
        "n=3 with noncommutative includes G",
        n3.iter().any(|a| a.is_isomorphic(&g)),
        "G not found",
    );
    c.check(
        "n=3 noncommutative classes",
        n3.len() == 7,
        &format!("{} classes", n3.len()),
    );
    c.finish();
}

#[test]
fn criterion_2_calculus_enumeration() {
    let mut c = Criterion::new("2 (m=1 calculus enumeration)");
    for (label, expect) in [("A", 0usize), ("D", 0), ("E", 0), ("B", 8), ("C", 4)] {
        let alg = catalog::algebra_n3(label).unwrap();
        let got = enumerate_calculi(&alg, 1, false).len();
        c.check(
            &format!("algebra {label}"),
            got == expect,
            &format!("{got} calculi"),
        );
    }
    // C's four must match the printed families
    let c_alg = catalog::algebra_n3("C").unwrap();
    let c_cals = enumerate_calculi(&c_alg, 1, false);
    let c_fixtures: Vec<Calculus> = catalog::m1_calculus_ids("C.")
        .into_iter()
        .map(|id| catalog::calculus_m1(&id).unwrap())
        .collect();
    c.check(
        "C families match the table",
        c_cals
            .iter()
            .all(|x| c_fixtures.iter().any(|f| f.a == x.a && f.d == x.d)),
        "a computed calculus is not in the table",
    );
    let f_alg = catalog::algebra_n3("F").unwrap();
    let f_cals = enumerate_calculi(&f_alg, 1, false);
    c.check("algebra F", f_cals.len() == 14, &format!("{} calculi", f_cals.len()));
    let classes = calculus_iso_classes(&f_cals);
    let nclasses = classes.iter().max().map_or(0, |m| m + 1);
    let sizes: Vec<usize> = (0..nclasses)
        .map(|k| classes.iter().filter(|&&x| x == k).count())
        .collect();
    c.check(
        "F iso classes",
        nclasses == 2 && sizes.iter().all(|&s| s == 7),
        &format!("{nclasses} classes of sizes {sizes:?}"),
    );
    // Published figure for G. The axioms that reproduce B = 8, C = 4 and
    // F = 14 yield 6 solutions over G. The figure 48 is reproduced exactly
    // by an enumeration that leaves the unit row of the d tensor free
    // (allowing d(1) != 0, which the Leibniz rule on products with 1
    // forbids) and imposes surjectivity on the generator relations alone;
    // the same reading would give 64 over B and 32 over C instead of the
    // published 8 and 4. Asserted as published; see the analysis in the
    // repository notes.
    let g_alg = catalog::algebra_n3("G").unwrap();
    let g_count = enumerate_calculi(&g_alg, 1, false).len();
    c.check(
        "algebra G (published figure, see decisions ledger)",
        g_count == 48,
        &format!("computed {g_count}, published 48"),
    );
    c.finish();
}

#[test]
fn criterion_3_metric_layer() {
    let mut c = Criterion::new("3 (metric layer)");
    for (label, expect) in [("F", 7usize), ("B", 1), ("D", 3)] {
        let alg = catalog::algebra_n3(label).unwrap();
        let cal = Calculus::universal(&alg);
        let ext = catalog::exterior(label).unwrap();
        let metrics = invertible_qsym_metrics(&cal, &ext);
        c.check(
            &format!("{label} invertible quantum-symmetric metrics"),
            metrics.len() == expect,
            &format!("{}", metrics.len()),
        );
        if label == "F" {
            // one scaling orbit
            let base = catalog::metric("g_F.1").unwrap();
            let orbit = metrics.iter().all(|m| {
                alg.units()
                    .iter()
                    .any(|u| catalog::scale_metric(&cal, u, &base) == m.g)
            });
            c.check("F metrics form one scaling orbit", orbit, "an outside metric found");
        }
        if label == "D" {
            // beta in {1, z, z^2}: the three printed metrics
            for id in ["g_D.1", "g_D.2", "g_D.3"] {
                let g = catalog::metric(id).unwrap();
                c.check(
                    &format!("{id} present"),
                    metrics.iter().any(|m| m.g == g),
                    "missing",
                );
            }
        }
    }
    // non-invertible central metrics of the m=1 tables, verbatim
    for row in catalog::table2_rows() {
        let cal = catalog::calculus_m1(&row.calculus).unwrap();
        let mut metrics: Vec<Vec<u8>> = solve_central_metrics(&cal)
            .members()
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.to_bits())
            .collect();
        let mut expect: Vec<Vec<u8>> = row
            .metrics
            .iter()
            .map(|e| catalog::parse_element("B", 3, e).unwrap().coeffs.to_bits())
            .collect();
        metrics.sort();
        expect.sort();
        c.check(
            &format!("{} central metrics", row.calculus),
            metrics == expect,
            "set mismatch",
        );
        c.check(
            &format!("{} none invertible", row.calculus),
            metrics.iter().all(|g| {
                try_invert_metric(&cal, &QuantumMetric::new(g.clone())).is_err()
            }),
            "an invertible one found",
        );
    }
    for row in catalog::table3_rows() {
        let cal = catalog::calculus_m1(&row.calculus).unwrap();
        let mut metrics: Vec<Vec<u8>> = solve_central_metrics(&cal)
            .members()
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.to_bits())
            .collect();
        let mut expect: Vec<Vec<u8>> = row
            .metrics
            .iter()
            .map(|e| catalog::parse_element("C", 3, e).unwrap().coeffs.to_bits())
            .collect();
        metrics.sort();
        expect.sort();
        c.check(
            &format!("{} central metrics", row.calculus),
            metrics == expect,
            "set mismatch",
        );
    }
    c.finish();
}

#[test]
fn criterion_4_exterior_solutions() {
    let mut c = Criterion::new("4 (exterior solutions)");
    for (label, metric_id, expect) in [("D", "g_D.1", 3usize), ("B", "g_B", 1), ("F", "g_F.1", 7)] {
        let alg = catalog::algebra_n3(label).unwrap();
        let cal = Calculus::universal(&alg);
        let g = catalog::metric(metric_id).unwrap();
        let sols = solve_exterior(&cal, QsymFilter::Metric(&g));
        c.check(
            &format!("{label} count"),
            sols.len() == expect,
            &format!("{}", sols.len()),
        );
        let fixture = catalog::exterior(label).unwrap();
        c.check(
            &format!("{label} printed wedge matrix found"),
            sols.contains(&fixture),
            "missing",
        );
        let ExteriorData::Free1D { eps: base, .. } = &fixture else {
            unreachable!()
        };
        let multiples = sols.iter().all(|sol| {
            let ExteriorData::Free1D { eps, .. } = sol else {
                return false;
            };
            alg.units().iter().any(|u| {
                let mut scaled = vec![0u8; base.len()];
                // u . eps entrywise
                for i in 0..2 {
                    for j in 0..2 {
                        for mu in 0..3 {
                            if base[(i * 2 + j) * 3 + mu] == 0 {
                                continue;
                            }
                            for lam in 0..3 {
                                if u.get(lam) == 0 {
                                    continue;
                                }
                                for rho in 0..3 {
                                    if alg.v(lam, mu, rho) == 1 {
                                        scaled[(i * 2 + j) * 3 + rho] ^= 1;
                                    }
                                }
                            }
                        }
                    }
                }
                &scaled == eps
            })
        });
        c.check(
            &format!("{label} solutions are function multiples"),
            multiples,
            "a solution outside the orbit",
        );
    }
    c.finish();
}

#[test]
fn criterion_5_qlc_classification() {
    let mut c = Criterion::new("5 (QLC classification)");
    let expectations = [
        ("g_B", 4usize, 3usize),
        ("g_D.1", 4, 1),
        ("g_D.2", 4, 1),
        ("g_D.3", 4, 1),
        ("g_F.1", 12, 5),
        ("g_F.2", 12, 5),
        ("g_F.3", 12, 5),
        ("g_F.4", 4, 3),
    ];
    for (metric_id, count, flat_count) in expectations {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 2);
        c.check(
            &format!("{metric_id} QLC count"),
            result.connections.len() == count,
            &format!("{}", result.connections.len()),
        );
        let ids = catalog::connection_ids_for_metric(metric_id);
        let fixtures: Vec<(String, Vec<u8>)> = ids
            .iter()
            .map(|id| (id.clone(), catalog::connection(id).unwrap().1))
            .collect();
        let computed: Vec<Vec<u8>> = result.connections.iter().map(|x| x.0.gamma.clone()).collect();
        let matching = catalog::match_results(&computed, &fixtures);
        c.check(
            &format!("{metric_id} bit-for-bit match"),
            matching.complete(),
            &format!(
                "{} unmatched computed, {} unmatched fixtures",
                matching.unmatched_computed.len(),
                matching.unmatched_fixtures.len()
            ),
        );
        let mut flats = 0;
        let mut curvature_ok = true;
        for (idx, id) in &matching.matched {
            let curv = curvature(&cal, &ext, &result.connections[*idx].0);
            if curv.flat {
                flats += 1;
            }
            if curv.rho != catalog::connection_curvature(id).unwrap() {
                curvature_ok = false;
            }
        }
        c.check(
            &format!("{metric_id} flat count"),
            flats == flat_count,
            &format!("{flats}"),
        );
        c.check(
            &format!("{metric_id} curvature tensors"),
            curvature_ok,
            "a curvature differs from the printed one",
        );
        // the flat one per D family is the printed one
        if metric_id.starts_with("g_D") {
            let expected_flat = match metric_id {
                "g_D.1" => "D.1.2",
                "g_D.2" => "D.2.4",
                _ => "D.3.1",
            };
            let flat_ids: Vec<&String> = matching
                .matched
                .iter()
                .filter(|(idx, _)| curvature(&cal, &ext, &result.connections[*idx].0).flat)
                .map(|(_, id)| id)
                .collect();
            c.check(
                &format!("{metric_id} flat connection is {expected_flat}"),
                flat_ids.len() == 1 && flat_ids[0] == expected_flat,
                &format!("{flat_ids:?}"),
            );
        }
    }
    // the three remaining F scalings admit no QLC
    let (cal, ext, _) = qlc_setup("g_F.1");
    let alg = catalog::algebra_n3("F").unwrap();
    let base = catalog::metric("g_F.1").unwrap();
    let named: Vec<Vec<u8>> = ["g_F.1", "g_F.2", "g_F.3", "g_F.4"]
        .iter()
        .map(|id| catalog::metric(id).unwrap())
        .collect();
    let mut empty = 0;
    for u in alg.units() {
        let g = catalog::scale_metric(&cal, &u, &base);
        if named.contains(&g) {
            continue;
        }
        if classify_connections(&cal, &ext, &g, ClassifyMode::Qlc, 2)
            .connections
            .is_empty()
        {
            empty += 1;
        }
    }
    c.check("three F metrics admit no QLC", empty == 3, &format!("{empty}"));
    c.finish();
}

#[test]
fn criterion_6_laplacians() {
    let mut c = Criterion::new("6 (Laplacians)");
    let qdims = [
        ("g_D.1", "1"),
        ("g_D.2", "1"),
        ("g_D.3", "0"),
        ("g_B", "0"),
        ("g_F.1", "1"),
        ("g_F.2", "1"),
        ("g_F.3", "1"),
        ("g_F.4", "0"),
    ];
    for (metric_id, expect) in qdims {
        let (cal, _, metric) = qlc_setup(metric_id);
        let (label, _) = catalog::metric_context(metric_id).unwrap();
        let dim = quantum_dimension(&cal, &metric);
        c.check(
            &format!("{metric_id} quantum dimension"),
            dim == catalog::parse_element(label, 3, expect).unwrap(),
            &catalog::render_element(label, &dim),
        );
    }
    // Delta tables (including F's grouping into three Laplacians of four),
    // traces, and the vanishing proposition
    let mut massive = Vec::new();
    for group in catalog::laplacian_m2_groups() {
        let (cal, _, metric) = qlc_setup(&group.metric);
        let (label, _) = catalog::metric_context(&group.metric).unwrap();
        for conn_id in &group.connections {
            let (_, gamma) = catalog::connection(conn_id).unwrap();
            let sigma = solve_sigma(&cal, &gamma).unwrap();
            let conn = Connection {
                gamma,
                sigma: Some(sigma),
            };
            let lap = laplacian(&cal, &metric, &conn);
            let mut ok = lap.trace == group.trace;
            for (basis, value) in group.on.iter().zip(group.values.iter()) {
                let b = catalog::parse_element(label, 3, basis).unwrap();
                let v = catalog::parse_element(label, 3, value).unwrap();
                ok &= lap.apply(&b) == v;
            }
            let expect_massive: Vec<AlgebraElement> = group
                .massive
                .iter()
                .map(|e| catalog::parse_element(label, 3, e).unwrap())
                .collect();
            ok &= lap.massive_eigenvectors == expect_massive;
            c.check(&format!("{} Laplacian", conn_id), ok, "mismatch");
        }
        massive.extend(group.massive.iter().cloned());
    }
    c.check(
        "six massive eigenvectors in order",
        massive == ["y^2", "1+y+y^2", "y", "1+y+y^2", "y^2", "y"],
        &format!("{massive:?}"),
    );
    // vanishing proposition over every classified pair
    for (metric_id, _) in qdims {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let dim = quantum_dimension(&cal, &metric);
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 2);
        let mut ok = true;
        for (conn, _) in &result.connections {
            let lap = laplacian(&cal, &metric, conn);
            ok &= lap.is_zero() == dim.is_zero();
            if !lap.is_zero() {
                if lap.trace == 1 {
                    ok &= lap.kernel_dim == 2 && lap.eigen1_dim == 1 && lap.diagonalizable;
                } else {
                    ok &= lap.kernel_dim == 1 && lap.eigen1_dim == 0 && !lap.diagonalizable;
                }
            }
        }
        c.check(
            &format!("{metric_id} vanishing proposition"),
            ok,
            "Delta = 0 iff qdim = 0 failed",
        );
    }
    c.finish();
}

#[test]
fn criterion_7_ricci_einstein() {
    let mut c = Criterion::new("7 (Ricci and Einstein)");
    // lift spaces: exactly 8 of the affine form
    for (label, metric_id) in [("D", "g_D.1"), ("B", "g_B"), ("F", "g_F.1")] {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let lifts = enumerate_lifts(&cal, &ext);
        c.check(
            &format!("{label} lift count"),
            lifts.len() == 8,
            &format!("{}", lifts.len()),
        );
        let base = Lift {
            tensor: catalog::lift_base(label).unwrap(),
        };
        let alg = catalog::algebra_n3(label).unwrap();
        let affine = alg
            .elements()
            .map(|gamma| lift_offset(&cal, &base, &gamma, &metric.g))
            .all(|l| lifts.contains(&l));
        c.check(
            &format!("{label} lifts are the affine family"),
            affine,
            "a shifted lift missing",
        );
    }
    // the named lift results
    let run = |metric_id: &str, conn_id: &str, triple: [u8; 3]| {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let (label, _) = catalog::metric_context(metric_id).unwrap();
        let (_, gamma) = catalog::connection(conn_id).unwrap();
        let sigma = solve_sigma(&cal, &gamma).unwrap();
        let conn = Connection {
            gamma,
            sigma: Some(sigma),
        };
        let base = Lift {
            tensor: catalog::lift_base(label).unwrap(),
        };
        let gm = catalog::lift_gamma_metric(label).unwrap();
        let gam = catalog::lift_gamma(label, &triple).unwrap();
        let lift = lift_offset(&cal, &base, &gam, &gm);
        (ricci(&cal, &ext, &metric, &conn, &lift), metric)
    };
    for conn_id in ["D.1.1", "D.1.3", "D.1.4"] {
        let (rep, metric) = run("g_D.1", conn_id, [0, 1, 0]);
        c.check(
            &format!("{conn_id} lift (0,1,0)"),
            rep.ricci == metric.g
                && rep.scalar == AlgebraElement::one(3)
                && rep.einstein.iter().all(|&b| b == 0)
                && rep.div_ricci_zero,
            "Ricci = g, S = 1, Eins = 0 failed",
        );
    }
    for conn_id in ["D.2.1", "D.2.2", "D.2.3"] {
        let (rep, metric) = run("g_D.2", conn_id, [0, 0, 0]);
        c.check(
            &format!("{conn_id} lift (0,0,0)"),
            rep.ricci == metric.g
                && rep.scalar == AlgebraElement::one(3)
                && rep.einstein.iter().all(|&b| b == 0),
            "Ricci = g, S = 1, Eins = 0 failed",
        );
    }
    // unique non-Ricci-flat QLC with Eins = 0 per F metric with qdim = 1
    for (metric_id, special, qsym_lift) in [
        ("g_F.1", "F.1.10", [0u8, 0, 0]),
        ("g_F.2", "F.2.3", [1, 0, 0]),
        ("g_F.3", "F.3.2", [0, 0, 1]),
    ] {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let (label, _) = catalog::metric_context(metric_id).unwrap();
        let base = Lift {
            tensor: catalog::lift_base(label).unwrap(),
        };
        let gm = catalog::lift_gamma_metric(label).unwrap();
        let gam = catalog::lift_gamma(label, &qsym_lift).unwrap();
        let lift = lift_offset(&cal, &base, &gam, &gm);
        let mut eins_zero_nonflat = Vec::new();
        for conn_id in catalog::connection_ids_for_metric(metric_id) {
            let (_, gamma) = catalog::connection(&conn_id).unwrap();
            let sigma = solve_sigma(&cal, &gamma).unwrap();
            let conn = Connection {
                gamma,
                sigma: Some(sigma),
            };
            if curvature(&cal, &ext, &conn).flat {
                continue;
            }
            let rep = ricci(&cal, &ext, &metric, &conn, &lift);
            if rep.einstein.iter().all(|&b| b == 0) {
                eins_zero_nonflat.push(conn_id.clone());
            }
        }
        c.check(
            &format!("{metric_id} unique non-flat Eins = 0 connection"),
            eins_zero_nonflat == vec![special.to_string()],
            &format!("{eins_zero_nonflat:?}"),
        );
    }
    // qdim = 0 metrics: never quantum-symmetric Ricci, printed lifts conserve
    for (metric_id, conn_id, lift_triple) in [
        ("g_D.3", "D.3.2", [0u8, 1, 0]),
        ("g_B", "nabla_B.4", [0, 1, 1]),
        ("g_F.4", "F.4.2", [0, 1, 0]),
    ] {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let (label, _) = catalog::metric_context(metric_id).unwrap();
        let (_, gamma) = catalog::connection(conn_id).unwrap();
        let sigma = solve_sigma(&cal, &gamma).unwrap();
        let conn = Connection {
            gamma,
            sigma: Some(sigma),
        };
        let base = Lift {
            tensor: catalog::lift_base(label).unwrap(),
        };
        let gm = catalog::lift_gamma_metric(label).unwrap();
        // never quantum symmetric across all 8 lifts
        let mut never_qsym = true;
        for b in 0u8..8 {
            let triple = [b >> 2 & 1, b >> 1 & 1, b & 1];
            let gam = catalog::lift_gamma(label, &triple).unwrap();
            let lift = lift_offset(&cal, &base, &gam, &gm);
            let rep = ricci(&cal, &ext, &metric, &conn, &lift);
            if rep.ricci_qsym {
                never_qsym = false;
            }
        }
        c.check(
            &format!("{metric_id} Ricci never quantum symmetric"),
            never_qsym,
            "a symmetric lift found",
        );
        let gam = catalog::lift_gamma(label, &lift_triple).unwrap();
        let lift = lift_offset(&cal, &base, &gam, &gm);
        let rep = ricci(&cal, &ext, &metric, &conn, &lift);
        c.check(
            &format!("{metric_id} printed lift conserves Eins with S = 1"),
            rep.div_eins_zero && rep.scalar == AlgebraElement::one(3),
            &format!("div_eins_zero={} S={:?}", rep.div_eins_zero, rep.scalar),
        );
    }
    // cell-level table reproduction
    for target in [
        "table4", "table5", "table6", "table7", "table8", "table9", "table10", "table11",
        "table12", "table13", "table14", "table15",
    ] {
        let report = reproduce::run_target(target, 2).unwrap();
        c.check(target, report.passed(), "cell-level mismatch");
    }
    c.finish();
}

#[test]
fn criterion_8_property_suites() {
    let mut c = Criterion::new("8 (property suites)");

    // linear algebra round trips at sizes up to 64
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let mut linalg_ok = true;
    for trial in 0..40 {
        let rows = 1 + (next() % 64) as usize;
        let cols = 1 + (next() % 64) as usize;
        let mut m = F2Matrix::zeros(rows, cols);
        for r in 0..rows {
            for col in 0..cols {
                if next() % 2 == 1 {
                    m.set(r, col, true);
                }
            }
        }
        let mut x = F2Vector::zeros(cols);
        for i in 0..cols {
            if next() % 2 == 1 {
                x.set(i, true);
            }
        }
        let rhs = m.mul_vec(&x);
        let sol = solve_affine(&m, &rhs);
        linalg_ok &= sol.is_consistent();
        if let Some(_) = &sol.particular {
            for k in 0..sol.count().min(32) {
                linalg_ok &= m.mul_vec(&sol.member(k)) == rhs;
            }
        }
        linalg_ok &= m.rank() + m.kernel().len() == cols;
        let _ = trial;
    }
    c.check("linear algebra round trips", linalg_ok, "a solve failed");

    // pruned vs brute-force classification at n=3, m=1
    let c1 = catalog::calculus_m1("C.1").unwrap();
    let ext = ExteriorData::free(vec![1, 0, 0], vec![0, 0, 0]);
    let g = [0u8, 0, 1];
    let mut prune_ok = true;
    for mode in [
        ClassifyMode::Qlc,
        ClassifyMode::Wqlc,
        ClassifyMode::MetricCompatibleOnly,
    ] {
        let fast: Vec<Vec<u8>> = classify_connections(&c1, &ext, &g, mode, 2)
            .connections
            .into_iter()
            .map(|x| x.0.gamma)
            .collect();
        let brute: Vec<Vec<u8>> = classify_connections_brute(&c1, &ext, &g, mode)
            .connections
            .into_iter()
            .map(|x| x.0.gamma)
            .collect();
        prune_ok &= fast == brute;
    }
    c.check("pruned equals brute force at m=1", prune_ok, "result sets differ");

    // braiding dual derivation on every QLC, and the ambiguity diagnostic
    let mut sigma_ok = true;
    let mut ambiguous = 0;
    for metric_id in [
        "g_D.1", "g_D.2", "g_D.3", "g_B", "g_F.1", "g_F.2", "g_F.3", "g_F.4",
    ] {
        let (cal, ext, metric) = qlc_setup(metric_id);
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 2);
        ambiguous += result.ambiguous_sigma;
        for (conn, _) in &result.connections {
            let sigma = conn.sigma.as_ref().unwrap();
            sigma_ok &= sigma_recovery_identity_holds(&cal, &conn.gamma, sigma);
        }
    }
    c.check("braiding recovery route agrees on every QLC", sigma_ok, "disagreement");
    c.check(
        "no ambiguous braiding in the published configurations",
        ambiguous == 0,
        &format!("{ambiguous}"),
    );

    // determinism: byte-identical output across worker counts
    let bin = env!("CARGO_BIN_EXE_fqrg");
    let run = |workers: &str| {
        let out = Command::new(bin)
            .args([
                "classify", "F", "--m", "2", "--metric", "g_F.1", "--mode", "qlc", "--workers",
                workers, "--json",
            ])
            .output()
            .expect("classify run");
        assert!(out.status.success());
        out.stdout
    };
    let one = run("1");
    let eight = run("8");
    c.check(
        "byte-identical output across worker counts",
        one == eight && !one.is_empty(),
        "outputs differ",
    );
    c.finish();
}
