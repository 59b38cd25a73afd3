//! Command-line surface: enumerate, classify, compute invariants and
//! reproduce the published tables.

use clap::{Args, Parser, Subcommand};
use fqrg_core::algebra::{enumerate_unital_algebras, AlgebraElement};
use fqrg_core::calculus::{calculus_iso_classes, enumerate_calculi, Calculus};
use fqrg_core::catalog;
use fqrg_core::connection::{classify_connections, ClassifyMode};
use fqrg_core::geometry::{curvature, laplacian, lift_offset, ricci, Lift};
use fqrg_core::metric::{
    invertible_qsym_metrics, quantum_dimension, solve_central_metrics, try_invert_metric,
    QuantumMetric,
};
use fqrg_core::reproduce;
use fqrg_core::worker;
use fqrg_core::jsonio;
use serde_json::json;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EMPTY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fqrg",
    about = "Exact classification of digital quantum Riemannian geometries over GF(2)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Emit machine-readable JSON lines instead of the human table
    #[arg(long, global = true)]
    json: bool,
    /// Worker count for the sweeps (default: FQRG_WORKERS or all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate unital algebras up to isomorphism
    Algebras {
        /// Vector-space dimension (1..=4)
        #[arg(long)]
        n: usize,
        /// Restrict to commutative algebras
        #[arg(long)]
        commutative: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Enumerate differential calculi over a named algebra
    Calculi {
        /// Algebra label: A..G (n=3) or A2/B2/C2 (n=2)
        algebra: String,
        /// Calculus dimension
        #[arg(long)]
        m: usize,
        /// Pin the basis to the coordinate differentials (m = n-1)
        #[arg(long)]
        basis_dx: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// List central metrics of the coordinate calculus of a named algebra
    Metrics {
        algebra: String,
        /// Calculus dimension (only the coordinate calculus is supported)
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify connections for a named algebra and metric
    Classify {
        algebra: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Metric selector: a catalog id (g_D.1), beta=<function>, or "all"
        #[arg(long, default_value = "all")]
        metric: String,
        /// qlc | wqlc | compatible
        #[arg(long, default_value = "qlc")]
        mode: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Geometric invariants for named metric/connection/lift triples
    Geometry {
        /// Metric id, e.g. g_D.1
        metric: String,
        /// Connection id, e.g. D.1.1 (default: all QLCs of the metric)
        #[arg(long)]
        connection: Option<String>,
        /// Lift parameter triple, e.g. 0,1,0 (default: all eight)
        #[arg(long)]
        lift: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Recompute a published table and diff it cell by cell
    Reproduce {
        /// Target name or "all"; see `fqrg reproduce list`
        target: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Fixture inventory
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// List all fixture ids with their sources
    List {
        #[command(flatten)]
        common: CommonOpts,
    },
}

struct Manifest {
    command: String,
    workers: usize,
    started: Instant,
    result_count: usize,
    hasher: u64,
}

impl Manifest {
    fn new(command: String, workers: usize) -> Self {
        Self {
            command,
            workers,
            started: Instant::now(),
            result_count: 0,
            hasher: 0xcbf29ce484222325,
        }
    }

    fn record(&mut self, line: &str) {
        self.result_count += 1;
        for byte in line.as_bytes() {
            self.hasher ^= *byte as u64;
            self.hasher = self.hasher.wrapping_mul(0x100000001b3);
        }
    }

    fn emit(&self) {
        let manifest = json!({
            "schema": 1,
            "command": self.command,
            "workers": self.workers,
            "wall_ms": self.started.elapsed().as_millis() as u64,
            "result_count": self.result_count,
            "result_hash": format!("fnv1a64:{:016x}", self.hasher),
            "input_hash": format!("fnv1a64:{:016x}", catalog::fixtures_hash()),
            "version": env!("CARGO_PKG_VERSION"),
        });
        eprintln!("{manifest}");
    }
}

fn emit(manifest: &mut Manifest, line: String) {
    manifest.record(&line);
    println!("{line}");
}

fn algebra_by_cli_label(label: &str) -> Result<(String, fqrg_core::algebra::AlgebraStructure), String> {
    if let Some(stripped) = label.strip_suffix('2') {
        return catalog::algebra_n2(stripped)
            .map(|a| (stripped.to_string(), a))
            .map_err(|e| e.to_string());
    }
    catalog::algebra_n3(label)
        .map(|a| (label.to_string(), a))
        .map_err(|e| e.to_string())
}



fn render_metric(label: &str, g: &[u8], m: usize) -> String {
    let n = 3;
    let mut parts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let mut coeffs = vec![0u8; n];
            for mu in 0..n {
                coeffs[mu] = g[(mu * m + i) * m + j];
            }
            let elt = AlgebraElement::from_bits(&coeffs);
            if !elt.is_zero() {
                parts.push(format!(
                    "({}) w{}@w{}",
                    catalog::render_element(label, &elt),
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Algebras { n, commutative, common } => {
            if n == 0 || n > 4 {
                eprintln!("error: --n must be between 1 and 4");
                return Ok(EXIT_USAGE);
            }
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            let mut manifest = Manifest::new(format!("algebras --n {n}"), workers);
            let reps = enumerate_unital_algebras(n, commutative);
            // match against catalog labels when available
            for rep in &reps {
                let label = if n <= 3 {
                    let labels: Vec<&str> = if n == 2 {
                        vec!["A", "B", "C"]
                    } else {
                        catalog::n3_labels().to_vec()
                    };
                    labels
                        .into_iter()
                        .find(|l| {
                            let alg = if n == 2 {
                                catalog::algebra_n2(l).unwrap()
                            } else {
                                catalog::algebra_n3(l).unwrap()
                            };
                            alg.is_isomorphic(rep)
                        })
                        .unwrap_or("?")
                } else {
                    "?"
                };
                let line = if common.json {
                    json!({
                        "schema": 1,
                        "n": n,
                        "label": label,
                        "commutative": rep.commutative,
                        "V": jsonio::nested(&rep.v, &[n, n, n]),
                    })
                    .to_string()
                } else {
                    format!(
                        "algebra {label}: n={n}, commutative={}, V={:?}",
                        rep.commutative, rep.v
                    )
                };
                emit(&mut manifest, line);
            }
            manifest.emit();
            Ok(0)
        }
        Command::Calculi { algebra, m, basis_dx, common } => {
            let (_, alg) = algebra_by_cli_label(&algebra)?;
            if m == 0 || m >= alg.n {
                eprintln!("error: --m must satisfy 1 <= m <= n-1");
                return Ok(EXIT_USAGE);
            }
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            let mut manifest = Manifest::new(format!("calculi {algebra} --m {m}"), workers);
            let calculi = enumerate_calculi(&alg, m, basis_dx);
            if calculi.is_empty() {
                eprintln!("no calculi for algebra {algebra} at m={m}");
                manifest.emit();
                return Ok(EXIT_EMPTY);
            }
            let classes = calculus_iso_classes(&calculi);
            for (idx, cal) in calculi.iter().enumerate() {
                let report = cal.validate();
                let line = if common.json {
                    {
                        let mut doc = jsonio::calculus_to_json(cal, None);
                        doc["right_parallelisable"] = json!(report.right_parallelisable);
                        doc["iso_class"] = json!(classes[idx]);
                        doc["algebra"] = json!(algebra);
                        doc.to_string()
                    }
                } else {
                    format!(
                        "calculus {idx}: class {}, right_parallelisable={}, a={:?}, d={:?}",
                        classes[idx], report.right_parallelisable, cal.a, cal.d
                    )
                };
                emit(&mut manifest, line);
            }
            manifest.emit();
            Ok(0)
        }
        Command::Metrics { algebra, m, common } => {
            let (label, alg) = algebra_by_cli_label(&algebra)?;
            if m != alg.n - 1 {
                eprintln!("error: metrics are computed on the coordinate calculus (m = n-1)");
                return Ok(EXIT_USAGE);
            }
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            let mut manifest = Manifest::new(format!("metrics {algebra}"), workers);
            let cal = Calculus::universal(&alg);
            let space = solve_central_metrics(&cal);
            let ext = catalog::exterior(&label).ok();
            for member in space.members() {
                if member.is_zero() {
                    continue;
                }
                let metric = QuantumMetric::from_vector(&member);
                let inverted = try_invert_metric(&cal, &metric);
                let qsym = ext
                    .as_ref()
                    .map(|e| {
                        fqrg_core::metric::is_quantum_symmetric(&cal, &metric, e)
                    })
                    .unwrap_or(false);
                let qdim = inverted
                    .as_ref()
                    .ok()
                    .map(|inv| quantum_dimension(&cal, inv));
                let line = if common.json {
                    json!({
                        "schema": 1,
                        "algebra": label,
                        "g": jsonio::nested(&metric.g, &[3, cal.m, cal.m]),
                        "flags": {
                            "central": true,
                            "invertible": inverted.is_ok(),
                            "quantum_symmetric": qsym,
                        },
                        "qdim": qdim.as_ref().map(|q| q.coeffs.to_bits()),
                    })
                    .to_string()
                } else {
                    format!(
                        "g = {} | invertible={} qsym={} qdim={}",
                        render_metric(&label, &metric.g, cal.m),
                        inverted.is_ok(),
                        qsym,
                        qdim.map(|q| catalog::render_element(&label, &q))
                            .unwrap_or_else(|| "-".into())
                    )
                };
                emit(&mut manifest, line);
            }
            manifest.emit();
            Ok(0)
        }
        Command::Classify { algebra, m, metric, mode, common } => {
            let (label, alg) = algebra_by_cli_label(&algebra)?;
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            let mut manifest = Manifest::new(
                format!("classify {algebra} --m {m} --metric {metric} --mode {mode}"),
                workers,
            );
            let mode = match mode.as_str() {
                "qlc" => ClassifyMode::Qlc,
                "wqlc" => ClassifyMode::Wqlc,
                "compatible" => ClassifyMode::MetricCompatibleOnly,
                other => {
                    eprintln!("error: unknown mode `{other}`");
                    return Ok(EXIT_USAGE);
                }
            };
            if m != alg.n - 1 {
                // Lower-dimensional calculi have no canonical volume form;
                // classify per calculus with the zero exterior square.
                let calculi = enumerate_calculi(&alg, m, false);
                if calculi.is_empty() {
                    eprintln!("no calculi for algebra {algebra} at m={m}");
                    manifest.emit();
                    return Ok(EXIT_EMPTY);
                }
                let mut total = 0;
                for (idx, cal) in calculi.iter().enumerate() {
                    let ext = fqrg_core::exterior::ExteriorData::Zero;
                    for member in solve_central_metrics(cal).members() {
                        if member.is_zero() {
                            continue;
                        }
                        let g = member.to_bits();
                        let result = classify_connections(cal, &ext, &g, mode, workers);
                        for (conn, flags) in &result.connections {
                            total += 1;
                            let line = if common.json {
                                json!({
                                    "schema": 1,
                                    "calculus_index": idx,
                                    "metric": jsonio::nested(&g, &[alg.n, m, m]),
                                    "gamma": jsonio::nested(&conn.gamma, &[m, alg.n, m, m]),
                                    "flags": {
                                        "torsion_free": flags.torsion_free,
                                        "cotorsion_free": flags.cotorsion_free,
                                        "bimodule": flags.bimodule,
                                        "metric_compatible": flags.metric_compatible,
                                        "qlc": flags.qlc(),
                                        "wqlc": flags.wqlc(),
                                    },
                                })
                                .to_string()
                            } else {
                                format!(
                                    "calculus {idx} metric {:?}: gamma={:?} qlc={} wqlc={}",
                                    g,
                                    conn.gamma,
                                    flags.qlc(),
                                    flags.wqlc()
                                )
                            };
                            emit(&mut manifest, line);
                        }
                    }
                }
                manifest.emit();
                return Ok(if total == 0 { EXIT_EMPTY } else { 0 });
            }
            let cal = Calculus::universal(&alg);
            // canonical wedge structure: the catalog one when present, else
            // the least solution under which some invertible central metric
            // is quantum symmetric
            let ext = match catalog::exterior(&label) {
                Ok(ext) => ext,
                Err(_) => {
                    let found = fqrg_core::exterior::solve_exterior(
                        &cal,
                        fqrg_core::exterior::QsymFilter::None,
                    )
                    .into_iter()
                    .find(|candidate| !invertible_qsym_metrics(&cal, candidate).is_empty());
                    match found {
                        Some(ext) => ext,
                        None => {
                            eprintln!(
                                "no wedge structure with an invertible quantum-symmetric \
                                 metric exists for algebra {label}"
                            );
                            manifest.emit();
                            return Ok(EXIT_EMPTY);
                        }
                    }
                }
            };
            // resolve the metric selector
            let metrics: Vec<Vec<u8>> = if metric == "all" {
                invertible_qsym_metrics(&cal, &ext)
                    .into_iter()
                    .map(|m| m.g)
                    .collect()
            } else if let Some(beta_expr) = metric.strip_prefix("beta=") {
                let beta = catalog::parse_element(&label, 3, beta_expr)
                    .map_err(|e| e.to_string())?;
                let base_id = match label.as_str() {
                    "D" => "g_D.1",
                    "B" => "g_B",
                    "F" => "g_F.1",
                    _ => {
                        eprintln!("no metric family for algebra {label}");
                        manifest.emit();
                        return Ok(EXIT_EMPTY);
                    }
                };
                // the family is beta times the beta=1 member
                let base = catalog::metric(base_id).map_err(|e| e.to_string())?;
                let base = match label.as_str() {
                    // g_D.1 corresponds to beta=1; g_B is the unique one
                    "D" | "B" => base,
                    // g_F.1 is the beta=y^2 member; rescale to beta=1 first
                    _ => {
                        let y2 = catalog::parse_element("F", 3, "y^2").unwrap();
                        let inv = alg.try_invert(&y2).unwrap();
                        catalog::scale_metric(&cal, &inv, &base)
                    }
                };
                vec![catalog::scale_metric(&cal, &beta, &base)]
            } else {
                vec![catalog::metric(&metric).map_err(|e| e.to_string())?]
            };
            if metrics.is_empty() {
                eprintln!("no metric matches the selector");
                manifest.emit();
                return Ok(EXIT_EMPTY);
            }
            let mut total = 0;
            for g in &metrics {
                let result = classify_connections(&cal, &ext, g, mode, workers);
                total += result.connections.len();
                let fixtures: Vec<(String, Vec<u8>)> = catalog::metric_ids()
                    .iter()
                    .filter(|id| catalog::metric_context(id).unwrap().0 == label)
                    .flat_map(|id| catalog::connection_ids_for_metric(id))
                    .map(|id| (id.clone(), catalog::connection(&id).unwrap().1))
                    .collect();
                for (conn, flags) in &result.connections {
                    let matched = fixtures
                        .iter()
                        .find(|(_, t)| t == &conn.gamma)
                        .map(|(id, _)| id.clone());
                    let curv = curvature(&cal, &ext, conn);
                    let line = if common.json {
                        json!({
                            "schema": 1,
                            "metric": jsonio::nested(g, &[3, cal.m, cal.m]),
                            "label": matched,
                            "gamma": jsonio::nested(&conn.gamma, &[cal.m, 3, cal.m, cal.m]),
                            "sigma": conn.sigma.as_ref().map(|s| {
                                jsonio::nested(s, &[cal.m, cal.m, 3, cal.m, cal.m])
                            }),
                            "flags": {
                                "torsion_free": flags.torsion_free,
                                "cotorsion_free": flags.cotorsion_free,
                                "bimodule": flags.bimodule,
                                "metric_compatible": flags.metric_compatible,
                                "qlc": flags.qlc(),
                                "wqlc": flags.wqlc(),
                                "flat": curv.flat,
                            },
                            "curvature": jsonio::nested(&curv.rho, &[cal.m, cal.m, 3]),
                        })
                        .to_string()
                    } else {
                        format!(
                            "{} gamma={:?} flat={} qlc={} wqlc={}",
                            matched.unwrap_or_else(|| "(unlabelled)".into()),
                            conn.gamma,
                            curv.flat,
                            flags.qlc(),
                            flags.wqlc()
                        )
                    };
                    emit(&mut manifest, line);
                }
            }
            manifest.emit();
            if total == 0 {
                return Ok(EXIT_EMPTY);
            }
            Ok(0)
        }
        Command::Geometry { metric, connection, lift, common } => {
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            let mut manifest = Manifest::new(format!("geometry {metric}"), workers);
            let (label, _) = catalog::metric_context(&metric).map_err(|e| e.to_string())?;
            let alg = catalog::algebra_n3(label).map_err(|e| e.to_string())?;
            let cal = Calculus::universal(&alg);
            let ext = catalog::exterior(label).map_err(|e| e.to_string())?;
            let g = catalog::metric(&metric).map_err(|e| e.to_string())?;
            let inverted = try_invert_metric(&cal, &QuantumMetric::new(g))
                .map_err(|e| e.to_string())?;
            let conn_ids = match connection {
                Some(id) => vec![id],
                None => catalog::connection_ids_for_metric(&metric),
            };
            let triples: Vec<Vec<u8>> = match lift {
                Some(spec) => {
                    let bits: Vec<u8> = spec
                        .split(',')
                        .map(|s| s.trim().parse::<u8>().map_err(|e| e.to_string()))
                        .collect::<Result<_, _>>()?;
                    if bits.len() != 3 {
                        eprintln!("error: --lift needs three bits, e.g. 0,1,0");
                        return Ok(EXIT_USAGE);
                    }
                    vec![bits]
                }
                None => (0u8..8)
                    .map(|b| vec![(b >> 2) & 1, (b >> 1) & 1, b & 1])
                    .collect(),
            };
            let base = Lift {
                tensor: catalog::lift_base(label).map_err(|e| e.to_string())?,
            };
            let mut rows = 0;
            for conn_id in &conn_ids {
                let (_, gamma) = catalog::connection(conn_id).map_err(|e| e.to_string())?;
                let sigma = fqrg_core::connection::solve_sigma(&cal, &gamma)
                    .map_err(|e| e.to_string())?;
                let conn = fqrg_core::connection::Connection {
                    gamma,
                    sigma: Some(sigma),
                };
                let lap = laplacian(&cal, &inverted, &conn);
                let gamma_metric = catalog::lift_gamma_metric(label).map_err(|e| e.to_string())?;
                for triple in &triples {
                    let gamma_fn = catalog::lift_gamma(label, triple).map_err(|e| e.to_string())?;
                    let lift = lift_offset(&cal, &base, &gamma_fn, &gamma_metric);
                    let rep = ricci(&cal, &ext, &inverted, &conn, &lift);
                    rows += 1;
                    let line = if common.json {
                        json!({
                            "schema": 1,
                            "metric": metric,
                            "connection": conn_id,
                            "lift": triple,
                            "ricci": jsonio::nested(&rep.ricci, &[3, 2, 2]),
                            "scalar": rep.scalar.coeffs.to_bits(),
                            "einstein": jsonio::nested(&rep.einstein, &[3, 2, 2]),
                            "flags": {
                                "ricci_central": rep.ricci_central,
                                "ricci_qsym": rep.ricci_qsym,
                                "div_ricci_zero": rep.div_ricci_zero,
                                "div_eins_zero": rep.div_eins_zero,
                            },
                            "laplacian": {
                                "matrix": lap.matrix,
                                "trace": lap.trace,
                                "kernel_dim": lap.kernel_dim,
                                "eigen1_dim": lap.eigen1_dim,
                            },
                        })
                        .to_string()
                    } else {
                        format!(
                            "{conn_id} lift={:?}: S={} qsym={} divRicci0={} divEins0={}",
                            triple,
                            catalog::render_element(label, &rep.scalar),
                            rep.ricci_qsym,
                            rep.div_ricci_zero,
                            rep.div_eins_zero
                        )
                    };
                    emit(&mut manifest, line);
                }
            }
            manifest.emit();
            if rows == 0 {
                return Ok(EXIT_EMPTY);
            }
            Ok(0)
        }
        Command::Reproduce { target, common } => {
            let workers = common.workers.unwrap_or_else(worker::default_workers);
            if target == "list" {
                for t in reproduce::TARGETS {
                    println!("{t}");
                }
                return Ok(0);
            }
            let mut manifest = Manifest::new(format!("reproduce {target}"), workers);
            let reports = if target == "all" {
                reproduce::run_all(workers)
            } else {
                match reproduce::run_target(&target, workers) {
                    Some(r) => vec![r],
                    None => {
                        eprintln!(
                            "error: unknown target `{target}`; see `fqrg reproduce list`"
                        );
                        return Ok(EXIT_USAGE);
                    }
                }
            };
            let mut all_pass = true;
            for report in &reports {
                all_pass &= report.passed();
                if common.json {
                    let line = serde_json::to_string(report).unwrap();
                    emit(&mut manifest, line);
                } else {
                    for line in report.render_text().lines() {
                        emit(&mut manifest, line.to_string());
                    }
                }
            }
            manifest.emit();
            Ok(if all_pass { 0 } else { EXIT_MISMATCH })
        }
        Command::Fixtures { action } => {
            let FixturesAction::List { common } = action;
            let mut manifest = Manifest::new("fixtures list".into(), 1);
            for entry in catalog::manifest() {
                let line = if common.json {
                    json!({"schema": 1, "id": entry.id, "kind": entry.kind, "source": entry.source})
                        .to_string()
                } else {
                    format!("{:<12} {:<12} {}", entry.id, entry.kind, entry.source)
                };
                emit(&mut manifest, line);
            }
            manifest.emit();
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
