//! Golden fixtures: the named algebras, calculi, metrics, exterior data,
//! connections and expected table values, stored as reviewable JSON data and
//! matched against computed objects by exact tensor equality.

use crate::algebra::{AlgebraElement, AlgebraMap, AlgebraStructure};
use crate::calculus::Calculus;
use crate::error::CatalogError;
use crate::exterior::ExteriorData;
use crate::f2::F2Matrix;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;

const ALGEBRAS_JSON: &str = include_str!("../fixtures/algebras.json");
const CALCULI_JSON: &str = include_str!("../fixtures/calculi.json");
const EXTERIOR_JSON: &str = include_str!("../fixtures/exterior.json");
const METRICS_JSON: &str = include_str!("../fixtures/metrics.json");
const CONNECTIONS_JSON: &str = include_str!("../fixtures/connections.json");
const LIFTS_JSON: &str = include_str!("../fixtures/lifts.json");
const LAPLACIANS_JSON: &str = include_str!("../fixtures/laplacians.json");
const RICCI_JSON: &str = include_str!("../fixtures/ricci.json");
const TABLE1_JSON: &str = include_str!("../fixtures/table1.json");
const TABLE23_JSON: &str = include_str!("../fixtures/table23.json");
const MANIFEST_JSON: &str = include_str!("../fixtures/manifest.json");

#[derive(Deserialize)]
struct AlgebraFixture {
    id: String,
    n: usize,
    /// products of the non-unit generators, e.g. "xx": "y"
    products: BTreeMap<String, String>,
    #[serde(default)]
    commutative_expected: Option<bool>,
}

#[derive(Deserialize)]
struct AlgebrasFile {
    schema: u32,
    algebras: Vec<AlgebraFixture>,
}

#[derive(Deserialize)]
struct CalculusFixture {
    id: String,
    algebra: String,
    #[serde(default)]
    dx: Option<String>,
    #[serde(default)]
    dy: Option<String>,
    /// omega . x as a left-coefficient function
    #[serde(default)]
    wx: Option<String>,
    #[serde(default)]
    wy: Option<String>,
    /// alternatively: this calculus is the image of another one under the
    /// generator swap
    #[serde(default)]
    swap_of: Option<String>,
}

#[derive(Deserialize)]
struct CalculiFile {
    schema: u32,
    m1: Vec<CalculusFixture>,
}

#[derive(Deserialize)]
struct ExteriorFixture {
    algebra: String,
    eps: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct ExteriorFile {
    schema: u32,
    free1d: Vec<ExteriorFixture>,
}

#[derive(Deserialize)]
struct MetricFixture {
    id: String,
    algebra: String,
    g: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct MetricsFile {
    schema: u32,
    metrics: Vec<MetricFixture>,
}

#[derive(Deserialize)]
pub struct ConnectionFixture {
    pub id: String,
    pub metric: String,
    /// `nabla[i][k][m]` coefficient expressions
    nabla: Vec<Vec<Vec<String>>>,
    /// `curv[i][j]` coefficient expressions
    curv: Vec<Vec<String>>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct ConnectionsFile {
    schema: u32,
    connections: Vec<ConnectionFixture>,
}

#[derive(Deserialize)]
struct LiftFixture {
    algebra: String,
    /// `base[i][j]` coefficient expressions of the particular lift
    base: Vec<Vec<String>>,
    /// gamma basis monomials defining the lift labels `(g1, g2, g3)`
    gamma_basis: Vec<String>,
    /// the metric the printed lift labels multiply gamma with; the family's
    /// base member, used for every metric of the family
    gamma_metric: String,
}

#[derive(Deserialize)]
struct LiftsFile {
    schema: u32,
    lifts: Vec<LiftFixture>,
}

#[derive(Deserialize, Clone)]
pub struct LaplacianGroupFixture {
    pub metric: String,
    pub connections: Vec<String>,
    /// images of the basis monomials under Delta
    pub on: Vec<String>,
    pub values: Vec<String>,
    pub trace: u8,
    #[serde(default)]
    pub massive: Vec<String>,
}

#[derive(Deserialize, Clone)]
pub struct LaplacianM1Fixture {
    pub algebra: String,
    pub g: String,
    pub gamma: String,
    pub delta_x: String,
    pub qdim: String,
}

#[derive(Deserialize)]
struct LaplaciansFile {
    schema: u32,
    m2_groups: Vec<LaplacianGroupFixture>,
    m1: Vec<LaplacianM1Fixture>,
}

/// A tensor affine in the lift parameters `(gamma_1, gamma_2, gamma_3)`.
#[derive(Deserialize, Clone)]
pub struct AffineTensorFixture {
    #[serde(rename = "const")]
    pub constant: Vec<Vec<String>>,
    pub g1: Vec<Vec<String>>,
    pub g2: Vec<Vec<String>>,
    pub g3: Vec<Vec<String>>,
}

#[derive(Deserialize, Clone)]
pub struct AffineScalarFixture {
    #[serde(rename = "const")]
    pub constant: String,
    pub g1: String,
    pub g2: String,
    pub g3: String,
}

/// One table block: a group of connections sharing printed Ricci data.
#[derive(Deserialize, Clone)]
pub struct RicciBlockFixture {
    pub table: String,
    pub metric: String,
    pub connections: Vec<String>,
    #[serde(default)]
    pub flat: bool,
    #[serde(default)]
    pub ricci: Option<AffineTensorFixture>,
    #[serde(default)]
    pub scalar: Option<AffineScalarFixture>,
    #[serde(default)]
    pub eins: Option<AffineTensorFixture>,
    /// lift triples (bits of gamma_1, gamma_2, gamma_3); "all" handled via
    /// `central_all`
    #[serde(default)]
    pub central_all: bool,
    #[serde(default)]
    pub central: Vec<Vec<u8>>,
    #[serde(default)]
    pub qsym: Vec<Vec<u8>>,
    #[serde(default)]
    pub div_ricci: Vec<Vec<u8>>,
    #[serde(default)]
    pub div_eins: Vec<Vec<u8>>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct RicciFile {
    schema: u32,
    blocks: Vec<RicciBlockFixture>,
}

#[derive(Deserialize, Clone)]
pub struct Table1AlgebraFixture {
    pub id: String,
    pub metrics: Vec<String>,
    /// metric expr -> listed compatible Gammas (any exterior)
    pub compatible: BTreeMap<String, Table1SetFixture>,
    /// metric expr -> cotorsion-free Gammas in the rank-one exterior
    pub cotorsion: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize, Clone)]
pub struct Table1SetFixture {
    pub listed: Vec<String>,
    #[serde(default)]
    pub known_extra: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct Table1File {
    schema: u32,
    algebras: Vec<Table1AlgebraFixture>,
}

#[derive(Deserialize, Clone)]
pub struct Table2RowFixture {
    pub calculus: String,
    pub metrics: Vec<String>,
    #[serde(default)]
    pub duplicate_label: Option<String>,
}

#[derive(Deserialize, Clone)]
pub struct CurvaturePolyFixture {
    /// per basis monomial: list of monomials in the Gamma coefficients
    pub coeffs: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Deserialize, Clone)]
pub struct Table3RowFixture {
    pub calculus: String,
    pub metrics: Vec<String>,
    #[serde(default)]
    pub duplicate_label: Option<String>,
    /// the unique compatible metric and the excluded Gammas, when any
    #[serde(default)]
    pub compatible_metric: Option<String>,
    #[serde(default)]
    pub compatible_excluded: Vec<String>,
    #[serde(default)]
    pub cotorsion_excluded: Vec<String>,
    pub curvature: CurvaturePolyFixture,
}

#[derive(Deserialize)]
struct Table23File {
    schema: u32,
    table2: Vec<Table2RowFixture>,
    table3: Vec<Table3RowFixture>,
}

#[derive(Deserialize, Clone)]
pub struct ManifestEntry {
    pub id: String,
    pub kind: String,
    pub source: String,
}

#[derive(Deserialize)]
struct ManifestFile {
    schema: u32,
    fixtures: Vec<ManifestEntry>,
}

struct CatalogData {
    algebras: AlgebrasFile,
    calculi: CalculiFile,
    exterior: ExteriorFile,
    metrics: MetricsFile,
    connections: ConnectionsFile,
    lifts: LiftsFile,
    laplacians: LaplaciansFile,
    ricci: RicciFile,
    table1: Table1File,
    table23: Table23File,
    manifest: ManifestFile,
}

fn data() -> &'static CatalogData {
    static DATA: OnceLock<CatalogData> = OnceLock::new();
    DATA.get_or_init(|| {
        let d = CatalogData {
            algebras: serde_json::from_str(ALGEBRAS_JSON).expect("algebras.json"),
            calculi: serde_json::from_str(CALCULI_JSON).expect("calculi.json"),
            exterior: serde_json::from_str(EXTERIOR_JSON).expect("exterior.json"),
            metrics: serde_json::from_str(METRICS_JSON).expect("metrics.json"),
            connections: serde_json::from_str(CONNECTIONS_JSON).expect("connections.json"),
            lifts: serde_json::from_str(LIFTS_JSON).expect("lifts.json"),
            laplacians: serde_json::from_str(LAPLACIANS_JSON).expect("laplacians.json"),
            ricci: serde_json::from_str(RICCI_JSON).expect("ricci.json"),
            table1: serde_json::from_str(TABLE1_JSON).expect("table1.json"),
            table23: serde_json::from_str(TABLE23_JSON).expect("table23.json"),
            manifest: serde_json::from_str(MANIFEST_JSON).expect("manifest.json"),
        };
        assert!(
            d.algebras.schema == 1
                && d.calculi.schema == 1
                && d.exterior.schema == 1
                && d.metrics.schema == 1
                && d.connections.schema == 1
                && d.lifts.schema == 1
                && d.laplacians.schema == 1
                && d.ricci.schema == 1
                && d.table1.schema == 1
                && d.table23.schema == 1
                && d.manifest.schema == 1
        );
        d
    })
}

/// Parse a coefficient expression ("1+x+y", "z+z^2", "y^2", "0") into an
/// element of the labelled algebra's basis.
pub fn parse_element(alg_label: &str, n: usize, expr: &str) -> Result<AlgebraElement, CatalogError> {
    let mut out = AlgebraElement::zero(n);
    let expr = expr.trim();
    if expr.is_empty() {
        return Err(CatalogError::Malformed("empty coefficient".into()));
    }
    for part in expr.split('+') {
        let monomial = part.trim();
        let coeffs: Vec<u8> = match (n, alg_label, monomial) {
            (_, _, "0") => continue,
            (2, _, "1") => vec![1, 0],
            (2, _, "x") => vec![0, 1],
            (3, _, "1") => vec![1, 0, 0],
            (3, _, "x") => vec![0, 1, 0],
            (3, _, "y") => vec![0, 0, 1],
            (3, "D", "z") => vec![1, 1, 0],
            (3, "D", "z^2") => vec![1, 0, 1],
            (3, "F", "y^2") => vec![0, 1, 0],
            _ => {
                return Err(CatalogError::Malformed(format!(
                    "unknown monomial `{monomial}` for algebra {alg_label}"
                )))
            }
        };
        let term = AlgebraElement::from_bits(&coeffs);
        out = out.add(&term);
    }
    Ok(out)
}

/// Render an element in the display basis of the labelled algebra.
pub fn render_element(alg_label: &str, f: &AlgebraElement) -> String {
    let n = f.coeffs.len();
    let monomials: Vec<(&str, Vec<u8>)> = match (n, alg_label) {
        (2, _) => vec![("1", vec![1, 0]), ("x", vec![0, 1])],
        (3, "D") => vec![
            ("1", vec![1, 0, 0]),
            ("z", vec![1, 1, 0]),
            ("z^2", vec![1, 0, 1]),
        ],
        (3, "F") => vec![
            ("1", vec![1, 0, 0]),
            ("y", vec![0, 0, 1]),
            ("y^2", vec![0, 1, 0]),
        ],
        _ => vec![
            ("1", vec![1, 0, 0]),
            ("x", vec![0, 1, 0]),
            ("y", vec![0, 0, 1]),
        ],
    };
    // Solve for the coordinates in the display basis; all the display bases
    // here are genuine bases, so this terminates.
    let mut mat = F2Matrix::zeros(n, monomials.len());
    for (col, (_, bits)) in monomials.iter().enumerate() {
        for (row, &b) in bits.iter().enumerate() {
            if b == 1 {
                mat.set(row, col, true);
            }
        }
    }
    let sol = crate::f2::solve_affine(&mat, &f.coeffs);
    let coords = sol.particular.expect("display basis spans the algebra");
    let parts: Vec<&str> = monomials
        .iter()
        .enumerate()
        .filter(|(i, _)| coords.get(*i))
        .map(|(_, (name, _))| *name)
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn algebra_by(n: usize, label: &str) -> Result<AlgebraStructure, CatalogError> {
    let fixture = data()
        .algebras
        .algebras
        .iter()
        .find(|a| a.n == n && a.id == label)
        .ok_or_else(|| CatalogError::UnknownFixture(format!("{label}@n{n}")))?;
    let gens = n - 1;
    let mut products = vec![vec![vec![0u8; n]; gens]; gens];
    for (key, value) in &fixture.products {
        let bytes: Vec<char> = key.chars().collect();
        if bytes.len() != 2 {
            return Err(CatalogError::Malformed(format!("bad product key {key}")));
        }
        let idx = |c: char| -> Result<usize, CatalogError> {
            match c {
                'x' => Ok(0),
                'y' => Ok(1),
                _ => Err(CatalogError::Malformed(format!("bad generator {c}"))),
            }
        };
        let (i, j) = (idx(bytes[0])?, idx(bytes[1])?);
        let elt = parse_element(label, n, value)?;
        products[i][j] = elt.coeffs.to_bits();
    }
    let alg = AlgebraStructure::from_products(n, &products).with_label(label);
    let report = alg.validate();
    debug_assert!(report.unital && report.associative, "fixture {label}@n{n}");
    if let Some(expected) = fixture.commutative_expected {
        debug_assert_eq!(report.commutative, expected);
    }
    Ok(alg)
}

/// The three n=2 algebras of the classification, by label A/B/C.
pub fn algebra_n2(label: &str) -> Result<AlgebraStructure, CatalogError> {
    algebra_by(2, label)
}

/// The seven n=3 algebras, by label A..G.
pub fn algebra_n3(label: &str) -> Result<AlgebraStructure, CatalogError> {
    algebra_by(3, label)
}

pub fn n3_labels() -> [&'static str; 7] {
    ["A", "B", "C", "D", "E", "F", "G"]
}

fn swap_xy_map() -> AlgebraMap {
    AlgebraMap {
        matrix: F2Matrix::from_dense(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0]),
    }
}

/// A named m=1 calculus from the classification tables (B.1..B.8, C.1..C.4,
/// F.1..F.14).
pub fn calculus_m1(id: &str) -> Result<Calculus, CatalogError> {
    let fixture = data()
        .calculi
        .m1
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CatalogError::UnknownFixture(id.to_string()))?;
    if let Some(base) = &fixture.swap_of {
        let base_cal = calculus_m1(base)?;
        return Ok(base_cal.transport(&swap_xy_map()).with_label(id));
    }
    let alg = algebra_n3(&fixture.algebra)?;
    let n = 3;
    let m = 1;
    let parse = |s: &Option<String>| -> Result<Vec<u8>, CatalogError> {
        let s = s
            .as_ref()
            .ok_or_else(|| CatalogError::Malformed(format!("{id}: missing relation")))?;
        Ok(parse_element(&fixture.algebra, n, s)?.coeffs.to_bits())
    };
    let dx = parse(&fixture.dx)?;
    let dy = parse(&fixture.dy)?;
    let wx = parse(&fixture.wx)?;
    let wy = parse(&fixture.wy)?;
    let mut a = vec![0u8; m * n * n * m];
    let mut d = vec![0u8; n * n * m];
    for nu in 0..n {
        a[nu] = (nu == 0) as u8;
        a[n + nu] = wx[nu];
        a[2 * n + nu] = wy[nu];
        d[(n + nu) * m] = dx[nu];
        d[(2 * n + nu) * m] = dy[nu];
    }
    Ok(Calculus::new(alg, m, a, d).with_label(id))
}

pub fn m1_calculus_ids(prefix: &str) -> Vec<String> {
    data()
        .calculi
        .m1
        .iter()
        .filter(|c| c.id.starts_with(prefix))
        .map(|c| c.id.clone())
        .collect()
}

/// Canonical rank-one exterior data of the named algebra's coordinate
/// calculus ("D", "B", "F").
pub fn exterior(alg_label: &str) -> Result<ExteriorData, CatalogError> {
    let fixture = data()
        .exterior
        .free1d
        .iter()
        .find(|e| e.algebra == alg_label)
        .ok_or_else(|| CatalogError::UnknownFixture(format!("exterior {alg_label}")))?;
    let n = 3;
    let m = 2;
    let mut eps = vec![0u8; m * m * n];
    for i in 0..m {
        for j in 0..m {
            let elt = parse_element(alg_label, n, &fixture.eps[i][j])?;
            for mu in 0..n {
                eps[(i * m + j) * n + mu] = elt.get(mu);
            }
        }
    }
    Ok(ExteriorData::free(eps, vec![0u8; m * n]))
}

/// A named metric tensor in the layout `[mu][i][j]`.
pub fn metric(id: &str) -> Result<Vec<u8>, CatalogError> {
    let fixture = data()
        .metrics
        .metrics
        .iter()
        .find(|g| g.id == id)
        .ok_or_else(|| CatalogError::UnknownFixture(id.to_string()))?;
    let n = 3;
    let m = fixture.g.len();
    let mut g = vec![0u8; n * m * m];
    for i in 0..m {
        for j in 0..m {
            let elt = parse_element(&fixture.algebra, n, &fixture.g[i][j])?;
            for mu in 0..n {
                g[(mu * m + i) * m + j] = elt.get(mu);
            }
        }
    }
    Ok(g)
}

/// Algebra label and metric family for a metric id like "g_D.1".
pub fn metric_context(id: &str) -> Result<(&'static str, String), CatalogError> {
    let fixture = data()
        .metrics
        .metrics
        .iter()
        .find(|g| g.id == id)
        .ok_or_else(|| CatalogError::UnknownFixture(id.to_string()))?;
    let label = n3_labels()
        .into_iter()
        .find(|l| *l == fixture.algebra)
        .ok_or_else(|| CatalogError::Malformed(format!("bad algebra label {}", fixture.algebra)))?;
    Ok((label, fixture.id.clone()))
}

pub fn metric_ids() -> Vec<String> {
    data().metrics.metrics.iter().map(|m| m.id.clone()).collect()
}

/// Left-multiply a metric tensor by an algebra element.
pub fn scale_metric(cal: &Calculus, u: &AlgebraElement, g: &[u8]) -> Vec<u8> {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let mut out = vec![0u8; n * m * m];
    for mu in 0..n {
        for i in 0..m {
            for j in 0..m {
                if g[(mu * m + i) * m + j] == 0 {
                    continue;
                }
                for lam in 0..n {
                    if u.get(lam) == 0 {
                        continue;
                    }
                    for rho in 0..n {
                        if alg.v(lam, mu, rho) == 1 {
                            out[(rho * m + i) * m + j] ^= 1;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Base lift `I_0` (layout `[i][j][mu]`) for the named algebra.
pub fn lift_base(alg_label: &str) -> Result<Vec<u8>, CatalogError> {
    let fixture = data()
        .lifts
        .lifts
        .iter()
        .find(|l| l.algebra == alg_label)
        .ok_or_else(|| CatalogError::UnknownFixture(format!("lift {alg_label}")))?;
    let n = 3;
    let m = 2;
    let mut t = vec![0u8; m * m * n];
    for i in 0..m {
        for j in 0..m {
            let elt = parse_element(alg_label, n, &fixture.base[i][j])?;
            for mu in 0..n {
                t[(i * m + j) * n + mu] = elt.get(mu);
            }
        }
    }
    Ok(t)
}

/// The lift parameter `gamma = g1 b1 + g2 b2 + g3 b3` in the algebra's lift
/// basis.
pub fn lift_gamma(alg_label: &str, triple: &[u8]) -> Result<AlgebraElement, CatalogError> {
    let fixture = data()
        .lifts
        .lifts
        .iter()
        .find(|l| l.algebra == alg_label)
        .ok_or_else(|| CatalogError::UnknownFixture(format!("lift {alg_label}")))?;
    let mut out = AlgebraElement::zero(3);
    for (bit, monomial) in triple.iter().zip(fixture.gamma_basis.iter()) {
        if *bit == 1 {
            out = out.add(&parse_element(alg_label, 3, monomial)?);
        }
    }
    Ok(out)
}

/// The metric multiplying `gamma` in the printed lift labels (the family's
/// base member, shared by every metric of the family).
pub fn lift_gamma_metric(alg_label: &str) -> Result<Vec<u8>, CatalogError> {
    let fixture = data()
        .lifts
        .lifts
        .iter()
        .find(|l| l.algebra == alg_label)
        .ok_or_else(|| CatalogError::UnknownFixture(format!("lift {alg_label}")))?;
    metric(&fixture.gamma_metric)
}

/// A named connection's Christoffel tensor (layout `[i][nu][k][m]`) together
/// with its metric id.
pub fn connection(id: &str) -> Result<(String, Vec<u8>), CatalogError> {
    let fixture = connection_fixture(id)?;
    let (alg_label, _) = metric_context(&fixture.metric)?;
    let n = 3;
    let m = 2;
    let mut gamma = vec![0u8; m * n * m * m];
    for i in 0..m {
        for k in 0..m {
            for mm in 0..m {
                let elt = parse_element(alg_label, n, &fixture.nabla[i][k][mm])?;
                for nu in 0..n {
                    gamma[((i * n + nu) * m + k) * m + mm] = elt.get(nu);
                }
            }
        }
    }
    Ok((fixture.metric.clone(), gamma))
}

/// A named connection's printed curvature (layout `[i][j][beta]`).
pub fn connection_curvature(id: &str) -> Result<Vec<u8>, CatalogError> {
    let fixture = connection_fixture(id)?;
    let (alg_label, _) = metric_context(&fixture.metric)?;
    let n = 3;
    let m = 2;
    let mut rho = vec![0u8; m * m * n];
    for i in 0..m {
        for j in 0..m {
            let elt = parse_element(alg_label, n, &fixture.curv[i][j])?;
            for beta in 0..n {
                rho[(i * m + j) * n + beta] = elt.get(beta);
            }
        }
    }
    Ok(rho)
}

/// Access to a connection fixture's metadata (id, metric, note).
pub fn load_connection_fixture(id: &str) -> Result<&'static ConnectionFixture, CatalogError> {
    connection_fixture(id)
}

fn connection_fixture(id: &str) -> Result<&'static ConnectionFixture, CatalogError> {
    data()
        .connections
        .connections
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CatalogError::UnknownFixture(id.to_string()))
}

pub fn connection_ids_for_metric(metric_id: &str) -> Vec<String> {
    data()
        .connections
        .connections
        .iter()
        .filter(|c| c.metric == metric_id)
        .map(|c| c.id.clone())
        .collect()
}

pub fn laplacian_m2_groups() -> &'static [LaplacianGroupFixture] {
    &data().laplacians.m2_groups
}

pub fn laplacian_m1_rows() -> &'static [LaplacianM1Fixture] {
    &data().laplacians.m1
}

pub fn ricci_blocks() -> &'static [RicciBlockFixture] {
    &data().ricci.blocks
}

pub fn table1_algebras() -> &'static [Table1AlgebraFixture] {
    &data().table1.algebras
}

pub fn table2_rows() -> &'static [Table2RowFixture] {
    &data().table23.table2
}

pub fn table3_rows() -> &'static [Table3RowFixture] {
    &data().table23.table3
}

pub fn manifest() -> &'static [ManifestEntry] {
    &data().manifest.fixtures
}

/// FNV-1a hash over every embedded fixture document, for run manifests.
pub fn fixtures_hash() -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for text in [
        ALGEBRAS_JSON,
        CALCULI_JSON,
        EXTERIOR_JSON,
        METRICS_JSON,
        CONNECTIONS_JSON,
        LIFTS_JSON,
        LAPLACIANS_JSON,
        RICCI_JSON,
        TABLE1_JSON,
        TABLE23_JSON,
        MANIFEST_JSON,
    ] {
        for byte in text.as_bytes() {
            h ^= *byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Evaluate an affine tensor fixture at a lift triple, producing the tensor
/// in metric layout `[mu][i][j]`.
pub fn eval_affine_tensor(
    alg_label: &str,
    fixture: &AffineTensorFixture,
    triple: &[u8],
) -> Result<Vec<u8>, CatalogError> {
    let n = 3;
    let m = 2;
    let mut out = vec![0u8; n * m * m];
    let blocks: [(&Vec<Vec<String>>, u8); 4] = [
        (&fixture.constant, 1),
        (&fixture.g1, triple[0]),
        (&fixture.g2, triple[1]),
        (&fixture.g3, triple[2]),
    ];
    for (block, weight) in blocks {
        if weight == 0 {
            continue;
        }
        for i in 0..m {
            for j in 0..m {
                let elt = parse_element(alg_label, n, &block[i][j])?;
                for mu in 0..n {
                    out[(mu * m + i) * m + j] ^= elt.get(mu);
                }
            }
        }
    }
    Ok(out)
}

/// Evaluate an affine scalar fixture at a lift triple.
pub fn eval_affine_scalar(
    alg_label: &str,
    fixture: &AffineScalarFixture,
    triple: &[u8],
) -> Result<AlgebraElement, CatalogError> {
    let mut out = AlgebraElement::zero(3);
    let parts: [(&String, u8); 4] = [
        (&fixture.constant, 1),
        (&fixture.g1, triple[0]),
        (&fixture.g2, triple[1]),
        (&fixture.g3, triple[2]),
    ];
    for (expr, weight) in parts {
        if weight == 1 {
            out = out.add(&parse_element(alg_label, 3, expr)?);
        }
    }
    Ok(out)
}

/// Evaluate a curvature polynomial fixture at Gamma coefficients `n0,n1,n2`.
pub fn eval_curvature_poly(
    poly: &CurvaturePolyFixture,
    nbits: &[u8; 3],
) -> Result<AlgebraElement, CatalogError> {
    let mut out = AlgebraElement::zero(3);
    for (basis, monomials) in &poly.coeffs {
        let basis_elt = parse_element("C", 3, basis)?;
        let mut coeff = 0u8;
        for monomial in monomials {
            let mut term = 1u8;
            for var in monomial {
                let bit = match var.as_str() {
                    "n0" => nbits[0],
                    "n1" => nbits[1],
                    "n2" => nbits[2],
                    "1" => 1,
                    other => {
                        return Err(CatalogError::Malformed(format!("bad variable {other}")))
                    }
                };
                term &= bit;
            }
            coeff ^= term;
        }
        if coeff == 1 {
            out = out.add(&basis_elt);
        }
    }
    Ok(out)
}

/// Result of matching computed objects against fixture ids by exact tensor
/// equality. The matching is injective because fixtures are pairwise
/// distinct tensors.
#[derive(Clone, Debug, Default)]
pub struct MatchReport {
    pub matched: Vec<(usize, String)>,
    pub unmatched_computed: Vec<usize>,
    pub unmatched_fixtures: Vec<String>,
}

impl MatchReport {
    pub fn complete(&self) -> bool {
        self.unmatched_computed.is_empty() && self.unmatched_fixtures.is_empty()
    }
}

/// Match computed tensors to `(id, tensor)` fixtures by equality.
pub fn match_results(computed: &[Vec<u8>], fixtures: &[(String, Vec<u8>)]) -> MatchReport {
    let mut report = MatchReport::default();
    let mut used = vec![false; fixtures.len()];
    for (idx, tensor) in computed.iter().enumerate() {
        let hit = fixtures
            .iter()
            .enumerate()
            .find(|(fi, (_, ft))| !used[*fi] && ft == tensor);
        match hit {
            Some((fi, (id, _))) => {
                used[fi] = true;
                report.matched.push((idx, id.clone()));
            }
            None => report.unmatched_computed.push(idx),
        }
    }
    for (fi, (id, _)) in fixtures.iter().enumerate() {
        if !used[fi] {
            report.unmatched_fixtures.push(id.clone());
        }
    }
    report
}

/// Load a named fixture id, reporting which kind it is; used by the CLI
/// `fixtures` listing and by error paths.
pub fn load_fixture(id: &str) -> Result<&'static ManifestEntry, CatalogError> {
    manifest()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| CatalogError::UnknownFixture(id.to_string()))
}
