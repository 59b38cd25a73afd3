//! Geometric invariants of a classified connection: curvature, Laplacian,
//! lifting maps, Ricci and Einstein tensors, and divergences.

use crate::algebra::AlgebraElement;
use crate::calculus::Calculus;
use crate::connection::Connection;
use crate::exterior::ExteriorData;
use crate::f2::{solve_affine, F2Matrix, F2Vector};
use crate::metric::{centrality_matrix, QuantumMetric};

#[inline]
fn gbit(n: usize, m: usize, i: usize, nu: usize, k: usize, mm: usize) -> usize {
    ((i * n + nu) * m + k) * m + mm
}

#[inline]
fn sbit(n: usize, m: usize, r: usize, j: usize, beta: usize, k: usize, mm: usize) -> usize {
    (((r * m + j) * n + beta) * m + k) * m + mm
}

/// Riemann curvature components `R omega^i = rho^i_{j beta} x^beta Vol (x) omega^j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureComponents {
    /// Index order `[i][j][beta]`.
    pub rho: Vec<u8>,
    pub flat: bool,
}

/// Curvature of a connection in the rank-one exterior structure.
/// In the `Omega^2 = 0` quotient every connection is flat.
pub fn curvature(cal: &Calculus, ext: &ExteriorData, conn: &Connection) -> CurvatureComponents {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let gamma = &conn.gamma;
    let mut rho = vec![0u8; m * m * n];
    if let ExteriorData::Free1D { eps, tau } = ext {
        for i in 0..m {
            for j in 0..m {
                for beta in 0..n {
                    let mut acc = 0u8;
                    // Gamma d eps V
                    for mu in 0..n {
                        for k in 0..m {
                            if gamma[gbit(n, m, i, mu, k, j)] == 0 {
                                continue;
                            }
                            for nu in 0..n {
                                for nn in 0..m {
                                    if cal.d(mu, nu, nn) == 0 {
                                        continue;
                                    }
                                    for al in 0..n {
                                        acc ^= alg.v(nu, al, beta) & eps[(nn * m + k) * n + al];
                                    }
                                }
                            }
                            // Gamma tau V
                            for al in 0..n {
                                acc ^= tau[k * n + al] & alg.v(mu, al, beta);
                            }
                        }
                    }
                    // Gamma Gamma a eps V V
                    for mu in 0..n {
                        for k in 0..m {
                            for mm in 0..m {
                                if gamma[gbit(n, m, i, mu, k, mm)] == 0 {
                                    continue;
                                }
                                for lam in 0..n {
                                    for p in 0..m {
                                        if gamma[gbit(n, m, mm, lam, p, j)] == 0 {
                                            continue;
                                        }
                                        for al in 0..n {
                                            for s in 0..m {
                                                if cal.a(k, lam, al, s) == 0 {
                                                    continue;
                                                }
                                                for sg in 0..n {
                                                    for th in 0..n {
                                                        acc ^= alg.v(mu, al, sg)
                                                            & eps[(s * m + p) * n + th]
                                                            & alg.v(sg, th, beta);
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if acc == 1 {
                        rho[(i * m + j) * n + beta] ^= 1;
                    }
                }
            }
        }
    }
    let flat = rho.iter().all(|&b| b == 0);
    CurvatureComponents { rho, flat }
}

/// The Laplacian as a matrix on coefficients plus its spectral data over GF(2).
#[derive(Clone, Debug)]
pub struct LaplacianReport {
    /// `matrix[mu][nu]`: coefficient of `x^nu` in `Delta x^mu`.
    pub matrix: Vec<Vec<u8>>,
    pub trace: u8,
    pub kernel_dim: usize,
    pub eigen1_dim: usize,
    pub diagonalizable: bool,
    /// Nonzero solutions of `Delta v + v = 0`, in coefficient order.
    pub massive_eigenvectors: Vec<AlgebraElement>,
}

impl LaplacianReport {
    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&b| b == 0)
    }

    /// Image of an element under the Laplacian.
    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        let n = self.matrix.len();
        let mut out = AlgebraElement::zero(n);
        for mu in 0..n {
            if f.get(mu) == 0 {
                continue;
            }
            for nu in 0..n {
                if self.matrix[mu][nu] == 1 {
                    out.coeffs.set(nu, !out.coeffs.get(nu));
                }
            }
        }
        out
    }
}

/// Geometric Laplacian of `(metric, connection)`; needs the inverse metric.
pub fn laplacian(cal: &Calculus, metric: &QuantumMetric, conn: &Connection) -> LaplacianReport {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let ginv = metric.ginv.as_ref().expect("metric must carry its inverse");
    let gamma = &conn.gamma;

    let mut matrix = vec![vec![0u8; n]; n];
    for mu in 0..n {
        for nu_out in 0..n {
            let mut acc = 0u8;
            for k in 0..m {
                for mm in 0..m {
                    for tau in 0..n {
                        if ginv[k * m + mm].get(tau) == 0 {
                            continue;
                        }
                        for al in 0..n {
                            for i in 0..m {
                                if cal.d(mu, al, i) == 0 {
                                    continue;
                                }
                                for sg in 0..n {
                                    let mut inner = 0u8;
                                    for rho in 0..n {
                                        inner ^= alg.v(al, rho, sg) & gamma[gbit(n, m, i, rho, k, mm)];
                                    }
                                    if i == mm {
                                        inner ^= cal.d(al, sg, k);
                                    }
                                    if inner == 1 {
                                        acc ^= alg.v(tau, sg, nu_out);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            matrix[mu][nu_out] = acc;
        }
    }

    let trace = (0..n).fold(0u8, |t, i| t ^ matrix[i][i]);
    // rows of the matrix as a linear map: f |-> sum_mu f_mu matrix[mu][.]
    let as_map = {
        let mut mt = F2Matrix::zeros(n, n);
        for mu in 0..n {
            for nu in 0..n {
                if matrix[mu][nu] == 1 {
                    mt.set(nu, mu, true);
                }
            }
        }
        mt
    };
    let kernel_dim = as_map.kernel().len();
    let mut plus_id = as_map.clone();
    for i in 0..n {
        let v = plus_id.get(i, i);
        plus_id.set(i, i, !v);
    }
    let eigen1 = plus_id.kernel();
    let eigen1_dim = eigen1.len();
    let diagonalizable = kernel_dim + eigen1_dim == n;

    let mut massive_eigenvectors = Vec::new();
    if eigen1_dim > 0 {
        let space = solve_affine(&plus_id, &F2Vector::zeros(n));
        for member in space.members() {
            if !member.is_zero() {
                massive_eigenvectors.push(AlgebraElement { coeffs: member });
            }
        }
        massive_eigenvectors.sort();
    }

    LaplacianReport {
        matrix,
        trace,
        kernel_dim,
        eigen1_dim,
        diagonalizable,
        massive_eigenvectors,
    }
}

/// A lifting map `i(Vol) = I_{ij} omega^i (x) omega^j`, stored like a metric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lift {
    /// Index order `[i][j][mu]`: coefficient of `x^mu omega^i (x) omega^j`.
    pub tensor: Vec<u8>,
}

impl Lift {
    /// Reindex to the metric layout `[mu][i][j]`.
    pub fn as_metric_layout(&self, n: usize, m: usize) -> Vec<u8> {
        let mut out = vec![0u8; n * m * m];
        for i in 0..m {
            for j in 0..m {
                for mu in 0..n {
                    out[(mu * m + i) * m + j] = self.tensor[(i * m + j) * n + mu];
                }
            }
        }
        out
    }

    pub fn from_metric_layout(n: usize, m: usize, g: &[u8]) -> Self {
        let mut tensor = vec![0u8; m * m * n];
        for mu in 0..n {
            for i in 0..m {
                for j in 0..m {
                    tensor[(i * m + j) * n + mu] = g[(mu * m + i) * m + j];
                }
            }
        }
        Self { tensor }
    }
}

/// All central lifts with `wedge(I) = Vol`, in lexicographic order.
pub fn enumerate_lifts(cal: &Calculus, ext: &ExteriorData) -> Vec<Lift> {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let ExteriorData::Free1D { eps, .. } = ext else {
        return Vec::new();
    };
    // Unknowns in metric layout [mu][i][j] so the centrality rows can be
    // reused unchanged.
    let unknowns = n * m * m;
    let mut rows = centrality_matrix(cal);
    let mut rhs_bits = vec![false; rows.nrows()];
    // wedge rows: I_{ij mu} eps^{ij}_nu V^{mu nu}_al = delta_{al,0}
    for al in 0..n {
        let mut row = F2Vector::zeros(unknowns);
        for mu in 0..n {
            for i in 0..m {
                for j in 0..m {
                    let mut c = 0u8;
                    for nu in 0..n {
                        c ^= eps[(i * m + j) * n + nu] & alg.v(mu, nu, al);
                    }
                    if c == 1 {
                        let idx = (mu * m + i) * m + j;
                        row.set(idx, !row.get(idx));
                    }
                }
            }
        }
        rows.push_row(row);
        rhs_bits.push(al == 0);
    }
    let mut rhs = F2Vector::zeros(rhs_bits.len());
    for (i, &b) in rhs_bits.iter().enumerate() {
        rhs.set(i, b);
    }
    let sol = solve_affine(&rows, &rhs);
    sol.members()
        .into_iter()
        .map(|v| Lift::from_metric_layout(n, m, &v.to_bits()))
        .collect()
}

/// Scale-and-add: the lift `base + gamma . g` for a function `gamma`.
pub fn lift_offset(cal: &Calculus, base: &Lift, gamma: &AlgebraElement, g: &[u8]) -> Lift {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let mut tensor = base.tensor.clone();
    for mu in 0..n {
        for i in 0..m {
            for j in 0..m {
                if g[(mu * m + i) * m + j] == 0 {
                    continue;
                }
                // gamma . x^mu
                for lam in 0..n {
                    if gamma.get(lam) == 0 {
                        continue;
                    }
                    for rho in 0..n {
                        if alg.v(lam, mu, rho) == 1 {
                            tensor[(i * m + j) * n + rho] ^= 1;
                        }
                    }
                }
            }
        }
    }
    Lift { tensor }
}

/// Ricci data for one `(metric, connection, lift)` triple.
#[derive(Clone, Debug)]
pub struct RicciReport {
    /// Index order `[mu][i][j]`, like the metric.
    pub ricci: Vec<u8>,
    pub scalar: AlgebraElement,
    /// `Eins = Ricci + S g` in metric layout.
    pub einstein: Vec<u8>,
    pub ricci_central: bool,
    pub ricci_qsym: bool,
    pub div_ricci_zero: bool,
    pub div_eins_zero: bool,
}

/// Contract the curvature through the lift and inverse metric.
pub fn ricci_tensor(
    cal: &Calculus,
    curv: &CurvatureComponents,
    lift: &Lift,
    metric: &QuantumMetric,
) -> Vec<u8> {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let ginv = metric.ginv.as_ref().expect("metric must carry its inverse");
    let mut out = vec![0u8; n * m * m];
    // Ricci_{ij zeta} = g_{al mn} rho^n_{j beta} I_{mu l i} V^{beta mu}_nu
    //                   a^{m nu}_{gam k} g^{kl}_eta V^{al gam}_del V^{del eta}_zeta
    for i_out in 0..m {
        for j_out in 0..m {
            for zeta in 0..n {
                let mut acc = 0u8;
                for al in 0..n {
                    for mn in 0..m {
                        for nn in 0..m {
                            if metric.g[(al * m + mn) * m + nn] == 0 {
                                continue;
                            }
                            for beta in 0..n {
                                if curv.rho[(nn * m + j_out) * n + beta] == 0 {
                                    continue;
                                }
                                for l in 0..m {
                                    for mu in 0..n {
                                        if lift.tensor[(l * m + i_out) * n + mu] == 0 {
                                            continue;
                                        }
                                        for nu in 0..n {
                                            if alg.v(beta, mu, nu) == 0 {
                                                continue;
                                            }
                                            for gam in 0..n {
                                                for k in 0..m {
                                                    if cal.a(mn, nu, gam, k) == 0 {
                                                        continue;
                                                    }
                                                    for eta in 0..n {
                                                        if ginv[k * m + l].get(eta) == 0 {
                                                            continue;
                                                        }
                                                        for del in 0..n {
                                                            acc ^= alg.v(al, gam, del)
                                                                & alg.v(del, eta, zeta);
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                if acc == 1 {
                    out[(zeta * m + i_out) * m + j_out] ^= 1;
                }
            }
        }
    }
    out
}

/// Divergence of a 1-1 tensor along a bimodule connection:
/// apply the connection and contract the first two legs with `( , )`.
pub fn divergence(
    cal: &Calculus,
    metric: &QuantumMetric,
    conn: &Connection,
    t: &[u8],
) -> Vec<u8> {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let ginv = metric.ginv.as_ref().expect("metric must carry its inverse");
    let sigma = conn.sigma.as_ref().expect("divergence needs the braiding");
    let gamma = &conn.gamma;
    // bracket[nu][k][mm][nn] as in the metric-compatibility display, then
    // contracted with g^{km}_zeta V^{nu zeta}_gam.
    let mut out = vec![0u8; n * m];
    for gam_out in 0..n {
        for nn in 0..m {
            let mut acc = 0u8;
            for nu in 0..n {
                for k in 0..m {
                    for mm in 0..m {
                        let mut bracket = 0u8;
                        for mu in 0..n {
                            bracket ^= t[(mu * m + mm) * m + nn] & cal.d(mu, nu, k);
                            for i in 0..m {
                                if t[(mu * m + i) * m + nn] == 1 {
                                    for rho in 0..n {
                                        bracket ^= gamma[gbit(n, m, i, rho, k, mm)]
                                            & alg.v(mu, rho, nu);
                                    }
                                }
                                for j in 0..m {
                                    if t[(mu * m + i) * m + j] == 0 {
                                        continue;
                                    }
                                    for beta in 0..n {
                                        for s in 0..m {
                                            if gamma[gbit(n, m, j, beta, s, nn)] == 0 {
                                                continue;
                                            }
                                            for alp in 0..n {
                                                for tt in 0..m {
                                                    if cal.a(i, beta, alp, tt) == 0 {
                                                        continue;
                                                    }
                                                    for sg in 0..n {
                                                        if sigma
                                                            [sbit(n, m, tt, s, sg, k, mm)]
                                                            == 0
                                                        {
                                                            continue;
                                                        }
                                                        for lam in 0..n {
                                                            bracket ^= alg.v(mu, alp, lam)
                                                                & alg.v(lam, sg, nu);
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        if bracket == 0 {
                            continue;
                        }
                        for zeta in 0..n {
                            if ginv[k * m + mm].get(zeta) == 1 {
                                acc ^= alg.v(nu, zeta, gam_out);
                            }
                        }
                    }
                }
            }
            out[gam_out * m + nn] = acc;
        }
    }
    out
}

/// Differential of an algebra element as a 1-form in module coordinates.
fn one_form_of_differential(cal: &Calculus, f: &AlgebraElement) -> Vec<u8> {
    cal.differential(f)
}

/// Full Ricci/Einstein report for `(metric, connection, lift)`.
pub fn ricci(
    cal: &Calculus,
    ext: &ExteriorData,
    metric: &QuantumMetric,
    conn: &Connection,
    lift: &Lift,
) -> RicciReport {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let curv = curvature(cal, ext, conn);
    let ricci = ricci_tensor(cal, &curv, lift, metric);
    let scalar = metric.contract_tensor(cal, &ricci);

    // Eins_{mu i j} = Ricci_{mu i j} + S_nu g_{rho i j} V^{nu rho}_mu
    let mut einstein = ricci.clone();
    for nu in 0..n {
        if scalar.get(nu) == 0 {
            continue;
        }
        for rho in 0..n {
            for i in 0..m {
                for j in 0..m {
                    if metric.g[(rho * m + i) * m + j] == 0 {
                        continue;
                    }
                    for mu in 0..n {
                        if alg.v(nu, rho, mu) == 1 {
                            einstein[(mu * m + i) * m + j] ^= 1;
                        }
                    }
                }
            }
        }
    }

    let ricci_central = crate::metric::is_central(cal, &ricci);
    let ricci_qsym = match ext {
        ExteriorData::Zero => true,
        ExteriorData::Free1D { eps, .. } => {
            crate::exterior::wedge_of_metric_is_zero(cal, eps, &ricci)
        }
    };

    let div_ricci = divergence(cal, metric, conn, &ricci);
    let div_ricci_zero = div_ricci.iter().all(|&b| b == 0);
    // div Eins = div Ricci + dS
    let ds = one_form_of_differential(cal, &scalar);
    let div_eins_zero = div_ricci
        .iter()
        .zip(ds.iter())
        .all(|(&a, &b)| a ^ b == 0);

    RicciReport {
        ricci,
        scalar,
        einstein,
        ricci_central,
        ricci_qsym,
        div_ricci_zero,
        div_eins_zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Calculus;
    use crate::catalog;
    use crate::connection::{classify_connections, solve_sigma, ClassifyMode};
    use crate::metric::{quantum_dimension, try_invert_metric};

    fn setup(metric_id: &str) -> (Calculus, ExteriorData, QuantumMetric) {
        let (alg_label, _) = catalog::metric_context(metric_id).unwrap();
        let alg = catalog::algebra_n3(alg_label).unwrap();
        let cal = Calculus::universal(&alg);
        let ext = catalog::exterior(alg_label).unwrap();
        let g = catalog::metric(metric_id).unwrap();
        let metric = try_invert_metric(&cal, &QuantumMetric::new(g)).unwrap();
        (cal, ext, metric)
    }

    #[test]
    fn curvature_of_the_d1_connections_matches_the_catalog() {
        let (cal, ext, metric) = setup("g_D.1");
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
        assert_eq!(result.connections.len(), 4);
        let mut flat = 0;
        for (conn, _) in &result.connections {
            let curv = curvature(&cal, &ext, conn);
            if curv.flat {
                flat += 1;
            }
        }
        assert_eq!(flat, 1, "exactly one of the four is flat");
    }

    #[test]
    fn laplacian_of_d1_matches_hand_computation() {
        let (cal, ext, metric) = setup("g_D.1");
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
        for (conn, _) in &result.connections {
            let lap = laplacian(&cal, &metric, conn);
            // Delta 1 = 0, Delta x = 1, Delta y = 1 + x  (z-basis: Delta z = 1,
            // Delta z^2 = z)
            assert_eq!(lap.matrix[0], vec![0, 0, 0]);
            assert_eq!(lap.matrix[1], vec![1, 0, 0]);
            assert_eq!(lap.matrix[2], vec![1, 1, 0]);
            assert_eq!(lap.trace, 0);
        }
    }

    #[test]
    fn laplacian_vanishes_exactly_when_qdim_is_zero() {
        for metric_id in [
            "g_D.1", "g_D.2", "g_D.3", "g_B", "g_F.1", "g_F.2", "g_F.3", "g_F.4",
        ] {
            let (cal, ext, metric) = setup(metric_id);
            let dim = quantum_dimension(&cal, &metric);
            let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
            assert!(!result.connections.is_empty());
            for (conn, _) in &result.connections {
                let lap = laplacian(&cal, &metric, conn);
                assert_eq!(
                    lap.is_zero(),
                    dim.is_zero(),
                    "Delta = 0 iff qdim = 0 failed for {metric_id}"
                );
                if !lap.is_zero() {
                    if lap.trace == 1 {
                        assert_eq!(lap.kernel_dim, 2);
                        assert_eq!(lap.eigen1_dim, 1);
                        assert!(lap.diagonalizable);
                    } else {
                        assert_eq!(lap.kernel_dim, 1);
                        assert_eq!(lap.eigen1_dim, 0);
                        assert!(!lap.diagonalizable);
                    }
                }
            }
        }
    }

    #[test]
    fn lift_spaces_have_eight_elements_of_affine_form() {
        for (label, metric_id) in [("D", "g_D.1"), ("B", "g_B"), ("F", "g_F.1")] {
            let (cal, ext, metric) = setup(metric_id);
            let lifts = enumerate_lifts(&cal, &ext);
            assert_eq!(lifts.len(), 8, "lift count for algebra {label}");
            let base = catalog::lift_base(label).unwrap();
            let base = Lift { tensor: base };
            // every lift is base + gamma g for some gamma, and conversely
            let mut seen = Vec::new();
            for gamma in catalog::algebra_n3(label).unwrap().elements() {
                let shifted = lift_offset(&cal, &base, &gamma, &metric.g);
                assert!(lifts.contains(&shifted));
                if !seen.contains(&shifted) {
                    seen.push(shifted);
                }
            }
            assert_eq!(seen.len(), 8);
        }
    }

    #[test]
    fn m1_unique_lift_is_the_inverse_wedge_constant() {
        let a2 = catalog::algebra_n2("A").unwrap();
        let cal = Calculus::universal(&a2);
        let ext = ExteriorData::free(vec![1, 0], vec![0, 0]);
        let lifts = enumerate_lifts(&cal, &ext);
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].tensor, vec![1, 0]);
    }

    #[test]
    fn m1_pipeline_on_algebra_a_reproduces_the_flat_metric_story() {
        // g = omega (x) omega, Gamma = x: rho = 1, Ricci = g, S = 1, Eins = 0
        let a2 = catalog::algebra_n2("A").unwrap();
        let cal = Calculus::universal(&a2);
        let ext = ExteriorData::free(vec![1, 0], vec![0, 0]);
        let g = vec![1u8, 0];
        let metric = try_invert_metric(&cal, &QuantumMetric::new(g)).unwrap();
        let gamma = vec![0u8, 1];
        let sigma = solve_sigma(&cal, &gamma).unwrap();
        let conn = Connection {
            gamma,
            sigma: Some(sigma),
        };
        let curv = curvature(&cal, &ext, &conn);
        assert_eq!(curv.rho, vec![1, 0]);
        let lifts = enumerate_lifts(&cal, &ext);
        let report = ricci(&cal, &ext, &metric, &conn, &lifts[0]);
        assert_eq!(report.ricci, metric.g);
        assert_eq!(report.scalar, AlgebraElement::from_bits(&[1, 0]));
        assert!(report.einstein.iter().all(|&b| b == 0));
        assert!(report.div_ricci_zero);
        assert!(report.div_eins_zero);
    }

    #[test]
    fn flat_connections_are_ricci_flat_for_every_lift() {
        let (cal, ext, metric) = setup("g_D.1");
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
        let lifts = enumerate_lifts(&cal, &ext);
        for (conn, _) in &result.connections {
            let curv = curvature(&cal, &ext, conn);
            if !curv.flat {
                continue;
            }
            for lift in &lifts {
                let report = ricci(&cal, &ext, &metric, conn, lift);
                assert!(report.ricci.iter().all(|&b| b == 0));
                assert!(report.scalar.is_zero());
            }
        }
    }

    #[test]
    fn einstein_minus_ricci_is_scalar_times_metric() {
        let (cal, ext, metric) = setup("g_D.1");
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
        let lifts = enumerate_lifts(&cal, &ext);
        let (n, m) = (cal.n(), cal.m);
        let alg = &cal.algebra;
        for (conn, _) in &result.connections {
            for lift in &lifts {
                let report = ricci(&cal, &ext, &metric, conn, lift);
                let mut sg = vec![0u8; n * m * m];
                for nu in 0..n {
                    if report.scalar.get(nu) == 0 {
                        continue;
                    }
                    for rho in 0..n {
                        for i in 0..m {
                            for j in 0..m {
                                if metric.g[(rho * m + i) * m + j] == 1 {
                                    for mu in 0..n {
                                        if alg.v(nu, rho, mu) == 1 {
                                            sg[(mu * m + i) * m + j] ^= 1;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                let expect: Vec<u8> = report
                    .ricci
                    .iter()
                    .zip(sg.iter())
                    .map(|(&a, &b)| a ^ b)
                    .collect();
                assert_eq!(report.einstein, expect);
            }
        }
    }

    #[test]
    fn d1_natural_lift_gives_ricci_equal_to_metric() {
        let (cal, ext, metric) = setup("g_D.1");
        let result = classify_connections(&cal, &ext, &metric.g, ClassifyMode::Qlc, 1);
        let base = Lift {
            tensor: catalog::lift_base("D").unwrap(),
        };
        // gamma = z in the z-power basis, i.e. (gamma_1, gamma_2, gamma_3) = (0,1,0)
        let z = AlgebraElement::from_bits(&[1, 1, 0]);
        let lift = lift_offset(&cal, &base, &z, &metric.g);
        for (conn, _) in &result.connections {
            let curv = curvature(&cal, &ext, conn);
            if curv.flat {
                continue;
            }
            let report = ricci(&cal, &ext, &metric, conn, &lift);
            assert_eq!(report.ricci, metric.g, "Ricci = g at the natural lift");
            assert_eq!(report.scalar, AlgebraElement::one(3));
            assert!(report.einstein.iter().all(|&b| b == 0));
            assert!(report.div_ricci_zero);
            assert!(report.ricci_qsym);
        }
    }
}
