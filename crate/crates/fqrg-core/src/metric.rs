//! Quantum metrics: central elements of the tensor square with an
//! inner-product inverse.

use crate::algebra::AlgebraElement;
use crate::calculus::Calculus;
use crate::error::MetricError;
use crate::exterior::{self, ExteriorData};
use crate::f2::{solve_affine, AffineSolutionSet, F2Matrix, F2Vector};

/// A metric candidate `g = g_{mu i j} x^mu omega^i (x) omega^j`.
///
/// `gtilde` is the middle-coefficient expansion and `ginv` the inner-product
/// matrix `(omega^i, omega^j)`, both filled in by [`try_invert_metric`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumMetric {
    /// Coefficients, index order `[mu][i][j]`.
    pub g: Vec<u8>,
    pub gtilde: Option<Vec<AlgebraElement>>,
    pub ginv: Option<Vec<AlgebraElement>>,
}

impl QuantumMetric {
    pub fn new(g: Vec<u8>) -> Self {
        Self {
            g,
            gtilde: None,
            ginv: None,
        }
    }

    pub fn from_vector(v: &F2Vector) -> Self {
        Self::new(v.to_bits())
    }

    #[inline]
    pub fn g(&self, m: usize, mu: usize, i: usize, j: usize) -> u8 {
        self.g[(mu * m + i) * m + j]
    }

    pub fn is_zero(&self) -> bool {
        self.g.iter().all(|&b| b == 0)
    }

    /// Entry of the inverse matrix `(omega^i, omega^j)`.
    pub fn ginv_entry(&self, m: usize, i: usize, j: usize) -> &AlgebraElement {
        &self.ginv.as_ref().expect("metric not inverted")[i * m + j]
    }

    /// Contract a 1-1 tensor with the inner product:
    /// `( , )(T) = T_{mu i j} x^mu g^{ij}` as an element of the algebra.
    pub fn contract_tensor(&self, cal: &Calculus, t: &[u8]) -> AlgebraElement {
        let (n, m) = (cal.n(), cal.m);
        let alg = &cal.algebra;
        let ginv = self.ginv.as_ref().expect("metric not inverted");
        let mut out = AlgebraElement::zero(n);
        for mu in 0..n {
            for i in 0..m {
                for j in 0..m {
                    if t[(mu * m + i) * m + j] == 0 {
                        continue;
                    }
                    for nu in 0..n {
                        if ginv[i * m + j].get(nu) == 0 {
                            continue;
                        }
                        for rho in 0..n {
                            if alg.v(mu, nu, rho) == 1 {
                                out.coeffs.set(rho, !out.coeffs.get(rho));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Classification flags for one metric against one exterior structure.
#[derive(Clone, Debug)]
pub struct MetricClassification {
    pub central: bool,
    pub invertible: bool,
    pub quantum_symmetric: bool,
    pub qdim: Option<AlgebraElement>,
}

/// Rows of the centrality system acting on metric coefficient vectors.
pub fn centrality_matrix(cal: &Calculus) -> F2Matrix {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let unknowns = n * m * m;
    let mut rows = F2Matrix::zeros(0, unknowns);
    for nu in 0..n {
        for sigma in 0..n {
            for mm in 0..m {
                for k in 0..m {
                    let mut row = F2Vector::zeros(unknowns);
                    for mu in 0..n {
                        for i in 0..m {
                            for j in 0..m {
                                let mut coeff = 0u8;
                                for lam in 0..n {
                                    for gam in 0..n {
                                        coeff ^= cal.a(j, nu, lam, k)
                                            & cal.a(i, lam, gam, mm)
                                            & alg.v(mu, gam, sigma);
                                    }
                                }
                                if i == mm && j == k {
                                    coeff ^= alg.v(nu, mu, sigma);
                                }
                                if coeff == 1 {
                                    let idx = (mu * m + i) * m + j;
                                    row.set(idx, !row.get(idx));
                                }
                            }
                        }
                    }
                    rows.push_row(row);
                }
            }
        }
    }
    rows
}

/// All central metric coefficient tensors as a linear solution space.
/// The zero tensor is a member; classification callers skip it.
pub fn solve_central_metrics(cal: &Calculus) -> AffineSolutionSet {
    let rows = centrality_matrix(cal);
    let rhs = F2Vector::zeros(rows.nrows());
    solve_affine(&rows, &rhs)
}

/// Direct check that the tensor commutes with every basis element.
pub fn is_central(cal: &Calculus, g: &[u8]) -> bool {
    let rows = centrality_matrix(cal);
    let v = F2Vector::from_bits(g);
    rows.mul_vec(&v).is_zero()
}

/// Middle-coefficient expansion `g_{mu i j} = a^{k nu}_{mu i} gtilde_{nu k j}`,
/// obtained by inverting the commutation matrix. A calculus that is not
/// right parallelisable has no canonical middle form and the metric is
/// reported as not invertible.
pub fn middle_coefficients(cal: &Calculus, g: &[u8]) -> Option<Vec<AlgebraElement>> {
    let (n, m) = (cal.n(), cal.m);
    let comm_inv = cal.commutation_matrix().inverse()?;
    // per surviving form index j, gtilde column = C^{-1} (g column)
    let mut out = vec![AlgebraElement::zero(n); m * m];
    for j in 0..m {
        let mut col = F2Vector::zeros(n * m);
        for mu in 0..n {
            for i in 0..m {
                col.set(mu * m + i, g[(mu * m + i) * m + j] == 1);
            }
        }
        let solved = comm_inv.mul_vec(&col);
        for nu in 0..n {
            for k in 0..m {
                if solved.get(nu * m + k) {
                    let cur = out[k * m + j].coeffs.get(nu);
                    out[k * m + j].coeffs.set(nu, !cur);
                }
            }
        }
    }
    Some(out)
}

/// Attach `gtilde` and the inner-product inverse to a metric, or report
/// why it does not exist.
pub fn try_invert_metric(cal: &Calculus, metric: &QuantumMetric) -> Result<QuantumMetric, MetricError> {
    let (n, m) = (cal.n(), cal.m);
    let alg = &cal.algebra;
    let gtilde = middle_coefficients(cal, &metric.g).ok_or(MetricError::NoMiddleForm)?;

    // Solve g^{ij} gtilde_{jk} = delta_{ik} in the unknown coefficients g^{ij}_mu.
    let unknowns = m * m * n;
    let mut rows = F2Matrix::zeros(0, unknowns);
    let mut rhs_bits = Vec::new();
    for i in 0..m {
        for k in 0..m {
            for rho in 0..n {
                let mut row = F2Vector::zeros(unknowns);
                for j in 0..m {
                    for mu in 0..n {
                        let mut acc = 0u8;
                        for nu in 0..n {
                            acc ^= alg.v(mu, nu, rho) & gtilde[j * m + k].get(nu);
                        }
                        if acc == 1 {
                            let idx = (i * m + j) * n + mu;
                            row.set(idx, !row.get(idx));
                        }
                    }
                }
                rows.push_row(row);
                rhs_bits.push(i == k && rho == 0);
            }
        }
    }
    let mut rhs = F2Vector::zeros(rhs_bits.len());
    for (idx, &b) in rhs_bits.iter().enumerate() {
        rhs.set(idx, b);
    }
    let sol = solve_affine(&rows, &rhs);
    let v = sol.particular.ok_or(MetricError::NotInvertible)?;
    let ginv: Vec<AlgebraElement> = (0..m * m)
        .map(|c| {
            let mut coeffs = F2Vector::zeros(n);
            for mu in 0..n {
                coeffs.set(mu, v.get(c * n + mu));
            }
            AlgebraElement { coeffs }
        })
        .collect();

    // Two-sidedness: gtilde_{ij} g^{jk} = delta_{ik} as well.
    for i in 0..m {
        for k in 0..m {
            let mut acc = AlgebraElement::zero(n);
            for j in 0..m {
                acc = acc.add(&alg.mul(&gtilde[i * m + j], &ginv[j * m + k]));
            }
            let expect = if i == k {
                AlgebraElement::one(n)
            } else {
                AlgebraElement::zero(n)
            };
            if acc != expect {
                return Err(MetricError::NotInvertible);
            }
        }
    }

    // The inner product must be a bimodule map: commuting an argument past
    // the pairing, g^{ij} x^mu = a^{j mu}_{nu k} a^{i nu}_{lam r} x^lam g^{rk}.
    for i in 0..m {
        for j in 0..m {
            for mu in 0..n {
                for sigma in 0..n {
                    let mut lhs = 0u8;
                    for nu in 0..n {
                        lhs ^= ginv[i * m + j].get(nu) & alg.v(nu, mu, sigma);
                    }
                    let mut rhs = 0u8;
                    for k in 0..m {
                        for r in 0..m {
                            for nu in 0..n {
                                for lam in 0..n {
                                    if cal.a(j, mu, nu, k) & cal.a(i, nu, lam, r) == 0 {
                                        continue;
                                    }
                                    for tau in 0..n {
                                        rhs ^= ginv[r * m + k].get(tau) & alg.v(lam, tau, sigma);
                                    }
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return Err(MetricError::NotInvertible);
                    }
                }
            }
        }
    }

    // The other half of the inverse-metric axiom in the first expansion:
    // (id (x) ( , eta)) g = eta for every eta = x^lam omega^k. The equation
    // is only additive in eta, so the middle-coefficient cases are genuine
    // extra constraints; they are what forces centrality.
    for lam in 0..n {
        for k in 0..m {
            for sigma in 0..n {
                for s in 0..m {
                    let mut acc = 0u8;
                    for mu in 0..n {
                        for i in 0..m {
                            for j in 0..m {
                                if metric.g[(mu * m + i) * m + j] == 0 {
                                    continue;
                                }
                                for nu in 0..n {
                                    for r in 0..m {
                                        if cal.a(j, lam, nu, r) == 0 {
                                            continue;
                                        }
                                        for tau in 0..n {
                                            if ginv[r * m + k].get(tau) == 0 {
                                                continue;
                                            }
                                            for beta in 0..n {
                                                if alg.v(nu, tau, beta) == 0 {
                                                    continue;
                                                }
                                                for al in 0..n {
                                                    acc ^= cal.a(i, beta, al, s)
                                                        & alg.v(mu, al, sigma);
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    let expect = ((sigma == lam && s == k) as u8) & 1;
                    if acc != expect {
                        return Err(MetricError::NotInvertible);
                    }
                }
            }
        }
    }

    Ok(QuantumMetric {
        g: metric.g.clone(),
        gtilde: Some(gtilde),
        ginv: Some(ginv),
    })
}

/// The metric quantum dimension `( , )(g)`.
pub fn quantum_dimension(cal: &Calculus, metric: &QuantumMetric) -> AlgebraElement {
    metric.contract_tensor(cal, &metric.g)
}

/// Quantum symmetry `wedge(g) = 0`; vacuous in the `Omega^2 = 0` mode.
pub fn is_quantum_symmetric(cal: &Calculus, metric: &QuantumMetric, ext: &ExteriorData) -> bool {
    match ext {
        ExteriorData::Zero => true,
        ExteriorData::Free1D { eps, .. } => exterior::wedge_of_metric_is_zero(cal, eps, &metric.g),
    }
}

/// Classify one metric tensor against a calculus and exterior structure.
pub fn classify_metric(cal: &Calculus, g: &[u8], ext: &ExteriorData) -> MetricClassification {
    let metric = QuantumMetric::new(g.to_vec());
    let central = is_central(cal, g);
    match try_invert_metric(cal, &metric) {
        Ok(inverted) => MetricClassification {
            central,
            invertible: true,
            quantum_symmetric: is_quantum_symmetric(cal, &inverted, ext),
            qdim: Some(quantum_dimension(cal, &inverted)),
        },
        Err(_) => MetricClassification {
            central,
            invertible: false,
            quantum_symmetric: is_quantum_symmetric(cal, &metric, ext),
            qdim: None,
        },
    }
}

/// All nonzero central metrics that are invertible and quantum symmetric.
pub fn invertible_qsym_metrics(cal: &Calculus, ext: &ExteriorData) -> Vec<QuantumMetric> {
    let space = solve_central_metrics(cal);
    let mut out = Vec::new();
    for member in space.members() {
        if member.is_zero() {
            continue;
        }
        let metric = QuantumMetric::from_vector(&member);
        if let Ok(inverted) = try_invert_metric(cal, &metric) {
            if is_quantum_symmetric(cal, &inverted, ext) {
                out.push(inverted);
            }
        }
    }
    out
}
