//! First-order differential calculi over a structure-constant algebra.
//!
//! A calculus of dimension `m` is a free left module with basis
//! `omega^1, ..., omega^m` together with commutation constants
//! `omega^i x^mu = a^{i mu}_{nu j} x^nu omega^j` and differential constants
//! `d x^mu = d^mu_{nu i} x^nu omega^i`. Form indices are stored 0-based.

use crate::algebra::{AlgebraElement, AlgebraMap, AlgebraStructure};
use crate::f2::{F2Matrix, F2Vector};
use serde::Serialize;

/// A left-parallelisable first-order calculus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Calculus {
    pub algebra: AlgebraStructure,
    pub m: usize,
    /// Commutation constants, index order `[i][mu][nu][j]`.
    pub a: Vec<u8>,
    /// Differential constants, index order `[mu][nu][i]`.
    pub d: Vec<u8>,
    pub label: Option<String>,
}

/// Per-axiom validation report for a calculus.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CalculusReport {
    pub bimodule: bool,
    pub leibniz: bool,
    pub surjective: bool,
    pub connected: bool,
    pub right_parallelisable: bool,
}

impl CalculusReport {
    pub fn is_valid(&self) -> bool {
        self.bimodule && self.leibniz && self.surjective && self.connected
    }
}

impl Calculus {
    pub fn new(algebra: AlgebraStructure, m: usize, a: Vec<u8>, d: Vec<u8>) -> Self {
        let n = algebra.n;
        assert_eq!(a.len(), m * n * n * m);
        assert_eq!(d.len(), n * n * m);
        Self {
            algebra,
            m,
            a,
            d,
            label: None,
        }
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn n(&self) -> usize {
        self.algebra.n
    }

    #[inline]
    pub fn a(&self, i: usize, mu: usize, nu: usize, j: usize) -> u8 {
        let n = self.n();
        self.a[((i * n + mu) * n + nu) * self.m + j]
    }

    #[inline]
    pub fn d(&self, mu: usize, nu: usize, i: usize) -> u8 {
        let n = self.n();
        self.d[(mu * n + nu) * self.m + i]
    }

    /// The universal calculus (`m = n - 1`) with basis `omega^i = d x^i`.
    ///
    /// The Leibniz rule forces
    /// `a^{i mu}_{nu j} = V^{i mu}_j delta_{nu 0} + delta^i_nu delta^mu_j`
    /// on the generator indices, so no search is needed.
    pub fn universal(algebra: &AlgebraStructure) -> Self {
        let n = algebra.n;
        let m = n - 1;
        let mut a = vec![0u8; m * n * n * m];
        let mut d = vec![0u8; n * n * m];
        for i in 0..m {
            // dx^{i+1} = x^0 omega^i
            d[((i + 1) * n) * m + i] = 1;
        }
        for i in 0..m {
            for mu in 0..n {
                for nu in 0..n {
                    for j in 0..m {
                        let val = if mu == 0 {
                            ((nu == 0 && i == j) as u8) & 1
                        } else {
                            (algebra.v(i + 1, mu, j + 1) & ((nu == 0) as u8))
                                ^ (((nu == i + 1) && (mu == j + 1)) as u8)
                        };
                        a[((i * n + mu) * n + nu) * m + j] = val;
                    }
                }
            }
        }
        Self::new(algebra.clone(), m, a, d)
    }

    /// All of `x^mu` has `d x^mu` in coordinate form (`omega^i = d x^i`).
    pub fn d_is_coordinate(&self) -> bool {
        let n = self.n();
        if self.m != n - 1 {
            return false;
        }
        (0..n).all(|mu| {
            (0..n).all(|nu| {
                (0..self.m).all(|i| {
                    let expect = (mu >= 1 && nu == 0 && i == mu - 1) as u8;
                    self.d(mu, nu, i) == expect
                })
            })
        })
    }

    fn check_unit_relations(&self) -> bool {
        let n = self.n();
        let m = self.m;
        // d 1 = 0 and omega^i . 1 = omega^i
        (0..n).all(|nu| (0..m).all(|i| self.d(0, nu, i) == 0))
            && (0..m).all(|i| {
                (0..n).all(|nu| {
                    (0..m).all(|j| self.a(i, 0, nu, j) == ((nu == 0 && i == j) as u8))
                })
            })
    }

    fn check_bimodule(&self) -> bool {
        let (n, m) = (self.n(), self.m);
        let alg = &self.algebra;
        for i in 0..m {
            for mu in 0..n {
                for nu in 0..n {
                    for eta in 0..n {
                        for k in 0..m {
                            let mut lhs = 0u8;
                            for j in 0..m {
                                for sigma in 0..n {
                                    for tau in 0..n {
                                        lhs ^= self.a(i, mu, sigma, j)
                                            & self.a(j, nu, tau, k)
                                            & alg.v(sigma, tau, eta);
                                    }
                                }
                            }
                            let mut rhs = 0u8;
                            for rho in 0..n {
                                rhs ^= self.a(i, rho, eta, k) & alg.v(mu, nu, rho);
                            }
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn check_leibniz(&self) -> bool {
        let (n, m) = (self.n(), self.m);
        let alg = &self.algebra;
        for mu in 0..n {
            for nu in 0..n {
                for sigma in 0..n {
                    for j in 0..m {
                        let mut lhs = 0u8;
                        for rho in 0..n {
                            lhs ^= alg.v(mu, nu, rho) & self.d(rho, sigma, j);
                        }
                        let mut rhs = 0u8;
                        for i in 0..m {
                            for lambda in 0..n {
                                for gamma in 0..n {
                                    rhs ^= self.d(mu, lambda, i)
                                        & self.a(i, nu, gamma, j)
                                        & alg.v(lambda, gamma, sigma);
                                }
                            }
                        }
                        for delta in 0..n {
                            rhs ^= self.d(nu, delta, j) & alg.v(mu, delta, sigma);
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Matrix of the span of `x^mu d x^nu`: rows are target coordinates
    /// `(eta, i)`, columns the products with `nu >= 1`.
    pub fn surjectivity_matrix(&self) -> F2Matrix {
        let (n, m) = (self.n(), self.m);
        let alg = &self.algebra;
        let mut mat = F2Matrix::zeros(n * m, n * (n - 1));
        for mu in 0..n {
            for nu in 1..n {
                let col = mu * (n - 1) + (nu - 1);
                for eta in 0..n {
                    for i in 0..m {
                        let mut acc = 0u8;
                        for rho in 0..n {
                            acc ^= alg.v(mu, rho, eta) & self.d(nu, rho, i);
                        }
                        if acc == 1 {
                            mat.set(eta * m + i, col, true);
                        }
                    }
                }
            }
        }
        mat
    }

    /// Matrix of `d` as a linear map from coefficients of `A` to those of the
    /// module, rows `(nu, i)`, columns `mu`.
    pub fn d_matrix(&self) -> F2Matrix {
        let (n, m) = (self.n(), self.m);
        let mut mat = F2Matrix::zeros(n * m, n);
        for mu in 0..n {
            for nu in 0..n {
                for i in 0..m {
                    if self.d(mu, nu, i) == 1 {
                        mat.set(nu * m + i, mu, true);
                    }
                }
            }
        }
        mat
    }

    /// The nm x nm commutation matrix taking right coordinates to left ones;
    /// invertibility makes the omega basis a right basis as well.
    pub fn commutation_matrix(&self) -> F2Matrix {
        let (n, m) = (self.n(), self.m);
        let mut mat = F2Matrix::zeros(n * m, n * m);
        for i in 0..m {
            for mu in 0..n {
                for nu in 0..n {
                    for j in 0..m {
                        if self.a(i, mu, nu, j) == 1 {
                            mat.set(nu * m + j, mu * m + i, true);
                        }
                    }
                }
            }
        }
        mat
    }

    pub fn is_right_parallelisable(&self) -> bool {
        self.commutation_matrix().inverse().is_some()
    }

    /// Report every axiom individually.
    pub fn validate(&self) -> CalculusReport {
        let (n, m) = (self.n(), self.m);
        CalculusReport {
            bimodule: self.check_unit_relations() && self.check_bimodule(),
            leibniz: self.check_leibniz(),
            surjective: self.surjectivity_matrix().rank() == n * m,
            connected: self.d_matrix().kernel().len() == 1,
            right_parallelisable: self.is_right_parallelisable(),
        }
    }

    /// Commute an element through a basis form: `omega^i f = sum fbar^{i}_{nu j} x^nu omega^j`.
    pub fn commute_through(&self, i: usize, f: &AlgebraElement) -> Vec<u8> {
        let (n, m) = (self.n(), self.m);
        let mut out = vec![0u8; n * m];
        for mu in 0..n {
            if f.get(mu) == 0 {
                continue;
            }
            for nu in 0..n {
                for j in 0..m {
                    out[nu * m + j] ^= self.a(i, mu, nu, j);
                }
            }
        }
        out
    }

    /// Differential of an element as module coordinates `(nu, i)`.
    pub fn differential(&self, f: &AlgebraElement) -> Vec<u8> {
        let (n, m) = (self.n(), self.m);
        let mut out = vec![0u8; n * m];
        for mu in 0..n {
            if f.get(mu) == 0 {
                continue;
            }
            for nu in 0..n {
                for i in 0..m {
                    out[nu * m + i] ^= self.d(mu, nu, i);
                }
            }
        }
        out
    }

    /// Transport along an algebra automorphism: the relabelled calculus over
    /// the same structure constants.
    pub fn transport(&self, phi: &AlgebraMap) -> Self {
        let (n, m) = (self.n(), self.m);
        let alg = &self.algebra;
        let inv = AlgebraMap {
            matrix: phi.matrix.inverse().expect("transport needs invertible map"),
        };
        // d' x^mu = phi(d(phi^{-1} x^mu)) with phi acting on coefficients.
        let mut d = vec![0u8; n * n * m];
        for mu in 0..n {
            let pre = inv.apply(&AlgebraElement::basis(n, mu));
            let diff = self.differential(&pre);
            for nu in 0..n {
                for i in 0..m {
                    if diff[nu * m + i] == 1 {
                        let img = phi.apply(&AlgebraElement::basis(n, nu));
                        for lam in 0..n {
                            d[(mu * n + lam) * m + i] ^= img.get(lam);
                        }
                    }
                }
            }
        }
        let mut a = vec![0u8; m * n * n * m];
        for i in 0..m {
            for mu in 0..n {
                let pre = inv.apply(&AlgebraElement::basis(n, mu));
                let comm = self.commute_through(i, &pre);
                for nu in 0..n {
                    for j in 0..m {
                        if comm[nu * m + j] == 1 {
                            let img = phi.apply(&AlgebraElement::basis(n, nu));
                            for lam in 0..n {
                                a[((i * n + mu) * n + lam) * m + j] ^= img.get(lam);
                            }
                        }
                    }
                }
            }
        }
        Self::new(alg.clone(), m, a, d)
    }
}

/// Enumerate all calculi of dimension `m` over an algebra, in lexicographic
/// order of the `(a, d)` bit pattern.
///
/// When `basis_is_dx` is set (`m` must be `n - 1`), `d` is pinned to the
/// coordinate form and only the commutation constants are searched.
pub fn enumerate_calculi(algebra: &AlgebraStructure, m: usize, basis_is_dx: bool) -> Vec<Calculus> {
    let n = algebra.n;
    assert!((1..n).contains(&m), "calculus dimension must satisfy 1 <= m <= n-1");
    if basis_is_dx {
        assert_eq!(m, n - 1, "the coordinate basis needs m = n - 1");
        let cal = Calculus::universal(algebra);
        debug_assert!(cal.validate().is_valid());
        return vec![cal];
    }

    // Unit relations pin a^{i 0}_{nu j} and d^0; sweep the rest jointly.
    let a_free = m * (n - 1) * n * m;
    let d_free = (n - 1) * n * m;
    let total_bits = a_free + d_free;
    assert!(total_bits <= 30, "calculus search space too large");

    let mut found = Vec::new();
    for bits in 0u64..(1 << total_bits) {
        let mut a = vec![0u8; m * n * n * m];
        let mut d = vec![0u8; n * n * m];
        let mut cursor = 0;
        let bit = |cursor: &mut usize| {
            let b = ((bits >> (total_bits - 1 - *cursor)) & 1) as u8;
            *cursor += 1;
            b
        };
        for i in 0..m {
            for nu in 0..n {
                for j in 0..m {
                    a[((i * n) * n + nu) * m + j] = (nu == 0 && i == j) as u8;
                }
            }
            for mu in 1..n {
                for nu in 0..n {
                    for j in 0..m {
                        a[((i * n + mu) * n + nu) * m + j] = bit(&mut cursor);
                    }
                }
            }
        }
        for mu in 1..n {
            for nu in 0..n {
                for i in 0..m {
                    d[(mu * n + nu) * m + i] = bit(&mut cursor);
                }
            }
        }
        let cal = Calculus::new(algebra.clone(), m, a, d);
        let report = cal.validate();
        if report.is_valid() {
            found.push(cal);
        }
    }
    found
}

/// A calculus isomorphism `omega^i -> u^i_j omega^j` over the same algebra.
#[derive(Clone, Debug)]
pub struct CalculusMorphism {
    /// `phi[i][j]` as algebra elements.
    pub phi: Vec<AlgebraElement>,
    pub m: usize,
}

impl CalculusMorphism {
    fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.phi[i * self.m + j]
    }
}

/// Search for an invertible bimodule map intertwining the differentials.
pub fn find_calculus_morphism(src: &Calculus, dst: &Calculus) -> Option<CalculusMorphism> {
    assert_eq!(src.algebra, dst.algebra);
    assert_eq!(src.m, dst.m);
    let (n, m) = (src.n(), src.m);
    let alg = &src.algebra;
    let cells = m * m;
    let total_bits = cells * n;
    assert!(total_bits <= 24, "morphism search space too large");

    'cand: for bits in 0u64..(1 << total_bits) {
        let mut phi = Vec::with_capacity(cells);
        for c in 0..cells {
            let mut coeffs = F2Vector::zeros(n);
            for b in 0..n {
                coeffs.set(b, (bits >> (total_bits - 1 - (c * n + b))) & 1 == 1);
            }
            phi.push(AlgebraElement { coeffs });
        }
        let cand = CalculusMorphism { phi, m };

        // invertible as an m x m matrix over A: solve u v = I = v u
        if matrix_inverse_over_algebra(alg, &cand.phi, m).is_none() {
            continue;
        }

        // d-intertwining: sum_i d^mu_{nu i} x^nu u^i_j = d'^mu_{nu j} x^nu
        for mu in 0..n {
            for j in 0..m {
                let mut lhs = AlgebraElement::zero(n);
                for i in 0..m {
                    let mut f = AlgebraElement::zero(n);
                    for nu in 0..n {
                        if src.d(mu, nu, i) == 1 {
                            f.coeffs.set(nu, true);
                        }
                    }
                    lhs = lhs.add(&alg.mul(&f, cand.entry(i, j)));
                }
                let mut rhs = AlgebraElement::zero(n);
                for nu in 0..n {
                    if dst.d(mu, nu, j) == 1 {
                        rhs.coeffs.set(nu, true);
                    }
                }
                if lhs != rhs {
                    continue 'cand;
                }
            }
        }

        // bimodule map: a^{i mu}_{nu j} x^nu u^j_k = u^i_j a'^{j mu}_{nu k} x^nu
        for i in 0..m {
            for mu in 0..n {
                for k in 0..m {
                    let mut lhs = AlgebraElement::zero(n);
                    for j in 0..m {
                        let mut f = AlgebraElement::zero(n);
                        for nu in 0..n {
                            if src.a(i, mu, nu, j) == 1 {
                                f.coeffs.set(nu, true);
                            }
                        }
                        lhs = lhs.add(&alg.mul(&f, cand.entry(j, k)));
                    }
                    let mut rhs = AlgebraElement::zero(n);
                    for j in 0..m {
                        let mut f = AlgebraElement::zero(n);
                        for nu in 0..n {
                            if dst.a(j, mu, nu, k) == 1 {
                                f.coeffs.set(nu, true);
                            }
                        }
                        rhs = rhs.add(&alg.mul(cand.entry(i, j), &f));
                    }
                    if lhs != rhs {
                        continue 'cand;
                    }
                }
            }
        }
        return Some(cand);
    }
    None
}

/// Invert an m x m matrix of algebra elements, if possible.
fn matrix_inverse_over_algebra(
    alg: &AlgebraStructure,
    entries: &[AlgebraElement],
    m: usize,
) -> Option<Vec<AlgebraElement>> {
    let n = alg.n;
    // Linear system over GF(2) in the unknown coefficients of the inverse:
    // sum_j u^i_j v^j_k = delta_{ik} and the two-sided check afterwards.
    let unknowns = m * m * n;
    let mut rows = F2Matrix::zeros(0, unknowns);
    let mut rhs_bits = Vec::new();
    for i in 0..m {
        for k in 0..m {
            for rho in 0..n {
                let mut row = F2Vector::zeros(unknowns);
                for j in 0..m {
                    let u = &entries[i * m + j];
                    for nu in 0..n {
                        // coefficient of v^{jk}_nu in (u^i_j v^j_k)_rho
                        let mut acc = 0u8;
                        for mu in 0..n {
                            acc ^= u.get(mu) & alg.v(mu, nu, rho);
                        }
                        if acc == 1 {
                            let idx = (j * m + k) * n + nu;
                            row.set(idx, !row.get(idx));
                        }
                    }
                }
                rows.push_row(row);
                rhs_bits.push(((i == k && rho == 0) as u8) == 1);
            }
        }
    }
    let mut rhs = F2Vector::zeros(rhs_bits.len());
    for (idx, &b) in rhs_bits.iter().enumerate() {
        rhs.set(idx, b);
    }
    let sol = crate::f2::solve_affine(&rows, &rhs);
    let v = sol.particular?;
    let inv: Vec<AlgebraElement> = (0..m * m)
        .map(|c| {
            let mut coeffs = F2Vector::zeros(n);
            for nu in 0..n {
                coeffs.set(nu, v.get(c * n + nu));
            }
            AlgebraElement { coeffs }
        })
        .collect();
    // two-sided check
    for i in 0..m {
        for k in 0..m {
            let mut acc = AlgebraElement::zero(n);
            for j in 0..m {
                acc = acc.add(&alg.mul(&inv[i * m + j], &entries[j * m + k]));
            }
            let expect = if i == k {
                AlgebraElement::one(n)
            } else {
                AlgebraElement::zero(n)
            };
            if acc != expect {
                return None;
            }
        }
    }
    Some(inv)
}

/// Partition a list of calculi over one algebra into isomorphism classes.
/// Returns, for each input index, the class id it belongs to.
pub fn calculus_iso_classes(calculi: &[Calculus]) -> Vec<usize> {
    let mut class_of = vec![usize::MAX; calculi.len()];
    let mut next = 0;
    for i in 0..calculi.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_of[i] = next;
        for j in i + 1..calculi.len() {
            if class_of[j] == usize::MAX
                && find_calculus_morphism(&calculi[i], &calculi[j]).is_some()
            {
                class_of[j] = next;
            }
        }
        next += 1;
    }
    class_of
}
