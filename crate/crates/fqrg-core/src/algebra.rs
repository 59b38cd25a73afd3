//! Finite-dimensional unital algebras over GF(2) given by structure constants.
//!
//! The basis is `x^0 = 1, x^1, ..., x^{n-1}` and multiplication is
//! `x^mu x^nu = V^{mu nu}_rho x^rho` with all coefficients in {0,1}.

use crate::error::AlgebraError;
use crate::f2::{F2Matrix, F2Vector};
use serde::{Deserialize, Serialize};

/// A unital algebra over GF(2) of dimension `n`, basis index 0 is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct AlgebraStructure {
    pub n: usize,
    /// Structure constants, index order `[mu][nu][rho]`.
    pub v: Vec<u8>,
    pub commutative: bool,
    pub label: Option<String>,
}

/// An element `f = f_mu x^mu`, coefficients in the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AlgebraElement {
    pub coeffs: F2Vector,
}

impl AlgebraElement {
    pub fn from_bits(bits: &[u8]) -> Self {
        Self {
            coeffs: F2Vector::from_bits(bits),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coeffs: F2Vector::zeros(n),
        }
    }

    pub fn one(n: usize) -> Self {
        Self {
            coeffs: F2Vector::unit(n, 0),
        }
    }

    pub fn basis(n: usize, mu: usize) -> Self {
        Self {
            coeffs: F2Vector::unit(n, mu),
        }
    }

    pub fn get(&self, mu: usize) -> u8 {
        self.coeffs.get(mu) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.xor_assign(&other.coeffs);
        Self { coeffs }
    }
}

/// A linear map on basis coefficients, used for automorphisms and basis changes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraMap {
    pub matrix: F2Matrix,
}

impl AlgebraMap {
    /// Image of an element under the map.
    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coeffs: self.matrix.mul_vec(&f.coeffs),
        }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            matrix: self.matrix.matmul(&inner.matrix),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == F2Matrix::identity(self.matrix.nrows())
    }
}

/// Per-axiom validation report.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct AlgebraReport {
    pub unital: bool,
    pub associative: bool,
    pub commutative: bool,
}

impl AlgebraReport {
    pub fn all_hold(&self, require_commutative: bool) -> bool {
        self.unital && self.associative && (!require_commutative || self.commutative)
    }
}

impl AlgebraStructure {
    /// Build from explicit structure constants, index order `[mu][nu][rho]`.
    pub fn from_constants(n: usize, v: Vec<u8>) -> Self {
        assert_eq!(v.len(), n * n * n);
        let mut alg = Self {
            n,
            v,
            commutative: false,
            label: None,
        };
        alg.commutative = alg.check_commutative();
        alg
    }

    /// The algebra defined by products of the non-unit generators.
    ///
    /// `products[mu-1][nu-1]` is the coefficient vector of `x^mu x^nu` for
    /// `mu, nu >= 1`; the unit row and column are filled in automatically.
    pub fn from_products(n: usize, products: &[Vec<Vec<u8>>]) -> Self {
        let mut v = vec![0u8; n * n * n];
        for mu in 0..n {
            for nu in 0..n {
                for rho in 0..n {
                    let val = if mu == 0 {
                        (nu == rho) as u8
                    } else if nu == 0 {
                        (mu == rho) as u8
                    } else {
                        products[mu - 1][nu - 1][rho]
                    };
                    v[(mu * n + nu) * n + rho] = val;
                }
            }
        }
        Self::from_constants(n, v)
    }

    #[inline]
    pub fn v(&self, mu: usize, nu: usize, rho: usize) -> u8 {
        self.v[(mu * self.n + nu) * self.n + rho]
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    fn check_unital(&self) -> bool {
        let n = self.n;
        (0..n).all(|mu| {
            (0..n).all(|rho| {
                self.v(0, mu, rho) == (mu == rho) as u8 && self.v(mu, 0, rho) == (mu == rho) as u8
            })
        })
    }

    fn check_associative(&self) -> bool {
        let n = self.n;
        for rho in 0..n {
            for nu in 0..n {
                for mu in 0..n {
                    for gamma in 0..n {
                        let mut lhs = 0u8;
                        let mut rhs = 0u8;
                        for lambda in 0..n {
                            lhs ^= self.v(rho, nu, lambda) & self.v(lambda, mu, gamma);
                            rhs ^= self.v(nu, mu, lambda) & self.v(rho, lambda, gamma);
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

    fn check_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|mu| (0..n).all(|nu| (0..n).all(|rho| self.v(mu, nu, rho) == self.v(nu, mu, rho))))
    }

    /// Report each axiom individually.
    pub fn validate(&self) -> AlgebraReport {
        AlgebraReport {
            unital: self.check_unital(),
            associative: self.check_associative(),
            commutative: self.check_commutative(),
        }
    }

    /// Product of two elements through the structure constants.
    pub fn mul(&self, f: &AlgebraElement, g: &AlgebraElement) -> AlgebraElement {
        let n = self.n;
        let mut out = AlgebraElement::zero(n);
        for mu in 0..n {
            if f.get(mu) == 0 {
                continue;
            }
            for nu in 0..n {
                if g.get(nu) == 0 {
                    continue;
                }
                for rho in 0..n {
                    if self.v(mu, nu, rho) == 1 {
                        out.coeffs.set(rho, !out.coeffs.get(rho));
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `f` acting on coefficient vectors.
    pub fn left_mul_matrix(&self, f: &AlgebraElement) -> F2Matrix {
        let n = self.n;
        let mut m = F2Matrix::zeros(n, n);
        for nu in 0..n {
            let col = self.mul(f, &AlgebraElement::basis(n, nu));
            for rho in 0..n {
                if col.get(rho) == 1 {
                    m.set(rho, nu, true);
                }
            }
        }
        m
    }

    /// Two-sided inverse of `f`, or `NotAUnit`.
    pub fn try_invert(&self, f: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let m = self.left_mul_matrix(f);
        let inv = m.inverse().ok_or(AlgebraError::NotAUnit)?;
        let h = AlgebraElement {
            coeffs: inv.mul_vec(&AlgebraElement::one(self.n).coeffs),
        };
        // Verify both sides; left invertibility alone is not enough in a
        // noncommutative algebra.
        let one = AlgebraElement::one(self.n);
        if self.mul(f, &h) == one && self.mul(&h, f) == one {
            Ok(h)
        } else {
            Err(AlgebraError::NotAUnit)
        }
    }

    /// All invertible elements, in coefficient order.
    pub fn units(&self) -> Vec<AlgebraElement> {
        self.elements()
            .filter(|f| self.try_invert(f).is_ok())
            .collect()
    }

    /// All `2^n` elements in coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        let n = self.n;
        (0u32..(1 << n)).map(move |bits| {
            let mut v = F2Vector::zeros(n);
            for i in 0..n {
                v.set(i, (bits >> (n - 1 - i)) & 1 == 1);
            }
            AlgebraElement { coeffs: v }
        })
    }

    fn unit_fixing_maps(&self) -> Vec<AlgebraMap> {
        let n = self.n;
        let mut out = Vec::new();
        let cols = n - 1;
        // Columns 1..n run over all 2^(n(n-1)) possibilities; invertibility is
        // filtered afterwards. Small n keeps this cheap.
        let total: u64 = 1 << (n * cols);
        for bits in 0..total {
            let mut m = F2Matrix::zeros(n, n);
            m.set(0, 0, true);
            for c in 0..cols {
                for r in 0..n {
                    if (bits >> (c * n + r)) & 1 == 1 {
                        m.set(r, c + 1, true);
                    }
                }
            }
            if m.inverse().is_some() {
                out.push(AlgebraMap { matrix: m });
            }
        }
        out
    }

    fn is_morphism(&self, phi: &AlgebraMap) -> bool {
        let n = self.n;
        for mu in 0..n {
            for nu in 0..n {
                let lhs = phi.apply(&self.mul(
                    &AlgebraElement::basis(n, mu),
                    &AlgebraElement::basis(n, nu),
                ));
                let rhs = self.mul(
                    &phi.apply(&AlgebraElement::basis(n, mu)),
                    &phi.apply(&AlgebraElement::basis(n, nu)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// All unit-fixing algebra automorphisms, found by exhaustion.
    pub fn automorphisms(&self) -> Vec<AlgebraMap> {
        self.unit_fixing_maps()
            .into_iter()
            .filter(|phi| self.is_morphism(phi))
            .collect()
    }

    /// Transport the structure constants along an invertible unit-fixing map:
    /// the result has `x'^mu = phi(x^mu)` as multiplication table.
    pub fn transport(&self, phi: &AlgebraMap) -> Self {
        let n = self.n;
        let inv = AlgebraMap {
            matrix: phi.matrix.inverse().expect("transport needs invertible map"),
        };
        let mut v = vec![0u8; n * n * n];
        for mu in 0..n {
            for nu in 0..n {
                // x'^mu x'^nu = phi^{-1}( phi(x^mu) phi(x^nu) ) in new coords
                let prod = self.mul(
                    &phi.apply(&AlgebraElement::basis(n, mu)),
                    &phi.apply(&AlgebraElement::basis(n, nu)),
                );
                let back = inv.apply(&prod);
                for rho in 0..n {
                    v[(mu * n + nu) * n + rho] = back.get(rho);
                }
            }
        }
        Self::from_constants(n, v)
    }

    /// Smallest structure-constant bit string over all unit-fixing changes of
    /// basis; used as the isomorphism-class representative.
    pub fn canonical_form(&self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for phi in self.unit_fixing_maps() {
            let cand = self.transport(&phi).v;
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("at least the identity map exists")
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }
}

/// Enumerate all unital algebras of dimension `n`, one representative per
/// isomorphism class, in canonical-form order.
///
/// With `commutative` set only commutative algebras are produced. The search
/// backtracks over the generator products with associativity checked on the
/// completed table.
pub fn enumerate_unital_algebras(n: usize, commutative: bool) -> Vec<AlgebraStructure> {
    assert!(n >= 1 && n <= 4, "enumeration is bounded to n <= 4");
    if n == 1 {
        return vec![AlgebraStructure::from_constants(1, vec![1]).with_label("k")];
    }
    let gens = n - 1;
    let pairs: Vec<(usize, usize)> = if commutative {
        (0..gens)
            .flat_map(|i| (i..gens).map(move |j| (i, j)))
            .collect()
    } else {
        (0..gens)
            .flat_map(|i| (0..gens).map(move |j| (i, j)))
            .collect()
    };

    let mut reps: Vec<(Vec<u8>, AlgebraStructure)> = Vec::new();
    let mut products = vec![vec![vec![0u8; n]; gens]; gens];
    search_products(n, commutative, &pairs, 0, &mut products, &mut reps);
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    reps.into_iter().map(|(_, alg)| alg).collect()
}

fn search_products(
    n: usize,
    commutative: bool,
    pairs: &[(usize, usize)],
    depth: usize,
    products: &mut Vec<Vec<Vec<u8>>>,
    reps: &mut Vec<(Vec<u8>, AlgebraStructure)>,
) {
    if depth == pairs.len() {
        let alg = AlgebraStructure::from_products(n, products);
        let report = alg.validate();
        if !report.all_hold(commutative) {
            return;
        }
        let canon = alg.canonical_form();
        if !reps.iter().any(|(c, _)| *c == canon) {
            let canonical = AlgebraStructure::from_constants(n, canon.clone());
            reps.push((canon, canonical));
        }
        return;
    }
    let (i, j) = pairs[depth];
    for bits in 0u32..(1 << n) {
        let mut value = vec![0u8; n];
        for rho in 0..n {
            value[rho] = ((bits >> (n - 1 - rho)) & 1) as u8;
        }
        products[i][j] = value.clone();
        if commutative {
            products[j][i] = value;
        }
        if partial_associativity_ok(n, commutative, products, pairs, depth) {
            search_products(n, commutative, pairs, depth + 1, products, reps);
        }
    }
    products[i][j] = vec![0u8; n];
    if commutative {
        let (i, j) = pairs[depth];
        products[j][i] = vec![0u8; n];
    }
}

/// Cheap pruning: associativity on triples whose products are already fixed.
fn partial_associativity_ok(
    n: usize,
    commutative: bool,
    products: &[Vec<Vec<u8>>],
    pairs: &[(usize, usize)],
    depth: usize,
) -> bool {
    let decided = |i: usize, j: usize| -> bool {
        let key = if commutative && i > j { (j, i) } else { (i, j) };
        pairs[..=depth].contains(&key)
    };
    let gens = n - 1;
    for a in 0..gens {
        for b in 0..gens {
            if !decided(a, b) {
                continue;
            }
            for c in 0..gens {
                if !decided(b, c) {
                    continue;
                }
                // (x_a x_b) x_c vs x_a (x_b x_c); both need every intermediate
                // product with a generator or unit, which the full table gives.
                let ab = &products[a][b];
                let bc = &products[b][c];
                let mut lhs = vec![0u8; n];
                let mut ok = true;
                for rho in 0..n {
                    if ab[rho] == 0 {
                        continue;
                    }
                    if rho == 0 {
                        lhs[c + 1] ^= 1;
                    } else if decided(rho - 1, c) {
                        for s in 0..n {
                            lhs[s] ^= products[rho - 1][c][s];
                        }
                    } else {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let mut rhs = vec![0u8; n];
                for rho in 0..n {
                    if bc[rho] == 0 {
                        continue;
                    }
                    if rho == 0 {
                        rhs[a + 1] ^= 1;
                    } else if decided(a, rho - 1) {
                        for s in 0..n {
                            rhs[s] ^= products[a][rho - 1][s];
                        }
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok && lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn algebra_d_passes_all_axioms() {
        let d = catalog::algebra_n3("D").unwrap();
        let report = d.validate();
        assert!(report.unital && report.associative && report.commutative);
    }

    #[test]
    fn broken_unit_row_reported() {
        let mut v = catalog::algebra_n3("D").unwrap().v;
        v[0] ^= 1; // V^{00}_0
        let alg = AlgebraStructure::from_constants(3, v);
        assert!(!alg.validate().unital);
    }

    #[test]
    fn algebra_g_is_noncommutative_but_valid() {
        let g = catalog::algebra_n3("G").unwrap();
        let report = g.validate();
        assert!(report.unital && report.associative);
        assert!(!report.commutative);
    }

    #[test]
    fn squares_in_d() {
        // z = 1 + x obeys z^2 = 1 + y
        let d = catalog::algebra_n3("D").unwrap();
        let z = AlgebraElement::from_bits(&[1, 1, 0]);
        assert_eq!(d.mul(&z, &z), AlgebraElement::from_bits(&[1, 0, 1]));
    }

    #[test]
    fn unit_is_neutral() {
        let f = catalog::algebra_n3("F").unwrap();
        let one = AlgebraElement::one(3);
        for g in f.elements() {
            assert_eq!(f.mul(&one, &g), g);
            assert_eq!(f.mul(&g, &one), g);
        }
    }

    #[test]
    fn f_product_xy() {
        // in F: x y = 1 + x
        let f = catalog::algebra_n3("F").unwrap();
        let x = AlgebraElement::basis(3, 1);
        let y = AlgebraElement::basis(3, 2);
        assert_eq!(f.mul(&x, &y), AlgebraElement::from_bits(&[1, 1, 0]));
    }

    #[test]
    fn inverse_in_c_n2() {
        // x^2 = 1 + x, so x^{-1} = 1 + x
        let c = catalog::algebra_n2("C").unwrap();
        let x = AlgebraElement::basis(2, 1);
        let inv = c.try_invert(&x).unwrap();
        assert_eq!(inv, AlgebraElement::from_bits(&[1, 1]));
        let one = AlgebraElement::one(2);
        assert_eq!(c.try_invert(&one).unwrap(), one);
    }

    #[test]
    fn invert_agrees_with_brute_force() {
        for alg in [
            catalog::algebra_n3("B").unwrap(),
            catalog::algebra_n3("D").unwrap(),
            catalog::algebra_n3("G").unwrap(),
        ] {
            let one = AlgebraElement::one(alg.n);
            for f in alg.elements() {
                let brute = alg
                    .elements()
                    .find(|h| alg.mul(&f, h) == one && alg.mul(h, &f) == one);
                match alg.try_invert(&f) {
                    Ok(h) => assert_eq!(Some(h), brute),
                    Err(_) => assert!(brute.is_none()),
                }
            }
        }
        // x is not a unit in B
        let b = catalog::algebra_n3("B").unwrap();
        assert!(b.try_invert(&AlgebraElement::basis(3, 1)).is_err());
    }

    #[test]
    fn automorphism_groups() {
        let b = catalog::algebra_n3("B").unwrap();
        let autos = b.automorphisms();
        let swap = AlgebraMap {
            matrix: F2Matrix::from_dense(3, 3, &[1, 0, 0, 0, 0, 1, 0, 1, 0]),
        };
        assert!(autos.contains(&swap));
        assert!(autos.iter().any(AlgebraMap::is_identity));

        // D has automorphism group of order 2 generated by x <-> y
        let d = catalog::algebra_n3("D").unwrap();
        let autos = d.automorphisms();
        assert_eq!(autos.len(), 2);
        assert!(autos.contains(&swap));
    }

    #[test]
    fn automorphisms_form_a_group() {
        let d = catalog::algebra_n3("D").unwrap();
        let autos = d.automorphisms();
        assert!(autos.iter().any(AlgebraMap::is_identity));
        for a in &autos {
            assert!(a.matrix.inverse().is_some());
            for b in &autos {
                let c = a.compose(b);
                assert!(autos.contains(&c), "composition left the group");
            }
            let inv = AlgebraMap {
                matrix: a.matrix.inverse().unwrap(),
            };
            assert!(autos.contains(&inv));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_unital_algebras(1, true).len(), 1);
        assert_eq!(enumerate_unital_algebras(2, true).len(), 3);
        assert_eq!(enumerate_unital_algebras(3, true).len(), 6);
        let with_noncomm = enumerate_unital_algebras(3, false);
        assert_eq!(with_noncomm.len(), 7);
    }

    #[test]
    fn enumerated_classes_are_valid_and_distinct() {
        let reps = enumerate_unital_algebras(3, false);
        for alg in &reps {
            assert!(alg.validate().all_hold(false));
        }
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!a.is_isomorphic(b), "representatives must be pairwise distinct");
            }
        }
    }

    #[test]
    fn noncommutative_extra_class_is_g() {
        let all = enumerate_unital_algebras(3, false);
        let comm = enumerate_unital_algebras(3, true);
        let noncomm: Vec<_> = all.iter().filter(|a| !a.commutative).collect();
        assert_eq!(noncomm.len(), all.len() - comm.len());
        let g = catalog::algebra_n3("G").unwrap();
        assert!(noncomm.iter().any(|a| a.is_isomorphic(&g)));
    }
}
