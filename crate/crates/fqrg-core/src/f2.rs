//! Dense exact linear algebra over GF(2).
//!
//! Vectors are bit-packed into `u64` words; addition is XOR and there is no
//! rounding of any kind. Everything here is a pure function on immutable
//! values, so all of it is safe to share across worker threads.

use std::fmt;

/// A vector over GF(2), bit-packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    words: Vec<u64>,
    len: usize,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Basis vector e_i of the given length.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range (len {})", self.len);
        let (w, b) = (i / 64, i % 64);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the AND with another vector (the GF(2) dot product).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i) as u8)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter_bits().collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: Vec<F2Vector>,
    cols: usize,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![F2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<F2Vector>) -> Self {
        let cols = rows.first().map_or(0, F2Vector::len);
        assert!(rows.iter().all(|r| r.len() == cols));
        Self { rows, cols }
    }

    /// Row-major 0/1 entries.
    pub fn from_dense(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(rows * cols, entries.len());
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &F2Vector {
        &self.rows[r]
    }

    pub fn push_row(&mut self, row: F2Vector) {
        if self.rows.is_empty() && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = F2Vector::zeros(self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            out.set(r, row.dot(v));
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.nrows());
        let mut out = Self::zeros(self.nrows(), other.ncols());
        for r in 0..self.nrows() {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let row = out.rows[r].clone();
                    let mut row = row;
                    row.xor_assign(&other.rows[k]);
                    out.rows[r] = row;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.nrows());
        for r in 0..self.nrows() {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Row rank via Gaussian elimination on a working copy.
    pub fn rank(&self) -> usize {
        let mut work = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            let pivot_row = work[rank].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<F2Vector> {
        solve_affine(self, &F2Vector::zeros(self.nrows())).kernel_basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.nrows() != self.cols {
            return None;
        }
        let n = self.cols;
        // Eliminate on [self | I].
        let mut work: Vec<(F2Vector, F2Vector)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), F2Vector::unit(n, i)))
            .collect();
        let mut pivot_row = 0;
        for col in 0..n {
            let Some(p) = (pivot_row..n).find(|&r| work[r].0.get(col)) else {
                return None;
            };
            work.swap(pivot_row, p);
            let (lead, aug) = (work[pivot_row].0.clone(), work[pivot_row].1.clone());
            for (r, (row, row_aug)) in work.iter_mut().enumerate() {
                if r != pivot_row && row.get(col) {
                    row.xor_assign(&lead);
                    row_aug.xor_assign(&aug);
                }
            }
            pivot_row += 1;
        }
        Some(Self::from_rows(work.into_iter().map(|(_, aug)| aug).collect()))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// All solutions of `Mx = rhs` as a particular solution plus a kernel basis.
///
/// Inconsistency is a value (`particular == None`), not an error: the
/// classification loops treat "no solution" as a normal branch.
#[derive(Clone, Debug)]
pub struct AffineSolutionSet {
    pub particular: Option<F2Vector>,
    pub kernel_basis: Vec<F2Vector>,
}

impl AffineSolutionSet {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Number of solutions (zero when inconsistent).
    pub fn count(&self) -> u64 {
        if self.is_consistent() {
            1u64 << self.kernel_basis.len()
        } else {
            0
        }
    }

    pub fn dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Member selected by a kernel-coefficient index.
    ///
    /// Bit j of `index` (from the most significant used bit down) multiplies
    /// `kernel_basis[j]`, so increasing indices enumerate members in
    /// lexicographic order of the coefficient vector.
    pub fn member(&self, index: u64) -> F2Vector {
        let particular = self
            .particular
            .as_ref()
            .expect("member() on inconsistent system");
        let dim = self.kernel_basis.len();
        assert!(dim >= 64 || index < (1u64 << dim), "member index out of range");
        let mut out = particular.clone();
        for (j, basis) in self.kernel_basis.iter().enumerate() {
            if (index >> (dim - 1 - j)) & 1 == 1 {
                out.xor_assign(basis);
            }
        }
        out
    }

    /// All members in lexicographic kernel-coefficient order.
    ///
    /// Only sensible for small spaces; panics above 2^24 members.
    pub fn members(&self) -> Vec<F2Vector> {
        if !self.is_consistent() {
            return Vec::new();
        }
        assert!(self.kernel_basis.len() <= 24, "solution space too large to list");
        (0..self.count()).map(|i| self.member(i)).collect()
    }
}

/// Solve `Mx = rhs` over GF(2), returning the full affine solution set.
pub fn solve_affine(m: &F2Matrix, rhs: &F2Vector) -> AffineSolutionSet {
    assert_eq!(m.nrows(), rhs.len(), "rhs length must match row count");
    let ncols = m.ncols();
    let mut work: Vec<(F2Vector, bool)> = m
        .rows
        .iter()
        .zip(rhs.iter_bits())
        .map(|(r, b)| (r.clone(), b == 1))
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..work.len()).find(|&r| work[r].0.get(col)) else {
            continue;
        };
        work.swap(rank, p);
        let (lead, lead_rhs) = (work[rank].0.clone(), work[rank].1);
        for (r, (row, b)) in work.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&lead);
                *b ^= lead_rhs;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == work.len() {
            break;
        }
    }

    // A zero row with nonzero rhs means the system is inconsistent.
    if work[rank..].iter().any(|(row, b)| *b && row.is_zero()) {
        return AffineSolutionSet {
            particular: None,
            kernel_basis: Vec::new(),
        };
    }

    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };

    let mut particular = F2Vector::zeros(ncols);
    for (i, &c) in pivot_cols.iter().enumerate() {
        if work[i].1 {
            particular.set(c, true);
        }
    }

    let mut kernel_basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut basis = F2Vector::zeros(ncols);
        basis.set(free, true);
        for (i, &c) in pivot_cols.iter().enumerate() {
            if work[i].0.get(free) {
                basis.set(c, true);
            }
        }
        kernel_basis.push(basis);
    }

    AffineSolutionSet {
        particular: Some(particular),
        kernel_basis,
    }
}
