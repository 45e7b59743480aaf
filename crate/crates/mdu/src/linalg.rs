//! Exact dense linear algebra over the prime field F_p.
//!
//! Everything downstream (homology, factorizations, lifting, limits) reduces
//! to rank / solve / kernel computations on small dense matrices, so this
//! module is the single arithmetic oracle of the crate. All arithmetic is
//! exact; there is no floating point anywhere.
//!
//! Index convention for `kron`: left factor outer, row-major. The entry of
//! `kron(A, B)` at row `iA * B.rows + iB`, column `jA * B.cols + jB` is
//! `A[(iA, jA)] * B[(iB, jB)]`. Every tensor-related module cites this one
//! convention.

use crate::{Error, Result};

/// A prime modulus, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 {
            return Err(Error::InvalidPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::InvalidPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Dense matrix over F_p, entries stored row-major as residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn new(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let entries = entries.into_iter().map(|e| e % p).collect();
        Matrix { p, rows, cols, entries }
    }

    pub fn zeros(p: u64, rows: usize, cols: usize) -> Matrix {
        Matrix { p, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Matrix {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Matrix::new(p, r, c, rows.concat())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|&e| (self.p - e) % self.p).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = c % self.p;
        let entries = self.entries.iter().map(|&a| (a * c) % self.p).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, entries }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Stack `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.rows, other.rows, "row mismatch");
        let mut out = Matrix::zeros(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p, "prime mismatch");
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let mut out = Matrix::zeros(self.p, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_cols(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, sel.len());
        for i in 0..self.rows {
            for (oj, &j) in sel.iter().enumerate() {
                out.set(i, oj, self.get(i, j));
            }
        }
        out
    }

    pub fn col(&self, j: usize) -> Matrix {
        self.select_cols(&[j])
    }

    fn inv_scalar(&self, a: u64) -> u64 {
        // Fermat: a^(p-2) mod p, p prime.
        assert!(a % self.p != 0, "zero has no inverse");
        let mut base = a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let (a, b) = (m.get(row, j), m.get(pr, j));
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = m.inv_scalar(m.get(row, col));
            for j in 0..m.cols {
                m.set(row, j, m.get(row, j) * inv % m.p);
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) != 0 {
                    let f = m.get(r, col);
                    for j in 0..m.cols {
                        let v = (m.get(r, j) + (m.p - f) * m.get(row, j)) % m.p;
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank over F_p via exact elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Any solution `X` of `self * X = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        self.solve_all(b).map(|(x, _)| x)
    }

    /// Particular solution of `self * X = b` plus a kernel basis of `self`
    /// (columns), describing the full affine solution set.
    pub fn solve_all(&self, b: &Matrix) -> Option<(Matrix, Matrix)> {
        assert_eq!(self.p, b.p, "prime mismatch");
        assert_eq!(self.rows, b.rows, "row mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // Inconsistent iff some pivot lands in the b-block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.p, self.cols, b.cols);
        for (ri, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(ri, self.cols + j));
            }
        }
        Some((x, self.kernel_basis()))
    }

    /// Solve `X * self = b` for `X` (any solution).
    pub fn solve_left(&self, b: &Matrix) -> Option<Matrix> {
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    /// Columns form a basis of `ker(self)`; column count is `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.p, self.cols, free.len());
        for (kj, &fc) in free.iter().enumerate() {
            k.set(fc, kj, 1);
            for (ri, &pc) in pivots.iter().enumerate() {
                let v = r.get(ri, fc);
                k.set(pc, kj, (self.p - v) % self.p);
            }
        }
        k
    }

    /// Inverse, when square and nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.p, self.rows))?;
        if self.mul(&x) == Matrix::identity(self.p, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Columns of the result span `im(self)` and are independent.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Kronecker product, left factor outer, row-major (see module docs).
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let mut out = Matrix::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                if a == 0 {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        out.set(
                            ia * other.rows + ib,
                            ja * other.cols + jb,
                            a * other.get(ib, jb) % self.p,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let mut out = Matrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Flatten to one column, row-major.
    pub fn vec(&self) -> Vec<u64> {
        self.entries.clone()
    }

    pub fn from_vec(p: u64, rows: usize, cols: usize, v: Vec<u64>) -> Matrix {
        Matrix::new(p, rows, cols, v)
    }
}

/// `(-1)^k` as an element of F_p.
pub fn sign(p: u64, k: i64) -> u64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        (p - 1) % p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(97).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(9).is_err());
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::identity(2, 2).rank(), 2);
        assert_eq!(Matrix::zeros(2, 3, 2).rank(), 0);
    }

    #[test]
    fn rank_ones_f2() {
        // [[1,1],[1,1]] over F_2 row-reduces to a single nonzero row.
        let m = Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = Matrix::from_rows(3, &[vec![2], vec![1]]);
        let x = Matrix::identity(3, 2).solve(&b).unwrap();
        assert_eq!(x, b);

        let zero = Matrix::zeros(2, 1, 1);
        let one = Matrix::from_rows(2, &[vec![1]]);
        assert!(zero.solve(&one).is_none());
    }

    #[test]
    fn solve_underdetermined_f2() {
        let a = Matrix::from_rows(2, &[vec![1, 1]]);
        let b = Matrix::from_rows(2, &[vec![1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3, 2).kernel_basis().cols(), 0);
        let z = Matrix::zeros(2, 1, 2);
        assert_eq!(z.kernel_basis().cols(), 2);
        let a = Matrix::from_rows(2, &[vec![1, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.to_rows(), vec![vec![1], vec![1]]);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn kron_conventions() {
        let b = Matrix::from_rows(2, &[vec![1, 0], vec![1, 1]]);
        assert_eq!(Matrix::identity(2, 1).kron(&b).unwrap(), b);

        let a = Matrix::from_rows(2, &[vec![1, 0]]);
        let c = Matrix::from_rows(2, &[vec![1], vec![1]]);
        let k = a.kron(&c).unwrap();
        assert_eq!(k.to_rows(), vec![vec![1, 0], vec![1, 0]]);
    }

    #[test]
    fn direct_sum_identity() {
        let s = Matrix::identity(2, 1).direct_sum(&Matrix::identity(2, 2)).unwrap();
        assert_eq!(s, Matrix::identity(2, 3));
    }

    #[test]
    fn prime_mismatch_is_an_error() {
        let a = Matrix::identity(2, 1);
        let b = Matrix::identity(3, 1);
        assert!(a.kron(&b).is_err());
        assert!(a.direct_sum(&b).is_err());
    }

    #[test]
    fn inverse_mod3() {
        let m = Matrix::from_rows(3, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3, 2));
        let sing = Matrix::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert!(sing.inverse().is_none());
    }

    fn arb_matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(0..p, rows * cols)
            .prop_map(move |v| Matrix::new(p, rows, cols, v))
    }

    proptest! {
        #[test]
        fn rank_of_product_bounded(a in arb_matrix(3, 3, 4), b in arb_matrix(3, 4, 2)) {
            let ab = a.mul(&b);
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn solve_is_exact_or_detectably_inconsistent(
            a in arb_matrix(2, 3, 3),
            b in arb_matrix(2, 3, 1),
        ) {
            match a.solve(&b) {
                Some(x) => prop_assert_eq!(a.mul(&x), b),
                None => {
                    let aug = a.hstack(&b);
                    prop_assert!(aug.rank() > a.rank());
                }
            }
        }

        #[test]
        fn kernel_is_independent_and_annihilated(a in arb_matrix(3, 3, 4)) {
            let k = a.kernel_basis();
            prop_assert!(a.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            prop_assert_eq!(k.cols(), a.cols() - a.rank());
        }

        #[test]
        fn kron_and_sum_ranks(a in arb_matrix(3, 2, 3), b in arb_matrix(3, 3, 2)) {
            prop_assert_eq!(a.kron(&b).unwrap().rank(), a.rank() * b.rank());
            prop_assert_eq!(a.direct_sum(&b).unwrap().rank(), a.rank() + b.rank());
        }
    }
}
