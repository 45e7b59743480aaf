//! Bounded chain complexes of finite-dimensional F_p vector spaces.
//!
//! Convention: the differential lowers degree, `d_n : C_n -> C_{n-1}`, and a
//! chain map satisfies `f_{n-1} ∘ d_n = d_n ∘ f_n` in every degree. Objects
//! and maps are stored sparsely by degree (zero data is dropped), which makes
//! structural equality meaningful across different presentation windows.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::{Error, Result};

/// A finitely supported chain complex over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    p: u64,
    /// Nonzero dimensions only.
    dims: BTreeMap<i64, usize>,
    /// Nonzero differentials only, keyed by the source degree n of `d_n`.
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Build a complex from a degree window. `dims[i]` is the dimension in
    /// degree `lo + i`; `diffs` maps `n` to `d_n` for `lo < n <= hi`.
    pub fn new(
        p: u64,
        lo: i64,
        dims: Vec<usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<ChainComplex> {
        let mut dm = BTreeMap::new();
        for (i, &d) in dims.iter().enumerate() {
            if d > 0 {
                dm.insert(lo + i as i64, d);
            }
        }
        let mut c = ChainComplex { p, dims: dm, diffs: BTreeMap::new() };
        for (n, m) in diffs {
            if m.p() != p {
                return Err(Error::PrimeMismatch(p, m.p()));
            }
            if m.rows() != c.dim(n - 1) || m.cols() != c.dim(n) {
                return Err(Error::Shape(format!(
                    "d_{n} must be {}x{}, got {}x{}",
                    c.dim(n - 1),
                    c.dim(n),
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_zero() {
                c.diffs.insert(n, m);
            }
        }
        c.check_d_squared()?;
        Ok(c)
    }

    fn check_d_squared(&self) -> Result<()> {
        for (&n, d_n) in &self.diffs {
            if let Some(d_next) = self.diffs.get(&(n + 1)) {
                if !d_n.mul(d_next).is_zero() {
                    return Err(Error::NotAComplex(n + 1));
                }
            }
        }
        Ok(())
    }

    /// The zero complex.
    pub fn zero(p: u64) -> ChainComplex {
        ChainComplex { p, dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// Sphere: F_p in degree `n`, zero differential.
    pub fn sphere(p: u64, n: i64) -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(n, 1);
        ChainComplex { p, dims, diffs: BTreeMap::new() }
    }

    /// Disk: F_p in degrees `n` and `n-1` with identity differential.
    pub fn disk(p: u64, n: i64) -> ChainComplex {
        let mut dims = BTreeMap::new();
        dims.insert(n, 1);
        dims.insert(n - 1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(n, Matrix::identity(p, 1));
        ChainComplex { p, dims, diffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d_n : C_n -> C_{n-1}`, materialized with the right shape.
    pub fn d(&self, n: i64) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.p, self.dim(n - 1), self.dim(n)))
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    /// Smallest window `[lo, hi]` containing the support (`(0, -1)`-style
    /// empty window for the zero complex is reported as `None`).
    pub fn window(&self) -> Option<(i64, i64)> {
        let lo = *self.dims.keys().next()?;
        let hi = *self.dims.keys().last()?;
        Some((lo, hi))
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        assert_eq!(self.p, other.p, "prime mismatch");
        let mut dims = BTreeMap::new();
        for n in degrees_of(&[self, other]) {
            let d = self.dim(n) + other.dim(n);
            if d > 0 {
                dims.insert(n, d);
            }
        }
        let mut diffs = BTreeMap::new();
        for &n in dims.keys() {
            let d = self.d(n).direct_sum(&other.d(n)).expect("same prime");
            if !d.is_zero() {
                diffs.insert(n, d);
            }
        }
        ChainComplex { p: self.p, dims, diffs }
    }
}

/// Union of the degree supports of several complexes, ascending.
pub fn degrees_of(cs: &[&ChainComplex]) -> Vec<i64> {
    let mut ds: Vec<i64> = cs.iter().flat_map(|c| c.support()).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// A degreewise linear map between chain complexes.
///
/// `ChainMap::new` enforces the chain condition; `ChainMap::graded` skips it
/// (graded maps are used as raw material when assembling linear systems whose
/// solutions are the actual chain maps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap> {
        let f = ChainMap::graded(source, target, comps)?;
        f.check_chain_condition()?;
        Ok(f)
    }

    /// A degreewise map with validated shapes but no chain condition.
    pub fn graded(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, Matrix>,
    ) -> Result<ChainMap> {
        let mut cm = BTreeMap::new();
        for (n, m) in comps {
            if m.p() != source.p() {
                return Err(Error::PrimeMismatch(source.p(), m.p()));
            }
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(Error::Shape(format!(
                    "component at degree {n} must be {}x{}, got {}x{}",
                    target.dim(n),
                    source.dim(n),
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_zero() {
                cm.insert(n, m);
            }
        }
        Ok(ChainMap { source, target, comps: cm })
    }

    pub fn check_chain_condition(&self) -> Result<()> {
        for n in degrees_of(&[&self.source, &self.target]) {
            let lhs = self.comp(n - 1).mul(&self.source.d(n));
            let rhs = self.target.d(n).mul(&self.comp(n));
            if lhs != rhs {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(())
    }

    pub fn is_chain_map(&self) -> bool {
        self.check_chain_condition().is_ok()
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        let comps = x
            .support()
            .into_iter()
            .map(|n| (n, Matrix::identity(x.p(), x.dim(n))))
            .collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        assert_eq!(source.p(), target.p(), "prime mismatch");
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn p(&self) -> u64 {
        self.source.p()
    }

    pub fn comp(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.p(), self.target.dim(n), self.source.dim(n)))
    }

    pub fn components(&self) -> &BTreeMap<i64, Matrix> {
        &self.comps
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.is_empty()
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(
            other.target, self.source,
            "composition endpoint mismatch"
        );
        let mut comps = BTreeMap::new();
        for n in degrees_of(&[&other.source, &self.target]) {
            let m = self.comp(n).mul(&other.comp(n));
            if !m.is_zero() {
                comps.insert(n, m);
            }
        }
        ChainMap { source: other.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source, "source mismatch");
        assert_eq!(self.target, other.target, "target mismatch");
        let mut comps = BTreeMap::new();
        for n in degrees_of(&[&self.source, &self.target]) {
            let m = self.comp(n).add(&other.comp(n));
            if !m.is_zero() {
                comps.insert(n, m);
            }
        }
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChainMap {
        let comps = self.comps.iter().map(|(&n, m)| (n, m.neg())).collect();
        ChainMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Degreewise injective.
    pub fn is_injective(&self) -> bool {
        degrees_of(&[&self.source, &self.target])
            .into_iter()
            .all(|n| self.comp(n).rank() == self.source.dim(n))
    }

    /// Degreewise surjective.
    pub fn is_surjective(&self) -> bool {
        degrees_of(&[&self.source, &self.target])
            .into_iter()
            .all(|n| self.comp(n).rank() == self.target.dim(n))
    }

    /// Degreewise bijective.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of a degreewise bijection.
    pub fn invert(&self) -> Result<ChainMap> {
        if !self.is_isomorphism() {
            return Err(Error::NotInvertible);
        }
        let mut comps = BTreeMap::new();
        for n in self.target.support() {
            let m = self.comp(n).inverse().ok_or(Error::NotInvertible)?;
            if !m.is_zero() {
                comps.insert(n, m);
            }
        }
        Ok(ChainMap { source: self.target.clone(), target: self.source.clone(), comps })
    }

    /// Reverse the arrow (used by the opposite-category adapter). The data is
    /// unchanged; only the bookkeeping of which end is the source flips.
    pub fn formal_reverse(&self) -> ChainMap {
        ChainMap {
            source: self.target.clone(),
            target: self.source.clone(),
            comps: self.comps.clone(),
        }
    }

    /// Direct sum of maps.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let mut comps = BTreeMap::new();
        for n in degrees_of(&[&source, &target]) {
            // Block layout must match ChainComplex::direct_sum.
            let a = pad(&self.comp(n), self.target.dim(n), self.source.dim(n));
            let b = pad(&other.comp(n), other.target.dim(n), other.source.dim(n));
            let m = a.direct_sum(&b).expect("same prime");
            if !m.is_zero() {
                comps.insert(n, m);
            }
        }
        ChainMap { source, target, comps }
    }
}

fn pad(m: &Matrix, rows: usize, cols: usize) -> Matrix {
    assert_eq!((m.rows(), m.cols()), (rows, cols));
    m.clone()
}

/// The three model-structure flags of the backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub is_cof: bool,
    pub is_fib: bool,
    pub is_we: bool,
}

impl ClassFlags {
    pub fn all() -> ClassFlags {
        ClassFlags { is_cof: true, is_fib: true, is_we: true }
    }

    pub fn is_trivial_cof(&self) -> bool {
        self.is_cof && self.is_we
    }

    pub fn is_trivial_fib(&self) -> bool {
        self.is_fib && self.is_we
    }

    /// cof <-> fib swap used by the opposite-category adapter.
    pub fn swap(self) -> ClassFlags {
        ClassFlags { is_cof: self.is_fib, is_fib: self.is_cof, is_we: self.is_we }
    }
}

/// Homology of one complex: dimensions plus chosen cycle representatives.
#[derive(Debug, Clone)]
pub struct Homology {
    p: u64,
    /// Per degree: (cycle basis Z, boundary basis B, homology representatives R).
    /// Columns of R are cycles whose classes form a basis of H_n.
    data: BTreeMap<i64, (Matrix, Matrix, Matrix)>,
}

impl Homology {
    pub fn dim(&self, n: i64) -> usize {
        self.data.get(&n).map_or(0, |(_, _, r)| r.cols())
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.data
            .iter()
            .filter(|(_, (_, _, r))| r.cols() > 0)
            .map(|(&n, (_, _, r))| (n, r.cols()))
            .collect()
    }

    /// Chosen cycle representatives of a homology basis in degree n
    /// (columns; vectors in C_n).
    pub fn representatives(&self, n: i64) -> Option<&Matrix> {
        self.data.get(&n).map(|(_, _, r)| r)
    }

    /// Coordinates of the class of the cycle `z` (a column vector in C_n)
    /// in the chosen homology basis. `z` must be a cycle.
    pub fn class_of(&self, n: i64, z: &Matrix) -> Matrix {
        let Some((_, b, r)) = self.data.get(&n) else {
            assert!(z.is_zero(), "nonzero cycle in empty degree");
            return Matrix::zeros(self.p, 0, 1);
        };
        // Write z = B x + R y; return y. Consistent because [B R] spans Z_n.
        let br = b.hstack(r);
        let sol = br.solve(z).expect("cycle must lie in span of boundaries + representatives");
        sol.submatrix(b.cols()..b.cols() + r.cols(), 0..1)
    }
}

/// `H_n = ker d_n / im d_{n+1}`, with chosen cycle bases enabling induced-map
/// computation. Weak equivalence detection never compares dimensions alone.
pub fn homology(x: &ChainComplex) -> Homology {
    let p = x.p();
    let mut data = BTreeMap::new();
    for n in x.support() {
        let z = x.d(n).kernel_basis();
        let b_full = x.d(n + 1);
        let b = b_full.column_space_basis();
        // Pick columns of Z extending B to a basis of the cycle space.
        let bz = b.hstack(&z);
        let (_, pivots) = bz.rref();
        let rep_cols: Vec<usize> =
            pivots.iter().filter(|&&c| c >= b.cols()).map(|&c| c - b.cols()).collect();
        let r = z.select_cols(&rep_cols);
        data.insert(n, (z, b, r));
    }
    Homology { p, data }
}

/// The matrix of the induced map `H_n(f) : H_n(src) -> H_n(tgt)` in the
/// chosen bases.
pub fn induced_homology_map(f: &ChainMap, hs: &Homology, ht: &Homology, n: i64) -> Matrix {
    let p = f.p();
    let src_dim = hs.dim(n);
    let tgt_dim = ht.dim(n);
    let mut out = Matrix::zeros(p, tgt_dim, src_dim);
    if src_dim == 0 {
        return out;
    }
    let reps = hs.representatives(n).expect("source has homology in this degree");
    for j in 0..src_dim {
        let z = reps.col(j);
        let fz = f.comp(n).mul(&z);
        let class = ht.class_of(n, &fz);
        for i in 0..tgt_dim {
            out.set(i, j, class.get(i, 0));
        }
    }
    out
}

/// Quasi-isomorphism test: the induced map on homology is injective and
/// surjective in every degree (decided by exact ranks).
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let hs = homology(f.source());
    let ht = homology(f.target());
    for n in degrees_of(&[f.source(), f.target()]) {
        let m = induced_homology_map(f, &hs, &ht, n);
        let r = m.rank();
        if r != hs.dim(n) || r != ht.dim(n) {
            return false;
        }
    }
    true
}

/// Classify a chain map in the backend model structure: cofibrations are the
/// degreewise injections, fibrations the degreewise surjections, weak
/// equivalences the quasi-isomorphisms.
pub fn classify_map(f: &ChainMap) -> ClassFlags {
    ClassFlags {
        is_cof: f.is_injective(),
        is_fib: f.is_surjective(),
        is_we: is_quasi_iso(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1(p: u64) -> ChainComplex {
        ChainComplex::disk(p, 1)
    }

    fn s0(p: u64) -> ChainComplex {
        ChainComplex::sphere(p, 0)
    }

    fn s1(p: u64) -> ChainComplex {
        ChainComplex::sphere(p, 1)
    }

    /// The canonical surjection D1 ->> S1 (identity in degree 1).
    pub fn q_map(p: u64) -> ChainMap {
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(p, 1));
        ChainMap::new(d1(p), s1(p), comps).unwrap()
    }

    #[test]
    fn d_squared_enforced() {
        // dims (1,1,1) in degrees 0..2 with both differentials the identity.
        let mut diffs = BTreeMap::new();
        diffs.insert(1, Matrix::identity(2, 1));
        diffs.insert(2, Matrix::identity(2, 1));
        assert!(matches!(
            ChainComplex::new(2, 0, vec![1, 1, 1], diffs),
            Err(Error::NotAComplex(2))
        ));
    }

    #[test]
    fn chain_condition_enforced() {
        // There is no nonzero chain map D1 -> S0 under d_n: C_n -> C_{n-1}.
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(2, 1));
        assert!(ChainMap::new(d1(2), s0(2), comps).is_err());
        // And the zero map is fine.
        assert!(ChainMap::zero(&d1(2), &s0(2)).is_chain_map());
    }

    #[test]
    fn homology_of_spheres_and_disks() {
        let h = homology(&s0(2));
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dims().len(), 1);

        let h = homology(&d1(2));
        assert!(h.dims().is_empty());

        let h = homology(&s0(2).direct_sum(&d1(2)));
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dims().len(), 1);
    }

    #[test]
    fn classify_identity_on_disk() {
        let f = ChainMap::identity(&d1(2));
        assert_eq!(classify_map(&f), ClassFlags::all());
    }

    #[test]
    fn classify_zero_into_disk() {
        let f = ChainMap::zero(&ChainComplex::zero(2), &d1(2));
        let c = classify_map(&f);
        assert!(c.is_cof && c.is_we && !c.is_fib);
    }

    #[test]
    fn classify_disk_to_sphere_projection() {
        let q = q_map(2);
        let c = classify_map(&q);
        assert!(c.is_fib && !c.is_cof && !c.is_we);
    }

    #[test]
    fn disk_endomorphisms_are_zero_and_identity() {
        // Any chain endo of D1 is determined by one scalar (f1 = f0).
        let x = d1(2);
        let mut count = 0;
        for a in 0..2u64 {
            for b in 0..2u64 {
                let mut comps = BTreeMap::new();
                comps.insert(1, Matrix::new(2, 1, 1, vec![a]));
                comps.insert(0, Matrix::new(2, 1, 1, vec![b]));
                if ChainMap::new(x.clone(), x.clone(), comps).is_ok() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2);
    }

    #[test]
    fn only_zero_map_from_s1_to_d1() {
        for a in 0..2u64 {
            let mut comps = BTreeMap::new();
            comps.insert(1, Matrix::new(2, 1, 1, vec![a]));
            let ok = ChainMap::new(s1(2), d1(2), comps).is_ok();
            assert_eq!(ok, a == 0);
        }
    }

    #[test]
    fn induced_map_detects_non_iso_on_equal_dims() {
        // X = S0 ⊕ D1 and Y = S0 have H_0 = F_2 on both sides; the map that
        // kills the sphere and projects the disk is not a quasi-iso even
        // though some degreewise dims agree.
        let x = s0(2).direct_sum(&d1(2));
        let y = s0(2);
        let mut comps = BTreeMap::new();
        // Degree 0 of X is (sphere, disk-bottom); send sphere to 0, bottom to gen.
        comps.insert(0, Matrix::new(2, 1, 2, vec![0, 1]));
        let f = ChainMap::new(x, y, comps);
        // This is only a chain map if f0 ∘ d1 = 0; disk bottom is a boundary,
        // so sending it to the generator violates the chain condition.
        assert!(f.is_err());
    }
}
