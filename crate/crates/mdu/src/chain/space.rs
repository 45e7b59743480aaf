//! Finite-dimensional spaces of graded maps and exact affine solving.
//!
//! Chain maps, comma morphisms, lifts, and hom-set enumerations are all
//! solution sets of affine systems in the entries of graded maps. This module
//! provides the one solver everything routes through: describe the unknowns
//! as a tuple of graded-hom spaces, give an affine evaluation of the
//! constraints, and get back a particular solution plus a kernel basis.

use std::collections::BTreeMap;

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::linalg::Matrix;

/// The space of graded maps `source -> target`, coordinatized degreewise,
/// row-major within each degree, degrees ascending.
#[derive(Debug, Clone)]
pub struct HomSpace {
    source: ChainComplex,
    target: ChainComplex,
    /// (degree, rows, cols) blocks with rows*cols > 0.
    blocks: Vec<(i64, usize, usize)>,
    dim: usize,
}

impl HomSpace {
    pub fn new(source: &ChainComplex, target: &ChainComplex) -> HomSpace {
        assert_eq!(source.p(), target.p(), "prime mismatch");
        let mut blocks = Vec::new();
        let mut dim = 0;
        for n in crate::chain::complex::degrees_of(&[source, target]) {
            let (r, c) = (target.dim(n), source.dim(n));
            if r * c > 0 {
                blocks.push((n, r, c));
                dim += r * c;
            }
        }
        HomSpace { source: source.clone(), target: target.clone(), blocks, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn from_vec(&self, v: &[u64]) -> ChainMap {
        assert_eq!(v.len(), self.dim);
        let p = self.source.p();
        let mut comps = BTreeMap::new();
        let mut off = 0;
        for &(n, r, c) in &self.blocks {
            let m = Matrix::from_vec(p, r, c, v[off..off + r * c].to_vec());
            off += r * c;
            if !m.is_zero() {
                comps.insert(n, m);
            }
        }
        ChainMap::graded(self.source.clone(), self.target.clone(), comps)
            .expect("shapes match by construction")
    }

    pub fn to_vec(&self, f: &ChainMap) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.dim);
        for &(n, _, _) in &self.blocks {
            out.extend(f.comp(n).vec());
        }
        out
    }

    pub fn zero_map(&self) -> ChainMap {
        ChainMap::zero(&self.source, &self.target)
    }
}

/// A tuple of graded-hom unknowns.
#[derive(Debug, Clone)]
pub struct MapVars {
    spaces: Vec<HomSpace>,
}

impl MapVars {
    pub fn new(spaces: Vec<HomSpace>) -> MapVars {
        MapVars { spaces }
    }

    pub fn dim(&self) -> usize {
        self.spaces.iter().map(HomSpace::dim).sum()
    }

    pub fn zero(&self) -> Vec<ChainMap> {
        self.spaces.iter().map(HomSpace::zero_map).collect()
    }

    pub fn from_vec(&self, v: &[u64]) -> Vec<ChainMap> {
        assert_eq!(v.len(), self.dim());
        let mut out = Vec::with_capacity(self.spaces.len());
        let mut off = 0;
        for s in &self.spaces {
            out.push(s.from_vec(&v[off..off + s.dim()]));
            off += s.dim();
        }
        out
    }

    fn basis_vec(&self, k: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }
}

/// The affine solution set of `eval(vars) = 0`, presented as a particular
/// solution plus a kernel basis. `eval` must be affine in the unknowns.
pub struct AffineSolutions {
    pub vars: MapVars,
    pub particular: Vec<u64>,
    /// Kernel basis vectors (each of length `vars.dim()`).
    pub kernel: Vec<Vec<u64>>,
    p: u64,
}

impl AffineSolutions {
    /// Number of solutions is `p^(kernel rank)`.
    pub fn count_log_p(&self) -> usize {
        self.kernel.len()
    }

    pub fn solution(&self, coeffs: &[u64]) -> Vec<ChainMap> {
        assert_eq!(coeffs.len(), self.kernel.len());
        let mut v = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi = (*vi + c * ki) % self.p;
            }
        }
        self.vars.from_vec(&v)
    }

    /// All solutions, in lexicographic coefficient order. Only call when
    /// `p^(kernel rank)` is small; the comma layer enforces the 2^16 cap.
    pub fn enumerate(&self) -> Vec<Vec<ChainMap>> {
        let k = self.kernel.len();
        let total = (self.p as u128).pow(k as u32);
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u64; k];
        loop {
            out.push(self.solution(&coeffs));
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Solve the affine system `eval(vars) = 0` exactly over F_p.
///
/// `eval` is called once on the zero tuple and once per basis unknown; the
/// system matrix is assembled column by column from those evaluations.
pub fn solve_affine(
    p: u64,
    vars: MapVars,
    eval: impl Fn(&[ChainMap]) -> Vec<u64>,
) -> Option<AffineSolutions> {
    let at_zero = eval(&vars.zero());
    let out_dim = at_zero.len();
    let n = vars.dim();
    let mut a = Matrix::zeros(p, out_dim, n);
    for k in 0..n {
        let col = eval(&vars.from_vec(&vars.basis_vec(k)));
        assert_eq!(col.len(), out_dim, "eval must have fixed output length");
        for i in 0..out_dim {
            // Linear part: eval(e_k) - eval(0).
            a.set(i, k, (col[i] + p - at_zero[i] % p) % p);
        }
    }
    let rhs = Matrix::from_vec(p, out_dim, 1, at_zero.iter().map(|&v| (p - v % p) % p).collect());
    let (x, k) = a.solve_all(&rhs)?;
    let kernel = (0..k.cols()).map(|j| k.col(j).vec()).collect();
    Some(AffineSolutions { vars, particular: x.vec(), kernel, p })
}

/// Entries of the chain-condition defect `f_{n-1} d_n - d_n f_n` of a graded
/// map, concatenated over all relevant degrees. Zero iff `f` is a chain map.
pub fn chain_defect(f: &ChainMap) -> Vec<u64> {
    let mut out = Vec::new();
    for n in crate::chain::complex::degrees_of(&[f.source(), f.target()]) {
        let lhs = f.comp(n - 1).mul(&f.source().d(n));
        let rhs = f.target().d(n).mul(&f.comp(n));
        out.extend(lhs.sub(&rhs).vec());
    }
    out
}

/// Entries of `f - g` for parallel graded maps.
pub fn difference(f: &ChainMap, g: &ChainMap) -> Vec<u64> {
    assert_eq!(f.source(), g.source());
    assert_eq!(f.target(), g.target());
    let mut out = Vec::new();
    for n in crate::chain::complex::degrees_of(&[f.source(), f.target()]) {
        out.extend(f.comp(n).sub(&g.comp(n)).vec());
    }
    out
}

/// Basis of the space of chain maps `source -> target`.
pub fn chain_map_basis(source: &ChainComplex, target: &ChainComplex) -> Vec<ChainMap> {
    let vars = MapVars::new(vec![HomSpace::new(source, target)]);
    let sols = solve_affine(source.p(), vars, |fs| chain_defect(&fs[0]))
        .expect("homogeneous system is consistent");
    sols.kernel
        .iter()
        .map(|v| sols.vars.from_vec(v).remove(0))
        .collect()
}

/// All chain maps `source -> target`, when there are at most `cap` of them;
/// `None` when the count exceeds the cap.
pub fn enumerate_chain_maps(
    source: &ChainComplex,
    target: &ChainComplex,
    cap: u128,
) -> Option<Vec<ChainMap>> {
    let p = source.p();
    let vars = MapVars::new(vec![HomSpace::new(source, target)]);
    let sols = solve_affine(p, vars, |fs| chain_defect(&fs[0]))?;
    if (p as u128).checked_pow(sols.count_log_p() as u32)? > cap {
        return None;
    }
    Some(sols.enumerate().into_iter().map(|mut t| t.remove(0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_maps_from_disk_to_itself() {
        let d1 = ChainComplex::disk(2, 1);
        let basis = chain_map_basis(&d1, &d1);
        assert_eq!(basis.len(), 1);
        let all = enumerate_chain_maps(&d1, &d1, 1 << 16).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|f| f.is_chain_map()));
    }

    #[test]
    fn no_nonzero_chain_map_sphere_to_disk_above() {
        let s1 = ChainComplex::sphere(2, 1);
        let d1 = ChainComplex::disk(2, 1);
        let all = enumerate_chain_maps(&s1, &d1, 1 << 16).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_zero_map());
    }

    #[test]
    fn affine_solver_handles_inhomogeneous_systems() {
        // Find chain maps f: S0 -> S0 with f = id, i.e. f - id = 0.
        let s0 = ChainComplex::sphere(3, 0);
        let id = ChainMap::identity(&s0);
        let vars = MapVars::new(vec![HomSpace::new(&s0, &s0)]);
        let sols = solve_affine(3, vars, |fs| {
            let mut v = chain_defect(&fs[0]);
            v.extend(difference(&fs[0], &id));
            v
        })
        .unwrap();
        assert_eq!(sols.count_log_p(), 0);
        assert_eq!(sols.solution(&[])[0], id);
    }
}
