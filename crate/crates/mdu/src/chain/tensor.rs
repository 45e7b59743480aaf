//! Tensor product, internal hom, evaluation/transposition, braiding, and the
//! pushout product for chain complexes.
//!
//! Gradings: `(X⊗Y)_n = ⊕_{i+j=n} X_i ⊗ Y_j` with blocks ordered by
//! ascending `i` and `kron`'s left-factor-outer convention inside each block;
//! `Hom(X,Y)_n = ⊕_i Hom(X_i, Y_{i+n})` with blocks ordered by ascending `i`
//! and each `Hom(X_i, Y_{i+n})` flattened row-major.
//!
//! Signs: `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy` and
//! `d(f) = d_Y ∘ f - (-1)^{|f|} f ∘ d_X`. With these choices evaluation and
//! transposition carry no extra signs; the braiding carries `(-1)^{|x||y|}`.

use std::collections::BTreeMap;

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::chain::limits::{mediate_out, pushout, Cocone};
use crate::linalg::{sign, Matrix};
use crate::{Error, Result};

/// Block layout of one degree of a graded construction: `(key, size)` pairs
/// in order, where `key` identifies the block.
type Layout = Vec<(i64, usize)>;

fn layout_dim(l: &Layout) -> usize {
    l.iter().map(|&(_, s)| s).sum()
}

fn layout_offset(l: &Layout, key: i64) -> Option<usize> {
    let mut off = 0;
    for &(k, s) in l {
        if k == key {
            return Some(off);
        }
        off += s;
    }
    None
}

/// Assemble a block matrix from layouts and a per-block callback.
fn assemble(
    p: u64,
    rows: &Layout,
    cols: &Layout,
    block: impl Fn(i64, i64) -> Option<Matrix>,
) -> Matrix {
    let mut out = Matrix::zeros(p, layout_dim(rows), layout_dim(cols));
    let mut roff = 0;
    for &(rk, rs) in rows {
        let mut coff = 0;
        for &(ck, cs) in cols {
            if let Some(b) = block(rk, ck) {
                assert_eq!((b.rows(), b.cols()), (rs, cs), "block shape mismatch");
                for i in 0..rs {
                    for j in 0..cs {
                        if b.get(i, j) != 0 {
                            out.set(roff + i, coff + j, b.get(i, j));
                        }
                    }
                }
            }
            coff += cs;
        }
        roff += rs;
    }
    out
}

/// Blocks of `(X⊗Y)_n`, keyed by the X-degree `i`.
fn tensor_layout(x: &ChainComplex, y: &ChainComplex, n: i64) -> Layout {
    x.support()
        .into_iter()
        .filter_map(|i| {
            let s = x.dim(i) * y.dim(n - i);
            (s > 0).then_some((i, s))
        })
        .collect()
}

/// Blocks of `Hom(X,Y)_n`, keyed by the X-degree `i`.
fn hom_layout(x: &ChainComplex, y: &ChainComplex, n: i64) -> Layout {
    x.support()
        .into_iter()
        .filter_map(|i| {
            let s = y.dim(i + n) * x.dim(i);
            (s > 0).then_some((i, s))
        })
        .collect()
}

fn degrees_tensor(x: &ChainComplex, y: &ChainComplex) -> Vec<i64> {
    let mut ds: Vec<i64> = x
        .support()
        .iter()
        .flat_map(|&i| y.support().iter().map(move |&j| i + j).collect::<Vec<_>>())
        .collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

fn degrees_hom(x: &ChainComplex, y: &ChainComplex) -> Vec<i64> {
    let mut ds: Vec<i64> = x
        .support()
        .iter()
        .flat_map(|&i| y.support().iter().map(move |&j| j - i).collect::<Vec<_>>())
        .collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

fn complex_from(p: u64, dims: BTreeMap<i64, usize>, diffs: BTreeMap<i64, Matrix>) -> ChainComplex {
    let (lo, hi) = match (dims.keys().next(), dims.keys().last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, -1),
    };
    ChainComplex::new(
        p,
        lo,
        (lo..=hi).map(|n| dims.get(&n).copied().unwrap_or(0)).collect(),
        diffs,
    )
    .expect("differential squares to zero")
}

/// The monoidal unit: F_p concentrated in degree 0.
pub fn unit_complex(p: u64) -> ChainComplex {
    ChainComplex::sphere(p, 0)
}

/// `(X⊗Y)_n = ⊕_{i+j=n} X_i ⊗ Y_j`, `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
pub fn tensor_complex(x: &ChainComplex, y: &ChainComplex) -> ChainComplex {
    assert_eq!(x.p(), y.p(), "prime mismatch");
    let p = x.p();
    let mut dims = BTreeMap::new();
    for n in degrees_tensor(x, y) {
        let d = layout_dim(&tensor_layout(x, y, n));
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let rows = tensor_layout(x, y, n - 1);
        let cols = tensor_layout(x, y, n);
        if layout_dim(&rows) == 0 {
            continue;
        }
        let d = assemble(p, &rows, &cols, |ri, ci| {
            if ri == ci - 1 {
                // dx ⊗ y
                Some(x.d(ci).kron(&Matrix::identity(p, y.dim(n - ci))).expect("same prime"))
            } else if ri == ci {
                // (-1)^i x ⊗ dy
                Some(
                    Matrix::identity(p, x.dim(ci))
                        .kron(&y.d(n - ci))
                        .expect("same prime")
                        .scale(sign(p, ci)),
                )
            } else {
                None
            }
        });
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    complex_from(p, dims, diffs)
}

/// `f ⊗ g` on degree-0 chain maps, blockwise `kron(f_i, g_j)`.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let p = f.p();
    let src = tensor_complex(f.source(), g.source());
    let tgt = tensor_complex(f.target(), g.target());
    let mut comps = BTreeMap::new();
    for n in degrees_tensor(f.source(), g.source()) {
        let rows = tensor_layout(f.target(), g.target(), n);
        let cols = tensor_layout(f.source(), g.source(), n);
        let m = assemble(p, &rows, &cols, |ri, ci| {
            (ri == ci).then(|| f.comp(ci).kron(&g.comp(n - ci)).expect("same prime"))
        });
        if !m.is_zero() {
            comps.insert(n, m);
        }
    }
    ChainMap::new(src, tgt, comps).expect("tensor of chain maps is a chain map")
}

/// `Hom(X,Y)_n = ⊕_i Hom(X_i, Y_{i+n})`, `d(f) = d∘f - (-1)^{|f|} f∘d`.
pub fn hom_complex(x: &ChainComplex, y: &ChainComplex) -> ChainComplex {
    assert_eq!(x.p(), y.p(), "prime mismatch");
    let p = x.p();
    let mut dims = BTreeMap::new();
    for n in degrees_hom(x, y) {
        let d = layout_dim(&hom_layout(x, y, n));
        if d > 0 {
            dims.insert(n, d);
        }
    }
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let rows = hom_layout(x, y, n - 1);
        let cols = hom_layout(x, y, n);
        if layout_dim(&rows) == 0 {
            continue;
        }
        let d = assemble(p, &rows, &cols, |ri, ci| {
            if ri == ci {
                // post-composition with d_Y: vec(A·F) = kron(A, I)·vec(F)
                Some(y.d(ci + n).kron(&Matrix::identity(p, x.dim(ci))).expect("same prime"))
            } else if ri == ci + 1 {
                // -(-1)^n pre-composition with d_X: vec(F·B) = kron(I, Bᵀ)·vec(F)
                Some(
                    Matrix::identity(p, y.dim(ci + n))
                        .kron(&x.d(ri).transpose())
                        .expect("same prime")
                        .scale(sign(p, n + 1)),
                )
            } else {
                None
            }
        });
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    complex_from(p, dims, diffs)
}

/// Covariant hom functor: post-composition `Hom(X, g) : Hom(X,Y) -> Hom(X,Y')`.
/// Defined on graded maps as well; a chain map when `g` is.
pub fn hom_post(x: &ChainComplex, g: &ChainMap) -> ChainMap {
    let p = g.p();
    let src = hom_complex(x, g.source());
    let tgt = hom_complex(x, g.target());
    let mut comps = BTreeMap::new();
    for n in crate::chain::complex::degrees_of(&[&src, &tgt]) {
        let rows = hom_layout(x, g.target(), n);
        let cols = hom_layout(x, g.source(), n);
        let m = assemble(p, &rows, &cols, |ri, ci| {
            (ri == ci)
                .then(|| g.comp(ci + n).kron(&Matrix::identity(p, x.dim(ci))).expect("same prime"))
        });
        if !m.is_zero() {
            comps.insert(n, m);
        }
    }
    ChainMap::graded(src, tgt, comps).expect("shapes match")
}

/// Contravariant hom functor: pre-composition `Hom(f, Y) : Hom(X,Y) -> Hom(X',Y)`
/// for `f : X' -> X`.
pub fn hom_pre(f: &ChainMap, y: &ChainComplex) -> ChainMap {
    let p = f.p();
    let src = hom_complex(f.target(), y);
    let tgt = hom_complex(f.source(), y);
    let mut comps = BTreeMap::new();
    for n in crate::chain::complex::degrees_of(&[&src, &tgt]) {
        let rows = hom_layout(f.source(), y, n);
        let cols = hom_layout(f.target(), y, n);
        let m = assemble(p, &rows, &cols, |ri, ci| {
            (ri == ci)
                .then(|| {
                    Matrix::identity(p, y.dim(ci + n))
                        .kron(&f.comp(ci).transpose())
                        .expect("same prime")
                })
        });
        if !m.is_zero() {
            comps.insert(n, m);
        }
    }
    ChainMap::graded(src, tgt, comps).expect("shapes match")
}

/// Evaluation `ev : Hom(X,Y) ⊗ X -> Y`, `f⊗x ↦ f(x)`. No sign.
pub fn ev_map(x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let p = x.p();
    let h = hom_complex(x, y);
    let src = tensor_complex(&h, x);
    let mut comps = BTreeMap::new();
    for n in crate::chain::complex::degrees_of(&[&src, y]) {
        let dy = y.dim(n);
        let cols = tensor_layout(&h, x, n);
        if dy == 0 || layout_dim(&cols) == 0 {
            continue;
        }
        let mut m = Matrix::zeros(p, dy, layout_dim(&cols));
        for &(i, _) in &cols {
            // block: Hom(X,Y)_i ⊗ X_{n-i}; within it, sub-block j'=n-i acts.
            let j = n - i;
            let toff = layout_offset(&cols, i).expect("block exists");
            let hl = hom_layout(x, y, i);
            if let Some(hoff) = layout_offset(&hl, j) {
                let (dxj, dyij) = (x.dim(j), y.dim(i + j));
                debug_assert_eq!(dyij, dy);
                for r in 0..dy {
                    for s in 0..dxj {
                        let col = toff + (hoff + r * dxj + s) * dxj + s;
                        m.set(r, col, 1);
                    }
                }
            }
        }
        if !m.is_zero() {
            comps.insert(n, m);
        }
    }
    ChainMap::new(src, y.clone(), comps).expect("evaluation is a chain map")
}

/// Adjoint transpose: `g : Z⊗X -> Y` becomes `bar(g) : Z -> Hom(X,Y)`,
/// `bar(g)(z) = g(z ⊗ -)`. Defined on graded maps; a chain map when `g` is.
pub fn bar(g: &ChainMap, z: &ChainComplex, x: &ChainComplex) -> ChainMap {
    let p = g.p();
    let y = g.target().clone();
    debug_assert_eq!(g.source(), &tensor_complex(z, x));
    let h = hom_complex(x, &y);
    let mut comps = BTreeMap::new();
    for m_deg in z.support() {
        let dz = z.dim(m_deg);
        let hl = hom_layout(x, &y, m_deg);
        if layout_dim(&hl) == 0 || dz == 0 {
            continue;
        }
        let mut mat = Matrix::zeros(p, layout_dim(&hl), dz);
        for &(j, _) in &hl {
            let hoff = layout_offset(&hl, j).expect("block exists");
            let (dxj, dyjm) = (x.dim(j), y.dim(j + m_deg));
            let gcomp = g.comp(m_deg + j);
            let tl = tensor_layout(z, x, m_deg + j);
            let Some(toff) = layout_offset(&tl, m_deg) else { continue };
            for t in 0..dz {
                for r in 0..dyjm {
                    for s in 0..dxj {
                        let v = gcomp.get(r, toff + t * dxj + s);
                        if v != 0 {
                            mat.set(hoff + r * dxj + s, t, v);
                        }
                    }
                }
            }
        }
        if !mat.is_zero() {
            comps.insert(m_deg, mat);
        }
    }
    let validated = g.is_chain_map();
    let out = ChainMap::graded(z.clone(), h, comps).expect("shapes match");
    if validated {
        debug_assert!(out.is_chain_map(), "bar of a chain map is a chain map");
    }
    out
}

/// Inverse transpose `unbar_into(h, x, y) = ev_{x,y} ∘ (h ⊗ id_x)` for
/// `h : Z -> Hom(x,y)`. The codomain `y` cannot be recovered from the hom
/// complex alone, so it is passed explicitly.
pub fn unbar_into(h: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    debug_assert_eq!(h.target(), &hom_complex(x, y));
    ev_map(x, y).compose(&tensor_map(h, &ChainMap::identity(x)))
}

/// Braiding `τ : X⊗Y -> Y⊗X`, `x⊗y ↦ (-1)^{|x||y|} y⊗x`.
pub fn braiding(x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let p = x.p();
    let src = tensor_complex(x, y);
    let tgt = tensor_complex(y, x);
    let mut comps = BTreeMap::new();
    for n in degrees_tensor(x, y) {
        let cols = tensor_layout(x, y, n);
        let rows = tensor_layout(y, x, n);
        if layout_dim(&cols) == 0 {
            continue;
        }
        let mut m = Matrix::zeros(p, layout_dim(&rows), layout_dim(&cols));
        for &(i, _) in &cols {
            let j = n - i;
            let coff = layout_offset(&cols, i).expect("block exists");
            let Some(roff) = layout_offset(&rows, j) else { continue };
            let (dx, dy) = (x.dim(i), y.dim(j));
            let s = sign(p, i * j);
            for a in 0..dx {
                for b in 0..dy {
                    m.set(roff + b * dx + a, coff + a * dy + b, s);
                }
            }
        }
        if !m.is_zero() {
            comps.insert(n, m);
        }
    }
    ChainMap::new(src, tgt, comps).expect("braiding is a chain map")
}

/// Right unitor `X ⊗ I -> X` (identity on coordinates).
pub fn unitor_right(x: &ChainComplex) -> ChainMap {
    let p = x.p();
    let src = tensor_complex(x, &unit_complex(p));
    let comps = x
        .support()
        .into_iter()
        .map(|n| (n, Matrix::identity(p, x.dim(n))))
        .collect();
    ChainMap::new(src, x.clone(), comps).expect("unitor is a chain map")
}

/// Left unitor `I ⊗ X -> X`.
pub fn unitor_left(x: &ChainComplex) -> ChainMap {
    let p = x.p();
    let src = tensor_complex(&unit_complex(p), x);
    let comps = x
        .support()
        .into_iter()
        .map(|n| (n, Matrix::identity(p, x.dim(n))))
        .collect();
    ChainMap::new(src, x.clone(), comps).expect("unitor is a chain map")
}

/// Associator `(X⊗Y)⊗Z -> X⊗(Y⊗Z)` (a permutation of coordinates, signless).
pub fn associator(x: &ChainComplex, y: &ChainComplex, z: &ChainComplex) -> ChainMap {
    let p = x.p();
    let xy = tensor_complex(x, y);
    let yz = tensor_complex(y, z);
    let src = tensor_complex(&xy, z);
    let tgt = tensor_complex(x, &yz);
    let mut comps = BTreeMap::new();
    for n in degrees_tensor(&xy, z) {
        let cols = tensor_layout(&xy, z, n);
        let rows = tensor_layout(x, &yz, n);
        if layout_dim(&cols) == 0 {
            continue;
        }
        let mut mat = Matrix::zeros(p, layout_dim(&rows), layout_dim(&cols));
        for &(m_deg, _) in &cols {
            let k = n - m_deg;
            let coff = layout_offset(&cols, m_deg).expect("block exists");
            let xy_l = tensor_layout(x, y, m_deg);
            for &(i, _) in &xy_l {
                let j = m_deg - i;
                let xyoff = layout_offset(&xy_l, i).expect("block exists");
                let Some(roff) = layout_offset(&rows, i) else { continue };
                let yz_l = tensor_layout(y, z, j + k);
                let Some(yzoff) = layout_offset(&yz_l, j) else { continue };
                let (dx, dy, dz) = (x.dim(i), y.dim(j), z.dim(k));
                let dyz = layout_dim(&yz_l);
                for a in 0..dx {
                    for b in 0..dy {
                        for c in 0..dz {
                            let col = coff + (xyoff + a * dy + b) * dz + c;
                            let row = roff + a * dyz + (yzoff + b * dz + c);
                            mat.set(row, col, 1);
                        }
                    }
                }
            }
        }
        if !mat.is_zero() {
            comps.insert(n, mat);
        }
    }
    ChainMap::new(src, tgt, comps).expect("associator is a chain map")
}

/// Pushout product `f □ g`: the corner map
/// `(B⊗C) ∪^{A⊗C} (A⊗D) -> B⊗D` for `f: A -> B`, `g: C -> D`.
/// Returns the pushout cocone and the corner.
pub fn pushout_product_chain(f: &ChainMap, g: &ChainMap) -> Result<(Cocone, ChainMap)> {
    if f.p() != g.p() {
        return Err(Error::PrimeMismatch(f.p(), g.p()));
    }
    let fc = tensor_map(f, &ChainMap::identity(g.source()));
    let ag = tensor_map(&ChainMap::identity(f.source()), g);
    let po = pushout(&fc, &ag)?;
    let bd = tensor_complex(f.target(), g.target());
    let corner = mediate_out(
        &po,
        &bd,
        &[
            tensor_map(&ChainMap::identity(f.target()), g),
            tensor_map(f, &ChainMap::identity(g.target())),
        ],
    )?;
    Ok((po, corner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::complex::classify_map;
    use crate::chain::space::enumerate_chain_maps;

    fn s(p: u64, n: i64) -> ChainComplex {
        ChainComplex::sphere(p, n)
    }

    #[test]
    fn unit_laws_on_objects() {
        for p in [2u64, 3] {
            let x = ChainComplex::disk(p, 1).direct_sum(&s(p, 0));
            assert_eq!(tensor_complex(&unit_complex(p), &x), x);
            assert!(unitor_right(&x).is_isomorphism());
            assert!(unitor_left(&x).is_isomorphism());
        }
    }

    #[test]
    fn sphere_tensor_degrees() {
        let t = tensor_complex(&s(2, 1), &s(2, 1));
        assert_eq!(t.dim(2), 1);
        assert_eq!(t.total_dim(), 1);

        let h = hom_complex(&s(2, 1), &s(2, 0));
        assert_eq!(h.dim(-1), 1);
        assert_eq!(h.total_dim(), 1);
    }

    #[test]
    fn tensor_differential_squares_to_zero_mod3() {
        // Construction of the complex already validates d∘d = 0; this test
        // exercises a case where the Koszul sign matters (p = 3).
        let d2 = ChainComplex::disk(3, 2);
        let t = tensor_complex(&d2, &d2);
        assert_eq!(t.dim(4), 1);
        assert_eq!(t.dim(3), 2);
        assert_eq!(t.dim(2), 1);
        let h = hom_complex(&d2, &d2);
        assert_eq!(h.dim(0), 2);
    }

    #[test]
    fn hom_of_disk_detects_contractibility() {
        // Hom(D1, D1) has zero homology: chain maps mod homotopy = 0.
        let d1 = ChainComplex::disk(2, 1);
        let h = hom_complex(&d1, &d1);
        assert!(crate::chain::complex::homology(&h).dims().is_empty());
    }

    #[test]
    fn bar_is_a_bijection_on_chain_maps() {
        let p = 3;
        let x = ChainComplex::disk(p, 1);
        let y = s(p, 0).direct_sum(&s(p, 1));
        let z = s(p, 0).direct_sum(&ChainComplex::disk(p, 1));
        let from_tensor = enumerate_chain_maps(&tensor_complex(&z, &x), &y, 1 << 16).unwrap();
        let to_hom = enumerate_chain_maps(&z, &hom_complex(&x, &y), 1 << 16).unwrap();
        assert_eq!(from_tensor.len(), to_hom.len());
        for g in &from_tensor {
            let b = bar(g, &z, &x);
            assert!(b.is_chain_map());
            let back = unbar_into(&b, &x, &y);
            assert_eq!(&back, g);
        }
    }

    #[test]
    fn braiding_is_a_chain_iso_mod3() {
        let x = ChainComplex::disk(3, 1);
        let y = ChainComplex::disk(3, 2);
        let t = braiding(&x, &y);
        assert!(t.is_isomorphism());
        let back = braiding(&y, &x);
        let round = back.compose(&t);
        assert_eq!(round, ChainMap::identity(&tensor_complex(&x, &y)));
    }

    #[test]
    fn associator_is_an_iso() {
        let x = ChainComplex::disk(3, 1);
        let y = s(3, 0).direct_sum(&s(3, 1));
        let z = ChainComplex::disk(3, 2);
        let a = associator(&x, &y, &z);
        assert!(a.is_isomorphism());
    }

    #[test]
    fn pushout_product_of_sphere_inclusions() {
        // (0 -> S0) □ (0 -> S0) = (0 -> S0⊗S0 = S0).
        let zero = ChainComplex::zero(2);
        let f = ChainMap::zero(&zero, &s(2, 0));
        let (_, corner) = pushout_product_chain(&f, &f).unwrap();
        assert!(corner.source().is_zero_complex());
        assert_eq!(corner.target(), &s(2, 0));
    }

    #[test]
    fn pushout_product_of_generating_cofibrations_is_a_cofibration() {
        // (S0 -> D1) □ (S0 -> D1) over F_3, the sign-sensitive case.
        let p = 3;
        let s0 = s(p, 0);
        let d1 = ChainComplex::disk(p, 1);
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(p, 1));
        let inc = ChainMap::new(s0, d1, comps).unwrap();
        let (_, corner) = pushout_product_chain(&inc, &inc).unwrap();
        let c = classify_map(&corner);
        assert!(c.is_cof);
        assert!(!c.is_we);
    }
}
