//! Finite limits and colimits of chain complexes, computed degreewise.
//!
//! Limits are kernels inside direct sums, colimits are cokernels of
//! difference maps; each construction returns its cone legs and a mediating
//! map constructor that witnesses the universal property by exact solving.

use std::collections::BTreeMap;

use crate::chain::complex::{degrees_of, ChainComplex, ChainMap};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Limit shapes named by the backend contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitShape {
    Terminal,
    Product,
    Pullback,
    Equalizer,
}

/// Colimit shapes named by the backend contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColimitShape {
    Initial,
    Coproduct,
    Pushout,
    Coequalizer,
}

/// A limit cone: the apex plus its projections.
#[derive(Debug, Clone)]
pub struct Cone {
    pub obj: ChainComplex,
    pub legs: Vec<ChainMap>,
}

/// A colimit cocone: the apex plus its injections.
#[derive(Debug, Clone)]
pub struct Cocone {
    pub obj: ChainComplex,
    pub legs: Vec<ChainMap>,
}

/// Sub-complex spanned degreewise by given independent columns, together
/// with the inclusion. The degreewise spans must be closed under d.
fn subcomplex_from_columns(
    ambient: &ChainComplex,
    columns: &BTreeMap<i64, Matrix>,
) -> (ChainComplex, ChainMap) {
    let p = ambient.p();
    let mut dims = BTreeMap::new();
    for (&n, k) in columns {
        if k.cols() > 0 {
            dims.insert(n, k.cols());
        }
    }
    // Induced differential: solve K_{n-1} * D = d * K_n (unique, K injective).
    let mut diffs = BTreeMap::new();
    for (&n, k_n) in columns {
        if k_n.cols() == 0 {
            continue;
        }
        let k_prev = columns
            .get(&(n - 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(p, ambient.dim(n - 1), 0));
        let rhs = ambient.d(n).mul(k_n);
        let d = k_prev
            .solve(&rhs)
            .expect("degreewise span must be closed under the differential");
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    let obj = ChainComplex::new(
        p,
        dims.keys().next().copied().unwrap_or(0),
        {
            let (lo, hi) = match (dims.keys().next(), dims.keys().last()) {
                (Some(&lo), Some(&hi)) => (lo, hi),
                _ => (0, -1),
            };
            (lo..=hi).map(|n| dims.get(&n).copied().unwrap_or(0)).collect()
        },
        diffs,
    )
    .expect("induced differential squares to zero");
    let incl = ChainMap::new(
        obj.clone(),
        ambient.clone(),
        columns.iter().filter(|(_, k)| k.cols() > 0).map(|(&n, k)| (n, k.clone())).collect(),
    )
    .expect("inclusion of a d-closed span is a chain map");
    (obj, incl)
}

/// Quotient complex of the ambient by the degreewise column span of `image`,
/// together with the projection. The spans must be closed under d.
fn quotient_by_columns(
    ambient: &ChainComplex,
    image: &BTreeMap<i64, Matrix>,
) -> (ChainComplex, ChainMap) {
    let p = ambient.p();
    let mut proj = BTreeMap::new();
    let mut sect = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for n in ambient.support() {
        let w = ambient.dim(n);
        let m = image
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(p, w, 0));
        let u = m.column_space_basis();
        // Extend im(U) by standard basis vectors to a basis of the ambient.
        let ext = u.hstack(&Matrix::identity(p, w));
        let (_, pivots) = ext.rref();
        let extra: Vec<usize> =
            pivots.iter().filter(|&&c| c >= u.cols()).map(|&c| c - u.cols()).collect();
        let c = extra.len();
        dims.insert(n, c);
        let e_sel = Matrix::identity(p, w).select_cols(&extra);
        let full = u.hstack(&e_sel);
        let inv = full.inverse().expect("basis extension is invertible");
        let q = inv.submatrix(u.cols()..u.cols() + c, 0..w);
        proj.insert(n, q);
        sect.insert(n, e_sel);
    }
    // Induced differential: d_C = Q_{n-1} ∘ d ∘ section_n.
    let mut diffs = BTreeMap::new();
    for n in ambient.support() {
        let q_prev = proj
            .get(&(n - 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(p, 0, ambient.dim(n - 1)));
        let d = q_prev.mul(&ambient.d(n)).mul(sect.get(&n).expect("degree in support"));
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    let (lo, hi) = match (dims.keys().next(), dims.keys().last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, -1),
    };
    let obj = ChainComplex::new(
        p,
        lo,
        (lo..=hi).map(|n| dims.get(&n).copied().unwrap_or(0)).collect(),
        diffs,
    )
    .expect("induced differential on the quotient squares to zero");
    let projection = ChainMap::new(ambient.clone(), obj.clone(), proj)
        .expect("quotient projection is a chain map");
    (obj, projection)
}

/// Terminal object: the zero complex (with its empty cone).
pub fn terminal(p: u64) -> Cone {
    Cone { obj: ChainComplex::zero(p), legs: vec![] }
}

/// Initial object: the zero complex.
pub fn initial(p: u64) -> Cocone {
    Cocone { obj: ChainComplex::zero(p), legs: vec![] }
}

/// Binary product: degreewise direct sum with the two projections.
pub fn product(x: &ChainComplex, y: &ChainComplex) -> Cone {
    let p = x.p();
    let obj = x.direct_sum(y);
    let mut prx = BTreeMap::new();
    let mut pry = BTreeMap::new();
    for n in obj.support() {
        let (dx, dy) = (x.dim(n), y.dim(n));
        let px = Matrix::identity(p, dx).hstack(&Matrix::zeros(p, dx, dy));
        let py = Matrix::zeros(p, dy, dx).hstack(&Matrix::identity(p, dy));
        if !px.is_zero() {
            prx.insert(n, px);
        }
        if !py.is_zero() {
            pry.insert(n, py);
        }
    }
    let legs = vec![
        ChainMap::new(obj.clone(), x.clone(), prx).expect("projection is a chain map"),
        ChainMap::new(obj.clone(), y.clone(), pry).expect("projection is a chain map"),
    ];
    Cone { obj, legs }
}

/// Binary coproduct: the same direct sum with the two injections.
pub fn coproduct(x: &ChainComplex, y: &ChainComplex) -> Cocone {
    let p = x.p();
    let obj = x.direct_sum(y);
    let mut inx = BTreeMap::new();
    let mut iny = BTreeMap::new();
    for n in obj.support() {
        let (dx, dy) = (x.dim(n), y.dim(n));
        let ix = Matrix::identity(p, dx).vstack(&Matrix::zeros(p, dy, dx));
        let iy = Matrix::zeros(p, dx, dy).vstack(&Matrix::identity(p, dy));
        if !ix.is_zero() {
            inx.insert(n, ix);
        }
        if !iy.is_zero() {
            iny.insert(n, iy);
        }
    }
    let legs = vec![
        ChainMap::new(x.clone(), obj.clone(), inx).expect("injection is a chain map"),
        ChainMap::new(y.clone(), obj.clone(), iny).expect("injection is a chain map"),
    ];
    Cocone { obj, legs }
}

/// Pullback of the cospan `f : X -> Z <- Y : g`, the degreewise kernel of
/// `f - g` inside `X ⊕ Y`. Legs project to X and Y.
pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Cone> {
    if f.target() != g.target() {
        return Err(Error::Shape("pullback needs a common codomain".into()));
    }
    let (x, y) = (f.source(), g.source());
    let ambient = x.direct_sum(y);
    let mut columns = BTreeMap::new();
    for n in ambient.support() {
        let fx = f.comp(n);
        let gy = g.comp(n).neg();
        let diff = fx.hstack(&gy);
        columns.insert(n, diff.kernel_basis());
    }
    let (obj, incl) = subcomplex_from_columns(&ambient, &columns);
    let prod = product(x, y);
    let legs = vec![prod.legs[0].compose(&incl), prod.legs[1].compose(&incl)];
    Ok(Cone { obj, legs })
}

/// Equalizer of a parallel pair: degreewise kernel of the difference.
pub fn equalizer(f: &ChainMap, g: &ChainMap) -> Result<Cone> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Shape("equalizer needs a parallel pair".into()));
    }
    let x = f.source();
    let mut columns = BTreeMap::new();
    for n in x.support() {
        columns.insert(n, f.comp(n).sub(&g.comp(n)).kernel_basis());
    }
    let (obj, incl) = subcomplex_from_columns(x, &columns);
    Ok(Cone { obj, legs: vec![incl] })
}

/// Pushout of the span `f : Z -> X`, `g : Z -> Y`: the cokernel of
/// `(f, -g) : Z -> X ⊕ Y`. Legs inject from X and Y.
pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Cocone> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout needs a common domain".into()));
    }
    let (x, y) = (f.target(), g.target());
    let ambient = x.direct_sum(y);
    let mut image = BTreeMap::new();
    for n in f.source().support() {
        image.insert(n, f.comp(n).vstack(&g.comp(n).neg()));
    }
    let (obj, proj) = quotient_by_columns(&ambient, &image);
    let cop = coproduct(x, y);
    let legs = vec![proj.compose(&cop.legs[0]), proj.compose(&cop.legs[1])];
    Ok(Cocone { obj, legs })
}

/// Coequalizer of a parallel pair: degreewise cokernel of the difference.
pub fn coequalizer(f: &ChainMap, g: &ChainMap) -> Result<Cocone> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::Shape("coequalizer needs a parallel pair".into()));
    }
    let y = f.target();
    let mut image = BTreeMap::new();
    for n in f.source().support() {
        image.insert(n, f.comp(n).sub(&g.comp(n)));
    }
    let (obj, proj) = quotient_by_columns(y, &image);
    Ok(Cocone { obj, legs: vec![proj] })
}

/// Mediating map into a limit cone: the unique `m : T -> cone.obj` with
/// `legs[i] ∘ m = maps[i]`. Solved degreewise; errors if no solution exists.
pub fn mediate_into(cone: &Cone, source: &ChainComplex, maps: &[ChainMap]) -> Result<ChainMap> {
    assert_eq!(cone.legs.len(), maps.len(), "one map per leg");
    let p = cone.obj.p();
    let mut comps = BTreeMap::new();
    for n in degrees_of(&[source, &cone.obj]) {
        // Stack all legs: solve (legs)_n * m_n = (maps)_n.
        let mut lhs = Matrix::zeros(p, 0, cone.obj.dim(n));
        let mut rhs = Matrix::zeros(p, 0, source.dim(n));
        for (leg, m) in cone.legs.iter().zip(maps) {
            lhs = lhs.vstack(&leg.comp(n));
            rhs = rhs.vstack(&m.comp(n));
        }
        let sol = lhs.solve(&rhs).ok_or(Error::NonCommutingSquare)?;
        if !sol.is_zero() {
            comps.insert(n, sol);
        }
    }
    let m = ChainMap::new(source.clone(), cone.obj.clone(), comps)?;
    for (leg, want) in cone.legs.iter().zip(maps) {
        if &leg.compose(&m) != want {
            return Err(Error::NonCommutingSquare);
        }
    }
    Ok(m)
}

/// Mediating map out of a colimit cocone: the unique `m : cocone.obj -> T`
/// with `m ∘ legs[i] = maps[i]`.
pub fn mediate_out(cocone: &Cocone, target: &ChainComplex, maps: &[ChainMap]) -> Result<ChainMap> {
    assert_eq!(cocone.legs.len(), maps.len(), "one map per leg");
    let p = cocone.obj.p();
    let mut comps = BTreeMap::new();
    for n in degrees_of(&[target, &cocone.obj]) {
        let mut lhs = Matrix::zeros(p, cocone.obj.dim(n), 0);
        let mut rhs = Matrix::zeros(p, target.dim(n), 0);
        for (leg, m) in cocone.legs.iter().zip(maps) {
            lhs = lhs.hstack(&leg.comp(n));
            rhs = rhs.hstack(&m.comp(n));
        }
        // Solve M * lhs = rhs.
        let sol = lhs.solve_left(&rhs).ok_or(Error::NonCommutingSquare)?;
        if !sol.is_zero() {
            comps.insert(n, sol);
        }
    }
    let m = ChainMap::new(cocone.obj.clone(), target.clone(), comps)?;
    for (leg, want) in cocone.legs.iter().zip(maps) {
        if &m.compose(leg) != want {
            return Err(Error::NonCommutingSquare);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::complex::classify_map;

    fn d1() -> ChainComplex {
        ChainComplex::disk(2, 1)
    }

    fn s0() -> ChainComplex {
        ChainComplex::sphere(2, 0)
    }

    fn s1() -> ChainComplex {
        ChainComplex::sphere(2, 1)
    }

    fn q() -> ChainMap {
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(2, 1));
        ChainMap::new(d1(), s1(), comps).unwrap()
    }

    #[test]
    fn terminal_is_zero() {
        assert!(terminal(2).obj.is_zero_complex());
        assert!(initial(3).obj.is_zero_complex());
    }

    #[test]
    fn product_of_spheres() {
        let c = product(&s0(), &s1());
        assert_eq!(c.obj.dim(0), 1);
        assert_eq!(c.obj.dim(1), 1);
        assert!(c.obj.d(1).is_zero());
    }

    #[test]
    fn pullback_of_q_along_identity_is_the_disk() {
        // Pullback of (q: D1 -> S1 <- S1 : id) is D1 with projections (id, q).
        let c = pullback(&q(), &ChainMap::identity(&s1())).unwrap();
        assert_eq!(c.obj.dim(0), 1);
        assert_eq!(c.obj.dim(1), 1);
        assert!(c.legs[0].is_isomorphism());
        // The second projection agrees with q after the first-leg iso.
        let iso_inv = c.legs[0].invert().unwrap();
        assert_eq!(c.legs[1].compose(&iso_inv), q());
    }

    #[test]
    fn pushout_of_two_spheres_under_zero() {
        let z = ChainComplex::zero(2);
        let f = ChainMap::zero(&z, &s0());
        let c = pushout(&f, &f).unwrap();
        assert_eq!(c.obj.dim(0), 2);
        assert_eq!(c.obj.support(), vec![0]);
    }

    #[test]
    fn coequalizer_of_id_and_zero_kills_the_sphere() {
        let c = coequalizer(&ChainMap::identity(&s0()), &ChainMap::zero(&s0(), &s0())).unwrap();
        assert!(c.obj.is_zero_complex());
    }

    #[test]
    fn mediating_map_into_pullback_exists_and_is_unique() {
        let c = pullback(&q(), &ChainMap::identity(&s1())).unwrap();
        // Competing cone: D1 with (id, q).
        let m = mediate_into(&c, &d1(), &[ChainMap::identity(&d1()), q()]).unwrap();
        assert_eq!(c.legs[0].compose(&m), ChainMap::identity(&d1()));
        assert!(m.is_isomorphism());
    }

    #[test]
    fn quotient_projection_classifies_as_fibration() {
        // D1 / S0 (bottom inclusion image) = S1; projection is surjective.
        let mut image = BTreeMap::new();
        image.insert(0, Matrix::identity(2, 1));
        let (obj, proj) = quotient_by_columns(&d1(), &image);
        assert_eq!(obj.dim(1), 1);
        assert_eq!(obj.dim(0), 0);
        let c = classify_map(&proj);
        assert!(c.is_fib && !c.is_cof);
    }
}
