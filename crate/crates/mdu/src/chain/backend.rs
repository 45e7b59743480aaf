//! The decidable model-category backend behind the comma constructions.
//!
//! A `Backend` is the chain-complex model category in one of its two
//! orientations. The opposite orientation presents the opposite model
//! category: morphism direction reverses, cofibrations and fibrations swap,
//! limits become colimits. A morphism *from A to B* in an opposite backend is
//! represented by the underlying `ChainMap` with `source() == B` and
//! `target() == A`; all orientation bookkeeping lives here, and comma-level
//! code only ever queries endpoints through [`Backend::src`]/[`Backend::dst`].

use crate::chain::complex::{classify_map, ChainComplex, ChainMap, ClassFlags};
use crate::chain::factor::{factorize_chain, solve_lift_chain, FactorKind};
use crate::chain::limits as lim;
use crate::chain::space::HomSpace;
use crate::{Error, Result};

/// One orientation of the chain backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Backend {
    p: u64,
    op: bool,
}

/// Limit cone in backend orientation: legs go from the apex.
#[derive(Debug, Clone)]
pub struct BCone {
    pub obj: ChainComplex,
    pub legs: Vec<ChainMap>,
}

/// Colimit cocone in backend orientation: legs go into the apex.
#[derive(Debug, Clone)]
pub struct BCocone {
    pub obj: ChainComplex,
    pub legs: Vec<ChainMap>,
}

impl Backend {
    pub fn chain(p: u64) -> Backend {
        Backend { p, op: false }
    }

    /// The opposite-category adapter; an involution.
    pub fn opposite(self) -> Backend {
        Backend { p: self.p, op: !self.op }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_opposite(&self) -> bool {
        self.op
    }

    pub fn src<'a>(&self, f: &'a ChainMap) -> &'a ChainComplex {
        if self.op {
            f.target()
        } else {
            f.source()
        }
    }

    pub fn dst<'a>(&self, f: &'a ChainMap) -> &'a ChainComplex {
        if self.op {
            f.source()
        } else {
            f.target()
        }
    }

    pub fn identity(&self, x: &ChainComplex) -> ChainMap {
        ChainMap::identity(x)
    }

    /// The zero morphism from `src` to `dst` in backend orientation.
    pub fn zero_map(&self, src: &ChainComplex, dst: &ChainComplex) -> ChainMap {
        if self.op {
            ChainMap::zero(dst, src)
        } else {
            ChainMap::zero(src, dst)
        }
    }

    /// Composite `g ∘ f` (apply `f` first) in backend orientation.
    pub fn compose(&self, g: &ChainMap, f: &ChainMap) -> ChainMap {
        if self.op {
            f.compose(g)
        } else {
            g.compose(f)
        }
    }

    pub fn is_valid(&self, f: &ChainMap) -> bool {
        f.is_chain_map()
    }

    /// Classify in this orientation's model structure. The opposite backend
    /// swaps cofibrations with fibrations and keeps weak equivalences.
    pub fn classify(&self, f: &ChainMap) -> ClassFlags {
        let flags = classify_map(f);
        if self.op {
            flags.swap()
        } else {
            flags
        }
    }

    pub fn is_iso(&self, f: &ChainMap) -> bool {
        f.is_isomorphism()
    }

    pub fn invert(&self, f: &ChainMap) -> Result<ChainMap> {
        f.invert()
    }

    pub fn eq_map(&self, f: &ChainMap, g: &ChainMap) -> bool {
        f == g
    }

    /// Factor `f = r ∘ l` per `kind`, in backend orientation.
    pub fn factorize(&self, f: &ChainMap, kind: FactorKind) -> (ChainMap, ChainMap) {
        if self.op {
            let (bl, br) = factorize_chain(f, kind.swap());
            // Reversing the base factorization swaps the two pieces.
            (br, bl)
        } else {
            factorize_chain(f, kind)
        }
    }

    /// Solve the lifting problem `(i, p, top, bottom)` in backend orientation.
    pub fn solve_lift(
        &self,
        i: &ChainMap,
        p: &ChainMap,
        top: &ChainMap,
        bottom: &ChainMap,
    ) -> Result<Option<ChainMap>> {
        if self.op {
            solve_lift_chain(p, i, bottom, top)
        } else {
            solve_lift_chain(i, p, top, bottom)
        }
    }

    /// The zero complex: both terminal and initial here.
    pub fn zero_obj(&self) -> ChainComplex {
        ChainComplex::zero(self.p)
    }

    pub fn terminal(&self) -> ChainComplex {
        self.zero_obj()
    }

    pub fn initial(&self) -> ChainComplex {
        self.zero_obj()
    }

    pub fn product(&self, x: &ChainComplex, y: &ChainComplex) -> BCone {
        if self.op {
            let c = lim::coproduct(x, y);
            BCone { obj: c.obj, legs: c.legs }
        } else {
            let c = lim::product(x, y);
            BCone { obj: c.obj, legs: c.legs }
        }
    }

    pub fn coproduct(&self, x: &ChainComplex, y: &ChainComplex) -> BCocone {
        if self.op {
            let c = lim::product(x, y);
            BCocone { obj: c.obj, legs: c.legs }
        } else {
            let c = lim::coproduct(x, y);
            BCocone { obj: c.obj, legs: c.legs }
        }
    }

    /// Pullback of the cospan `f : X -> Z <- Y : g`.
    pub fn pullback(&self, f: &ChainMap, g: &ChainMap) -> Result<BCone> {
        if self.op {
            let c = lim::pushout(f, g)?;
            Ok(BCone { obj: c.obj, legs: c.legs })
        } else {
            let c = lim::pullback(f, g)?;
            Ok(BCone { obj: c.obj, legs: c.legs })
        }
    }

    /// Pushout of the span `X <- Z -> Y` given by `f : Z -> X`, `g : Z -> Y`.
    pub fn pushout(&self, f: &ChainMap, g: &ChainMap) -> Result<BCocone> {
        if self.op {
            let c = lim::pullback(f, g)?;
            Ok(BCocone { obj: c.obj, legs: c.legs })
        } else {
            let c = lim::pushout(f, g)?;
            Ok(BCocone { obj: c.obj, legs: c.legs })
        }
    }

    pub fn equalizer(&self, f: &ChainMap, g: &ChainMap) -> Result<BCone> {
        if self.op {
            let c = lim::coequalizer(f, g)?;
            Ok(BCone { obj: c.obj, legs: c.legs })
        } else {
            let c = lim::equalizer(f, g)?;
            Ok(BCone { obj: c.obj, legs: c.legs })
        }
    }

    pub fn coequalizer(&self, f: &ChainMap, g: &ChainMap) -> Result<BCocone> {
        if self.op {
            let c = lim::equalizer(f, g)?;
            Ok(BCocone { obj: c.obj, legs: c.legs })
        } else {
            let c = lim::coequalizer(f, g)?;
            Ok(BCocone { obj: c.obj, legs: c.legs })
        }
    }

    /// Mediating map into a limit cone: unique `m` with `legs[i] ∘ m = maps[i]`.
    pub fn mediate_into(
        &self,
        cone: &BCone,
        source: &ChainComplex,
        maps: &[ChainMap],
    ) -> Result<ChainMap> {
        if self.op {
            let cocone = lim::Cocone { obj: cone.obj.clone(), legs: cone.legs.clone() };
            lim::mediate_out(&cocone, source, maps)
        } else {
            let c = lim::Cone { obj: cone.obj.clone(), legs: cone.legs.clone() };
            lim::mediate_into(&c, source, maps)
        }
    }

    /// Mediating map out of a colimit cocone: unique `m` with
    /// `m ∘ legs[i] = maps[i]`.
    pub fn mediate_out(
        &self,
        cocone: &BCocone,
        target: &ChainComplex,
        maps: &[ChainMap],
    ) -> Result<ChainMap> {
        if self.op {
            let cone = lim::Cone { obj: cocone.obj.clone(), legs: cocone.legs.clone() };
            lim::mediate_into(&cone, target, maps)
        } else {
            let c = lim::Cocone { obj: cocone.obj.clone(), legs: cocone.legs.clone() };
            lim::mediate_out(&c, target, maps)
        }
    }

    /// The coordinate space of graded morphisms `src -> dst` in backend
    /// orientation (the underlying payload space).
    pub fn hom_vars(&self, src: &ChainComplex, dst: &ChainComplex) -> HomSpace {
        if self.op {
            HomSpace::new(dst, src)
        } else {
            HomSpace::new(src, dst)
        }
    }

    /// All morphisms `src -> dst` when there are at most `cap`; `None` above
    /// the cap.
    pub fn enumerate_maps(
        &self,
        src: &ChainComplex,
        dst: &ChainComplex,
        cap: u128,
    ) -> Option<Vec<ChainMap>> {
        let (s, d) = if self.op { (dst, src) } else { (src, dst) };
        crate::chain::space::enumerate_chain_maps(s, d, cap)
    }

    /// log_p of the number of morphisms `src -> dst`.
    pub fn hom_count_log(&self, src: &ChainComplex, dst: &ChainComplex) -> usize {
        let (s, d) = if self.op { (dst, src) } else { (src, dst) };
        crate::chain::space::chain_map_basis(s, d).len()
    }

    pub fn check_map(
        &self,
        f: &ChainMap,
        src: &ChainComplex,
        dst: &ChainComplex,
    ) -> Result<()> {
        if self.src(f) != src || self.dst(f) != dst {
            return Err(Error::Shape("morphism endpoints do not match".into()));
        }
        f.check_chain_condition()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    use crate::linalg::Matrix;

    fn q() -> ChainMap {
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(2, 1));
        ChainMap::new(ChainComplex::disk(2, 1), ChainComplex::sphere(2, 1), comps).unwrap()
    }

    #[test]
    fn double_opposite_presents_the_base() {
        let b = Backend::chain(2);
        assert_eq!(b.opposite().opposite(), b);
    }

    #[test]
    fn opposite_swaps_classification() {
        let b = Backend::chain(2).opposite();
        // q is {fib} forward, so in the opposite it classifies as {cof}.
        let flags = b.classify(&q());
        assert!(flags.is_cof && !flags.is_fib && !flags.is_we);
    }

    #[test]
    fn opposite_pullback_is_base_pushout() {
        let b = Backend::chain(2).opposite();
        // In op, q is a morphism S1 -> D1; pull back the cospan (q, q).
        let cone = b.pullback(&q(), &q()).unwrap();
        let base = lim::pushout(&q(), &q()).unwrap();
        assert_eq!(cone.obj, base.obj);
        // Legs run from the apex in op orientation.
        for leg in &cone.legs {
            assert_eq!(b.src(leg), &cone.obj);
        }
    }

    #[test]
    fn opposite_factorization_recomposes_and_classifies() {
        let b = Backend::chain(2).opposite();
        for kind in [FactorKind::CofThenTrivFib, FactorKind::TrivCofThenFib] {
            let (l, r) = b.factorize(&q(), kind);
            assert_eq!(b.compose(&r, &l), q());
            let (cl, cr) = (b.classify(&l), b.classify(&r));
            match kind {
                FactorKind::CofThenTrivFib => assert!(cl.is_cof && cr.is_fib && cr.is_we),
                FactorKind::TrivCofThenFib => assert!(cl.is_cof && cl.is_we && cr.is_fib),
            }
        }
    }

    #[test]
    fn opposite_lift_solves_the_reversed_problem() {
        let b = Backend::chain(2).opposite();
        // Forward: i: 0 -> D1, p = q, top = 0, bottom = q has the lift id.
        // In op this is the square with roles of (i, top) and (p, bottom)
        // exchanged; the solver must find the same underlying map.
        let zero = ChainComplex::zero(2);
        let i_fwd = ChainMap::zero(&zero, &ChainComplex::disk(2, 1));
        let top_fwd = ChainMap::zero(&zero, &ChainComplex::disk(2, 1));
        let s = b.solve_lift(&q(), &i_fwd, &q(), &top_fwd).unwrap().unwrap();
        assert_eq!(s, ChainMap::identity(&ChainComplex::disk(2, 1)));
    }
}
