//! The canonical functors ι, L¹, R⁰, F⁺, Π⁰, Π¹, Π_Arr and the verification
//! of their adjunctions by exhaustive hom-set enumeration.
//!
//! `ι(P) = [U(P), P, Id]`, `L¹(P) = [∅, P, ∅ -> U(P)]`,
//! `R⁰(m) = [m, *, m -> U(*)]`, `F⁺(m) = [m, F(m), η_m]`; the projections
//! forget components. The adjunctions `Π¹ ⊣ ι`, `L¹ ⊣ Π¹`, `Π⁰ ⊣ R⁰`,
//! `F⁺ ⊣ Π⁰` and the factorization identities
//! `Π⁰∘ι = U, Π¹∘ι = Id, Π⁰∘R⁰ = Id, Π¹∘L¹ = Id` are checked exactly.

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::comma::instance::Instance;
use crate::comma::object::{
    comma_hom_space, enumerate_comma_homs, CommaMorphism, CommaObject,
};
use crate::{Error, Result};

/// `ι(P) = [U(P), P, Id_{U(P)}]`.
pub fn iota(inst: &Instance, p: &ChainComplex) -> CommaObject {
    let up = inst.u_obj(p);
    CommaObject { f0: up.clone(), f1: p.clone(), pi: inst.m().identity(&up) }
}

/// ι on morphisms: `[U(f), f]`.
pub fn iota_map(inst: &Instance, f: &ChainMap) -> CommaMorphism {
    let a = inst.a();
    CommaMorphism {
        source: iota(inst, a.src(f)),
        target: iota(inst, a.dst(f)),
        s0: inst.u_map(f),
        s1: f.clone(),
    }
}

/// `L¹(P) = [∅, P, ∅ -> U(P)]`.
pub fn l1(inst: &Instance, p: &ChainComplex) -> CommaObject {
    let m = inst.m();
    let zero = m.initial();
    CommaObject { f0: zero.clone(), f1: p.clone(), pi: m.zero_map(&zero, &inst.u_obj(p)) }
}

/// L¹ on morphisms: `[!, f]`.
pub fn l1_map(inst: &Instance, f: &ChainMap) -> CommaMorphism {
    let a = inst.a();
    let (src, dst) = (l1(inst, a.src(f)), l1(inst, a.dst(f)));
    let s0 = inst.m().zero_map(&src.f0, &dst.f0);
    CommaMorphism { source: src, target: dst, s0, s1: f.clone() }
}

/// `R⁰(m) = [m, *, m -> U(*)]`.
pub fn r0(inst: &Instance, m_obj: &ChainComplex) -> CommaObject {
    let a = inst.a();
    let term = a.terminal();
    let pi = inst.m().zero_map(m_obj, &inst.u_obj(&term));
    CommaObject { f0: m_obj.clone(), f1: term, pi }
}

/// R⁰ on morphisms: `[f, !]`.
pub fn r0_map(inst: &Instance, f: &ChainMap) -> CommaMorphism {
    let m = inst.m();
    let (src, dst) = (r0(inst, m.src(f)), r0(inst, m.dst(f)));
    let s1 = inst.a().zero_map(&src.f1, &dst.f1);
    CommaMorphism { source: src, target: dst, s0: f.clone(), s1 }
}

/// `F⁺(m) = [m, F(m), η_m]`.
pub fn fplus(inst: &Instance, m_obj: &ChainComplex) -> CommaObject {
    CommaObject { f0: m_obj.clone(), f1: inst.f_obj(m_obj), pi: inst.eta(m_obj) }
}

/// F⁺ on morphisms: `[f, F(f)]`.
pub fn fplus_map(inst: &Instance, f: &ChainMap) -> CommaMorphism {
    let m = inst.m();
    CommaMorphism {
        source: fplus(inst, m.src(f)),
        target: fplus(inst, m.dst(f)),
        s0: f.clone(),
        s1: inst.f_map(f),
    }
}

/// `Π⁰` projects the M-component.
pub fn pi0(sigma: &CommaMorphism) -> &ChainMap {
    &sigma.s0
}

/// `Π¹` projects the A-component.
pub fn pi1(sigma: &CommaMorphism) -> &ChainMap {
    &sigma.s1
}

/// The arrow-category image of a comma morphism under `Π_Arr`: the square
/// `(π_F, π_G, σ⁰, U(σ¹))` read as a morphism `π_F -> π_G` of `Arr(M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrowSquare {
    pub src_arrow: ChainMap,
    pub dst_arrow: ChainMap,
    pub top: ChainMap,
    pub bottom: ChainMap,
}

/// `Π_Arr(σ) = [σ⁰, U(σ¹)] : π_F -> π_G`.
pub fn pi_arr(inst: &Instance, sigma: &CommaMorphism) -> ArrowSquare {
    ArrowSquare {
        src_arrow: sigma.source.pi.clone(),
        dst_arrow: sigma.target.pi.clone(),
        top: sigma.s0.clone(),
        bottom: inst.u_map(&sigma.s1),
    }
}

/// The four adjunctions of the canonical functors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalAdjunction {
    /// `Π¹ ⊣ ι`
    Pi1Iota,
    /// `L¹ ⊣ Π¹`
    L1Pi1,
    /// `Π⁰ ⊣ R⁰`
    Pi0R0,
    /// `F⁺ ⊣ Π⁰`
    FplusPi0,
}

/// Hom-set enumeration cap: exhaustive only when both sides have at most
/// 2^16 elements, per the size bound read off dimension counts.
pub const HOM_ENUM_CAP: u128 = 1 << 16;

/// Verify one adjunction at a sample pair by exhaustive enumeration of both
/// hom-sets and an explicit transpose bijection with roundtrip.
///
/// For `Π¹ ⊣ ι` the pair is `(comma F, A-object P)`; for `L¹ ⊣ Π¹` it is
/// `(A-object P, comma F)`; for `Π⁰ ⊣ R⁰` it is `(comma F, M-object m)`; for
/// `F⁺ ⊣ Π⁰` it is `(M-object m, comma F)`.
pub fn verify_adjunction_at(
    inst: &Instance,
    which: CanonicalAdjunction,
    comma: &CommaObject,
    backend_obj: &ChainComplex,
) -> Result<()> {
    match which {
        CanonicalAdjunction::Pi1Iota => {
            // Hom_{M↓U}(F, ι P)  ≅  Hom_A(Π¹ F, P)
            let lhs = enumerate_side(inst, comma, &iota(inst, backend_obj))?;
            let rhs = enumerate_backend(inst, false, &comma.f1, backend_obj)?;
            check_bijection(
                lhs.len(),
                rhs.len(),
                lhs.iter().map(|sigma| {
                    let g = sigma.s1.clone();
                    let back = CommaMorphism::new(
                        inst,
                        comma.clone(),
                        iota(inst, backend_obj),
                        inst.m().compose(&inst.u_map(&g), &comma.pi),
                        g.clone(),
                    )?;
                    Ok((back, sigma.clone()))
                }),
            )
        }
        CanonicalAdjunction::L1Pi1 => {
            // Hom_{M↓U}(L¹ P, F)  ≅  Hom_A(P, Π¹ F)
            let lhs = enumerate_side(inst, &l1(inst, backend_obj), comma)?;
            let rhs = enumerate_backend(inst, false, backend_obj, &comma.f1)?;
            check_bijection(
                lhs.len(),
                rhs.len(),
                lhs.iter().map(|sigma| {
                    let g = sigma.s1.clone();
                    let src = l1(inst, backend_obj);
                    let s0 = inst.m().zero_map(&src.f0, &comma.f0);
                    let back = CommaMorphism::new(inst, src, comma.clone(), s0, g)?;
                    Ok((back, sigma.clone()))
                }),
            )
        }
        CanonicalAdjunction::Pi0R0 => {
            // Hom_{M↓U}(F, R⁰ m)  ≅  Hom_M(Π⁰ F, m)
            let lhs = enumerate_side(inst, comma, &r0(inst, backend_obj))?;
            let rhs = enumerate_backend(inst, true, &comma.f0, backend_obj)?;
            check_bijection(
                lhs.len(),
                rhs.len(),
                lhs.iter().map(|sigma| {
                    let f = sigma.s0.clone();
                    let dst = r0(inst, backend_obj);
                    let s1 = inst.a().zero_map(&comma.f1, &dst.f1);
                    let back = CommaMorphism::new(inst, comma.clone(), dst, f, s1)?;
                    Ok((back, sigma.clone()))
                }),
            )
        }
        CanonicalAdjunction::FplusPi0 => {
            // Hom_{M↓U}(F⁺ m, F)  ≅  Hom_M(m, Π⁰ F)
            let lhs = enumerate_side(inst, &fplus(inst, backend_obj), comma)?;
            let rhs = enumerate_backend(inst, true, backend_obj, &comma.f0)?;
            check_bijection(
                lhs.len(),
                rhs.len(),
                lhs.iter().map(|sigma| {
                    // transpose of f : m -> F⁰ is [f, φ⁻¹(π_F ∘ f)]
                    let f = sigma.s0.clone();
                    let m = inst.m();
                    let s1 = inst.phi_inv(&m.compose(&comma.pi, &f), &comma.f1);
                    let back = CommaMorphism::new(
                        inst,
                        fplus(inst, backend_obj),
                        comma.clone(),
                        f,
                        s1,
                    )?;
                    Ok((back, sigma.clone()))
                }),
            )
        }
    }
}

fn enumerate_side(
    inst: &Instance,
    f: &CommaObject,
    g: &CommaObject,
) -> Result<Vec<CommaMorphism>> {
    enumerate_comma_homs(inst, f, g, HOM_ENUM_CAP)
        .ok_or_else(|| Error::Input("hom-set exceeds the enumeration cap".into()))
}

fn enumerate_backend(
    inst: &Instance,
    in_m: bool,
    src: &ChainComplex,
    dst: &ChainComplex,
) -> Result<Vec<ChainMap>> {
    let b = if in_m { inst.m() } else { inst.a() };
    b.enumerate_maps(src, dst, HOM_ENUM_CAP)
        .ok_or_else(|| Error::Input("hom-set exceeds the enumeration cap".into()))
}

fn check_bijection(
    lhs_count: usize,
    rhs_count: usize,
    roundtrips: impl Iterator<Item = Result<(CommaMorphism, CommaMorphism)>>,
) -> Result<()> {
    if lhs_count != rhs_count {
        return Err(Error::Unsupported(format!(
            "hom-set sizes differ: {lhs_count} vs {rhs_count}"
        )));
    }
    for r in roundtrips {
        let (back, original) = r?;
        if back != original {
            return Err(Error::Unsupported("transpose roundtrip is not the identity".into()));
        }
    }
    Ok(())
}

/// Naturality of the `Π¹ ⊣ ι` transpose in both slots, checked on a sampled
/// morphism `α : F' -> F` of the comma category and `β : P -> P'` of A.
pub fn verify_pi1_iota_naturality(
    inst: &Instance,
    alpha: &CommaMorphism,
    beta: &ChainMap,
    sigma: &CommaMorphism,
) -> Result<()> {
    let a = inst.a();
    // σ : F -> ι(P); transpose is σ¹.
    if &sigma.source != &alpha.target {
        return Err(Error::Input("α must end at σ's source".into()));
    }
    if a.src(beta) != &sigma.target.f1 {
        return Err(Error::Input("β must start at σ's target parameter".into()));
    }
    // transpose(ι(β) ∘ σ ∘ α) = β ∘ transpose(σ) ∘ Π¹(α)
    let lhs =
        iota_map(inst, beta).compose(inst, &sigma.compose(inst, alpha)).s1;
    let rhs = a.compose(beta, &a.compose(&sigma.s1, &alpha.s1));
    if !a.eq_map(&lhs, &rhs) {
        return Err(Error::Unsupported("Π¹ ⊣ ι transpose is not natural".into()));
    }
    Ok(())
}

/// The factorization identities of the canonical functors, checked exactly
/// on an object and a morphism sample.
pub fn verify_factorization_identities(
    inst: &Instance,
    a_obj: &ChainComplex,
    a_map: &ChainMap,
    m_obj: &ChainComplex,
    m_map: &ChainMap,
) -> Result<()> {
    let (m, a) = (inst.m(), inst.a());
    // Π⁰ ∘ ι = U
    if iota(inst, a_obj).f0 != inst.u_obj(a_obj)
        || !m.eq_map(pi0(&iota_map(inst, a_map)), &inst.u_map(a_map))
    {
        return Err(Error::Unsupported("Π⁰ ∘ ι ≠ U".into()));
    }
    // Π¹ ∘ ι = Id
    if &iota(inst, a_obj).f1 != a_obj || !a.eq_map(pi1(&iota_map(inst, a_map)), a_map) {
        return Err(Error::Unsupported("Π¹ ∘ ι ≠ Id".into()));
    }
    // Π⁰ ∘ R⁰ = Id
    if &r0(inst, m_obj).f0 != m_obj || !m.eq_map(pi0(&r0_map(inst, m_map)), m_map) {
        return Err(Error::Unsupported("Π⁰ ∘ R⁰ ≠ Id".into()));
    }
    // Π¹ ∘ L¹ = Id
    if &l1(inst, a_obj).f1 != a_obj || !a.eq_map(pi1(&l1_map(inst, a_map)), a_map) {
        return Err(Error::Unsupported("Π¹ ∘ L¹ ≠ Id".into()));
    }
    Ok(())
}

/// ι is injective on objects: distinct parameters yield distinct images.
pub fn iota_injective_on_objects(inst: &Instance, samples: &[ChainComplex]) -> bool {
    for (i, x) in samples.iter().enumerate() {
        for y in samples.iter().skip(i + 1) {
            if x != y && iota(inst, x) == iota(inst, y) {
                return false;
            }
        }
    }
    true
}

/// log_p of |Hom(F, G)| in the comma category.
pub fn comma_hom_count_log(inst: &Instance, f: &CommaObject, g: &CommaObject) -> usize {
    comma_hom_space(inst, f, g).count_log_p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_functor_formulas() {
        let inst = Instance::identity(2);
        let s0 = ChainComplex::sphere(2, 0);
        // ι(S0) = [S0, S0, id]
        let i = iota(&inst, &s0);
        assert_eq!(i.f0, s0);
        assert_eq!(i.f1, s0);
        assert_eq!(i.pi, ChainMap::identity(&s0));
        // L¹(S0) = [0, S0, 0 -> S0]
        let l = l1(&inst, &s0);
        assert!(l.f0.is_zero_complex());
        assert_eq!(l.f1, s0);
        // F⁺(S0) = [S0, S0, id] for the identity adjunction (η = id)
        let fp = fplus(&inst, &s0);
        assert_eq!(fp, i);
        // Π⁰ projection
        let d1 = ChainComplex::disk(2, 1);
        let sigma = iota_map(&inst, &ChainMap::zero(&d1, &s0));
        assert_eq!(pi0(&sigma), &ChainMap::zero(&d1, &s0));
    }

    #[test]
    fn adjunction_pi1_iota_at_sphere() {
        // Both hom-sets have 2 elements and the roundtrip is the identity.
        let inst = Instance::identity(2);
        let s0 = ChainComplex::sphere(2, 0);
        let f = iota(&inst, &s0);
        verify_adjunction_at(&inst, CanonicalAdjunction::Pi1Iota, &f, &s0).unwrap();
    }

    #[test]
    fn adjunction_l1_pi1_counts() {
        // |Hom(L¹ S0, F)| = |Hom(S0, S0)| = 2 for F = [D1, S0, 0].
        let inst = Instance::identity(2);
        let s0 = ChainComplex::sphere(2, 0);
        let d1 = ChainComplex::disk(2, 1);
        let f = CommaObject::new(&inst, d1.clone(), s0.clone(), ChainMap::zero(&d1, &s0))
            .unwrap();
        let homs = enumerate_comma_homs(&inst, &l1(&inst, &s0), &f, 1 << 16).unwrap();
        assert_eq!(homs.len(), 2);
        verify_adjunction_at(&inst, CanonicalAdjunction::L1Pi1, &f, &s0).unwrap();
    }

    #[test]
    fn all_four_adjunctions_on_hom_tensor() {
        let inst = Instance::hom_tensor(ChainComplex::disk(2, 1));
        let s0 = ChainComplex::sphere(2, 0);
        let f = iota(&inst, &s0);
        for which in [
            CanonicalAdjunction::Pi1Iota,
            CanonicalAdjunction::L1Pi1,
            CanonicalAdjunction::Pi0R0,
            CanonicalAdjunction::FplusPi0,
        ] {
            verify_adjunction_at(&inst, which, &f, &s0).unwrap();
        }
    }

    #[test]
    fn factorization_identities_hold() {
        for inst in [Instance::identity(2), Instance::hom_tensor(ChainComplex::disk(2, 1))] {
            let s0 = ChainComplex::sphere(2, 0);
            let d1 = ChainComplex::disk(2, 1);
            verify_factorization_identities(
                &inst,
                &d1,
                &ChainMap::identity(&d1),
                &s0,
                &ChainMap::identity(&s0),
            )
            .unwrap();
        }
    }

    #[test]
    fn iota_distinguishes_objects() {
        let inst = Instance::identity(3);
        let samples =
            [ChainComplex::sphere(3, 0), ChainComplex::sphere(3, 1), ChainComplex::disk(3, 1)];
        assert!(iota_injective_on_objects(&inst, &samples));
    }
}
