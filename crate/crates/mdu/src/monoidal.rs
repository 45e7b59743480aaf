//! The pointwise tensor on `M↓U` for a lax monoidal U, internal homs via the
//! pullback construction, pushout products, and the monoidal-model axiom
//! checks.
//!
//! Only the identity adjunction ships a lax structure (ψ = id, ψ_I = id);
//! `Hom(P,-)` is not lax monoidal without coalgebra data on P. All
//! operations return `Unsupported` on instances without the structure.

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::chain::tensor::{
    associator, bar, braiding, ev_map, hom_complex, hom_post, hom_pre, tensor_complex,
    tensor_map, unbar_into, unit_complex, unitor_left, unitor_right,
};
use crate::chain::{BCone, FactorKind};
use crate::comma::classify::classify_comma;
use crate::comma::functors::{fplus, iota};
use crate::comma::instance::Instance;
use crate::comma::limits::{comma_colimit, comma_mediate_out, CommaColimitData};
use crate::comma::object::{CommaMorphism, CommaObject, StructureId};
use crate::factor::factorize_comma;
use crate::{Error, Result};

fn require_lax(inst: &Instance) -> Result<()> {
    if inst.is_lax_monoidal() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} carries no lax monoidal structure",
            inst.name()
        )))
    }
}

/// The laxity map ψ : U(a)⊗U(b) -> U(a⊗b) of the shipped instance (the
/// identity, so ψ is the identity map on the tensor).
fn psi(inst: &Instance, a: &ChainComplex, b: &ChainComplex) -> ChainMap {
    debug_assert!(inst.is_lax_monoidal());
    ChainMap::identity(&tensor_complex(a, b))
}

/// `F ⊗ G = [F⁰⊗G⁰, F¹⊗G¹, ψ ∘ (π_F ⊗ π_G)]`.
pub fn tensor_comma(inst: &Instance, f: &CommaObject, g: &CommaObject) -> Result<CommaObject> {
    require_lax(inst)?;
    let pi = inst
        .m()
        .compose(&psi(inst, &f.f1, &g.f1), &tensor_map(&f.pi, &g.pi));
    CommaObject::new(inst, tensor_complex(&f.f0, &g.f0), tensor_complex(&f.f1, &g.f1), pi)
}

/// `σ ⊗ θ` on comma morphisms.
pub fn tensor_comma_map(
    inst: &Instance,
    sigma: &CommaMorphism,
    theta: &CommaMorphism,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    CommaMorphism::new(
        inst,
        tensor_comma(inst, &sigma.source, &theta.source)?,
        tensor_comma(inst, &sigma.target, &theta.target)?,
        tensor_map(&sigma.s0, &theta.s0),
        tensor_map(&sigma.s1, &theta.s1),
    )
}

/// The unit `I = [I_M, I_A, ψ_I]`.
pub fn unit_comma(inst: &Instance) -> Result<CommaObject> {
    require_lax(inst)?;
    let i = unit_complex(inst.p());
    CommaObject::new(inst, i.clone(), i.clone(), ChainMap::identity(&i))
}

/// The right unitor `F ⊗ I -> F`, component-wise the backend's.
pub fn comma_unitor_right(inst: &Instance, f: &CommaObject) -> Result<CommaMorphism> {
    require_lax(inst)?;
    CommaMorphism::new(
        inst,
        tensor_comma(inst, f, &unit_comma(inst)?)?,
        f.clone(),
        unitor_right(&f.f0),
        unitor_right(&f.f1),
    )
}

/// The left unitor `I ⊗ F -> F`.
pub fn comma_unitor_left(inst: &Instance, f: &CommaObject) -> Result<CommaMorphism> {
    require_lax(inst)?;
    CommaMorphism::new(
        inst,
        tensor_comma(inst, &unit_comma(inst)?, f)?,
        f.clone(),
        unitor_left(&f.f0),
        unitor_left(&f.f1),
    )
}

/// The associator `(F⊗G)⊗H -> F⊗(G⊗H)`, component-wise the backend's.
pub fn comma_associator(
    inst: &Instance,
    f: &CommaObject,
    g: &CommaObject,
    h: &CommaObject,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let fg = tensor_comma(inst, f, g)?;
    let gh = tensor_comma(inst, g, h)?;
    CommaMorphism::new(
        inst,
        tensor_comma(inst, &fg, h)?,
        tensor_comma(inst, f, &gh)?,
        associator(&f.f0, &g.f0, &h.f0),
        associator(&f.f1, &g.f1, &h.f1),
    )
}

/// The laxity of ι: the comma morphism `[ψ⁰, ψ¹] : ι(P)⊗ι(Q) -> ι(P⊗Q)`
/// with `ψ⁰ = ψ` and `ψ¹ = Id`.
pub fn iota_laxity(inst: &Instance, p: &ChainComplex, q: &ChainComplex) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let src = tensor_comma(inst, &iota(inst, p), &iota(inst, q))?;
    let dst = iota(inst, &tensor_complex(p, q));
    CommaMorphism::new(
        inst,
        src,
        dst,
        psi(inst, p, q),
        ChainMap::identity(&tensor_complex(p, q)),
    )
}

/// The colaxity of F⁺: `[Id_{m⊗m'}, ψ̃] : F⁺(m⊗m') -> F⁺(m)⊗F⁺(m')`.
/// For the identity instance ψ̃ is the identity, hence an isomorphism.
pub fn fplus_colaxity(
    inst: &Instance,
    m_obj: &ChainComplex,
    m2_obj: &ChainComplex,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let t = tensor_complex(m_obj, m2_obj);
    let src = fplus(inst, &t);
    let dst = tensor_comma(inst, &fplus(inst, m_obj), &fplus(inst, m2_obj))?;
    CommaMorphism::new(inst, src, dst, ChainMap::identity(&t), ChainMap::identity(&t))
}

/// The internal hom `HOM_r(F, G)` via the pullback
/// `HOM_r(F⁰,G⁰) ×_{HOM_r(F⁰,U(G¹))} U(HOM_r(F¹,G¹))`, together with the
/// pullback cone needed by the transposes.
pub struct CommaHom {
    pub obj: CommaObject,
    /// legs: [to Hom(F⁰,G⁰), to U(Hom(F¹,G¹))]
    pub cone: BCone,
}

/// Build `HOM_r(F, G)`: the transpose `δ̄` of `δ = U(ev)∘ψ` and the two legs
/// `HOM(F⁰, π_G)` and `HOM(π_F, U(G¹)) ∘ δ̄` are pulled back; the structure
/// map is the projection `p¹` to `U(HOM(F¹,G¹))`.
pub fn hom_r(inst: &Instance, f: &CommaObject, g: &CommaObject) -> Result<CommaHom> {
    require_lax(inst)?;
    let m = inst.m();
    let hom1 = hom_complex(&f.f1, &g.f1);
    let u_hom1 = inst.u_obj(&hom1);
    // δ : U(Hom(F¹,G¹)) ⊗ U(F¹) -> U(G¹); its transpose δ̄.
    let u_f1 = inst.u_obj(&f.f1);
    let u_g1 = inst.u_obj(&g.f1);
    let delta = m.compose(&inst.u_map(&ev_map(&f.f1, &g.f1)), &psi(inst, &hom1, &f.f1));
    let delta_bar = bar(&delta, &u_hom1, &u_f1);
    // Legs into Hom(F⁰, U(G¹)).
    let leg_g = hom_post(&f.f0, &g.pi);
    let leg_f = m.compose(&hom_pre(&f.pi, &u_g1), &delta_bar);
    let cone = m.pullback(&leg_g, &leg_f)?;
    let pi = cone.legs[1].clone();
    let obj = CommaObject::new(inst, cone.obj.clone(), hom1, pi)?;
    Ok(CommaHom { obj, cone })
}

/// Build `HOM_l(F, G)` with left homs. For the symmetric chain tensor the
/// left hom coincides with the right hom up to the braided transpose, and the
/// resulting comma object is the same pullback.
pub fn hom_l(inst: &Instance, f: &CommaObject, g: &CommaObject) -> Result<CommaHom> {
    require_lax(inst)?;
    let m = inst.m();
    let hom1 = hom_complex(&f.f1, &g.f1);
    let u_hom1 = inst.u_obj(&hom1);
    let u_f1 = inst.u_obj(&f.f1);
    let u_g1 = inst.u_obj(&g.f1);
    // Left evaluation ev_l : X ⊗ Hom(X,Y) -> Y = ev ∘ braiding.
    let ev_l = ev_map(&f.f1, &g.f1).compose(&braiding(&f.f1, &hom1));
    // δ_l : U(F¹) ⊗ U(Hom) -> U(G¹); transpose in the hom slot via braiding.
    let delta_l = m.compose(&inst.u_map(&ev_l), &psi(inst, &f.f1, &hom1));
    let delta_bar = bar(&delta_l.compose(&braiding(&u_hom1, &u_f1)), &u_hom1, &u_f1);
    let leg_g = hom_post(&f.f0, &g.pi);
    let leg_f = m.compose(&hom_pre(&f.pi, &u_g1), &delta_bar);
    let cone = m.pullback(&leg_g, &leg_f)?;
    let pi = cone.legs[1].clone();
    let obj = CommaObject::new(inst, cone.obj.clone(), hom1, pi)?;
    Ok(CommaHom { obj, cone })
}

/// Transpose `σ : E⊗F -> G` to `E -> HOM_r(F, G)`: pair the mediating map θ
/// (from `σ̄⁰` and `U(σ̄¹)∘π_E`) with `σ̄¹`.
pub fn hom_tensor_transpose(
    inst: &Instance,
    sigma: &CommaMorphism,
    e: &CommaObject,
    f: &CommaObject,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let m = inst.m();
    let g = &sigma.target;
    debug_assert_eq!(&tensor_comma(inst, e, f)?, &sigma.source);
    let hom = hom_r(inst, f, g)?;
    let bar0 = bar(&sigma.s0, &e.f0, &f.f0);
    let bar1 = bar(&sigma.s1, &e.f1, &f.f1);
    let theta = m.mediate_into(
        &hom.cone,
        &e.f0,
        &[bar0, m.compose(&inst.u_map(&bar1), &e.pi)],
    )?;
    CommaMorphism::new(inst, e.clone(), hom.obj.clone(), theta, bar1)
}

/// Inverse transpose: `τ : E -> HOM_r(F, G)` becomes `E⊗F -> G` by applying
/// φ⁻¹ component-wise.
pub fn hom_tensor_untranspose(
    inst: &Instance,
    tau: &CommaMorphism,
    f: &CommaObject,
    g: &CommaObject,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let m = inst.m();
    let e = &tau.source;
    let hom = hom_r(inst, f, g)?;
    debug_assert_eq!(&hom.obj, &tau.target);
    let to_hom0 = m.compose(&hom.cone.legs[0], &tau.s0);
    let s0 = unbar_into(&to_hom0, &f.f0, &g.f0);
    let s1 = unbar_into(&tau.s1, &f.f1, &g.f1);
    CommaMorphism::new(inst, tensor_comma(inst, e, f)?, g.clone(), s0, s1)
}

/// The pushout product `σ □ θ` computed through the comma category: tensor
/// the spans, take the level-wise pushout, and mediate into the tensor of the
/// codomains.
pub fn pushout_product(
    inst: &Instance,
    sigma: &CommaMorphism,
    theta: &CommaMorphism,
) -> Result<CommaMorphism> {
    require_lax(inst)?;
    let a_leg = tensor_comma_map(inst, sigma, &CommaMorphism::identity(&theta.source))?;
    let b_leg = tensor_comma_map(inst, &CommaMorphism::identity(&sigma.source), theta)?;
    let po = comma_colimit(inst, &CommaColimitData::Pushout(a_leg, b_leg))?;
    let cod = tensor_comma(inst, &sigma.target, &theta.target)?;
    comma_mediate_out(
        inst,
        &po,
        &cod,
        &[
            tensor_comma_map(inst, &CommaMorphism::identity(&sigma.target), theta)?,
            tensor_comma_map(inst, sigma, &CommaMorphism::identity(&theta.target))?,
        ],
    )
}

/// The component-formula route: `[σ⁰ □ θ⁰, σ¹ □ θ¹]` as backend corner maps.
/// Returns the two corners for comparison against [`pushout_product`].
pub fn pushout_product_components(
    sigma: &CommaMorphism,
    theta: &CommaMorphism,
) -> Result<(ChainMap, ChainMap)> {
    let (_, c0) = crate::chain::tensor::pushout_product_chain(&sigma.s0, &theta.s0)?;
    let (_, c1) = crate::chain::tensor::pushout_product_chain(&sigma.s1, &theta.s1)?;
    Ok((c0, c1))
}

/// Outcome of one monoidal check.
#[derive(Debug, Clone)]
pub struct MonoidalCheck {
    pub name: String,
    pub pass: bool,
}

/// Laxity/strength checks for the canonical functors on samples.
pub fn monoidal_functor_checks(
    inst: &Instance,
    a_samples: &[ChainComplex],
    m_samples: &[ChainComplex],
) -> Result<Vec<MonoidalCheck>> {
    require_lax(inst)?;
    let mut out = Vec::new();
    // ι laxity square commutes (the laxity is a valid comma morphism).
    let mut iota_ok = true;
    for p in a_samples {
        for q in a_samples {
            iota_ok &= iota_laxity(inst, p, q).map(|l| l.is_valid(inst)).unwrap_or(false);
        }
    }
    out.push(MonoidalCheck { name: "iota laxity square".into(), pass: iota_ok });
    // Π⁰/Π¹ strength: on-the-nose equality of components.
    let mut strong = true;
    for p in a_samples {
        for q in a_samples {
            let t = tensor_comma(inst, &iota(inst, p), &iota(inst, q))?;
            strong &= t.f0 == tensor_complex(&inst.u_obj(p), &inst.u_obj(q));
            strong &= t.f1 == tensor_complex(p, q);
        }
    }
    out.push(MonoidalCheck { name: "Pi0/Pi1 strong monoidality".into(), pass: strong });
    // F⁺ colaxity is an isomorphism on the identity instance.
    let mut colax = true;
    for m1 in m_samples {
        for m2 in m_samples {
            let c = fplus_colaxity(inst, m1, m2)?;
            colax &= c.is_valid(inst) && c.is_isomorphism(inst);
        }
    }
    out.push(MonoidalCheck { name: "F+ colaxity iso".into(), pass: colax });
    Ok(out)
}

/// Coherence of the comma tensor: pentagon and triangle identities on a
/// sampled triple/pair, as equalities of composite matrices.
pub fn verify_coherence(
    inst: &Instance,
    f: &CommaObject,
    g: &CommaObject,
    h: &CommaObject,
    k: &CommaObject,
) -> Result<bool> {
    require_lax(inst)?;
    // Triangle: (id_F ⊗ λ_G) ∘ α_{F,I,G} = ρ_F ⊗ id_G.
    let i = unit_comma(inst)?;
    let alpha = comma_associator(inst, f, &i, g)?;
    let lam = comma_unitor_left(inst, g)?;
    let rho = comma_unitor_right(inst, f)?;
    let lhs = tensor_comma_map(inst, &CommaMorphism::identity(f), &lam)?
        .compose(inst, &alpha);
    let rhs = tensor_comma_map(inst, &rho, &CommaMorphism::identity(g))?;
    if lhs != rhs {
        return Ok(false);
    }
    // Pentagon on (F, G, H, K).
    let a1 = comma_associator(inst, &tensor_comma(inst, f, g)?, h, k)?;
    let a2 = comma_associator(inst, f, g, &tensor_comma(inst, h, k)?)?;
    let left = a2.compose(inst, &a1);
    let a3 = tensor_comma_map(
        inst,
        &comma_associator(inst, f, g, h)?,
        &CommaMorphism::identity(k),
    )?;
    let a4 = comma_associator(inst, f, &tensor_comma(inst, g, h)?, k)?;
    let a5 = tensor_comma_map(
        inst,
        &CommaMorphism::identity(f),
        &comma_associator(inst, g, h, k)?,
    )?;
    let right = a5.compose(inst, &a4).compose(inst, &a3);
    Ok(left == right)
}

/// The monoidal-model axioms on seeded samples: pushout-product axiom in Inj
/// and LInj, unit axiom, and strong-monoidality of the projections on
/// pushout products.
pub fn monoid_axiom_suite(
    inst: &Instance,
    cof_samples: &[CommaMorphism],
) -> Result<Vec<MonoidalCheck>> {
    require_lax(inst)?;
    let mut out = Vec::new();
    let mut ppa = true;
    let mut strong = true;
    for sigma in cof_samples {
        for theta in cof_samples {
            let pp = pushout_product(inst, sigma, theta)?;
            for s in [StructureId::Inj, StructureId::LInj] {
                let cs = classify_comma(inst, sigma, s);
                let ct = classify_comma(inst, theta, s);
                let cp = classify_comma(inst, &pp, s);
                if cs.is_cof && ct.is_cof {
                    ppa &= cp.is_cof;
                    if cs.is_we || ct.is_we {
                        ppa &= cp.is_we;
                    }
                }
            }
            // Π⁰(σ□θ) = Π⁰σ □ Π⁰θ and likewise Π¹ (strong-monoidal lemma).
            let (c0, c1) = pushout_product_components(sigma, theta)?;
            strong &= equal_up_to_source_iso(inst, &pp.s0, &c0)
                && equal_up_to_source_iso(inst, &pp.s1, &c1);
        }
    }
    out.push(MonoidalCheck { name: "pushout-product axiom (Inj, LInj)".into(), pass: ppa });
    out.push(MonoidalCheck {
        name: "projections strong monoidal on pushout products".into(),
        pass: strong,
    });
    // Unit axiom: the unit is already cofibrant (0 -> I is level-wise
    // injective), so the cofibrant replacement may be taken to be the
    // identity and the unit-axiom map is the unitor, an isomorphism; check
    // that tensoring cofibrant samples with the unit is a weak equivalence.
    let i = unit_comma(inst)?;
    let from_zero = CommaMorphism::from_initial(inst, &i);
    let mut unit_ok = classify_comma(inst, &from_zero, StructureId::Inj).is_cof;
    for sigma in cof_samples {
        let rho = comma_unitor_left(inst, &sigma.target)?;
        unit_ok &= classify_comma(inst, &rho, StructureId::Inj).is_we;
    }
    out.push(MonoidalCheck { name: "unit axiom".into(), pass: unit_ok });
    Ok(out)
}

/// The two corner routes may present the pushout with different bases; they
/// agree when an iso aligns the sources and the corners match on the nose
/// afterwards. For identical construction order the iso is the identity, and
/// we demand exact equality after mediating.
fn equal_up_to_source_iso(inst: &Instance, via_comma: &ChainMap, via_chain: &ChainMap) -> bool {
    let m = inst.m();
    if m.eq_map(via_comma, via_chain) {
        return true;
    }
    // Same target required; align sources by solving for an iso j with
    // via_chain = via_comma ∘ j and checking j is an iso.
    if via_comma.target() != via_chain.target() {
        return false;
    }
    let vars = crate::chain::MapVars::new(vec![m.hom_vars(
        m.src(via_chain),
        m.src(via_comma),
    )]);
    let (vc, vk) = (via_comma.clone(), via_chain.clone());
    let m2 = m;
    let Some(sols) = crate::chain::solve_affine(inst.p(), vars, move |fs| {
        let j = &fs[0];
        let mut v = crate::chain::chain_defect(j);
        v.extend(crate::chain::difference(&m2.compose(&vc, j), &vk));
        v
    }) else {
        return false;
    };
    // Search the affine space for an isomorphism witness.
    let k = sols.count_log_p();
    if k == 0 {
        return m.is_iso(&sols.solution(&[])[0]);
    }
    let p = inst.p();
    let total = (p as u128).pow(k.min(12) as u32);
    let mut coeffs = vec![0u64; k];
    for idx in 0..total {
        let mut n = idx;
        for c in coeffs.iter_mut() {
            *c = (n % p as u128) as u64;
            n /= p as u128;
        }
        if m.is_iso(&sols.solution(&coeffs)[0]) {
            return true;
        }
    }
    false
}

/// Factor the unit-kind morphisms through `factorize_comma` so callers can
/// produce cofibrant replacements when the unit is not already cofibrant.
/// For the chain instance this returns the identity replacement.
pub fn cofibrant_replacement_of_unit(inst: &Instance) -> Result<CommaMorphism> {
    let i = unit_comma(inst)?;
    let from_zero = CommaMorphism::from_initial(inst, &i);
    if classify_comma(inst, &from_zero, StructureId::Inj).is_cof {
        return Ok(CommaMorphism::identity(&i));
    }
    let (_, r) = factorize_comma(inst, &from_zero, StructureId::Inj, FactorKind::CofThenTrivFib)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comma::functors::iota_map;
    use crate::linalg::Matrix;
    use std::collections::BTreeMap;

    fn inst2() -> Instance {
        Instance::identity(2)
    }

    fn inst3() -> Instance {
        Instance::identity(3)
    }

    #[test]
    fn unsupported_without_lax_structure() {
        let inst = Instance::hom_tensor(ChainComplex::disk(2, 1));
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        assert!(matches!(tensor_comma(&inst, &s0, &s0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unit_and_tensor_of_units() {
        let inst = inst2();
        let i = unit_comma(&inst).unwrap();
        assert_eq!(i, iota(&inst, &unit_complex(2)));
        let ii = tensor_comma(&inst, &i, &i).unwrap();
        assert_eq!(ii, i);
    }

    #[test]
    fn tensor_with_unit_up_to_unitor() {
        // [D1, S1, q] ⊗ I = [D1, S1, q] up to the unitor isomorphism.
        let inst = inst2();
        let mut comps = BTreeMap::new();
        comps.insert(1, Matrix::identity(2, 1));
        let q = ChainMap::new(ChainComplex::disk(2, 1), ChainComplex::sphere(2, 1), comps)
            .unwrap();
        let obj =
            CommaObject::new(&inst, ChainComplex::disk(2, 1), ChainComplex::sphere(2, 1), q)
                .unwrap();
        let rho = comma_unitor_right(&inst, &obj).unwrap();
        assert!(rho.is_isomorphism(&inst));
    }

    #[test]
    fn coherence_on_small_objects() {
        for inst in [inst2(), inst3()] {
            let p = inst.p();
            let f = iota(&inst, &ChainComplex::disk(p, 1));
            let g = iota(&inst, &ChainComplex::sphere(p, 0));
            let h = iota(&inst, &ChainComplex::sphere(p, 1));
            let k = iota(&inst, &ChainComplex::disk(p, 2));
            assert!(verify_coherence(&inst, &f, &g, &h, &k).unwrap());
        }
    }

    #[test]
    fn hom_r_of_unit_spheres() {
        // hom_r(ι(S0), ι(S0)) = ι(S0) (pullback of identity legs).
        let inst = inst2();
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        let h = hom_r(&inst, &s0, &s0).unwrap();
        assert_eq!(h.obj.f1, ChainComplex::sphere(2, 0));
        assert_eq!(h.obj.f0.total_dim(), 1);
        assert!(inst.m().is_iso(&h.obj.pi));
    }

    #[test]
    fn hom_r_degree_shift() {
        // hom_r(ι(S1), ι(S0)): A-component is the degree -1 line.
        let inst = inst2();
        let s1 = iota(&inst, &ChainComplex::sphere(2, 1));
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        let h = hom_r(&inst, &s1, &s0).unwrap();
        assert_eq!(h.obj.f1.dim(-1), 1);
        assert_eq!(h.obj.f1.total_dim(), 1);
    }

    #[test]
    fn hom_l_coincides_with_hom_r_here() {
        for inst in [inst2(), inst3()] {
            let p = inst.p();
            let f = iota(&inst, &ChainComplex::disk(p, 1));
            let g = iota(&inst, &ChainComplex::sphere(p, 0));
            let hr = hom_r(&inst, &f, &g).unwrap();
            let hl = hom_l(&inst, &f, &g).unwrap();
            assert_eq!(hr.obj.f1, hl.obj.f1);
            assert_eq!(hr.obj.f0, hl.obj.f0);
        }
    }

    #[test]
    fn transpose_roundtrip_and_count() {
        let inst = inst2();
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        let e = s0.clone();
        let f = s0.clone();
        let g = s0.clone();
        let ef = tensor_comma(&inst, &e, &f).unwrap();
        let homs = crate::comma::object::enumerate_comma_homs(&inst, &ef, &g, 1 << 16).unwrap();
        let hom_obj = hom_r(&inst, &f, &g).unwrap().obj;
        let into_hom =
            crate::comma::object::enumerate_comma_homs(&inst, &e, &hom_obj, 1 << 16).unwrap();
        assert_eq!(homs.len(), into_hom.len());
        assert_eq!(homs.len(), 2);
        for sigma in &homs {
            let t = hom_tensor_transpose(&inst, sigma, &e, &f).unwrap();
            let back = hom_tensor_untranspose(&inst, &t, &f, &g).unwrap();
            assert_eq!(&back, sigma);
        }
    }

    #[test]
    fn pushout_product_of_unit_inclusions() {
        // (0 -> ι(S0)) □ (0 -> ι(S0)) = (0 -> ι(S0)).
        let inst = inst2();
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        let incl = CommaMorphism::from_initial(&inst, &s0);
        let pp = pushout_product(&inst, &incl, &incl).unwrap();
        assert!(pp.source.f0.is_zero_complex());
        assert_eq!(pp.target.f0, ChainComplex::sphere(2, 0));
        let c = classify_comma(&inst, &pp, StructureId::Inj);
        assert!(c.is_cof);
    }

    #[test]
    fn component_formula_matches_direct_route() {
        let inst = inst3();
        let d1 = ChainComplex::disk(3, 1);
        let s0 = ChainComplex::sphere(3, 0);
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(3, 1));
        let incl = ChainMap::new(s0, d1, comps).unwrap();
        let sigma = iota_map(&inst, &incl);
        let theta = CommaMorphism::from_initial(&inst, &iota(&inst, &ChainComplex::sphere(3, 1)));
        let pp = pushout_product(&inst, &sigma, &theta).unwrap();
        let (c0, c1) = pushout_product_components(&sigma, &theta).unwrap();
        assert!(equal_up_to_source_iso(&inst, &pp.s0, &c0));
        assert!(equal_up_to_source_iso(&inst, &pp.s1, &c1));
    }

    #[test]
    fn monoid_axioms_on_generating_cofibrations() {
        for inst in [inst2(), inst3()] {
            let p = inst.p();
            let d1 = ChainComplex::disk(p, 1);
            let s0 = ChainComplex::sphere(p, 0);
            let mut comps = BTreeMap::new();
            comps.insert(0, Matrix::identity(p, 1));
            let incl = ChainMap::new(s0, d1.clone(), comps).unwrap();
            let samples = vec![
                iota_map(&inst, &incl),
                CommaMorphism::from_initial(&inst, &iota(&inst, &d1)),
            ];
            for check in monoid_axiom_suite(&inst, &samples).unwrap() {
                assert!(check.pass, "{}", check.name);
            }
            let a_samples = [ChainComplex::sphere(p, 0), d1.clone()];
            for check in monoidal_functor_checks(&inst, &a_samples, &a_samples).unwrap() {
                assert!(check.pass, "{}", check.name);
            }
        }
    }

    #[test]
    fn unit_cofibrant_replacement_is_identity() {
        let inst = inst2();
        let r = cofibrant_replacement_of_unit(&inst).unwrap();
        assert!(r.is_identity());
    }
}
