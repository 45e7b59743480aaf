//! Finite limits and colimits in the comma category, computed level-wise.
//!
//! The F⁰- and F¹-parts are backend (co)limits; the structure map of the
//! apex is induced through U's limit preservation (limits) or the φ-transpose
//! of the canonical map `F(colim F⁰) -> colim F¹` (colimits). Mediating maps
//! witness the universal property by exact solving.

use crate::chain::complex::ChainMap;
use crate::chain::{BCocone, BCone};
use crate::comma::instance::Instance;
use crate::comma::object::{CommaMorphism, CommaObject};
use crate::{Error, Result};

/// Shapes of finite comma (co)limits.
#[derive(Debug, Clone)]
pub enum CommaLimitData {
    Terminal,
    Product(CommaObject, CommaObject),
    /// Pullback of the cospan `sigma : F -> H <- G : tau`.
    Pullback(CommaMorphism, CommaMorphism),
    /// Equalizer of a parallel pair.
    Equalizer(CommaMorphism, CommaMorphism),
}

#[derive(Debug, Clone)]
pub enum CommaColimitData {
    Initial,
    Coproduct(CommaObject, CommaObject),
    /// Pushout of the span `sigma : H -> F`, `tau : H -> G`.
    Pushout(CommaMorphism, CommaMorphism),
    Coequalizer(CommaMorphism, CommaMorphism),
}

/// A comma limit cone.
#[derive(Debug, Clone)]
pub struct CommaCone {
    pub obj: CommaObject,
    pub legs: Vec<CommaMorphism>,
}

/// A comma colimit cocone.
#[derive(Debug, Clone)]
pub struct CommaCocone {
    pub obj: CommaObject,
    pub legs: Vec<CommaMorphism>,
}

/// Assemble the apex structure map for a limit: the iso
/// `U(lim A-part) ≅ lim U(A-part)` is produced by mediating the U-image of
/// the A-cone into the M-limit of the U-image diagram, then inverted.
fn limit_pi(
    inst: &Instance,
    m_cone: &BCone,
    a_cone: &BCone,
    mu_cone: &BCone,
    pis: &[&ChainMap],
) -> Result<ChainMap> {
    let m = inst.m();
    let u_apex = inst.u_obj(&a_cone.obj);
    let u_legs: Vec<ChainMap> = a_cone.legs.iter().map(|l| inst.u_map(l)).collect();
    let nu = m.mediate_into(mu_cone, &u_apex, &u_legs)?;
    if !m.is_iso(&nu) {
        return Err(Error::Unsupported("U does not preserve this finite limit".into()));
    }
    let legs_from_m: Vec<ChainMap> = m_cone
        .legs
        .iter()
        .zip(pis)
        .map(|(leg, pi)| m.compose(pi, leg))
        .collect();
    let kappa = m.mediate_into(mu_cone, &m_cone.obj, &legs_from_m)?;
    Ok(m.compose(&m.invert(&nu)?, &kappa))
}

/// Compute a finite comma limit with its projection legs.
pub fn comma_limit(inst: &Instance, data: &CommaLimitData) -> Result<CommaCone> {
    let (m, a) = (inst.m(), inst.a());
    match data {
        CommaLimitData::Terminal => {
            Ok(CommaCone { obj: CommaObject::terminal(inst), legs: vec![] })
        }
        CommaLimitData::Product(f, g) => {
            let m_cone = m.product(&f.f0, &g.f0);
            let a_cone = a.product(&f.f1, &g.f1);
            let mu_cone = m.product(&inst.u_obj(&f.f1), &inst.u_obj(&g.f1));
            let pi = limit_pi(inst, &m_cone, &a_cone, &mu_cone, &[&f.pi, &g.pi])?;
            let obj = CommaObject { f0: m_cone.obj.clone(), f1: a_cone.obj.clone(), pi };
            let legs = vec![
                CommaMorphism {
                    source: obj.clone(),
                    target: f.clone(),
                    s0: m_cone.legs[0].clone(),
                    s1: a_cone.legs[0].clone(),
                },
                CommaMorphism {
                    source: obj.clone(),
                    target: g.clone(),
                    s0: m_cone.legs[1].clone(),
                    s1: a_cone.legs[1].clone(),
                },
            ];
            for leg in &legs {
                if !leg.is_valid(inst) {
                    return Err(Error::NotACommaMorphism);
                }
            }
            Ok(CommaCone { obj, legs })
        }
        CommaLimitData::Pullback(sigma, tau) => {
            if sigma.target != tau.target {
                return Err(Error::Shape("pullback needs a common codomain".into()));
            }
            let m_cone = m.pullback(&sigma.s0, &tau.s0)?;
            let a_cone = a.pullback(&sigma.s1, &tau.s1)?;
            let mu_cone =
                m.pullback(&inst.u_map(&sigma.s1), &inst.u_map(&tau.s1))?;
            let pi = limit_pi(
                inst,
                &m_cone,
                &a_cone,
                &mu_cone,
                &[&sigma.source.pi, &tau.source.pi],
            )?;
            let obj = CommaObject { f0: m_cone.obj.clone(), f1: a_cone.obj.clone(), pi };
            let legs = vec![
                CommaMorphism {
                    source: obj.clone(),
                    target: sigma.source.clone(),
                    s0: m_cone.legs[0].clone(),
                    s1: a_cone.legs[0].clone(),
                },
                CommaMorphism {
                    source: obj.clone(),
                    target: tau.source.clone(),
                    s0: m_cone.legs[1].clone(),
                    s1: a_cone.legs[1].clone(),
                },
            ];
            for leg in &legs {
                if !leg.is_valid(inst) {
                    return Err(Error::NotACommaMorphism);
                }
            }
            Ok(CommaCone { obj, legs })
        }
        CommaLimitData::Equalizer(sigma, tau) => {
            if sigma.source != tau.source || sigma.target != tau.target {
                return Err(Error::Shape("equalizer needs a parallel pair".into()));
            }
            let m_cone = m.equalizer(&sigma.s0, &tau.s0)?;
            let a_cone = a.equalizer(&sigma.s1, &tau.s1)?;
            let mu_cone = m.equalizer(&inst.u_map(&sigma.s1), &inst.u_map(&tau.s1))?;
            let pi = limit_pi(inst, &m_cone, &a_cone, &mu_cone, &[&sigma.source.pi])?;
            let obj = CommaObject { f0: m_cone.obj.clone(), f1: a_cone.obj.clone(), pi };
            let leg = CommaMorphism {
                source: obj.clone(),
                target: sigma.source.clone(),
                s0: m_cone.legs[0].clone(),
                s1: a_cone.legs[0].clone(),
            };
            if !leg.is_valid(inst) {
                return Err(Error::NotACommaMorphism);
            }
            Ok(CommaCone { obj, legs: vec![leg] })
        }
    }
}

/// Assemble the apex structure map for a colimit: transpose the canonical
/// map `F(colim M-part) -> colim A-part` through φ.
fn colimit_pi(
    inst: &Instance,
    m_cocone: &BCocone,
    a_cocone: &BCocone,
    fm_cocone: &BCocone,
    pis: &[&ChainMap],
    src_f1s: &[&crate::chain::ChainComplex],
) -> Result<ChainMap> {
    let (m, a) = (inst.m(), inst.a());
    let _ = m;
    let f_apex = inst.f_obj(&m_cocone.obj);
    let f_legs: Vec<ChainMap> = m_cocone.legs.iter().map(|l| inst.f_map(l)).collect();
    let nu = a.mediate_out(fm_cocone, &f_apex, &f_legs)?;
    if !a.is_iso(&nu) {
        return Err(Error::Unsupported("F does not preserve this finite colimit".into()));
    }
    let legs_to_a: Vec<ChainMap> = pis
        .iter()
        .zip(src_f1s)
        .zip(&a_cocone.legs)
        .map(|((pi, f1), inj)| {
            let phi_pi = inst.phi_inv(pi, f1);
            a.compose(inj, &phi_pi)
        })
        .collect();
    let w = a.mediate_out(fm_cocone, &a_cocone.obj, &legs_to_a)?;
    let kappa = a.compose(&w, &a.invert(&nu)?);
    Ok(inst.phi(&kappa, &m_cocone.obj))
}

/// Compute a finite comma colimit with its injection legs.
pub fn comma_colimit(inst: &Instance, data: &CommaColimitData) -> Result<CommaCocone> {
    let (m, a) = (inst.m(), inst.a());
    match data {
        CommaColimitData::Initial => {
            Ok(CommaCocone { obj: CommaObject::initial(inst), legs: vec![] })
        }
        CommaColimitData::Coproduct(f, g) => {
            let m_cocone = m.coproduct(&f.f0, &g.f0);
            let a_cocone = a.coproduct(&f.f1, &g.f1);
            let fm_cocone = a.coproduct(&inst.f_obj(&f.f0), &inst.f_obj(&g.f0));
            let pi = colimit_pi(
                inst,
                &m_cocone,
                &a_cocone,
                &fm_cocone,
                &[&f.pi, &g.pi],
                &[&f.f1, &g.f1],
            )?;
            let obj = CommaObject { f0: m_cocone.obj.clone(), f1: a_cocone.obj.clone(), pi };
            let legs = vec![
                CommaMorphism {
                    source: f.clone(),
                    target: obj.clone(),
                    s0: m_cocone.legs[0].clone(),
                    s1: a_cocone.legs[0].clone(),
                },
                CommaMorphism {
                    source: g.clone(),
                    target: obj.clone(),
                    s0: m_cocone.legs[1].clone(),
                    s1: a_cocone.legs[1].clone(),
                },
            ];
            for leg in &legs {
                if !leg.is_valid(inst) {
                    return Err(Error::NotACommaMorphism);
                }
            }
            Ok(CommaCocone { obj, legs })
        }
        CommaColimitData::Pushout(sigma, tau) => {
            if sigma.source != tau.source {
                return Err(Error::Shape("pushout needs a common domain".into()));
            }
            let m_cocone = m.pushout(&sigma.s0, &tau.s0)?;
            let a_cocone = a.pushout(&sigma.s1, &tau.s1)?;
            let fm_cocone = a.pushout(&inst.f_map(&sigma.s0), &inst.f_map(&tau.s0))?;
            let pi = colimit_pi(
                inst,
                &m_cocone,
                &a_cocone,
                &fm_cocone,
                &[&sigma.target.pi, &tau.target.pi],
                &[&sigma.target.f1, &tau.target.f1],
            )?;
            let obj = CommaObject { f0: m_cocone.obj.clone(), f1: a_cocone.obj.clone(), pi };
            let legs = vec![
                CommaMorphism {
                    source: sigma.target.clone(),
                    target: obj.clone(),
                    s0: m_cocone.legs[0].clone(),
                    s1: a_cocone.legs[0].clone(),
                },
                CommaMorphism {
                    source: tau.target.clone(),
                    target: obj.clone(),
                    s0: m_cocone.legs[1].clone(),
                    s1: a_cocone.legs[1].clone(),
                },
            ];
            for leg in &legs {
                if !leg.is_valid(inst) {
                    return Err(Error::NotACommaMorphism);
                }
            }
            Ok(CommaCocone { obj, legs })
        }
        CommaColimitData::Coequalizer(sigma, tau) => {
            if sigma.source != tau.source || sigma.target != tau.target {
                return Err(Error::Shape("coequalizer needs a parallel pair".into()));
            }
            let m_cocone = m.coequalizer(&sigma.s0, &tau.s0)?;
            let a_cocone = a.coequalizer(&sigma.s1, &tau.s1)?;
            let fm_cocone = a.coequalizer(&inst.f_map(&sigma.s0), &inst.f_map(&tau.s0))?;
            let pi = colimit_pi(
                inst,
                &m_cocone,
                &a_cocone,
                &fm_cocone,
                &[&sigma.target.pi],
                &[&sigma.target.f1],
            )?;
            let obj = CommaObject { f0: m_cocone.obj.clone(), f1: a_cocone.obj.clone(), pi };
            let leg = CommaMorphism {
                source: sigma.target.clone(),
                target: obj.clone(),
                s0: m_cocone.legs[0].clone(),
                s1: a_cocone.legs[0].clone(),
            };
            if !leg.is_valid(inst) {
                return Err(Error::NotACommaMorphism);
            }
            Ok(CommaCocone { obj, legs: vec![leg] })
        }
    }
}

/// The unique mediating morphism into a comma limit cone.
pub fn comma_mediate_into(
    inst: &Instance,
    cone: &CommaCone,
    source: &CommaObject,
    maps: &[CommaMorphism],
) -> Result<CommaMorphism> {
    assert_eq!(cone.legs.len(), maps.len());
    let (m, a) = (inst.m(), inst.a());
    let m_cone = BCone {
        obj: cone.obj.f0.clone(),
        legs: cone.legs.iter().map(|l| l.s0.clone()).collect(),
    };
    let a_cone = BCone {
        obj: cone.obj.f1.clone(),
        legs: cone.legs.iter().map(|l| l.s1.clone()).collect(),
    };
    let s0 = m.mediate_into(&m_cone, &source.f0, &maps.iter().map(|f| f.s0.clone()).collect::<Vec<_>>())?;
    let s1 = a.mediate_into(&a_cone, &source.f1, &maps.iter().map(|f| f.s1.clone()).collect::<Vec<_>>())?;
    CommaMorphism::new(inst, source.clone(), cone.obj.clone(), s0, s1)
}

/// The unique mediating morphism out of a comma colimit cocone.
pub fn comma_mediate_out(
    inst: &Instance,
    cocone: &CommaCocone,
    target: &CommaObject,
    maps: &[CommaMorphism],
) -> Result<CommaMorphism> {
    assert_eq!(cocone.legs.len(), maps.len());
    let (m, a) = (inst.m(), inst.a());
    let m_cocone = BCocone {
        obj: cocone.obj.f0.clone(),
        legs: cocone.legs.iter().map(|l| l.s0.clone()).collect(),
    };
    let a_cocone = BCocone {
        obj: cocone.obj.f1.clone(),
        legs: cocone.legs.iter().map(|l| l.s1.clone()).collect(),
    };
    let s0 = m.mediate_out(&m_cocone, &target.f0, &maps.iter().map(|f| f.s0.clone()).collect::<Vec<_>>())?;
    let s1 = a.mediate_out(&a_cocone, &target.f1, &maps.iter().map(|f| f.s1.clone()).collect::<Vec<_>>())?;
    CommaMorphism::new(inst, cocone.obj.clone(), target.clone(), s0, s1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::comma::functors::iota;

    #[test]
    fn terminal_is_the_zero_triple() {
        let inst = Instance::identity(2);
        let t = comma_limit(&inst, &CommaLimitData::Terminal).unwrap();
        assert!(t.obj.f0.is_zero_complex());
        assert!(t.obj.f1.is_zero_complex());
    }

    #[test]
    fn product_of_iotas() {
        // ι(S0) × ι(S1) = [S0⊕S1, S0⊕S1, id]
        let inst = Instance::identity(2);
        let f = iota(&inst, &ChainComplex::sphere(2, 0));
        let g = iota(&inst, &ChainComplex::sphere(2, 1));
        let c = comma_limit(&inst, &CommaLimitData::Product(f, g)).unwrap();
        assert_eq!(c.obj.f0.dim(0), 1);
        assert_eq!(c.obj.f0.dim(1), 1);
        assert_eq!(c.obj.f0, c.obj.f1);
        assert!(inst.m().is_iso(&c.obj.pi));
    }

    #[test]
    fn pushout_of_iotas_along_zero() {
        // pushout of ι(S0) <- ι(0) -> ι(S0) = [S0⊕S0, S0⊕S0, iso]
        let inst = Instance::identity(2);
        let z = iota(&inst, &ChainComplex::zero(2));
        let s = iota(&inst, &ChainComplex::sphere(2, 0));
        let to_s = CommaMorphism::new(
            &inst,
            z.clone(),
            s.clone(),
            crate::chain::ChainMap::zero(&z.f0, &s.f0),
            crate::chain::ChainMap::zero(&z.f1, &s.f1),
        )
        .unwrap();
        let c =
            comma_colimit(&inst, &CommaColimitData::Pushout(to_s.clone(), to_s)).unwrap();
        assert_eq!(c.obj.f0.dim(0), 2);
        assert_eq!(c.obj.f1.dim(0), 2);
        assert!(inst.m().is_iso(&c.obj.pi));
    }

    #[test]
    fn hom_tensor_limits_have_induced_pi() {
        let inst = Instance::hom_tensor(ChainComplex::disk(2, 1));
        let f = iota(&inst, &ChainComplex::sphere(2, 0));
        let g = iota(&inst, &ChainComplex::disk(2, 1));
        let c = comma_limit(&inst, &CommaLimitData::Product(f.clone(), g.clone())).unwrap();
        for leg in &c.legs {
            assert!(leg.is_valid(&inst));
        }
        // Mediating against the diagonal-ish cone from f.
        let med = comma_mediate_into(
            &inst,
            &c,
            &f,
            &[
                CommaMorphism::identity(&f),
                CommaMorphism::new(
                    &inst,
                    f.clone(),
                    g.clone(),
                    crate::chain::ChainMap::zero(&f.f0, &g.f0),
                    crate::chain::ChainMap::zero(&f.f1, &g.f1),
                )
                .unwrap(),
            ],
        )
        .unwrap();
        assert!(med.is_valid(&inst));
    }
}
