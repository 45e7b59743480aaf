//! Objects and morphisms of the comma category `M↓U`, plus exact hom-set
//! computation.
//!
//! An object is a triple `[F⁰, F¹, π : F⁰ -> U(F¹)]`; a morphism is a pair
//! `[σ⁰, σ¹]` whose square against the structure maps commutes. Hom-sets are
//! affine solution sets over F_p and can be enumerated exhaustively when
//! small.

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::chain::space::{chain_defect, solve_affine, AffineSolutions, MapVars};
use crate::comma::instance::Instance;
use crate::{Error, Result};

/// Which of the eight model structures a classification or factorization
/// request targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureId {
    /// injective: level-wise cofibrations, level-wise weak equivalences
    Inj,
    /// projective: level-wise fibrations, level-wise weak equivalences
    Proj,
    /// left injective localization (weak equivalences created by Π¹)
    LInj,
    /// left projective localization
    LProj,
    /// right injective localization (weak equivalences created by Π⁰)
    RInj,
    /// right projective localization
    RProj,
    /// strong cofibrations / Π⁰-fibrations structure
    Strong0,
    /// Π¹-cofibrations / strong fibrations structure
    Strong1,
}

impl StructureId {
    pub const ALL: [StructureId; 8] = [
        StructureId::Inj,
        StructureId::Proj,
        StructureId::LInj,
        StructureId::LProj,
        StructureId::RInj,
        StructureId::RProj,
        StructureId::Strong0,
        StructureId::Strong1,
    ];

    /// The structure presenting this one on the opposite comma category.
    pub fn dual(self) -> StructureId {
        match self {
            StructureId::Inj => StructureId::Proj,
            StructureId::Proj => StructureId::Inj,
            StructureId::LInj => StructureId::RProj,
            StructureId::RProj => StructureId::LInj,
            StructureId::LProj => StructureId::RInj,
            StructureId::RInj => StructureId::LProj,
            StructureId::Strong0 => StructureId::Strong1,
            StructureId::Strong1 => StructureId::Strong0,
        }
    }

    pub fn parse(s: &str) -> Result<StructureId> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "inj" => StructureId::Inj,
            "proj" => StructureId::Proj,
            "linj" => StructureId::LInj,
            "lproj" => StructureId::LProj,
            "rinj" => StructureId::RInj,
            "rproj" => StructureId::RProj,
            "strong0" => StructureId::Strong0,
            "strong1" => StructureId::Strong1,
            other => return Err(Error::Input(format!("unknown structure: {other}"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StructureId::Inj => "inj",
            StructureId::Proj => "proj",
            StructureId::LInj => "linj",
            StructureId::LProj => "lproj",
            StructureId::RInj => "rinj",
            StructureId::RProj => "rproj",
            StructureId::Strong0 => "strong0",
            StructureId::Strong1 => "strong1",
        }
    }
}

/// A comma object `[F⁰, F¹, π : F⁰ -> U(F¹)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommaObject {
    pub f0: ChainComplex,
    pub f1: ChainComplex,
    pub pi: ChainMap,
}

impl CommaObject {
    pub fn new(inst: &Instance, f0: ChainComplex, f1: ChainComplex, pi: ChainMap) -> Result<CommaObject> {
        let m = inst.m();
        m.check_map(&pi, &f0, &inst.u_obj(&f1))?;
        Ok(CommaObject { f0, f1, pi })
    }

    pub fn is_valid(&self, inst: &Instance) -> bool {
        inst.m().check_map(&self.pi, &self.f0, &inst.u_obj(&self.f1)).is_ok()
    }

    /// The terminal object `[*, *, id] = [0, 0, id]` of the chain instance.
    pub fn terminal(inst: &Instance) -> CommaObject {
        let zm = inst.m().zero_obj();
        let za = inst.a().zero_obj();
        let pi = inst.m().zero_map(&zm, &inst.u_obj(&za));
        CommaObject { f0: zm, f1: za, pi }
    }

    /// The initial object `[∅, ∅, !] = [0, 0, 0]` of the chain instance.
    pub fn initial(inst: &Instance) -> CommaObject {
        Self::terminal(inst)
    }

    pub fn total_dim(&self) -> usize {
        self.f0.total_dim() + self.f1.total_dim()
    }
}

/// A comma morphism `[σ⁰, σ¹]` with `π_G ∘ σ⁰ = U(σ¹) ∘ π_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommaMorphism {
    pub source: CommaObject,
    pub target: CommaObject,
    pub s0: ChainMap,
    pub s1: ChainMap,
}

impl CommaMorphism {
    pub fn new(
        inst: &Instance,
        source: CommaObject,
        target: CommaObject,
        s0: ChainMap,
        s1: ChainMap,
    ) -> Result<CommaMorphism> {
        let (m, a) = (inst.m(), inst.a());
        m.check_map(&s0, &source.f0, &target.f0)?;
        a.check_map(&s1, &source.f1, &target.f1)?;
        let sigma = CommaMorphism { source, target, s0, s1 };
        if !sigma.square_commutes(inst) {
            return Err(Error::NotACommaMorphism);
        }
        Ok(sigma)
    }

    /// `π_G ∘ σ⁰ = U(σ¹) ∘ π_F`.
    pub fn square_commutes(&self, inst: &Instance) -> bool {
        let m = inst.m();
        let lhs = m.compose(&self.target.pi, &self.s0);
        let rhs = m.compose(&inst.u_map(&self.s1), &self.source.pi);
        m.eq_map(&lhs, &rhs)
    }

    /// The φ-transposed square commutes iff the original does; this checks
    /// the transposed square directly: `σ¹ ∘ φ⁻¹(π_F) = φ⁻¹(π_G) ∘ F(σ⁰)`.
    pub fn transposed_square_commutes(&self, inst: &Instance) -> bool {
        let a = inst.a();
        let phi_f = inst.phi_inv(&self.source.pi, &self.source.f1);
        let phi_g = inst.phi_inv(&self.target.pi, &self.target.f1);
        let lhs = a.compose(&self.s1, &phi_f);
        let rhs = a.compose(&phi_g, &inst.f_map(&self.s0));
        a.eq_map(&lhs, &rhs)
    }

    pub fn identity(obj: &CommaObject) -> CommaMorphism {
        CommaMorphism {
            source: obj.clone(),
            target: obj.clone(),
            s0: ChainMap::identity(&obj.f0),
            s1: ChainMap::identity(&obj.f1),
        }
    }

    pub fn is_valid(&self, inst: &Instance) -> bool {
        self.source.is_valid(inst)
            && self.target.is_valid(inst)
            && inst.m().check_map(&self.s0, &self.source.f0, &self.target.f0).is_ok()
            && inst.a().check_map(&self.s1, &self.source.f1, &self.target.f1).is_ok()
            && self.square_commutes(inst)
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, inst: &Instance, other: &CommaMorphism) -> CommaMorphism {
        assert_eq!(other.target, self.source, "comma composition endpoint mismatch");
        CommaMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            s0: inst.m().compose(&self.s0, &other.s0),
            s1: inst.a().compose(&self.s1, &other.s1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.s0 == ChainMap::identity(&self.source.f0)
            && self.s1 == ChainMap::identity(&self.source.f1)
    }

    /// Degreewise-iso on both components.
    pub fn is_isomorphism(&self, inst: &Instance) -> bool {
        inst.m().is_iso(&self.s0) && inst.a().is_iso(&self.s1)
    }

    pub fn invert(&self, inst: &Instance) -> Result<CommaMorphism> {
        Ok(CommaMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            s0: inst.m().invert(&self.s0)?,
            s1: inst.a().invert(&self.s1)?,
        })
    }

    /// The unique map to the terminal object.
    pub fn to_terminal(inst: &Instance, obj: &CommaObject) -> CommaMorphism {
        let t = CommaObject::terminal(inst);
        CommaMorphism {
            source: obj.clone(),
            target: t.clone(),
            s0: inst.m().zero_map(&obj.f0, &t.f0),
            s1: inst.a().zero_map(&obj.f1, &t.f1),
        }
    }

    /// The unique map from the initial object.
    pub fn from_initial(inst: &Instance, obj: &CommaObject) -> CommaMorphism {
        let i = CommaObject::initial(inst);
        CommaMorphism {
            source: i.clone(),
            target: obj.clone(),
            s0: inst.m().zero_map(&i.f0, &obj.f0),
            s1: inst.a().zero_map(&i.f1, &obj.f1),
        }
    }
}

/// The affine solution space of comma morphisms `F -> G`.
pub struct CommaHomSpace {
    pub source: CommaObject,
    pub target: CommaObject,
    sols: AffineSolutions,
}

impl CommaHomSpace {
    pub fn morphism(&self, coeffs: &[u64], inst: &Instance) -> CommaMorphism {
        let pair = self.sols.solution(coeffs);
        let sigma = CommaMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            s0: pair[0].clone(),
            s1: pair[1].clone(),
        };
        debug_assert!(sigma.is_valid(inst));
        sigma
    }

    /// log_p of the hom-set size.
    pub fn count_log_p(&self) -> usize {
        self.sols.count_log_p()
    }

    pub fn enumerate(&self, inst: &Instance) -> Vec<CommaMorphism> {
        self.sols
            .enumerate()
            .into_iter()
            .map(|pair| {
                let sigma = CommaMorphism {
                    source: self.source.clone(),
                    target: self.target.clone(),
                    s0: pair[0].clone(),
                    s1: pair[1].clone(),
                };
                debug_assert!(sigma.is_valid(inst));
                sigma
            })
            .collect()
    }
}

/// Solve for the full hom-set `Hom(F, G)` as an affine space: unknowns are
/// the graded components (σ⁰, σ¹), constraints are the two chain conditions
/// plus the comma square.
pub fn comma_hom_space(inst: &Instance, f: &CommaObject, g: &CommaObject) -> CommaHomSpace {
    let m = inst.m();
    let vars = MapVars::new(vec![
        m.hom_vars(&f.f0, &g.f0),
        inst.a().hom_vars(&f.f1, &g.f1),
    ]);
    let (fp, gp) = (f.clone(), g.clone());
    let inst = inst.clone();
    let sols = solve_affine(m.p(), vars, move |pair| {
        let (s0, s1) = (&pair[0], &pair[1]);
        let mut v = chain_defect(s0);
        v.extend(chain_defect(s1));
        let m = inst.m();
        let lhs = m.compose(&gp.pi, s0);
        let rhs = m.compose(&inst.u_map(s1), &fp.pi);
        v.extend(crate::chain::space::difference(&lhs, &rhs));
        v
    })
    .expect("homogeneous comma system always has the zero solution");
    CommaHomSpace { source: f.clone(), target: g.clone(), sols }
}

/// Exhaustively enumerate `Hom(F, G)` when its size is at most `cap`.
pub fn enumerate_comma_homs(
    inst: &Instance,
    f: &CommaObject,
    g: &CommaObject,
    cap: u128,
) -> Option<Vec<CommaMorphism>> {
    let space = comma_hom_space(inst, f, g);
    let size = (inst.p() as u128).checked_pow(space.count_log_p() as u32)?;
    (size <= cap).then(|| space.enumerate(inst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comma::functors::iota;

    #[test]
    fn structure_duality_is_an_involution() {
        for s in StructureId::ALL {
            assert_eq!(s.dual().dual(), s);
            assert_eq!(StructureId::parse(s.as_str()).unwrap(), s);
        }
    }

    #[test]
    fn comma_square_is_enforced() {
        let inst = Instance::identity(2);
        let s1 = ChainComplex::sphere(2, 1);
        let d1 = ChainComplex::disk(2, 1);
        let f = iota(&inst, &d1);
        let g = iota(&inst, &s1);
        // σ⁰ = q, σ¹ = 0 does not commute with the identity structure maps.
        let mut comps = std::collections::BTreeMap::new();
        comps.insert(1, crate::linalg::Matrix::identity(2, 1));
        let q = ChainMap::new(d1.clone(), s1.clone(), comps).unwrap();
        let bad = CommaMorphism::new(
            &inst,
            f.clone(),
            g.clone(),
            q.clone(),
            ChainMap::zero(&d1, &s1),
        );
        assert!(matches!(bad, Err(Error::NotACommaMorphism)));
        let good = CommaMorphism::new(&inst, f, g, q.clone(), q).unwrap();
        assert!(good.transposed_square_commutes(&inst));
    }

    #[test]
    fn hom_set_of_arrow_category_endomorphisms() {
        // End(ι(S0)) in the arrow category over F_2 has 2 elements.
        let inst = Instance::identity(2);
        let s0 = iota(&inst, &ChainComplex::sphere(2, 0));
        let all = enumerate_comma_homs(&inst, &s0, &s0, 1 << 16).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn adjoint_square_equivalence_on_samples() {
        // For every enumerated morphism, the transposed square commutes too.
        let inst = Instance::hom_tensor(ChainComplex::disk(2, 1));
        let s0 = ChainComplex::sphere(2, 0);
        let f = iota(&inst, &s0);
        let g = iota(&inst, &ChainComplex::disk(2, 1));
        for sigma in enumerate_comma_homs(&inst, &f, &g, 1 << 12).unwrap() {
            assert!(sigma.square_commutes(&inst));
            assert!(sigma.transposed_square_commutes(&inst));
        }
    }
}
