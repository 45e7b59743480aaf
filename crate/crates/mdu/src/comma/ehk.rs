//! The induced functor `E(H,K)` between comma categories and its left
//! adjoint.
//!
//! Given a commuting square of right adjoints `U' ∘ H = K ∘ U`, `E(H,K)` maps
//! `[F⁰, F¹, π] ↦ [K(F⁰), H(F¹), K(π)]` component-wise. Its left adjoint acts
//! by `[X] ↦ [K_* X⁰, H_* X¹, α_*([X])]` where `α = U'(η_{X¹}) ∘ π_X` and
//! `α_* = ε ∘ K_*(α)` — the explicit transpose formula, computed literally.

use crate::comma::instance::Instance;
use crate::comma::object::{enumerate_comma_homs, CommaMorphism, CommaObject};
use crate::{Error, Result};

/// A commuting square of adjunctions: `base` has `U : A -> M`, `prime` has
/// `U' : A' -> M'`, `h` is the right adjoint `H : A -> A'` (packaged as the
/// U-slot of an instance), `k` the right adjoint `K : M -> M'`.
#[derive(Debug, Clone)]
pub struct AdjunctionSquare {
    pub base: Instance,
    pub prime: Instance,
    pub h: Instance,
    pub k: Instance,
}

impl AdjunctionSquare {
    /// The identity square on one instance.
    pub fn identity(inst: &Instance) -> AdjunctionSquare {
        AdjunctionSquare {
            base: inst.clone(),
            prime: inst.clone(),
            h: Instance::identity(inst.p()),
            k: Instance::identity(inst.p()),
        }
    }

    /// Verify `U' ∘ H = K ∘ U` on sampled objects and morphisms of A.
    pub fn verify(
        &self,
        objects: &[crate::chain::ChainComplex],
        maps: &[crate::chain::ChainMap],
    ) -> Result<()> {
        for x in objects {
            let lhs = self.prime.u_obj(&self.h.u_obj(x));
            let rhs = self.k.u_obj(&self.base.u_obj(x));
            if lhs != rhs {
                return Err(Error::NonCommutingSquare);
            }
        }
        for f in maps {
            let lhs = self.prime.u_map(&self.h.u_map(f));
            let rhs = self.k.u_map(&self.base.u_map(f));
            if lhs != rhs {
                return Err(Error::NonCommutingSquare);
            }
        }
        Ok(())
    }
}

/// `E(H,K)` on objects: `[K(F⁰), H(F¹), K(π)]`.
pub fn ehk_obj(sq: &AdjunctionSquare, f: &CommaObject) -> CommaObject {
    CommaObject {
        f0: sq.k.u_obj(&f.f0),
        f1: sq.h.u_obj(&f.f1),
        pi: sq.k.u_map(&f.pi),
    }
}

/// `E(H,K)` on morphisms: `[K(σ⁰), H(σ¹)]`.
pub fn ehk_map(sq: &AdjunctionSquare, sigma: &CommaMorphism) -> CommaMorphism {
    CommaMorphism {
        source: ehk_obj(sq, &sigma.source),
        target: ehk_obj(sq, &sigma.target),
        s0: sq.k.u_map(&sigma.s0),
        s1: sq.h.u_map(&sigma.s1),
    }
}

/// The left adjoint on objects: `[K_* X⁰, H_* X¹, α_*]` with
/// `α = U'(η^H_{X¹}) ∘ π_X` and `α_* = ε^K ∘ K_*(α)`.
pub fn ehk_left_obj(sq: &AdjunctionSquare, x: &CommaObject) -> CommaObject {
    let mp = sq.prime.m();
    // α : X⁰ -> K(U(H_* X¹)), the composite through U'(η).
    let h_star_x1 = sq.h.f_obj(&x.f1);
    let eta = sq.h.eta(&x.f1);
    let u_eta = sq.prime.u_map(&eta);
    let alpha = mp.compose(&u_eta, &x.pi);
    // α_* = ε ∘ K_*(α) : K_*(X⁰) -> U(H_* X¹), the paper's explicit formula.
    let u_h_star = sq.base.u_obj(&h_star_x1);
    let m = sq.base.m();
    let alpha_star = m.compose(&sq.k.epsilon(&u_h_star), &sq.k.f_map(&alpha));
    CommaObject { f0: sq.k.f_obj(&x.f0), f1: h_star_x1, pi: alpha_star }
}

/// The left adjoint on morphisms: `[K_*(θ⁰), H_*(θ¹)]`.
pub fn ehk_left_map(sq: &AdjunctionSquare, theta: &CommaMorphism) -> CommaMorphism {
    CommaMorphism {
        source: ehk_left_obj(sq, &theta.source),
        target: ehk_left_obj(sq, &theta.target),
        s0: sq.k.f_map(&theta.s0),
        s1: sq.h.f_map(&theta.s1),
    }
}

/// The structure map of `ehk_left_obj` computed through the packaged φ of K
/// instead of the explicit `ε ∘ K_*(-)` formula; the two must agree.
pub fn ehk_left_pi_via_phi(sq: &AdjunctionSquare, x: &CommaObject) -> crate::chain::ChainMap {
    let mp = sq.prime.m();
    let h_star_x1 = sq.h.f_obj(&x.f1);
    let u_eta = sq.prime.u_map(&sq.h.eta(&x.f1));
    let alpha = mp.compose(&u_eta, &x.pi);
    sq.k.phi_inv(&alpha, &sq.base.u_obj(&h_star_x1))
}

/// Verify `E(H,K)_* ⊣ E(H,K)` by exhaustive hom-set enumeration at a sample
/// pair, with the transpose bijection `[σ⁰, σ¹] ↦ [φ_K(σ⁰), φ_H(σ¹)]`.
pub fn verify_ehk_adjunction_at(
    sq: &AdjunctionSquare,
    x: &CommaObject,
    f: &CommaObject,
    cap: u128,
) -> Result<()> {
    let lx = ehk_left_obj(sq, x);
    let ef = ehk_obj(sq, f);
    let lhs = enumerate_comma_homs(&sq.base, &lx, f, cap)
        .ok_or_else(|| Error::Input("hom-set exceeds cap".into()))?;
    let rhs = enumerate_comma_homs(&sq.prime, x, &ef, cap)
        .ok_or_else(|| Error::Input("hom-set exceeds cap".into()))?;
    if lhs.len() != rhs.len() {
        return Err(Error::Unsupported(format!(
            "E(H,K) hom-set sizes differ: {} vs {}",
            lhs.len(),
            rhs.len()
        )));
    }
    // Transpose each σ : E_*(X) -> F and verify it lands in Hom(X, E(F)),
    // and that the assignment is injective.
    let mut seen = Vec::new();
    for sigma in &lhs {
        let t0 = sq.k.phi(&sigma.s0, &x.f0);
        let t1 = sq.h.phi(&sigma.s1, &x.f1);
        let t = CommaMorphism::new(&sq.prime, x.clone(), ef.clone(), t0, t1)?;
        if seen.contains(&t) {
            return Err(Error::Unsupported("E(H,K) transpose not injective".into()));
        }
        seen.push(t);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainComplex, ChainMap};
    use crate::comma::functors::iota;

    #[test]
    fn identity_square_is_the_identity() {
        let inst = Instance::identity(2);
        let sq = AdjunctionSquare::identity(&inst);
        let f = iota(&inst, &ChainComplex::disk(2, 1));
        assert_eq!(ehk_obj(&sq, &f), f);
        assert_eq!(ehk_left_obj(&sq, &f), f);
        let id = CommaMorphism::identity(&f);
        assert_eq!(ehk_map(&sq, &id), id);
    }

    fn hom_square(p: u64) -> AdjunctionSquare {
        // H = K = Hom(D1,-) as endofunctor square over the identity instance.
        let inst = Instance::identity(p);
        let homp = Instance::hom_tensor(ChainComplex::disk(p, 1));
        AdjunctionSquare { base: inst.clone(), prime: inst, h: homp.clone(), k: homp }
    }

    #[test]
    fn hom_square_commutes_and_preserves_commas() {
        let sq = hom_square(2);
        let objs = [ChainComplex::sphere(2, 0), ChainComplex::disk(2, 1)];
        let maps = [ChainMap::identity(&objs[0]), ChainMap::zero(&objs[0], &objs[1])];
        sq.verify(&objs, &maps).unwrap();
        let f = iota(&sq.base, &ChainComplex::sphere(2, 0));
        let ef = ehk_obj(&sq, &f);
        assert!(ef.is_valid(&sq.prime));
        let id = CommaMorphism::identity(&f);
        assert!(ehk_map(&sq, &id).is_valid(&sq.prime));
    }

    #[test]
    fn explicit_alpha_star_agrees_with_phi() {
        let sq = hom_square(3);
        let x = iota(&sq.prime, &ChainComplex::sphere(3, 0));
        let lx = ehk_left_obj(&sq, &x);
        assert!(lx.is_valid(&sq.base));
        assert_eq!(lx.pi, ehk_left_pi_via_phi(&sq, &x));
    }

    #[test]
    fn ehk_adjunction_on_small_pair() {
        let sq = hom_square(2);
        let x = iota(&sq.prime, &ChainComplex::sphere(2, 0));
        let f = iota(&sq.base, &ChainComplex::sphere(2, 0));
        verify_ehk_adjunction_at(&sq, &x, &f, 1 << 16).unwrap();
    }
}
