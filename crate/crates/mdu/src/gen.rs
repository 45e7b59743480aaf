//! Seeded deterministic generation of complexes, maps, comma objects and
//! morphisms, in-class members, retract diagrams, and composable pairs.
//!
//! The PRNG is splitmix64 — a fixed 64-bit integer recurrence (state
//! advances by the golden-ratio constant, two xor-multiply mixes) with no
//! floating point, so identical seeds produce bit-identical streams on every
//! platform. Maps are generated by solving their linear constraint spaces
//! and sampling coordinates, never by rejection on validity.

use std::collections::BTreeMap;

use crate::chain::complex::{ChainComplex, ChainMap};
use crate::chain::space::chain_map_basis;
use crate::chain::FactorKind;
use crate::comma::instance::Instance;
use crate::comma::object::{comma_hom_space, CommaMorphism, CommaObject, StructureId};
use crate::factor::factorize_comma;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// splitmix64.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough residue below `n` (n is tiny here).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn fp(&mut self, p: u64) -> u64 {
        self.below(p)
    }
}

/// Bounds for generation; the defaults match the desk-scale contract
/// (dims ≤ 3, window ≤ 4, p ∈ {2, 3}).
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub p: u64,
    pub max_dim: usize,
    pub max_window: usize,
    pub lo_min: i64,
    pub lo_max: i64,
}

impl GenConfig {
    pub fn new(p: u64) -> GenConfig {
        GenConfig { p, max_dim: 3, max_window: 4, lo_min: -1, lo_max: 1 }
    }
}

/// A random complex: bounded window, bounded dims, differential sampled from
/// the solution space of `d ∘ d = 0` degree by degree.
pub fn random_complex(rng: &mut Rng, cfg: &GenConfig) -> ChainComplex {
    let p = cfg.p;
    let len = 1 + rng.below(cfg.max_window as u64) as usize;
    let lo = cfg.lo_min + rng.below((cfg.lo_max - cfg.lo_min + 1) as u64) as i64;
    let dims: Vec<usize> =
        (0..len).map(|_| rng.below(cfg.max_dim as u64 + 1) as usize).collect();
    let hi = lo + len as i64 - 1;
    let dim = |n: i64| -> usize {
        if n < lo || n > hi {
            0
        } else {
            dims[(n - lo) as usize]
        }
    };
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    // From the top down: d_n must satisfy d_n ∘ d_{n+1} = 0.
    for n in (lo + 1..=hi).rev() {
        let (rows, cols) = (dim(n - 1), dim(n));
        if rows * cols == 0 {
            continue;
        }
        let d = match diffs.get(&(n + 1)) {
            None => {
                let entries = (0..rows * cols).map(|_| rng.fp(p)).collect();
                Matrix::from_vec(p, rows, cols, entries)
            }
            Some(next) => {
                // vec_r(D · next) = kron(I_rows, nextᵀ) · vec_r(D); sample
                // from the kernel.
                let op = Matrix::identity(p, rows)
                    .kron(&next.transpose())
                    .expect("same prime");
                let k = op.kernel_basis();
                let mut v = vec![0u64; rows * cols];
                for j in 0..k.cols() {
                    let c = rng.fp(p);
                    if c != 0 {
                        for i in 0..rows * cols {
                            v[i] = (v[i] + c * k.get(i, j)) % p;
                        }
                    }
                }
                Matrix::from_vec(p, rows, cols, v)
            }
        };
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    ChainComplex::new(p, lo, dims, diffs).expect("sampled differential squares to zero")
}

/// A random chain map: a random combination of a basis of the chain-map
/// space.
pub fn random_chain_map(rng: &mut Rng, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let basis = chain_map_basis(x, y);
    let mut f = ChainMap::zero(x, y);
    for b in &basis {
        let c = rng.fp(x.p());
        if c != 0 {
            f = f.add(&scale_map(b, c));
        }
    }
    f
}

fn scale_map(f: &ChainMap, c: u64) -> ChainMap {
    let comps = f
        .components()
        .iter()
        .map(|(&n, m)| (n, m.scale(c)))
        .collect();
    ChainMap::graded(f.source().clone(), f.target().clone(), comps).expect("shapes unchanged")
}

/// A random comma object over the instance.
pub fn random_comma_object(rng: &mut Rng, inst: &Instance, cfg: &GenConfig) -> CommaObject {
    let f0 = random_complex(rng, cfg);
    let f1 = random_complex(rng, cfg);
    let pi = random_chain_map(rng, &f0, &inst.u_obj(&f1));
    CommaObject { f0, f1, pi }
}

/// A random comma morphism between the given endpoints (the zero morphism
/// when the hom-set is trivial).
pub fn random_comma_morphism_between(
    rng: &mut Rng,
    inst: &Instance,
    f: &CommaObject,
    g: &CommaObject,
) -> CommaMorphism {
    let space = comma_hom_space(inst, f, g);
    let coeffs: Vec<u64> = (0..space.count_log_p()).map(|_| rng.fp(inst.p())).collect();
    space.morphism(&coeffs, inst)
}

/// A random comma morphism with random endpoints.
pub fn random_comma_morphism(
    rng: &mut Rng,
    inst: &Instance,
    cfg: &GenConfig,
) -> CommaMorphism {
    let f = random_comma_object(rng, inst, cfg);
    let g = random_comma_object(rng, inst, cfg);
    random_comma_morphism_between(rng, inst, &f, &g)
}

/// Which class to generate a member of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRequest {
    Cof,
    TrivCof,
    Fib,
    TrivFib,
    We,
}

impl ClassRequest {
    pub fn parse(s: &str) -> Result<ClassRequest> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cof" => ClassRequest::Cof,
            "tcof" | "trivcof" => ClassRequest::TrivCof,
            "fib" => ClassRequest::Fib,
            "tfib" | "trivfib" => ClassRequest::TrivFib,
            "we" => ClassRequest::We,
            other => return Err(Error::Input(format!("unknown class: {other}"))),
        })
    }
}

/// Produce a member of a requested class by construction: cofibrations and
/// trivial cofibrations are left factorization pieces, fibrations and
/// trivial fibrations right pieces, weak equivalences the trivial-cofibration
/// piece. The result is re-verified by the classifier; an unsatisfiable
/// request errors out rather than looping.
pub fn in_class(
    rng: &mut Rng,
    inst: &Instance,
    cfg: &GenConfig,
    s: StructureId,
    class: ClassRequest,
) -> Result<CommaMorphism> {
    let sigma = random_comma_morphism(rng, inst, cfg);
    let (kind, left) = match class {
        ClassRequest::Cof => (FactorKind::CofThenTrivFib, true),
        ClassRequest::TrivCof | ClassRequest::We => (FactorKind::TrivCofThenFib, true),
        ClassRequest::Fib => (FactorKind::TrivCofThenFib, false),
        ClassRequest::TrivFib => (FactorKind::CofThenTrivFib, false),
    };
    let (l, r) = factorize_comma(inst, &sigma, s, kind)?;
    let out = if left { l } else { r };
    let flags = crate::comma::classify::classify_comma(inst, &out, s);
    let ok = match class {
        ClassRequest::Cof => flags.is_cof,
        ClassRequest::TrivCof => flags.is_cof && flags.is_we,
        ClassRequest::Fib => flags.is_fib,
        ClassRequest::TrivFib => flags.is_fib && flags.is_we,
        ClassRequest::We => flags.is_we,
    };
    if !ok {
        return Err(Error::Generation(format!(
            "factorization piece failed re-verification for {class:?} in {s:?}"
        )));
    }
    Ok(out)
}

/// A random chain-level isomorphism of `x`: a bounded search over random
/// chain endomorphisms shifted by scalars, falling back to a nonzero scalar
/// multiple of the identity.
pub fn random_iso(rng: &mut Rng, x: &ChainComplex) -> ChainMap {
    let p = x.p();
    for _ in 0..20 {
        let e = random_chain_map(rng, x, x);
        for lambda in 1..p {
            let cand = e.add(&scale_map(&ChainMap::identity(x), lambda));
            if cand.is_isomorphism() {
                return cand;
            }
        }
    }
    scale_map(&ChainMap::identity(x), 1 + rng.below(p - 1))
}

/// A retract diagram around `f`: returns `(g, a0, b0, a1, b1)` with
/// `b0 ∘ a0 = id`, `b1 ∘ a1 = id`, `g ∘ a0 = a1 ∘ f` and `f ∘ b0 = b1 ∘ g`,
/// exhibiting `f` as a retract of `g = f ⊕ f'`.
pub fn retract_diagram(
    rng: &mut Rng,
    cfg: &GenConfig,
    f: &ChainMap,
) -> (ChainMap, ChainMap, ChainMap, ChainMap, ChainMap) {
    let extra_src = random_complex(rng, cfg);
    let extra_tgt = random_complex(rng, cfg);
    let fprime = random_chain_map(rng, &extra_src, &extra_tgt);
    let g = f.direct_sum(&fprime);
    let (a0, b0) = inclusion_projection(f.source(), &extra_src);
    let (a1, b1) = inclusion_projection(f.target(), &extra_tgt);
    (g, a0, b0, a1, b1)
}

fn inclusion_projection(x: &ChainComplex, extra: &ChainComplex) -> (ChainMap, ChainMap) {
    let p = x.p();
    let sum = x.direct_sum(extra);
    let mut inc = BTreeMap::new();
    let mut prj = BTreeMap::new();
    for n in sum.support() {
        let (dx, de) = (x.dim(n), extra.dim(n));
        let i = Matrix::identity(p, dx).vstack(&Matrix::zeros(p, de, dx));
        let q = Matrix::identity(p, dx).hstack(&Matrix::zeros(p, dx, de));
        if !i.is_zero() {
            inc.insert(n, i);
        }
        if !q.is_zero() {
            prj.insert(n, q);
        }
    }
    (
        ChainMap::new(x.clone(), sum.clone(), inc).expect("inclusion is a chain map"),
        ChainMap::new(sum, x.clone(), prj).expect("projection is a chain map"),
    )
}

/// A random composable pair `(f : X -> Y, g : Y -> Z)`.
pub fn composable_pair(rng: &mut Rng, cfg: &GenConfig) -> (ChainMap, ChainMap) {
    let x = random_complex(rng, cfg);
    let y = random_complex(rng, cfg);
    let z = random_complex(rng, cfg);
    (random_chain_map(rng, &x, &y), random_chain_map(rng, &y, &z))
}

/// A random composable pair of comma morphisms.
pub fn comma_composable_pair(
    rng: &mut Rng,
    inst: &Instance,
    cfg: &GenConfig,
) -> (CommaMorphism, CommaMorphism) {
    let f = random_comma_object(rng, inst, cfg);
    let g = random_comma_object(rng, inst, cfg);
    let h = random_comma_object(rng, inst, cfg);
    (
        random_comma_morphism_between(rng, inst, &f, &g),
        random_comma_morphism_between(rng, inst, &g, &h),
    )
}

/// Exhibit a comma morphism as a retract of `σ ⊕ σ'` through the biproduct.
pub fn comma_retract_diagram(
    rng: &mut Rng,
    inst: &Instance,
    cfg: &GenConfig,
    sigma: &CommaMorphism,
) -> Result<(CommaMorphism, CommaMorphism, CommaMorphism, CommaMorphism, CommaMorphism)> {
    let extra = random_comma_morphism(rng, inst, cfg);
    let src_sum = biproduct(inst, &sigma.source, &extra.source)?;
    let tgt_sum = biproduct(inst, &sigma.target, &extra.target)?;
    let g = CommaMorphism::new(
        inst,
        src_sum.clone(),
        tgt_sum.clone(),
        sigma.s0.direct_sum(&extra.s0),
        sigma.s1.direct_sum(&extra.s1),
    )?;
    let (a0, b0) = comma_inclusion_projection(inst, &sigma.source, &extra.source, &src_sum)?;
    let (a1, b1) = comma_inclusion_projection(inst, &sigma.target, &extra.target, &tgt_sum)?;
    Ok((g, a0, b0, a1, b1))
}

fn biproduct(inst: &Instance, f: &CommaObject, g: &CommaObject) -> Result<CommaObject> {
    let f0 = f.f0.direct_sum(&g.f0);
    let f1 = f.f1.direct_sum(&g.f1);
    // π on the sum: direct sum of the structure maps followed by the
    // canonical identification U(F¹)⊕U(G¹) ≅ U(F¹⊕G¹).
    let m = inst.m();
    let u_sum = inst.u_obj(&f1);
    let usum_cone = m.product(&inst.u_obj(&f.f1), &inst.u_obj(&g.f1));
    let a = inst.a();
    let a_cone = a.product(&f.f1, &g.f1);
    // A-product of chain complexes is the direct sum with those projections;
    // mediate U of them into the M-product and invert.
    let u_legs: Vec<ChainMap> = a_cone.legs.iter().map(|l| inst.u_map(l)).collect();
    let nu = m.mediate_into(&usum_cone, &u_sum, &u_legs)?;
    let nu_inv = m.invert(&nu)?;
    let pi = m.compose(&nu_inv, &f.pi.direct_sum(&g.pi));
    CommaObject::new(inst, f0, f1, pi)
}

fn comma_inclusion_projection(
    inst: &Instance,
    x: &CommaObject,
    extra: &CommaObject,
    sum: &CommaObject,
) -> Result<(CommaMorphism, CommaMorphism)> {
    let (i0, p0) = inclusion_projection(&x.f0, &extra.f0);
    let (i1, p1) = inclusion_projection(&x.f1, &extra.f1);
    Ok((
        CommaMorphism::new(inst, x.clone(), sum.clone(), i0, i1)?,
        CommaMorphism::new(inst, sum.clone(), x.clone(), p0, p1)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_complexes_are_valid_and_replayable() {
        let cfg = GenConfig::new(3);
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..50 {
            let x = random_complex(&mut a, &cfg);
            let y = random_complex(&mut b, &cfg);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn random_maps_are_chain_maps() {
        let cfg = GenConfig::new(2);
        let mut rng = Rng::new(1);
        for _ in 0..30 {
            let x = random_complex(&mut rng, &cfg);
            let y = random_complex(&mut rng, &cfg);
            assert!(random_chain_map(&mut rng, &x, &y).is_chain_map());
        }
    }

    #[test]
    fn random_comma_morphisms_are_valid() {
        for inst in [Instance::identity(2), Instance::hom_tensor(ChainComplex::disk(3, 1))] {
            let cfg = GenConfig::new(inst.p());
            let mut rng = Rng::new(9);
            for _ in 0..10 {
                let sigma = random_comma_morphism(&mut rng, &inst, &cfg);
                assert!(sigma.is_valid(&inst));
            }
        }
    }

    #[test]
    fn in_class_members_verify() {
        let inst = Instance::identity(2);
        let cfg = GenConfig::new(2);
        let mut rng = Rng::new(5);
        for class in [
            ClassRequest::Cof,
            ClassRequest::TrivCof,
            ClassRequest::Fib,
            ClassRequest::TrivFib,
        ] {
            let sigma = in_class(&mut rng, &inst, &cfg, StructureId::LInj, class).unwrap();
            assert!(sigma.is_valid(&inst));
        }
    }

    #[test]
    fn random_isos_are_isos() {
        let cfg = GenConfig::new(3);
        let mut rng = Rng::new(11);
        for _ in 0..20 {
            let x = random_complex(&mut rng, &cfg);
            assert!(random_iso(&mut rng, &x).is_isomorphism());
        }
    }

    #[test]
    fn retract_diagrams_commute() {
        let cfg = GenConfig::new(2);
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            let x = random_complex(&mut rng, &cfg);
            let y = random_complex(&mut rng, &cfg);
            let f = random_chain_map(&mut rng, &x, &y);
            let (g, a0, b0, a1, b1) = retract_diagram(&mut rng, &cfg, &f);
            assert_eq!(b0.compose(&a0), ChainMap::identity(&x));
            assert_eq!(b1.compose(&a1), ChainMap::identity(&y));
            assert_eq!(g.compose(&a0), a1.compose(&f));
            assert_eq!(f.compose(&b0), b1.compose(&g));
        }
    }

    #[test]
    fn comma_retracts_commute() {
        let inst = Instance::identity(2);
        let cfg = GenConfig::new(2);
        let mut rng = Rng::new(13);
        for _ in 0..5 {
            let sigma = random_comma_morphism(&mut rng, &inst, &cfg);
            let (g, a0, b0, a1, b1) =
                comma_retract_diagram(&mut rng, &inst, &cfg, &sigma).unwrap();
            assert!(b0.compose(&inst, &a0).is_identity());
            assert!(b1.compose(&inst, &a1).is_identity());
            assert_eq!(g.compose(&inst, &a0), a1.compose(&inst, &sigma));
            assert_eq!(sigma.compose(&inst, &b0), b1.compose(&inst, &g));
        }
    }
}
