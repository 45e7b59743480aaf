//! The decidable model-category backend: finitely supported chain complexes
//! of finite-dimensional F_p vector spaces, with weak equivalences the
//! quasi-isomorphisms, fibrations the degreewise surjections, and
//! cofibrations the degreewise injections.

pub mod backend;
pub mod complex;
pub mod factor;
pub mod limits;
pub mod space;
pub mod tensor;

pub use backend::{BCocone, BCone, Backend};
pub use complex::{
    classify_map, degrees_of, homology, induced_homology_map, is_quasi_iso, ChainComplex,
    ChainMap, ClassFlags, Homology,
};
pub use factor::{factorize_chain, solve_lift_chain, FactorKind};
pub use limits::{
    coequalizer, coproduct, equalizer, initial, mediate_into, mediate_out, product, pullback,
    pushout, terminal, Cocone, ColimitShape, Cone, LimitShape,
};
pub use space::{
    chain_defect, chain_map_basis, difference, enumerate_chain_maps, solve_affine,
    AffineSolutions, HomSpace, MapVars,
};
pub use tensor::{
    associator, bar, braiding, ev_map, hom_complex, hom_post, hom_pre, pushout_product_chain,
    tensor_complex, tensor_map, unbar_into, unit_complex, unitor_left, unitor_right,
};

use crate::Result;

/// Dispatch for the named finite-limit operation of the backend contract.
pub fn finite_limit(shape: LimitShape, p: u64, data: &[&ChainMap]) -> Result<Cone> {
    match shape {
        LimitShape::Terminal => Ok(terminal(p)),
        LimitShape::Product => {
            let [f, g] = data else {
                return Err(crate::Error::Shape("product needs two objects via identities".into()));
            };
            Ok(product(f.source(), g.source()))
        }
        LimitShape::Pullback => {
            let [f, g] = data else {
                return Err(crate::Error::Shape("pullback needs a cospan".into()));
            };
            pullback(f, g)
        }
        LimitShape::Equalizer => {
            let [f, g] = data else {
                return Err(crate::Error::Shape("equalizer needs a parallel pair".into()));
            };
            equalizer(f, g)
        }
    }
}

/// Dispatch for the named finite-colimit operation of the backend contract.
pub fn finite_colimit(shape: ColimitShape, p: u64, data: &[&ChainMap]) -> Result<Cocone> {
    match shape {
        ColimitShape::Initial => Ok(initial(p)),
        ColimitShape::Coproduct => {
            let [f, g] = data else {
                return Err(crate::Error::Shape(
                    "coproduct needs two objects via identities".into(),
                ));
            };
            Ok(coproduct(f.source(), g.source()))
        }
        ColimitShape::Pushout => {
            let [f, g] = data else {
                return Err(crate::Error::Shape("pushout needs a span".into()));
            };
            pushout(f, g)
        }
        ColimitShape::Coequalizer => {
            let [f, g] = data else {
                return Err(crate::Error::Shape("coequalizer needs a parallel pair".into()));
            };
            coequalizer(f, g)
        }
    }
}
