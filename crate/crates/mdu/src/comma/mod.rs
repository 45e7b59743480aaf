//! The comma category `M↓U` of a Quillen adjunction instance: objects,
//! morphisms, canonical functors and their adjunctions, level-wise
//! (co)limits, classification in all eight model structures, fibrancy and
//! Quillen–Segal checks, the isofibration witness, and `E(H,K)` with its
//! left adjoint.

pub mod classify;
pub mod ehk;
pub mod functors;
pub mod instance;
pub mod limits;
pub mod object;

pub use classify::{
    classify_comma, classify_comma_formula, corner_flags, is_comma_mono_via_generators,
    is_fibrant, is_levelwise_mono, is_quillen_segal, iso_lift, pullback_corner,
    pullback_corner_formula, pushout_corner, pushout_corner_formula, CornerFlags,
};
pub use ehk::{
    ehk_left_map, ehk_left_obj, ehk_left_pi_via_phi, ehk_map, ehk_obj,
    verify_ehk_adjunction_at, AdjunctionSquare,
};
pub use functors::{
    comma_hom_count_log, fplus, fplus_map, iota, iota_injective_on_objects, iota_map, l1,
    l1_map, pi0, pi1, pi_arr, r0, r0_map, verify_adjunction_at,
    verify_factorization_identities, verify_pi1_iota_naturality, ArrowSquare,
    CanonicalAdjunction, HOM_ENUM_CAP,
};
pub use instance::{verify_instance, verify_instance_on_maps, Instance};
pub use limits::{
    comma_colimit, comma_limit, comma_mediate_into, comma_mediate_out, CommaCocone,
    CommaColimitData, CommaCone, CommaLimitData,
};
pub use object::{
    comma_hom_space, enumerate_comma_homs, CommaHomSpace, CommaMorphism, CommaObject,
    StructureId,
};
