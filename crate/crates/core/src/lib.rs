//! Group-graded algebras, graded modules and graded Morita contexts over
//! exact fields.

pub mod algebra;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod group;
pub mod module;
pub mod morita;
pub mod over_c;
pub mod report;

pub use error::{Error, Result};
pub use exact::{Field, Matrix, Scalar};
pub use group::{stabilizer_closure, FiniteGroup, GroupElt, Subgroup};
pub use report::{Check, Status, ValidationReport};
pub use algebra::{
    center_of, centralizer, check_graded_algebra, find_crossed_product, identity_component, miyashita_action,
    AlgebraHom, CrossedProductData, GActedAlgebra, GradedAlgebra, SubalgebraEmbedding,
};
pub use module::{
    apply_functor, check_bimodule, check_module, direct_sum, dual_module, end_op_algebra, hom_graded, induce,
    is_graded_iso, stabilizer, suspend, tensor_over, Dual, EndOp, GradedBimodule, GradedModule, HomSpace, Side,
    TensorProduct,
};
pub use over_c::{
    algebra_over_c_on, c_action, canonical_theta, canonical_theta_on, check_algebra_over_c, check_bimodule_over_c,
    check_g_acted_algebra, condition_three, condition_three_prime, extend_from_identity_component,
    make_algebra_over_c_on_endos, AlgebraOverC, BimoduleOverC,
};
pub use morita::{
    build_canonical_context, build_graded_context, check_context, check_same_stabilizer, check_uniqueness,
    default_samples, is_progenerator, is_surjective_context, pairing_maps, progenerator_report, verify_morita_one,
    verify_morita_two, witnesses_from_context, Direction, FunctorData, MoritaContext, MoritaWitnesses, Sample,
};
