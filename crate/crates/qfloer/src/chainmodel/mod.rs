//! Finite-dimensional chain-level models of the open/closed TQFT structure
//! underlying equivariant Floer theory: explicit tensors for the products,
//! open-closed maps and homotopies, checkers for every identity they satisfy,
//! the corrected endomorphism and its cohomology-level eigendata, and the
//! algebraic mapping cone computing the effect of a Dehn twist.
//!
//! Tensors are user-supplied, never derived from geometry: this module is a
//! verifier/calculator. All identities are checked on basis tuples, which is
//! sufficient by multilinearity, and a pass means the residual is identically
//! zero over the rationals.

mod checks;
mod cohomology;
mod cone;
mod fixture;
mod model;
mod multiop;
mod space;

pub use checks::{
    check_differentials, check_dilation, check_equivariance, check_hvee, check_kvee,
    check_mu3_homotopy, check_phi1_homotopy, check_phi2_homotopy, Report, Witness,
};
pub use cohomology::{build_tilde_phi1, check_derivation, cohomology, CohomologyData};
pub use cone::{
    build_cone, build_tilde_phi1t, check_cone_mu2_leibniz, cone_mu2_left, cone_mu2_right,
    ConeComplex, ConeSide,
};
pub use fixture::sphere_model;
pub use model::{
    ChainModel, ChainModelBuilder, Lagrangian, ModelError, ModelLoadError, PairComplex,
};
pub use multiop::{to_seidel_convention, MultiOp};
pub use space::GradedSpace;
