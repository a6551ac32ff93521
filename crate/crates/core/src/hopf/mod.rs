//! Finite-dimensional Hopf *-algebra engine: dual cocycles, twisting, smash
//! products, cotensor products, and the literal deformation of finite
//! equivariant spectral triples.
//!
//! Everything is exact over `Q(ζ₁₂)`. Sweedler sums are contractions against
//! the sparse coproduct tensor.

mod algebra;
mod cocycle;
mod comodule;
pub mod io;
mod supergroup;
mod triple;

pub use algebra::{basis_vec, canonical, canonical2, eval, group_algebra, to_dense, to_sparse, FiniteGroup, FiniteHopfAlgebra, StarAlgebra};
pub use cocycle::{
    bicharacter_table, check_dual_cocycle, check_uv, convolution_inverse, convolve2, group_like_irreps, omega_from_sigma,
    sigma_from_omega, twist_hopf, uv_functionals, BlockUnitary, DualCocycle, Irrep, UvFunctionals,
};
pub use comodule::{
    check_bhalg, check_coaction, check_comodule_algebra, BiComoduleAlgebra, Subspace, cotensor, intertwiner_kernel, is_positive_definite, smash_left, smash_right, spectral_subspaces,
    twist_comodule_algebra, twist_comodule_algebra_with, ComoduleAlgebra, Cotensor, GaloisObject, Side, SpectralSubspace,
    StarConvention,
};
pub use supergroup::{check_subobject, cotensor_chain_supergroup, restrict_hopf, HopfQuotient};
pub use triple::{
    box_tensor_hilbert, check_pi_sigma, check_round_trip, deform_triple_finite, gns, pi_sigma, reconstruct_hopf, toy_triple, verify_cocycle_equivalence,
    BoxTensor, DeformedTriple, FiniteEquivariantTriple, Gns,
};

use crate::scalar::Cyclo;
use thiserror::Error;

/// Exact scalars used throughout the engine.
pub type Scalar = Cyclo;
/// Sparse linear combination of basis elements.
pub type Terms = Vec<(usize, Scalar)>;
/// Sparse element of a tensor product of two spaces.
pub type Terms2 = Vec<(usize, usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("state is not faithful: {0}")]
    NotFaithful(String),
}

pub(crate) fn add_to(slot: &mut Scalar, v: Scalar) {
    *slot = std::mem::take(slot) + v;
}

pub(crate) fn first_failure(report: &crate::report::Report, what: &str) -> Result<(), HopfError> {
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(HopfError::Verification(format!("{what}: {} {}", c.name, c.detail.clone().unwrap_or_default()))),
    }
}
