//! O(SU_q(2)) at a fixed rational `q`: PBW normal form, Haar state,
//! Peter–Weyl matrix coefficients, and the Podleś sphere with its truncated
//! equivariant spectral triple.

mod haar;
mod pbw;
mod peter_weyl;
mod podles;

pub use haar::{check_haar_full, haar, monomials_up_to, HaarState};
pub use pbw::{Generator, Monomial, Pbw, PbwTensor, SuQ2};
pub use peter_weyl::{HalfInt, PeterWeylBasis, PwEntry, PwIndex};
pub use podles::{
    build_truncated, check_spherical_multiplet, check_stabilization, default_params, podles_generators, truncated_podles_triple, Chirality,
    DiracConstants, GeneratorForm, IsotypicBlock, PodlesData, PodlesParams, PodlesRelations, SpinorLabel, TruncatedPodles, FLOAT_TOL,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Suq2Error {
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("degree {needed} exceeds the available bound {available}")]
    DegreeBound { needed: u32, available: u32 },
    #[error("not positive: {0}")]
    NotPositive(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
