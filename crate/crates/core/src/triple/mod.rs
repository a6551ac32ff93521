//! Spectral triples in isotypic form: axiom and equivariance checks, the
//! profile-level deformation engine, twisted volume, and the label
//! bookkeeping for quantum isometry groups.

mod checks;
mod profile;
mod qiso;
mod sources;
mod woronowicz;

pub use checks::{check_equivariance, check_spectral_triple, podles_operators, podles_sites, CoactingGenerator, Site, SpectralTripleCheck};
pub use profile::{
    check_deformation, deform_profile, literal_spectrum, partner_fundamental, reference_woronowicz, round_trip, spectrum_table, suq2_woronowicz,
    BlockLabel, IsotypicProfile, ProfileBlock, ProfileEquivalence, SpectralValue, SpectrumEntry, SpectrumTable, WoronowiczBlock, MERGE_TOL,
};
pub use qiso::{podles_qiso, qiso_deform, qiso_line, support_from_generators, QisoLabels};
pub use sources::{check_profile_volume, finite_profile, podles_profile, podles_profile_of, podles_twist_matrix};
pub use woronowicz::{check_twisted_volume_block, check_unitary, normalize_woronowicz, woronowicz_f, UnitaryCoefficients, WoronowiczSolve};

use crate::hopf::HopfError;
use crate::repcat::RepcatError;
use crate::suq2::Suq2Error;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TripleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("label {0} lies outside the domain of the equivalence")]
    LabelOutsideDomain(String),
    #[error("Woronowicz matrix: {0}")]
    Woronowicz(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Repcat(#[from] RepcatError),
    #[error(transparent)]
    Suq2(#[from] Suq2Error),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}
