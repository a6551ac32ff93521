//! Monoidal deformation of equivariant spectral triples at finite and
//! truncated scale.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod hopf;
pub mod linalg;
pub mod scalar;
pub mod report;
pub mod repcat;
pub mod surd;
pub mod suq2;
pub mod triple;
