//! Numerical kernels for eigenvalue plunge profiles of time-frequency
//! localization operators.
//!
//! The crate has two halves. `profiles` and `special` carry the closed-form
//! side: exact eigenvalue sequences for disks, annuli and unions of annuli,
//! their decreasing rearrangements, and the erfc plunge profile
//! `k ↦ ½·erfc(√(2π)(k − area)/boundary)` those sequences approach.
//! `dgt`, `eig`, `mask` and `netpbm` carry the discrete side: Gabor frame
//! multipliers for arbitrary binary symbols on an `(a, M)` lattice, a dense
//! Hermitian eigensolver with residual certificates, and the mask geometry
//! measurement (pixel area × a/M, chain-code perimeter × √(a/M)) that feeds
//! measured profiles.

pub mod dgt;
pub mod eig;
pub mod error;
pub mod mask;
pub mod matrix;
pub mod netpbm;
pub mod profiles;
pub mod special;

pub use dgt::{
    dgt, frame_multiplier, frame_operator, gabor_atom, tight_window, FrameMultiplier,
    LatticeParams, TfGrid, Window, WindowKind,
};
pub use eig::{
    eigenvectors_near, hermitian_eig, linf_profile_error, plunge_stats, PlungeStats, Spectrum,
    DEFAULT_EIG_TOL, MAX_EIG_DIM,
};
pub use error::{Error, Result};
pub use mask::{make_shape, measure, BinaryMask, ShapeKind, SymbolMeasure};
pub use matrix::ComplexMatrix;
pub use netpbm::{load_mask, save_mask, write_ppm};
pub use profiles::{
    decreasing_rearrangement, AnnulusSpec, DiskSpec, ErfcProfile, RadialSet, TwoErfcParams,
};
pub use special::{erfc, erfc_inv, ln_gamma, reg_lower_gamma};

pub use num_complex::Complex64;
