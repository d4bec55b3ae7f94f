//! Spin-resolved scattering on a one-dimensional ring with Rashba
//! spin-orbit coupling and `n` semi-infinite leads.
//!
//! The pipeline is ring Green's function → block Green's matrix → scattering
//! matrix → conductance and polarization. For the reflection-symmetric
//! three-lead device [`observables::closed_form_t21_p21z`] gives `T21` and
//! `P21,z` in closed form, which serves as an independent cross-check of the
//! scattering-matrix route.

pub mod checks;
pub mod error;
pub mod linalg;
pub mod observables;
pub mod ring;
pub mod scattering;
pub mod spin;
pub mod sweep;
pub mod tjunction;
pub mod verify;

pub use error::{Error, Result};
pub use observables::{
    closed_form_t21_p21z, conductance, polarization, rotated_transmission_check, ClosedForm,
    Observables, SymmetricDevice,
};
pub use ring::{
    degenerate_alpha, eigenvalue, green_fn, momenta, resonances_in_range, Branch, Resonance,
    RingParams,
};
pub use scattering::{green_block_matrix, scattering_matrix, BlockMatrix, DeviceConfig, Lead};
pub use spin::{
    compose, decompose, exp_sigma_y, exp_sigma_z, pauli, Axis, Pauli, SpinComponents, SpinMatrix,
};
