//! First-order wave theory of the photoelectric effect on hydrogen.
//!
//! The crate computes, in Hartree atomic units with SI-facing conversions:
//!
//! * the hydrogen ground state and the red-bound quantities ([`hydrogen`]),
//! * limiting amplitudes of the driven stationary problem by outgoing
//!   Helmholtz / Yukawa kernel convolution ([`helmholtz`]),
//! * the closed-form far-field pattern and numeric amplitude extraction
//!   ([`farfield`]),
//! * photocurrent densities, angular laws and total flux ([`photocurrent`]),
//! * the photoeffect threshold rules, stopping voltage, and the eigenvalue
//!   verification of the stopping-potential level shift ([`einstein`]),
//! * a 1D time-domain verification that a harmonically driven field with
//!   zero initial data converges to the stationary outgoing profile
//!   ([`lap_timedomain`]).

pub mod einstein;
pub mod farfield;
pub mod helmholtz;
pub mod hydrogen;
pub mod lap_timedomain;
pub mod numerics;
pub mod photocurrent;
pub mod units;

pub use hydrogen::HydrogenGroundState;
pub use units::PhysicalConstants;
