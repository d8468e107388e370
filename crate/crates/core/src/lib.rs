//! Strapdown attitude integrators and a classical-coning benchmark harness.
//!
//! Three integrator families solve the attitude kinematics over one update
//! interval from an angular-velocity polynomial fitted to gyro samples:
//!
//! * Taylor-series expansion with recursively computed derivatives
//!   ([`taylor`]): quaternion, Rodrigues vector, rotation vector (exact,
//!   two-term, simplified two-term);
//! * Picard iteration over the monomial basis ([`picard_np`]);
//! * Picard iteration over the Chebyshev basis ([`picard_cheb`]).
//!
//! The closed-form 2- and 3-sample rotation-vector algorithms live in
//! [`baselines`]. [`coning`] supplies the analytic truth model and drift
//! accumulation, and [`sweep`] drives parameter sweeps to CSV.

pub mod algorithm;
pub mod attitude;
pub mod baselines;
pub mod coning;
pub mod error;
pub mod fit;
pub mod picard_cheb;
pub mod picard_np;
pub mod poly;
pub mod stop;
pub mod sweep;
pub mod taylor;

pub use algorithm::Algorithm;
pub use attitude::{attitude_error, quat_from_rodrigues, quat_from_rotvec, quat_mul, Quaternion, Vec3};
pub use error::{Error, Result};
pub use stop::StopRule;
