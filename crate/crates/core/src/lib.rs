//! Thermal entanglement of two arbitrarily coupled qubits, maximized over
//! local fields.
//!
//! The pipeline is: canonicalize an arbitrary 3×3 coupling to a diagonal XYZ
//! form ([`spin`]), build Gibbs states ([`thermal`]), measure negativity and
//! concurrence ([`measures`]), and use the closed-form partial-transpose
//! spectrum for opposed z fields ([`closed_form`]) to locate the optimal field
//! and the boundary temperature between the zero-field and finite-field phases
//! ([`optimizer`]). High- and low-temperature asymptotes live in
//! [`asymptotics`].
//!
//! Units: energies are in the units of the coupling, and `k_B = 1`, so a
//! temperature `T` corresponds to `beta = 1 / T`.

pub mod asymptotics;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod nelder_mead;
pub mod optimizer;
pub mod roots;
pub mod spin;
pub mod thermal;
pub mod tolerances;

pub use error::{Error, Result};
