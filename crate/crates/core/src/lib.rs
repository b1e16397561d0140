//! Spectral distributions of synchrotron-radiation polarization components
//! and their quantitative characteristics.
//!
//! The crate has four layers:
//!
//! * [`numerics`] — the self-contained kernel: MacDonald functions of
//!   orders 1/3 and 2/3, integer-order Bessel functions with their
//!   integrals, adaptive quadrature, bracketed root finding, and unimodal
//!   maximization.
//! * [`ultra`] — spectral densities of the five polarization components in
//!   the high-energy limit, cumulative powers in closed form, and the
//!   exact total power fractions.
//! * [`exact`] — the finite-velocity theory: per-harmonic angular
//!   densities, half-space powers in closed form, harmonic sums, and the
//!   total radiated power.
//! * [`widths`] — spectral maxima, the effective width (narrowest window
//!   holding half the power), the half-width, derived power fractions, and
//!   the discrete minimal harmonic window.
//!
//! Everything is pure and deterministic: identical inputs produce
//! bit-identical outputs, and all operations are safe to call
//! concurrently.

pub mod exact;
pub mod numerics;
pub mod ultra;
pub mod widths;

pub use exact::{BetaGamma, ChargeConfig, ExactError, HarmonicPower, HarmonicSum};
pub use numerics::{Bracket, NumericsError, Tolerance};
pub use ultra::{Polarization, ScaledFrequency, SpectralSample, UltraError};
pub use widths::{
    DiscreteWindow, HalfWidthSolution, ScalingCoefficient, SummaryRow, WidthSolution, WidthsError,
};
