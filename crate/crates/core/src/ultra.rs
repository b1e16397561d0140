//! Spectral distributions of the polarization components in the
//! high-energy limit, where the spectrum becomes a continuous density in
//! the scaled frequency y, together with their cumulative powers in closed
//! form and the exact total power fractions of the upper half-space.
//!
//! Densities (prefactor C = 9 sqrt(3) / 32 pi, T(y) = int_y^inf K_{1/3}):
//!
//! ```text
//! F_sigma(y) = C y [3 K_{2/3}(y) - T(y)]
//! F_pi(y)    = C y [  K_{2/3}(y) - T(y)]
//! F_total    = F_sigma + F_pi
//! F_{r,l}(y) = F_total/2 +- (9/16 pi^2) y K_{1/3}^2(y/2)
//! ```
//!
//! The cumulative powers are assembled from the helpers J1, J2, J3 (see
//! [`auxiliary_j`]). The circular pair saturates at (1 +- sqrt(3)/pi)/4.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::numerics::{k13_full_integral, k13_tail_raw, macdonald_k_raw};

const ONE_THIRD: f64 = 1.0 / 3.0;
const TWO_THIRDS: f64 = 2.0 / 3.0;
const SQRT_3: f64 = 1.732_050_807_568_877_3;

/// 9 sqrt(3) / (32 pi), the common density prefactor.
fn density_coef() -> f64 {
    9.0 * SQRT_3 / (32.0 * PI)
}

/// Errors from the high-energy-limit operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UltraError {
    #[error("scaled frequency must be finite and nonnegative, got {0}")]
    InvalidFrequency(f64),
    #[error("auxiliary integral index must be 1, 2, or 3, got {0}")]
    AuxiliaryIndex(u8),
}

/// The five polarization components. Serialized as the integers
/// 0 (total), 2 (sigma linear), 3 (pi linear), 1 (right circular),
/// -1 (left circular).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    Total,
    Sigma,
    Pi,
    Right,
    Left,
}

impl Polarization {
    /// Column order used by the summary table: 0, 2, 3, -1, +1.
    pub const TABLE_ORDER: [Polarization; 5] = [
        Polarization::Total,
        Polarization::Sigma,
        Polarization::Pi,
        Polarization::Left,
        Polarization::Right,
    ];

    pub fn index(self) -> i8 {
        match self {
            Polarization::Total => 0,
            Polarization::Sigma => 2,
            Polarization::Pi => 3,
            Polarization::Right => 1,
            Polarization::Left => -1,
        }
    }

    pub fn from_index(index: i8) -> Option<Self> {
        match index {
            0 => Some(Polarization::Total),
            2 => Some(Polarization::Sigma),
            3 => Some(Polarization::Pi),
            1 => Some(Polarization::Right),
            -1 => Some(Polarization::Left),
            _ => None,
        }
    }

    /// Short label used for column headers and JSON keys.
    pub fn label(self) -> &'static str {
        match self {
            Polarization::Total => "s0",
            Polarization::Sigma => "s2",
            Polarization::Pi => "s3",
            Polarization::Right => "s+1",
            Polarization::Left => "s-1",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::Right => write!(f, "+1"),
            other => write!(f, "{}", other.index()),
        }
    }
}

impl FromStr for Polarization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" | "s0" | "total" => Ok(Polarization::Total),
            "2" | "s2" | "sigma" => Ok(Polarization::Sigma),
            "3" | "s3" | "pi" => Ok(Polarization::Pi),
            "1" | "+1" | "s+1" | "right" => Ok(Polarization::Right),
            "-1" | "s-1" | "left" => Ok(Polarization::Left),
            other => Err(format!(
                "unknown polarization component `{other}` (expected 0, 2, 3, +1, or -1)"
            )),
        }
    }
}

/// Scaled spectral variable y >= 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ScaledFrequency(f64);

impl ScaledFrequency {
    pub fn new(y: f64) -> Result<Self, UltraError> {
        if !y.is_finite() || y < 0.0 {
            return Err(UltraError::InvalidFrequency(y));
        }
        Ok(Self(y))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// One point (y, F_s(y)) of a spectral curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub y: ScaledFrequency,
    pub f: f64,
}

/// Evaluate one component of the spectral density at `y`.
pub fn sample(s: Polarization, y: ScaledFrequency) -> SpectralSample {
    SpectralSample {
        y,
        f: density_raw(s, y.get()),
    }
}

/// Spectral density F_s(y). Defined as 0 at y = 0 (the continuous limit:
/// every term vanishes at least as fast as y^{1/3}).
pub fn spectral_density(s: Polarization, y: f64) -> Result<f64, UltraError> {
    if !y.is_finite() || y < 0.0 {
        return Err(UltraError::InvalidFrequency(y));
    }
    Ok(density_raw(s, y))
}

/// Cumulative power int_0^y F_s. Nondecreasing; approaches
/// `total_fraction(s)` as y grows.
///
/// Valid for y <= 30 or so; past that the y^2 terms cancel against each
/// other and relative accuracy degrades (all characteristic points of the
/// spectra lie below y = 3).
pub fn cumulative_power(s: Polarization, y: f64) -> Result<f64, UltraError> {
    if !y.is_finite() || y < 0.0 {
        return Err(UltraError::InvalidFrequency(y));
    }
    Ok(cumulative_raw(s, y))
}

/// The auxiliary combinations of MacDonald functions used by the
/// closed-form cumulative powers:
///
/// ```text
/// J1(y) = (2/3) int_0^y K_{1/3} - y K_{1/3}(y)
/// J2(y) = (y^2/2 - 4/9) int_0^y K_{1/3} + (2/3) y K_{1/3}(y) + (y^2/2) K_{2/3}(y)
/// J3(y) = 3 y^2 [K_{1/3}^2(y) - K_{2/3}^2(y)] - 2 y K_{1/3}(y) K_{2/3}(y)
/// ```
///
/// At y = 0 the continuous limits are J1 = J2 = 0 and J3 = -2 pi / sqrt(3).
pub fn auxiliary_j(k: u8, y: f64) -> Result<f64, UltraError> {
    if !y.is_finite() || y < 0.0 {
        return Err(UltraError::InvalidFrequency(y));
    }
    match k {
        1 => Ok(aux_j1(y)),
        2 => Ok(aux_j2(y)),
        3 => Ok(aux_j3(y)),
        other => Err(UltraError::AuxiliaryIndex(other)),
    }
}

/// Total power fraction of the upper half-space carried by component `s`,
/// as a closed-form constant: 7/16, 1/16, 1/2, (1 +- sqrt(3)/pi)/4.
pub fn total_fraction(s: Polarization) -> f64 {
    match s {
        Polarization::Sigma => 7.0 / 16.0,
        Polarization::Pi => 1.0 / 16.0,
        Polarization::Total => 0.5,
        Polarization::Right => 0.25 * (1.0 + SQRT_3 / PI),
        Polarization::Left => 0.25 * (1.0 - SQRT_3 / PI),
    }
}

pub(crate) fn density_raw(s: Polarization, y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y == 0.0 {
        return 0.0;
    }
    let coef = density_coef();
    let k23 = macdonald_k_raw(TWO_THIRDS, y);
    let tail = k13_tail_raw(y);
    let sigma = coef * y * (3.0 * k23 - tail);
    let pi_lin = coef * y * (k23 - tail);
    match s {
        Polarization::Sigma => sigma,
        Polarization::Pi => pi_lin,
        Polarization::Total => sigma + pi_lin,
        Polarization::Right | Polarization::Left => {
            let k13_half = macdonald_k_raw(ONE_THIRD, 0.5 * y);
            let circular = 9.0 / (16.0 * PI * PI) * y * k13_half * k13_half;
            let sign = if s == Polarization::Right { 1.0 } else { -1.0 };
            0.5 * (sigma + pi_lin) + sign * circular
        }
    }
}

pub(crate) fn cumulative_raw(s: Polarization, y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    if y == 0.0 {
        return 0.0;
    }
    let coef = density_coef();
    let sigma = coef * (3.0 * aux_j1(y) + aux_j2(y) - PI * y * y / (2.0 * SQRT_3));
    // The pi component sits *below* the sigma component: subtracting the
    // positive, increasing J1 term is what reproduces d(Phi_pi)/dy = F_pi
    // and the 1/16 saturation limit.
    let pi_lin = sigma - 2.0 * coef * aux_j1(y);
    match s {
        Polarization::Sigma => sigma,
        Polarization::Pi => pi_lin,
        Polarization::Total => sigma + pi_lin,
        Polarization::Right | Polarization::Left => {
            let sign = if s == Polarization::Right { 1.0 } else { -1.0 };
            0.5 * (sigma + pi_lin)
                + sign * (3.0 / (8.0 * PI * PI) * aux_j3(0.5 * y) + SQRT_3 / (4.0 * PI))
        }
    }
}

/// int_0^y K_{1/3}(x) dx, from the cached full-line integral.
fn k13_integral_to(y: f64) -> f64 {
    if y == 0.0 {
        0.0
    } else {
        k13_full_integral() - k13_tail_raw(y)
    }
}

fn aux_j1(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    TWO_THIRDS * k13_integral_to(y) - y * macdonald_k_raw(ONE_THIRD, y)
}

fn aux_j2(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let k13 = macdonald_k_raw(ONE_THIRD, y);
    let k23 = macdonald_k_raw(TWO_THIRDS, y);
    (0.5 * y * y - 4.0 / 9.0) * k13_integral_to(y) + TWO_THIRDS * y * k13 + 0.5 * y * y * k23
}

fn aux_j3(y: f64) -> f64 {
    if y == 0.0 {
        // y K_{1/3} K_{2/3} -> pi/sqrt(3) while the squared terms vanish.
        return -2.0 * PI / SQRT_3;
    }
    let k13 = macdonald_k_raw(ONE_THIRD, y);
    let k23 = macdonald_k_raw(TWO_THIRDS, y);
    3.0 * y * y * (k13 * k13 - k23 * k23) - 2.0 * y * k13 * k23
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_vanishes_at_origin() {
        for s in Polarization::TABLE_ORDER {
            assert_eq!(spectral_density(s, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn cumulative_vanishes_at_origin() {
        for s in Polarization::TABLE_ORDER {
            assert_eq!(cumulative_power(s, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn component_sum_rules() {
        for i in 1..=30 {
            let y = 0.1 * f64::from(i);
            let total = density_raw(Polarization::Total, y);
            let linear = density_raw(Polarization::Sigma, y) + density_raw(Polarization::Pi, y);
            let circular = density_raw(Polarization::Right, y) + density_raw(Polarization::Left, y);
            assert!((total - linear).abs() < 1e-12, "linear sum rule at y = {y}");
            assert!(
                (total - circular).abs() < 1e-12,
                "circular sum rule at y = {y}"
            );
        }
    }

    #[test]
    fn total_fractions_are_exact() {
        assert_eq!(total_fraction(Polarization::Sigma), 0.4375);
        assert_eq!(total_fraction(Polarization::Pi), 0.0625);
        assert_eq!(total_fraction(Polarization::Total), 0.5);
        assert!((total_fraction(Polarization::Right) - 0.387_832_2).abs() < 1e-7);
        assert!((total_fraction(Polarization::Left) - 0.112_167_8).abs() < 1e-7);
        let sum = total_fraction(Polarization::Sigma) + total_fraction(Polarization::Pi);
        assert_eq!(total_fraction(Polarization::Total), sum);
    }

    #[test]
    fn circular_dominance() {
        for i in 0..=60 {
            let y = 0.5 * f64::from(i);
            assert!(
                density_raw(Polarization::Right, y) >= density_raw(Polarization::Left, y),
                "right circular must dominate at y = {y}"
            );
        }
    }

    #[test]
    fn cumulative_saturates_at_total_fraction() {
        for s in Polarization::TABLE_ORDER {
            let val = cumulative_raw(s, 30.0);
            assert!(
                (val - total_fraction(s)).abs() < 1e-9,
                "saturation failed for {s:?}: {val}"
            );
        }
    }

    #[test]
    fn auxiliary_limits_at_origin() {
        assert_eq!(auxiliary_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(auxiliary_j(2, 0.0).unwrap(), 0.0);
        assert!((auxiliary_j(3, 0.0).unwrap() + 2.0 * PI / SQRT_3).abs() < 1e-15);
        // Continuity: the limits match small-argument evaluations.
        assert!(auxiliary_j(1, 1e-6).unwrap().abs() < 1e-4);
        assert!(auxiliary_j(2, 1e-6).unwrap().abs() < 1e-4);
        assert!((auxiliary_j(3, 1e-6).unwrap() - auxiliary_j(3, 0.0).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn rejects_invalid_arguments() {
        assert!(spectral_density(Polarization::Total, -0.1).is_err());
        assert!(cumulative_power(Polarization::Total, f64::NAN).is_err());
        assert!(matches!(
            auxiliary_j(4, 1.0),
            Err(UltraError::AuxiliaryIndex(4))
        ));
        assert!(ScaledFrequency::new(-1.0).is_err());
    }

    #[test]
    fn sampling_pairs_frequency_with_density() {
        let y = ScaledFrequency::new(0.5).unwrap();
        let point = sample(Polarization::Sigma, y);
        assert_eq!(point.y, y);
        assert_eq!(point.f, density_raw(Polarization::Sigma, 0.5));
        assert!(point.f >= 0.0);
    }

    #[test]
    fn polarization_round_trip() {
        for s in Polarization::TABLE_ORDER {
            assert_eq!(Polarization::from_index(s.index()), Some(s));
            assert_eq!(s.to_string().parse::<Polarization>().unwrap(), s);
            assert_eq!(s.label().parse::<Polarization>().unwrap(), s);
        }
        assert!(Polarization::from_index(4).is_none());
        assert!("x".parse::<Polarization>().is_err());
    }
}
