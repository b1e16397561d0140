//! Exact finite-velocity theory: per-harmonic angular densities, half-space
//! powers in closed form, harmonic sums with their known totals, the total
//! radiated power, and partial contributions of individual harmonics.
//!
//! Angular densities (x = nu beta sin(theta), epsilon = -e/|e|):
//!
//! ```text
//! f_sigma = (3 nu^2 / 2 gamma^4) J_nu'^2(x)
//! f_pi    = (3 nu^2 / 2 gamma^4) (cos^2 / beta^2 sin^2) J_nu^2(x)
//! f_{r,l} = (3 nu^2 / 4 gamma^4) [J_nu'(x) +- eps (cos / beta sin) J_nu(x)]^2
//! f_total = f_sigma + f_pi = f_r + f_l
//! ```
//!
//! Integrating over the upper half-space 0 <= theta <= pi/2 gives, with
//! z = 2 nu beta and p = 3 nu / (4 gamma^4 beta^3):
//!
//! ```text
//! F_sigma = p [2 beta^2 J_{2nu}'(z) + beta^2 A - 2 nu beta B]
//! F_pi    = p [2 nu beta B - A]
//! F_total = p [2 beta^2 J_{2nu}'(z) - (1 - beta^2) A]
//! F_{r,l} = F_total/2 +- eps 3 nu J_nu^2(nu beta) / (4 gamma^4 beta^2)
//! ```
//!
//! where A and B are the cumulative Bessel integrals over [0, z] with
//! weights 1 and 1/x. Summed over all harmonics the linear components
//! reach (6 + beta^2)/16 and (2 - beta^2)/16 and the total reaches 1/2.

use crate::numerics::{bessel_j, bessel_j_prime, NumericsError};
use crate::ultra::Polarization;

/// Errors from the finite-velocity operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExactError {
    #[error("beta must lie in [0, 1), got {0}")]
    BetaOutOfRange(f64),
    #[error("gamma must be finite and >= 1, got {0}")]
    GammaOutOfRange(f64),
    #[error("operation requires beta > 0 (no radiation at rest)")]
    BetaZero,
    #[error("harmonic index must be >= 1")]
    ZeroHarmonic,
    #[error("polar angle must lie in [0, pi], got {0}")]
    ThetaOutOfRange(f64),
    #[error("angular density of component {component} is singular at theta = {theta}")]
    AngularEndpoint { component: i8, theta: f64 },
    #[error("invalid charge configuration: {0}")]
    InvalidConfig(String),
    #[error("harmonic sum truncated too early: tail estimate {tail_estimate} exceeds {bound}")]
    TruncationInsufficient { tail_estimate: f64, bound: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Speed ratio beta = v/c and the matching relativistic factor
/// gamma = 1/sqrt(1 - beta^2), kept consistent to machine precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaGamma {
    beta: f64,
    gamma: f64,
}

impl BetaGamma {
    pub fn from_beta(beta: f64) -> Result<Self, ExactError> {
        if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
            return Err(ExactError::BetaOutOfRange(beta));
        }
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        Ok(Self { beta, gamma })
    }

    pub fn from_gamma(gamma: f64) -> Result<Self, ExactError> {
        if !gamma.is_finite() || gamma < 1.0 {
            return Err(ExactError::GammaOutOfRange(gamma));
        }
        let beta = (1.0 - 1.0 / (gamma * gamma)).sqrt();
        Ok(Self { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    fn gamma4(&self) -> f64 {
        self.gamma.powi(4)
    }
}

/// How the orbit is described in the total-power formula.
#[derive(Debug, Clone, PartialEq)]
pub enum Parametrization {
    /// Orbit radius R.
    Radius { radius: f64 },
    /// Magnetic field strength H and rest mass of the particle.
    Field { field: f64, rest_mass: f64 },
}

/// Charge, unit system, and orbit parametrization. The polarization sign
/// epsilon = -e/|e| is +1 for an electron.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeConfig {
    charge: f64,
    light_speed: f64,
    units: String,
    parametrization: Parametrization,
}

impl ChargeConfig {
    pub fn with_radius(
        charge: f64,
        light_speed: f64,
        radius: f64,
        units: impl Into<String>,
    ) -> Result<Self, ExactError> {
        Self::validate_common(charge, light_speed)?;
        if !radius.is_finite() || radius <= 0.0 {
            return Err(ExactError::InvalidConfig(format!(
                "orbit radius must be positive, got {radius}"
            )));
        }
        Ok(Self {
            charge,
            light_speed,
            units: units.into(),
            parametrization: Parametrization::Radius { radius },
        })
    }

    pub fn with_field(
        charge: f64,
        light_speed: f64,
        field: f64,
        rest_mass: f64,
        units: impl Into<String>,
    ) -> Result<Self, ExactError> {
        Self::validate_common(charge, light_speed)?;
        if !field.is_finite() || field <= 0.0 {
            return Err(ExactError::InvalidConfig(format!(
                "field strength must be positive, got {field}"
            )));
        }
        if !rest_mass.is_finite() || rest_mass <= 0.0 {
            return Err(ExactError::InvalidConfig(format!(
                "rest mass must be positive, got {rest_mass}"
            )));
        }
        Ok(Self {
            charge,
            light_speed,
            units: units.into(),
            parametrization: Parametrization::Field { field, rest_mass },
        })
    }

    /// Electron on a unit orbit in a unit system with e = c = R = 1.
    pub fn electron_unit_orbit() -> Self {
        Self::with_radius(-1.0, 1.0, 1.0, "natural").expect("static configuration is valid")
    }

    fn validate_common(charge: f64, light_speed: f64) -> Result<(), ExactError> {
        if !charge.is_finite() || charge == 0.0 {
            return Err(ExactError::InvalidConfig(format!(
                "charge must be nonzero, got {charge}"
            )));
        }
        if !light_speed.is_finite() || light_speed <= 0.0 {
            return Err(ExactError::InvalidConfig(format!(
                "speed of light must be positive, got {light_speed}"
            )));
        }
        Ok(())
    }

    /// Polarization sign epsilon = -e/|e|.
    pub fn epsilon(&self) -> f64 {
        -self.charge.signum()
    }

    pub fn units(&self) -> &str {
        &self.units
    }

    pub fn parametrization(&self) -> &Parametrization {
        &self.parametrization
    }
}

/// Per-harmonic power radiated into the upper and lower half-spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPower {
    pub s: Polarization,
    pub nu: u32,
    pub upper: f64,
    pub lower: f64,
}

/// A truncated harmonic sum together with a geometric estimate of the
/// dropped tail, taken from the decay rate of the last few terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicSum {
    pub value: f64,
    pub tail_estimate: f64,
}

impl HarmonicSum {
    /// True when the estimated tail is negligible against the partial sum.
    pub fn is_converged(&self, rel_bound: f64) -> bool {
        self.tail_estimate <= rel_bound * self.value.abs()
    }
}

/// Truncation point for harmonic sums: the spectrum decays exponentially
/// beyond nu ~ gamma^3.
pub fn default_nu_max(bg: &BetaGamma) -> u32 {
    let g3 = bg.gamma().powi(3);
    ((10.0 * g3).ceil() as u32).max(50)
}

fn require_moving(bg: &BetaGamma) -> Result<(), ExactError> {
    if bg.beta() <= 0.0 {
        Err(ExactError::BetaZero)
    } else {
        Ok(())
    }
}

fn require_harmonic(nu: u32) -> Result<(), ExactError> {
    if nu == 0 {
        Err(ExactError::ZeroHarmonic)
    } else {
        Ok(())
    }
}

/// Angular density f_s(beta; nu, theta) of one polarization component.
///
/// The pi and circular components carry a cos(theta)/sin(theta) factor and
/// are rejected at exactly theta = 0 or pi; the total and sigma components
/// are defined on the closed interval (the ratio J_nu(x)/sin(theta) is
/// extended by its limit).
pub fn angular_density(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    theta: f64,
    cfg: &ChargeConfig,
) -> Result<f64, ExactError> {
    require_moving(bg)?;
    require_harmonic(nu)?;
    if !theta.is_finite() || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(ExactError::ThetaOutOfRange(theta));
    }
    let at_endpoint = theta == 0.0 || theta == std::f64::consts::PI;
    if at_endpoint
        && matches!(
            s,
            Polarization::Pi | Polarization::Right | Polarization::Left
        )
    {
        return Err(ExactError::AngularEndpoint {
            component: s.index(),
            theta,
        });
    }

    let beta = bg.beta();
    let n = f64::from(nu);
    let sin_t = theta.sin();
    let cos_t = theta.cos();
    let x = n * beta * sin_t;
    let scale = 1.5 * n * n / bg.gamma4();

    let j_prime = bessel_j_prime(nu, x)?;
    // J_nu(x)/sin(theta); at the endpoints the limit is nu beta / 2 for
    // nu = 1 and 0 otherwise.
    let j_ratio = if at_endpoint {
        if nu == 1 {
            0.5 * beta
        } else {
            0.0
        }
    } else {
        bessel_j(nu, x)? / sin_t
    };

    let f_sigma = scale * j_prime * j_prime;
    let f_pi = scale * (cos_t * j_ratio / beta).powi(2);
    Ok(match s {
        Polarization::Sigma => f_sigma,
        Polarization::Pi => f_pi,
        Polarization::Total => f_sigma + f_pi,
        Polarization::Right | Polarization::Left => {
            let sign = if s == Polarization::Right { 1.0 } else { -1.0 };
            let amplitude = j_prime + sign * cfg.epsilon() * cos_t * j_ratio / beta;
            0.5 * scale * amplitude * amplitude
        }
    })
}

fn check_harmonic_cap(nu: u32) -> Result<(), ExactError> {
    // The closed forms evaluate Bessel terms of order 2 nu.
    if 2 * nu > crate::numerics::BESSEL_ORDER_CAP {
        return Err(ExactError::Numerics(NumericsError::OrderCap {
            order: 2 * nu,
            cap: crate::numerics::BESSEL_ORDER_CAP,
        }));
    }
    Ok(())
}

/// The two linear-component powers at one harmonic.
struct LinearTerms {
    f_sigma: f64,
    f_pi: f64,
}

fn linear_terms(bg: &BetaGamma, nu: u32) -> Result<LinearTerms, ExactError> {
    check_harmonic_cap(nu)?;
    let beta = bg.beta();
    let n = f64::from(nu);
    let z = 2.0 * n * beta;
    let prefactor = 3.0 * n / (4.0 * bg.gamma4() * beta.powi(3));

    let j_prime = crate::numerics::bessel_j_prime_fused(2 * nu, z);
    let int_unit = crate::numerics::cumulative_unit_raw(2 * nu, z);
    let int_inv_x = crate::numerics::cumulative_inverse_raw(2 * nu, z);

    let f_sigma =
        prefactor * (2.0 * beta * beta * j_prime + beta * beta * int_unit - z * int_inv_x);
    let f_pi = prefactor * (z * int_inv_x - int_unit);
    Ok(LinearTerms { f_sigma, f_pi })
}

/// The half-space asymmetry term of the circular components,
/// 3 nu J_nu^2(nu beta) / (4 gamma^4 beta^2).
fn circular_term(bg: &BetaGamma, nu: u32) -> f64 {
    let beta = bg.beta();
    let n = f64::from(nu);
    let j_at = crate::numerics::bessel_j_raw(nu, n * beta);
    3.0 * n * j_at * j_at / (4.0 * bg.gamma4() * beta * beta)
}

/// Total-component power alone, needing only two of the four Bessel
/// primitives. Drives the truncation search.
fn upper_total_raw(bg: &BetaGamma, nu: u32) -> Result<f64, ExactError> {
    check_harmonic_cap(nu)?;
    let beta = bg.beta();
    let n = f64::from(nu);
    let z = 2.0 * n * beta;
    let prefactor = 3.0 * n / (4.0 * bg.gamma4() * beta.powi(3));
    let j_prime = crate::numerics::bessel_j_prime_fused(2 * nu, z);
    let int_unit = crate::numerics::cumulative_unit_raw(2 * nu, z);
    Ok((prefactor * (2.0 * beta * beta * j_prime - (1.0 - beta * beta) * int_unit)).max(0.0))
}

fn upper_power_with_epsilon(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    epsilon: f64,
) -> Result<f64, ExactError> {
    require_moving(bg)?;
    require_harmonic(nu)?;
    let t = linear_terms(bg, nu)?;
    let value = match s {
        Polarization::Sigma => t.f_sigma,
        Polarization::Pi => t.f_pi,
        Polarization::Total => t.f_sigma + t.f_pi,
        Polarization::Right => 0.5 * (t.f_sigma + t.f_pi) + epsilon * circular_term(bg, nu),
        Polarization::Left => 0.5 * (t.f_sigma + t.f_pi) - epsilon * circular_term(bg, nu),
    };
    // Each F is the integral of a nonnegative density; far down the
    // exponential tail the closed forms cancel to roundoff and can dip a
    // few 1e-13 below zero.
    Ok(value.max(0.0))
}

/// Electron-convention upper power, used by the harmonic sums.
pub(crate) fn upper_power_electron(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
) -> Result<f64, ExactError> {
    upper_power_with_epsilon(s, bg, nu, 1.0)
}

/// Electron-convention upper powers of all five components at one
/// harmonic, in table order (0, 2, 3, -1, +1), sharing one evaluation of
/// the Bessel primitives.
pub(crate) fn upper_all_electron(bg: &BetaGamma, nu: u32) -> Result<[f64; 5], ExactError> {
    require_moving(bg)?;
    require_harmonic(nu)?;
    let t = linear_terms(bg, nu)?;
    let circular = circular_term(bg, nu);
    let total = t.f_sigma + t.f_pi;
    Ok([
        total.max(0.0),
        t.f_sigma.max(0.0),
        t.f_pi.max(0.0),
        (0.5 * total - circular).max(0.0),
        (0.5 * total + circular).max(0.0),
    ])
}

/// Power radiated into the upper half-space at harmonic `nu`,
/// F_s(beta; nu), from the closed forms above.
pub fn harmonic_power_upper(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    cfg: &ChargeConfig,
) -> Result<f64, ExactError> {
    upper_power_with_epsilon(s, bg, nu, cfg.epsilon())
}

/// Power radiated into the lower half-space. Mirror symmetry about the
/// orbit plane swaps the circular components and fixes the rest.
pub fn harmonic_power_lower(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    cfg: &ChargeConfig,
) -> Result<f64, ExactError> {
    let mirrored = match s {
        Polarization::Right => Polarization::Left,
        Polarization::Left => Polarization::Right,
        other => other,
    };
    harmonic_power_upper(mirrored, bg, nu, cfg)
}

/// Both half-space powers of one harmonic.
pub fn harmonic_power(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    cfg: &ChargeConfig,
) -> Result<HarmonicPower, ExactError> {
    Ok(HarmonicPower {
        s,
        nu,
        upper: harmonic_power_upper(s, bg, nu, cfg)?,
        lower: harmonic_power_lower(s, bg, nu, cfg)?,
    })
}

/// Upper-half-space powers of all five components at one harmonic, in
/// table order (0, 2, 3, -1, +1), sharing one evaluation of the Bessel
/// primitives.
pub fn harmonic_power_upper_all(
    bg: &BetaGamma,
    nu: u32,
    cfg: &ChargeConfig,
) -> Result<[f64; 5], ExactError> {
    require_moving(bg)?;
    require_harmonic(nu)?;
    let t = linear_terms(bg, nu)?;
    let circular = cfg.epsilon() * circular_term(bg, nu);
    let total = t.f_sigma + t.f_pi;
    Ok([
        total.max(0.0),
        t.f_sigma.max(0.0),
        t.f_pi.max(0.0),
        (0.5 * total - circular).max(0.0),
        (0.5 * total + circular).max(0.0),
    ])
}

/// Geometric tail estimate from the decay rate over the last few terms.
///
/// The rate comes from windowed maxima rather than single terms: deep in
/// the tail the closed forms bottom out at a cancellation-noise plateau
/// (including exact zeros from the clamp), where isolated terms no longer
/// decay geometrically. `scale` sets that floor; a tail below it is
/// unresolvable and is reported as the floor itself.
fn geometric_tail(terms: &[f64], scale: f64) -> f64 {
    let n = terms.len();
    let span = 10usize;
    if n < 2 * span {
        return f64::INFINITY;
    }
    // The plateau grows with the 3 nu / (4 gamma^4 beta^3) prefactor, so
    // leave generous headroom; callers never ask for better than 1e-8.
    let floor = 1e-10 * scale.abs();
    let last = terms[n - span..].iter().fold(0.0f64, |acc, &t| acc.max(t));
    if last <= floor {
        return floor;
    }
    let earlier = terms[n - 2 * span..n - span]
        .iter()
        .fold(0.0f64, |acc, &t| acc.max(t));
    if earlier <= floor {
        // Terms rising out of the noise floor: no meaningful decay rate.
        return f64::INFINITY;
    }
    let ratio = (last / earlier).powf(1.0 / span as f64);
    if ratio >= 1.0 {
        f64::INFINITY
    } else {
        last * ratio / (1.0 - ratio)
    }
}

/// Truncated harmonic sum of the upper-half-space powers (electron
/// convention), with a geometric tail estimate. The linear components and
/// the total converge to (6 + beta^2)/16, (2 - beta^2)/16, and 1/2.
pub fn total_fraction_exact(
    s: Polarization,
    bg: &BetaGamma,
    nu_max: u32,
) -> Result<HarmonicSum, ExactError> {
    require_moving(bg)?;
    require_harmonic(nu_max)?;
    let mut terms = Vec::with_capacity(nu_max as usize);
    let mut sum = 0.0;
    for nu in 1..=nu_max {
        let t = upper_power_electron(s, bg, nu)?;
        sum += t;
        terms.push(t);
    }
    Ok(HarmonicSum {
        value: sum,
        tail_estimate: geometric_tail(&terms, sum),
    })
}

/// Truncated harmonic sums of all five components in table order,
/// evaluating the Bessel primitives once per harmonic.
pub fn total_fractions_exact_all(
    bg: &BetaGamma,
    nu_max: u32,
) -> Result<[HarmonicSum; 5], ExactError> {
    require_moving(bg)?;
    require_harmonic(nu_max)?;
    let mut terms: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(nu_max as usize));
    let mut sums = [0.0; 5];
    for nu in 1..=nu_max {
        let all = upper_all_electron(bg, nu)?;
        for (k, t) in all.into_iter().enumerate() {
            sums[k] += t;
            terms[k].push(t);
        }
    }
    Ok(std::array::from_fn(|k| HarmonicSum {
        value: sums[k],
        tail_estimate: geometric_tail(&terms[k], sums[k]),
    }))
}

/// Smallest truncation point (starting from [`default_nu_max`], doubling)
/// whose estimated dropped tail is below `rel_bound` of the total sum.
/// The probe series is extended incrementally, so the search costs one
/// pass at the final size.
pub fn converged_nu_max(bg: &BetaGamma, rel_bound: f64) -> Result<u32, ExactError> {
    require_moving(bg)?;
    let cap = 4_999u32;
    let mut nu_max = default_nu_max(bg).min(cap);
    let mut terms: Vec<f64> = Vec::with_capacity(nu_max as usize);
    let mut sum = 0.0;
    loop {
        for nu in terms.len() as u32 + 1..=nu_max {
            let t = upper_total_raw(bg, nu)?;
            sum += t;
            terms.push(t);
        }
        let tail = geometric_tail(&terms, sum);
        if tail <= rel_bound * sum.abs() {
            return Ok(nu_max);
        }
        if nu_max >= cap {
            return Err(ExactError::TruncationInsufficient {
                tail_estimate: tail,
                bound: rel_bound * sum,
            });
        }
        nu_max = (nu_max * 2).min(cap);
    }
}

/// Closed-form total of the upper half-space where one is known
/// (the linear components and the total).
pub(crate) fn closed_total_fraction(s: Polarization, beta: f64) -> Option<f64> {
    match s {
        Polarization::Sigma => Some((6.0 + beta * beta) / 16.0),
        Polarization::Pi => Some((2.0 - beta * beta) / 16.0),
        Polarization::Total => Some(0.5),
        Polarization::Right | Polarization::Left => None,
    }
}

/// Total radiated power of unpolarized radiation,
/// W = (2/3)(c e^2 / R^2)(gamma^2 - 1)^2 in the radius form or
/// W = (2/3) e^4 H^2 (gamma^2 - 1) / (m0^2 c^3) in the field form.
pub fn total_power(bg: &BetaGamma, cfg: &ChargeConfig) -> f64 {
    let g2m1 = bg.gamma() * bg.gamma() - 1.0;
    let e2 = cfg.charge * cfg.charge;
    match cfg.parametrization {
        Parametrization::Radius { radius } => {
            2.0 / 3.0 * cfg.light_speed * e2 / (radius * radius) * g2m1 * g2m1
        }
        Parametrization::Field { field, rest_mass } => {
            2.0 / 3.0 * e2 * e2 * field * field * g2m1
                / (rest_mass * rest_mass * cfg.light_speed.powi(3))
        }
    }
}

/// Partial contribution P_s(beta; nu) of one harmonic to its component's
/// upper-half-space power. The denominator is the closed-form total where
/// one exists, and the truncated sum (to `nu_max`) for the circular
/// components.
pub fn partial_contribution(
    s: Polarization,
    bg: &BetaGamma,
    nu: u32,
    nu_max: u32,
) -> Result<f64, ExactError> {
    require_moving(bg)?;
    require_harmonic(nu)?;
    let numerator = upper_power_electron(s, bg, nu)?;
    let denominator = match closed_total_fraction(s, bg.beta()) {
        Some(v) => v,
        None => total_fraction_exact(s, bg, nu_max)?.value,
    };
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn electron() -> ChargeConfig {
        ChargeConfig::electron_unit_orbit()
    }

    #[test]
    fn beta_gamma_consistency() {
        for beta in [0.0, 0.1, 0.5, 0.9, 0.99] {
            let bg = BetaGamma::from_beta(beta).unwrap();
            assert!((bg.gamma() * (1.0 - bg.beta().powi(2)).sqrt() - 1.0).abs() < 1e-14);
        }
        for gamma in [1.0, 2.0, 10.0] {
            let bg = BetaGamma::from_gamma(gamma).unwrap();
            assert!((bg.gamma() * (1.0 - bg.beta().powi(2)).sqrt() - 1.0).abs() < 1e-14);
        }
        assert!(BetaGamma::from_beta(1.0).is_err());
        assert!(BetaGamma::from_beta(-0.1).is_err());
        assert!(BetaGamma::from_gamma(0.5).is_err());
    }

    #[test]
    fn pi_component_vanishes_in_orbit_plane() {
        let bg = BetaGamma::from_beta(0.5).unwrap();
        let f = angular_density(Polarization::Pi, &bg, 2, FRAC_PI_2, &electron()).unwrap();
        assert!(f.abs() < 1e-30);
    }

    #[test]
    fn circular_components_agree_in_orbit_plane() {
        let bg = BetaGamma::from_beta(0.7).unwrap();
        let r = angular_density(Polarization::Right, &bg, 3, FRAC_PI_2, &electron()).unwrap();
        let l = angular_density(Polarization::Left, &bg, 3, FRAC_PI_2, &electron()).unwrap();
        assert!((r - l).abs() < 1e-15 * r.abs());
    }

    #[test]
    fn angular_sum_rules() {
        let bg = BetaGamma::from_beta(0.5).unwrap();
        let cfg = electron();
        for theta in [0.3, 1.0, 2.0, 2.8] {
            let total = angular_density(Polarization::Total, &bg, 2, theta, &cfg).unwrap();
            let linear = angular_density(Polarization::Sigma, &bg, 2, theta, &cfg).unwrap()
                + angular_density(Polarization::Pi, &bg, 2, theta, &cfg).unwrap();
            let circular = angular_density(Polarization::Right, &bg, 2, theta, &cfg).unwrap()
                + angular_density(Polarization::Left, &bg, 2, theta, &cfg).unwrap();
            assert!((total - linear).abs() < 1e-14 * total.max(1.0));
            assert!((total - circular).abs() < 1e-14 * total.max(1.0));
        }
    }

    #[test]
    fn angular_endpoints_error_for_singular_components() {
        let bg = BetaGamma::from_beta(0.5).unwrap();
        let cfg = electron();
        for s in [Polarization::Pi, Polarization::Right, Polarization::Left] {
            assert!(matches!(
                angular_density(s, &bg, 2, 0.0, &cfg),
                Err(ExactError::AngularEndpoint { .. })
            ));
            assert!(matches!(
                angular_density(s, &bg, 2, PI, &cfg),
                Err(ExactError::AngularEndpoint { .. })
            ));
        }
        // Total and sigma are defined at the endpoints.
        assert!(angular_density(Polarization::Total, &bg, 1, 0.0, &cfg).is_ok());
        assert!(angular_density(Polarization::Sigma, &bg, 1, PI, &cfg).is_ok());
    }

    #[test]
    fn beta_zero_is_rejected() {
        let rest = BetaGamma::from_beta(0.0).unwrap();
        let cfg = electron();
        assert!(matches!(
            angular_density(Polarization::Sigma, &rest, 1, 1.0, &cfg),
            Err(ExactError::BetaZero)
        ));
        assert!(matches!(
            harmonic_power_upper(Polarization::Sigma, &rest, 1, &cfg),
            Err(ExactError::BetaZero)
        ));
    }

    #[test]
    fn linear_components_sum_to_total() {
        let bg = BetaGamma::from_beta(0.9).unwrap();
        let cfg = electron();
        let f2 = harmonic_power_upper(Polarization::Sigma, &bg, 5, &cfg).unwrap();
        let f3 = harmonic_power_upper(Polarization::Pi, &bg, 5, &cfg).unwrap();
        let f0 = harmonic_power_upper(Polarization::Total, &bg, 5, &cfg).unwrap();
        assert!((f0 - (f2 + f3)).abs() < 1e-15);
    }

    #[test]
    fn circular_difference_is_twice_the_cross_term() {
        let bg = BetaGamma::from_beta(0.6).unwrap();
        let cfg = electron();
        let nu = 4u32;
        let r = harmonic_power_upper(Polarization::Right, &bg, nu, &cfg).unwrap();
        let l = harmonic_power_upper(Polarization::Left, &bg, nu, &cfg).unwrap();
        let n = f64::from(nu);
        let j = bessel_j(nu, n * bg.beta()).unwrap();
        let expected = 3.0 * n * j * j / (2.0 * bg.gamma().powi(4) * bg.beta().powi(2));
        assert!(r - l >= 0.0);
        assert!(((r - l) - expected).abs() < 1e-14);
    }

    #[test]
    fn half_space_swap_relations_hold_exactly() {
        let bg = BetaGamma::from_beta(0.7).unwrap();
        let cfg = electron();
        for nu in [1, 3, 8] {
            for s in [Polarization::Total, Polarization::Sigma, Polarization::Pi] {
                assert_eq!(
                    harmonic_power_lower(s, &bg, nu, &cfg).unwrap(),
                    harmonic_power_upper(s, &bg, nu, &cfg).unwrap()
                );
            }
            assert_eq!(
                harmonic_power_lower(Polarization::Right, &bg, nu, &cfg).unwrap(),
                harmonic_power_upper(Polarization::Left, &bg, nu, &cfg).unwrap()
            );
            assert_eq!(
                harmonic_power_lower(Polarization::Left, &bg, nu, &cfg).unwrap(),
                harmonic_power_upper(Polarization::Right, &bg, nu, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn total_power_examples() {
        let rest = BetaGamma::from_gamma(1.0).unwrap();
        let cfg = ChargeConfig::with_radius(1.0, 1.0, 1.0, "natural").unwrap();
        assert_eq!(total_power(&rest, &cfg), 0.0);

        let bg = BetaGamma::from_gamma(2.0).unwrap();
        assert!((total_power(&bg, &cfg) - 6.0).abs() < 1e-12);

        let field_cfg = ChargeConfig::with_field(1.0, 1.0, 1.0, 1.0, "natural").unwrap();
        assert!((total_power(&bg, &field_cfg) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn charge_config_validation_and_epsilon() {
        assert!(ChargeConfig::with_radius(0.0, 1.0, 1.0, "x").is_err());
        assert!(ChargeConfig::with_radius(1.0, -1.0, 1.0, "x").is_err());
        assert!(ChargeConfig::with_radius(1.0, 1.0, 0.0, "x").is_err());
        assert!(ChargeConfig::with_field(1.0, 1.0, 1.0, 0.0, "x").is_err());
        // Electron carries negative charge, so epsilon = +1.
        assert_eq!(electron().epsilon(), 1.0);
        assert_eq!(
            ChargeConfig::with_radius(1.0, 1.0, 1.0, "x")
                .unwrap()
                .epsilon(),
            -1.0
        );
    }

    #[test]
    fn partial_contributions_normalize() {
        let bg = BetaGamma::from_beta(0.5).unwrap();
        let nu_max = default_nu_max(&bg);
        for s in Polarization::TABLE_ORDER {
            let mut sum = 0.0;
            for nu in 1..=nu_max {
                let p = partial_contribution(s, &bg, nu, nu_max).unwrap();
                assert!((0.0..=1.0).contains(&p), "P out of range for {s:?}: {p}");
                sum += p;
            }
            assert!((sum - 1.0).abs() < 1e-6, "sum of P for {s:?} is {sum}");
        }
    }

    #[test]
    fn first_harmonic_dominates_at_low_beta() {
        let bg = BetaGamma::from_beta(0.1).unwrap();
        let p1 = partial_contribution(Polarization::Total, &bg, 1, 50).unwrap();
        assert!(p1 > 0.97, "P(nu = 1) = {p1}");
    }

    #[test]
    fn harmonic_power_pairs_both_half_spaces() {
        let bg = BetaGamma::from_beta(0.6).unwrap();
        let cfg = electron();
        let hp = harmonic_power(Polarization::Right, &bg, 2, &cfg).unwrap();
        assert_eq!(hp.nu, 2);
        assert!(hp.upper >= 0.0 && hp.lower >= 0.0);
        // For the circular components the two half-spaces differ.
        assert!(hp.upper > hp.lower);
        let sym = harmonic_power(Polarization::Sigma, &bg, 2, &cfg).unwrap();
        assert_eq!(sym.upper, sym.lower);
    }

    #[test]
    fn order_cap_propagates_through_harmonic_powers() {
        let bg = BetaGamma::from_beta(0.5).unwrap();
        let cfg = electron();
        // The closed forms need Bessel order 2 nu.
        let too_big = crate::numerics::BESSEL_ORDER_CAP / 2 + 1;
        assert!(matches!(
            harmonic_power_upper(Polarization::Total, &bg, too_big, &cfg),
            Err(ExactError::Numerics(NumericsError::OrderCap { .. }))
        ));
    }
}
