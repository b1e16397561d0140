//! Integer-order Bessel functions of the first kind, their derivatives, and
//! cumulative integrals.
//!
//! Point values come from the angular representation
//!
//! ```text
//! J_n(x) = (1/pi) int_0^pi cos(n tau - x sin tau) dtau,
//! ```
//!
//! integrated by a composite Kronrod pass whose panel count is sized to the
//! total phase variation (at most n*pi + 2x). Cumulative integrals do the
//! x-integration first, which collapses them to a single angular integral
//! of the same class:
//!
//! ```text
//! int_0^Z J_n(x) dx = (Z/pi) int_0^pi cos(n tau - (Z/2) sin tau)
//!                                * sinc((Z/2) sin tau) dtau.
//! ```
//!
//! The 1/x-weighted integral reduces to the unit-weight case through
//! J_n(x)/x = (J_{n-1}(x) + J_{n+1}(x)) / (2n).

use std::f64::consts::PI;

use super::{quadrature, NumericsError};

/// Largest order accepted by the public entry points. The angular
/// representation stays accurate well past this, but panel counts grow
/// linearly with the order, so the cap keeps a single call bounded.
pub const BESSEL_ORDER_CAP: u32 = 10_000;

/// Weight applied under the cumulative integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulativeWeight {
    One,
    InverseX,
}

fn check_order(order: u32) -> Result<(), NumericsError> {
    if order > BESSEL_ORDER_CAP {
        Err(NumericsError::OrderCap {
            order,
            cap: BESSEL_ORDER_CAP,
        })
    } else {
        Ok(())
    }
}

fn check_argument(what: &'static str, x: f64) -> Result<(), NumericsError> {
    if !x.is_finite() || x < 0.0 {
        Err(NumericsError::Domain { what, value: x })
    } else {
        Ok(())
    }
}

// Keep the phase change per panel below ~9 radians; the 15-point rule
// resolves well over a full oscillation per panel to machine precision.
fn oscillation_panels(order: f64, x: f64) -> usize {
    (((order * PI + 2.0 * x) / 9.0).ceil() as usize).clamp(2, 400_000)
}

fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
    } else {
        u.sin() / u
    }
}

pub(crate) fn bessel_j_raw(order: u32, x: f64) -> f64 {
    let n = f64::from(order);
    let f = |tau: f64| (n * tau - x * tau.sin()).cos();
    quadrature::composite_panels(&f, 0.0, PI, oscillation_panels(n, x)) / PI
}

/// Derivative through the differentiated angular representation,
/// J_n'(x) = (1/pi) int_0^pi sin(n tau - x sin tau) sin(tau) dtau, which
/// is the (J_{n-1} - J_{n+1})/2 recurrence folded into one integral.
/// Used on hot paths; agrees with the recurrence to roundoff.
pub(crate) fn bessel_j_prime_fused(order: u32, x: f64) -> f64 {
    let n = f64::from(order);
    let f = |tau: f64| (n * tau - x * tau.sin()).sin() * tau.sin();
    quadrature::composite_panels(&f, 0.0, PI, oscillation_panels(n, x)) / PI
}

pub(crate) fn cumulative_unit_raw(order: u32, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let n = f64::from(order);
    let half = 0.5 * z;
    let f = |tau: f64| {
        let s = tau.sin();
        (n * tau - half * s).cos() * sinc(half * s)
    };
    z * quadrature::composite_panels(&f, 0.0, PI, oscillation_panels(n, z)) / PI
}

/// int_0^Z J_n(x)/x dx for even n >= 2, with the two unit-weight integrals
/// of orders n -+ 1 folded into one through
/// cos((n-1)t - p) + cos((n+1)t - p) = 2 cos(nt - p) cos(t).
pub(crate) fn cumulative_inverse_raw(order: u32, z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let n = f64::from(order);
    let half = 0.5 * z;
    let f = |tau: f64| {
        let s = tau.sin();
        (n * tau - half * s).cos() * tau.cos() * sinc(half * s)
    };
    z * quadrature::composite_panels(&f, 0.0, PI, oscillation_panels(n, z)) / (n * PI)
}

/// Bessel function of the first kind J_order(x) for x >= 0.
pub fn bessel_j(order: u32, x: f64) -> Result<f64, NumericsError> {
    check_order(order)?;
    check_argument("bessel_j argument (must be nonnegative)", x)?;
    Ok(bessel_j_raw(order, x))
}

/// dJ_order/dx via J_n' = (J_{n-1} - J_{n+1})/2 for n >= 1 and J_0' = -J_1.
pub fn bessel_j_prime(order: u32, x: f64) -> Result<f64, NumericsError> {
    check_order(order)?;
    check_argument("bessel_j_prime argument (must be nonnegative)", x)?;
    Ok(match order {
        0 => -bessel_j_raw(1, x),
        n => 0.5 * (bessel_j_raw(n - 1, x) - bessel_j_raw(n + 1, x)),
    })
}

/// int_0^upper J_order(x) w(x) dx with w = 1 or 1/x, for positive even order.
/// The 1/x case is finite because J_order(x) vanishes like x^order at 0.
pub fn bessel_j_cumulative(
    order: u32,
    upper: f64,
    weight: CumulativeWeight,
) -> Result<f64, NumericsError> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(NumericsError::EvenOrderRequired { order });
    }
    check_order(order)?;
    check_argument(
        "bessel_j_cumulative upper limit (must be nonnegative)",
        upper,
    )?;
    Ok(match weight {
        CumulativeWeight::One => cumulative_unit_raw(order, upper),
        CumulativeWeight::InverseX => cumulative_inverse_raw(order, upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        assert!((bessel_j(0, 0.0).unwrap() - 1.0).abs() < 1e-14);
        for order in [1, 2, 5, 40] {
            assert!(bessel_j(order, 0.0).unwrap().abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_at_origin() {
        assert!(bessel_j_prime(0, 0.0).unwrap().abs() < 1e-13);
        assert!((bessel_j_prime(1, 0.0).unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn cumulative_over_empty_interval() {
        for weight in [CumulativeWeight::One, CumulativeWeight::InverseX] {
            assert_eq!(bessel_j_cumulative(4, 0.0, weight).unwrap(), 0.0);
        }
    }

    #[test]
    fn cumulative_requires_positive_even_order() {
        assert!(matches!(
            bessel_j_cumulative(3, 1.0, CumulativeWeight::One),
            Err(NumericsError::EvenOrderRequired { order: 3 })
        ));
        assert!(bessel_j_cumulative(0, 1.0, CumulativeWeight::One).is_err());
    }

    #[test]
    fn order_cap_reports_requested_order() {
        match bessel_j(BESSEL_ORDER_CAP + 1, 1.0) {
            Err(NumericsError::OrderCap { order, cap }) => {
                assert_eq!(order, BESSEL_ORDER_CAP + 1);
                assert_eq!(cap, BESSEL_ORDER_CAP);
            }
            other => panic!("expected order-cap error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_negative_argument() {
        assert!(bessel_j(2, -1.0).is_err());
        assert!(bessel_j_cumulative(2, -1.0, CumulativeWeight::One).is_err());
    }

    #[test]
    fn known_small_values() {
        // J_0(2.404825557695773) is the first zero of J_0.
        assert!(bessel_j(0, 2.404_825_557_695_773).unwrap().abs() < 1e-12);
        // J_1(1) = 0.4400505857449335...
        assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-12);
    }

    #[test]
    fn fused_derivative_matches_recurrence() {
        for (order, x) in [(1u32, 0.5), (2, 1.0), (10, 7.0), (41, 38.5), (200, 190.0)] {
            let rec = bessel_j_prime(order, x).unwrap();
            let fused = bessel_j_prime_fused(order, x);
            assert!(
                (rec - fused).abs() < 1e-13,
                "J'_{order}({x}): recurrence {rec} vs fused {fused}"
            );
        }
    }

    #[test]
    fn fused_inverse_weight_matches_split_form() {
        for (order, z) in [(2u32, 1.0), (4, 3.0), (20, 17.0), (100, 95.0)] {
            let split = (cumulative_unit_raw(order - 1, z) + cumulative_unit_raw(order + 1, z))
                / (2.0 * f64::from(order));
            let fused = cumulative_inverse_raw(order, z);
            assert!(
                (split - fused).abs() < 1e-13,
                "int J_{order}/x to {z}: split {split} vs fused {fused}"
            );
        }
    }
}
