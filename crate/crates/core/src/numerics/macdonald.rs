//! MacDonald functions (modified Bessel functions of the second kind) of
//! orders 1/3 and 2/3, and the tail integral of the order-1/3 function.
//!
//! Both are evaluated from the Laplace-type representation
//!
//! ```text
//! K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt,
//! ```
//!
//! truncated where the integrand has fallen below 1e-18 of its peak. The
//! tail integral reuses the same representation with the x-integration
//! carried out first, which removes the semi-infinite outer range:
//!
//! ```text
//! int_y^inf K_{1/3}(x) dx = int_0^inf exp(-y cosh t) cosh(t/3) / cosh(t) dt.
//! ```
//!
//! The full-line value (y = 0) is computed once by quadrature and cached;
//! it is never replaced by its closed form.

use std::sync::OnceLock;

use super::{quadrature, Bracket, NumericsError, Tolerance};

/// The two fractional orders supported by this kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MacdonaldOrder {
    OneThird,
    TwoThirds,
}

impl MacdonaldOrder {
    pub fn value(self) -> f64 {
        match self {
            MacdonaldOrder::OneThird => 1.0 / 3.0,
            MacdonaldOrder::TwoThirds => 2.0 / 3.0,
        }
    }
}

// -ln(1e-18); the integrand is dropped once it has decayed this much.
const PEAK_DROP: f64 = 42.0;

// Internal quadrature tolerance, tighter than the advertised 1e-12 so the
// combined error budget of products of K values stays below it.
fn kernel_tol() -> Tolerance {
    Tolerance {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        max_subdivisions: 4000,
    }
}

/// Overflow-safe ln(cosh(u)).
fn ln_cosh(u: f64) -> f64 {
    let a = u.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// Smallest t beyond which the (scaled) integrand stays below the peak drop.
/// `damped` adds the 1/cosh(t) factor of the tail representation.
fn truncation_point(x: f64, nu: f64, damped: bool) -> f64 {
    let decay = |t: f64| {
        let mut d = x * (t.cosh() - 1.0) - ln_cosh(nu * t);
        if damped {
            d += ln_cosh(t);
        }
        d
    };
    let mut t = 1.0;
    while decay(t) < PEAK_DROP && t < 600.0 {
        t *= 1.5;
    }
    t
}

fn integrate_kernel<F: Fn(f64) -> f64>(g: F, t_max: f64) -> f64 {
    let bracket = Bracket { lo: 0.0, hi: t_max };
    match quadrature::integrate_adaptive(g, bracket, kernel_tol()) {
        Ok(v) => v,
        // The kernels are smooth; if the subdivision cap is ever hit the
        // best estimate is still the right thing to hand back.
        Err(NumericsError::QuadratureNotConverged { estimate, .. }) => estimate,
        Err(_) => f64::NAN,
    }
}

/// K_nu(x) for x > 0, any nonnegative order. The e^{-x} peak is factored
/// out so the integrand is O(1) and relative accuracy survives large x.
pub(crate) fn macdonald_k_raw(nu: f64, x: f64) -> f64 {
    let t_max = truncation_point(x, nu, false);
    let g = move |t: f64| (ln_cosh(nu * t) - x * (t.cosh() - 1.0)).exp();
    (-x).exp() * integrate_kernel(g, t_max)
}

fn compute_tail(y: f64) -> f64 {
    let t_max = truncation_point(y, 1.0 / 3.0, true);
    let g = move |t: f64| (ln_cosh(t / 3.0) - ln_cosh(t) - y * (t.cosh() - 1.0)).exp();
    (-y).exp() * integrate_kernel(g, t_max)
}

static K13_FULL: OnceLock<f64> = OnceLock::new();

/// int_0^inf K_{1/3}(x) dx, computed once by quadrature.
pub(crate) fn k13_full_integral() -> f64 {
    *K13_FULL.get_or_init(|| compute_tail(0.0))
}

pub(crate) fn k13_tail_raw(y: f64) -> f64 {
    if y == 0.0 {
        k13_full_integral()
    } else {
        compute_tail(y)
    }
}

/// MacDonald function K_order(x) for x > 0.
pub fn macdonald_k(order: MacdonaldOrder, x: f64) -> Result<f64, NumericsError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(NumericsError::Domain {
            what: "macdonald_k argument (must be positive)",
            value: x,
        });
    }
    Ok(macdonald_k_raw(order.value(), x))
}

/// Tail integral int_y^inf K_{1/3}(x) dx for y >= 0.
pub fn macdonald_k13_tail(y: f64) -> Result<f64, NumericsError> {
    if !y.is_finite() || y < 0.0 {
        return Err(NumericsError::Domain {
            what: "macdonald_k13_tail lower limit (must be nonnegative)",
            value: y,
        });
    }
    Ok(k13_tail_raw(y))
}
