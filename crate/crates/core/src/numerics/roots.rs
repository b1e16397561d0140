//! Bracketed root finding and unimodal maximization.

use super::{Bracket, NumericsError, Tolerance};

/// Find a root of `f` inside the bracket. Requires a sign change across the
/// bracket. Bisection guarantees containment and convergence; a secant step
/// is taken instead whenever it lands strictly inside the current bracket
/// and the bracket has kept halving.
///
/// The stopping width is `abs_tol`; `max_subdivisions` caps the iterations.
pub fn find_root<F>(f: F, bracket: Bracket, tol: Tolerance) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut width_two_ago = b - a;
    let mut width_prev = b - a;
    for _ in 0..tol.max_subdivisions {
        if b - a <= tol.abs_tol {
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        let secant = b - fb * (b - a) / (fb - fa);
        // Force a bisection step whenever secant progress has stalled.
        let stalled = b - a > 0.5 * width_two_ago;
        let x = if secant.is_finite() && secant > a && secant < b && !stalled {
            secant
        } else {
            0.5 * (a + b)
        };
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        width_two_ago = width_prev;
        width_prev = b - a;
    }
    Err(NumericsError::IterationLimit {
        limit: tol.max_subdivisions,
    })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Locate the interior maximum of a unimodal `f` on the bracket by golden
/// section, followed by one parabolic refinement on a wide three-point
/// stencil (the end-of-search stencil is too narrow for the curvature to
/// rise above evaluation noise).
///
/// Returns `(argmax, f(argmax))`. `abs_tol` is the x-tolerance.
pub fn maximize_unimodal<F>(
    f: F,
    bracket: Bracket,
    tol: Tolerance,
) -> Result<(f64, f64), NumericsError>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let span = b - a;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);

    let mut converged = false;
    for _ in 0..tol.max_subdivisions {
        if b - a <= tol.abs_tol {
            converged = true;
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if !converged {
        return Err(NumericsError::IterationLimit {
            limit: tol.max_subdivisions,
        });
    }

    let (mut best_x, mut best_f) = if fc >= fd { (c, fc) } else { (d, fd) };

    // Parabolic refinement across h ~ 1e-4 of the original span, clamped to
    // the original bracket.
    let h = 1e-4 * span;
    let x0 = best_x.clamp(bracket.lo + h, bracket.hi - h);
    let (fm, f0, fp) = (f(x0 - h), f(x0), f(x0 + h));
    let curvature = fm - 2.0 * f0 + fp;
    if curvature < 0.0 {
        let vertex = x0 + 0.5 * h * (fm - fp) / curvature;
        if vertex >= x0 - h && vertex <= x0 + h {
            let fv = f(vertex);
            if fv >= best_f {
                best_x = vertex;
                best_f = fv;
            }
        }
    }
    Ok((best_x, best_f))
}
