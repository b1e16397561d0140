//! Quantitative characteristics of the spectral distributions: maxima,
//! the effective width (the narrowest spectral window carrying half of a
//! component's power), the half-width at half-maximum, the derived power
//! fractions, and the discrete minimal-window width over harmonics at
//! finite velocity.
//!
//! Scaled frequencies translate to harmonic numbers through
//! nu = (3/2) y gamma^3, so every characteristic point y_k carries a
//! coefficient a_k = (3/2) y_k with nu_k = a_k gamma^3.

use crate::exact::{self, BetaGamma, ExactError};
use crate::numerics::{find_root, maximize_unimodal, Bracket, NumericsError, Tolerance};
use crate::ultra::{cumulative_raw, density_raw, total_fraction, Polarization};

/// Errors from the width solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WidthsError {
    #[error("failed to bracket {what} for component {component}")]
    BracketConstruction { what: &'static str, component: i8 },
    #[error("gamma must be finite and >= 1, got {0}")]
    GammaOutOfRange(f64),
    #[error("harmonic truncation at nu_max = {nu_max} covers only {coverage} of the total power")]
    TruncationInsufficient { nu_max: u32, coverage: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Solution of the effective-width system: equal densities at the window
/// edges and half the total power enclosed between them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthSolution {
    pub s: Polarization,
    pub y1: f64,
    pub y2: f64,
    pub delta: f64,
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub residual_power: f64,
    pub residual_density: f64,
}

/// The two points where the density crosses half of its peak value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfWidthSolution {
    pub s: Polarization,
    pub y3: f64,
    pub y4: f64,
    pub d: f64,
}

/// All summary-table quantities for one polarization component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub s: Polarization,
    pub y_max: f64,
    pub f_at_max: f64,
    pub phi_at_max: f64,
    pub eta_max: f64,
    pub y1: f64,
    pub f_at_y1: f64,
    pub phi_at_y1: f64,
    pub eta1: f64,
    pub y2: f64,
    pub phi_at_y2: f64,
    pub eta2: f64,
    pub y3: f64,
    pub phi_at_y3: f64,
    pub eta3: f64,
    pub y4: f64,
    pub phi_at_y4: f64,
    pub eta4: f64,
    pub a_max: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b: f64,
    pub d: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// Minimal harmonic window [nu1, nu2] whose partial contributions sum to
/// at least one half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteWindow {
    pub s: Polarization,
    pub beta: f64,
    pub nu1: u32,
    pub nu2: u32,
    pub lambda: u32,
    pub coverage: f64,
    pub excess: f64,
}

/// Named scaling coefficients of the characteristic points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingCoefficient {
    AMax,
    A1,
    A2,
    A3,
    A4,
}

// Search interval for the spectral maxima; every component peaks well
// inside it.
const MAX_BRACKET: (f64, f64) = (1e-4, 3.0);

/// Default x-tolerance of the width solvers.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-13;

fn root_tol(solver_tol: f64) -> Tolerance {
    Tolerance {
        abs_tol: solver_tol,
        rel_tol: 1e-12,
        max_subdivisions: 300,
    }
}

fn maximizer_tol(solver_tol: f64) -> Tolerance {
    Tolerance {
        abs_tol: solver_tol.max(1e-10),
        rel_tol: 1e-10,
        max_subdivisions: 500,
    }
}

/// Location and value of the spectral maximum of component `s`.
pub fn find_spectrum_maximum(s: Polarization) -> Result<(f64, f64), WidthsError> {
    find_spectrum_maximum_with(s, DEFAULT_SOLVER_TOL)
}

/// [`find_spectrum_maximum`] with an explicit solver x-tolerance.
pub fn find_spectrum_maximum_with(
    s: Polarization,
    solver_tol: f64,
) -> Result<(f64, f64), WidthsError> {
    let bracket = Bracket::new(MAX_BRACKET.0, MAX_BRACKET.1)?;
    let (y_max, f_max) =
        maximize_unimodal(|y| density_raw(s, y), bracket, maximizer_tol(solver_tol))?;
    Ok((y_max, f_max))
}

/// For a fixed left edge y1 < y_max, the unique y2 > y_max with
/// F(y2) = F(y1). The density is strictly decreasing past the peak.
fn matching_right_edge(
    s: Polarization,
    y_max: f64,
    y1: f64,
    solver_tol: f64,
) -> Result<f64, WidthsError> {
    let target = density_raw(s, y1);
    let mut hi = y_max + 0.5;
    let mut step = 0.5;
    while density_raw(s, hi) >= target {
        step *= 2.0;
        hi += step;
        if hi > 300.0 {
            return Err(WidthsError::BracketConstruction {
                what: "matching right window edge",
                component: s.index(),
            });
        }
    }
    let root = find_root(
        |y| density_raw(s, y) - target,
        Bracket::new(y_max, hi)?,
        root_tol(solver_tol),
    )?;
    Ok(root)
}

/// Solve the effective-width system for component `s`: find y1 < y2 with
/// F(y1) = F(y2) and Phi(y2) - Phi(y1) = Phi_total/2. The window is the
/// narrowest interval carrying half the power; equal edge densities are
/// the stationarity condition of the window length.
///
/// Strategy: nested bisection. The inner solve maps y1 to the matching
/// right edge y2(y1); the outer residual Phi(y2(y1)) - Phi(y1) - Phi/2 is
/// monotone decreasing in y1 (from +Phi/2 toward -Phi/2 as y1 -> y_max).
pub fn effective_width(s: Polarization) -> Result<WidthSolution, WidthsError> {
    effective_width_with(s, DEFAULT_SOLVER_TOL)
}

/// [`effective_width`] with an explicit solver x-tolerance.
pub fn effective_width_with(
    s: Polarization,
    solver_tol: f64,
) -> Result<WidthSolution, WidthsError> {
    let (y_max, _) = find_spectrum_maximum_with(s, solver_tol)?;
    let half_power = 0.5 * total_fraction(s);
    let residual = |y1: f64| -> Result<f64, WidthsError> {
        let y2 = matching_right_edge(s, y_max, y1, solver_tol)?;
        Ok(cumulative_raw(s, y2) - cumulative_raw(s, y1) - half_power)
    };

    // Walk toward the peak until the residual turns negative.
    let mut lo = 1e-6;
    if residual(lo)? <= 0.0 {
        return Err(WidthsError::BracketConstruction {
            what: "left window edge (residual sign at the seed)",
            component: s.index(),
        });
    }
    let mut hi = lo;
    let mut found = false;
    for k in 1..=31 {
        hi = y_max * f64::from(k) / 32.0;
        if residual(hi)? < 0.0 {
            found = true;
            break;
        }
        lo = hi;
    }
    if !found {
        return Err(WidthsError::BracketConstruction {
            what: "left window edge",
            component: s.index(),
        });
    }

    let solver_error = std::cell::RefCell::new(None);
    let y1 = find_root(
        |y| match residual(y) {
            Ok(v) => v,
            Err(e) => {
                solver_error.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        Bracket::new(lo, hi)?,
        root_tol(solver_tol),
    );
    if let Some(e) = solver_error.into_inner() {
        return Err(e);
    }
    let y1 = y1?;
    let y2 = matching_right_edge(s, y_max, y1, solver_tol)?;

    let residual_power = (cumulative_raw(s, y2) - cumulative_raw(s, y1) - half_power).abs();
    let residual_density = (density_raw(s, y2) - density_raw(s, y1)).abs();
    let a1 = 1.5 * y1;
    let a2 = 1.5 * y2;
    Ok(WidthSolution {
        s,
        y1,
        y2,
        delta: y2 - y1,
        a1,
        a2,
        b: a2 - a1,
        residual_power,
        residual_density,
    })
}

/// The two points where F drops to half its maximum, bracketing the peak.
pub fn half_width(s: Polarization) -> Result<HalfWidthSolution, WidthsError> {
    half_width_with(s, DEFAULT_SOLVER_TOL)
}

/// [`half_width`] with an explicit solver x-tolerance.
pub fn half_width_with(s: Polarization, solver_tol: f64) -> Result<HalfWidthSolution, WidthsError> {
    let (y_max, f_max) = find_spectrum_maximum_with(s, solver_tol)?;
    let target = 0.5 * f_max;

    let mut lo = 0.5 * y_max;
    while density_raw(s, lo) >= target {
        lo *= 0.5;
        if lo < 1e-12 {
            return Err(WidthsError::BracketConstruction {
                what: "left half-maximum crossing",
                component: s.index(),
            });
        }
    }
    let y3 = find_root(
        |y| density_raw(s, y) - target,
        Bracket::new(lo, y_max)?,
        root_tol(solver_tol),
    )?;

    let mut hi = y_max + 0.5;
    let mut step = 0.5;
    while density_raw(s, hi) >= target {
        step *= 2.0;
        hi += step;
        if hi > 300.0 {
            return Err(WidthsError::BracketConstruction {
                what: "right half-maximum crossing",
                component: s.index(),
            });
        }
    }
    let y4 = find_root(
        |y| density_raw(s, y) - target,
        Bracket::new(y_max, hi)?,
        root_tol(solver_tol),
    )?;

    Ok(HalfWidthSolution {
        s,
        y3,
        y4,
        d: 1.5 * (y4 - y3),
    })
}

/// Assemble every summary-table quantity for component `s`.
pub fn summary_row(s: Polarization) -> Result<SummaryRow, WidthsError> {
    summary_row_with(s, DEFAULT_SOLVER_TOL)
}

/// [`summary_row`] with an explicit solver x-tolerance.
pub fn summary_row_with(s: Polarization, solver_tol: f64) -> Result<SummaryRow, WidthsError> {
    let (y_max, f_at_max) = find_spectrum_maximum_with(s, solver_tol)?;
    let width = effective_width_with(s, solver_tol)?;
    let half = half_width_with(s, solver_tol)?;
    let total = total_fraction(s);

    let phi_at_max = cumulative_raw(s, y_max);
    let phi_at_y1 = cumulative_raw(s, width.y1);
    let phi_at_y2 = cumulative_raw(s, width.y2);
    let phi_at_y3 = cumulative_raw(s, half.y3);
    let phi_at_y4 = cumulative_raw(s, half.y4);

    let eta_max = phi_at_max / total;
    let eta1 = phi_at_y1 / total;
    let eta2 = phi_at_y2 / total;
    let eta3 = phi_at_y3 / total;
    let eta4 = phi_at_y4 / total;

    let a_max = 1.5 * y_max;
    let a3 = 1.5 * half.y3;
    let a4 = 1.5 * half.y4;

    Ok(SummaryRow {
        s,
        y_max,
        f_at_max,
        phi_at_max,
        eta_max,
        y1: width.y1,
        f_at_y1: density_raw(s, width.y1),
        phi_at_y1,
        eta1,
        y2: width.y2,
        phi_at_y2,
        eta2,
        y3: half.y3,
        phi_at_y3,
        eta3,
        y4: half.y4,
        phi_at_y4,
        eta4,
        a_max,
        a1: width.a1,
        a2: width.a2,
        a3,
        a4,
        b: width.b,
        d: half.d,
        r1: (a_max - width.a1) / width.b,
        r2: eta_max - eta1,
        r3: eta4 - eta3,
    })
}

/// Harmonic number (as a real) of a characteristic point at relativistic
/// factor `gamma`: coefficient * gamma^3.
pub fn harmonic_scaling(
    s: Polarization,
    gamma: f64,
    coefficient: ScalingCoefficient,
) -> Result<f64, WidthsError> {
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(WidthsError::GammaOutOfRange(gamma));
    }
    let row = summary_row(s)?;
    let a = match coefficient {
        ScalingCoefficient::AMax => row.a_max,
        ScalingCoefficient::A1 => row.a1,
        ScalingCoefficient::A2 => row.a2,
        ScalingCoefficient::A3 => row.a3,
        ScalingCoefficient::A4 => row.a4,
    };
    Ok(a * gamma.powi(3))
}

/// Normalize raw per-harmonic powers into partial contributions. Returns
/// the partials and the fraction of the component's power that lies
/// beyond the truncation point.
///
/// The denominator is the closed-form total where one exists; there the
/// dropped fraction is known exactly and a long truncation is tolerable
/// (the window scan certifies optimality against the tail separately).
/// For the circular components the denominator is the truncated sum
/// itself, so its tail estimate must already be negligible.
fn partials_checked(
    s: Polarization,
    bg: &BetaGamma,
    nu_max: u32,
    terms: &[f64],
) -> Result<(Vec<f64>, f64), WidthsError> {
    let sum: f64 = terms.iter().sum();
    let (denominator, dropped) = match exact::closed_total_fraction(s, bg.beta()) {
        Some(total) => (total, (1.0 - sum / total).max(0.0)),
        None => {
            let estimate = exact::total_fraction_exact(s, bg, nu_max)?;
            if !estimate.is_converged(1e-8) {
                return Err(WidthsError::TruncationInsufficient {
                    nu_max,
                    coverage: sum / (sum + estimate.tail_estimate),
                });
            }
            (sum, estimate.tail_estimate / sum)
        }
    };
    Ok((terms.iter().map(|t| t / denominator).collect(), dropped))
}

/// Two-pointer sliding-window scan over the partial contributions. Ties on
/// the window length are broken by the smaller excess over one half, then
/// by the smaller starting harmonic. Coverages come from prefix-sum
/// differences so equal windows always compare exactly equal.
fn minimal_window(
    s: Polarization,
    beta: f64,
    nu_max: u32,
    partials: &[f64],
    dropped: f64,
) -> Result<DiscreteWindow, WidthsError> {
    let n = partials.len();
    let mut prefix = vec![0.0; n + 1];
    for (i, p) in partials.iter().enumerate() {
        prefix[i + 1] = prefix[i] + p;
    }

    let target = 0.5;
    let mut best: Option<(u32, f64, u32, u32)> = None; // (length, excess, nu1, nu2)
    let mut lo = 1usize;
    for hi in 1..=n {
        // Shrink from the left while the window still meets the target.
        while lo < hi && prefix[hi] - prefix[lo] >= target {
            lo += 1;
        }
        let cov = prefix[hi] - prefix[lo - 1];
        if cov >= target {
            let candidate = ((hi - lo + 1) as u32, cov - target, lo as u32, hi as u32);
            let better = match &best {
                None => true,
                Some((blen, bexc, bnu1, _)) => {
                    (candidate.0, candidate.1, candidate.2) < (*blen, *bexc, *bnu1)
                }
            };
            if better {
                best = Some(candidate);
            }
        }
    }

    let (lambda, excess, nu1, nu2) = best.ok_or(WidthsError::TruncationInsufficient {
        nu_max,
        coverage: prefix[n],
    })?;

    // Certify the window against the unseen tail: any window of the same
    // length ending past nu_max carries at most the trailing in-range mass
    // plus the dropped fraction. If that cannot reach one half, no tail
    // window can compete on length, let alone on excess.
    let trailing = prefix[n] - prefix[n - (lambda as usize).min(n)];
    if trailing + dropped >= target {
        return Err(WidthsError::TruncationInsufficient {
            nu_max,
            coverage: prefix[n],
        });
    }

    Ok(DiscreteWindow {
        s,
        beta,
        nu1,
        nu2,
        lambda,
        coverage: excess + target,
        excess,
    })
}

/// Minimal harmonic window covering at least half of the component's
/// upper-half-space power.
pub fn discrete_effective_width(
    s: Polarization,
    bg: &BetaGamma,
    nu_max: u32,
) -> Result<DiscreteWindow, WidthsError> {
    let terms: Vec<f64> = (1..=nu_max)
        .map(|nu| exact::upper_power_electron(s, bg, nu))
        .collect::<Result<_, _>>()?;
    let (partials, dropped) = partials_checked(s, bg, nu_max, &terms)?;
    minimal_window(s, bg.beta(), nu_max, &partials, dropped)
}

/// Minimal windows of all five components in table order, evaluating the
/// per-harmonic Bessel primitives once.
pub fn discrete_effective_width_all(
    bg: &BetaGamma,
    nu_max: u32,
) -> Result<[DiscreteWindow; 5], WidthsError> {
    let mut columns: [Vec<f64>; 5] = std::array::from_fn(|_| Vec::with_capacity(nu_max as usize));
    for nu in 1..=nu_max {
        let all = exact::upper_all_electron(bg, nu)?;
        for (k, t) in all.into_iter().enumerate() {
            columns[k].push(t);
        }
    }
    let mut out = [DiscreteWindow {
        s: Polarization::Total,
        beta: bg.beta(),
        nu1: 0,
        nu2: 0,
        lambda: 0,
        coverage: 0.0,
        excess: 0.0,
    }; 5];
    for (k, s) in Polarization::TABLE_ORDER.into_iter().enumerate() {
        let (partials, dropped) = partials_checked(s, bg, nu_max, &columns[k])?;
        out[k] = minimal_window(s, bg.beta(), nu_max, &partials, dropped)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_harmonic_window_at_low_beta() {
        // Slow motion radiates almost entirely into the first harmonic.
        let bg = BetaGamma::from_beta(0.1).unwrap();
        let w = discrete_effective_width(Polarization::Total, &bg, 50).unwrap();
        assert_eq!((w.nu1, w.nu2), (1, 1));
        assert_eq!(w.lambda, 1);
        assert!(w.coverage >= 0.5);
        assert_eq!(w.excess, w.coverage - 0.5);
    }

    #[test]
    fn harmonic_scaling_at_unit_gamma() {
        let row = summary_row(Polarization::Pi).unwrap();
        let a1 = harmonic_scaling(Polarization::Pi, 1.0, ScalingCoefficient::A1).unwrap();
        assert_eq!(a1, row.a1);
        assert!(harmonic_scaling(Polarization::Pi, 0.5, ScalingCoefficient::A1).is_err());
    }

    #[test]
    fn width_solution_invariants() {
        let w = effective_width(Polarization::Total).unwrap();
        let (y_max, _) = find_spectrum_maximum(Polarization::Total).unwrap();
        assert!(w.y1 < y_max && y_max < w.y2);
        assert!(
            w.residual_power < 1e-10,
            "power residual {}",
            w.residual_power
        );
        assert!(
            w.residual_density < 1e-10,
            "density residual {}",
            w.residual_density
        );
        assert!((w.delta - (w.y2 - w.y1)).abs() < 1e-15);
        assert!((w.b - 1.5 * w.delta).abs() < 1e-12);
    }

    #[test]
    fn half_width_crossings_sit_at_half_maximum() {
        for s in Polarization::TABLE_ORDER {
            let (_, f_max) = find_spectrum_maximum(s).unwrap();
            let h = half_width(s).unwrap();
            assert!(h.y3 < h.y4);
            let f3 = crate::ultra::density_raw(s, h.y3);
            let f4 = crate::ultra::density_raw(s, h.y4);
            assert!((f3 - 0.5 * f_max).abs() < 1e-10, "{s:?}: f3 = {f3}");
            assert!((f4 - 0.5 * f_max).abs() < 1e-10, "{s:?}: f4 = {f4}");
        }
    }

    #[test]
    fn truncation_guard_fires() {
        // gamma = 2 radiates far past nu = 3, so the coverage check trips.
        let bg = BetaGamma::from_gamma(2.0).unwrap();
        assert!(matches!(
            discrete_effective_width(Polarization::Total, &bg, 3),
            Err(WidthsError::TruncationInsufficient { .. })
        ));
    }
}
