//! Property-style invariants over deterministic pseudo-random grids.

use srspec::exact::{self, BetaGamma, ChargeConfig};
use srspec::numerics::{
    bessel_j, bessel_j_prime, find_root, integrate_adaptive, macdonald_k, macdonald_k13_tail,
    maximize_unimodal, Bracket, MacdonaldOrder, Tolerance,
};
use srspec::ultra::{self, Polarization};
use srspec::widths;

/// Deterministic uniform samples in [0, 1).
fn lcg(state: &mut u64) -> f64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    (*state >> 11) as f64 / (1u64 << 53) as f64
}

#[test]
fn macdonald_positivity_and_monotonicity() {
    let mut seed = 1u64;
    for order in [MacdonaldOrder::OneThird, MacdonaldOrder::TwoThirds] {
        for _ in 0..100 {
            let x1 = 0.01 + 20.0 * lcg(&mut seed);
            let x2 = x1 + 0.01 + 5.0 * lcg(&mut seed);
            let k1 = macdonald_k(order, x1).unwrap();
            let k2 = macdonald_k(order, x2).unwrap();
            assert!(
                k2 > 0.0 && k2 < k1,
                "{order:?}: K({x2}) = {k2} vs K({x1}) = {k1}"
            );
        }
    }
}

#[test]
fn tail_additivity_on_random_intervals() {
    let tol = Tolerance::default();
    let mut seed = 2u64;
    for _ in 0..20 {
        let a = 10.0 * lcg(&mut seed);
        let b = a + 0.05 + (10.0 - a) * lcg(&mut seed);
        let lhs = macdonald_k13_tail(a).unwrap() - macdonald_k13_tail(b).unwrap();
        let rhs = integrate_adaptive(
            |x| macdonald_k(MacdonaldOrder::OneThird, x).unwrap(),
            Bracket::new(a, b).unwrap(),
            tol,
        )
        .unwrap();
        assert!(
            (lhs - rhs).abs() < 1e-10,
            "additivity on [{a}, {b}]: {lhs} vs {rhs}"
        );
    }
}

#[test]
fn bessel_three_term_recurrence() {
    // J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x)
    let mut seed = 3u64;
    for _ in 0..60 {
        let order = 1 + (lcg(&mut seed) * 60.0) as u32;
        let x = 0.05 + 50.0 * lcg(&mut seed);
        let lhs = bessel_j(order - 1, x).unwrap() + bessel_j(order + 1, x).unwrap();
        let rhs = 2.0 * f64::from(order) / x * bessel_j(order, x).unwrap();
        assert!(
            (lhs - rhs).abs() < 1e-10,
            "recurrence at n = {order}, x = {x}: {lhs} vs {rhs}"
        );
    }
    // A few high orders near the argument where the values are O(1e-2).
    for order in [500u32, 2000] {
        let x = 0.97 * f64::from(order);
        let lhs = bessel_j(order - 1, x).unwrap() + bessel_j(order + 1, x).unwrap();
        let rhs = 2.0 * f64::from(order) / x * bessel_j(order, x).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }
}

#[test]
fn bessel_derivative_matches_finite_differences() {
    let mut seed = 4u64;
    let h = 1e-5;
    for _ in 0..40 {
        let order = (lcg(&mut seed) * 20.0) as u32;
        let x = h + 30.0 * lcg(&mut seed);
        let fd = (bessel_j(order, x + h).unwrap() - bessel_j(order, x - h).unwrap()) / (2.0 * h);
        let jp = bessel_j_prime(order, x).unwrap();
        assert!(
            (jp - fd).abs() < 1e-7,
            "J_{order}'({x}): {jp} vs finite difference {fd}"
        );
    }
}

#[test]
fn solvers_bitwise_deterministic_on_spectral_functions() {
    let run_root = || {
        find_root(
            |y| ultra::spectral_density(Polarization::Total, y).unwrap() - 0.1,
            Bracket::new(0.001, 0.285).unwrap(),
            Tolerance::default(),
        )
        .unwrap()
        .to_bits()
    };
    assert_eq!(run_root(), run_root());

    let run_max = || {
        let (x, v) = maximize_unimodal(
            |y| ultra::spectral_density(Polarization::Sigma, y).unwrap(),
            Bracket::new(1e-4, 3.0).unwrap(),
            Tolerance::new(1e-10, 1e-10, 500).unwrap(),
        )
        .unwrap();
        (x.to_bits(), v.to_bits())
    };
    assert_eq!(run_max(), run_max());

    let run_width = || {
        let w = widths::effective_width(Polarization::Left).unwrap();
        (w.y1.to_bits(), w.y2.to_bits())
    };
    assert_eq!(run_width(), run_width());
}

#[test]
fn density_positive_on_dense_grid() {
    for s in Polarization::TABLE_ORDER {
        for i in 0..=600 {
            let y = 0.05 * f64::from(i);
            let f = ultra::spectral_density(s, y).unwrap();
            assert!(f >= 0.0, "F({s:?}, {y}) = {f}");
        }
    }
}

#[test]
fn cumulative_power_nondecreasing() {
    for s in Polarization::TABLE_ORDER {
        let mut prev = 0.0;
        for i in 0..=120 {
            let y = 0.025 * f64::from(i);
            let phi = ultra::cumulative_power(s, y).unwrap();
            assert!(phi >= prev - 1e-14, "Phi({s:?}) decreased at y = {y}");
            prev = phi;
        }
    }
}

#[test]
fn cumulative_power_matches_quadrature_across_grid() {
    let tol = Tolerance::new(1e-12, 1e-11, 4000).unwrap();
    for s in Polarization::TABLE_ORDER {
        for y in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let quad = integrate_adaptive(
                |x| ultra::spectral_density(s, x).unwrap(),
                Bracket::new(0.0, y).unwrap(),
                tol,
            )
            .unwrap();
            let closed = ultra::cumulative_power(s, y).unwrap();
            assert!(
                (quad - closed).abs() < 1e-8,
                "Phi({s:?}, {y}): {closed} vs {quad}"
            );
        }
    }
}

#[test]
fn circular_upper_half_space_dominance_at_finite_beta() {
    for beta in [0.3, 0.6, 0.9] {
        let bg = BetaGamma::from_beta(beta).unwrap();
        let nu_max = exact::converged_nu_max(&bg, 1e-6).unwrap();
        let sums = exact::total_fractions_exact_all(&bg, nu_max).unwrap();
        // Table order: [total, sigma, pi, left, right].
        assert!(
            sums[4].value > sums[3].value,
            "right circular must dominate the upper half-space at beta = {beta}"
        );
    }
}

#[test]
fn width_solution_orderings() {
    let rows: Vec<_> = Polarization::TABLE_ORDER
        .iter()
        .map(|&s| widths::summary_row(s).unwrap())
        .collect();
    let by = |f: fn(&widths::SummaryRow) -> f64| -> Vec<f64> { rows.iter().map(f).collect() };

    // Component order along the spectrum: pi < right < total < sigma < left,
    // i.e. indices 2, 4, 0, 1, 3 of the table order.
    let expect_increasing = |label: &str, v: &[f64]| {
        let ordered = [v[2], v[4], v[0], v[1], v[3]];
        for pair in ordered.windows(2) {
            assert!(pair[0] < pair[1], "{label} ordering violated: {ordered:?}");
        }
    };
    expect_increasing("a_max", &by(|r| r.a_max));
    expect_increasing("r1", &by(|r| r.r1));
    expect_increasing("eta_max", &by(|r| r.eta_max));

    for r in &rows {
        assert!(
            r.y1 < r.y_max && r.y_max < r.y2,
            "window must bracket the peak"
        );
        let ratio = r.r1 / r.r2;
        assert!(
            (1.75..=2.05).contains(&ratio),
            "r1/r2 = {ratio} out of range for {:?}",
            r.s
        );
        assert!(
            r.r3 > 0.5,
            "half-width power share r3 = {} for {:?}",
            r.r3,
            r.s
        );
    }
}

#[test]
fn effective_width_is_locally_minimal() {
    // Re-solve the half-power constraint with the left edge displaced by
    // +-1e-3; the window cannot get shorter than the solved one.
    let tol = Tolerance::new(1e-13, 1e-12, 300).unwrap();
    for s in Polarization::TABLE_ORDER {
        let w = widths::effective_width(s).unwrap();
        let half_power = 0.5 * ultra::total_fraction(s);
        for y1 in [w.y1 - 1e-3, w.y1 + 1e-3] {
            let target = ultra::cumulative_power(s, y1).unwrap() + half_power;
            let y2 = find_root(
                |y| ultra::cumulative_power(s, y).unwrap() - target,
                Bracket::new(y1 + 1e-9, 60.0).unwrap(),
                tol,
            )
            .unwrap();
            assert!(
                y2 - y1 >= w.delta - 1e-6,
                "{s:?}: window from y1 = {y1} is shorter: {} vs {}",
                y2 - y1,
                w.delta
            );
        }
    }
}

#[test]
fn discrete_window_matches_exhaustive_enumeration_at_low_gamma() {
    let bg = BetaGamma::from_gamma(1.5).unwrap();
    let nu_max = exact::converged_nu_max(&bg, 1e-8).unwrap();
    let cfg = ChargeConfig::electron_unit_orbit();
    for s in Polarization::TABLE_ORDER {
        let got = widths::discrete_effective_width(s, &bg, nu_max).unwrap();

        let terms: Vec<f64> = (1..=nu_max)
            .map(|nu| exact::harmonic_power_upper(s, &bg, nu, &cfg).unwrap())
            .collect();
        let denom = match s {
            Polarization::Sigma => (6.0 + bg.beta().powi(2)) / 16.0,
            Polarization::Pi => (2.0 - bg.beta().powi(2)) / 16.0,
            Polarization::Total => 0.5,
            _ => terms.iter().sum(),
        };
        let mut prefix = vec![0.0; terms.len() + 1];
        for (i, t) in terms.iter().enumerate() {
            prefix[i + 1] = prefix[i] + t / denom;
        }
        let mut best: Option<(u32, f64, u32, u32)> = None;
        for nu1 in 1..=terms.len() {
            for nu2 in nu1..=terms.len() {
                let cov = prefix[nu2] - prefix[nu1 - 1];
                if cov >= 0.5 {
                    let cand = ((nu2 - nu1 + 1) as u32, cov - 0.5, nu1 as u32, nu2 as u32);
                    if best.is_none_or(|(l, e, n1, _)| (cand.0, cand.1, cand.2) < (l, e, n1)) {
                        best = Some(cand);
                    }
                    break; // longer windows ending later can only be worse for this nu1
                }
            }
        }
        let (_, _, nu1, nu2) = best.unwrap();
        assert_eq!((got.nu1, got.nu2), (nu1, nu2), "window mismatch for {s:?}");
    }
}

#[test]
fn per_harmonic_powers_bridge_to_the_continuum_limit() {
    // At gamma = 10, (3 gamma^3 / 2) F_s(beta; nu) plotted against
    // y = 2 nu / (3 gamma^3) must land on the continuous densities.
    let bg = BetaGamma::from_gamma(10.0).unwrap();
    let cfg = ChargeConfig::electron_unit_orbit();
    let g3 = 1000.0;
    for nu in [300u32, 750, 1500] {
        let y = 2.0 * f64::from(nu) / (3.0 * g3);
        for s in Polarization::TABLE_ORDER {
            let scaled = 1.5 * g3 * exact::harmonic_power_upper(s, &bg, nu, &cfg).unwrap();
            let continuous = ultra::spectral_density(s, y).unwrap();
            assert!(
                ((scaled - continuous) / continuous).abs() < 0.03,
                "bridge at {s:?}, y = {y}: {scaled} vs {continuous}"
            );
        }
    }
}

#[test]
fn discrete_window_bridges_to_continuous_width() {
    // Diagnostic consistency with the continuum limit at gamma = 10: the
    // window length in harmonics over gamma^3 approaches the continuous
    // width coefficient. The +1 of the discrete length and the truncated
    // far tail keep this a ~1% statement, tested at 10%.
    let bg = BetaGamma::from_gamma(10.0).unwrap();
    let w = widths::discrete_effective_width(Polarization::Total, &bg, 4000).unwrap();
    let b_continuous = widths::effective_width(Polarization::Total).unwrap().b;
    let scaled = f64::from(w.lambda) / 1000.0;
    assert!(
        (scaled / b_continuous - 1.0).abs() < 0.10,
        "lambda/gamma^3 = {scaled} vs b = {b_continuous}"
    );
}
