//! The verification suite behind `srspec verify`: runs the invariant and
//! oracle checks of every module and reports one measured value per check
//! against its contractual bound.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use srspec::exact::{self, BetaGamma, ChargeConfig};
use srspec::numerics::{
    bessel_j, bessel_j_prime, find_root, integrate_adaptive, macdonald_k, macdonald_k13_tail,
    Bracket, MacdonaldOrder, Tolerance,
};
use srspec::ultra::{self, Polarization};
use srspec::widths::{self, SummaryRow};

use crate::commands::{table_quantity, Format};
use crate::format::{csv_table, format_sig, Json};
use crate::reference::SUMMARY_TABLE;

const SQRT_3: f64 = 1.732_050_807_568_877_3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Fast => "fast",
            Level::Full => "full",
        }
    }
}

/// One executed check: passes when `measured <= bound`.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.bound
    }
}

/// The full result of a verification run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub level: Level,
    pub solver_tol: f64,
    pub checks: Vec<Check>,
    pub wall: Duration,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Deterministic report body (stdout). The wall time is excluded so
    /// reruns are byte-identical; it travels in [`RunReport::meta`].
    pub fn body(&self, format: Format, precision: usize) -> String {
        match format {
            Format::Csv => {
                let header: Vec<String> = ["check", "status", "measured", "bound"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                let rows: Vec<Vec<String>> = self
                    .checks
                    .iter()
                    .map(|c| {
                        vec![
                            c.name.to_string(),
                            if c.passed() { "PASS" } else { "FAIL" }.to_string(),
                            format_sig(c.measured, precision),
                            format_sig(c.bound, precision),
                        ]
                    })
                    .collect();
                csv_table(&header, &rows)
            }
            Format::Json => {
                let passed = self.checks.iter().filter(|c| c.passed()).count();
                Json::Obj(vec![
                    ("command".into(), Json::Str(self.command.clone())),
                    ("level".into(), Json::Str(self.level.name().into())),
                    ("solver_tol".into(), Json::Num(self.solver_tol, precision)),
                    (
                        "checks".into(),
                        Json::Arr(
                            self.checks
                                .iter()
                                .map(|c| {
                                    Json::Obj(vec![
                                        ("name".into(), Json::Str(c.name.into())),
                                        (
                                            "status".into(),
                                            Json::Str(
                                                if c.passed() { "PASS" } else { "FAIL" }.into(),
                                            ),
                                        ),
                                        ("measured".into(), Json::Num(c.measured, precision)),
                                        ("bound".into(), Json::Num(c.bound, precision)),
                                    ])
                                })
                                .collect(),
                        ),
                    ),
                    ("passed".into(), Json::Int(passed as i64)),
                    (
                        "failed".into(),
                        Json::Int((self.checks.len() - passed) as i64),
                    ),
                    (
                        "wall_time_ms".into(),
                        Json::Int(self.wall.as_millis() as i64),
                    ),
                ])
                .render()
            }
        }
    }

    /// Run metadata, kept off stdout so the body stays reproducible.
    pub fn meta(&self) -> String {
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        format!(
            "{}: level {}, solver tolerance {:.1e}: {} of {} checks passed in {:?}\n",
            self.command,
            self.level.name(),
            self.solver_tol,
            passed,
            self.checks.len(),
            self.wall
        )
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &'static str, measured: f64, bound: f64) {
        self.checks.push(Check {
            name,
            measured,
            bound,
        });
    }
}

pub fn run(level: Level, solver_tol: f64) -> RunReport {
    let start = Instant::now();
    let mut suite = Suite { checks: Vec::new() };
    let quad_tol = Tolerance::new(1e-12, 1e-11, 4000).unwrap();
    let electron = ChargeConfig::electron_unit_orbit();

    // Numerics kernel.
    let tail0 = macdonald_k13_tail(0.0).unwrap();
    suite.record(
        "macdonald-tail-closed-form",
        (tail0 - PI / SQRT_3).abs(),
        1e-10,
    );

    let mut worst = f64::NEG_INFINITY;
    for x in [0.5, 1.0, 2.0] {
        let gap = macdonald_k(MacdonaldOrder::OneThird, x).unwrap()
            - macdonald_k(MacdonaldOrder::TwoThirds, x).unwrap();
        worst = worst.max(gap);
    }
    suite.record("macdonald-order-monotonic", worst, 0.0);

    let mut worst = 0.0f64;
    for (a, b) in [(0.1, 1.0), (1.0, 3.0), (2.5, 8.0)] {
        let lhs = macdonald_k13_tail(a).unwrap() - macdonald_k13_tail(b).unwrap();
        let rhs = integrate_adaptive(
            |x| macdonald_k(MacdonaldOrder::OneThird, x).unwrap(),
            Bracket::new(a, b).unwrap(),
            quad_tol,
        )
        .unwrap();
        worst = worst.max((lhs - rhs).abs());
    }
    suite.record("macdonald-tail-additivity", worst, 1e-10);

    let mut worst = 0.0f64;
    for (order, x) in [(1u32, 0.7), (5, 3.0), (12, 11.0), (40, 35.0)] {
        let lhs = bessel_j(order - 1, x).unwrap() + bessel_j(order + 1, x).unwrap();
        let rhs = 2.0 * f64::from(order) / x * bessel_j(order, x).unwrap();
        worst = worst.max((lhs - rhs).abs());
    }
    suite.record("bessel-recurrence", worst, 1e-10);

    let h = 1e-5;
    let mut worst = 0.0f64;
    for (order, x) in [(0u32, 1.0), (3, 2.0), (8, 6.5)] {
        let fd = (bessel_j(order, x + h).unwrap() - bessel_j(order, x - h).unwrap()) / (2.0 * h);
        worst = worst.max((bessel_j_prime(order, x).unwrap() - fd).abs());
    }
    suite.record("bessel-derivative-fd", worst, 1e-7);

    // Exact total fractions.
    let closed = [
        (Polarization::Sigma, 7.0 / 16.0),
        (Polarization::Pi, 1.0 / 16.0),
        (Polarization::Total, 0.5),
        (Polarization::Right, 0.25 * (1.0 + SQRT_3 / PI)),
        (Polarization::Left, 0.25 * (1.0 - SQRT_3 / PI)),
    ];
    let worst = closed
        .iter()
        .map(|&(s, v)| (ultra::total_fraction(s) - v).abs())
        .fold(0.0f64, f64::max);
    suite.record("total-fractions-closed-form", worst, 1e-12);

    let worst = ((ultra::total_fraction(Polarization::Right) - 0.3878322).abs())
        .max((ultra::total_fraction(Polarization::Left) - 0.1121678).abs());
    suite.record("total-fractions-printed", worst, 5e-8);

    // Density structure on a grid.
    let mut worst_sum = 0.0f64;
    let mut worst_neg = f64::NEG_INFINITY;
    let mut worst_circ = f64::NEG_INFINITY;
    for i in 0..=300 {
        let y = 0.01 * f64::from(i);
        let total = ultra::spectral_density(Polarization::Total, y).unwrap();
        let sigma = ultra::spectral_density(Polarization::Sigma, y).unwrap();
        let pi_lin = ultra::spectral_density(Polarization::Pi, y).unwrap();
        let right = ultra::spectral_density(Polarization::Right, y).unwrap();
        let left = ultra::spectral_density(Polarization::Left, y).unwrap();
        worst_sum = worst_sum
            .max((total - sigma - pi_lin).abs())
            .max((total - right - left).abs());
        worst_neg = worst_neg
            .max(-total)
            .max(-sigma)
            .max(-pi_lin)
            .max(-right)
            .max(-left);
        worst_circ = worst_circ.max(left - right);
    }
    suite.record("density-sum-rules", worst_sum, 1e-12);
    suite.record("density-positivity", worst_neg, 0.0);
    suite.record("density-circular-dominance", worst_circ, 0.0);

    // Cumulative power against quadrature and differentiation.
    let mut worst = 0.0f64;
    for s in Polarization::TABLE_ORDER {
        for y in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let quad = integrate_adaptive(
                |x| ultra::spectral_density(s, x).unwrap(),
                Bracket::new(0.0, y).unwrap(),
                quad_tol,
            )
            .unwrap();
            worst = worst.max((quad - ultra::cumulative_power(s, y).unwrap()).abs());
        }
    }
    suite.record("cumulative-vs-quadrature", worst, 1e-8);

    let h = 1e-4;
    let mut worst = 0.0f64;
    for s in Polarization::TABLE_ORDER {
        for y in [0.2, 0.5, 1.0] {
            let fd = (ultra::cumulative_power(s, y + h).unwrap()
                - ultra::cumulative_power(s, y - h).unwrap())
                / (2.0 * h);
            worst = worst.max((fd - ultra::spectral_density(s, y).unwrap()).abs());
        }
    }
    suite.record("cumulative-derivative-is-density", worst, 1e-6);

    let worst = Polarization::TABLE_ORDER
        .iter()
        .map(|&s| (ultra::cumulative_power(s, 30.0).unwrap() - ultra::total_fraction(s)).abs())
        .fold(0.0f64, f64::max);
    suite.record("cumulative-saturation", worst, 1e-9);

    // Width system.
    let rows: Vec<SummaryRow> = Polarization::TABLE_ORDER
        .iter()
        .map(|&s| widths::summary_row_with(s, solver_tol).unwrap())
        .collect();

    let mut worst = 0.0f64;
    for s in Polarization::TABLE_ORDER {
        let w = widths::effective_width_with(s, solver_tol).unwrap();
        worst = worst.max(w.residual_power).max(w.residual_density);
    }
    suite.record("effective-width-residuals", worst, 1e-10);

    let root_tol = Tolerance::new(1e-13, 1e-12, 300).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for s in Polarization::TABLE_ORDER {
        let w = widths::effective_width_with(s, solver_tol).unwrap();
        let half_power = 0.5 * ultra::total_fraction(s);
        for y1 in [w.y1 - 1e-3, w.y1 + 1e-3] {
            let target = ultra::cumulative_power(s, y1).unwrap() + half_power;
            let y2 = find_root(
                |y| ultra::cumulative_power(s, y).unwrap() - target,
                Bracket::new(y1 + 1e-9, 60.0).unwrap(),
                root_tol,
            )
            .unwrap();
            worst = worst.max(w.delta - (y2 - y1));
        }
    }
    suite.record("effective-width-minimality", worst, 1e-6);

    let mut worst = 0.0f64;
    for row in &rows {
        let (_, f_max) = widths::find_spectrum_maximum_with(row.s, solver_tol).unwrap();
        let f3 = ultra::spectral_density(row.s, row.y3).unwrap();
        let f4 = ultra::spectral_density(row.s, row.y4).unwrap();
        worst = worst
            .max((f3 - 0.5 * f_max).abs())
            .max((f4 - 0.5 * f_max).abs());
    }
    suite.record("half-width-residuals", worst, 1e-10);

    // b(left) / b(pi) ~ 1.76.
    let ratio = rows[3].b / rows[2].b;
    suite.record("width-ratio-left-over-pi", (ratio - 1.76).abs(), 0.01);

    // Orderings along the spectrum: pi < right < total < sigma < left.
    let order = [2usize, 4, 0, 1, 3];
    let mut worst = f64::NEG_INFINITY;
    for get in [
        (|r: &SummaryRow| r.a_max) as fn(&SummaryRow) -> f64,
        |r| r.r1,
        |r| r.eta_max,
    ] {
        let v: Vec<f64> = order.iter().map(|&i| get(&rows[i])).collect();
        for pair in v.windows(2) {
            worst = worst.max(pair[0] - pair[1]);
        }
    }
    suite.record("component-orderings", worst, 0.0);

    // Summary-table regression.
    let mut worst = 0.0f64;
    for (quantity, expected) in SUMMARY_TABLE {
        for (k, row) in rows.iter().enumerate() {
            let rel = ((table_quantity(row, quantity) - expected[k]) / expected[k]).abs();
            worst = worst.max(rel);
        }
    }
    suite.record("summary-table-regression", worst, 1e-4);

    // Headline percentages.
    let right_share = 100.0 * ultra::total_fraction(Polarization::Right)
        / (ultra::total_fraction(Polarization::Right) + ultra::total_fraction(Polarization::Left));
    let worst = (right_share - 77.6)
        .abs()
        .max(((100.0 - right_share) - 22.4).abs())
        .max((100.0 * rows[3].eta_max - 20.2).abs())
        .max((100.0 * rows[2].eta_max - 11.0).abs());
    suite.record("headline-percentages", worst, 0.1);

    // Finite-velocity closed forms against theta-quadrature.
    let mut worst = 0.0f64;
    for beta in [0.3, 0.6, 0.9] {
        let bg = BetaGamma::from_beta(beta).unwrap();
        for nu in [1u32, 2, 5, 10] {
            for s in Polarization::TABLE_ORDER {
                let closed = exact::harmonic_power_upper(s, &bg, nu, &electron).unwrap();
                let quad = integrate_adaptive(
                    |theta| {
                        exact::angular_density(s, &bg, nu, theta, &electron).unwrap() * theta.sin()
                    },
                    Bracket::new(0.0, 0.5 * PI).unwrap(),
                    quad_tol,
                )
                .unwrap();
                worst = worst.max((closed - quad).abs());
            }
        }
    }
    suite.record("harmonic-power-vs-quadrature", worst, 1e-8);

    // Half-space swap relations are definitional pass-throughs.
    let bg = BetaGamma::from_beta(0.7).unwrap();
    let mut worst = 0.0f64;
    for nu in [1u32, 4] {
        for s in Polarization::TABLE_ORDER {
            let mirrored = match s {
                Polarization::Right => Polarization::Left,
                Polarization::Left => Polarization::Right,
                other => other,
            };
            let lower = exact::harmonic_power_lower(s, &bg, nu, &electron).unwrap();
            let upper = exact::harmonic_power_upper(mirrored, &bg, nu, &electron).unwrap();
            worst = worst.max((lower - upper).abs());
        }
    }
    suite.record("half-space-swap", worst, 0.0);

    // Harmonic sums against the exact totals.
    let mut worst = 0.0f64;
    for beta in [0.3, 0.9] {
        let bg = BetaGamma::from_beta(beta).unwrap();
        let nu_max = exact::converged_nu_max(&bg, 1e-8).unwrap();
        let sums = exact::total_fractions_exact_all(&bg, nu_max).unwrap();
        worst = worst
            .max((sums[0].value - 0.5).abs())
            .max((sums[1].value - (6.0 + beta * beta) / 16.0).abs())
            .max((sums[2].value - (2.0 - beta * beta) / 16.0).abs())
            .max((sums[3].value + sums[4].value - 0.5).abs());
    }
    suite.record("harmonic-sums-exact-totals", worst, 1e-6);

    // Partial contributions normalize and concentrate at low beta.
    let bg = BetaGamma::from_beta(0.5).unwrap();
    let nu_max = exact::converged_nu_max(&bg, 1e-8).unwrap();
    let mut worst = 0.0f64;
    for s in Polarization::TABLE_ORDER {
        let sum: f64 = (1..=nu_max)
            .map(|nu| exact::partial_contribution(s, &bg, nu, nu_max).unwrap())
            .sum();
        worst = worst.max((sum - 1.0).abs());
    }
    suite.record("partial-contribution-normalization", worst, 1e-6);

    let bg = BetaGamma::from_beta(0.1).unwrap();
    let p1 = exact::partial_contribution(Polarization::Total, &bg, 1, 50).unwrap();
    suite.record("first-harmonic-dominance-low-beta", 0.97 - p1, 0.0);

    let bg = BetaGamma::from_beta(0.01).unwrap();
    let sum = exact::total_fraction_exact(Polarization::Right, &bg, 50).unwrap();
    suite.record(
        "circular-fraction-static-limit",
        (sum.value - 7.0 / 16.0).abs(),
        1e-4,
    );

    // Discrete minimal window against exhaustive enumeration.
    let mismatches = window_oracle_mismatches(2.0);
    suite.record("discrete-window-oracle-gamma-2", mismatches, 0.0);

    if level == Level::Full {
        let mismatches = window_oracle_mismatches(3.0);
        suite.record("discrete-window-oracle-gamma-3", mismatches, 0.0);

        // Bridge to the continuous densities at gamma = 10.
        let bg = BetaGamma::from_gamma(10.0).unwrap();
        let mut worst = 0.0f64;
        for nu in [300u32, 750, 1500] {
            let y = 2.0 * f64::from(nu) / 3000.0;
            for s in Polarization::TABLE_ORDER {
                let scaled = 1500.0 * exact::harmonic_power_upper(s, &bg, nu, &electron).unwrap();
                let continuous = ultra::spectral_density(s, y).unwrap();
                worst = worst.max(((scaled - continuous) / continuous).abs());
            }
        }
        suite.record("continuum-bridge-gamma-10", worst, 0.03);

        // Harmonic sums past gamma = 3.
        let beta = 0.95;
        let bg = BetaGamma::from_beta(beta).unwrap();
        let nu_max = exact::converged_nu_max(&bg, 1e-8).unwrap();
        let sums = exact::total_fractions_exact_all(&bg, nu_max).unwrap();
        let worst = (sums[0].value - 0.5)
            .abs()
            .max((sums[1].value - (6.0 + beta * beta) / 16.0).abs())
            .max((sums[2].value - (2.0 - beta * beta) / 16.0).abs());
        suite.record("harmonic-sums-beta-0.95", worst, 1e-6);
    }

    RunReport {
        command: format!("verify --level {}", level.name()),
        level,
        solver_tol,
        checks: suite.checks,
        wall: start.elapsed(),
    }
}

/// Number of components whose minimal window differs from exhaustive
/// enumeration (0 when the two agree everywhere).
fn window_oracle_mismatches(gamma: f64) -> f64 {
    let bg = BetaGamma::from_gamma(gamma).unwrap();
    let electron = ChargeConfig::electron_unit_orbit();
    let nu_max = exact::converged_nu_max(&bg, 1e-8).unwrap();
    let windows = widths::discrete_effective_width_all(&bg, nu_max).unwrap();
    let mut mismatches = 0u32;
    for (k, s) in Polarization::TABLE_ORDER.into_iter().enumerate() {
        let terms: Vec<f64> = (1..=nu_max)
            .map(|nu| exact::harmonic_power_upper(s, &bg, nu, &electron).unwrap())
            .collect();
        let denom = match s {
            Polarization::Sigma => (6.0 + bg.beta().powi(2)) / 16.0,
            Polarization::Pi => (2.0 - bg.beta().powi(2)) / 16.0,
            Polarization::Total => 0.5,
            _ => terms.iter().sum(),
        };
        let n = terms.len();
        let mut prefix = vec![0.0; n + 1];
        for (i, t) in terms.iter().enumerate() {
            prefix[i + 1] = prefix[i] + t / denom;
        }
        let mut best: Option<(u32, f64, u32, u32)> = None;
        for nu1 in 1..=n {
            for nu2 in nu1..=n {
                let cov = prefix[nu2] - prefix[nu1 - 1];
                if cov >= 0.5 {
                    let cand = ((nu2 - nu1 + 1) as u32, cov - 0.5, nu1 as u32, nu2 as u32);
                    if best.is_none_or(|(l, e, n1, _)| (cand.0, cand.1, cand.2) < (l, e, n1)) {
                        best = Some(cand);
                    }
                    break;
                }
            }
        }
        let (_, _, nu1, nu2) = best.expect("enumeration must find a window");
        if (windows[k].nu1, windows[k].nu2) != (nu1, nu2) {
            mismatches += 1;
        }
    }
    f64::from(mismatches)
}
