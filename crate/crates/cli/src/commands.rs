//! Subcommand implementations: each builds a complete output body as a
//! string, leaving I/O and exit codes to the binary.

use srspec::exact::{self, BetaGamma, ChargeConfig};
use srspec::ultra::{self, Polarization};
use srspec::widths::{self, SummaryRow};

use crate::format::{csv_table, format_sig, Json};

/// Row order of the summary table.
pub const TABLE_QUANTITIES: [&str; 27] = [
    "y_max",
    "F_at_max",
    "Phi_at_max",
    "eta_max",
    "y1",
    "F_at_y1",
    "Phi_at_y1",
    "eta1",
    "y2",
    "Phi_at_y2",
    "eta2",
    "y3",
    "Phi_at_y3",
    "eta3",
    "y4",
    "Phi_at_y4",
    "eta4",
    "a_max",
    "a1",
    "a2",
    "a3",
    "a4",
    "b",
    "d",
    "r1",
    "r2",
    "r3",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthMode {
    Effective,
    Half,
}

#[derive(Debug, Clone, Copy)]
pub struct OutputOptions {
    pub format: Format,
    pub precision: usize,
    pub solver_tol: f64,
}

/// A command failed either because the request was malformed (usage) or
/// because a computation could not be completed (failure).
#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Failure(String),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(msg) | CmdError::Failure(msg) => write!(f, "{msg}"),
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CmdError {
    CmdError::Failure(e.to_string())
}

pub fn table_quantity(row: &SummaryRow, quantity: &str) -> f64 {
    match quantity {
        "y_max" => row.y_max,
        "F_at_max" => row.f_at_max,
        "Phi_at_max" => row.phi_at_max,
        "eta_max" => row.eta_max,
        "y1" => row.y1,
        "F_at_y1" => row.f_at_y1,
        "Phi_at_y1" => row.phi_at_y1,
        "eta1" => row.eta1,
        "y2" => row.y2,
        "Phi_at_y2" => row.phi_at_y2,
        "eta2" => row.eta2,
        "y3" => row.y3,
        "Phi_at_y3" => row.phi_at_y3,
        "eta3" => row.eta3,
        "y4" => row.y4,
        "Phi_at_y4" => row.phi_at_y4,
        "eta4" => row.eta4,
        "a_max" => row.a_max,
        "a1" => row.a1,
        "a2" => row.a2,
        "a3" => row.a3,
        "a4" => row.a4,
        "b" => row.b,
        "d" => row.d,
        "r1" => row.r1,
        "r2" => row.r2,
        "r3" => row.r3,
        other => unreachable!("unknown quantity {other}"),
    }
}

fn component_header() -> Vec<String> {
    Polarization::TABLE_ORDER
        .iter()
        .map(|s| s.label().to_string())
        .collect()
}

/// Full summary table: 27 quantities by 5 components.
pub fn table(opts: OutputOptions) -> Result<String, CmdError> {
    let rows: Vec<SummaryRow> = Polarization::TABLE_ORDER
        .iter()
        .map(|&s| widths::summary_row_with(s, opts.solver_tol))
        .collect::<Result<_, _>>()
        .map_err(failure)?;

    match opts.format {
        Format::Csv => {
            let mut header = vec!["quantity".to_string()];
            header.extend(component_header());
            let body: Vec<Vec<String>> = TABLE_QUANTITIES
                .iter()
                .map(|&q| {
                    let mut record = vec![q.to_string()];
                    record.extend(
                        rows.iter()
                            .map(|r| format_sig(table_quantity(r, q), opts.precision)),
                    );
                    record
                })
                .collect();
            Ok(csv_table(&header, &body))
        }
        Format::Json => {
            let obj = Json::Obj(
                rows.iter()
                    .map(|r| {
                        let fields = TABLE_QUANTITIES
                            .iter()
                            .map(|&q| {
                                (
                                    q.to_string(),
                                    Json::Num(table_quantity(r, q), opts.precision),
                                )
                            })
                            .collect();
                        (r.s.label().to_string(), Json::Obj(fields))
                    })
                    .collect(),
            );
            Ok(obj.render())
        }
    }
}

/// Spectral density curves on a uniform y-grid.
pub fn spectrum(
    opts: OutputOptions,
    component: Option<Polarization>,
    y_min: f64,
    y_max: f64,
    step: f64,
) -> Result<String, CmdError> {
    if !y_min.is_finite() || y_min < 0.0 {
        return Err(CmdError::Usage(format!(
            "--y-min must be finite and nonnegative, got {y_min}"
        )));
    }
    if !y_max.is_finite() || y_min >= y_max {
        return Err(CmdError::Usage(format!(
            "--y-max must exceed --y-min, got [{y_min}, {y_max}]"
        )));
    }
    if !step.is_finite() || step <= 0.0 {
        return Err(CmdError::Usage(format!(
            "--step must be positive, got {step}"
        )));
    }

    let components: Vec<Polarization> = match component {
        Some(s) => vec![s],
        None => Polarization::TABLE_ORDER.to_vec(),
    };
    let count = ((y_max - y_min) / step + 1e-9).floor() as usize;
    let grid: Vec<f64> = (0..=count).map(|i| y_min + i as f64 * step).collect();

    let curves: Vec<Vec<f64>> = components
        .iter()
        .map(|&s| {
            grid.iter()
                .map(|&y| ultra::spectral_density(s, y))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(failure)?;

    match opts.format {
        Format::Csv => {
            let mut header = vec!["y".to_string()];
            header.extend(components.iter().map(|s| s.label().to_string()));
            let body: Vec<Vec<String>> = grid
                .iter()
                .enumerate()
                .map(|(i, &y)| {
                    let mut record = vec![format_sig(y, opts.precision)];
                    record.extend(
                        curves
                            .iter()
                            .map(|curve| format_sig(curve[i], opts.precision)),
                    );
                    record
                })
                .collect();
            Ok(csv_table(&header, &body))
        }
        Format::Json => {
            let mut entries = vec![(
                "y".to_string(),
                Json::Arr(grid.iter().map(|&y| Json::Num(y, opts.precision)).collect()),
            )];
            for (k, s) in components.iter().enumerate() {
                entries.push((
                    s.label().to_string(),
                    Json::Arr(
                        curves[k]
                            .iter()
                            .map(|&f| Json::Num(f, opts.precision))
                            .collect(),
                    ),
                ));
            }
            Ok(Json::Obj(entries).render())
        }
    }
}

/// Effective-width or half-width solutions.
pub fn width(
    opts: OutputOptions,
    mode: WidthMode,
    component: Option<Polarization>,
) -> Result<String, CmdError> {
    let components: Vec<Polarization> = match component {
        Some(s) => vec![s],
        None => Polarization::TABLE_ORDER.to_vec(),
    };

    match mode {
        WidthMode::Effective => {
            let solutions: Vec<_> = components
                .iter()
                .map(|&s| widths::effective_width_with(s, opts.solver_tol))
                .collect::<Result<_, _>>()
                .map_err(failure)?;
            match opts.format {
                Format::Csv => {
                    let header: Vec<String> = [
                        "component",
                        "y1",
                        "y2",
                        "delta",
                        "a1",
                        "a2",
                        "b",
                        "residual_power",
                        "residual_density",
                    ]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                    let body: Vec<Vec<String>> = solutions
                        .iter()
                        .map(|w| {
                            vec![
                                w.s.label().to_string(),
                                format_sig(w.y1, opts.precision),
                                format_sig(w.y2, opts.precision),
                                format_sig(w.delta, opts.precision),
                                format_sig(w.a1, opts.precision),
                                format_sig(w.a2, opts.precision),
                                format_sig(w.b, opts.precision),
                                format_sig(w.residual_power, opts.precision),
                                format_sig(w.residual_density, opts.precision),
                            ]
                        })
                        .collect();
                    Ok(csv_table(&header, &body))
                }
                Format::Json => Ok(Json::Obj(
                    solutions
                        .iter()
                        .map(|w| {
                            (
                                w.s.label().to_string(),
                                Json::Obj(vec![
                                    ("y1".into(), Json::Num(w.y1, opts.precision)),
                                    ("y2".into(), Json::Num(w.y2, opts.precision)),
                                    ("delta".into(), Json::Num(w.delta, opts.precision)),
                                    ("a1".into(), Json::Num(w.a1, opts.precision)),
                                    ("a2".into(), Json::Num(w.a2, opts.precision)),
                                    ("b".into(), Json::Num(w.b, opts.precision)),
                                    (
                                        "residual_power".into(),
                                        Json::Num(w.residual_power, opts.precision),
                                    ),
                                    (
                                        "residual_density".into(),
                                        Json::Num(w.residual_density, opts.precision),
                                    ),
                                ]),
                            )
                        })
                        .collect(),
                )
                .render()),
            }
        }
        WidthMode::Half => {
            let solutions: Vec<_> = components
                .iter()
                .map(|&s| widths::half_width_with(s, opts.solver_tol))
                .collect::<Result<_, _>>()
                .map_err(failure)?;
            match opts.format {
                Format::Csv => {
                    let header: Vec<String> = ["component", "y3", "y4", "d"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect();
                    let body: Vec<Vec<String>> = solutions
                        .iter()
                        .map(|h| {
                            vec![
                                h.s.label().to_string(),
                                format_sig(h.y3, opts.precision),
                                format_sig(h.y4, opts.precision),
                                format_sig(h.d, opts.precision),
                            ]
                        })
                        .collect();
                    Ok(csv_table(&header, &body))
                }
                Format::Json => Ok(Json::Obj(
                    solutions
                        .iter()
                        .map(|h| {
                            (
                                h.s.label().to_string(),
                                Json::Obj(vec![
                                    ("y3".into(), Json::Num(h.y3, opts.precision)),
                                    ("y4".into(), Json::Num(h.y4, opts.precision)),
                                    ("d".into(), Json::Num(h.d, opts.precision)),
                                ]),
                            )
                        })
                        .collect(),
                )
                .render()),
            }
        }
    }
}

/// Per-harmonic upper-half-space powers at finite velocity. JSON output
/// additionally carries the harmonic sums with their tail estimates and
/// the minimal half-power windows.
pub fn exact_spectrum(
    opts: OutputOptions,
    beta: f64,
    nu_max: Option<u32>,
) -> Result<String, CmdError> {
    if !beta.is_finite() || beta <= 0.0 || beta >= 1.0 {
        return Err(CmdError::Usage(format!(
            "--beta must lie strictly between 0 and 1, got {beta}"
        )));
    }
    let bg = BetaGamma::from_beta(beta).map_err(failure)?;
    let nu_max = match nu_max {
        Some(n) if n >= 1 => n,
        Some(n) => {
            return Err(CmdError::Usage(format!(
                "--nu-max must be at least 1, got {n}"
            )));
        }
        None => exact::converged_nu_max(&bg, 1e-8).map_err(|e| {
            CmdError::Failure(format!(
                "could not find a converged truncation point ({e}); pass --nu-max explicitly"
            ))
        })?,
    };

    let cfg = ChargeConfig::electron_unit_orbit();
    let mut powers: Vec<[f64; 5]> = Vec::with_capacity(nu_max as usize);
    for nu in 1..=nu_max {
        powers.push(exact::harmonic_power_upper_all(&bg, nu, &cfg).map_err(failure)?);
    }

    match opts.format {
        Format::Csv => {
            let mut header = vec!["nu".to_string()];
            header.extend(component_header());
            let body: Vec<Vec<String>> = powers
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut record = vec![(i + 1).to_string()];
                    record.extend(row.iter().map(|&v| format_sig(v, opts.precision)));
                    record
                })
                .collect();
            Ok(csv_table(&header, &body))
        }
        Format::Json => {
            let sums = exact::total_fractions_exact_all(&bg, nu_max).map_err(failure)?;
            let mut entries = vec![
                (
                    "beta".to_string(),
                    Json::Num(bg.beta(), opts.precision.max(15)),
                ),
                (
                    "gamma".to_string(),
                    Json::Num(bg.gamma(), opts.precision.max(15)),
                ),
                ("nu_max".to_string(), Json::Int(i64::from(nu_max))),
            ];
            entries.push((
                "totals".to_string(),
                Json::Obj(
                    Polarization::TABLE_ORDER
                        .iter()
                        .zip(sums.iter())
                        .map(|(s, sum)| {
                            (s.label().to_string(), Json::Num(sum.value, opts.precision))
                        })
                        .collect(),
                ),
            ));
            entries.push((
                "tail_estimates".to_string(),
                Json::Obj(
                    Polarization::TABLE_ORDER
                        .iter()
                        .zip(sums.iter())
                        .map(|(s, sum)| {
                            (
                                s.label().to_string(),
                                Json::Num(sum.tail_estimate, opts.precision),
                            )
                        })
                        .collect(),
                ),
            ));
            match widths::discrete_effective_width_all(&bg, nu_max) {
                Ok(windows) => entries.push((
                    "windows".to_string(),
                    Json::Obj(
                        windows
                            .iter()
                            .map(|w| {
                                (
                                    w.s.label().to_string(),
                                    Json::Obj(vec![
                                        ("nu1".into(), Json::Int(i64::from(w.nu1))),
                                        ("nu2".into(), Json::Int(i64::from(w.nu2))),
                                        ("lambda".into(), Json::Int(i64::from(w.lambda))),
                                        ("coverage".into(), Json::Num(w.coverage, opts.precision)),
                                        ("excess".into(), Json::Num(w.excess, opts.precision)),
                                    ]),
                                )
                            })
                            .collect(),
                    ),
                )),
                Err(e) => entries.push(("windows_error".to_string(), Json::Str(e.to_string()))),
            }
            let mut harmonic_entries = vec![(
                "nu".to_string(),
                Json::Arr((1..=nu_max).map(|nu| Json::Int(i64::from(nu))).collect()),
            )];
            for (k, s) in Polarization::TABLE_ORDER.iter().enumerate() {
                harmonic_entries.push((
                    s.label().to_string(),
                    Json::Arr(
                        powers
                            .iter()
                            .map(|row| Json::Num(row[k], opts.precision))
                            .collect(),
                    ),
                ));
            }
            entries.push(("harmonics".to_string(), Json::Obj(harmonic_entries)));
            Ok(Json::Obj(entries).render())
        }
    }
}
