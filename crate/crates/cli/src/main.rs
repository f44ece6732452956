//! `hmink` — evaluate, sweep, solve and verify mean-curvature functionals on
//! rotationally invariant surfaces in the first Heisenberg group.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
//! failure.

// `!(x > 0.0)` rejects NaN together with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use hmink_core::catalog::SurfaceSpec;
use hmink_core::euler_lagrange::el_residual;
use hmink_core::functionals::{
    enclosed_volume, quotients, sub_riemannian_area, total_inverse_mean_curvature,
    total_mean_curvature,
};
use hmink_core::variation::{instability_threshold, second_variation_rotinv, TestFunction};
use hmink_core::verify::{run_battery, BatteryOptions, Check};
use hmink_core::{Error, QuadratureConfig};
use output::{csv_row, fmt_f64, table, Json};

const EXIT_VERIFY_FAILED: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_NUMERIC: i32 = 3;

#[derive(Parser)]
#[command(
    name = "hmink",
    version,
    about = "Mean-curvature functionals on rotationally invariant surfaces in the first Heisenberg group"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FunctionalArg {
    Area,
    Tmc,
    Timc,
    Volume,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum QuotientArg {
    Mink,
    Hk,
    Isop,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Pm,
    Pansu,
    Pansualt,
    Koranyi,
    Cylinder,
}

impl FamilyArg {
    fn param_name(&self) -> &'static str {
        match self {
            FamilyArg::Pm => "L",
            FamilyArg::Cylinder => "r",
            _ => "R",
        }
    }

    fn spec(&self, v: f64) -> SurfaceSpec {
        match self {
            FamilyArg::Pm => SurfaceSpec::PansuMinkowski { l: v },
            FamilyArg::Pansu => SurfaceSpec::Pansu { radius: v },
            FamilyArg::Pansualt => SurfaceSpec::PansuAlt { radius: v },
            FamilyArg::Koranyi => SurfaceSpec::Koranyi { radius: v },
            FamilyArg::Cylinder => SurfaceSpec::Cylinder { radius: v },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StabilityMode {
    Rotinv,
    Angular,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a functional or quotient on one surface
    Eval {
        /// Surface spec, e.g. pansu:R=1, pm:L=0.25, dilate:lambda=2:(pm:L=0.5)
        #[arg(long)]
        surface: String,
        #[arg(long, value_enum, conflicts_with = "quotient")]
        functional: Option<FunctionalArg>,
        #[arg(long, value_enum)]
        quotient: Option<QuotientArg>,
        #[arg(long, value_enum, default_value = "table")]
        out: OutputFormat,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// Sweep a family parameter and stream one row per value
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, conflicts_with = "quotient")]
        functional: Option<FunctionalArg>,
        #[arg(long, value_enum)]
        quotient: Option<QuotientArg>,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "csv")]
        out: OutputFormat,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
    },
    /// Per-sample Euler-Lagrange residuals of a critical sphere (CSV)
    El {
        /// Multiplier parameter; the surface defaults to the critical sphere S_L
        #[arg(long = "L")]
        l: f64,
        /// Evaluate the residual on this surface instead
        #[arg(long)]
        surface: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Second-variation report at a critical sphere (JSON)
    Stability {
        #[arg(long = "L")]
        l: f64,
        #[arg(long, value_enum, default_value = "rotinv")]
        mode: StabilityMode,
        /// Support margin as a fraction of the half-domain
        #[arg(long, default_value_t = 0.05)]
        delta_frac: f64,
        /// Draw random bump coefficients instead of the plain bump
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Approximated vs horizontal mean curvature samples (CSV)
    Eps {
        #[arg(long)]
        surface: String,
        /// Comma-separated approximation parameters
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
    /// Run the verification battery and report every claim
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Loosen every claim tolerance to at least this value
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        out: OutputFormat,
        /// Deliberately corrupt one expected constant (battery self-test)
        #[arg(long, hide = true)]
        corrupt_constant: bool,
    },
}

fn fail(code: i32, msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(code);
}

fn numeric_exit(e: Error) -> ! {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => fail(EXIT_USAGE, &e.to_string()),
        _ => fail(EXIT_NUMERIC, &e.to_string()),
    }
}

fn parse_surface(text: &str) -> SurfaceSpec {
    match SurfaceSpec::parse(text) {
        Ok(s) => s,
        Err(e) => fail(EXIT_USAGE, &e.to_string()),
    }
}

fn quad_config(rel: Option<f64>, abs: Option<f64>) -> QuadratureConfig {
    match config::resolve(rel, abs) {
        Ok(c) => c,
        Err(e) => fail(EXIT_USAGE, &e),
    }
}

fn config_json(cfg: &QuadratureConfig) -> Json {
    Json::Obj(vec![
        ("rel_tol", Json::Num(cfg.rel_tol)),
        ("abs_tol", Json::Num(cfg.abs_tol)),
        ("max_subdivisions", Json::Int(cfg.max_subdivisions as i64)),
    ])
}

fn envelope(command: String, results: Vec<Json>, cfg: &QuadratureConfig) -> Json {
    Json::Obj(vec![
        ("tool_version", Json::Str(env!("CARGO_PKG_VERSION").into())),
        ("command", Json::Str(command)),
        ("results", Json::Arr(results)),
        ("config", config_json(cfg)),
    ])
}

fn functional_name(f: FunctionalArg) -> &'static str {
    match f {
        FunctionalArg::Area => "area",
        FunctionalArg::Tmc => "tmc",
        FunctionalArg::Timc => "timc",
        FunctionalArg::Volume => "volume",
    }
}

fn eval_functional(
    spec: &SurfaceSpec,
    f: FunctionalArg,
    cfg: &QuadratureConfig,
) -> hmink_core::error::Result<hmink_core::FunctionalResult> {
    match f {
        FunctionalArg::Area => sub_riemannian_area(spec, cfg),
        FunctionalArg::Tmc => {
            let (r, mean_convex) = total_mean_curvature(spec, cfg)?;
            if !mean_convex {
                eprintln!("warning: surface is not mean convex; the total is still reported");
            }
            Ok(r)
        }
        FunctionalArg::Timc => total_inverse_mean_curvature(spec, cfg),
        FunctionalArg::Volume => enclosed_volume(spec, cfg),
    }
}

fn cmd_eval(
    surface: String,
    functional: Option<FunctionalArg>,
    quotient: Option<QuotientArg>,
    out: OutputFormat,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
) {
    let spec = parse_surface(&surface);
    let cfg = quad_config(rel_tol, abs_tol);
    let canonical = spec.to_string();

    // (name, value, err_est)
    let mut rows: Vec<(String, f64, Option<f64>)> = Vec::new();
    match (functional, quotient) {
        (Some(f), None) => {
            let r = eval_functional(&spec, f, &cfg).unwrap_or_else(|e| numeric_exit(e));
            rows.push((functional_name(f).into(), r.value, Some(r.err_est)));
        }
        (None, Some(q)) => {
            let report = quotients(&spec, &cfg).unwrap_or_else(|e| numeric_exit(e));
            match q {
                QuotientArg::Mink => rows.push(("mink".into(), report.mink_quotient, None)),
                QuotientArg::Hk => rows.push(("hk".into(), report.hk_quotient, None)),
                QuotientArg::Isop => rows.push(("isop".into(), report.isop_quotient, None)),
                QuotientArg::All => {
                    rows.push(("area".into(), report.area.value, Some(report.area.err_est)));
                    rows.push(("tmc".into(), report.tmc.value, Some(report.tmc.err_est)));
                    rows.push(("timc".into(), report.timc.value, Some(report.timc.err_est)));
                    rows.push((
                        "volume".into(),
                        report.volume.value,
                        Some(report.volume.err_est),
                    ));
                    rows.push(("mink".into(), report.mink_quotient, None));
                    rows.push(("hk".into(), report.hk_quotient, None));
                    rows.push(("isop".into(), report.isop_quotient, None));
                }
            }
        }
        _ => fail(
            EXIT_USAGE,
            "eval needs exactly one of --functional or --quotient",
        ),
    }

    let command = format!("eval --surface {canonical}");
    match out {
        OutputFormat::Json => {
            let results = rows
                .iter()
                .map(|(name, value, err)| {
                    let mut fields = vec![
                        ("surface", Json::Str(canonical.clone())),
                        ("functional", Json::Str(name.clone())),
                        ("value", Json::Num(*value)),
                    ];
                    if let Some(e) = err {
                        fields.push(("err_est", Json::Num(*e)));
                    }
                    Json::Obj(fields)
                })
                .collect();
            print!("{}", envelope(command, results, &cfg).render());
        }
        OutputFormat::Csv => {
            print!(
                "{}",
                csv_row(&[
                    "surface".into(),
                    "functional".into(),
                    "value".into(),
                    "err_est".into()
                ])
            );
            for (name, value, err) in &rows {
                print!(
                    "{}",
                    csv_row(&[
                        canonical.clone(),
                        name.clone(),
                        fmt_f64(*value),
                        err.map(fmt_f64).unwrap_or_default(),
                    ])
                );
            }
        }
        OutputFormat::Table => {
            let t: Vec<(String, String)> = rows
                .iter()
                .map(|(name, value, _)| (name.clone(), fmt_f64(*value)))
                .collect();
            print!("{}", table(&t));
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: FamilyArg,
    functional: Option<FunctionalArg>,
    quotient: Option<QuotientArg>,
    from: f64,
    to: f64,
    steps: usize,
    out: OutputFormat,
    rel_tol: Option<f64>,
    abs_tol: Option<f64>,
) {
    if steps == 0 || !(from <= to) || !from.is_finite() || !to.is_finite() {
        fail(EXIT_USAGE, "empty sweep range");
    }
    let cfg = quad_config(rel_tol, abs_tol);
    let column = match (functional, quotient) {
        (Some(f), None) => functional_name(f).to_string(),
        (None, Some(q)) if q != QuotientArg::All => format!("{q:?}").to_lowercase(),
        _ => fail(
            EXIT_USAGE,
            "sweep needs exactly one of --functional or --quotient (not `all`)",
        ),
    };

    let mut values = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = if steps == 1 || i == steps - 1 {
            // keep the endpoints exact
            if i == 0 {
                from
            } else {
                to
            }
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let spec = family.spec(p);
        let v = match (functional, quotient) {
            (Some(f), None) => {
                eval_functional(&spec, f, &cfg)
                    .unwrap_or_else(|e| numeric_exit(e))
                    .value
            }
            (None, Some(q)) => {
                let report = quotients(&spec, &cfg).unwrap_or_else(|e| numeric_exit(e));
                match q {
                    QuotientArg::Mink => report.mink_quotient,
                    QuotientArg::Hk => report.hk_quotient,
                    QuotientArg::Isop => report.isop_quotient,
                    QuotientArg::All => unreachable!(),
                }
            }
            _ => unreachable!(),
        };
        values.push((p, v));
    }

    match out {
        OutputFormat::Json => {
            let results = values
                .iter()
                .map(|(p, v)| Json::Obj(vec![("param", Json::Num(*p)), ("value", Json::Num(*v))]))
                .collect();
            let command = format!(
                "sweep --family {:?} --{column} --from {from} --to {to} --steps {steps}",
                family
            )
            .to_lowercase();
            print!("{}", envelope(command, results, &cfg).render());
        }
        _ => {
            print!("{}", csv_row(&[family.param_name().into(), column.clone()]));
            for (p, v) in &values {
                print!("{}", csv_row(&[fmt_f64(*p), fmt_f64(*v)]));
            }
        }
    }
}

fn cmd_el(l: f64, surface: Option<String>, samples: usize) {
    if samples == 0 {
        fail(EXIT_USAGE, "need at least one sample");
    }
    let spec = match surface {
        Some(text) => parse_surface(&text),
        None => SurfaceSpec::PansuMinkowski { l },
    };
    let profile = hmink_core::catalog::make_surface(&spec).unwrap_or_else(|e| numeric_exit(e));
    let (a, b) = profile.domain();
    print!(
        "{}",
        csv_row(&[
            "s".into(),
            "residual".into(),
            "scale".into(),
            "defect".into()
        ])
    );
    for i in 0..samples {
        let s = a + (b - a) * (0.5 + i as f64) / samples as f64;
        let r = el_residual(&profile, l, s);
        print!(
            "{}",
            csv_row(&[
                fmt_f64(s),
                fmt_f64(r.residual),
                fmt_f64(r.scale),
                fmt_f64(r.defect()),
            ])
        );
    }
}

fn cmd_stability(l: f64, mode: StabilityMode, delta_frac: f64, seed: Option<u64>) {
    if !(delta_frac > 0.0 && delta_frac < 1.0) {
        fail(EXIT_USAGE, "delta fraction must lie in (0, 1)");
    }
    let pm = hmink_core::catalog::PmParams::new(l).unwrap_or_else(|e| numeric_exit(e));
    let cfg = QuadratureConfig::default();
    let (mode_name, phi_support) = match mode {
        StabilityMode::Rotinv => (
            "rotinv",
            (
                -pm.s_max + delta_frac * pm.s_max,
                pm.s_max - delta_frac * pm.s_max,
            ),
        ),
        StabilityMode::Angular => ("angular", (-delta_frac * pm.s_max, delta_frac * pm.s_max)),
    };
    let phi = match seed {
        Some(s) => TestFunction::seeded(phi_support, s).unwrap_or_else(|e| numeric_exit(e)),
        None => TestFunction::bump(phi_support).unwrap_or_else(|e| numeric_exit(e)),
    };

    let result = match mode {
        StabilityMode::Rotinv => {
            let r = second_variation_rotinv(l, &phi).unwrap_or_else(|e| numeric_exit(e));
            Json::Obj(vec![
                ("L", Json::Num(l)),
                ("mode", Json::Str(mode_name.into())),
                ("value", Json::Num(r.value)),
                ("lower_bound", Json::Num(r.lower_bound)),
                ("margin", Json::Num(r.margin)),
                ("M_star", Json::Null),
            ])
        }
        StabilityMode::Angular => {
            let r = instability_threshold(l, &phi).unwrap_or_else(|e| numeric_exit(e));
            let value = r.quadratic_form(r.m_star);
            Json::Obj(vec![
                ("L", Json::Num(l)),
                ("mode", Json::Str(format!("sin({} theta)", r.m_star))),
                ("value", Json::Num(value)),
                ("lower_bound", Json::Num(0.0)),
                ("margin", Json::Num(value)),
                ("M_star", Json::Int(r.m_star as i64)),
            ])
        }
    };
    let command = format!("stability --L {l} --mode {mode_name}");
    print!("{}", envelope(command, vec![result], &cfg).render());
}

fn cmd_eps(surface: String, eps: Vec<f64>, samples: usize) {
    if samples == 0 {
        fail(EXIT_USAGE, "need at least one sample");
    }
    let spec = parse_surface(&surface);
    let profile = hmink_core::catalog::make_surface(&spec).unwrap_or_else(|e| numeric_exit(e));
    let (a, b) = profile.domain();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    print!(
        "{}",
        csv_row(&[
            "s".into(),
            "eps".into(),
            "H_eps".into(),
            "H_h".into(),
            "defect".into()
        ])
    );
    for &e in &eps {
        if !(e > 0.0) {
            fail(EXIT_USAGE, "approximation parameters must be positive");
        }
        for i in 0..samples {
            let f = -0.9 + 1.8 * i as f64 / (samples.max(2) - 1).max(1) as f64;
            let s = center + f * half;
            let h = hmink_core::geometry::horizontal_mean_curvature(&profile, s)
                .unwrap_or_else(|err| numeric_exit(err));
            let he = hmink_core::approximation::eps_mean_curvature(&profile, s, e)
                .unwrap_or_else(|err| numeric_exit(err));
            print!(
                "{}",
                csv_row(&[
                    fmt_f64(s),
                    fmt_f64(e),
                    fmt_f64(he),
                    fmt_f64(h),
                    fmt_f64((he - h).abs()),
                ])
            );
        }
    }
}

fn cmd_verify(seed: u64, rel_tol: Option<f64>, out: OutputFormat, corrupt_constant: bool) {
    let report = run_battery(&BatteryOptions {
        seed,
        loosen_rel: rel_tol,
        corrupt_constant,
    });
    let passed = report.passed();
    match out {
        OutputFormat::Json => {
            let results = report
                .claims
                .iter()
                .map(|c| {
                    Json::Obj(vec![
                        ("id", Json::Str(c.id.into())),
                        ("description", Json::Str(c.description.into())),
                        ("symbolic", Json::Str(c.symbolic.into())),
                        ("expected", Json::Num(c.expected)),
                        ("computed", Json::Num(c.computed)),
                        ("error", Json::Num(c.error)),
                        ("pass", Json::Bool(c.pass)),
                    ])
                })
                .collect();
            let cfg = QuadratureConfig::default();
            print!(
                "{}",
                envelope(format!("verify --seed {seed}"), results, &cfg).render()
            );
        }
        _ => {
            for c in &report.claims {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let kind = match c.check {
                    Check::RelErr(t) => format!("rel<={t:.0e}"),
                    Check::AbsErr(t) => format!("abs<={t:.0e}"),
                    Check::AtLeast(t) => format!(">={t:.0e}"),
                    Check::Exact => "exact".to_string(),
                };
                let sym = if c.symbolic.is_empty() {
                    String::new()
                } else {
                    format!(" = {}", c.symbolic)
                };
                println!(
                    "{status} {:<28} computed {}{} ({kind}, err {:.3e})",
                    c.id,
                    fmt_f64(c.computed),
                    sym,
                    c.error,
                );
            }
            let n_pass = report.claims.iter().filter(|c| c.pass).count();
            println!(
                "{}: {n_pass}/{} claims",
                if passed { "VERIFIED" } else { "FAILED" },
                report.claims.len()
            );
        }
    }
    if !passed {
        std::process::exit(EXIT_VERIFY_FAILED);
    }
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval {
            surface,
            functional,
            quotient,
            out,
            rel_tol,
            abs_tol,
        } => cmd_eval(surface, functional, quotient, out, rel_tol, abs_tol),
        Command::Sweep {
            family,
            functional,
            quotient,
            from,
            to,
            steps,
            out,
            rel_tol,
            abs_tol,
        } => cmd_sweep(
            family, functional, quotient, from, to, steps, out, rel_tol, abs_tol,
        ),
        Command::El {
            l,
            surface,
            samples,
        } => cmd_el(l, surface, samples),
        Command::Stability {
            l,
            mode,
            delta_frac,
            seed,
        } => cmd_stability(l, mode, delta_frac, seed),
        Command::Eps {
            surface,
            eps,
            samples,
        } => cmd_eps(surface, eps, samples),
        Command::Verify {
            seed,
            rel_tol,
            out,
            corrupt_constant,
        } => cmd_verify(seed, rel_tol, out, corrupt_constant),
    }
}
