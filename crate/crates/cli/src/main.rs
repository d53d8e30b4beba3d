use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hokdv::harness::{self, output, RunConfig};
use hokdv::oscillatory::{self, Amplitude, Cutoff, Phase, PhaseSpec, ProbeKind};
use hokdv::resonance;

#[derive(Parser)]
#[command(name = "hokdv", version, about = "Dispersive-decay laboratory for higher-order KdV-type equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for reports; without it the primary table goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the config's RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solver and record invariants at the sample times.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Stationary points and resonance classification of the phase.
    Resonances {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        xi: f64,
    },
    /// Linear, L^q and nonlinear decay-envelope checks.
    Decay {
        #[arg(long)]
        config: PathBuf,
    },
    /// Leading stationary-phase term against quadrature (Fresnel integral by default).
    StationaryPhase {
        /// JSON phase specification.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Comma-separated λ values for a remainder-order probe.
        #[arg(long, value_delimiter = ',')]
        probe: Vec<f64>,
    },
    /// Residual of the profile equation, gauge phase and frequency-localized norms.
    Profile {
        #[arg(long)]
        config: PathBuf,
    },
    /// Breakdown time against ε.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Exit 2: the invocation itself is wrong (missing or malformed config).
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| UsageError(e).into())
}

/// What a subcommand produced.
struct Report {
    name: &'static str,
    /// Named CSV tables; the first is the primary one.
    tables: Vec<(&'static str, String)>,
    /// Two-column plot data.
    plots: Vec<(&'static str, String)>,
    summary: serde_json::Value,
    pass: bool,
}

fn csv<T: Serialize>(rows: &[T]) -> Result<String> {
    Ok(output::csv_string(rows)?)
}

fn plot(header: &str, xs: &[f64], ys: &[f64]) -> String {
    let mut s = format!("# {header}\n");
    for (x, y) in xs.iter().zip(ys) {
        s.push_str(&format!("{x:e} {y:e}\n"));
    }
    s
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<RunConfig> {
    let text = usage(fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display())))?;
    let mut config = usage(RunConfig::from_json(&text).with_context(|| format!("invalid config {}", path.display())))?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    Ok(config)
}

fn simulate(config: &RunConfig) -> Result<Report> {
    let out = harness::simulate(config)?;
    Ok(Report {
        name: "simulate",
        tables: vec![("samples", csv(&out.rows)?)],
        plots: vec![("final_u", plot("x u", &out.final_x, &out.final_u))],
        summary: serde_json::json!({
            "steps": out.steps,
            "mass_drift": out.mass_drift,
            "hamiltonian_drift": out.hamiltonian_drift,
            "invalid": out.invalid,
            "samples": out.rows,
            "pass": out.pass,
        }),
        pass: out.pass,
    })
}

fn resonances(n: u32, p: u32, xi: f64) -> Result<Report> {
    #[derive(Serialize)]
    struct Row {
        j: u32,
        divisor: i64,
        multiplicity: u64,
        d: f64,
        time_resonant: bool,
        gradient_max: f64,
        determinant: f64,
        signature: Option<i32>,
    }
    let report = usage(resonance::classify_orders(n, p, xi).map_err(anyhow::Error::from))?;
    let rows: Vec<Row> = report
        .entries
        .iter()
        .map(|e| Row {
            j: e.j,
            divisor: e.divisor,
            multiplicity: e.multiplicity,
            d: e.d,
            time_resonant: e.time_resonant,
            gradient_max: e.gradient_max,
            determinant: e.determinant,
            signature: e.signature,
        })
        .collect();
    Ok(Report {
        name: "resonances",
        tables: vec![("resonances", csv(&rows)?)],
        plots: vec![],
        summary: serde_json::to_value(&report)?,
        pass: true,
    })
}

fn decay(config: &RunConfig) -> Result<Report> {
    let out = harness::decay(config)?;
    let mut tables = vec![];
    let mut fits = vec![];
    if let Some(r) = &out.linear {
        tables.push(("linear", csv(&r.rows)?));
        fits.extend(r.fits.iter().cloned());
    }
    if let Some(r) = &out.nonlinear {
        tables.push(("nonlinear", csv(&r.rows)?));
    }
    if let Some(r) = &out.lp {
        #[derive(Serialize)]
        struct Row {
            t: f64,
            norm: f64,
        }
        let rows: Vec<Row> = r.times.iter().zip(&r.norms).map(|(&t, &norm)| Row { t, norm }).collect();
        tables.push(("lp", csv(&rows)?));
        fits.push(r.fit.clone());
    }
    if !fits.is_empty() {
        tables.push(("fits", csv(&fits)?));
    }
    Ok(Report {
        name: "decay",
        tables,
        plots: vec![],
        summary: serde_json::to_value(&out)?,
        pass: out.pass,
    })
}

fn fresnel(lambda: f64) -> PhaseSpec {
    PhaseSpec::new(Phase::diagonal(&[1.0]), Amplitude::Constant { value: 1.0 }, Cutoff::Smooth, lambda)
        .with_stationary_point(vec![0.0])
}

fn stationary_phase(config: Option<&Path>, lambda: Option<f64>, probe: &[f64]) -> Result<Report> {
    let mut spec = match config {
        Some(path) => {
            let text = usage(fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display())))?;
            usage(serde_json::from_str::<PhaseSpec>(&text).with_context(|| format!("invalid phase spec {}", path.display())))?
        }
        None => fresnel(400.0),
    };
    if let Some(l) = lambda {
        spec = spec.with_lambda(l);
    }
    usage(spec.validate().map_err(anyhow::Error::from))?;

    #[derive(Serialize)]
    struct Row {
        method: oscillatory::Method,
        re: f64,
        im: f64,
        abs: f64,
        error_estimate: f64,
    }
    let mut results = vec![oscillatory::oscillatory_quadrature(&spec)?];
    if spec.stationary_point.is_some() {
        results.push(oscillatory::stationary_phase_leading(&spec)?);
    }
    let rows: Vec<Row> = results
        .iter()
        .map(|r| Row {
            method: r.method,
            re: r.value.re,
            im: r.value.im,
            abs: r.value.norm(),
            error_estimate: r.error_estimate,
        })
        .collect();
    let mut tables = vec![("stationary_phase", csv(&rows)?)];
    let order = if probe.is_empty() {
        None
    } else {
        let kind = if spec.stationary_point.is_some() { ProbeKind::Remainder } else { ProbeKind::Magnitude };
        let o = oscillatory::error_order_probe(&spec, probe, kind)?;
        #[derive(Serialize)]
        struct ProbeRow {
            lambda: f64,
            value: f64,
            quadrature_error: f64,
        }
        let rows: Vec<ProbeRow> = o
            .lambdas
            .iter()
            .zip(&o.values)
            .zip(&o.quadrature_errors)
            .map(|((&lambda, &value), &quadrature_error)| ProbeRow { lambda, value, quadrature_error })
            .collect();
        tables.push(("probe", csv(&rows)?));
        Some(o)
    };
    Ok(Report {
        name: "stationary_phase",
        tables,
        plots: vec![],
        summary: serde_json::json!({ "spec": spec, "results": results, "probe": order }),
        pass: true,
    })
}

fn profile(config: &RunConfig) -> Result<Report> {
    let out = harness::profile_run(config)?;
    #[derive(Serialize)]
    struct Row {
        t: f64,
        residual_sup: f64,
    }
    let rows: Vec<Row> = out
        .residual
        .times
        .iter()
        .zip(&out.residual.sup_per_time)
        .map(|(&t, &residual_sup)| Row { t, residual_sup })
        .collect();
    let grid = config.grid()?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = grid
        .ordered_frequencies()
        .into_iter()
        .map(|(xi, slot)| (xi, out.residual.integral[slot]))
        .unzip();
    Ok(Report {
        name: "profile",
        tables: vec![
            ("residual", csv(&rows)?),
            ("freqloc", csv(&out.freqloc.rows)?),
            ("gauge", csv(&out.gauge)?),
        ],
        plots: vec![("residual_integral", plot("xi integral", &xs, &ys))],
        summary: serde_json::json!({
            "epsilon": out.epsilon,
            "max_integral": out.residual.max_integral,
            "argmax_xi": out.residual.argmax_xi,
            "residual_factor": out.residual_factor,
            "gauge_constant": out.gauge_constant,
            "freqloc_prefactors": {
                "linf": out.freqloc.prefactor_linf,
                "xf": out.freqloc.prefactor_xf,
                "l1": out.freqloc.prefactor_l1,
                "low": out.freqloc.prefactor_low,
            },
            "invalid": out.invalid,
            "pass": out.pass,
        }),
        pass: out.pass,
    })
}

fn sweep(config: &RunConfig) -> Result<Report> {
    let out = harness::sweep(config)?;
    Ok(Report {
        name: "sweep",
        tables: vec![("sweep", csv(&out.rows)?)],
        plots: vec![],
        summary: serde_json::to_value(&out)?,
        pass: out.pass,
    })
}

fn emit(report: &Report, out: Option<&Path>, format: Format) -> Result<()> {
    match (out, format) {
        (None, format) => {
            let body = match format {
                Format::Csv => report.tables.first().map_or(String::new(), |t| t.1.clone()),
                Format::Json => serde_json::to_string_pretty(&report.summary)? + "\n",
            };
            // a closed pipe (e.g. `| head`) is not an error
            match std::io::stdout().lock().write_all(body.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
        (Some(dir), format) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            if format == Format::Csv {
                for (name, body) in &report.tables {
                    fs::write(dir.join(format!("{name}.csv")), body)?;
                }
                for (name, body) in &report.plots {
                    fs::write(dir.join(format!("{name}.dat")), body)?;
                }
            }
            let json = serde_json::to_string_pretty(&report.summary)? + "\n";
            fs::write(dir.join(format!("{}.json", report.name)), json)?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let report = match &cli.command {
        Command::Simulate { config } => simulate(&load_config(config, cli.seed)?)?,
        Command::Resonances { n, p, xi } => resonances(*n, *p, *xi)?,
        Command::Decay { config } => decay(&load_config(config, cli.seed)?)?,
        Command::StationaryPhase { config, lambda, probe } => stationary_phase(config.as_deref(), *lambda, probe)?,
        Command::Profile { config } => profile(&load_config(config, cli.seed)?)?,
        Command::Sweep { config } => sweep(&load_config(config, cli.seed)?)?,
    };
    emit(&report, cli.out.as_deref(), cli.format)?;
    if !report.pass {
        eprintln!("{}: check failed", report.name);
    }
    Ok(report.pass)
}

/// Core errors that point at the configuration rather than at a failed run.
fn is_configuration(e: &hokdv::Error) -> bool {
    use hokdv::Error::*;
    matches!(
        e,
        GridSize { .. }
            | GridLength { .. }
            | Params(_)
            | InvalidArgument(_)
            | Unresolved { .. }
            | ExponentCondition(_)
            | Dimension { .. }
            | Format(_)
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 2 on usage errors and 0 for --help / --version
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() || e.downcast_ref::<hokdv::Error>().is_some_and(is_configuration) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
