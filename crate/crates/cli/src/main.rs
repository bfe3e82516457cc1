mod figure;
mod quantity;
mod sweep;
mod validate;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use harvest::distquad::QuadConfig;
use harvest::measures::CorrelationReport;
use harvest::HarvestError;
use serde_json::json;

use figure::FigureId;
use quantity::{exit_code, Point, Quantity, Scaling, Value};
use sweep::{Axis, Fixed, SweepSpec};
use validate::Suite;

#[derive(Parser)]
#[command(name = "harvest", version, about = "Entanglement harvesting by detectors coupled to conformal primaries")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Minimum working digits for extended-precision steps; raised
    /// automatically when the gap demands it.
    #[arg(long, global = true, default_value_t = 60)]
    precision_digits: u32,
    /// Output directory for files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report raw values carrying the `e^{−T²Ω²/2}` factor.
    #[arg(long, global = true, conflicts_with = "unscale")]
    raw: bool,
    /// Divide out `e^{−T²Ω²/2}` (the default).
    #[arg(long, global = true)]
    unscale: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct PointArgs {
    #[arg(long, default_value_t = Fixed::default().delta_dim, allow_negative_numbers = true)]
    delta_dim: f64,
    #[arg(long, default_value_t = Fixed::default().t_omega, allow_negative_numbers = true)]
    t_omega: f64,
    #[arg(long, default_value_t = Fixed::default().lbar, allow_negative_numbers = true)]
    lbar: f64,
    #[arg(long, default_value_t = Fixed::default().dbar, allow_negative_numbers = true)]
    dbar: f64,
    #[arg(long, default_value_t = Fixed::default().lambda_bar, allow_negative_numbers = true)]
    lambda_bar: f64,
}

impl PointArgs {
    fn fixed(&self) -> Fixed {
        Fixed { delta_dim: self.delta_dim, t_omega: self.t_omega, lbar: self.lbar, dbar: self.dbar, lambda_bar: self.lambda_bar }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One quantity at one point, as a JSON record.
    Element {
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        point: PointArgs,
    },
    /// All correlation measures at one point, as JSON.
    Measure {
        #[command(flatten)]
        point: PointArgs,
    },
    /// A one- or two-axis grid written as CSV.
    Sweep {
        /// JSON sweep specification; other sweep flags are ignored when given.
        #[arg(long)]
        config: Option<PathBuf>,
        /// `name:min:max:steps`, name one of delta_dim, lbar, dbar, t_omega.
        #[arg(long, value_parser = Axis::parse, required_unless_present = "config")]
        axis1: Option<Axis>,
        #[arg(long, value_parser = Axis::parse)]
        axis2: Option<Axis>,
        #[arg(long = "quantity", value_enum, required_unless_present = "config")]
        quantities: Vec<Quantity>,
        #[command(flatten)]
        point: PointArgs,
        /// Print the resolved specification as JSON instead of running it.
        #[arg(long)]
        dump_config: bool,
    },
    /// Regenerate the data behind a figure preset.
    Figure {
        #[arg(value_enum)]
        id: FigureId,
        /// Points per axis.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Compare numerics against independent references.
    Validate {
        #[arg(value_enum)]
        suite: Suite,
        /// Multiply every tolerance by this factor.
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
    },
}

enum Failure {
    Usage(String),
    Harvest(HarvestError),
    Io(io::Error),
    Validation(usize),
}

impl From<HarvestError> for Failure {
    fn from(e: HarvestError) -> Self {
        Failure::Harvest(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl Failure {
    fn report(&self) -> (u8, serde_json::Value) {
        match self {
            Failure::Usage(m) => (2, json!({"error": "usage", "message": m})),
            Failure::Harvest(e) => {
                let kind = match e {
                    HarvestError::Domain(_) => "domain",
                    HarvestError::Singularity { .. } => "singularity",
                    HarvestError::Numeric(_) => "numeric",
                    HarvestError::Precision { .. } => "precision",
                    HarvestError::Regime(_) => "regime",
                    HarvestError::Capability(_) => "capability",
                    HarvestError::Perturbativity(_) => "perturbativity",
                    HarvestError::PsdViolation(_) => "psd_violation",
                };
                (exit_code(e), json!({"error": kind, "message": e.to_string()}))
            }
            Failure::Io(e) => (3, json!({"error": "io", "message": e.to_string()})),
            Failure::Validation(n) => (1, json!({"error": "validation", "message": format!("{n} checks failed")})),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({"error": "usage", "message": e.to_string()}));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = f.report();
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

fn scaling(cli: &Cli) -> Scaling {
    if cli.raw {
        Scaling::Raw
    } else {
        Scaling::Unscaled
    }
}

fn stdout_json(v: &serde_json::Value) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = QuadConfig::default();
    match &cli.command {
        Command::Element { quantity, point } => {
            let pt = Point::new(point.fixed().params(), cli.precision_digits, cfg)?;
            let value = pt.eval(*quantity)?;
            stdout_json(&element_record(&pt, *quantity, &value))
        }
        Command::Measure { point } => {
            let fixed = point.fixed();
            let pt = Point::new(fixed.params(), cli.precision_digits, cfg)?;
            let r = CorrelationReport::from_elements(&pt.elements()?, fixed.lambda_bar, pt.precision())?;
            let shift = match scaling(cli) {
                Scaling::Unscaled => 0.5 * fixed.t_omega * fixed.t_omega,
                Scaling::Raw => 0.0,
            };
            stdout_json(&json!({
                "point": fixed,
                "scaling": scaling(cli),
                "working_digits": pt.working_digits(),
                "negativity": r.negativity.at_scale(shift),
                "negativity_exact": r.negativity_exact.at_scale(shift),
                "mutual_info": r.mutual_info.at_scale(shift),
                "n_plus": r.n_plus.at_scale(shift),
                "n_minus": r.n_minus.at_scale(shift),
                "comm_ratio": r.comm_ratio,
            }))
        }
        Command::Sweep { config, axis1, axis2, quantities, point, dump_config } => {
            let spec = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    serde_json::from_str::<SweepSpec>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                None => SweepSpec {
                    fixed: point.fixed(),
                    axis1: axis1.expect("clap requires axis1"),
                    axis2: *axis2,
                    quantities: quantities.clone(),
                    scaling: scaling(cli),
                    precision_digits: cli.precision_digits,
                },
            };
            spec.validate().map_err(Failure::Usage)?;
            if *dump_config {
                return stdout_json(&serde_json::to_value(&spec)?);
            }
            let result = sweep::run(&spec, &cfg);
            match &cli.out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    sweep::write_csv(BufWriter::new(File::create(dir.join("sweep.csv"))?), &result.header, &result.rows)?;
                }
                None => sweep::write_csv(io::stdout().lock(), &result.header, &result.rows)?,
            }
            if result.shifted_points > 0 {
                eprintln!("{}", json!({"note": "lightcone points shifted by half a step", "count": result.shifted_points}));
            }
            if result.failed_points > 0 {
                eprintln!(
                    "{}",
                    json!({"warning": "points with failed quantities", "count": result.failed_points, "first": result.first_error})
                );
            }
            if result.all_failed() {
                return Err(Failure::Harvest(HarvestError::Numeric(result.first_error.unwrap_or_default())));
            }
            Ok(())
        }
        Command::Figure { id, resolution } => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            write_figure(&dir, *id, *resolution, scaling(cli), cli.precision_digits, &cfg)
        }
        Command::Validate { suite, tol_scale } => {
            let started = std::time::Instant::now();
            let records = validate::run(*suite, *tol_scale);
            let failed = records.iter().filter(|r| !r.pass).count();
            let report = json!({
                "checks": records.len(),
                "failed": failed,
                "seconds": started.elapsed().as_secs_f64(),
                "records": records,
            });
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir)?;
                serde_json::to_writer_pretty(BufWriter::new(File::create(dir.join("validate.json"))?), &report)?;
            }
            stdout_json(&report)?;
            if failed > 0 {
                return Err(Failure::Validation(failed));
            }
            Ok(())
        }
    }
}

fn element_record(pt: &Point, q: Quantity, v: &Value) -> serde_json::Value {
    let p = &pt.params;
    let t = p.t_omega;
    let finite = |x: f64| if x.is_finite() { Some(x) } else { None };
    let (mantissa, log_scale, value, unscaled) = match v {
        Value::Real(r) => (json!(r.mantissa), Some(r.log_scale), json!(finite(r.value())), json!(finite(r.at_scale(0.5 * t * t)))),
        Value::Complex(c) => {
            let pair = |z: harvest::C64| if z.re.is_finite() && z.im.is_finite() { json!([z.re, z.im]) } else { json!(null) };
            (json!([c.mantissa.re, c.mantissa.im]), Some(c.log_scale), pair(c.value()), pair(c.at_scale(0.5 * t * t)))
        }
        Value::Ratio(r) => (json!(r), None, json!(r), json!(r)),
    };
    json!({
        "quantity": q,
        "point": {"delta_dim": p.delta_dim, "t_omega": t, "lbar": p.lbar, "dbar": p.dbar, "lambda_bar": p.lambda_bar},
        "mantissa": mantissa,
        "log_scale": log_scale,
        "value": value,
        "unscaled": unscaled,
        "route": pt.route(q),
        "tolerance": pt.tolerance(q),
        "working_digits": pt.working_digits(),
    })
}

fn write_figure(
    dir: &Path,
    id: FigureId,
    resolution: Option<usize>,
    scaling: Scaling,
    digits: u32,
    cfg: &QuadConfig,
) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    let preset = figure::preset(id, resolution);
    let name = id.name();
    let mut files = Vec::new();
    let mut grids = Vec::new();
    for (suffix, spec) in &preset.grids {
        let spec = SweepSpec { scaling, precision_digits: digits, ..spec.clone() };
        let file = if suffix.is_empty() { format!("{name}.csv") } else { format!("{name}_{suffix}.csv") };
        let result = sweep::run(&spec, cfg);
        sweep::write_csv(BufWriter::new(File::create(dir.join(&file))?), &result.header, &result.rows)?;
        grids.push(json!({
            "file": file,
            "spec": spec,
            "failed_points": result.failed_points,
            "shifted_points": result.shifted_points,
            "first_error": result.first_error,
        }));
        files.push(file);
    }
    let mut overlays = Vec::new();
    for o in &preset.overlays {
        let file = format!("{name}_{}.csv", o.name);
        sweep::write_csv(BufWriter::new(File::create(dir.join(&file))?), &o.header, &o.rows)?;
        overlays.push(json!({"file": file, "columns": o.header}));
    }
    let meta = json!({
        "figure": name,
        "description": preset.description,
        "scaling": scaling,
        "grids": grids,
        "overlays": overlays,
    });
    serde_json::to_writer_pretty(BufWriter::new(File::create(dir.join(format!("{name}_meta.json")))?), &meta)?;
    eprintln!("{}", json!({"wrote": files, "dir": dir}));
    Ok(())
}
