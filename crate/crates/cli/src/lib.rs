//! Command-line front end: argument parsing and dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tanlab::bounds::{nu_bound_smooth, BoundParams, BoundReport, CorrelationStructure, Regime};
use tanlab::harness::{self, chart, float_grid, int_grid, Aggregate, Experiment, ExperimentConfig, ExperimentOutput};
use tanlab::manifold::{estimate_cs, EmbeddingSpec, Family};
use tanlab::par::Execution;
use tanlab::sampling::{sample_cloud, write_cloud_csv};

#[derive(Parser, Debug)]
#[command(name = "tanlab", version, about = "Local PCA tangent-space estimation experiments")]
struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Angle against sample count at widths γ·ν_bound_quad.
    AngleVsK(ExperimentArgs),
    /// Predicted angle and sample count next to the measured curve.
    TheoryVsEmpirical(ExperimentArgs),
    /// Largest width passing the angle threshold, swept over n or kmax.
    MaxNu(SweepArgs),
    /// Smallest sample count passing the angle threshold, swept over n or kmax.
    MinK(SweepArgs),
    /// Empirical tail-event frequencies against their bounds.
    ValidateBounds(ExperimentArgs),
    /// Evaluate every closed-form bound at one parameter point.
    Bounds(BoundsArgs),
    /// Print a generated embedding as JSON, optionally with a sample cloud.
    SpecDump(SpecDumpArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Axis {
    N,
    Kmax,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StructureArg {
    Dense,
    Diagonal,
}

impl From<StructureArg> for CorrelationStructure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Dense => CorrelationStructure::Dense,
            StructureArg::Diagonal => CorrelationStructure::Diagonal,
        }
    }
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// quadratic, smooth1_exp, smooth2_sin or smooth3_poly.
    #[arg(long)]
    family: Option<Family>,
    /// Intrinsic dimension: value, comma list or start:stop:step.
    #[arg(long)]
    m: Option<String>,
    /// Ambient dimension: value, comma list or start:stop:step.
    #[arg(long)]
    n: Option<String>,
    /// Largest curvature: value, comma list or start:stop:step.
    #[arg(long)]
    kmax: Option<String>,
    /// Width multipliers of ν_bound_quad (comma list).
    #[arg(long)]
    gamma: Option<String>,
    /// Sample counts: value, comma list or start:stop:step.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    /// Angle thresholds in degrees (comma list).
    #[arg(long)]
    theta_bound: Option<String>,
    #[arg(long, value_enum)]
    structure: Option<StructureArg>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scale factors of ν_bound_smooth (theory-vs-empirical).
    #[arg(long)]
    c: Option<String>,
    /// Leakage levels τ (theory-vs-empirical).
    #[arg(long)]
    tau: Option<String>,
    /// Monte-Carlo reps (validate-bounds).
    #[arg(long)]
    reps: Option<usize>,
    /// Step cap of the max-ν schedule.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Aggregate trials by median instead of mean.
    #[arg(long)]
    median: bool,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG line chart here.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Emit JSON records instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Axis swept by the experiment.
    #[arg(long, value_enum, default_value = "n")]
    vs: Axis,
    #[command(flatten)]
    common: ExperimentArgs,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    kmax: f64,
    /// Width; defaults to `c · ν_bound_smooth`.
    #[arg(long)]
    nu: Option<f64>,
    /// Width factor used when `--nu` is omitted.
    #[arg(long, default_value_t = 0.4)]
    c: f64,
    /// Remainder constant; estimated from a generated germ when `--family` is
    /// smooth and this is omitted.
    #[arg(long)]
    cs: Option<f64>,
    #[arg(long, default_value = "quadratic")]
    family: Family,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    s1: f64,
    #[arg(long, default_value_t = 2.0 * std::f64::consts::E)]
    s2: f64,
    /// Defaults to `0.99 · s3_bound`.
    #[arg(long)]
    s3: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    p: f64,
    #[arg(long, default_value_t = 0.1)]
    tau: f64,
    #[arg(long, value_enum, default_value = "dense")]
    structure: StructureArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SpecDumpArgs {
    #[arg(long, default_value = "quadratic")]
    family: Family,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    kmax: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a cloud of this many points as CSV to `--cloud-out`.
    #[arg(long, requires = "cloud_out")]
    k: Option<usize>,
    /// Cloud half-width.
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long)]
    cloud_out: Option<PathBuf>,
}

/// Parse `a`, `a,b,c` or `start:stop:step`.
fn usize_grid(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => Ok(int_grid(a.trim().parse()?, b.trim().parse()?, c.trim().parse()?)?),
        [_] => s
            .split(',')
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad integer `{t}`")))
            .collect(),
        _ => bail!("bad grid `{s}` (expected value, list or start:stop:step)"),
    }
}

fn f64_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => Ok(float_grid(a.trim().parse()?, b.trim().parse()?, c.trim().parse()?)?),
        [_] => s
            .split(',')
            .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number `{t}`")))
            .collect(),
        _ => bail!("bad grid `{s}` (expected value, list or start:stop:step)"),
    }
}

fn build_config(experiment: Experiment, a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut c = ExperimentConfig::defaults(experiment);
    if let Some(f) = a.family {
        c.family = f;
        if experiment == Experiment::TheoryVsEmpirical {
            c.c_grid = ExperimentConfig::default_c_grid(f);
        }
    }
    if let Some(s) = &a.m {
        c.m_grid = usize_grid(s).context("--m")?;
    }
    if let Some(s) = &a.n {
        c.n_grid = usize_grid(s).context("--n")?;
    }
    if let Some(s) = &a.kmax {
        c.kmax_grid = f64_grid(s).context("--kmax")?;
    }
    if let Some(s) = &a.gamma {
        c.gamma = f64_grid(s).context("--gamma")?;
    }
    if let Some(s) = &a.k {
        let k = usize_grid(s).context("--k")?;
        if matches!(experiment, Experiment::MaxNuVsN | Experiment::MaxNuVsKmax) {
            if k.len() != 1 {
                bail!("--k: the max-nu sweep takes a single sample count");
            }
            c.k_fixed = k[0];
        }
        c.k_grid = k;
    }
    if let Some(t) = a.trials {
        c.trials = t;
    }
    if let Some(s) = &a.theta_bound {
        c.theta_bound_deg = f64_grid(s).context("--theta-bound")?;
    }
    if let Some(s) = a.structure {
        c.structure = s.into();
    }
    if let Some(s) = a.seed {
        c.seed = s;
    }
    if let Some(s) = &a.c {
        c.c_grid = f64_grid(s).context("--c")?;
    }
    if let Some(s) = &a.tau {
        c.tau_grid = f64_grid(s).context("--tau")?;
    }
    if let Some(r) = a.reps {
        c.reps = r;
    }
    if let Some(s) = a.max_steps {
        c.max_steps = s;
    }
    if a.median {
        c.aggregate = Aggregate::Median;
    }
    if a.sequential {
        c.execution = Execution::Sequential;
    }
    c.validate()?;
    Ok(c)
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<W: Write>(mut w: W, out: &ExperimentOutput) -> Result<()> {
    match out {
        ExperimentOutput::Angles(r) => serde_json::to_writer_pretty(&mut w, r)?,
        ExperimentOutput::Theory(r) => serde_json::to_writer_pretty(&mut w, r)?,
        ExperimentOutput::MaxNu(r) => serde_json::to_writer_pretty(&mut w, r)?,
        ExperimentOutput::MinK(r) => serde_json::to_writer_pretty(&mut w, r)?,
        ExperimentOutput::Validation(r) => serde_json::to_writer_pretty(&mut w, r)?,
    }
    writeln!(w)?;
    Ok(())
}

fn run_experiment(experiment: Experiment, a: &ExperimentArgs) -> Result<()> {
    let cfg = build_config(experiment, a)?;
    // fail on an unwritable destination before spending time on trials
    let mut w = open_out(a.out.as_deref())?;
    let mut svg = match &a.svg {
        Some(p) => Some(File::create(p).with_context(|| format!("cannot write {}", p.display()))?),
        None => None,
    };
    log::info!("running {}", experiment.name());
    let out = harness::run(&cfg)?;
    if a.json {
        write_json(&mut w, &out)?;
    } else {
        out.write_csv(&mut w)?;
    }
    w.flush()?;
    if let Some(f) = svg.as_mut() {
        f.write_all(chart(&out).to_svg().as_bytes())?;
    }
    Ok(())
}

fn run_bounds(a: &BoundsArgs) -> Result<()> {
    let structure: CorrelationStructure = a.structure.into();
    let cs = match a.cs {
        Some(v) => v,
        None if a.family.is_smooth() => {
            let spec = EmbeddingSpec::generate(a.family, a.m, a.n, a.kmax, a.seed)?;
            let domain = tanlab::bounds::nu_bound_quad(a.m, a.n, a.kmax, structure)?;
            estimate_cs(&spec, domain, 41)?.cs
        }
        None => 0.0,
    };
    let mut p = BoundParams::new(a.m, a.n, a.kmax, 1.0, structure);
    p.cs = cs;
    p.s1 = a.s1;
    p.s2 = a.s2;
    p.p1 = a.p;
    p.p2 = a.p;
    p.p3 = a.p;
    p.tau = a.tau;
    p.nu = match a.nu {
        Some(v) => v,
        None => a.c * nu_bound_smooth(&p)?,
    };
    p = match a.s3 {
        Some(s3) => BoundParams { s3, ..p },
        None => {
            let regime = if cs > 0.0 { Regime::Smooth } else { Regime::Quad };
            p.with_s3_fraction(regime, 0.99)
                .context("cannot derive s3 at this width; pass --s3 explicitly")?
        }
    };
    let report = BoundReport::compute(&p)?;
    let mut w = open_out(a.out.as_deref())?;
    if a.json {
        serde_json::to_writer_pretty(&mut w, &report)?;
        writeln!(w)?;
    } else {
        report.write_csv(&mut w)?;
    }
    w.flush()?;
    Ok(())
}

fn run_spec_dump(a: &SpecDumpArgs) -> Result<()> {
    let spec = EmbeddingSpec::generate(a.family, a.m, a.n, a.kmax, a.seed)?;
    let mut w = open_out(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &spec)?;
    writeln!(w)?;
    w.flush()?;
    if let (Some(k), Some(path)) = (a.k, &a.cloud_out) {
        let cloud = sample_cloud(a.m, a.nu, k, a.seed, 0)?;
        let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
        write_cloud_csv(BufWriter::new(f), &[cloud])?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::AngleVsK(a) => run_experiment(Experiment::AngleVsK, a),
        Command::TheoryVsEmpirical(a) => run_experiment(Experiment::TheoryVsEmpirical, a),
        Command::MaxNu(s) => run_experiment(
            match s.vs {
                Axis::N => Experiment::MaxNuVsN,
                Axis::Kmax => Experiment::MaxNuVsKmax,
            },
            &s.common,
        ),
        Command::MinK(s) => run_experiment(
            match s.vs {
                Axis::N => Experiment::MinKVsN,
                Axis::Kmax => Experiment::MinKVsKmax,
            },
            &s.common,
        ),
        Command::ValidateBounds(a) => run_experiment(Experiment::ValidateBounds, a),
        Command::Bounds(a) => run_bounds(a),
        Command::SpecDump(a) => run_spec_dump(a),
    }
}

/// Parse `argv` (program name first), run, and return the process exit code:
/// 0 on success, 2 on a usage error, 1 on any other failure.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::new().parse_filters(level).try_init();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_syntax() {
        assert_eq!(usize_grid("5").unwrap(), vec![5]);
        assert_eq!(usize_grid("5, 10,15").unwrap(), vec![5, 10, 15]);
        assert_eq!(usize_grid("100:300:100").unwrap(), vec![100, 200, 300]);
        assert!(usize_grid("1:2").is_err());
        assert!(usize_grid("x").is_err());
        assert_eq!(f64_grid("0.5:1.5:0.5").unwrap(), vec![0.5, 1.0, 1.5]);
        assert_eq!(f64_grid("1.2,4").unwrap(), vec![1.2, 4.0]);
    }

    #[test]
    fn config_from_flags() {
        let cli = Cli::try_parse_from([
            "tanlab", "max-nu", "--vs", "kmax", "--n", "100", "--kmax", "1:3:1", "--k", "500", "--median",
        ])
        .unwrap();
        let Command::MaxNu(s) = &cli.command else { panic!() };
        let c = build_config(Experiment::MaxNuVsKmax, &s.common).unwrap();
        assert_eq!(c.kmax_grid, vec![1.0, 2.0, 3.0]);
        assert_eq!(c.k_fixed, 500);
        assert_eq!(c.aggregate, Aggregate::Median);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(cli_main(["tanlab", "no-such-command"]), 2);
        assert_eq!(cli_main(["tanlab", "angle-vs-k", "--structure", "sparse"]), 2);
        assert_eq!(cli_main(["tanlab", "angle-vs-k", "--k", "300:100:100"]), 1);
    }
}
