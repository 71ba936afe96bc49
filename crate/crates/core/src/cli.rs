//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cohomology::{augmentation, kernel_cup_length, one_pi_star, pi_star, AlgebraMap};
use crate::geom::path_json::sample_rows;
use crate::geom::{Path, SpherePoint, MEMBERSHIP_TOL};
use crate::harness::{self, Report, SpaceSpec, Suite, SuiteConfig};
use crate::json;
use crate::sphere_planner::{self, make_frame, SphereQuery};
use crate::torus_planner::{self, TorusQuery};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Admissible range for `--tol`.
pub const TOL_RANGE: (f64, f64) = (1e-14, 1e-6);

#[derive(Parser, Debug)]
#[command(
    name = "symm-mp",
    version,
    about = "Effectual motion planners on Z2-symmetric spaces"
)]
pub struct Cli {
    /// Membership tolerance, within [1e-14, 1e-6].
    #[arg(long, global = true, default_value_t = MEMBERSHIP_TOL)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Random seed.
    #[arg(long, global = true, env = "SYMM_MP_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plan a path with one of the planners.
    #[command(subcommand)]
    Plan(PlanCommand),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Kernel cup-length of a cohomology map.
    Cuplength(CupArgs),
    /// Check the broken-path identities.
    Identities(IdentityArgs),
}

#[derive(Subcommand, Debug)]
pub enum PlanCommand {
    /// From x ∈ T to the orbit of z in the Klein bottle.
    Torus {
        /// Angles a,b of the start point.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Angles of any lift of the target orbit.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Number of path samples in the output.
        #[arg(long, default_value_t = 33)]
        samples: usize,
    },
    /// From p ∈ Sⁿ to the line ℓ ∈ Pⁿ.
    Sphere {
        #[arg(long)]
        n: i64,
        /// Coordinates of the start point.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Coordinates of either unit vector of the line.
        #[arg(long, allow_hyphen_values = true)]
        l: String,
        #[arg(long, default_value_t = 33)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Torus,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Partition,
    Sections,
    Continuity,
    Identities,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    #[arg(long, value_enum)]
    pub space: SpaceArg,
    /// Sphere dimension.
    #[arg(long, default_value_t = 2)]
    pub n: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteArg,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Corrupt the run so that it must fail.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    OnePiStar,
    PiStar,
    Augmentation,
}

#[derive(Args, Debug)]
pub struct CupArgs {
    #[arg(long, value_enum, default_value_t = MapArg::OnePiStar)]
    pub map: MapArg,
    #[arg(long, default_value_t = 4)]
    pub max: usize,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long)]
    pub inject_fault: bool,
}

/// A usage problem detected after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

fn parse_floats(s: &str, what: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("{what}: cannot parse {t:?} as a number")))
        })
        .collect()
}

fn parse_pair(s: &str, what: &str) -> anyhow::Result<[f64; 2]> {
    match parse_floats(s, what)?.as_slice() {
        [a, b] => Ok([*a, *b]),
        v => Err(usage(format!(
            "{what}: expected two angles, got {}",
            v.len()
        ))),
    }
}

fn parse_sphere(s: &str, n: usize, what: &str) -> anyhow::Result<SpherePoint> {
    let v = parse_floats(s, what)?;
    if v.len() != n + 1 {
        return Err(usage(format!(
            "{what}: expected {} coordinates for S^{n}, got {}",
            n + 1,
            v.len()
        )));
    }
    SpherePoint::new(v).map_err(|e| usage(format!("{what}: {e}")))
}

fn space_spec(a: &SpaceArgs) -> anyhow::Result<SpaceSpec> {
    match a.space {
        SpaceArg::Torus => Ok(SpaceSpec::Torus),
        SpaceArg::Sphere if a.n >= 1 => Ok(SpaceSpec::Sphere(a.n as usize)),
        SpaceArg::Sphere => Err(usage(format!("invalid sphere dimension {}", a.n))),
    }
}

/// Rendered output and whether it counts as a success.
struct Output {
    text: String,
    ok: bool,
}

fn path_csv(path: &Path, samples: usize) -> String {
    let rows = sample_rows(path, samples.max(2));
    let width = rows.first().map_or(1, |r| r.len());
    let mut header = vec!["t".to_string()];
    header.extend((0..width - 1).map(|i| format!("c{i}")));
    json::csv(&header, &rows)
}

fn render<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = json::to_string(value).context("serializing output")?;
    s.push('\n');
    Ok(s)
}

fn report_output(r: &Report, format: Format) -> anyhow::Result<Output> {
    let text = match format {
        Format::Json => render(r)?,
        Format::Csv => {
            let mut s = String::from("check,passed,count,max_error,tolerance\n");
            for (name, c) in &r.checks {
                let f = |v: Option<f64>| v.map(json::fmt_f64).unwrap_or_default();
                s.push_str(&format!(
                    "{name},{},{},{},{}\n",
                    c.passed,
                    c.count,
                    f(c.max_error),
                    f(c.tolerance)
                ));
            }
            s.push_str(&format!(
                "negative_control,{},1,,\n",
                r.negative_control.detected
            ));
            s
        }
    };
    Ok(Output { text, ok: r.passed })
}

#[derive(Serialize)]
struct CupReport {
    map: String,
    max: usize,
    length: usize,
    witness: Vec<String>,
    product: String,
    kernel_dims: Vec<usize>,
    /// Domains any planner for this map needs: length + 1.
    domain_lower_bound: usize,
}

fn cup_output(a: &CupArgs, format: Format) -> anyhow::Result<Output> {
    let m: AlgebraMap = match a.map {
        MapArg::OnePiStar => one_pi_star(),
        MapArg::PiStar => pi_star(),
        MapArg::Augmentation => augmentation(),
    };
    let top = m.source().top_degree();
    if a.max > top {
        bail!(usage(format!(
            "--max {} exceeds the top degree {top} of the source",
            a.max
        )));
    }
    let c = kernel_cup_length(&m, a.max);
    let s = m.source();
    let r = CupReport {
        map: m.name().into(),
        max: a.max,
        length: c.length,
        witness: c.witness.iter().map(|w| s.format(*w)).collect(),
        product: s.format(c.product),
        kernel_dims: m.kernel_dims(),
        domain_lower_bound: c.length + 1,
    };
    let text = match format {
        Format::Json => render(&r)?,
        Format::Csv => {
            let mut s = String::from("degree,kernel_dim\n");
            for (d, k) in r.kernel_dims.iter().enumerate() {
                s.push_str(&format!("{d},{k}\n"));
            }
            s
        }
    };
    Ok(Output { text, ok: true })
}

fn execute(cli: &Cli) -> anyhow::Result<Output> {
    let (lo, hi) = TOL_RANGE;
    if !(lo..=hi).contains(&cli.tol) {
        bail!(usage(format!("--tol {} outside [{lo:e}, {hi:e}]", cli.tol)));
    }
    match &cli.command {
        Command::Plan(PlanCommand::Torus { x, z, samples }) => {
            let q = TorusQuery::from_angles(parse_pair(x, "--x")?, parse_pair(z, "--z")?);
            let r = torus_planner::plan_with_tol(&q, *samples, cli.tol);
            let text = match cli.format {
                Format::Json => render(&r)?,
                Format::Csv => path_csv(&r.path.node, *samples),
            };
            Ok(Output {
                text,
                ok: r.start_ok && r.endpoint_ok,
            })
        }
        Command::Plan(PlanCommand::Sphere { n, p, l, samples }) => {
            let f = make_frame(*n).map_err(|e| usage(e.to_string()))?;
            let q = SphereQuery::new(parse_sphere(p, f.n, "--p")?, parse_sphere(l, f.n, "--l")?);
            let r =
                sphere_planner::plan_with_tol(&f, &q, *samples, cli.tol).map_err(|e| anyhow!(e))?;
            let text = match cli.format {
                Format::Json => render(&r)?,
                Format::Csv => path_csv(&r.path.node, *samples),
            };
            Ok(Output {
                text,
                ok: r.start_ok && r.endpoint_ok,
            })
        }
        Command::Verify(v) => {
            let suite = match v.suite {
                SuiteArg::Partition => Suite::Partition,
                SuiteArg::Sections => Suite::Sections,
                SuiteArg::Continuity => Suite::Continuity,
                SuiteArg::Identities => Suite::Identities,
            };
            let cfg = SuiteConfig {
                tol: cli.tol,
                inject_fault: v.inject_fault,
                ..SuiteConfig::new(space_spec(&v.space)?, v.samples, cli.seed)
            };
            report_output(&harness::run(suite, &cfg), cli.format)
        }
        Command::Identities(a) => {
            let cfg = SuiteConfig {
                tol: cli.tol,
                inject_fault: a.inject_fault,
                ..SuiteConfig::new(space_spec(&a.space)?, a.count, cli.seed)
            };
            report_output(&harness::run(Suite::Identities, &cfg), cli.format)
        }
        Command::Cuplength(a) => cup_output(a, cli.format),
    }
}

/// Parse `args`, run, write output; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            return if code == 0 {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            } else {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            };
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return if e.is::<Usage>() {
                EXIT_USAGE
            } else {
                EXIT_FAILED
            };
        }
    };
    let written = match &cli.out {
        Some(path) => {
            std::fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))
        }
        None => stdout
            .write_all(out.text.as_bytes())
            .context("writing output"),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_FAILED;
    }
    if out.ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
