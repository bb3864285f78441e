//! Command implementations behind the `profile-atlas` binary.
//!
//! Every command returns its output as a string together with an exit code,
//! so the same code paths are exercised by the binary, the examples and the
//! tests. Exit codes: 0 success / inside / PASS, 1 outside / infeasible,
//! 2 usage error, 3 verification failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::density::{induced_density, profile3};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{named, parse_graph};
use crate::oracle::{
    default_flags, load_or_enumerate, min_goodman, psd_defect_scan, verify_total_probability,
    KNOWN_CLASS_COUNTS, MAX_CENSUS_N,
};
use crate::plot::{PlotSpec, ScatterSource};
use crate::randmodels::{concentration_test, expected_profile_tf, ModelParams};
use crate::rational::{binomial, fmt_decimal, fmt_exact, parse_rational, to_f64, Rational};
use crate::regions::{
    classify_k3, classify_tf, curve_points, region_inverse_k3, tf_inverse, Curve, PointK3, PointTF,
    Verdict, BOUNDARY_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OUTSIDE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Environment variable naming the census cache directory.
pub const CACHE_ENV: &str = "PROFILE_ATLAS_CACHE";

pub const PROFILE_CSV_HEADER: &str = "p0,p1,p2,p3";
pub const K3_BOUNDARY_HEADER: &str = "curve,t,p0,p3";
pub const TF_BOUNDARY_HEADER: &str = "curve,t,p0,p1";

#[derive(Parser, Debug)]
#[command(
    name = "profile-atlas",
    version,
    about = "Exact 3-vertex profiles and profile regions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact 3-vertex profile of a graph file (edge list or graph6).
    Profile {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Membership test for a profile point, or boundary samples.
    Region(RegionArgs),
    /// Model parameters realizing a target profile.
    Invert {
        #[arg(value_enum)]
        region: RegionKind,
        #[arg(allow_negative_numbers = true)]
        coords: Vec<String>,
    },
    /// Sample the two-block model and compare profiles to their limits.
    Sample(SampleArgs),
    /// Run census-based verification suites.
    Verify {
        n: usize,
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value = "all")]
        family: Family,
    },
    /// Render a region plot as SVG.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[arg(value_enum)]
    pub region: RegionKind,
    #[arg(allow_negative_numbers = true)]
    pub coords: Vec<String>,
    /// Emit this many samples per boundary curve instead of a verdict.
    #[arg(long)]
    pub boundary: Option<usize>,
    #[arg(long, default_value_t = BOUNDARY_TOL)]
    pub tolerance: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub x: f64,
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    #[arg(long, default_value_t = 0.5)]
    pub c: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(value_enum)]
    pub region: RegionKind,
    /// Census size for the scatter layer; 0 disables it.
    #[arg(long, default_value_t = 7)]
    pub n: usize,
    /// Census family; defaults to all graphs for k3 and triangle-free for tf.
    #[arg(long)]
    pub family: Option<Family>,
    /// Extra scatter CSV with header `p0,p1,p2,p3`.
    #[arg(long)]
    pub scatter: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    K3,
    Tf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TotalProb,
    Goodman,
    Psd,
    Census,
    All,
}

/// What a command produced: text for stdout, diagnostics for stderr, and the
/// process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, e: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, cache_dir().as_deref()),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn execute(cmd: &Command, cache: Option<&Path>) -> Outcome {
    match cmd {
        Command::Profile { file, format } => match std::fs::read_to_string(file) {
            Ok(text) => cmd_profile(&text, *format),
            Err(e) => Outcome::error(EXIT_USAGE, format!("{}: {e}", file.display())),
        },
        Command::Region(args) => cmd_region(args),
        Command::Invert { region, coords } => cmd_invert(*region, coords),
        Command::Sample(args) => match ModelParams::new(args.x, args.a, args.b, args.c) {
            Ok(params) => write_or_print(
                cmd_sample(&params, args.n, args.trials, args.seed),
                args.out.as_deref(),
            ),
            Err(e) => Outcome::error(EXIT_USAGE, e),
        },
        Command::Verify { n, suite, family } => cmd_verify(*n, *suite, *family, cache),
        Command::Plot(args) => {
            let spec = plot_spec(args);
            write_or_print(cmd_plot(&spec, cache), spec.out.as_deref())
        }
    }
}

fn write_or_print(outcome: Outcome, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) if outcome.code == EXIT_OK => match std::fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome::ok(format!("wrote {}\n", path.display())),
            Err(e) => Outcome::error(EXIT_USAGE, format!("{}: {e}", path.display())),
        },
        _ => outcome,
    }
}

/// Exact profile and `d(H;G)` for the four 3-vertex graphs.
pub fn cmd_profile(text: &str, format: Format) -> Outcome {
    let g = match parse_graph(text) {
        Ok(g) => g,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let p = match profile3(&g) {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let mut s = String::new();
    if format == Format::Csv {
        let _ = writeln!(s, "{PROFILE_CSV_HEADER}");
        let _ = writeln!(s, "{}", p.to_decimal_string().replace(' ', ","));
        return Outcome::ok(s);
    }
    let _ = writeln!(s, "{}", p.to_exact_string());
    let _ = writeln!(s, "{}", p.to_decimal_string());
    let _ = writeln!(s, "n={} edges={}", g.n(), g.edge_count());
    for (name, h) in ["K3bar", "P3bar", "P3", "K3"].iter().zip(named::triples()) {
        match induced_density(&h, &g) {
            Ok(d) => {
                let _ = writeln!(
                    s,
                    "d({name};G) = {} = {}",
                    fmt_exact(&d.0),
                    fmt_decimal(&d.0)
                );
            }
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    }
    Outcome::ok(s)
}

fn parse_coords(coords: &[String], count: std::ops::RangeInclusive<usize>) -> Result<Vec<f64>> {
    if !count.contains(&coords.len()) {
        return Err(Error::Invalid(format!(
            "expected {} coordinates, got {}",
            if count.start() == count.end() {
                count.start().to_string()
            } else {
                format!("{} to {}", count.start(), count.end())
            },
            coords.len()
        )));
    }
    coords
        .iter()
        .map(|c| {
            let r: Rational =
                parse_rational(c).ok_or_else(|| Error::Invalid(format!("cannot parse {c:?}")))?;
            let v = to_f64(&r);
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Invalid(format!("coordinate {c} outside [0,1]")));
            }
            Ok(v)
        })
        .collect()
}

fn verdict_line(v: &Verdict) -> (i32, String) {
    match v {
        Verdict::Inside { boundary } if boundary.is_empty() => (EXIT_OK, "inside\n".into()),
        Verdict::Inside { boundary } => {
            let names: Vec<&str> = boundary.iter().map(|c| c.name()).collect();
            (
                EXIT_OK,
                format!("inside (boundary: {})\n", names.join(", ")),
            )
        }
        Verdict::Outside { violated } => (EXIT_OUTSIDE, format!("outside ({})\n", violated.name())),
    }
}

pub fn cmd_region(args: &RegionArgs) -> Outcome {
    if let Some(count) = args.boundary {
        if !args.coords.is_empty() {
            return Outcome::error(EXIT_USAGE, "--boundary takes no coordinates");
        }
        let format = args.format.unwrap_or(Format::Csv);
        let outcome = match (format, args.region) {
            (Format::Csv, kind) => boundary_csv(kind, count),
            (Format::Svg, RegionKind::K3) => cmd_plot(&PlotSpec::k3(), None),
            (Format::Svg, RegionKind::Tf) => cmd_plot(&PlotSpec::tf(), None),
            (Format::Text, _) => {
                return Outcome::error(EXIT_USAGE, "--boundary supports csv or svg")
            }
        };
        return write_or_print(outcome, args.out.as_deref());
    }
    let verdict = match args.region {
        RegionKind::K3 => parse_coords(&args.coords, 2..=2)
            .and_then(|c| PointK3::new(c[0], c[1]))
            .map(|pt| classify_k3(&pt, args.tolerance)),
        RegionKind::Tf => parse_coords(&args.coords, 2..=3)
            .and_then(|c| match c.len() {
                2 => PointTF::from_p0_p1(c[0], c[1]),
                _ => PointTF::new(c[0], c[1], c[2]),
            })
            .map(|pt| classify_tf(&pt)),
    };
    match verdict {
        Ok(v) => {
            let (code, line) = verdict_line(&v);
            Outcome::with_code(code, line)
        }
        Err(e) => Outcome::error(EXIT_USAGE, e),
    }
}

/// Boundary samples: C1, C2 and the Goodman segment for k3, the curve where
/// `tf_slack` vanishes for tf.
pub fn boundary_csv(kind: RegionKind, count: usize) -> Outcome {
    if count < 2 {
        return Outcome::error(EXIT_USAGE, format!("need at least 2 samples, got {count}"));
    }
    let mut s = String::new();
    match kind {
        RegionKind::K3 => {
            let _ = writeln!(s, "{K3_BOUNDARY_HEADER}");
            for curve in [Curve::C1, Curve::C2] {
                for c in curve_points(curve, count).expect("count checked") {
                    let _ = writeln!(
                        s,
                        "{},{:.15},{:.15},{:.15}",
                        curve.name(),
                        c.t,
                        c.point.p0,
                        c.point.p3
                    );
                }
            }
            for i in 0..count {
                let t = i as f64 / (count - 1) as f64;
                let _ = writeln!(
                    s,
                    "goodman,{t:.15},{:.15},{:.15}",
                    0.25 * t,
                    0.25 * (1.0 - t)
                );
            }
        }
        RegionKind::Tf => {
            let _ = writeln!(s, "{TF_BOUNDARY_HEADER}");
            for (i, (p0, p1)) in crate::plot::tf_boundary(count)
                .into_iter()
                .take(count)
                .enumerate()
            {
                let t = i as f64 / (count - 1) as f64;
                let _ = writeln!(s, "tf-det,{t:.15},{p0:.15},{p1:.15}");
            }
        }
    }
    Outcome::ok(s)
}

fn fmt_param(v: f64) -> String {
    let r = format!("{v:.12}");
    let r = r.trim_end_matches('0').trim_end_matches('.');
    if r == "-0" {
        "0".into()
    } else {
        r.into()
    }
}

fn fmt_residual(r: f64) -> String {
    if r < 1e-12 {
        "residual<1e-12".into()
    } else {
        format!("residual={r:.3e}")
    }
}

pub fn cmd_invert(kind: RegionKind, coords: &[String]) -> Outcome {
    let c = match parse_coords(coords, 2..=2) {
        Ok(c) => c,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let infeasible = |e: Error| match e {
        Error::Infeasible(_) | Error::NoConvergence(_) => Outcome::error(EXIT_OUTSIDE, e),
        e => Outcome::error(EXIT_USAGE, e),
    };
    match kind {
        RegionKind::Tf => match tf_inverse(c[0], c[1]) {
            Ok((alpha, q)) => {
                let (e0, e1) = expected_profile_tf(alpha, q);
                let res = (e0 - c[0]).abs().max((e1 - c[1]).abs());
                Outcome::ok(format!(
                    "alpha={} q={} {}\n",
                    fmt_param(alpha),
                    fmt_param(q),
                    fmt_residual(res)
                ))
            }
            Err(e) => infeasible(e),
        },
        RegionKind::K3 => match PointK3::new(c[0], c[1]).and_then(|pt| region_inverse_k3(&pt)) {
            Ok(inv) => {
                let p = inv.params;
                Outcome::ok(format!(
                    "family={:?} x={} a={} params=(x={}, a={}, b={}, c={}) {}\n",
                    inv.family,
                    fmt_param(inv.x),
                    fmt_param(inv.a),
                    fmt_param(p.x),
                    fmt_param(p.a),
                    fmt_param(p.b),
                    fmt_param(p.c),
                    fmt_residual(inv.residual)
                ))
            }
            Err(e) => infeasible(e),
        },
    }
}

/// Concentration report as CSV; identical for identical arguments.
pub fn cmd_sample(params: &ModelParams, n: usize, trials: usize, seed: u64) -> Outcome {
    match concentration_test(params, n, trials, seed) {
        Ok(report) => Outcome::ok(report.to_csv()),
        Err(e) => Outcome::error(EXIT_USAGE, e),
    }
}

/// Exact lower bound on `p0+p3` at finite `n`: every vertex of degree `d`
/// lies in at most `d(n-1-d)` non-monochromatic triples, each counted twice.
pub fn goodman_finite_bound(n: usize) -> Rational {
    let total = binomial(n as u64, 3);
    if total == 0 {
        return Rational::from_integer(0.into());
    }
    let per_vertex = ((n as u128 - 1) * (n as u128 - 1)) / 4;
    // ⌈C(n,3) - n·per_vertex/2⌉, floored at 0
    let mixed = n as u128 * per_vertex / 2;
    let mono = total.saturating_sub(mixed);
    Rational::new((mono as i128).into(), (total as i128).into())
}

fn suite_total_prob(n: usize, family: Family, s: &mut String) -> Result<bool> {
    let r = verify_total_probability(n, &default_flags(), family)?;
    let _ = writeln!(
        s,
        "total-prob n={n} family={family} r={} classes={} violations={}",
        r.r,
        r.checked,
        r.violations.len()
    );
    Ok(r.violations.is_empty())
}

fn suite_goodman(n: usize, s: &mut String) -> Result<bool> {
    let min = min_goodman(n)?;
    let bound = goodman_finite_bound(n);
    let _ = writeln!(
        s,
        "goodman n={n} min(p0+p3)={} ({}) bound={}",
        fmt_exact(&min),
        fmt_decimal(&min),
        fmt_exact(&bound)
    );
    Ok(min >= bound)
}

fn suite_psd(n: usize, family: Family, s: &mut String) -> Result<bool> {
    let r = psd_defect_scan(n, family, &default_flags())?;
    let _ = writeln!(
        s,
        "psd n={n} family={family} classes={} max_defect={:.6e} n*max_defect={:.6} independent_defect={:.3e} factorization_failures={}",
        r.classes,
        r.max_defect,
        r.constant(),
        r.max_defect_independent.abs(),
        r.factorization_failures
    );
    Ok(r.factorization_failures == 0 && r.max_defect_independent == 0.0)
}

fn suite_census(n: usize, family: Family, cache: Option<&Path>, s: &mut String) -> Result<bool> {
    let census = load_or_enumerate(n, family, cache)?;
    let classes = census.classes.len();
    let labeled = census.labeled_total();
    let ok = if family == Family::All {
        let expected_labeled = 1u64 << (n * n.saturating_sub(1) / 2);
        classes == KNOWN_CLASS_COUNTS[n] && labeled == expected_labeled
    } else {
        classes > 0
    };
    let _ = writeln!(
        s,
        "census n={n} family={family} classes={classes} labeled={labeled}"
    );
    Ok(ok)
}

pub fn cmd_verify(n: usize, suite: Suite, family: Family, cache: Option<&Path>) -> Outcome {
    if n > MAX_CENSUS_N {
        return Outcome::error(
            EXIT_USAGE,
            format!("unsupported n={n}: census supports n <= {MAX_CENSUS_N}"),
        );
    }
    let suites: &[Suite] = match suite {
        Suite::All => &[Suite::Census, Suite::TotalProb, Suite::Goodman, Suite::Psd],
        _ => std::slice::from_ref(&suite),
    };
    let mut s = String::new();
    let mut all_ok = true;
    for &which in suites {
        let mut line = String::new();
        let result = match which {
            Suite::TotalProb => suite_total_prob(n, family, &mut line),
            Suite::Goodman => suite_goodman(n, &mut line),
            Suite::Psd => suite_psd(n, family, &mut line),
            Suite::Census => suite_census(n, family, cache, &mut line),
            Suite::All => unreachable!(),
        };
        match result {
            Ok(ok) => {
                all_ok &= ok;
                let _ = write!(s, "{} {line}", if ok { "PASS" } else { "FAIL" });
            }
            Err(e) => return Outcome::error(EXIT_USAGE, e),
        }
    }
    let _ = writeln!(s, "{}", if all_ok { "PASS" } else { "FAIL" });
    Outcome::with_code(if all_ok { EXIT_OK } else { EXIT_VERIFY_FAILED }, s)
}

pub fn plot_spec(args: &PlotArgs) -> PlotSpec {
    let (mut spec, default_family) = match args.region {
        RegionKind::K3 => (PlotSpec::k3(), Family::All),
        RegionKind::Tf => (PlotSpec::tf(), Family::TriangleFree),
    };
    if args.n > 0 {
        spec.scatter.push(ScatterSource::Census {
            n: args.n,
            family: args.family.unwrap_or(default_family),
        });
    }
    spec.scatter
        .extend(args.scatter.iter().cloned().map(ScatterSource::Csv));
    spec.out = args.out.clone();
    spec
}

pub fn cmd_plot(spec: &PlotSpec, cache: Option<&Path>) -> Outcome {
    match spec.render(cache) {
        Ok(svg) => Outcome::ok(svg),
        Err(e) => Outcome::error(EXIT_USAGE, e),
    }
}
