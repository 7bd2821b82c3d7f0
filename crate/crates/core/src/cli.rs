//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::alpha::Alpha;
use crate::analytic::{m_of_alpha, Rectangle};
use crate::classifier::{classify_curve, classify_rectangle, ClassifyOptions, StripClassification};
use crate::geometry::{build_topped_substrip, CurveError, StripCurve, DEFAULT_SEGMENTS_PER_ARC};
use crate::oracle::{oracle_curve, oracle_rectangle, ratio, OracleError};
use crate::report::{self, fmt_g, relative_gap, SweepRow};
use crate::svg;

/// Overrides the default polygon resolution (chords per quarter arc).
pub const SEGMENTS_ENV: &str = "ALPHA_CHEEGER_SEGMENTS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "alpha-cheeger",
    version,
    about = "Closed-form alpha-Cheeger sets of rectangles, strips and annuli"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a rectangle, given as `R_L` or by its side lengths.
    Rect(RectArgs),
    /// Classify the unit-width strip or annulus around a spine read from JSON.
    Strip(StripArgs),
    /// Classify `R_L` over a grid of lengths and exponents.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Exponent in (1, 2).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Compare against the polygon oracle; exit 3 if the gap exceeds the tolerance.
    #[arg(long)]
    pub verify: bool,
    /// Relative tolerance for --verify; defaults by resolution.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Chords per quarter arc for polygons.
    #[arg(long)]
    pub segments: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RectArgs {
    /// Length of `(0, L) x (-1, 1)`; `inf` for the infinite strip.
    #[arg(long, required_unless_present = "sides", conflicts_with = "sides")]
    pub length: Option<f64>,
    /// Side lengths of an arbitrary rectangle.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub sides: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
    /// Write a picture of the domain and its Cheeger sets.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Print the classification as JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct StripArgs {
    /// Curve file.
    pub file: PathBuf,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Exponents: a comma list or `start:stop:step`.
    #[arg(long)]
    pub alphas: String,
    /// Lengths: a comma list or `start:stop:step`.
    #[arg(long)]
    pub lengths: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Fill the oracle_h and gap columns; exit 3 if any gap exceeds the tolerance.
    #[arg(long)]
    pub verify: bool,
    /// Relative tolerance for --verify; defaults by resolution.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Chords per quarter arc for oracle polygons.
    #[arg(long)]
    pub segments: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
}

/// A failure that maps to [`EXIT_USAGE`].
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

/// Default verification tolerance for a resolution: `1e-3` at 100 chords per
/// quarter arc, shrinking quadratically, never below `1e-6`.
pub fn default_tolerance(segments: usize) -> f64 {
    (1e-3 * (100.0 / segments.max(1) as f64).powi(2)).clamp(1e-6, 1e-3)
}

/// Resolution from the flag, then [`SEGMENTS_ENV`], then the built-in default.
pub fn resolve_segments(flag: Option<usize>, env: Option<&str>) -> Result<usize, UsageError> {
    let (n, source) = match (flag, env) {
        (Some(n), _) => (n, "--segments"),
        (None, Some(v)) => (
            v.trim().parse::<usize>().map_err(|_| {
                UsageError(format!("{SEGMENTS_ENV} must be an integer, got {v:?}"))
            })?,
            SEGMENTS_ENV,
        ),
        (None, None) => (DEFAULT_SEGMENTS_PER_ARC, "default"),
    };
    if n < 4 {
        return Err(UsageError(format!("{source} must be at least 4, got {n}")));
    }
    Ok(n)
}

/// Parses `a,b,c` or `start:stop:step` into an increasing list of values.
pub fn parse_values(text: &str) -> Result<Vec<f64>, UsageError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| UsageError(format!("not a number: {s:?}")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single.split(',').map(parse).collect::<Result<Vec<_>, _>>()?,
        [a, b, step] => {
            let (a, b, step) = (parse(a)?, parse(b)?, parse(step)?);
            if !(a.is_finite() && b.is_finite() && step.is_finite() && step > 0.0 && b >= a) {
                return Err(UsageError(format!("bad range {text:?}")));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return Err(UsageError(format!("range {text:?} has too many points")));
            }
            // round to the printed precision so grid points compare exactly
            (0..=n)
                .map(|k| fmt_g(a + step * k as f64).parse::<f64>().expect("fmt_g output parses"))
                .collect()
        }
        _ => return Err(UsageError(format!("expected a list or start:stop:step, got {text:?}"))),
    };
    if values.is_empty() {
        return Err(UsageError(format!("empty list {text:?}")));
    }
    Ok(values)
}

/// Oracle value of `h_α` for a rectangle, in the caller's units.
pub fn rectangle_oracle_h(rect: Rectangle, alpha: Alpha, segments: usize) -> Result<f64, OracleError> {
    if rect.is_infinite() {
        return ratio(&build_topped_substrip(m_of_alpha(alpha), segments)?, alpha);
    }
    let o = oracle_rectangle(rect.length(), alpha, segments)?;
    Ok(o.solution.scaled(rect.scale_to_user(), alpha).h_alpha)
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the program on `args` (including the program name) and returns the
/// process exit code. `env_segments` is the value of [`SEGMENTS_ENV`].
pub fn run<I, T>(args: I, env_segments: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match &cli.command {
        Command::Rect(a) => cmd_rect(a, env_segments, &mut io),
        Command::Strip(a) => cmd_strip(a, env_segments, &mut io),
        Command::Sweep(a) => cmd_sweep(a, env_segments, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// [`run`] on the process arguments and environment.
pub fn main_from_env() -> i32 {
    let env = std::env::var(SEGMENTS_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        env.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

fn verification(
    io: &mut Io,
    h: f64,
    oracle: f64,
    tolerance: f64,
) -> Result<i32, UsageError> {
    let gap = relative_gap(h, oracle);
    io.out.write_all(report::render_verification(h, oracle).as_bytes())?;
    if gap <= tolerance {
        writeln!(io.out, "verification: ok (tolerance {})", fmt_g(tolerance))?;
        Ok(EXIT_OK)
    } else {
        writeln!(
            io.out,
            "verification: FAILED (gap {} exceeds tolerance {})",
            fmt_g(gap),
            fmt_g(tolerance)
        )?;
        Ok(EXIT_VERIFY)
    }
}

fn emit(io: &mut Io, c: &StripClassification, json: bool) -> Result<(), UsageError> {
    if json {
        writeln!(io.out, "{}", serde_json::to_string_pretty(c)?)?;
    } else {
        io.out.write_all(report::render(c).as_bytes())?;
    }
    Ok(())
}

fn write_svg(io: &mut Io, path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    writeln!(io.err, "wrote {}", path.display())?;
    Ok(())
}

fn tolerance_for(flag: Option<f64>, segments: usize) -> Result<f64, UsageError> {
    match flag {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            Err(UsageError(format!("tolerance must be positive, got {t}")))
        }
        Some(t) => Ok(t),
        None => Ok(default_tolerance(segments)),
    }
}

fn cmd_rect(a: &RectArgs, env: Option<&str>, io: &mut Io) -> Result<i32, UsageError> {
    let segments = resolve_segments(a.common.segments, env)?;
    let tolerance = tolerance_for(a.common.tolerance, segments)?;
    let alpha = Alpha::new(a.common.alpha)?;
    let rect = match (&a.sides, a.length) {
        (Some(s), _) => Rectangle::from_sides(s[0], s[1])?,
        (None, Some(l)) if l.is_infinite() && l > 0.0 => Rectangle::infinite(),
        (None, Some(l)) => Rectangle::normalized(l)?,
        (None, None) => return Err(UsageError("one of --length or --sides is required".into())),
    };
    let c = classify_rectangle(rect, alpha)?;
    emit(io, &c, a.json)?;
    if let Some(path) = &a.svg {
        write_svg(io, path, &svg::rectangle_svg(rect, &c)?)?;
    }
    if a.common.verify {
        let oracle = rectangle_oracle_h(rect, alpha, segments)?;
        return verification(io, c.solution.h_alpha, oracle, tolerance);
    }
    Ok(EXIT_OK)
}

fn load_curve(path: &Path) -> Result<StripCurve, UsageError> {
    StripCurve::load(path).map_err(|e| match e {
        CurveError::Invalid(violations) => {
            let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
            UsageError(format!(
                "{}: invalid curve\n{}",
                path.display(),
                lines.join("\n")
            ))
        }
        other => UsageError(other.to_string()),
    })
}

fn cmd_strip(a: &StripArgs, env: Option<&str>, io: &mut Io) -> Result<i32, UsageError> {
    let segments = resolve_segments(a.common.segments, env)?;
    let tolerance = tolerance_for(a.common.tolerance, segments)?;
    let alpha = Alpha::new(a.common.alpha)?;
    let curve = load_curve(&a.file)?;
    let options = ClassifyOptions {
        segments_per_arc: segments,
        ..ClassifyOptions::default()
    };
    let c = classify_curve(&curve, alpha, &options)?;
    emit(io, &c, a.json)?;
    if let Some(path) = &a.svg {
        write_svg(io, path, &svg::curve_svg(&curve, &c)?)?;
    }
    if a.common.verify {
        let oracle = oracle_curve(&curve, alpha, segments, &options.fit)?;
        return verification(io, c.solution.h_alpha, oracle.h, tolerance);
    }
    Ok(EXIT_OK)
}

/// Classifies every `(L, α)` cell in parallel; rows come back sorted.
pub fn sweep_rows(
    lengths: &[f64],
    alphas: &[f64],
    verify_segments: Option<usize>,
) -> Result<Vec<SweepRow>, UsageError> {
    let mut cells: Vec<(f64, f64)> = lengths
        .iter()
        .flat_map(|&l| alphas.iter().map(move |&a| (l, a)))
        .collect();
    cells.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    cells.dedup();
    cells
        .par_iter()
        .map(|&(l, a)| {
            let alpha = Alpha::new(a)?;
            let rect = if l.is_infinite() && l > 0.0 {
                Rectangle::infinite()
            } else {
                Rectangle::normalized(l)?
            };
            let classification = classify_rectangle(rect, alpha)?;
            let oracle_h = match verify_segments {
                Some(n) => Some(rectangle_oracle_h(rect, alpha, n)?),
                None => None,
            };
            Ok(SweepRow {
                length: l,
                alpha: a,
                classification,
                oracle_h,
            })
        })
        .collect()
}

fn cmd_sweep(a: &SweepArgs, env: Option<&str>, io: &mut Io) -> Result<i32, UsageError> {
    let segments = resolve_segments(a.segments, env)?;
    let tolerance = tolerance_for(a.tolerance, segments)?;
    let lengths = parse_values(&a.lengths)?;
    let alphas = parse_values(&a.alphas)?;
    let rows = sweep_rows(&lengths, &alphas, a.verify.then_some(segments))?;
    let text = match a.format {
        Format::Table => report::render_table(&rows),
        Format::Csv => report::render_csv(&rows),
    };
    io.out.write_all(text.as_bytes())?;
    if !a.verify {
        return Ok(EXIT_OK);
    }
    let worst = rows
        .iter()
        .filter_map(|r| r.gap().map(|g| (g, r)))
        .max_by(|x, y| x.0.total_cmp(&y.0));
    let failures = rows
        .iter()
        .filter(|r| r.gap().is_some_and(|g| !(g <= tolerance)))
        .count();
    if let Some((g, r)) = worst {
        writeln!(
            io.err,
            "max gap {} at L = {}, alpha = {}; {} of {} cells exceed {}",
            fmt_g(g),
            fmt_g(r.length),
            fmt_g(r.alpha),
            failures,
            rows.len(),
            fmt_g(tolerance)
        )?;
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["alpha-cheeger"];
        full.extend_from_slice(args);
        let code = run(full, env, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn value_lists_and_ranges() {
        assert_eq!(parse_values("1.1, 1.5,1.9").unwrap(), vec![1.1, 1.5, 1.9]);
        let r = parse_values("1.1:1.5:0.1").unwrap();
        assert_eq!(r, vec![1.1, 1.2, 1.3, 1.4, 1.5]);
        assert_eq!(parse_values("inf").unwrap(), vec![f64::INFINITY]);
        assert!(parse_values("1:0:0.1").is_err());
        assert!(parse_values("x").is_err());
        assert!(parse_values("1:2").is_err());
    }

    #[test]
    fn resolution_precedence() {
        assert_eq!(resolve_segments(Some(50), Some("200")).unwrap(), 50);
        assert_eq!(resolve_segments(None, Some("200")).unwrap(), 200);
        assert_eq!(resolve_segments(None, None).unwrap(), DEFAULT_SEGMENTS_PER_ARC);
        assert!(resolve_segments(None, Some("many")).is_err());
        assert!(resolve_segments(Some(2), None).is_err());
        assert_eq!(default_tolerance(100), 1e-3);
        assert_eq!(default_tolerance(10_000), 1e-6);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["rect", "--length", "10", "--alpha", "1.5"], None).0, 0);
        assert_eq!(run_args(&["rect", "--length", "10", "--alpha", "2.5"], None).0, 2);
        assert_eq!(run_args(&["rect", "--length", "1", "--alpha", "1.5"], None).0, 2);
        assert_eq!(run_args(&["rect", "--alpha", "1.5"], None).0, 2);
        assert_eq!(run_args(&["bogus"], None).0, 2);
        let (code, _, err) = run_args(&["rect", "--length", "10", "--alpha", "1.5"], Some("0"));
        assert_eq!(code, 2);
        assert!(err.contains(SEGMENTS_ENV));
        assert_eq!(run_args(&["--help"], None).0, 0);
    }

    #[test]
    fn verify_gap_exit() {
        let (code, out, _) = run_args(
            &["rect", "--length", "3", "--alpha", "1.5", "--verify", "--segments", "200"],
            None,
        );
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("verification: ok"));
        // a coarse polygon cannot meet a tight tolerance
        let (code, out, _) = run_args(
            &[
                "rect", "--length", "3", "--alpha", "1.5", "--verify", "--segments", "8",
                "--tolerance", "1e-9",
            ],
            None,
        );
        assert_eq!(code, 3, "{out}");
    }

    #[test]
    fn sweep_csv_is_ordered() {
        let (code, out, _) = run_args(
            &["sweep", "--alphas", "1.9,1.2", "--lengths", "5,2", "--format", "csv"],
            None,
        );
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], report::CSV_HEADER);
        assert!(lines[1].starts_with("2,1.2,"));
        assert!(lines[4].starts_with("5,1.9,"));
    }
}
