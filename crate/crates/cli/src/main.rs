//! `lerch`: evaluate the Lerch zeta function on its abelian cover, query
//! monodromy, run verification suites and export grids.

mod grid;
mod output;

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lerch::continuation::{classify, evaluate_on_cover};
use lerch::monodromy::{monodromy_contributions, monodromy_of_word};
use lerch::verify::{run_suite, Suite};
use lerch::{BranchState, Complex64, LerchError, Point3, Word};
use serde::Serialize;

use grid::{Axis, GridSpec, Range};
use output::{error_json, to_json, CliError, JsonComplex, Num};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "lerch", version, about = "Multivalued Lerch zeta function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct PointArgs {
    /// s as `re,im` (or `re`)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    s: Complex64,
    /// a as `re,im` (or `re`)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    a: Complex64,
    /// c as `re,im` (or `re`)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    c: Complex64,
}

impl PointArgs {
    fn point(&self) -> Point3<f64> {
        Point3::new(self.s, self.a, self.c)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z(s, a, c) on a sheet of the cover.
    Eval {
        #[command(flatten)]
        point: PointArgs,
        /// Sheet as a loop word (`X0 Y-1^2`) or windings (`kx[0]=1, ky[3]=7`)
        #[arg(long, default_value = "")]
        branch: String,
        /// Absolute error target
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Monodromy of Z around a loop word.
    Monodromy {
        /// Loop word, e.g. `X0 Y0 X0^-1 Y0^-1`
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Run seeded identity checks.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate on a grid in one coordinate and write CSV or JSON.
    Grid {
        #[arg(long, value_enum)]
        axis: GridAxis,
        /// Real-part range `lo,hi,steps`
        #[arg(long = "re", allow_hyphen_values = true, value_parser = parse_range)]
        re_range: Range,
        /// Imaginary-part range `lo,hi,steps`
        #[arg(long = "im", allow_hyphen_values = true, value_parser = parse_range, default_value = "0,0,1")]
        im_range: Range,
        /// Fixed coordinates; the one on the grid axis is ignored
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value = "")]
        branch: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GridAxis {
    S,
    A,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("expected re,im but got {text:?}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im but got {text:?}")),
    }
}

fn parse_range(text: &str) -> Result<Range, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || format!("expected lo,hi,steps but got {text:?}");
    match parts.as_slice() {
        [lo, hi, steps] => {
            let steps: usize = steps.parse().map_err(|_| bad())?;
            if steps == 0 {
                return Err("steps must be at least 1".into());
            }
            Ok(Range { lo: lo.parse().map_err(|_| bad())?, hi: hi.parse().map_err(|_| bad())?, steps })
        }
        _ => Err(bad()),
    }
}

fn parse_suite(text: &str) -> Result<Suite, String> {
    text.parse().map_err(|e: LerchError| e.to_string())
}

fn parse_branch(text: &str) -> Result<BranchState, LerchError> {
    if text.trim().is_empty() {
        Ok(BranchState::zero())
    } else {
        text.parse()
    }
}

#[derive(Serialize)]
struct PointJson {
    s: JsonComplex,
    a: JsonComplex,
    c: JsonComplex,
}

impl From<&Point3<f64>> for PointJson {
    fn from(p: &Point3<f64>) -> Self {
        Self { s: p.s.into(), a: p.a.into(), c: p.c.into() }
    }
}

#[derive(Serialize)]
struct EvalRecord {
    point: PointJson,
    value: JsonComplex,
    method: &'static str,
    region: &'static str,
    route: String,
    abs_err: Num,
    branch: String,
}

#[derive(Serialize)]
struct Winding {
    generator: String,
    k: i64,
}

#[derive(Serialize)]
struct Contribution {
    generator: String,
    k: i64,
    value: JsonComplex,
}

#[derive(Serialize)]
struct MonodromyRecord {
    word: String,
    point: PointJson,
    value: JsonComplex,
    abelianization: Vec<Winding>,
    contributions: Vec<Contribution>,
}

fn cmd_eval(point: &PointArgs, branch: &str, tol: f64) -> Result<String, CliError> {
    let p = point.point();
    let b = parse_branch(branch)?;
    let tag = classify(&p)?;
    let v = evaluate_on_cover(&p, &b, tol)?;
    Ok(to_json(&EvalRecord {
        point: (&p).into(),
        value: v.value.into(),
        method: v.method.as_str(),
        region: tag.as_str(),
        route: v.route,
        abs_err: Num(v.abs_err),
        branch: b.to_string(),
    }))
}

fn cmd_monodromy(word: &str, point: &PointArgs) -> Result<String, CliError> {
    let w: Word = word.parse()?;
    let p = point.point();
    p.validate()?;
    let b = w.abelianize();
    let value = monodromy_of_word(&w, p.s, p.a, p.c)?;
    let contributions = monodromy_contributions(&b, p.s, p.a, p.c)?
        .into_iter()
        .map(|(g, k, v)| Contribution { generator: g.to_string(), k, value: v.into() })
        .collect();
    Ok(to_json(&MonodromyRecord {
        word: w.to_string(),
        point: (&p).into(),
        value: value.into(),
        abelianization: b.iter().map(|(g, k)| Winding { generator: g.to_string(), k }).collect(),
        contributions,
    }))
}

fn cmd_verify(suite: Suite, samples: usize, seed: u64) -> ExitCode {
    let checks = run_suite(suite, samples, seed);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    println!(
        "suite {}: {} ({} checks, {} failed, seed {seed})",
        suite.as_str(),
        if failed == 0 { "PASS" } else { "FAIL" },
        checks.len(),
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("LERCH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n >= 1 {
            // a second initialization attempt is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn cmd_grid(spec: &GridSpec, format: Format, out: &PathBuf) -> Result<String, CliError> {
    let file = File::create(out).map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;
    configure_threads();
    let rows = spec.evaluate();
    let w = BufWriter::new(file);
    match format {
        Format::Csv => grid::write_csv(&rows, w)?,
        Format::Json => grid::write_json(&rows, w)?,
    }
    let skipped = rows.iter().filter(|r| r.value.is_none()).count();
    Ok(format!("wrote {} rows ({skipped} skipped) to {}", rows.len(), out.display()))
}

fn report(result: Result<String, CliError>) -> ExitCode {
    match result {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { point, branch, tol } => report(cmd_eval(&point, &branch, tol)),
        Command::Monodromy { word, point } => report(cmd_monodromy(&word, &point)),
        Command::Verify { suite, samples, seed } => cmd_verify(suite, samples, seed),
        Command::Grid { axis, re_range, im_range, point, branch, tol, format, out } => {
            let spec = parse_branch(&branch).map(|b| GridSpec {
                axis: match axis {
                    GridAxis::S => Axis::S,
                    GridAxis::A => Axis::A,
                    GridAxis::C => Axis::C,
                },
                re: re_range,
                im: im_range,
                fixed: point.point(),
                branch: b,
                tol,
            });
            report(spec.map_err(CliError::from).and_then(|s| cmd_grid(&s, format, &out)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_and_range_parsing() {
        assert_eq!(parse_complex("-0.5,2").unwrap(), Complex64::new(-0.5, 2.0));
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert_eq!(parse_range("0,1,11").unwrap(), Range { lo: 0.0, hi: 1.0, steps: 11 });
        assert!(parse_range("0,1,0").is_err());
    }

    #[test]
    fn empty_branch_is_principal() {
        assert!(parse_branch("  ").unwrap().is_zero());
        assert_eq!(parse_branch("kx[0]=2").unwrap().kx(0), 2);
    }
}
