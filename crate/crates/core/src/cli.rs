//! The `selfrecip` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 numerical contract violation.

use crate::cstransform::TransformConfig;
use crate::eigenchain::{decompose, evaluate_big_e, evaluate_e, ChainCoordinate, ChainDensity};
use crate::grid::{GridFunction, RadialGrid};
use crate::special::StripPoint;
use crate::verify::{run_suite, Suite};
use crate::{Complex64, Error, Family, Result, Sign};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "selfrecip",
    version,
    about = "Eigenspace numerics for the half-line cosine and sine transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a generalized eigenfunction E(t, a) or a chain e(t, τ).
    Eigenfun(EigenfunArgs),
    /// Split sampled data into its ±1 eigenspace components.
    Decompose(DecomposeArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct EigenfunArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_parser = parse_sign)]
    pub sign: Sign,
    /// Strip parameter, `0.3` or `0.3+2i`.
    #[arg(long, value_parser = parse_complex, conflicts_with = "tau", required_unless_present = "tau")]
    pub a: Option<Complex64>,
    /// Chain coordinate τ > 0.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Log-uniform grid `LO:HI:N`.
    #[arg(long, value_parser = parse_grid)]
    pub grid: RadialGrid,
    /// CSV output; the manifest goes next to it as `<stem>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// `t,re,im` CSV or grid-function JSON.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Report path; the manifest goes next to it as `<stem>.manifest.json`.
    #[arg(long, default_value = "report.json")]
    pub out: PathBuf,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `re`, `re+imi`, `re-imi`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a number of the form RE or RE+IMi");
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not an exponent sign or a leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re = body[..split].parse::<f64>().map_err(|_| bad())?;
    let im_text = &body[split..];
    let im = match im_text {
        "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

pub fn parse_grid(s: &str) -> std::result::Result<RadialGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("grid `{s}` is not of the form LO:HI:N"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad LO `{lo}`"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad HI `{hi}`"))?;
    let n: usize = n.parse().map_err(|_| format!("bad N `{n}`"))?;
    RadialGrid::new(lo, hi, n).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridParams {
    pub t_lo: f64,
    pub t_hi: f64,
    pub n: usize,
}

impl From<&RadialGrid> for GridParams {
    fn from(g: &RadialGrid) -> Self {
        GridParams {
            t_lo: g.t_lo(),
            t_hi: g.t_hi(),
            n: g.len(),
        }
    }
}

/// Record of one run. Field order and map ordering are fixed, and nothing
/// time-dependent is stored, so equal runs give equal files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub config: TransformConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub residuals: BTreeMap<String, Option<f64>>,
}

impl RunManifest {
    fn new(command: &str, config: TransformConfig) -> Self {
        RunManifest {
            command: command.into(),
            parameters: BTreeMap::new(),
            config,
            grid: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            residuals: BTreeMap::new(),
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.into(), value.to_string());
    }

    fn write(&mut self, path: &Path) -> Result<()> {
        self.outputs.push(display(path));
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

fn display(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

/// `dir/name.csv` → `dir/name.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.manifest.json"))
}

fn write_output(path: &Path, contents: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    contents(&mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

fn cmd_eigenfun(args: &EigenfunArgs, cfg: TransformConfig) -> Result<u8> {
    let mut manifest = RunManifest::new("eigenfun", cfg);
    manifest.param("family", args.family);
    manifest.param("sign", args.sign);
    manifest.grid = Some((&args.grid).into());
    let values: Vec<Complex64> = match (args.a, args.tau) {
        (Some(a), _) => {
            let a = StripPoint::new(a)?;
            manifest.param("a", format!("{}", a.value()));
            args.grid
                .nodes()
                .iter()
                .map(|&t| evaluate_big_e(args.family, args.sign, a, t))
                .collect::<Result<_>>()?
        }
        (None, Some(tau)) => {
            let coord = ChainCoordinate::new(args.family, args.sign, tau)?;
            manifest.param("tau", tau);
            args.grid
                .nodes()
                .iter()
                .map(|&t| evaluate_e(coord, t).map(|v| Complex64::new(v, 0.0)))
                .collect::<Result<_>>()?
        }
        (None, None) => return Err(Error::Parse("one of --a or --tau is required".into())),
    };
    let f = GridFunction::new(args.grid, values)?;
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_output(&args.out, |buf| f.write_csv(buf))?;
    manifest.outputs.push(display(&args.out));
    manifest.write(&manifest_path(&args.out))?;
    Ok(EXIT_OK)
}

enum Output<'a> {
    Grid(&'a GridFunction),
    Density(&'a ChainDensity),
}

fn cmd_decompose(args: &DecomposeArgs, cfg: TransformConfig) -> Result<u8> {
    let x = GridFunction::read_path(&args.input)?;
    let mut manifest = RunManifest::new("decompose", cfg);
    manifest.param("family", args.family);
    manifest.grid = Some(x.grid().into());
    manifest.inputs.push(display(&args.input));
    let d = decompose(&x, args.family, &cfg)?;
    fs::create_dir_all(&args.out_dir)?;
    let outputs = [
        ("x_plus.csv", Output::Grid(&d.x_plus)),
        ("x_minus.csv", Output::Grid(&d.x_minus)),
        ("density_plus.csv", Output::Density(&d.density_plus)),
        ("density_minus.csv", Output::Density(&d.density_minus)),
    ];
    for (name, out) in outputs {
        let path = args.out_dir.join(name);
        write_output(&path, |buf| match out {
            Output::Grid(f) => f.write_csv(buf),
            Output::Density(phi) => phi.write_csv(buf),
        })?;
        manifest.outputs.push(display(&path));
    }
    for (name, r) in d.residuals.entries() {
        manifest.residuals.insert(name.to_string(), Some(r));
    }
    manifest.write(&args.out_dir.join("manifest.json"))?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, cfg: TransformConfig) -> Result<u8> {
    let report = run_suite(args.suite, &cfg);
    for c in &report.checks {
        let r = c.residual.map_or("-".to_string(), |r| format!("{r:.3e}"));
        let status = if c.pass { "PASS" } else { "FAIL" };
        match &c.error {
            Some(e) => println!("{status} {} {r} (tol {:.0e}) {e}", c.name, c.tol),
            None => println!("{status} {} {r} (tol {:.0e})", c.name, c.tol),
        }
    }
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(&args.out, report.to_json()? + "\n")?;
    let mut manifest = RunManifest::new("verify", cfg);
    manifest.param("suite", args.suite);
    manifest.outputs.push(display(&args.out));
    for c in &report.checks {
        manifest.residuals.insert(c.name.clone(), c.residual);
    }
    manifest.write(&manifest_path(&args.out))?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = TransformConfig::from_env().and_then(|cfg| match &cli.command {
        Command::Eigenfun(a) => cmd_eigenfun(a, cfg),
        Command::Decompose(a) => cmd_decompose(a, cfg),
        Command::Verify(a) => cmd_verify(a, cfg),
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("selfrecip: {e}");
            if e.is_input_error() {
                EXIT_USAGE
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_flags() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("0.3+2i").unwrap(), Complex64::new(0.3, 2.0));
        assert_eq!(parse_complex("0.3-1.5i").unwrap(), Complex64::new(0.3, -1.5));
        assert_eq!(parse_complex("2e-1+1e-3i").unwrap(), Complex64::new(0.2, 1e-3));
        assert_eq!(parse_complex("0.5-i").unwrap(), Complex64::new(0.5, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1i").is_err());
    }

    #[test]
    fn grid_flag() {
        let g = parse_grid("1e-3:1e3:4096").unwrap();
        assert_eq!(g.len(), 4096);
        assert!((g.t_lo() - 1e-3).abs() < 1e-15);
        assert!((g.t_hi() / 1e3 - 1.0).abs() < 1e-12);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("2:1:100").is_err());
    }

    #[test]
    fn manifest_sits_next_to_output() {
        assert_eq!(
            manifest_path(Path::new("out/e.csv")),
            PathBuf::from("out/e.manifest.json")
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["selfrecip", "eigenfun", "--sign", "plus"]), EXIT_USAGE);
        assert_eq!(run(["selfrecip", "bogus"]), EXIT_USAGE);
    }
}
