//! Command-line front end. `run` is the whole program minus process exit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::dynamics::{self, Mode, PortraitSpec};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::model::{KopelParams, SymParams, MAX_CLI_M};
use crate::snapback::{self, SnapbackOptions};
use crate::solve2d::Verdict;
use crate::stability::{self, AxisSpec, ScanGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

pub const MAX_DEPTH_ENV: &str = "KOPEL_CERT_MAX_DEPTH";

fn rat_arg(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

fn axis_arg(s: &str) -> std::result::Result<AxisSpec, String> {
    AxisSpec::parse(s).map_err(|e| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "kopel", version, about = "Exact analysis of the Kopel duopoly map")]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SymArgs {
    #[arg(long, value_parser = rat_arg)]
    pub rho: Rational,
    #[arg(long, value_parser = rat_arg)]
    pub mu: Rational,
}

/// Either `--mu/--rho` (symmetric) or `--mu1 --mu2 [--rho1 --rho2]`.
#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    #[arg(long, value_parser = rat_arg, conflicts_with_all = ["mu1", "mu2"])]
    pub mu: Option<Rational>,
    #[arg(long, value_parser = rat_arg, conflicts_with_all = ["rho1", "rho2"])]
    pub rho: Option<Rational>,
    #[arg(long, value_parser = rat_arg)]
    pub mu1: Option<Rational>,
    #[arg(long, value_parser = rat_arg)]
    pub mu2: Option<Rational>,
    #[arg(long, value_parser = rat_arg)]
    pub rho1: Option<Rational>,
    #[arg(long, value_parser = rat_arg)]
    pub rho2: Option<Rational>,
}

impl MapArgs {
    fn params(&self) -> Result<KopelParams> {
        let one = || Rational::from_integer(1.into());
        match (&self.mu, &self.mu1, &self.mu2) {
            (Some(mu), None, None) => {
                Ok(SymParams::new(mu.clone(), self.rho.clone().unwrap_or_else(one))?.to_kopel())
            }
            (None, Some(a), Some(b)) => KopelParams::new(
                a.clone(),
                b.clone(),
                self.rho1.clone().unwrap_or_else(one),
                self.rho2.clone().unwrap_or_else(one),
            ),
            _ => Err(Error::Usage("give either --mu or both --mu1 and --mu2".into())),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Bigfloat,
}

#[derive(Args, Debug, Clone)]
pub struct TrajArgs {
    #[command(flatten)]
    pub map: MapArgs,
    #[arg(long, value_parser = rat_arg, default_value = "2/5")]
    pub x0: Rational,
    #[arg(long, value_parser = rat_arg, default_value = "1/100")]
    pub y0: Rational,
    /// Number of iterations.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Big-float precision in bits (also the fallback after the exact cap).
    #[arg(long, default_value_t = dynamics::DEFAULT_PRECISION)]
    pub precision: usize,
    /// Numerator bit cap for exact mode.
    #[arg(long, default_value_t = dynamics::DEFAULT_CAP_BITS)]
    pub cap_bits: u64,
    /// Significant digits in decimal output.
    #[arg(long, default_value_t = 17)]
    pub digits: usize,
    /// Add `x_exact,y_exact` columns to CSV output.
    #[arg(long)]
    pub exact_columns: bool,
}

impl TrajArgs {
    fn mode(&self) -> Result<Mode> {
        if self.precision < 2 {
            return Err(Error::Usage("precision must be at least 2 bits".into()));
        }
        Ok(match self.mode {
            ModeArg::Exact => Mode::Exact { cap_bits: self.cap_bits, fallback_precision: self.precision },
            ModeArg::Bigfloat => Mode::Bigfloat { precision: self.precision },
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count and isolate the equilibria of the map.
    Equilibria {
        #[arg(long, value_parser = rat_arg)]
        mu1: Rational,
        #[arg(long, value_parser = rat_arg)]
        mu2: Rational,
        /// Also list the origin.
        #[arg(long)]
        include_zero: bool,
    },
    /// Jury classification of the positive equilibria, or the sample table.
    Stability {
        #[arg(long, value_parser = rat_arg, required_unless_present = "table")]
        mu1: Option<Rational>,
        #[arg(long, value_parser = rat_arg, required_unless_present = "table")]
        mu2: Option<Rational>,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        rho1: Rational,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        rho2: Rational,
        /// Verify the 39-row sample table instead.
        #[arg(long)]
        table: bool,
    },
    /// Classifier signs and counts over a parameter grid, as CSV.
    Scan {
        /// `lo:hi:n` or a single value.
        #[arg(long, value_parser = axis_arg)]
        mu1: AxisSpec,
        #[arg(long, value_parser = axis_arg)]
        mu2: AxisSpec,
        /// rho1 = rho2 axis; enables stable counts.
        #[arg(long, value_parser = axis_arg)]
        rho: Option<AxisSpec>,
        /// Comma-separated subset of R1, mu1mu2_minus_1, S3, H3, A1, A2.
        #[arg(long, value_delimiter = ',')]
        classifiers: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeller test at a fixed point of the symmetric map.
    Repeller {
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, value_parser = rat_arg, default_value = "0")]
        x: Rational,
        #[arg(long, value_parser = rat_arg, default_value = "0")]
        y: Rational,
    },
    /// Certify a snapback repeller of the symmetric map.
    Snapback {
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Radius to try; repeat for a schedule (default 1/5, 1/8, 1/16, 1/32).
        #[arg(long = "radius", value_parser = rat_arg)]
        radii: Vec<Rational>,
        #[arg(long, value_parser = rat_arg, default_value = "0")]
        x: Rational,
        #[arg(long, value_parser = rat_arg, default_value = "0")]
        y: Rational,
        /// Subdivision depth cap (overrides the environment variable).
        #[arg(long)]
        max_depth: Option<u32>,
        /// Write the full certificate as JSON.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Iterate the map; JSON to stdout, or CSV with --out.
    Simulate {
        #[command(flatten)]
        traj: TrajArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase-portrait CSV `t,x,y` after a transient.
    Portrait {
        #[command(flatten)]
        traj: TrajArgs,
        /// Rows before this index are dropped.
        #[arg(long, default_value_t = 0)]
        skip: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-derive every polynomial identity and report.
    Identities,
}

fn exit_for(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NO,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Parse(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DATA,
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Domain(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn max_depth(flag: Option<u32>) -> Result<u32> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(MAX_DEPTH_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{MAX_DEPTH_ENV} must be a non-negative integer, got `{s}`"))),
        Err(_) => Ok(snapback::DEFAULT_MAX_DEPTH),
    }
}

fn write_file(path: &PathBuf, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Equilibria { mu1, mu2, include_zero } => {
            let count = stability::count_positive_equilibria(&mu1, &mu2)?;
            let eqs = stability::enumerate_equilibria(&mu1, &mu2, include_zero)?;
            emit(
                out,
                &json!({
                    "mu1": mu1.to_string(),
                    "mu2": mu2.to_string(),
                    "positive_count": count.count,
                    "label": count.label,
                    "equilibria": eqs,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Stability { table: true, .. } => {
            let rep = stability::verify_sample_table()?;
            emit(out, &rep)?;
            Ok(if rep.all_match { EXIT_OK } else { EXIT_NO })
        }
        Command::Stability { mu1, mu2, rho1, rho2, .. } => {
            let (Some(mu1), Some(mu2)) = (mu1, mu2) else {
                return Err(Error::Usage("--mu1 and --mu2 are required".into()));
            };
            let rep = stability::classify_stability(&KopelParams::new(mu1, mu2, rho1, rho2)?)?;
            emit(out, &rep)?;
            Ok(EXIT_OK)
        }
        Command::Scan { mu1, mu2, rho, classifiers, out: path } => {
            let with_rho = rho.is_some();
            let classifiers = classifiers.unwrap_or_else(|| stability::default_classifiers(with_rho));
            let grid = ScanGrid { mu1, mu2, rho };
            let recs = stability::scan_region(&grid, &classifiers)?;
            match path {
                Some(p) => write_file(&p, |w| stability::write_scan_csv(&recs, &classifiers, with_rho, w))?,
                None => stability::write_scan_csv(&recs, &classifiers, with_rho, &mut *out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Repeller { sym, x, y } => {
            let sp = SymParams::new(sym.mu, sym.rho)?;
            let v = snapback::repeller_test(&sp, &(x, y))?;
            emit(out, &v)?;
            Ok(if v.singular {
                EXIT_UNDECIDED
            } else if v.verdict {
                EXIT_OK
            } else {
                EXIT_NO
            })
        }
        Command::Snapback { sym, m, radii, x, y, max_depth: md, emit_certificate } => {
            if m > MAX_CLI_M {
                return Err(Error::Usage(format!("m = {m} exceeds the CLI limit {MAX_CLI_M}")));
            }
            let sp = SymParams::new(sym.mu, sym.rho)?;
            let opts = SnapbackOptions {
                radii: if radii.is_empty() { snapback::default_radii() } else { radii },
                max_depth: max_depth(md)?,
                ..Default::default()
            };
            let cert = snapback::certify_snapback(&sp, &(x, y), m, &opts)?;
            if let Some(p) = &emit_certificate {
                write_file(p, |w| emit(w, &cert))?;
            }
            let in_ball: Vec<_> = cert.candidates_in_ball.iter().map(|&i| &cert.candidates[i].solution).collect();
            emit(
                out,
                &json!({
                    "verdict": cert.verdict,
                    "reason": cert.reason,
                    "params": cert.params,
                    "target": [cert.target.0.to_string(), cert.target.1.to_string()],
                    "m": cert.m,
                    "radius": cert.radius.as_ref().map(|r| r.to_string()),
                    "repeller": cert.repeller,
                    "candidate_count": cert.candidates.len(),
                    "candidates_in_ball": in_ball,
                    "disk": cert.disk.as_ref().map(|d| json!({
                        "verdict": d.verdict,
                        "subdivision_depth": d.subdivision_depth,
                        "leaves": d.leaves.len(),
                    })),
                    "attempts": cert.attempts,
                }),
            )?;
            Ok(exit_for(cert.verdict))
        }
        Command::Simulate { traj, out: path } => {
            let t = dynamics::iterate_trajectory(&traj.map.params()?, &(traj.x0.clone(), traj.y0.clone()), traj.n, traj.mode()?);
            match path {
                Some(p) => write_file(&p, |w| dynamics::write_portrait_csv(&t, 0, traj.digits, traj.exact_columns, w))?,
                None => emit(out, &t)?,
            }
            Ok(EXIT_OK)
        }
        Command::Portrait { traj, skip, out: path } => {
            let spec = PortraitSpec {
                params: traj.map.params()?,
                initial: (traj.x0.clone(), traj.y0.clone()),
                n: traj.n,
                transient_skip: skip,
                digits: traj.digits,
                mode: traj.mode()?,
                exact_columns: traj.exact_columns,
            };
            let t = dynamics::emit_phase_portrait(&spec, &path)?;
            emit(
                out,
                &json!({
                    "path": path.display().to_string(),
                    "rows": t.points.len().saturating_sub(skip),
                    "overflow_index": t.overflow_index,
                    "escape_index": t.escape_index,
                }),
            )?;
            Ok(EXIT_OK)
        }
        Command::Identities => {
            let rep = crate::identities::run_all()?;
            emit(out, &rep)?;
            Ok(if rep.all_hold { EXIT_OK } else { EXIT_NO })
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            let _ = writeln!(err, "error: --jobs must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_IO;
        }
    };
    let mut buf = Vec::new();
    let res = pool.install(|| dispatch(cli.command, &mut buf));
    if out.write_all(&buf).and_then(|_| out.flush()).is_err() {
        return EXIT_IO;
    }
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for_error(&e)
        }
    }
}
