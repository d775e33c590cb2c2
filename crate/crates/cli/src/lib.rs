//! Command-line front end: `run` parses arguments, dispatches on the field of
//! the input and returns the text to print with an exit code.

pub mod plot;
pub mod sysfile;

use std::fmt::Write as _;

use anyhow::{anyhow, bail};
use bigres::betti::{betti_table, first_betti_h1, verify_resolution, Convention, ResolutionComplex};
use bigres::bipoly::{gcd_binary, split_st};
use bigres::combinat::{nd_grid, render_grid, series_coeffs};
use bigres::lab::{generic_report, nongeneric_probe, ExperimentConfig};
use bigres::segre::{basepoint_free, classify, conic_resolution, three_point_resolution, FactorizedBasis};
use bigres::strands::{default_box, h1_grid, hf_grid, is_generic, Genericity};
use bigres::{bd, with_field, BiDegree, BiPoly, Field, FieldSpec, SystemF};
use clap::{Parser, Subcommand, ValueEnum};

use crate::plot::{emit_svg, PlotSpec};
use crate::sysfile::SystemFile;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<bigres::Error> for CliError {
    fn from(e: bigres::Error) -> Self {
        CliError::Compute(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "error: {e:#}"),
        }
    }
}

fn parse_pair(s: &str) -> Result<BiDegree, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b] => {
            let a1 = a.trim().parse::<i64>().map_err(|e| format!("{a:?}: {e}"))?;
            let a2 = b.trim().parse::<i64>().map_err(|e| format!("{b:?}: {e}"))?;
            if a1 < 0 || a2 < 0 {
                return Err(format!("{s}: entries must be nonnegative"));
            }
            Ok(bd(a1, a2))
        }
        _ => Err(format!("expected A1,A2, got {s:?}")),
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p: u32 = s.parse().map_err(|_| format!("field must be Q or a prime, got {s:?}"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Ideal,
    Quotient,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Case {
    Conic,
    Threepoint,
}

#[derive(Parser, Debug)]
#[command(name = "bigres", version, about = "Bigraded Betti numbers of three forms on P1 x P1")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Bigraded Betti table on a box
    Betti {
        file: String,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
        #[arg(long, value_enum, default_value = "ideal")]
        convention: ConventionArg,
        #[arg(long)]
        json: bool,
    },
    /// Grid of dim (H1)_a
    H1 {
        file: String,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
    },
    /// Grid of dim (R/I)_a
    Hf {
        file: String,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
    },
    /// Grids of chi, its positive and negative parts, and n_d
    Chi {
        #[arg(long, value_parser = parse_pair)]
        d: BiDegree,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
    },
    /// Grid of n_d
    Nd {
        #[arg(long, value_parser = parse_pair)]
        d: BiDegree,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
    },
    /// Position of W with respect to the Segre variety (JSON)
    Classify { file: String },
    /// Explicit resolution and its verification
    Resolve {
        file: String,
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Full-rank test of the strand maps
    Generic {
        file: String,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: Option<BiDegree>,
    },
    /// Randomized experiment
    Lab {
        #[arg(long, value_parser = parse_pair)]
        d: BiDegree,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field, default_value = "32003")]
        field: FieldSpec,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: Option<BiDegree>,
        /// Skip the β1 histogram
        #[arg(long)]
        no_betti: bool,
        /// Run the nongeneric probe instead
        #[arg(long)]
        probe: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: Option<String>,
    },
    /// SVG of β1 bidegrees and the boundary of {n_d >= 1}
    Plot {
        file: String,
        #[arg(long = "box", value_parser = parse_pair)]
        bx: BiDegree,
        #[arg(short = 'o', long = "output")]
        output: String,
    },
}

fn grid_i64(g: &bigres::combinat::Grid<usize>) -> bigres::combinat::Grid<i64> {
    g.map(|&x| x as i64)
}

fn write_file(path: &str, data: &str) -> Result<(), CliError> {
    std::fs::write(path, data).map_err(|e| CliError::Compute(anyhow!("cannot write {path}: {e}")))
}

/// f_i = l_i h_i read off from gcd(p_i, q_i).
fn factor_linear<F: Field>(sys: &SystemF<F>) -> anyhow::Result<FactorizedBasis<F>> {
    let n = sys.d().a2 as usize;
    let mut g = Vec::new();
    let mut h = Vec::new();
    for (i, f) in sys.f().iter().enumerate() {
        let (p, q) = split_st(f)?;
        let c = gcd_binary(&p, &q)?;
        if c.degree() != n {
            bail!("f{i} is not of the form l(s,t)·h(u,v)");
        }
        let a = p.div_exact(&c)?.coeff(0);
        let b = q.div_exact(&c)?.coeff(0);
        g.push(&BiPoly::monomial(a, [1, 0, 0, 0]) + &BiPoly::monomial(b, [0, 1, 0, 0]));
        h.push(c);
    }
    let g: [BiPoly<F>; 3] = g.try_into().expect("three");
    let h = h.try_into().expect("three");
    Ok(FactorizedBasis::new(g, h)?)
}

fn render_resolution<F: Field>(rc: &ResolutionComplex<F>, out: &mut String) {
    for (i, m) in rc.differentials.iter().enumerate() {
        let shifts: Vec<String> = m.col_shifts().iter().map(|a| a.to_string()).collect();
        let _ = writeln!(out, "d{}: columns {}", i + 1, shifts.join(" "));
        let _ = write!(out, "{m}");
    }
    let _ = write!(out, "{}", rc.betti());
}

fn with_system<F: Field>(cmd: &Cmd, file: &SystemFile) -> Result<String, CliError> {
    let sys: SystemF<F> = file.system()?;
    let d = sys.d();
    let mut out = String::new();
    match cmd {
        Cmd::Betti { bx, convention, json, .. } => {
            let conv = match convention {
                ConventionArg::Ideal => Convention::Ideal,
                ConventionArg::Quotient => Convention::Quotient,
            };
            let t = betti_table(&sys, *bx, conv);
            if *json {
                out = serde_json::to_string_pretty(&t).map_err(anyhow::Error::from)? + "\n";
            } else {
                out = t.to_string();
            }
        }
        Cmd::H1 { bx, .. } => out = render_grid(&grid_i64(&h1_grid(&sys, *bx))),
        Cmd::Hf { bx, .. } => out = render_grid(&grid_i64(&hf_grid(&sys, *bx))),
        Cmd::Classify { .. } => {
            let c = classify(&sys)?;
            out = serde_json::to_string_pretty(&c).map_err(anyhow::Error::from)? + "\n";
        }
        Cmd::Resolve { case, .. } => {
            let bp = basepoint_free(&sys);
            if !bp.is_free() {
                return Err(CliError::Compute(anyhow!("input is not basepoint free: {}", bp.describe())));
            }
            let rc = match case {
                Case::Conic => conic_resolution(&sys)?,
                Case::Threepoint => {
                    let tp = three_point_resolution(&factor_linear(&sys)?)?;
                    let _ = writeln!(out, "mu = {}", tp.mu);
                    tp.complex
                }
            };
            render_resolution(&rc, &mut out);
            let rep = verify_resolution(&rc, bd(4, 3 * d.a2 + 2));
            let _ = writeln!(
                out,
                "compositions zero: {}\nexactness failures: {}\neuler failures: {}\nnonminimal entries: {}",
                rep.compositions_zero.iter().all(|&z| z),
                rep.exactness_failures.len(),
                rep.euler_failures.len(),
                rep.nonminimal_entries.len()
            );
            if !rep.passed() {
                print!("{out}");
                return Err(CliError::Compute(anyhow!("resolution check failed")));
            }
        }
        Cmd::Generic { bx, .. } => {
            let bx = bx.unwrap_or_else(|| default_box(d));
            match is_generic(&sys, bx)? {
                Genericity::GenericOnBox => out = format!("generic on box {bx}\n"),
                Genericity::NotGeneric(a) => out = format!("not generic: strand maps drop rank at {a}\n"),
            }
        }
        Cmd::Plot { bx, output, .. } => {
            let points = first_betti_h1(&sys, *bx)
                .into_iter()
                .map(|(a, m)| (a.a1, a.a2, m))
                .collect();
            let svg = emit_svg(&PlotSpec { d, bounds: *bx, points }).map_err(|e| CliError::Usage(e))?;
            write_file(output, &svg)?;
            out = format!("wrote {output}\n");
        }
        Cmd::Chi { .. } | Cmd::Nd { .. } | Cmd::Lab { .. } => unreachable!("no input file"),
    }
    Ok(out)
}

fn file_of(cmd: &Cmd) -> Option<&str> {
    match cmd {
        Cmd::Betti { file, .. }
        | Cmd::H1 { file, .. }
        | Cmd::Hf { file, .. }
        | Cmd::Classify { file }
        | Cmd::Resolve { file, .. }
        | Cmd::Generic { file, .. }
        | Cmd::Plot { file, .. } => Some(file),
        _ => None,
    }
}

fn dispatch(cmd: Cmd) -> Result<String, CliError> {
    if let Some(path) = file_of(&cmd) {
        let file = SystemFile::read(path)?;
        return with_field!(file.field, F => with_system::<F>(&cmd, &file));
    }
    match cmd {
        Cmd::Nd { d, bx } => Ok(render_grid(&nd_grid(d, bx))),
        Cmd::Chi { d, bx } => {
            let g = series_coeffs(d, bx);
            Ok(format!(
                "chi\n{}chi+\n{}chi-\n{}nd\n{}",
                render_grid(&g.chi),
                render_grid(&g.plus),
                render_grid(&g.minus),
                render_grid(&nd_grid(d, bx))
            ))
        }
        Cmd::Lab {
            d,
            trials,
            seed,
            field,
            bx,
            no_betti,
            probe,
            json,
            csv,
        } => {
            let mut cfg = ExperimentConfig::new(d, trials, field, seed);
            if let Some(b) = bx {
                cfg.bx = b;
            }
            if no_betti {
                cfg.betti_box = None;
            }
            cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            if probe {
                let rep = nongeneric_probe(&cfg)?;
                return Ok(serde_json::to_string_pretty(&rep).map_err(anyhow::Error::from)? + "\n");
            }
            let rep = generic_report(&cfg)?;
            if let Some(path) = csv {
                write_file(&path, &rep.to_csv())?;
            }
            Ok(if json { rep.to_json() + "\n" } else { rep.summary() })
        }
        _ => unreachable!("file commands handled above"),
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("BIGRES_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("BIGRES_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Compute(e.into()))?;
    }
    Ok(())
}

/// Runs the command line; returns (stdout, exit code), with errors already
/// written to stderr.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                return (e.to_string(), 0);
            }
            eprint!("{e}");
            return (String::new(), 2);
        }
    };
    let res = configure_threads().and_then(|_| dispatch(cli.cmd));
    match res {
        Ok(s) => (s, 0),
        Err(e) => {
            eprintln!("{e}");
            (String::new(), e.exit_code())
        }
    }
}
