//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 pole error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::families::{evaluate, inside_rectangle, laguerre, Family, FamilyParams};
use crate::jack::JackTable;
use crate::partition::{enumerate_up_to, parse_partition, Partition};
use crate::rational::{format_rational, parse_rational, Q};
use crate::verify::conjecture::{self, seeded_three_term, DEFAULT_SEED};
use crate::verify::consistency::{dimension_check, pieri_check};
use crate::verify::equations::{three_term_report, three_term_single, Moving};
use crate::verify::{
    genfunc_family, genfunc_grid, limit_check, master_genfunc, orthogonality_generator,
    orthogonality_krawtchouk, orthogonality_truncated, spherical_taylor, Limit, Master, Truncated,
    TruncationPlan, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_POLE: i32 = 3;

pub const CACHE_ENV: &str = "MDOP_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".mdop-cache";

#[derive(Parser, Debug)]
#[command(
    name = "mdop",
    version,
    about = "Exact multivariate Meixner, Charlier and Krawtchouk polynomials on partitions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one polynomial at (m, x) and print JSON.
    Eval(EvalArgs),
    /// Tabulate a family over all m, x up to a weight.
    Table(TableArgs),
    /// Run one identity check and write its report.
    Verify(VerifyArgs),
    /// Run the combined evidence suite at a given multiplicity.
    Conjecture(ConjectureArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Multiplicity d > 0, as "p/q" or an integer.
    #[arg(long)]
    pub d: String,
    /// Rank r ≥ 1.
    #[arg(long)]
    pub r: usize,
    /// Skip the on-disk Jack table cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long = "N")]
    pub big_n: Option<u32>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub fam: FamilyArgs,
    /// Comma-joined parts of m.
    #[arg(long)]
    pub m: String,
    /// Comma-joined parts of x.
    #[arg(long)]
    pub x: Option<String>,
    /// Diagonal point for the Laguerre family, comma-joined rationals.
    #[arg(long)]
    pub u: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub fam: FamilyArgs,
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Orthogonality,
    Difference,
    Recurrence,
    Genfunc,
    MasterGenfunc,
    OrthogonalityGenerator,
    Limits,
    SphericalTaylor,
    Consistency,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub fam: FamilyArgs,
    /// Weight bound for index grids.
    #[arg(long, default_value_t = 3)]
    pub max_weight: u32,
    /// Weight bound of m, n in truncated orthogonality.
    #[arg(long, default_value_t = 2)]
    pub max_index_weight: u32,
    /// Increasing truncation weights, comma-joined.
    #[arg(long, default_value = "8,10,12")]
    pub weights: String,
    /// Series degree for generating-function checks.
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    #[arg(long, default_value_t = 3)]
    pub dz: u32,
    #[arg(long, default_value_t = 3)]
    pub dw: u32,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    /// Parameter sequence for limits, comma-joined.
    #[arg(long, default_value = "100,10000,1000000")]
    pub sequence: String,
    /// Random parameter draws for difference/recurrence; 0 uses the given parameters.
    #[arg(long, default_value_t = 0)]
    pub draws: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance for the dimension cross-check.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Degree budget: index weights checked by every sub-suite.
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole { .. } => EXIT_POLE,
        _ => EXIT_USAGE,
    }
}

/// Parses argv, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Conjecture(a) => cmd_conjecture(&a, out),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parameter(format!("i/o: {e}"))
}

/// Directory for cached Jack tables.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn parse_d(common: &CommonArgs) -> Result<Q> {
    let d = parse_rational(&common.d)?;
    if d <= Q::from_integer(0.into()) {
        return Err(Error::Domain(format!(
            "d must be positive, got {}",
            common.d
        )));
    }
    if common.r == 0 {
        return Err(Error::Domain("r must be at least 1".into()));
    }
    Ok(d)
}

fn build_cone(common: &CommonArgs, degree: u32) -> Result<Cone> {
    let d = parse_d(common)?;
    let table = if common.no_cache {
        JackTable::build(common.r, &d, degree)?
    } else {
        JackTable::cached(&cache_dir(), common.r, &d, degree)?
    };
    Ok(Cone::from_table(table))
}

fn family_of(fam: &FamilyArgs) -> Result<Family> {
    fam.family
        .as_deref()
        .ok_or_else(|| Error::Parameter("--family is required".into()))?
        .parse()
}

fn opt_q(s: &Option<String>) -> Result<Option<Q>> {
    s.as_deref().map(parse_rational).transpose()
}

fn family_params(fam: &FamilyArgs) -> Result<FamilyParams> {
    FamilyParams::from_parts(
        family_of(fam)?,
        opt_q(&fam.alpha)?,
        opt_q(&fam.c)?,
        opt_q(&fam.a)?,
        opt_q(&fam.p)?,
        fam.big_n,
    )
}

fn params_json(common: &CommonArgs, fp: &FamilyParams) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    map.insert("d".into(), json!(common.d));
    map.insert("r".into(), json!(common.r));
    for (k, v) in fp.echo() {
        map.insert(k.into(), json!(v));
    }
    serde_json::Value::Object(map)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let fp = family_params(&a.fam)?;
    parse_d(&a.common)?;
    let m = parse_partition(&a.m, a.common.r)?;
    let (value, x_echo) = if let FamilyParams::Laguerre { alpha } = &fp {
        let u_str =
            a.u.as_deref()
                .or(a.x.as_deref())
                .ok_or_else(|| Error::Parameter("laguerre requires --u".into()))?;
        let u: Result<Vec<Q>> = u_str.split(',').map(parse_rational).collect();
        let u = u?;
        if u.len() != a.common.r {
            return Err(Error::LengthMismatch {
                left: a.common.r,
                right: u.len(),
            });
        }
        let cone = build_cone(&a.common, m.weight())?;
        (laguerre(&m, &u, alpha, &cone)?, u_str.to_string())
    } else {
        let xs =
            a.x.as_deref()
                .ok_or_else(|| Error::Parameter("--x is required".into()))?;
        let x = parse_partition(xs, a.common.r)?;
        let cone = build_cone(&a.common, m.weight().max(x.weight()))?;
        (evaluate(&fp, &m, &x, &cone)?, x.to_string())
    };
    let doc = json!({
        "family": fp.family().name(),
        "params": params_json(&a.common, &fp),
        "m": m.to_string(),
        "x": x_echo,
        "value": format_rational(&value),
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io_err)?;
    Ok(EXIT_OK)
}

/// One table row with partitions quoted by pipes: `|2,1|,|3,0|,value`.
pub fn csv_row(m: &Partition, x: &Partition, v: &Q) -> String {
    format!("|{m}|,|{x}|,{}", format_rational(v))
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let fp = family_params(&a.fam)?;
    if fp.family() == Family::Laguerre {
        return Err(Error::Parameter(
            "table supports meixner, charlier and krawtchouk".into(),
        ));
    }
    let cone = build_cone(&a.common, a.max_degree)?;
    let grid: Vec<Partition> = enumerate_up_to(a.common.r, a.max_degree)
        .into_iter()
        .filter(|p| match &fp {
            FamilyParams::Krawtchouk { n, .. } => inside_rectangle(p, *n),
            _ => true,
        })
        .collect();
    let mut rows = Vec::with_capacity(grid.len() * grid.len());
    for m in &grid {
        for x in &grid {
            rows.push((m, x, evaluate(&fp, m, x, &cone)?));
        }
    }
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("m,x,value\n");
            for (m, x, v) in &rows {
                s.push_str(&csv_row(m, x, v));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(m, x, v)| json!({"m": m.to_string(), "x": x.to_string(), "value": format_rational(v)}))
                .collect();
            let doc = json!({
                "family": fp.family().name(),
                "params": params_json(&a.common, &fp),
                "max_degree": a.max_degree,
                "rows": rows,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
    };
    emit(&text, a.out.as_deref(), out)?;
    Ok(EXIT_OK)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(io_err),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn finish_report(rep: VerificationReport, path: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    emit(&(rep.to_json() + "\n"), path, out)?;
    Ok(if rep.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    parse_d(&a.common)?;
    let r = a.common.r;
    let weights: Vec<u32> = parse_list(&a.weights, "weight")?;
    let rep = match a.identity {
        Identity::Orthogonality => match family_params(&a.fam)? {
            FamilyParams::Krawtchouk { p, n } => {
                let cone = build_cone(&a.common, n * r as u32)?;
                orthogonality_krawtchouk(&cone, n, &p)?
            }
            fp @ (FamilyParams::Meixner { .. } | FamilyParams::Charlier { .. }) => {
                let top = weights
                    .iter()
                    .copied()
                    .max()
                    .unwrap_or(0)
                    .max(a.max_index_weight);
                let cone = build_cone(&a.common, top)?;
                let which = match fp {
                    FamilyParams::Meixner { alpha, c } => Truncated::Meixner { alpha, c },
                    FamilyParams::Charlier { a } => Truncated::Charlier { a },
                    _ => unreachable!(),
                };
                orthogonality_truncated(
                    &cone,
                    &which,
                    &TruncationPlan::new(a.max_index_weight, &weights),
                )?
            }
            FamilyParams::Laguerre { .. } => {
                return Err(Error::Parameter(
                    "no orthogonality check for laguerre".into(),
                ))
            }
        },
        Identity::Difference | Identity::Recurrence => {
            let moving = if a.identity == Identity::Difference {
                Moving::X
            } else {
                Moving::M
            };
            if a.draws > 0 {
                let cone = build_cone(&a.common, a.max_weight + 1)?;
                seeded_three_term(
                    family_of(&a.fam)?,
                    &cone,
                    moving,
                    a.max_weight,
                    a.draws,
                    a.seed,
                )?
            } else {
                let fp = family_params(&a.fam)?;
                match (&a.m, &a.x) {
                    (Some(m), Some(x)) => {
                        let m = parse_partition(m, r)?;
                        let x = parse_partition(x, r)?;
                        let cone = build_cone(&a.common, m.weight().max(x.weight()) + 1)?;
                        three_term_single(&fp, &cone, moving, &m, &x)?
                    }
                    _ => {
                        let cone = build_cone(&a.common, a.max_weight + 1)?;
                        three_term_report(&fp, &cone, moving, a.max_weight)?
                    }
                }
            }
        }
        Identity::Genfunc => {
            let fp = family_params(&a.fam)?;
            match &a.x {
                Some(x) => {
                    let x = parse_partition(x, r)?;
                    let cone = build_cone(&a.common, a.degree.max(x.weight()))?;
                    genfunc_family(&fp, &cone, &x, a.degree)?
                }
                None => {
                    let cone = build_cone(&a.common, a.degree)?;
                    genfunc_grid(&fp, &cone, a.degree)?
                }
            }
        }
        Identity::MasterGenfunc => {
            let which = match family_params(&a.fam)? {
                FamilyParams::Meixner { alpha, c } => Master::Meixner { alpha, c },
                FamilyParams::Charlier { a } => Master::Charlier { a },
                _ => {
                    return Err(Error::Parameter(
                        "master-genfunc supports meixner and charlier".into(),
                    ))
                }
            };
            let cone = build_cone(&a.common, a.dz.max(a.dw))?;
            master_genfunc(&which, &cone, a.dz, a.dw)?
        }
        Identity::OrthogonalityGenerator => {
            let alpha = opt_q(&a.fam.alpha)?
                .ok_or_else(|| Error::Parameter("--alpha is required".into()))?;
            let c = opt_q(&a.fam.c)?.ok_or_else(|| Error::Parameter("--c is required".into()))?;
            let top = weights.iter().copied().max().unwrap_or(0).max(a.degree);
            let cone = build_cone(&a.common, top)?;
            orthogonality_generator(&cone, &alpha, &c, a.degree, &weights)?
        }
        Identity::Limits => {
            let av = opt_q(&a.fam.a)?.unwrap_or_else(|| Q::from_integer(1.into()));
            let seq: Vec<u64> = parse_list(&a.sequence, "sequence")?;
            let cone = build_cone(&a.common, a.max_weight)?;
            let limits: Vec<Limit> = match a.fam.family.as_deref() {
                Some("meixner") => vec![Limit::MeixnerToCharlier],
                Some("krawtchouk") => vec![Limit::KrawtchoukToCharlier],
                None => vec![Limit::MeixnerToCharlier, Limit::KrawtchoukToCharlier],
                Some(other) => {
                    return Err(Error::Parameter(format!(
                        "limits start from meixner or krawtchouk, not {other}"
                    )))
                }
            };
            let mut rep = VerificationReport::new("limits")
                .param("a", format_rational(&av))
                .param("d", &a.common.d)
                .param("r", r)
                .param("sequence", &a.sequence);
            for l in limits {
                let mut sub = limit_check(&cone, l, &av, a.max_weight, &seq)?;
                sub.identity = l.label().to_string();
                rep.absorb(sub);
            }
            rep.finish()
        }
        Identity::SphericalTaylor => {
            let alpha = opt_q(&a.fam.alpha)?
                .ok_or_else(|| Error::Parameter("--alpha is required".into()))?;
            let cone = build_cone(&a.common, a.degree)?;
            spherical_taylor(&cone, &alpha, a.degree)?
        }
        Identity::Consistency => {
            let cone = build_cone(&a.common, a.max_weight + 1)?;
            let mut rep = VerificationReport::new("consistency")
                .param("d", &a.common.d)
                .param("r", r)
                .param("max_weight", a.max_weight);
            rep.absorb(dimension_check(&cone, a.max_weight, a.tol)?);
            rep.absorb(pieri_check(&cone, a.max_weight)?);
            rep.finish()
        }
    };
    finish_report(rep, a.out.as_deref(), out)
}

fn cmd_conjecture(a: &ConjectureArgs, out: &mut dyn Write) -> Result<i32> {
    parse_d(&a.common)?;
    let cone = build_cone(&a.common, conjecture::required_degree(a.max_degree))?;
    let rep = conjecture::conjecture_suite(&cone, a.max_degree, a.seed)?;
    finish_report(rep, a.out.as_deref(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["mdop"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_examples() {
        let (code, out, _) = run_str(&[
            "eval",
            "--family",
            "meixner",
            "--d",
            "1",
            "--r",
            "1",
            "--alpha",
            "2",
            "--c",
            "1/2",
            "--m",
            "1",
            "--x",
            "1",
            "--no-cache",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "1/2");
        assert_eq!(v["family"], "meixner");

        let (code, out, _) = run_str(&[
            "eval",
            "--family",
            "charlier",
            "--d",
            "2",
            "--r",
            "2",
            "--a",
            "1",
            "--m",
            "0,0",
            "--x",
            "2,1",
            "--no-cache",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"], "1");
    }

    #[test]
    fn error_codes() {
        let (code, _, err) = run_str(&[
            "eval",
            "--family",
            "meixner",
            "--d",
            "2",
            "--r",
            "1",
            "--alpha",
            "2",
            "--m",
            "1",
            "--x",
            "1",
            "--no-cache",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--c"));
        let (code, _, _) = run_str(&[
            "eval",
            "--family",
            "meixner",
            "--d",
            "2",
            "--r",
            "1",
            "--alpha",
            "0",
            "--c",
            "1/2",
            "--m",
            "1",
            "--x",
            "1",
            "--no-cache",
        ]);
        assert_eq!(code, EXIT_POLE);
        let (code, _, _) = run_str(&["conjecture", "--d", "0", "--r", "2", "--no-cache"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_str(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
    }

    #[test]
    fn csv_quoting() {
        let m = Partition::new(&[2, 1], 2).unwrap();
        let x = Partition::empty(2);
        assert_eq!(
            csv_row(&m, &x, &Q::new(1.into(), 2.into())),
            "|2,1|,|0,0|,1/2"
        );
    }
}
