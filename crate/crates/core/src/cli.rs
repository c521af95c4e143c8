//! The `etaq` command line. [`run`] parses arguments, executes one command
//! and returns the process exit code:
//! 0 pass, 1 mathematical failure, 2 usage, 3 arithmetic error, 4 unknown id.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::forms::Weight;
use crate::par::{with_jobs, Exec};
use crate::qseries::cache::{CoeffCache, CACHE_ENV};
use crate::qseries::{c_series, EtaSpec};
use crate::verify::{
    crosscheck_vanishing, families, find_family, find_identity, negative_controls, registry, scan_growth,
    scan_nonvanishing, sturm_bound, verify_identity, GrowthId, IdentityRecord, ResidueClass, ScanTarget, Status,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ARITHMETIC: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "etaq",
    version,
    about = "Exact eta-quotient expansions and identity certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// Coefficient cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print C(n) for the eta-quotient, n = 0..=limit.
    Expand {
        /// Whitespace-separated `base^exp` tokens, e.g. "1^-1 3^3 4^2".
        spec: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Certify registry identities (`all`, `controls`, or an id).
    Verify {
        id: String,
        #[arg(long, default_value_t = 2000)]
        limit: i64,
    },
    /// Compare a family's zero set with its predicate (`all` for every family).
    Vanishing {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        #[arg(long)]
        include_n0: bool,
    },
    /// Nonvanishing scans of f1/f2 and growth scans of G1/G2.
    Scan {
        #[arg(long, value_enum, ignore_case = true)]
        target: Target,
        #[arg(long, default_value_t = 50_000)]
        limit: u64,
        /// Growth threshold t (G targets): reports n with G(n) <= t.
        #[arg(long, value_parser = parse_rational)]
        threshold: Option<BigRational>,
        /// Lower end (exclusive) of the growth scan.
        #[arg(long)]
        from: Option<u64>,
        #[arg(long, default_value_t = 3)]
        modulus: u64,
        #[arg(long, default_value_t = 1)]
        residue: u64,
    },
    /// Sturm bound of M_k(Gamma0(N)).
    Sturm {
        #[arg(long)]
        weight: Weight,
        #[arg(long)]
        level: u64,
    },
    /// Manage the coefficient cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    F1,
    F2,
    G1,
    G2,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// List cached series.
    List,
    /// Expand and store a series.
    Warm {
        spec: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
    },
    /// Delete all cache files.
    Clear,
}

/// Accepts `a/b`, integers and finite decimals.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let digits = format!("{int}{frac}");
        let num = BigInt::from_str(&digits).map_err(|e| e.to_string())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    BigRational::from_str(t).map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) => EXIT_USAGE,
        Error::UnknownId(_) => EXIT_UNKNOWN,
        _ => EXIT_ARITHMETIC,
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    format: Format,
    exec: Exec,
    cache: Option<CoeffCache>,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&mut self, v: &T) -> std::io::Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v).expect("serializable"))
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out` and diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let jobs = cli.global.jobs.map_or_else(
        || std::thread::available_parallelism().map_or(1, |n| n.get()),
        |j| j as usize,
    );
    let format = cli.global.format;
    let cache = cli.global.cache_dir.clone().map(CoeffCache::new);
    let command = cli.command;
    let (code, buf) = with_jobs(jobs, move |exec| {
        let mut buf = Vec::new();
        let mut ctx = Ctx {
            out: &mut buf,
            format,
            exec,
            cache,
        };
        let code = match dispatch(&mut ctx, command) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        };
        (code, buf)
    });
    if out.write_all(&buf).is_err() {
        return EXIT_ARITHMETIC;
    }
    code
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Result<i32, Error> {
    match command {
        Command::Expand { spec, limit } => cmd_expand(ctx, &spec, limit),
        Command::Verify { id, limit } => cmd_verify(ctx, &id, limit),
        Command::Vanishing {
            family,
            limit,
            include_n0,
        } => cmd_vanishing(ctx, &family, limit, include_n0),
        Command::Scan {
            target,
            limit,
            threshold,
            from,
            modulus,
            residue,
        } => cmd_scan(
            ctx,
            target,
            limit,
            threshold,
            from,
            ResidueClass::new(modulus, residue)?,
        ),
        Command::Sturm { weight, level } => {
            if level == 0 || weight.twice() <= 0 {
                return Err(Error::InvalidArgument("need level >= 1 and positive weight".into()));
            }
            let b = sturm_bound(weight, level);
            match ctx.format {
                Format::Json => ctx
                    .json(&json!({"weight": weight.to_string(), "level": level.to_string(), "bound": b.to_string()}))?,
                Format::Table => writeln!(ctx.out, "{b}")?,
            }
            Ok(EXIT_PASS)
        }
        Command::Cache { action } => cmd_cache(ctx, action),
    }
}

fn cmd_expand(ctx: &mut Ctx<'_>, spec: &str, limit: u64) -> Result<i32, Error> {
    let spec = EtaSpec::parse(spec)?;
    let f = match &ctx.cache {
        Some(c) => c.c_series(&spec, limit as usize)?,
        None => c_series(&spec, limit as usize)?,
    };
    let coeffs = f.integer_coeffs()?;
    match ctx.format {
        Format::Json => {
            let rows: Vec<_> = coeffs
                .iter()
                .enumerate()
                .take(limit as usize + 1)
                .map(|(n, c)| json!({"n": n.to_string(), "value": c.to_string()}))
                .collect();
            ctx.json(&json!({
                "spec": spec.to_string(),
                "offset": verify_offset(&spec),
                "limit": limit.to_string(),
                "coefficients": rows,
            }))?;
        }
        Format::Table => {
            for (n, c) in coeffs.iter().enumerate().take(limit as usize + 1) {
                writeln!(ctx.out, "{n}\t{c}")?;
            }
        }
    }
    Ok(EXIT_PASS)
}

/// `sum delta r / 24` as text: the exponent of `q` carried in front of `C`.
fn verify_offset(spec: &EtaSpec) -> String {
    BigRational::new(spec.offset24().into(), 24.into()).to_string()
}

fn cmd_verify(ctx: &mut Ctx<'_>, id: &str, limit: i64) -> Result<i32, Error> {
    let records: Vec<IdentityRecord> = match id {
        "all" => registry(),
        "controls" => negative_controls(),
        _ => vec![find_identity(id)?],
    };
    let exec = ctx.exec;
    let reports = records
        .iter()
        .map(|r| verify_identity(r, limit, exec))
        .collect::<Result<Vec<_>, _>>()?;
    let status = Status::from_ok(reports.iter().all(|r| r.status == Status::Pass));
    match ctx.format {
        Format::Json => ctx.json(&json!({"status": status, "reports": reports}))?,
        Format::Table => {
            for r in &reports {
                write!(
                    ctx.out,
                    "{:<18} {}  {}  bound={} checked={}",
                    r.id, r.status, r.space, r.bound, r.checked
                )?;
                if let Some(m) = r.mismatches.first() {
                    write!(ctx.out, "  first mismatch n={} lhs={} rhs={}", m.n, m.lhs, m.rhs)?;
                }
                writeln!(ctx.out)?;
            }
        }
    }
    Ok(if status == Status::Pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_vanishing(ctx: &mut Ctx<'_>, family: &str, limit: u64, include_n0: bool) -> Result<i32, Error> {
    if limit < 1 {
        return Err(Error::InvalidArgument("--limit must be at least 1".into()));
    }
    let fams = if family == "all" {
        families()
    } else {
        vec![find_family(family)?]
    };
    let exec = ctx.exec;
    let reports = fams
        .iter()
        .map(|f| crosscheck_vanishing(f, limit, include_n0, exec))
        .collect::<Result<Vec<_>, _>>()?;
    let status = Status::from_ok(reports.iter().all(|r| r.status == Status::Pass));
    match ctx.format {
        Format::Json => ctx.json(&json!({"status": status, "reports": reports}))?,
        Format::Table => {
            for r in &reports {
                writeln!(
                    ctx.out,
                    "{:<10} {}  {:<22} zeros={} nonzeros={} mismatches={}",
                    r.id,
                    r.status,
                    r.spec,
                    r.zeros,
                    r.nonzeros,
                    r.mismatches.len()
                )?;
                for m in r.mismatches.iter().take(10) {
                    writeln!(
                        ctx.out,
                        "    n={} C(n)={} predicate={}",
                        m.n, m.coefficient, m.predicate
                    )?;
                }
            }
        }
    }
    Ok(if status == Status::Pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_scan(
    ctx: &mut Ctx<'_>,
    target: Target,
    limit: u64,
    threshold: Option<BigRational>,
    from: Option<u64>,
    class: ResidueClass,
) -> Result<i32, Error> {
    let exec = ctx.exec;
    let status = match target {
        Target::F1 | Target::F2 => {
            let t = if target == Target::F1 {
                ScanTarget::F1
            } else {
                ScanTarget::F2
            };
            if ctx.format == Format::Table {
                eprintln!("scanning {t:?} through n = {limit}");
            }
            let r = scan_nonvanishing(t, class, limit, exec)?;
            match ctx.format {
                Format::Json => ctx.json(&r)?,
                Format::Table => {
                    writeln!(
                        ctx.out,
                        "{} {}  n = {} mod {}  checked={} positive={} negative={} zeros={:?}",
                        r.id, r.status, class.residue, class.modulus, r.checked, r.positive, r.negative, r.zeros
                    )?;
                    if let Some(m) = &r.min_growth {
                        writeln!(ctx.out, "  min G^2 = {} at n = {}", m.g_squared, m.n)?;
                    }
                }
            }
            r.status
        }
        Target::G1 | Target::G2 => {
            let (which, t0, f0) = if target == Target::G1 {
                (GrowthId::G1, BigRational::new(4.into(), 3.into()), 1120)
            } else {
                (GrowthId::G2, BigRational::from_integer(8.into()), 0)
            };
            let t = threshold.unwrap_or(t0);
            let r = scan_growth(which, from.unwrap_or(f0), limit, &t, exec)?;
            match ctx.format {
                Format::Json => ctx.json(&r)?,
                Format::Table => {
                    writeln!(
                        ctx.out,
                        "{} {}  {} < n <= {}, n = 1 mod 3  threshold={} checked={} violations={}",
                        r.id,
                        r.status,
                        r.from,
                        r.limit,
                        r.threshold,
                        r.checked,
                        r.violations.len()
                    )?;
                    if let Some(m) = &r.min {
                        writeln!(ctx.out, "  min G^2 = {} at n = {}", m.g_squared, m.n)?;
                    }
                }
            }
            r.status
        }
    };
    Ok(if status == Status::Pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_cache(ctx: &mut Ctx<'_>, action: CacheAction) -> Result<i32, Error> {
    let cache = ctx
        .cache
        .clone()
        .ok_or_else(|| Error::InvalidArgument(format!("no cache directory: pass --cache-dir or set {CACHE_ENV}")))?;
    match action {
        CacheAction::List => {
            let entries = cache.entries()?;
            match ctx.format {
                Format::Json => {
                    let rows: Vec<_> = entries
                        .iter()
                        .map(|e| {
                            json!({
                                "path": e.path.display().to_string(),
                                "spec": e.spec.to_string(),
                                "trunc24": e.trunc24.to_string(),
                            })
                        })
                        .collect();
                    ctx.json(&json!({"dir": cache.dir().display().to_string(), "entries": rows}))?;
                }
                Format::Table => {
                    for e in &entries {
                        writeln!(ctx.out, "{}\t{}\t{}", e.spec, e.trunc24, e.path.display())?;
                    }
                }
            }
        }
        CacheAction::Warm { spec, limit } => {
            let spec = EtaSpec::parse(&spec)?;
            let f = cache.c_series(&spec, limit as usize)?;
            match ctx.format {
                Format::Json => ctx.json(&json!({"spec": spec.to_string(), "limit": f.limit().to_string()}))?,
                Format::Table => writeln!(ctx.out, "{spec}\t{}", f.limit())?,
            }
        }
        CacheAction::Clear => {
            let n = cache.clear()?;
            match ctx.format {
                Format::Json => ctx.json(&json!({"removed": n.to_string()}))?,
                Format::Table => writeln!(ctx.out, "removed {n}")?,
            }
        }
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("etaq").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("4/3").unwrap(), BigRational::new(4.into(), 3.into()));
        assert_eq!(parse_rational("2.1").unwrap(), BigRational::new(21.into(), 10.into()));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn expand_partitions() {
        let (code, out) = run_capture(&["expand", "1^-1", "--limit", "4", "--format", "table"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().last().unwrap(), "4\t5");
        let (code, _) = run_capture(&["expand", "1^x"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["verify", "NOPE"]).0, EXIT_UNKNOWN);
        assert_eq!(run_capture(&["verify", "S36-SIEVE-1", "--limit", "50"]).0, EXIT_PASS);
        assert_eq!(run_capture(&["verify", "NC-R3-UNSIGNED", "--limit", "50"]).0, EXIT_FAIL);
        assert_eq!(
            run_capture(&["vanishing", "--family", "L52-1", "--limit", "0"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["vanishing", "--family", "NOPE"]).0, EXIT_UNKNOWN);
        assert_eq!(
            run_capture(&["sturm", "--weight", "3/2", "--level", "16", "--format", "table"])
                .1
                .trim(),
            "3"
        );
    }
}
