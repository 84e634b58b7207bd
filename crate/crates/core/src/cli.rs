//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed or condition violated,
//! 2 usage or parameter error, 3 malformed input file, 4 inconclusive search.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{feasibility_report, net_rao_check, rao_rhs, Parity, Signature, Target};
use crate::corpus::{self, SearchOutcome};
use crate::design::{canonical_beta, EVector, MixedOA, MixedOOA, NetFile, PointSet, Verdict};
use crate::dual_cert::{build_block_family, gram_certificate, FunctionTuple};
use crate::error::{Error, Result};
use crate::net_verify::{self, ShapeMode, Variant};
use crate::oa_bridge::{max_strength, net_to_moa, verify_moa};
use crate::ooa_bridge::{self, KappaProfile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "netoa",
    version,
    about = "Nets, mixed orthogonal arrays and their bounds"
)]
struct Cli {
    /// Emit machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point set as a NET file.
    Gen(GenArgs),
    /// Verify the net property of a NET file.
    VerifyNet(VerifyNetArgs),
    /// Verify every net block of a sequence prefix.
    VerifySeq(VerifySeqArgs),
    /// Convert a NET file to a MOA file.
    ToMoa(ToMoaArgs),
    /// Verify the strength of a MOA file.
    VerifyMoa(VerifyMoaArgs),
    /// Convert a NET file to a MOOA file.
    ToMooa(ToMooaArgs),
    /// Verify the profile condition of a MOOA file.
    VerifyMooa(VerifyMooaArgs),
    /// Convert a MOOA file with canonical beta back to a NET file.
    FromMooa(FromMooaArgs),
    /// Evaluate a Rao bound.
    Rao(RaoArgs),
    /// Evaluate every necessary condition for a net or sequence.
    Feasible(FeasibleArgs),
    /// Check the character-vector Gram certificate of a MOOA.
    DualCert(DualCertArgs),
    /// Summarize a NET file: verdict, quality parameters, strength, bounds.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Grid,
    Hammersley,
    Faure,
    Vdc,
    Random,
    Search,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long)]
    base: u32,
    /// Digits per coordinate (and `b^m` points, except for vdc).
    #[arg(long)]
    m: usize,
    /// Dimension (faure, random).
    #[arg(long)]
    s: Option<usize>,
    /// Number of points (vdc; default b^m).
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// e-vector written to the header, and searched for by `search`.
    #[arg(long)]
    e: Option<EVector>,
    /// Quality parameter written to the header, and searched for by `search`.
    #[arg(long, default_value_t = 0)]
    u: usize,
    #[arg(long, default_value_t = 10_000_000)]
    node_limit: u64,
    /// Add 1 mod b to digit `l` of coordinate `i` of point `n` (0-based
    /// `n,i,l`). Repeatable.
    #[arg(long, value_parser = parse_triple)]
    flip: Vec<(usize, usize, usize)>,
}

#[derive(Args, Debug)]
struct VerifyNetArgs {
    /// NET file (default: standard input).
    file: Option<PathBuf>,
    /// Quality parameter (default: from the header).
    #[arg(long)]
    u: Option<usize>,
    /// e-vector (default: from the header).
    #[arg(long)]
    e: Option<EVector>,
    #[arg(long, value_enum, default_value_t = Variant::Narrow)]
    variant: Variant,
    #[arg(long, value_enum, default_value_t = ShapeMode::Maximal)]
    mode: ShapeMode,
    /// Also report the smallest passing u.
    #[arg(long)]
    u_star: bool,
}

#[derive(Args, Debug)]
struct VerifySeqArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    e: Option<EVector>,
    /// Largest block exponent (default: the precision).
    #[arg(long)]
    m_max: Option<usize>,
}

#[derive(Args, Debug)]
struct ToMoaArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    e: Option<EVector>,
    /// Strength to verify and record (default: the largest that verifies).
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyMoaArgs {
    file: Option<PathBuf>,
    /// Strength (default: from the header).
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Args, Debug)]
struct ToMooaArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    u: Option<usize>,
    #[arg(long)]
    e: Option<EVector>,
    /// Columns per block (default: floor((m-u)/e_i)).
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct VerifyMooaArgs {
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ShapeMode::Maximal)]
    mode: ShapeMode,
}

#[derive(Args, Debug)]
struct FromMooaArgs {
    file: Option<PathBuf>,
    /// Convert without verifying the array first.
    #[arg(long)]
    no_check: bool,
}

#[derive(Args, Debug)]
struct RaoArgs {
    /// Strength.
    #[arg(long)]
    t: usize,
    /// Signature such as `2^5,4^1` (orthogonal array form).
    #[arg(long, conflicts_with_all = ["base", "m", "e"])]
    sig: Option<String>,
    /// Row count to compare against the signature bound.
    #[arg(long, requires = "sig")]
    n: Option<BigUint>,
    /// Net form: base, precision and e-vector of a (0,m,e,s)-net.
    #[arg(long, requires_all = ["m", "e"])]
    base: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    e: Option<EVector>,
}

#[derive(Args, Debug)]
struct FeasibleArgs {
    #[arg(long)]
    base: u32,
    #[arg(long)]
    e: EVector,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Target::Net)]
    target: Target,
}

#[derive(Args, Debug)]
struct DualCertArgs {
    /// MOOA file (default: standard input).
    file: Option<PathBuf>,
    /// Use the block family of this profile.
    #[arg(long, value_delimiter = ',', conflicts_with = "tuples")]
    kappa: Option<Vec<usize>>,
    /// File of function tuples, one per line, residues in column order.
    #[arg(long)]
    tuples: Option<PathBuf>,
    /// Entrywise Gram tolerance (default: 1e-6 b^m).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    file: Option<PathBuf>,
}

fn parse_triple(s: &str) -> std::result::Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [n, i, l] => {
            let num = |t: &str| t.parse::<usize>().map_err(|e| format!("'{t}': {e}"));
            Ok((num(n)?, num(i)?, num(l)?))
        }
        _ => Err(format!("expected n,i,l, got '{s}'")),
    }
}

fn parse_signature(s: &str) -> Result<Signature> {
    let mut alphabets = Vec::new();
    for item in s.split([',', ' ']).filter(|t| !t.is_empty()) {
        let (l, k) = item.split_once('^').unwrap_or((item, "1"));
        let l: u64 = l
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("bad alphabet size in '{item}'")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("bad multiplicity in '{item}'")))?;
        alphabets.extend(std::iter::repeat_n(l, k));
    }
    if alphabets.is_empty() {
        return Err(Error::param("empty signature"));
    }
    Signature::lumped(&alphabets)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Format { .. } => EXIT_FORMAT,
        Error::Unverified(_) | Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdin(), &mut io::stdout(), &mut io::stderr())
}

/// Runs the command line against the given streams and returns the exit
/// code.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut (dyn Read + Send),
    stdout: &mut (dyn Write + Send),
    stderr: &mut (dyn Write + Send),
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = if err.use_stderr() {
                write!(stderr, "{}", err.render())
            } else {
                write!(stdout, "{}", err.render())
            };
            return code;
        }
    };
    let mut ctx = Context {
        json: cli.json,
        stdin,
        out: stdout,
        err: stderr,
    };
    let result = match cli.jobs {
        Some(0) => Err(Error::param("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .and_then(|pool| pool.install(|| dispatch(cli.command, &mut ctx))),
        None => dispatch(cli.command, &mut ctx),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(ctx.err, "error: {err}");
            exit_code(&err)
        }
    }
}

struct Context<'a> {
    json: bool,
    stdin: &'a mut (dyn Read + Send),
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

impl Context<'_> {
    fn read(&mut self, path: Option<&Path>) -> Result<String> {
        match path {
            Some(p) => Ok(fs::read_to_string(p)?),
            None => {
                let mut text = String::new();
                self.stdin.read_to_string(&mut text)?;
                Ok(text)
            }
        }
    }

    fn emit(&mut self, text: impl std::fmt::Display) -> Result<()> {
        write!(self.out, "{text}")?;
        Ok(())
    }

    fn emit_json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        let text =
            serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
        writeln!(self.out, "{text}")?;
        Ok(())
    }

    /// Prints a verdict with labelled extra fields and returns its exit
    /// code.
    fn verdict(
        &mut self,
        v: &Verdict,
        checked_label: &str,
        extra: &[(&str, serde_json::Value)],
    ) -> Result<i32> {
        if self.json {
            let mut obj = serde_json::Map::new();
            obj.insert("pass".into(), json!(v.pass()));
            for (k, val) in extra {
                obj.insert((*k).into(), val.clone());
            }
            obj.insert(checked_label.into(), json!(v.checked()));
            obj.insert("witness".into(), json!(v.witness()));
            self.emit_json(&obj)?;
        } else {
            let mut text = format!("{}\n", if v.pass() { "PASS" } else { "FAIL" });
            for (k, val) in extra {
                let shown = match val {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                text.push_str(&format!("{k}: {shown}\n"));
            }
            text.push_str(&format!("{checked_label}: {}\n", v.checked()));
            if let Some(w) = v.witness() {
                text.push_str(&format!("witness: {w}\n"));
            }
            self.emit(text)?;
        }
        Ok(if v.pass() { EXIT_OK } else { EXIT_FAIL })
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<i32> {
    match command {
        Command::Gen(a) => gen(a, ctx),
        Command::VerifyNet(a) => verify_net_cmd(a, ctx),
        Command::VerifySeq(a) => verify_seq_cmd(a, ctx),
        Command::ToMoa(a) => to_moa_cmd(a, ctx),
        Command::VerifyMoa(a) => verify_moa_cmd(a, ctx),
        Command::ToMooa(a) => to_mooa_cmd(a, ctx),
        Command::VerifyMooa(a) => verify_mooa_cmd(a, ctx),
        Command::FromMooa(a) => from_mooa_cmd(a, ctx),
        Command::Rao(a) => rao_cmd(a, ctx),
        Command::Feasible(a) => feasible_cmd(a, ctx),
        Command::DualCert(a) => dual_cert_cmd(a, ctx),
        Command::Report(a) => report_cmd(a, ctx),
    }
}

fn gen(a: GenArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let need_s = |what: &str| a.s.ok_or_else(|| Error::param(format!("{what} needs --s")));
    let mut points = match a.kind {
        GenKind::Grid => corpus::grid_1d(a.base, a.m)?,
        GenKind::Hammersley => corpus::hammersley(a.base, a.m)?,
        GenKind::Faure => corpus::faure(a.base, a.m, need_s("faure")?)?,
        GenKind::Vdc => {
            let count = match a.count {
                Some(c) => c,
                None => crate::design::checked_pow(u64::from(a.base), a.m)? as usize,
            };
            corpus::van_der_corput(a.base, count, a.m)?
        }
        GenKind::Random => corpus::random_pointset(a.base, a.m, need_s("random")?, a.seed)?,
        GenKind::Search => {
            let e =
                a.e.clone()
                    .ok_or_else(|| Error::param("search needs --e"))?;
            match corpus::search_net(a.base, a.m, &e, a.u, a.node_limit)? {
                SearchOutcome::Found(p) => p,
                SearchOutcome::NonExistent { nodes } => {
                    writeln!(
                        ctx.err,
                        "no ({},{},({e}))-net in base {} exists ({nodes} nodes)",
                        a.u, a.m, a.base
                    )?;
                    return Ok(EXIT_FAIL);
                }
                SearchOutcome::Inconclusive { nodes } => {
                    writeln!(
                        ctx.err,
                        "search stopped after {nodes} nodes without a result"
                    )?;
                    return Ok(EXIT_INCONCLUSIVE);
                }
            }
        }
    };
    for &(n, i, l) in &a.flip {
        points = corpus::flip_digit(&points, n, i, l)?;
    }
    let e = a.e.unwrap_or_else(|| EVector::ones(points.dim()));
    let file = NetFile::new(points, a.u, e)?;
    ctx.emit(file)?;
    Ok(EXIT_OK)
}

fn read_net(ctx: &mut Context<'_>, path: Option<&Path>) -> Result<NetFile> {
    ctx.read(path)?.parse()
}

fn verify_net_cmd(a: VerifyNetArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let file = read_net(ctx, a.file.as_deref())?;
    let u = a.u.unwrap_or(file.u);
    let e = a.e.unwrap_or(file.e);
    let v = net_verify::verify_net_with_mode(&file.points, u, &e, a.variant, a.mode)?;
    let mut extra = vec![
        ("variant", json!(a.variant.to_string())),
        ("u", json!(u)),
        ("e", json!(e.to_string())),
    ];
    if a.u_star {
        extra.push((
            "u_star",
            json!(net_verify::u_star(&file.points, &e, a.variant)?),
        ));
    }
    ctx.verdict(&v, "checked_shapes", &extra)
}

fn verify_seq_cmd(a: VerifySeqArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let file = read_net(ctx, a.file.as_deref())?;
    let u = a.u.unwrap_or(file.u);
    let e = a.e.unwrap_or(file.e);
    let m_max = a.m_max.unwrap_or(file.points.precision());
    let v = net_verify::verify_sequence_prefix(&file.points, u, &e, m_max)?;
    let extra = [
        ("u", json!(u)),
        ("e", json!(e.to_string())),
        ("m_max", json!(m_max)),
    ];
    ctx.verdict(&v, "checked_blocks", &extra)
}

fn to_moa_cmd(a: ToMoaArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let file = read_net(ctx, a.file.as_deref())?;
    let e = a.e.unwrap_or(file.e);
    let moa = net_to_moa(&file.points, &e)?;
    let t = match a.t {
        Some(t) if verify_moa(&moa, t)?.pass() => t,
        Some(_) => 0,
        None => max_strength(&moa),
    };
    ctx.emit(moa.with_strength(t))?;
    Ok(EXIT_OK)
}

fn verify_moa_cmd(a: VerifyMoaArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let moa: MixedOA = ctx.read(a.file.as_deref())?.parse()?;
    let t = a.t.unwrap_or(moa.strength());
    let v = verify_moa(&moa, t)?;
    ctx.verdict(&v, "checked_subsets", &[("t", json!(t))])
}

fn to_mooa_cmd(a: ToMooaArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let file = read_net(ctx, a.file.as_deref())?;
    let u = a.u.unwrap_or(file.u);
    let e = a.e.unwrap_or(file.e);
    let beta = match a.beta {
        Some(b) => b,
        None if u <= file.points.precision() => canonical_beta(file.points.precision(), u, &e),
        None => return Err(Error::param(format!("u = {u} exceeds m"))),
    };
    let z = ooa_bridge::net_to_mooa(&file.points, u, &e, &beta)?;
    ctx.emit(z)?;
    Ok(EXIT_OK)
}

fn verify_mooa_cmd(a: VerifyMooaArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let z: MixedOOA = ctx.read(a.file.as_deref())?.parse()?;
    let v = ooa_bridge::verify_mooa(&z, a.mode)?;
    ctx.verdict(&v, "checked_profiles", &[("strength", json!(z.strength()))])
}

fn from_mooa_cmd(a: FromMooaArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let z: MixedOOA = ctx.read(a.file.as_deref())?.parse()?;
    let points = match ooa_bridge::mooa_to_net(&z, !a.no_check) {
        Err(Error::Unverified(w)) => {
            writeln!(ctx.err, "array does not verify: {w}")?;
            return Ok(EXIT_FAIL);
        }
        other => other?,
    };
    ctx.emit(NetFile::new(points, z.u(), z.e().clone())?)?;
    Ok(EXIT_OK)
}

fn rao_cmd(a: RaoArgs, ctx: &mut Context<'_>) -> Result<i32> {
    if let Some(text) = &a.sig {
        let sig = parse_signature(text)?;
        let rhs = rao_rhs(&sig, a.t);
        let feasible = a.n.as_ref().map(|n| *n >= rhs);
        if ctx.json {
            ctx.emit_json(&json!({
                "signature": sig.to_string(),
                "t": a.t,
                "n": a.n.as_ref().map(|n| n.to_string()),
                "rhs": rhs.to_string(),
                "feasible": feasible,
            }))?;
        } else {
            match &a.n {
                Some(n) if *n >= rhs => ctx.emit(format!("N {n} >= RHS {rhs}\n"))?,
                Some(n) => ctx.emit(format!("N {n} < RHS {rhs}\n"))?,
                None => ctx.emit(format!("RHS {rhs}\n"))?,
            }
        }
        return Ok(if feasible == Some(false) {
            EXIT_FAIL
        } else {
            EXIT_OK
        });
    }
    let (b, m, e) = match (a.base, a.m, &a.e) {
        (Some(b), Some(m), Some(e)) => (b, m, e),
        _ => return Err(Error::param("rao needs --sig, or --base, --m and --e")),
    };
    if a.t < 2 {
        return Err(Error::param("the net form of the bound needs t >= 2"));
    }
    let parity = if a.t.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let (sorted, _) = e.sorted_with_permutation();
    let entry = net_rao_check(b, m, &sorted, a.t / 2, parity)?;
    if ctx.json {
        ctx.emit_json(&entry)?;
    } else {
        ctx.emit(format!("{entry}\n"))?;
    }
    Ok(if entry.violated() { EXIT_FAIL } else { EXIT_OK })
}

fn feasible_cmd(a: FeasibleArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let report = feasibility_report(a.base, a.m, &a.e, a.target)?;
    if ctx.json {
        ctx.emit_json(&report)?;
    } else {
        ctx.emit(format!("{report}\n"))?;
    }
    Ok(if report.feasible { EXIT_OK } else { EXIT_FAIL })
}

fn dual_cert_cmd(a: DualCertArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let z: MixedOOA = ctx.read(a.file.as_deref())?.parse()?;
    let family = match (&a.kappa, &a.tuples) {
        (Some(kappa), _) => build_block_family(&z, &KappaProfile::new(kappa.clone()))?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let mut out = Vec::new();
            for (k, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let residues = line
                    .split_whitespace()
                    .map(|t| t.parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::format(k + 1, e.to_string()))?;
                out.push(
                    FunctionTuple::from_columns(&z, &residues)
                        .map_err(|e| Error::format(k + 1, e.to_string()))?,
                );
            }
            out
        }
        (None, None) => return Err(Error::param("dual-cert needs --kappa or --tuples")),
    };
    let tol = a.tol.unwrap_or(1e-6 * z.rows() as f64);
    let v = gram_certificate(&z, &family, tol)?;
    let extra = [
        ("family_size", json!(family.len())),
        ("rows", json!(z.rows())),
    ];
    ctx.verdict(&v, "checked_entries", &extra)
}

fn report_cmd(a: ReportArgs, ctx: &mut Context<'_>) -> Result<i32> {
    let file = read_net(ctx, a.file.as_deref())?;
    let p: &PointSet = &file.points;
    let claim = net_verify::verify_net(p, file.u, &file.e, Variant::Narrow)?;
    let u_narrow = net_verify::u_star(p, &file.e, Variant::Narrow)?;
    let u_tezuka = net_verify::u_star(p, &file.e, Variant::Tezuka)?;
    let strength = if file.e.max() as usize <= p.precision() {
        Some(max_strength(&net_to_moa(p, &file.e)?))
    } else {
        None
    };
    let bounds = feasibility_report(p.base(), Some(p.precision()), &file.e, Target::Net)?;
    if ctx.json {
        ctx.emit_json(&json!({
            "base": p.base(),
            "m": p.precision(),
            "s": p.dim(),
            "u": file.u,
            "e": file.e.to_string(),
            "claim": claim,
            "u_star_narrow": u_narrow,
            "u_star_tezuka": u_tezuka,
            "moa_strength": strength,
            "zero_u_bounds": bounds,
        }))?;
    } else {
        let mut text = format!(
            "base {} m {} s {} u {} e ({})\n",
            p.base(),
            p.precision(),
            p.dim(),
            file.u,
            file.e
        );
        match claim.witness() {
            None => text.push_str("claim: PASS\n"),
            Some(w) => text.push_str(&format!("claim: FAIL ({w})\n")),
        }
        text.push_str(&format!(
            "u_star narrow: {u_narrow}\nu_star tezuka: {u_tezuka}\n"
        ));
        match strength {
            Some(t) => text.push_str(&format!("moa strength: {t}\n")),
            None => text.push_str("moa strength: n/a\n"),
        }
        text.push_str(&format!(
            "bounds for u = 0: {}\n",
            if bounds.feasible {
                "feasible"
            } else {
                "infeasible"
            }
        ));
        for entry in &bounds.entries {
            text.push_str(&format!("  {entry}\n"));
        }
        ctx.emit(text)?;
    }
    Ok(if claim.pass() { EXIT_OK } else { EXIT_FAIL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["netoa"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut stdin, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn triples_and_signatures() {
        assert_eq!(parse_triple("1, 1,2"), Ok((1, 1, 2)));
        assert!(parse_triple("1,2").is_err());
        assert_eq!(
            parse_signature("2^2,4").unwrap(),
            Signature::new(vec![(2, 2), (4, 1)]).unwrap()
        );
        assert!(parse_signature("").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["bogus"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["verify-net"], "NET v2\n").0, EXIT_FORMAT);
        assert_eq!(run_str(&["rao", "--t", "2"], "").0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"], "").0, EXIT_OK);
        let (code, _, err) = run_str(
            &[
                "gen",
                "search",
                "--base",
                "2",
                "--m",
                "2",
                "--e",
                "1,1,1,1",
                "--node-limit",
                "1",
            ],
            "",
        );
        assert_eq!(code, EXIT_INCONCLUSIVE, "{err}");
    }

    #[test]
    fn rao_net_form() {
        let (code, out, _) = run_str(
            &[
                "rao", "--base", "2", "--m", "2", "--e", "1,1,1,1", "--t", "2",
            ],
            "",
        );
        assert_eq!(code, EXIT_FAIL);
        assert_eq!(out, "rao even g=1: LHS 4 > RHS 3\n");
        let (code, out, _) = run_str(&["rao", "--sig", "2^5", "--n", "8", "--t", "2"], "");
        assert_eq!((code, out.as_str()), (EXIT_OK, "N 8 >= RHS 6\n"));
    }
}
