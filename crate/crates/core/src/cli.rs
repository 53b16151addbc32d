//! The `clt` command line.
//!
//! Exit codes: 0 success, 1 internal failure or a refuted check, 2 user
//! error, 3 resource limit.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::builtins;
use crate::constructions::{theorem1_construct_with, ConstructOptions, ConstructionCert, Variant, Verification};
use crate::density::{approximate_target, witness_description, WitnessStatus};
use crate::error::{Error, Result};
use crate::permgroup::{parse_group_file, PermGroup, Permutation};
use crate::rational::{format_big, format_ratio, parse_rational};
use crate::spectrum::{self, OracleConfig, SpectrumReport, DEFAULT_ORACLE_CAP};

pub const ORACLE_CAP_ENV: &str = "CLT_ORACLE_CAP";

#[derive(Debug, Parser)]
#[command(name = "clt", version, about = "Subgroup-order spectra, CLT-degrees and groups missing a subgroup order")]
pub struct Cli {
    /// Worker threads for subgroup enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Group file (`degree N` then `gen ...` lines, 1-based).
    #[arg(long)]
    pub file: Option<std::path::PathBuf>,
    /// Builtin group: A4 S3 S4 S5 S6 SL23 V4 Q8, agl:p:m, cyclic:n, gpqn:p:q:n, sym:n.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a solvable group whose order is divisible by d but which has no subgroup of order d.
    Construct {
        d: u64,
        /// Also report the witness built from the full affine group.
        #[arg(long)]
        full_agl: bool,
        /// Skip the subgroup oracle.
        #[arg(long)]
        no_verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Subgroup-order spectrum and CLT-degree of a group.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Print only the CLT-degree.
    Degree {
        #[command(flatten)]
        source: Source,
    },
    /// Approximate a target in (0, 1] by a product of (3n+5)/(3n+6).
    Approximate {
        target: String,
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long)]
        json: bool,
    },
    /// Spectrum of the symmetric group S_n.
    Sn {
        n: usize,
        /// Permit n = 7 (long running).
        #[arg(long)]
        allow_slow: bool,
        #[arg(long)]
        json: bool,
    },
    /// Spectrum of (C_p^2 ⋊ C_q) × C_q^n.
    Gpqn {
        p: u64,
        q: u64,
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a saved construction certificate.
    Verify {
        path: std::path::PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(err: &Error) -> Self {
        Outcome { code: err.exit_code(), stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

fn oracle_config(workers: usize) -> Result<OracleConfig> {
    let cap = match std::env::var(ORACLE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("{ORACLE_CAP_ENV}=`{v}` is not a positive integer")))?,
        Err(_) => DEFAULT_ORACLE_CAP,
    };
    Ok(OracleConfig::with_cap(cap).with_workers(workers))
}

fn load_group(source: &Source) -> Result<PermGroup> {
    match (&source.file, &source.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
            parse_group_file(&text)
        }
        (None, Some(name)) => builtins::resolve(name),
        (None, None) => Err(Error::domain("give --file or --builtin")),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn list(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn spectrum_text(r: &SpectrumReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "order:           {}", r.group_order);
    let _ = writeln!(s, "realized orders: [{}]", list(&r.realized_orders));
    let _ = writeln!(s, "missing orders:  [{}]", list(&r.missing_orders));
    let _ = writeln!(s, "D = {}, tau = {}", r.realized_count, r.tau);
    let _ = writeln!(s, "degree:          {}", format_ratio(&r.degree));
    let _ = writeln!(s, "subgroups:       {} ({} conjugacy classes)", r.subgroup_count, r.conjugacy_class_count);
    s
}

fn cert_text(c: &ConstructionCert) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "d = {} = {}", c.d.value, c.d);
    let _ = writeln!(s, "group: {} of order {}", c.description, c.order);
    if let Some(x) = &c.cross_reference {
        let _ = writeln!(s, "  (cf. {x})");
    }
    for step in &c.trace {
        let _ = match step {
            crate::constructions::TraceStep::Case1 { p1, n1, p2, n2, a, r, constructed_order } => writeln!(
                s,
                "  case 1: p1^n1 = {p1}^{n1}, p2^n2 = {p2}^{n2}, a = {a}, r = {r}, order {constructed_order}"
            ),
            crate::constructions::TraceStep::Case2 { stripped_prime_power, reduced_d, .. } => {
                writeln!(s, "  case 2: strip {stripped_prime_power}, recurse on {reduced_d}")
            }
        };
    }
    let status = match c.verified {
        Verification::OracleVerified => format!("oracle_verified: no subgroup of order {}", c.d.value),
        Verification::CertificateOnly => "certificate_only".to_string(),
        Verification::Refuted => format!("REFUTED: a subgroup of order {} exists", c.d.value),
    };
    let _ = writeln!(s, "status: {status}");
    s
}

fn cmd_construct(d: u64, full_agl: bool, no_verify: bool, json: bool, oracle: OracleConfig) -> Result<Outcome> {
    let opts = ConstructOptions { verify: !no_verify, variant: Variant::Minimal, oracle };
    let cert = theorem1_construct_with(d, &opts)?;
    let full = if full_agl {
        Some(theorem1_construct_with(d, &ConstructOptions { variant: Variant::FullAgl, ..opts })?)
    } else {
        None
    };
    let refuted = cert.verified == Verification::Refuted
        || full.as_ref().is_some_and(|f| f.verified == Verification::Refuted);
    let stdout = if json {
        match &full {
            None => to_json(&cert),
            Some(f) => to_json(&json!({ "certificate": cert, "full_agl": f })),
        }
    } else {
        let mut s = cert_text(&cert);
        if let Some(f) = &full {
            s.push_str("\nfull affine witness:\n");
            s.push_str(&cert_text(f));
        }
        s
    };
    Ok(Outcome { code: if refuted { 1 } else { 0 }, stdout, stderr: String::new() })
}

fn cmd_approximate(target: &str, eps: &str, json: bool, oracle: OracleConfig) -> Result<Outcome> {
    let t: BigRational = parse_rational(target)?;
    let e: BigRational = parse_rational(eps)?;
    let result = approximate_target(&t, &e)?;
    let witness = witness_description(&result, &oracle)?;
    let stdout = if json {
        to_json(&json!({
            "target": format_big(&result.target),
            "epsilon": format_big(&result.epsilon),
            "index_set": result.index_set,
            "product": format_big(&result.product),
            "pairs": result.pairs,
            "witness_order": result.witness_order,
            "witness": witness,
        }))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "target:    {}", format_big(&result.target));
        let _ = writeln!(s, "epsilon:   {}", format_big(&result.epsilon));
        let _ = writeln!(s, "index set: [{}]", list(&result.index_set));
        let _ = writeln!(s, "product:   {}", format_big(&result.product));
        let _ = writeln!(s, "pairs:     {}", result.pairs.len());
        let _ = writeln!(s, "witness:   {} (order {})", witness.description, witness.order);
        let _ = writeln!(s, "status:    {}", json!(witness.status).as_str().unwrap_or_default());
        s
    };
    let code = if witness.status == WitnessStatus::Refuted { 1 } else { 0 };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    d: u64,
    description: String,
    matches_reconstruction: bool,
    arithmetic_violations: Vec<String>,
    oracle_missing_confirmed: Option<bool>,
    ok: bool,
}

fn verify_cert(cert: &ConstructionCert, oracle: OracleConfig) -> Result<VerifyReport> {
    let fresh = theorem1_construct_with(
        cert.d.value,
        &ConstructOptions { verify: false, variant: cert.variant, oracle },
    )?;
    let matches = fresh.trace == cert.trace && fresh.order == cert.order && fresh.description == cert.description;
    let violations = cert.violations();
    // rebuild from the stored generators, independently of the construction
    let oracle_missing = match (&cert.degree, &cert.generators) {
        (Some(degree), Some(gens)) => {
            let perms = gens.iter().map(|g| Permutation::from_one_based(g)).collect::<Result<Vec<_>>>()?;
            let g = PermGroup::generate(*degree, perms)?;
            if g.order().to_string() != cert.order.to_string() {
                Some(false)
            } else if g.order() <= oracle.cap {
                Some(!spectrum::spectrum_with(&g, &oracle)?.realized_orders.contains(&cert.d.value))
            } else {
                None
            }
        }
        _ => None,
    };
    let claimed_ok = match cert.verified {
        Verification::OracleVerified => oracle_missing == Some(true),
        Verification::CertificateOnly => oracle_missing != Some(false),
        Verification::Refuted => false,
    };
    Ok(VerifyReport {
        d: cert.d.value,
        description: cert.description.clone(),
        matches_reconstruction: matches,
        ok: matches && violations.is_empty() && claimed_ok,
        arithmetic_violations: violations,
        oracle_missing_confirmed: oracle_missing,
    })
}

fn cmd_verify(path: &std::path::Path, json: bool, oracle: OracleConfig) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::domain(format!("invalid JSON: {e}")))?;
    let mut certs = Vec::new();
    if value.get("certificate").is_some() {
        for key in ["certificate", "full_agl"] {
            if let Some(v) = value.get(key) {
                certs.push(v.clone());
            }
        }
    } else {
        certs.push(value);
    }
    let mut reports = Vec::new();
    for v in certs {
        let cert: ConstructionCert =
            serde_json::from_value(v).map_err(|e| Error::domain(format!("not a certificate: {e}")))?;
        reports.push(verify_cert(&cert, oracle)?);
    }
    let ok = reports.iter().all(|r| r.ok);
    let stdout = if json {
        to_json(&reports)
    } else {
        reports
            .iter()
            .map(|r| {
                let verdict = if r.ok { "ok" } else { "FAILED" };
                let mut line = format!("d = {}: {} -- {verdict}", r.d, r.description);
                for v in &r.arithmetic_violations {
                    line.push_str(&format!("\n  {v}"));
                }
                line + "\n"
            })
            .collect()
    };
    Ok(Outcome { code: if ok { 0 } else { 2 }, stdout, stderr: String::new() })
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    let oracle = oracle_config(cli.workers)?;
    match cli.command {
        Command::Construct { d, full_agl, no_verify, json } => cmd_construct(d, full_agl, no_verify, json, oracle),
        Command::Spectrum { source, json } => {
            let g = load_group(&source)?;
            let r = spectrum::spectrum_with(&g, &oracle)?;
            Ok(Outcome::ok(if json { to_json(&r) } else { spectrum_text(&r) }))
        }
        Command::Degree { source } => {
            let g = load_group(&source)?;
            let r = spectrum::spectrum_with(&g, &oracle)?;
            Ok(Outcome::ok(format_ratio(&r.degree) + "\n"))
        }
        Command::Approximate { target, eps, json } => cmd_approximate(&target, &eps, json, oracle),
        Command::Sn { n, allow_slow, json } => {
            let r = spectrum::sn_report(n, allow_slow, &oracle)?;
            Ok(Outcome::ok(if json { to_json(&r) } else { spectrum_text(&r) }))
        }
        Command::Gpqn { p, q, n, json } => {
            let g = crate::constructions::g_pqn(p, q, n)?;
            let r = spectrum::spectrum_with(&g, &oracle)?;
            Ok(Outcome::ok(if json { to_json(&r) } else { spectrum_text(&r) }))
        }
        Command::Verify { path, json } => cmd_verify(&path, json, oracle),
    }
}

/// Parse `args` (including the program name) and run one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    dispatch(cli).unwrap_or_else(|e| Outcome::fail(&e))
}
