//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use serde_json::Value;

use clt_core::builtins::{alternating4, klein_four, resolve, sl23, FIXED_BUILTINS};
use clt_core::constructions::{ConstructionCert, Verification};
use clt_core::density::{verify_lemma32, ApproxResult};
use clt_core::numtheory::{factorize, is_prime_power};
use clt_core::permgroup::cyclic_group;
use clt_core::rational::{format_ratio, parse_rational};
use clt_core::spectrum::{
    check_lower_bound, check_multiplicativity, check_quotient_inequality, conjugacy_classes, enumerate_subgroups,
    enumerate_subgroups_with, naive_subgroups, report_from_subgroups, spectrum_with, OracleConfig, SpectrumReport,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clt(args: &[&str]) -> Result<(String, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_clt"))
        .args(args)
        .env_remove("CLT_ORACLE_CAP")
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "`clt {}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok((String::from_utf8_lossy(&out.stdout).into_owned(), elapsed))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn r(n: u64, d: u64) -> Ratio<u64> {
    Ratio::new(n, d)
}

fn spectrum_builtin(name: &str, expect_missing: &[u64], expect_degree: &str) -> Check {
    let (out, elapsed) = clt(&["spectrum", "--builtin", name, "--json"])?;
    let report: SpectrumReport = parse(&out)?;
    ensure(report.missing_orders == expect_missing, || format!("missing {:?}", report.missing_orders))?;
    ensure(format_ratio(&report.degree) == expect_degree, || format!("degree {}", format_ratio(&report.degree)))?;
    ensure(report.invariant_violations().is_empty(), || format!("{:?}", report.invariant_violations()))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("degree {expect_degree}, missing {expect_missing:?}, {elapsed:.2?}"))
}

fn sweep() -> Check {
    let start = Instant::now();
    let (mut verified, mut certified) = (0, 0);
    for d in 2..=200u64 {
        if is_prime_power(d).unwrap() {
            continue;
        }
        let (out, _) = clt(&["construct", &d.to_string(), "--json"])?;
        let cert: ConstructionCert = parse(&out)?;
        let bad = cert.violations();
        ensure(bad.is_empty(), || format!("d = {d}: {bad:?}"))?;
        ensure(cert.trace.iter().all(|s| s.violations().is_empty()), || format!("d = {d}: bad trace"))?;
        if cert.order <= BigUint::from(2000u32) {
            ensure(cert.verified == Verification::OracleVerified, || format!("d = {d}: {:?}", cert.verified))?;
            ensure(cert.missing_order_confirmed == Some(true), || format!("d = {d}: order not confirmed missing"))?;
            verified += 1;
        } else {
            ensure(cert.verified == Verification::CertificateOnly, || format!("d = {d}: {:?}", cert.verified))?;
            certified += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("sweep took {elapsed:?}"))?;
    Ok(format!("{verified} oracle-verified, {certified} certificate-only, {elapsed:.2?}"))
}

fn full_agl_60() -> Check {
    let (out, elapsed) = clt(&["construct", "60", "--full-agl", "--json"])?;
    let value: Value = parse(&out)?;
    let minimal: ConstructionCert = serde_json::from_value(value["certificate"].clone()).map_err(|e| e.to_string())?;
    let full: ConstructionCert = serde_json::from_value(value["full_agl"].clone()).map_err(|e| e.to_string())?;
    for cert in [&minimal, &full] {
        ensure(cert.missing_order_confirmed == Some(true), || format!("{} contains order 60", cert.description))?;
        ensure(cert.violations().is_empty(), || format!("{:?}", cert.violations()))?;
    }
    ensure(full.order == BigUint::from(360u32), || format!("full witness has order {}", full.order))?;
    ensure(minimal.order == BigUint::from(180u32), || format!("minimal witness has order {}", minimal.order))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("orders 180 and 360 both miss 60, {elapsed:.2?}"))
}

fn lemma32() -> Check {
    let cfg = OracleConfig::default();
    let mut seen = Vec::new();
    for (p, q) in [(2u64, 3u64), (5, 3), (13, 7)] {
        let mut n = 0u32;
        while p * p * q.pow(n + 1) <= 2000 {
            let c = verify_lemma32(p, q, n, &cfg).map_err(|e| e.to_string())?;
            ensure(c.holds, || {
                format!("({p},{q},{n}): missing {:?}, degree {}", c.missing_orders, format_ratio(&c.degree))
            })?;
            seen.push(format!("({p},{q},{n})"));
            n += 1;
        }
    }
    ensure(seen.len() == 9, || format!("checked {}", seen.join(" ")))?;
    Ok(format!("holds for {}", seen.join(" ")))
}

fn approximations() -> Check {
    let eps = parse_rational("1e-3").unwrap();
    let mut slowest = Duration::ZERO;
    for k in 1..=9 {
        let t = format!("0.{k}");
        let (out, elapsed) = clt(&["approximate", &t, "--eps", "1e-3", "--json"])?;
        slowest = slowest.max(elapsed);
        let res: ApproxResult = parse(&out)?;
        let target = parse_rational(&t).unwrap();
        ensure(res.target == target && res.epsilon == eps, || format!("t = {t}: wrong echo"))?;
        ensure(target <= res.product && res.product < &target + &eps, || format!("t = {t}: P = {}", res.product))?;
        let primes: Vec<u64> = res.pairs.iter().flat_map(|p| [p.p, p.q]).collect();
        let distinct: BTreeSet<u64> = primes.iter().copied().collect();
        ensure(distinct.len() == primes.len(), || format!("t = {t}: primes repeat in {primes:?}"))?;
        ensure(res.violations().is_empty(), || format!("t = {t}: {:?}", res.violations()))?;
        ensure(elapsed < Duration::from_secs(1), || format!("t = {t} took {elapsed:?}"))?;
    }
    Ok(format!("t = 0.1..0.9 within [t, t + 1/1000), slowest {slowest:.2?}"))
}

fn property_suites() -> Check {
    let pairs = [
        ("A4", "cyclic:5"),
        ("cyclic:2", "cyclic:3"),
        ("S3", "cyclic:5"),
        ("SL23", "cyclic:35"),
        ("Q8", "cyclic:9"),
        ("S4", "cyclic:7"),
        ("A4", "cyclic:25"),
        ("V4", "cyclic:15"),
        ("agl:5:1", "cyclic:3"),
        ("Q8", "gpqn:5:3:0"),
    ];
    for (a, b) in pairs {
        let c = check_multiplicativity(&resolve(a).unwrap(), &resolve(b).unwrap()).map_err(|e| e.to_string())?;
        ensure(c.holds && c.product_of_degrees == c.degree_of_product, || format!("{a} x {b}"))?;
    }

    let a4 = alternating4();
    let v4 = a4.subgroup_generated_by(klein_four().generators()).unwrap();
    let s = sl23();
    let c6 = cyclic_group(6).unwrap();
    let g = &c6.generators()[0];
    let c2 = c6.subgroup_generated_by(&[g.compose(g).compose(g)]).unwrap();
    let quotients = [(&a4, &v4, r(1, 1), r(5, 2)), (&s, &s.center(), r(5, 6), r(7, 6)), (&c6, &c2, r(1, 1), r(2, 1))];
    for (i, (g, n, lhs, rhs)) in quotients.into_iter().enumerate() {
        let q = check_quotient_inequality(g, n).map_err(|e| e.to_string())?;
        ensure(q.holds && q.quotient_degree == lhs && q.bound == rhs, || {
            format!("quotient case {i}: {} <= {}", format_ratio(&q.quotient_degree), format_ratio(&q.bound))
        })?;
    }

    let la = check_lower_bound(&a4).map_err(|e| e.to_string())?;
    ensure(la.holds && la.equality && la.bound == r(5, 6), || "A4 lower bound".into())?;
    let lc = check_lower_bound(&c6).map_err(|e| e.to_string())?;
    ensure(lc.holds && lc.equality && lc.bound == r(1, 1), || "C6 lower bound".into())?;
    for l in [&la, &lc] {
        ensure(l.equality == l.proper_subgroups_prime_power, || "equality flag disagrees with subgroups".into())?;
    }
    Ok("10 multiplicative pairs, 3 quotient cases, lower bound on A4 and C6".into())
}

fn oracle_consistency() -> Check {
    let extra = ["cyclic:12", "agl:2:2", "agl:5:1", "agl:7:1", "gpqn:2:3:1", "agl:3:2", "gpqn:2:3:2"];
    let mut dual = 0;
    for name in FIXED_BUILTINS.iter().copied().chain(extra) {
        let g = resolve(name).unwrap();
        let subs = enumerate_subgroups(&g).map_err(|e| e.to_string())?;
        if g.order() <= 48 {
            ensure(subs == naive_subgroups(&g), || format!("{name}: enumerators disagree"))?;
            dual += 1;
        }
        let report = report_from_subgroups(&g, &subs).map_err(|e| e.to_string())?;
        ensure(report.invariant_violations().is_empty(), || format!("{name}: {:?}", report.invariant_violations()))?;
        conjugacy_classes(&g, &subs).map_err(|e| format!("{name}: {e}"))?;
        let single = spectrum_with(&g, &OracleConfig::default()).map_err(|e| e.to_string())?;
        let multi = spectrum_with(&g, &OracleConfig::default().with_workers(4)).map_err(|e| e.to_string())?;
        ensure(single == multi, || format!("{name}: worker count changes the report"))?;
        let multi_subs =
            enumerate_subgroups_with(&g, &OracleConfig::default().with_workers(4)).map_err(|e| e.to_string())?;
        ensure(subs == multi_subs, || format!("{name}: worker count changes the subgroup list"))?;
    }
    Ok(format!("{dual} groups cross-checked by the naive enumerator; invariants and worker equality on all"))
}

fn symmetric() -> Check {
    let (out, t5) = clt(&["sn", "5", "--json"])?;
    let s5: SpectrumReport = parse(&out)?;
    ensure(t5 < Duration::from_secs(10), || format!("sn 5 took {t5:?}"))?;
    ensure(s5.tau == 16 && s5.missing_orders.contains(&15), || format!("S5: {s5:?}"))?;
    let (out, t6) = clt(&["sn", "6", "--json"])?;
    let s6: SpectrumReport = parse(&out)?;
    ensure(t6 < Duration::from_secs(600), || format!("sn 6 took {t6:?}"))?;
    for (n, rep) in [(5, &s5), (6, &s6)] {
        ensure(rep.invariant_violations().is_empty(), || format!("S{n}: {:?}", rep.invariant_violations()))?;
        ensure(rep.tau == factorize(rep.group_order).unwrap().tau(), || format!("S{n}: tau"))?;
    }
    for n in ["3", "4"] {
        let (out, _) = clt(&["sn", n, "--json"])?;
        let rep: SpectrumReport = parse(&out)?;
        ensure(format_ratio(&rep.degree) == "1/1", || format!("S{n} degree {}", format_ratio(&rep.degree)))?;
    }
    Ok(format!(
        "S5: D = {}, tau = 16, degree {} ({t5:.2?}); S6: degree {} ({t6:.2?}); S3, S4 degree 1/1",
        s5.realized_count,
        format_ratio(&s5.degree),
        format_ratio(&s6.degree)
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("A4 spectrum", || spectrum_builtin("A4", &[6], "5/6")),
        ("SL(2,3) spectrum", || spectrum_builtin("SL23", &[12], "7/8")),
        ("construct sweep d <= 200", sweep),
        ("construct 60 --full-agl", full_agl_60),
        ("G_{p,q}^n closed form", lemma32),
        ("approximate t = 0.1..0.9", approximations),
        ("property suites", property_suites),
        ("oracle self-consistency", oracle_consistency),
        ("symmetric groups", symmetric),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
