//! The subgroup-order spectrum of a finite group and its CLT-degree
//! `D(G)/τ(|G|)`, computed from a complete subgroup enumeration.

mod enumerate;
mod naive;

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use enumerate::{conjugacy_classes, is_join_closed, is_solvable, sort_subgroups};
pub use naive::naive_subgroups;

use crate::error::{Error, Result};
use crate::numtheory::factor_any;
use crate::permgroup::{self, direct_product, is_normal, quotient_group, PermGroup, Subgroup};
use crate::rational::ratio_string;

/// Default largest group order the oracle accepts.
pub const DEFAULT_ORACLE_CAP: u64 = 2000;

/// Largest `n` for which `sn_report` runs without `allow_slow`.
pub const SN_FRONTIER: usize = 6;
/// Largest `n` accepted with `allow_slow`.
pub const SN_SLOW_FRONTIER: usize = 7;

/// How the oracle enumerates subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Cyclic extension for solvable groups, join-closure otherwise.
    #[default]
    Auto,
    JoinClosure,
    /// Only valid for solvable groups.
    CyclicExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: u64,
    pub workers: usize,
    pub strategy: Strategy,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_ORACLE_CAP, workers: 1, strategy: Strategy::Auto }
    }
}

impl OracleConfig {
    pub fn with_cap(cap: u64) -> Self {
        OracleConfig { cap, ..Default::default() }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub group_order: u64,
    pub realized_orders: Vec<u64>,
    #[serde(rename = "D")]
    pub realized_count: u64,
    pub tau: u64,
    #[serde(with = "ratio_string")]
    pub degree: Ratio<u64>,
    pub missing_orders: Vec<u64>,
    pub subgroup_count: u64,
    pub conjugacy_class_count: u64,
}

impl SpectrumReport {
    pub fn is_clt(&self) -> bool {
        self.missing_orders.is_empty()
    }

    /// Every violated report invariant (Lagrange, Sylow, counting, range),
    /// empty when the report is consistent.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.group_order;
        let realized: BTreeSet<u64> = self.realized_orders.iter().copied().collect();
        if !realized.contains(&1) || !realized.contains(&n) {
            bad.push("1 and |G| must be realized".to_string());
        }
        if let Some(d) = self.realized_orders.iter().find(|&&d| n % d != 0) {
            bad.push(format!("realized order {d} does not divide {n}"));
        }
        let f = factor_any(n);
        let divisors = f.divisors();
        for &(p, e) in &f.parts {
            for k in 1..=e {
                if !realized.contains(&p.pow(k)) {
                    bad.push(format!("prime-power divisor {} not realized", p.pow(k)));
                }
            }
        }
        if self.tau != divisors.len() as u64 {
            bad.push(format!("tau {} != {}", self.tau, divisors.len()));
        }
        if self.realized_count != realized.len() as u64 {
            bad.push("D disagrees with realized_orders".into());
        }
        if self.realized_count + self.missing_orders.len() as u64 != self.tau {
            bad.push("D + |missing| != tau".into());
        }
        let expected_missing: Vec<u64> = divisors.iter().copied().filter(|d| !realized.contains(d)).collect();
        if expected_missing != self.missing_orders {
            bad.push("missing_orders is not divisors minus realized".into());
        }
        if self.tau != 0 && self.degree != Ratio::new(self.realized_count, self.tau) {
            bad.push("degree != D/tau".into());
        }
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        if self.degree <= zero || self.degree > one {
            bad.push("degree outside (0, 1]".into());
        }
        if (self.degree == one) != self.missing_orders.is_empty() {
            bad.push("degree = 1 must coincide with no missing orders".into());
        }
        bad
    }
}

pub fn enumerate_subgroups(g: &PermGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with(g, &OracleConfig::default())
}

pub fn enumerate_subgroups_with(g: &PermGroup, cfg: &OracleConfig) -> Result<Vec<Subgroup>> {
    enumerate::enumerate(g, cfg)
}

/// Build a report from an already enumerated subgroup list.
pub fn report_from_subgroups(g: &PermGroup, subs: &[Subgroup]) -> Result<SpectrumReport> {
    let n = g.order();
    let realized: BTreeSet<u64> = subs.iter().map(|s| s.order()).collect();
    let divisors = factor_any(n).divisors();
    let missing: Vec<u64> = divisors.iter().copied().filter(|d| !realized.contains(d)).collect();
    let classes = conjugacy_classes(g, subs)?;
    let class_count = classes.iter().max().map_or(0, |&m| m + 1) as u64;
    let tau = divisors.len() as u64;
    let d = realized.len() as u64;
    Ok(SpectrumReport {
        group_order: n,
        realized_orders: realized.into_iter().collect(),
        realized_count: d,
        tau,
        degree: Ratio::new(d, tau),
        missing_orders: missing,
        subgroup_count: subs.len() as u64,
        conjugacy_class_count: class_count,
    })
}

pub fn spectrum(g: &PermGroup) -> Result<SpectrumReport> {
    spectrum_with(g, &OracleConfig::default())
}

pub fn spectrum_with(g: &PermGroup, cfg: &OracleConfig) -> Result<SpectrumReport> {
    let subs = enumerate_subgroups_with(g, cfg)?;
    report_from_subgroups(g, &subs)
}

pub fn clt_degree(g: &PermGroup) -> Result<Ratio<u64>> {
    Ok(spectrum(g)?.degree)
}

pub fn is_clt(g: &PermGroup) -> Result<bool> {
    Ok(spectrum(g)?.is_clt())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundCheck {
    #[serde(with = "ratio_string")]
    pub bound: Ratio<u64>,
    #[serde(with = "ratio_string")]
    pub degree: Ratio<u64>,
    pub holds: bool,
    pub equality: bool,
    /// Whether every proper subgroup has prime-power order (read off the
    /// enumeration); should coincide with `equality`.
    pub proper_subgroups_prime_power: bool,
}

/// Compare `d_CLT(G)` with `(Σ nᵢ + 2) / ∏ (nᵢ + 1)` for `|G| = ∏ pᵢ^nᵢ`.
pub fn check_lower_bound(g: &PermGroup) -> Result<LowerBoundCheck> {
    let f = factor_any(g.order());
    if f.k() < 2 {
        return Err(Error::domain(format!(
            "lower bound needs at least two prime divisors, |G| = {}",
            g.order()
        )));
    }
    let sum: u64 = f.parts.iter().map(|&(_, e)| e as u64).sum();
    let bound = Ratio::new(sum + 2, f.tau());
    let subs = enumerate_subgroups(g)?;
    let report = report_from_subgroups(g, &subs)?;
    let proper_pp = subs
        .iter()
        .filter(|s| s.order() < g.order())
        .all(|s| factor_any(s.order()).parts.len() <= 1);
    Ok(LowerBoundCheck {
        bound,
        degree: report.degree,
        holds: report.degree >= bound,
        equality: report.degree == bound,
        proper_subgroups_prime_power: proper_pp,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    #[serde(with = "ratio_string")]
    pub quotient_degree: Ratio<u64>,
    #[serde(with = "ratio_string")]
    pub bound: Ratio<u64>,
    pub holds: bool,
}

/// `d_CLT(G/N) ≤ τ(|G|)/τ(|G|/|N|) · d_CLT(G)`, both sides exact.
pub fn check_quotient_inequality(g: &PermGroup, n: &Subgroup) -> Result<QuotientCheck> {
    if !is_normal(g, n)? {
        return Err(Error::domain("quotient inequality needs a normal subgroup"));
    }
    let q = quotient_group(g, n)?;
    let lhs = spectrum(&q)?.degree;
    let whole = spectrum(g)?;
    let factor = Ratio::new(whole.tau, factor_any(g.order() / n.order()).tau());
    let rhs = factor * whole.degree;
    Ok(QuotientCheck { quotient_degree: lhs, bound: rhs, holds: lhs <= rhs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityCheck {
    #[serde(with = "ratio_string")]
    pub product_of_degrees: Ratio<u64>,
    #[serde(with = "ratio_string")]
    pub degree_of_product: Ratio<u64>,
    pub holds: bool,
}

pub fn check_multiplicativity(g1: &PermGroup, g2: &PermGroup) -> Result<MultiplicativityCheck> {
    if g1.order().gcd(&g2.order()) != 1 {
        return Err(Error::domain(format!(
            "orders {} and {} are not coprime",
            g1.order(),
            g2.order()
        )));
    }
    let product = direct_product(g1, g2)?;
    let left = spectrum(g1)?.degree * spectrum(g2)?.degree;
    let right = spectrum(&product)?.degree;
    Ok(MultiplicativityCheck { product_of_degrees: left, degree_of_product: right, holds: left == right })
}

/// Spectrum of `S_n`. `n` above [`SN_FRONTIER`] needs `allow_slow`, which
/// also lifts the oracle cap to `n!`.
pub fn sn_report(n: usize, allow_slow: bool, cfg: &OracleConfig) -> Result<SpectrumReport> {
    if n == 0 {
        return Err(Error::domain("S_n needs n >= 1"));
    }
    let limit = if allow_slow { SN_SLOW_FRONTIER } else { SN_FRONTIER };
    if n > limit {
        let hint = if allow_slow || n > SN_SLOW_FRONTIER { "" } else { " (pass --allow-slow for n = 7)" };
        return Err(Error::resource(format!("S_{n} is beyond the feasibility frontier n <= {limit}{hint}")));
    }
    let mut cfg = *cfg;
    let order: u64 = (1..=n as u64).product();
    if allow_slow {
        cfg.cap = cfg.cap.max(order);
    }
    let g = permgroup::symmetric_group(n)?;
    spectrum_with(&g, &cfg)
}
