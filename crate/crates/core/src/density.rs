//! Approximating a target in `(0, 1]` by CLT-degrees of explicit groups.
//!
//! `G_{p,q}^n = (C_p² ⋊ C_q) × C_q^n` has CLT-degree `(3n+5)/(3n+6)`; its
//! only missing subgroup order is `p·q^{n+1}`. Products of such groups over
//! pairwise disjoint prime pairs multiply their degrees, so any finite
//! index set `I` is realized by `∏_{n∈I} G_{p_n,q_n}^n`.
//!
//! The greedy scans `n = 0, 1, 2, …` and keeps `n` whenever the running
//! product stays `≥ t`. The factors increase to 1, so the product never
//! drops below `t` and the gap shrinks to 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::{g_pqn, g_pqn_description};
use crate::error::{Error, Result};
use crate::numtheory::{factor_any, find_dirichlet_prime, is_prime};
use crate::permgroup::{direct_product, PermGroup};
use crate::rational::{big_string, biguint_pow, ratio_string};
use crate::spectrum::{self, OracleConfig};

/// Largest index the greedy will scan before reporting a resource error.
/// Targets below roughly `0.011` need more.
pub const GREEDY_INDEX_CAP: u64 = 1_000_000;

/// Comparisons are first made on `f64` logarithms; only those within this
/// margin are decided exactly. Over at most `GREEDY_INDEX_CAP` terms the
/// accumulated rounding error stays below `1e-8`.
const LOG_MARGIN: f64 = 1e-7;

fn factor_ln(n: u64) -> f64 {
    (-1.0 / (3 * n + 6) as f64).ln_1p()
}

/// A product of factors `(3n+5)/(3n+6)` kept as prime exponents, with a
/// floating-point logarithm alongside for fast comparisons.
#[derive(Debug, Default)]
struct FactorProduct {
    exponents: HashMap<u64, i64>,
    log: f64,
}

impl FactorProduct {
    fn push(&mut self, n: u64) {
        for (m, sign) in [(3 * n + 5, 1), (3 * n + 6, -1)] {
            for &(p, e) in &factor_any(m).parts {
                *self.exponents.entry(p).or_default() += sign * e as i64;
            }
        }
        self.log += factor_ln(n);
    }

    /// The exact product in lowest terms.
    fn value(&self) -> BigRational {
        let side = |positive: bool| {
            let parts = self
                .exponents
                .iter()
                .filter(|&(_, &e)| e != 0 && (e > 0) == positive)
                .map(|(&p, &e)| (p, e.unsigned_abs()))
                .collect();
            BigInt::from(FactoredOrder::new(parts).to_biguint())
        };
        BigRational::new_raw(side(true), side(false))
    }
}

/// `(3n+5)/(3n+6)` in lowest terms.
pub fn lemma32_value(n: i64) -> Result<Ratio<u64>> {
    if n < 0 {
        return Err(Error::domain(format!("index n = {n} must be non-negative")));
    }
    let n = n as u64;
    Ok(Ratio::new(3 * n + 5, 3 * n + 6))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma32Check {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub group_order: u64,
    pub missing_orders: Vec<u64>,
    pub expected_missing: u64,
    #[serde(with = "ratio_string")]
    pub degree: Ratio<u64>,
    #[serde(with = "ratio_string")]
    pub expected_degree: Ratio<u64>,
    pub holds: bool,
}

/// Run the oracle on `G_{p,q}^n` and compare with the closed form.
pub fn verify_lemma32(p: u64, q: u64, n: u32, cfg: &OracleConfig) -> Result<Lemma32Check> {
    let g = g_pqn(p, q, n)?;
    let report = spectrum::spectrum_with(&g, cfg)?;
    let expected_missing = p * q.pow(n + 1);
    let expected_degree = lemma32_value(n as i64)?;
    Ok(Lemma32Check {
        p,
        q,
        n,
        group_order: g.order(),
        holds: report.missing_orders == [expected_missing] && report.degree == expected_degree,
        missing_orders: report.missing_orders,
        expected_missing,
        degree: report.degree,
        expected_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePair {
    pub p: u64,
    pub q: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxResult {
    #[serde(with = "big_string")]
    pub target: BigRational,
    #[serde(with = "big_string")]
    pub epsilon: BigRational,
    pub index_set: Vec<u64>,
    #[serde(with = "big_string")]
    pub product: BigRational,
    pub pairs: Vec<PrimePair>,
    pub witness_order: FactoredOrder,
}

impl ApproxResult {
    /// Every violated invariant; empty for a valid result.
    pub fn violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if !(self.target <= self.product && self.product < &self.target + &self.epsilon) {
            bad.push("product not in [t, t + eps)".into());
        }
        let mut recomputed = FactorProduct::default();
        for &n in &self.index_set {
            recomputed.push(n);
        }
        let recomputed = recomputed.value();
        if recomputed != self.product {
            bad.push("product differs from the recomputed factors".into());
        }
        if self.index_set.windows(2).any(|w| w[0] >= w[1]) {
            bad.push("index set not strictly increasing".into());
        }
        if self.pairs.len() != self.index_set.len()
            || self.pairs.iter().zip(&self.index_set).any(|(pair, &n)| pair.n != n)
        {
            bad.push("pairs do not match the index set".into());
        }
        let mut seen = BTreeSet::new();
        for pair in &self.pairs {
            if !is_prime(pair.p) || !is_prime(pair.q) || pair.q % 2 == 0 || (pair.p + 1) % pair.q != 0 {
                bad.push(format!("invalid pair ({}, {})", pair.p, pair.q));
            }
            if !seen.insert(pair.p) || !seen.insert(pair.q) {
                bad.push(format!("pair ({}, {}) reuses a prime", pair.p, pair.q));
            }
        }
        if witness_order(&self.pairs) != self.witness_order {
            bad.push("witness order mismatch".into());
        }
        bad
    }
}

fn witness_order(pairs: &[PrimePair]) -> FactoredOrder {
    FactoredOrder::new(pairs.iter().flat_map(|pr| [(pr.p, 2), (pr.q, pr.n + 1)]).collect())
}

/// A positive integer kept as its prime factorization. Witness orders run
/// to millions of decimal digits, so they are never expanded unless asked.
/// Serializes as `"2^2 * 3 * 19^2 * 5^2"`-style text, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactoredOrder {
    parts: Vec<(u64, u64)>,
}

impl FactoredOrder {
    /// Merge `(prime, exponent)` parts; zero exponents are dropped.
    pub fn new(mut parts: Vec<(u64, u64)>) -> Self {
        parts.retain(|&(_, e)| e > 0);
        parts.sort_unstable();
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(parts.len());
        for (p, e) in parts {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        FactoredOrder { parts: merged }
    }

    pub fn parts(&self) -> &[(u64, u64)] {
        &self.parts
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    /// The value, if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        self.parts.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(u32::try_from(e).ok()?)?))
    }

    /// The expanded value, multiplied as a balanced product tree.
    pub fn to_biguint(&self) -> BigUint {
        let mut terms: Vec<BigUint> = self.parts.iter().map(|&(p, e)| biguint_pow(p, e)).collect();
        while terms.len() > 1 {
            terms = terms
                .chunks(2)
                .map(|c| if let [a, b] = c { a * b } else { c[0].clone() })
                .collect();
        }
        terms.pop().unwrap_or_else(BigUint::one)
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> =
            self.parts.iter().map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect();
        write!(f, "{}", terms.join(" * "))
    }
}

impl FromStr for FactoredOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("`{s}` is not a product of prime powers"));
        if s.trim() == "1" {
            return Ok(FactoredOrder::default());
        }
        let mut parts = Vec::new();
        for term in s.split('*') {
            let (p, e) = match term.trim().split_once('^') {
                Some((p, e)) => (p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?),
                None => (term.trim().parse().map_err(|_| bad())?, 1),
            };
            if !is_prime(p) || e == 0 {
                return Err(bad());
            }
            parts.push((p, e));
        }
        Ok(FactoredOrder::new(parts))
    }
}

impl Serialize for FactoredOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FactoredOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Assign disjoint prime pairs to the indices in order: `q` runs through
/// the odd primes skipping any already used, `p` is the least unused prime
/// with `q | p + 1`.
pub fn assign_pairs(index_set: &[u64]) -> Result<Vec<PrimePair>> {
    let mut used = BTreeSet::new();
    let mut q = 1u64;
    let mut pairs = Vec::with_capacity(index_set.len());
    for &n in index_set {
        q += 2;
        while !is_prime(q) || used.contains(&q) {
            q += 2;
        }
        used.insert(q);
        let p = find_dirichlet_prime(q, &used)?;
        used.insert(p);
        pairs.push(PrimePair { p, q, n });
    }
    Ok(pairs)
}

/// Greedy index selection with `t ≤ ∏_{n∈I} (3n+5)/(3n+6) < t + eps`.
pub fn approximate_target(t: &BigRational, eps: &BigRational) -> Result<ApproxResult> {
    if *t <= BigRational::zero() || *t > BigRational::one() {
        return Err(Error::domain(format!("target {t} must lie in (0, 1]")));
    }
    if *eps <= BigRational::zero() {
        return Err(Error::domain("epsilon must be positive"));
    }
    let mut running = FactorProduct::default();
    let ln_t = t.to_f64().map_or(f64::NEG_INFINITY, f64::ln);
    let (tf, ef) = (t.to_f64().unwrap_or(0.0), eps.to_f64().unwrap_or(0.0));
    let gap_open = |running: &FactorProduct| {
        let pf = running.log.exp();
        let d = pf - tf - ef;
        let slack = LOG_MARGIN * pf + 1e-15 * (tf + ef);
        if d > slack {
            true
        } else if d < -slack {
            false
        } else {
            running.value() - t >= *eps
        }
    };
    let mut index_set = Vec::new();
    let mut n = 0u64;
    let mut open = gap_open(&running);
    while open {
        if n > GREEDY_INDEX_CAP {
            return Err(Error::resource(format!(
                "greedy scanned past n = {GREEDY_INDEX_CAP}; the target is too small for this method"
            )));
        }
        let x = running.log + factor_ln(n) - ln_t;
        let include = if x > LOG_MARGIN {
            true
        } else if x < -LOG_MARGIN {
            false
        } else {
            running.value() * BigRational::new(BigInt::from(3 * n + 5), BigInt::from(3 * n + 6)) >= *t
        };
        if include {
            running.push(n);
            index_set.push(n);
            open = gap_open(&running);
        }
        n += 1;
    }
    let product = running.value();
    let pairs = assign_pairs(&index_set)?;
    Ok(ApproxResult {
        target: t.clone(),
        epsilon: eps.clone(),
        witness_order: witness_order(&pairs),
        index_set,
        product,
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessStatus {
    OracleVerified,
    CertificateOnly,
    Refuted,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub description: String,
    pub order: FactoredOrder,
    pub status: WitnessStatus,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ratio")]
    pub oracle_degree: Option<Ratio<u64>>,
    #[serde(skip)]
    pub group: Option<PermGroup>,
}

mod opt_ratio {
    use num_rational::Ratio;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&crate::rational::format_ratio(r)),
            None => s.serialize_none(),
        }
    }
}

/// Describe the witness product and, when it fits the oracle cap, build it
/// and check its measured degree against the exact product.
pub fn witness_description(result: &ApproxResult, cfg: &OracleConfig) -> Result<Witness> {
    let description = if result.pairs.is_empty() {
        "1".to_string()
    } else {
        result
            .pairs
            .iter()
            .map(|pr| {
                let text = g_pqn_description(pr.p, pr.q, pr.n as u32);
                if result.pairs.len() > 1 && pr.n > 0 {
                    format!("[{text}]")
                } else {
                    text
                }
            })
            .collect::<Vec<_>>()
            .join(" × ")
    };
    let order = result.witness_order.clone();
    let fits = order.to_u64().is_some_and(|o| o <= cfg.cap);
    if !fits {
        return Ok(Witness { description, order, status: WitnessStatus::CertificateOnly, oracle_degree: None, group: None });
    }
    let mut group = PermGroup::generate(1, vec![])?;
    for pr in &result.pairs {
        let factor = g_pqn(pr.p, pr.q, pr.n as u32)?;
        group = if group.order() == 1 { factor } else { direct_product(&group, &factor)? };
    }
    let degree = spectrum::spectrum_with(&group, cfg)?.degree;
    let expected = result.product.numer().to_u64().zip(result.product.denom().to_u64()).map(|(a, b)| Ratio::new(a, b));
    let status = if expected == Some(degree) { WitnessStatus::OracleVerified } else { WitnessStatus::Refuted };
    Ok(Witness { description, order, status, oracle_degree: Some(degree), group: Some(group) })
}
