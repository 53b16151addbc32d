//! Elementary number theory at desk scale: trial-division factorization,
//! divisor counts, multiplicative orders and the prime search used to pair
//! an odd prime `q` with a prime `p ≡ −1 (mod q)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of progression terms `find_dirichlet_prime`
/// inspects before giving up.
pub const DIRICHLET_SEARCH_CAP: u64 = 1_000_000;

/// A positive integer together with its prime decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub parts: Vec<(u64, u32)>,
}

impl Factorization {
    /// The set of prime divisors, `π(value)`.
    pub fn primes(&self) -> Vec<u64> {
        self.parts.iter().map(|&(p, _)| p).collect()
    }

    /// Number of distinct prime divisors.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn prime_power(&self, i: usize) -> u64 {
        let (p, e) = self.parts[i];
        p.pow(e)
    }

    pub fn is_prime_power(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn tau(&self) -> u64 {
        self.parts.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.parts {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1;
                for _ in 0..=e {
                    next.push(d * pk);
                    pk *= p;
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }

    /// Rebuild the value from its parts.
    pub fn product(&self) -> u64 {
        self.parts.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", terms.join(" * "))
    }
}

/// Prime factorization by trial division. `n = 1` is accepted internally
/// (empty parts) so that group orders of trivial groups factor cleanly;
/// the public contract is [`factorize`].
pub(crate) fn factor_any(n: u64) -> Factorization {
    let mut parts = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            parts.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        parts.push((m, 1));
    }
    Factorization { value: n, parts }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::domain(format!("cannot factorize {n}: need n >= 2")));
    }
    Ok(factor_any(n))
}

/// Number of divisors of `n`.
pub fn tau(n: u64) -> Result<u64> {
    if n < 1 {
        return Err(Error::domain("tau is defined for n >= 1"));
    }
    Ok(factor_any(n).tau())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_prime_power(n: u64) -> Result<bool> {
    Ok(factorize(n)?.is_prime_power())
}

/// `base^exp mod m` with 128-bit intermediates.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut result = 1u128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as u64
}

/// Smallest `e >= 1` with `a^e ≡ 1 (mod m)`, by direct iteration.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::domain(format!("modulus {m} must be at least 2")));
    }
    if a.gcd(&m) != 1 {
        return Err(Error::domain(format!("{a} is not a unit modulo {m}")));
    }
    let a = a % m;
    let mut x = a;
    let mut e = 1u64;
    while x != 1 {
        x = ((x as u128 * a as u128) % m as u128) as u64;
        e += 1;
        if e > m {
            return Err(Error::Internal(format!("order of {a} mod {m} not found")));
        }
    }
    Ok(e)
}

/// Smallest prime `p ∉ excluded` with `q | p + 1`.
pub fn find_dirichlet_prime(q: u64, excluded: &BTreeSet<u64>) -> Result<u64> {
    if q < 3 || !is_prime(q) {
        return Err(Error::domain(format!("{q} is not an odd prime")));
    }
    // candidates q-1, 2q-1, 3q-1, ...
    let mut candidate = q - 1;
    for _ in 0..DIRICHLET_SEARCH_CAP {
        if is_prime(candidate) && !excluded.contains(&candidate) {
            return Ok(candidate);
        }
        candidate += q;
    }
    Err(Error::Internal(format!(
        "no prime p = -1 mod {q} within {DIRICHLET_SEARCH_CAP} candidates"
    )))
}
