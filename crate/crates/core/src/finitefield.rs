//! Explicit GF(p^m).
//!
//! Elements are indexed `0 .. p^m` by the base-`p` digits of their
//! coefficient vector, constant term as the least significant digit, so a
//! permutation of field elements is directly a permutation of indices.
//! The modulus is the lexicographically smallest monic irreducible of
//! degree `m` (coefficients compared constant-term first) and the
//! primitive element is the smallest index of full multiplicative order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Largest field size `field_construct` accepts by default.
pub const DEFAULT_FIELD_CAP: u64 = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct FiniteField {
    pub p: u64,
    pub m: u32,
    /// Monic modulus, constant term first, length `m + 1`.
    pub modulus: Vec<u64>,
    pub size: u64,
    pub primitive: u64,
    #[serde(skip)]
    exp: Vec<u32>,
    #[serde(skip)]
    log: Vec<u32>,
}

fn digits(index: u64, p: u64, m: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    let mut x = index;
    for _ in 0..m {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1 ..= deg/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn construct(p: u64, m: u32) -> Result<Self> {
        Self::construct_with_cap(p, m, DEFAULT_FIELD_CAP)
    }

    pub fn construct_with_cap(p: u64, m: u32, cap: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("field characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::domain("field degree must be at least 1"));
        }
        let size = p
            .checked_pow(m)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::resource(format!("GF({p}^{m}) exceeds the field cap {cap}")))?;

        // Lexicographic order with the constant term most significant:
        // enumerate c_0 slowest.
        let modulus = (0..size)
            .map(|code| {
                let mut big_endian = digits(code, p, m);
                big_endian.reverse();
                big_endian.push(1);
                big_endian
            })
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {m} over GF({p})")))?;

        let mut field = FiniteField { p, m, modulus, size, primitive: 0, exp: vec![], log: vec![] };
        let q1 = size - 1;
        let primitive = (1..size)
            .find(|&g| field.poly_order(g) == q1)
            .ok_or_else(|| Error::Internal("multiplicative group is not cyclic".into()))?;
        field.primitive = primitive;

        let mut exp = Vec::with_capacity(q1 as usize);
        let mut log = vec![0u32; size as usize];
        let mut x = 1u64;
        for e in 0..q1 {
            exp.push(x as u32);
            log[x as usize] = e as u32;
            x = field.poly_mul_index(x, primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn poly_mul_index(&self, a: u64, b: u64) -> u64 {
        let prod = poly_mul(&digits(a, self.p, self.m), &digits(b, self.p, self.m), self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m as usize, 0);
        undigits(&r, self.p)
    }

    fn poly_order(&self, g: u64) -> u64 {
        let mut x = g;
        let mut e = 1;
        while x != 1 {
            x = self.poly_mul_index(x, g);
            e += 1;
            if e > self.size {
                return 0;
            }
        }
        e
    }

    fn check(&self, a: u64) -> Result<()> {
        if a >= self.size {
            return Err(Error::domain(format!("element index {a} outside GF({})", self.size)));
        }
        Ok(())
    }

    pub fn add(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn mul(&self, a: u64, b: u64) -> Result<u64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn mul_unchecked(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let q1 = self.size - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % q1;
        self.exp[e as usize] as u64
    }

    /// `primitive^e`.
    pub fn primitive_pow(&self, e: u64) -> u64 {
        self.exp[(e % (self.size - 1)) as usize] as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        let coeffs: Vec<u64> = digits(a, self.p, self.m).iter().map(|&c| (self.p - c) % self.p).collect();
        undigits(&coeffs, self.p)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        let q1 = self.size - 1;
        Ok(self.exp[((q1 - self.log[a as usize] as u64) % q1) as usize] as u64)
    }

    /// Index of the basis monomial `x^i`.
    pub fn basis(&self, i: u32) -> u64 {
        self.p.pow(i)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Result<u64> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        let q1 = self.size - 1;
        let l = self.log[a as usize] as u64;
        Ok(q1 / num_integer::gcd(q1, l))
    }
}

/// Convenience wrapper matching the module's public operation name.
pub fn field_construct(p: u64, m: u32) -> Result<FiniteField> {
    FiniteField::construct(p, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f3 = field_construct(3, 1).unwrap();
        assert_eq!(f3.modulus, vec![0, 1]);
        assert_eq!(f3.primitive, 2);
        let f2 = field_construct(2, 1).unwrap();
        assert_eq!(f2.primitive, 1);
    }

    #[test]
    fn gf9_modulus_and_primitive() {
        let f = field_construct(3, 2).unwrap();
        // x^2 + 1 is the first monic quadratic with nonzero constant and no root
        assert_eq!(f.modulus, vec![1, 0, 1]);
        assert!(is_irreducible(&f.modulus, 3));
        // x has order 4, 1 + x has order 8
        assert_eq!(f.primitive, 4);
        let mut x = 1;
        for _ in 0..4 {
            x = f.mul(x, f.primitive).unwrap();
        }
        assert_ne!(x, 1);
        for _ in 0..4 {
            x = f.mul(x, f.primitive).unwrap();
        }
        assert_eq!(x, 1);
    }

    #[test]
    fn gf4_and_gf8() {
        let f4 = field_construct(2, 2).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        let f8 = field_construct(2, 3).unwrap();
        assert_eq!(f8.modulus, vec![1, 0, 1, 1]);
    }

    #[test]
    fn identities_and_range() {
        let f = field_construct(5, 2).unwrap();
        for a in 0..f.size {
            assert_eq!(f.add(a, 0).unwrap(), a);
            assert_eq!(f.mul(a, 0).unwrap(), 0);
            assert_eq!(f.mul(a, 1).unwrap(), a);
        }
        assert!(matches!(f.add(25, 0), Err(Error::Domain(_))));
        assert!(matches!(f.mul(0, 30), Err(Error::Domain(_))));
    }

    #[test]
    fn field_cap_enforced() {
        assert!(matches!(field_construct(2, 14), Err(Error::Resource(_))));
        assert!(matches!(field_construct(4, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn table_mul_matches_polynomial_mul() {
        for (p, m) in [(2, 4), (3, 3), (7, 2), (5, 1)] {
            let f = field_construct(p, m).unwrap();
            for a in 0..f.size {
                for b in 0..f.size {
                    assert_eq!(f.mul_unchecked(a, b), f.poly_mul_index(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (3, 4)] {
            let f = field_construct(p, m).unwrap();
            assert!(f.size <= 81);
            for a in 0..f.size {
                assert_eq!(f.add(a, f.neg(a)).unwrap(), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), 1);
                }
                for b in 0..f.size {
                    assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                    assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                    for c in 0..f.size {
                        let ab = f.add(a, b).unwrap();
                        assert_eq!(f.add(ab, c).unwrap(), f.add(a, f.add(b, c).unwrap()).unwrap());
                        let mab = f.mul(a, b).unwrap();
                        assert_eq!(f.mul(mab, c).unwrap(), f.mul(a, f.mul(b, c).unwrap()).unwrap());
                        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let rhs = f.add(mab, f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_powers_cover_units() {
        for (p, m) in [(2, 2), (3, 2), (2, 5), (11, 2), (3, 5)] {
            let f = field_construct(p, m).unwrap();
            let mut seen = vec![false; f.size as usize];
            let mut x = 1;
            for _ in 0..f.size - 1 {
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
                x = f.mul(x, f.primitive).unwrap();
            }
            assert_eq!(x, 1);
            assert!(!seen[0] && seen[1..].iter().all(|&s| s));
            assert_eq!(f.order(f.primitive).unwrap(), f.size - 1);
        }
    }

    #[test]
    fn primitive_is_smallest_generator() {
        let f = field_construct(3, 2).unwrap();
        for a in 1..f.primitive {
            assert!(f.order(a).unwrap() < 8);
        }
    }
}
