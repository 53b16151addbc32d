//! Named groups and the certified construction of a solvable group with no
//! subgroup of a prescribed order `d`.
//!
//! For `d = p₁^{n₁} p₂^{n₂}` pick an orientation with `a = ord_{p₂^{n₂}}(p₁)`
//! not dividing `n₁`, let `r` be least with `ra > n₁`, and take the subgroup
//! `C_{p₁}^{ra} ⋊ C_{p₂^{n₂}}` of `AGL(1, p₁^{ra})`. A subgroup of order `d`
//! there would be Frobenius with kernel of order `p₁^{n₁}` and complement of
//! order `p₂^{n₂}`, forcing `p₂^{n₂} | p₁^{n₁} − 1`, i.e. `a | n₁`.
//! With three or more primes, strip the largest prime power and take a
//! direct product with the cyclic group of that order.
//!
//! In `g_pqn` the order-`q` multipliers act irreducibly on `C_p²`: they
//! act without fixed points, and an invariant line would make `q | p − 1`,
//! which `q | p + 1` with `q` odd rules out.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitefield::FiniteField;
use crate::numtheory::{factorize, is_prime, mult_order, pow_mod, Factorization};
use crate::permgroup::{cyclic_group, direct_product, PermGroup, Permutation, Subgroup, DEFAULT_ELEMENT_CAP};
use crate::rational::{biguint_pow, biguint_string};
use crate::spectrum::{self, OracleConfig};

fn affine_translations(field: &FiniteField, degree: usize) -> Vec<Permutation> {
    (0..field.m)
        .map(|i| {
            let b = field.basis(i);
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for x in 0..field.size {
                images[x as usize] = field.add_unchecked(x, b) as u32;
            }
            Permutation::from_images(images).expect("translation is a bijection")
        })
        .collect()
}

fn affine_multiplier(field: &FiniteField, c: u64) -> Permutation {
    let images = (0..field.size).map(|x| field.mul_unchecked(c, x) as u32).collect();
    Permutation::from_images(images).expect("multiplication by a unit is a bijection")
}

fn check_order(order: Option<u64>) -> Result<u64> {
    order.filter(|&o| o <= DEFAULT_ELEMENT_CAP as u64).ok_or_else(|| {
        Error::resource(format!("construction exceeds the element cap of {DEFAULT_ELEMENT_CAP}"))
    })
}

/// `AGL(1, p^m)` acting on the field elements.
pub fn agl1(p: u64, m: u32) -> Result<PermGroup> {
    let field = FiniteField::construct(p, m)?;
    check_order(field.size.checked_mul(field.size - 1))?;
    let mut gens = affine_translations(&field, field.size as usize);
    gens.push(affine_multiplier(&field, field.primitive));
    PermGroup::generate(field.size as usize, gens)
}

/// `C_p^m ⋊ C_h` inside `AGL(1, p^m)`: translations plus multiplication by
/// an element of order `h`.
pub fn frobenius_subgroup(p: u64, m: u32, h: u64) -> Result<PermGroup> {
    let field = FiniteField::construct(p, m)?;
    let q1 = field.size - 1;
    if h == 0 || q1 % h != 0 {
        return Err(Error::domain(format!("{h} does not divide {p}^{m} - 1 = {q1}")));
    }
    check_order(field.size.checked_mul(h))?;
    let mut gens = affine_translations(&field, field.size as usize);
    if h > 1 {
        gens.push(affine_multiplier(&field, field.primitive_pow(q1 / h)));
    }
    PermGroup::generate(field.size as usize, gens)
}

/// The translation subgroup of order `p^m`, acting on the first `p^m`
/// points of `g`.
pub fn translation_subgroup(g: &PermGroup, p: u64, m: u32) -> Result<Subgroup> {
    let field = FiniteField::construct(p, m)?;
    if (field.size as usize) > g.degree() {
        return Err(Error::domain("group has fewer points than the field"));
    }
    g.subgroup_generated_by(&affine_translations(&field, g.degree()))
}

fn check_pq(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if q % 2 == 0 || !is_prime(q) {
        return Err(Error::domain(format!("{q} is not an odd prime")));
    }
    if q == p {
        return Err(Error::domain("p and q must differ"));
    }
    if (p + 1) % q != 0 {
        return Err(Error::domain(format!("{q} does not divide {p} + 1")));
    }
    Ok(())
}

/// `(C_p² ⋊ C_q) × C_q^n` with `q` odd and `q | p + 1`.
pub fn g_pqn(p: u64, q: u64, n: u32) -> Result<PermGroup> {
    check_pq(p, q)?;
    let order = q.checked_pow(n + 1).and_then(|x| x.checked_mul(p * p));
    check_order(order)?;
    let mut g = frobenius_subgroup(p, 2, q)?;
    let cq = cyclic_group(q as usize)?;
    for _ in 0..n {
        g = direct_product(&g, &cq)?;
    }
    Ok(g)
}

pub fn g_pqn_description(p: u64, q: u64, n: u32) -> String {
    let core = format!("(C_{p}^2 ⋊ C_{q})");
    match n {
        0 => core,
        1 => format!("{core} × C_{q}"),
        _ => format!("{core} × C_{q}^{n}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStep {
    Case1 {
        p1: u64,
        n1: u32,
        p2: u64,
        n2: u32,
        /// multiplicative order of `p1` modulo `p2^n2`
        a: u64,
        r: u64,
        #[serde(with = "biguint_string")]
        constructed_order: BigUint,
    },
    Case2 {
        stripped_prime: u64,
        stripped_exponent: u32,
        stripped_prime_power: u64,
        /// `d / stripped_prime_power`, handled by the next step
        reduced_d: u64,
    },
}

impl TraceStep {
    /// Arithmetic invariants of a case-1 step; case-2 steps have none of
    /// their own.
    pub fn violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        if let TraceStep::Case1 { p1, n1, p2, n2, a, r, constructed_order } = self {
            let (n1, a, r) = (*n1 as u64, *a, *r);
            let modulus = p2.pow(*n2);
            match mult_order(*p1, modulus) {
                Ok(order) if order == a => {}
                _ => bad.push(format!("a = {a} is not the order of {p1} mod {modulus}")),
            }
            if a == 0 || n1 % a == 0 {
                bad.push(format!("a = {a} divides n1 = {n1}"));
            }
            if !((r - 1) * a < n1 && n1 < r * a) {
                bad.push(format!("(r-1)a < n1 < ra fails for r = {r}, a = {a}, n1 = {n1}"));
            }
            if pow_mod(*p1, r * a, modulus) != 1 {
                bad.push(format!("{modulus} does not divide {p1}^{} - 1", r * a));
            }
            if *constructed_order != biguint_pow(*p1, r * a) * BigUint::from(modulus) {
                bad.push("constructed order is not p1^(ra) p2^n2".into());
            }
        }
        bad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    OracleVerified,
    CertificateOnly,
    /// The oracle found a subgroup of order `d`; never expected.
    Refuted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// The order `p1^{ra} p2^{n2}` subgroup of the affine group.
    Minimal,
    /// The whole `AGL(1, p1^{ra})`.
    FullAgl,
}

#[derive(Debug, Clone, Copy)]
pub struct ConstructOptions {
    pub verify: bool,
    pub variant: Variant,
    pub oracle: OracleConfig,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { verify: true, variant: Variant::Minimal, oracle: OracleConfig::default() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionCert {
    pub d: Factorization,
    pub variant: Variant,
    pub description: String,
    #[serde(with = "biguint_string")]
    pub order: BigUint,
    pub trace: Vec<TraceStep>,
    pub verified: Verification,
    /// `Some(true)` when the oracle ran and `d` is not a subgroup order.
    pub missing_order_confirmed: Option<bool>,
    /// Degree and 1-based generator images, when the group was built.
    pub degree: Option<usize>,
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_reference: Option<String>,
    #[serde(skip)]
    pub group: Option<PermGroup>,
}

impl ConstructionCert {
    /// Every failed arithmetic check: `d | |G|`, `π(G) = π(d)` and the
    /// trace-step invariants.
    pub fn violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let d = BigUint::from(self.d.value);
        if !(&self.order % &d).is_zero() {
            bad.push(format!("{} does not divide |G| = {}", self.d.value, self.order));
        }
        let mut rest = self.order.clone();
        for p in self.d.primes() {
            let p = BigUint::from(p);
            while (&rest % &p).is_zero() {
                rest /= &p;
            }
        }
        if !rest.is_one() {
            bad.push(format!("|G| = {} has a prime outside π(d)", self.order));
        }
        for step in &self.trace {
            bad.extend(step.violations());
        }
        bad
    }
}

/// Internal recipe produced by the recursion.
enum Plan {
    Affine { p: u64, m: u32, h: u64 },
    Product { inner: Box<Plan>, cyclic: u64 },
}

impl Plan {
    fn order(&self, variant: Variant) -> BigUint {
        match self {
            Plan::Affine { p, m, h } => {
                let q = biguint_pow(*p, *m as u64);
                match variant {
                    Variant::Minimal => q * BigUint::from(*h),
                    Variant::FullAgl => &q * (&q - BigUint::one()),
                }
            }
            Plan::Product { inner, cyclic } => inner.order(variant) * BigUint::from(*cyclic),
        }
    }

    fn describe(&self, variant: Variant) -> String {
        match self {
            Plan::Affine { p, m, h } => {
                let q = p.checked_pow(*m).map_or(format!("{p}^{m}"), |q| q.to_string());
                match variant {
                    Variant::FullAgl => format!("AGL(1,{q})"),
                    Variant::Minimal => {
                        let kernel = if *m == 1 { format!("C_{p}") } else { format!("C_{p}^{m}") };
                        if *h == 1 {
                            kernel
                        } else {
                            format!("{kernel} ⋊ C_{h}")
                        }
                    }
                }
            }
            Plan::Product { inner, cyclic } => {
                let inner_text = inner.describe(variant);
                let inner_text = match **inner {
                    Plan::Affine { h, .. } if variant == Variant::Minimal && h > 1 => format!("({inner_text})"),
                    _ => inner_text,
                };
                format!("{inner_text} × C_{cyclic}")
            }
        }
    }

    fn build(&self, variant: Variant) -> Result<PermGroup> {
        match self {
            Plan::Affine { p, m, h } => match variant {
                Variant::Minimal => frobenius_subgroup(*p, *m, *h),
                Variant::FullAgl => agl1(*p, *m),
            },
            Plan::Product { inner, cyclic } => {
                direct_product(&inner.build(variant)?, &cyclic_group(*cyclic as usize)?)
            }
        }
    }
}

fn plan(d: &Factorization, trace: &mut Vec<TraceStep>) -> Result<Plan> {
    match d.k() {
        0 | 1 => Err(Error::domain(format!("{} is a prime power", d.value))),
        2 => {
            let mut best: Option<(BigUint, u64, TraceStep)> = None;
            for (i, j) in [(0, 1), (1, 0)] {
                let (p1, n1) = d.parts[i];
                let (p2, n2) = d.parts[j];
                let a = mult_order(p1, p2.pow(n2))?;
                if n1 as u64 % a == 0 {
                    continue;
                }
                let r = n1 as u64 / a + 1;
                let order = biguint_pow(p1, r * a) * BigUint::from(p2.pow(n2));
                let better = match &best {
                    None => true,
                    Some((o, bp1, _)) => order < *o || (order == *o && p1 < *bp1),
                };
                if better {
                    let step = TraceStep::Case1 { p1, n1, p2, n2, a, r, constructed_order: order.clone() };
                    best = Some((order, p1, step));
                }
            }
            let (_, _, step) = best.ok_or_else(|| {
                Error::Internal(format!("no orientation of {} has a not dividing n1", d.value))
            })?;
            let TraceStep::Case1 { p1, p2, n2, a, r, .. } = step else { unreachable!() };
            let m = u32::try_from(r * a).map_err(|_| Error::resource("field degree overflow"))?;
            trace.push(step);
            Ok(Plan::Affine { p: p1, m, h: p2.pow(n2) })
        }
        k => {
            let (p, e) = d.parts[k - 1];
            let stripped = p.pow(e);
            let reduced = Factorization { value: d.value / stripped, parts: d.parts[..k - 1].to_vec() };
            trace.push(TraceStep::Case2 {
                stripped_prime: p,
                stripped_exponent: e,
                stripped_prime_power: stripped,
                reduced_d: reduced.value,
            });
            let inner = plan(&reduced, trace)?;
            Ok(Plan::Product { inner: Box::new(inner), cyclic: stripped })
        }
    }
}

pub fn theorem1_construct(d: u64) -> Result<ConstructionCert> {
    theorem1_construct_with(d, &ConstructOptions::default())
}

pub fn theorem1_construct_with(d: u64, opts: &ConstructOptions) -> Result<ConstructionCert> {
    if d < 2 {
        return Err(Error::domain(format!("d = {d} must be at least 2")));
    }
    let f = factorize(d)?;
    if f.is_prime_power() {
        return Err(Error::domain(format!("{d} is a prime power; every group of order divisible by it has such a subgroup")));
    }
    let mut trace = Vec::new();
    let recipe = plan(&f, &mut trace)?;
    let variant = opts.variant;
    let order = recipe.order(variant);
    let description = recipe.describe(variant);

    let buildable = order.to_u64().is_some_and(|o| o <= opts.oracle.cap);
    let group = if buildable { Some(recipe.build(variant)?) } else { None };

    let mut cert = ConstructionCert {
        d: f,
        variant,
        cross_reference: (description == "AGL(1,9) × C_5").then(|| "SmallGroup(360,123)".to_string()),
        description,
        order,
        trace,
        verified: Verification::CertificateOnly,
        missing_order_confirmed: None,
        degree: group.as_ref().map(|g| g.degree()),
        generators: group.as_ref().map(|g| g.generators().iter().map(|s| s.one_based()).collect()),
        group,
    };
    let bad = cert.violations();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("certificate for {d} fails: {}", bad.join("; "))));
    }
    if let (true, Some(g)) = (opts.verify, &cert.group) {
        if g.order() != cert.order.to_u64().unwrap_or(0) {
            return Err(Error::Internal("built group has the wrong order".into()));
        }
        let report = spectrum::spectrum_with(g, &opts.oracle)?;
        let missing = !report.realized_orders.contains(&d);
        cert.missing_order_confirmed = Some(missing);
        cert.verified = if missing { Verification::OracleVerified } else { Verification::Refuted };
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_group_orders() {
        assert_eq!(agl1(2, 1).unwrap().order(), 2);
        assert_eq!(agl1(2, 2).unwrap().order(), 12);
        assert_eq!(agl1(3, 2).unwrap().order(), 72);
        assert_eq!(agl1(5, 1).unwrap().order(), 20);
    }

    #[test]
    fn frobenius_subgroup_orders() {
        assert_eq!(frobenius_subgroup(3, 2, 1).unwrap().order(), 9);
        assert!(frobenius_subgroup(3, 2, 1).unwrap().is_abelian());
        assert_eq!(frobenius_subgroup(3, 2, 4).unwrap().order(), 36);
        assert_eq!(frobenius_subgroup(2, 2, 3).unwrap().order(), 12);
        assert!(matches!(frobenius_subgroup(3, 2, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn g_pqn_orders_and_guards() {
        assert_eq!(g_pqn(2, 3, 0).unwrap().order(), 12);
        assert_eq!(g_pqn(2, 3, 1).unwrap().order(), 36);
        assert_eq!(g_pqn(5, 3, 0).unwrap().order(), 75);
        assert!(matches!(g_pqn(3, 5, 0), Err(Error::Domain(_))));
        assert!(matches!(g_pqn(3, 2, 0), Err(Error::Domain(_))));
        assert!(matches!(g_pqn(4, 5, 0), Err(Error::Domain(_))));
        assert_eq!(g_pqn_description(2, 3, 0), "(C_2^2 ⋊ C_3)");
        assert_eq!(g_pqn_description(2, 3, 2), "(C_2^2 ⋊ C_3) × C_3^2");
    }

    #[test]
    fn construct_six_is_a4() {
        let cert = theorem1_construct(6).unwrap();
        assert_eq!(cert.order, BigUint::from(12u32));
        assert_eq!(
            cert.trace,
            vec![TraceStep::Case1 { p1: 2, n1: 1, p2: 3, n2: 1, a: 2, r: 1, constructed_order: 12u32.into() }]
        );
        assert_eq!(cert.verified, Verification::OracleVerified);
        assert_eq!(cert.description, "C_2^2 ⋊ C_3");
    }

    #[test]
    fn construct_twelve() {
        let cert = theorem1_construct(12).unwrap();
        assert_eq!(cert.order, BigUint::from(36u32));
        assert_eq!(
            cert.trace,
            vec![TraceStep::Case1 { p1: 3, n1: 1, p2: 2, n2: 2, a: 2, r: 1, constructed_order: 36u32.into() }]
        );
        assert_eq!(cert.missing_order_confirmed, Some(true));
    }

    #[test]
    fn construct_sixty_strips_five() {
        let cert = theorem1_construct(60).unwrap();
        assert_eq!(cert.order, BigUint::from(180u32));
        assert_eq!(cert.description, "(C_3^2 ⋊ C_4) × C_5");
        assert!(matches!(cert.trace[0], TraceStep::Case2 { stripped_prime_power: 5, reduced_d: 12, .. }));
        assert_eq!(cert.verified, Verification::OracleVerified);
    }

    #[test]
    fn guards() {
        for d in [0, 1, 2, 4, 8, 49, 125] {
            assert!(matches!(theorem1_construct(d), Err(Error::Domain(_))), "d = {d}");
        }
        let msg = theorem1_construct(8).unwrap_err().to_string();
        assert!(msg.contains("8 is a prime power"));
    }

    #[test]
    fn large_witness_is_certificate_only() {
        // 2 * 97: ord_97(2) = 48, far beyond the oracle
        let cert = theorem1_construct(194).unwrap();
        assert_eq!(cert.verified, Verification::CertificateOnly);
        assert!(cert.group.is_none());
        assert!(cert.violations().is_empty());
    }

    #[test]
    fn tampered_trace_is_flagged() {
        let step = TraceStep::Case1 { p1: 3, n1: 2, p2: 2, n2: 2, a: 2, r: 2, constructed_order: 324u32.into() };
        assert!(!step.violations().is_empty());
    }

    #[test]
    fn cert_json_roundtrip() {
        let cert = theorem1_construct(60).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: ConstructionCert = serde_json::from_str(&text).unwrap();
        assert_eq!(back.trace, cert.trace);
        assert_eq!(back.order, cert.order);
        assert_eq!(back.generators, cert.generators);
        assert_eq!(back.verified, cert.verified);
    }
}
