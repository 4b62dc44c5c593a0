//! Extended supernatural numbers: the divisibility lattice indexing every
//! linear group topology the engine works with.
//!
//! A value is either a supernatural number `∏ p^e_p` with `e_p ∈ ℕ ∪ {∞}`
//! and finite support, or the distinguished top element `Omega` which
//! encodes the discrete topology ("the neighborhood {e}").

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Prime = u64;

/// Exponent of a prime in a supernatural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn max(self, other: Exponent) -> Exponent {
        std::cmp::max(self, other)
    }

    fn min(self, other: Exponent) -> Exponent {
        std::cmp::min(self, other)
    }

    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => Exponent::Finite(a + b),
            _ => Exponent::Infinite,
        }
    }
}

/// An extended supernatural number.
///
/// Canonical form: zero exponents never appear in the map and `Omega`
/// carries no exponent data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtModulus {
    Supernatural(BTreeMap<Prime, Exponent>),
    Omega,
}

impl ExtModulus {
    pub fn one() -> Self {
        ExtModulus::Supernatural(BTreeMap::new())
    }

    pub fn from_exponents<I: IntoIterator<Item = (Prime, Exponent)>>(iter: I) -> Self {
        let map: BTreeMap<Prime, Exponent> = iter
            .into_iter()
            .filter(|(_, e)| *e != Exponent::Finite(0))
            .collect();
        ExtModulus::Supernatural(map)
    }

    /// Embeds a positive integer by trial-division factorization.
    pub fn from_integer(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("0 is not a modulus; use Omega".into()));
        }
        let mut n = n;
        let mut map = BTreeMap::new();
        let mut p: u64 = 2;
        while p * p <= n {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                map.insert(p, Exponent::Finite(e));
            }
            p += 1;
        }
        if n > 1 {
            map.insert(n, Exponent::Finite(1));
        }
        Ok(ExtModulus::Supernatural(map))
    }

    /// Single prime power with infinite exponent, e.g. the p-adic modulus.
    pub fn prime_power_inf(p: Prime) -> Self {
        ExtModulus::Supernatural([(p, Exponent::Infinite)].into_iter().collect())
    }

    pub fn exponent(&self, p: Prime) -> Exponent {
        match self {
            ExtModulus::Omega => Exponent::Infinite,
            ExtModulus::Supernatural(map) => {
                map.get(&p).copied().unwrap_or(Exponent::Finite(0))
            }
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, ExtModulus::Omega)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, ExtModulus::Supernatural(m) if m.is_empty())
    }

    /// True when some exponent is infinite (or the value is Omega).
    pub fn is_infinite(&self) -> bool {
        match self {
            ExtModulus::Omega => true,
            ExtModulus::Supernatural(map) => {
                map.values().any(|e| *e == Exponent::Infinite)
            }
        }
    }

    /// Every prime with a nonzero exponent lies in `primes`.
    pub fn supported_by(&self, primes: &[Prime]) -> bool {
        match self {
            ExtModulus::Omega => true,
            ExtModulus::Supernatural(map) => map.keys().all(|p| primes.contains(p)),
        }
    }

    /// Extended divisibility: componentwise exponent comparison; everything
    /// divides Omega, Omega divides only Omega.
    pub fn divides(&self, other: &ExtModulus) -> bool {
        match (self, other) {
            (_, ExtModulus::Omega) => true,
            (ExtModulus::Omega, _) => false,
            (ExtModulus::Supernatural(a), ExtModulus::Supernatural(_)) => a
                .iter()
                .all(|(p, e)| *e <= other.exponent(*p)),
        }
    }

    /// Componentwise max of exponents; Omega absorbs.
    pub fn lcm(&self, other: &ExtModulus) -> ExtModulus {
        match (self, other) {
            (ExtModulus::Omega, _) | (_, ExtModulus::Omega) => ExtModulus::Omega,
            (ExtModulus::Supernatural(a), ExtModulus::Supernatural(b)) => {
                let primes: std::collections::BTreeSet<Prime> =
                    a.keys().chain(b.keys()).copied().collect();
                ExtModulus::from_exponents(
                    primes
                        .into_iter()
                        .map(|p| (p, self.exponent(p).max(other.exponent(p)))),
                )
            }
        }
    }

    /// Componentwise min of exponents; gcd with Omega is the other argument.
    pub fn gcd(&self, other: &ExtModulus) -> ExtModulus {
        match (self, other) {
            (ExtModulus::Omega, x) => x.clone(),
            (x, ExtModulus::Omega) => x.clone(),
            (ExtModulus::Supernatural(a), ExtModulus::Supernatural(_)) => {
                ExtModulus::from_exponents(
                    a.keys()
                        .map(|p| (*p, self.exponent(*p).min(other.exponent(*p)))),
                )
            }
        }
    }

    /// Product in the extended sense: exponents add, Omega absorbs.
    pub fn mul(&self, other: &ExtModulus) -> ExtModulus {
        match (self, other) {
            (ExtModulus::Omega, _) | (_, ExtModulus::Omega) => ExtModulus::Omega,
            (ExtModulus::Supernatural(a), ExtModulus::Supernatural(b)) => {
                let primes: std::collections::BTreeSet<Prime> =
                    a.keys().chain(b.keys()).copied().collect();
                ExtModulus::from_exponents(
                    primes
                        .into_iter()
                        .map(|p| (p, self.exponent(p).add(other.exponent(p)))),
                )
            }
        }
    }

    /// All integers `∏ p^{e_p}` with `e_p ≤ min(exponent(p), cap)`.
    /// For Omega the list runs over the full prime set with the same cap
    /// (the discrete zero-constraint marker is the caller's business).
    /// Sorted ascending, duplicate-free.
    pub fn finite_divisors(&self, primes: &[Prime], cap: u32) -> Vec<u64> {
        let support: Vec<(Prime, u32)> = match self {
            ExtModulus::Omega => primes.iter().map(|p| (*p, cap)).collect(),
            ExtModulus::Supernatural(map) => map
                .iter()
                .map(|(p, e)| {
                    let bound = match e {
                        Exponent::Finite(k) => (*k).min(cap),
                        Exponent::Infinite => cap,
                    };
                    (*p, bound)
                })
                .collect(),
        };
        let mut out: Vec<u64> = vec![1];
        for (p, bound) in support {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for d in &out {
                let mut v = *d;
                next.push(v);
                for _ in 0..bound {
                    v = match v.checked_mul(p) {
                        Some(v) => v,
                        None => break,
                    };
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The canonical finite divisor at depth `k`: each supported prime capped
    /// at exponent `k`. Returns 0 for Omega — the forced-zero constraint.
    pub fn canonical_divisor(&self, primes: &[Prime], depth: u32) -> u64 {
        match self {
            ExtModulus::Omega => 0,
            ExtModulus::Supernatural(map) => {
                let _ = primes;
                let mut v: u64 = 1;
                for (p, e) in map {
                    let k = match e {
                        Exponent::Finite(k) => (*k).min(depth),
                        Exponent::Infinite => depth,
                    };
                    v = v.saturating_mul(p.pow(k));
                }
                v
            }
        }
    }
}

/// Every ExtModulus with support in `primes` and exponents in
/// `{0,…,cap,∞}`, plus Omega last when requested. Deterministic order.
pub fn enumerate_moduli(primes: &[Prime], cap: u32, include_omega: bool) -> Vec<ExtModulus> {
    let mut exps: Vec<Exponent> = (0..=cap).map(Exponent::Finite).collect();
    exps.push(Exponent::Infinite);
    let mut out = vec![ExtModulus::one()];
    let mut sorted_primes = primes.to_vec();
    sorted_primes.sort_unstable();
    for p in sorted_primes {
        let mut next = Vec::with_capacity(out.len() * exps.len());
        for m in &out {
            for e in &exps {
                match (m, e) {
                    (ExtModulus::Supernatural(map), _) => {
                        let mut map = map.clone();
                        if *e != Exponent::Finite(0) {
                            map.insert(p, *e);
                        }
                        next.push(ExtModulus::Supernatural(map));
                    }
                    (ExtModulus::Omega, _) => unreachable!(),
                }
            }
        }
        out = next;
    }
    out.dedup();
    if include_omega {
        out.push(ExtModulus::Omega);
    }
    out
}

impl fmt::Display for ExtModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtModulus::Omega => write!(f, "Omega"),
            ExtModulus::Supernatural(map) if map.is_empty() => write!(f, "1"),
            ExtModulus::Supernatural(map) => {
                let parts: Vec<String> = map
                    .iter()
                    .map(|(p, e)| match e {
                        Exponent::Finite(1) => format!("{p}"),
                        Exponent::Finite(k) => format!("{p}^{k}"),
                        Exponent::Infinite => format!("{p}^inf"),
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl FromStr for ExtModulus {
    type Err = Error;

    /// Grammar: `Omega`, `1`, `12`, `2^3`, `2^inf*3^2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Omega" {
            return Ok(ExtModulus::Omega);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty modulus".into()));
        }
        let mut acc = ExtModulus::one();
        for part in s.split('*') {
            let part = part.trim();
            let factor = match part.split_once('^') {
                None => {
                    let n: u64 = part
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer literal `{part}`")))?;
                    ExtModulus::from_integer(n)?
                }
                Some((base, exp)) => {
                    let p: u64 = base
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad prime `{base}`")))?;
                    if p < 2 || !is_prime(p) {
                        return Err(Error::Parse(format!("`{p}` is not prime")));
                    }
                    let e = match exp.trim() {
                        "inf" => Exponent::Infinite,
                        k => Exponent::Finite(
                            k.parse()
                                .map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?,
                        ),
                    };
                    ExtModulus::from_exponents([(p, e)])
                }
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ExtModulus {
        s.parse().unwrap()
    }

    #[test]
    fn divides_examples() {
        assert!(m("12").divides(&m("2^2*3^inf")));
        assert!(m("2^inf").divides(&ExtModulus::Omega));
        assert!(!ExtModulus::Omega.divides(&m("2^inf")));
        assert!(!m("2^3*5").divides(&m("2^2*3^inf")));
    }

    #[test]
    fn lcm_gcd_examples() {
        assert_eq!(m("2^inf*3").lcm(&m("2^2*3^2*5")), m("2^inf*3^2*5"));
        assert_eq!(ExtModulus::Omega.gcd(&m("2^inf")), m("2^inf"));
        assert_eq!(m("2^3*3").gcd(&m("2*5")), m("2"));
    }

    #[test]
    fn finite_divisor_examples() {
        assert_eq!(m("2^inf").finite_divisors(&[2], 3), vec![1, 2, 4, 8]);
        assert_eq!(m("6").finite_divisors(&[2, 3], 3), vec![1, 2, 3, 6]);
        assert_eq!(m("1").finite_divisors(&[2, 3], 5), vec![1]);
        // Omega runs over the full prime set.
        assert_eq!(ExtModulus::Omega.finite_divisors(&[2], 2), vec![1, 2, 4]);
    }

    #[test]
    fn enumerate_examples() {
        let got = enumerate_moduli(&[2], 1, true);
        assert_eq!(got, vec![m("1"), m("2"), m("2^inf"), ExtModulus::Omega]);
        assert_eq!(enumerate_moduli(&[], 0, true), vec![m("1"), ExtModulus::Omega]);
        assert_eq!(enumerate_moduli(&[2, 3], 0, false).len(), 4);
    }

    #[test]
    fn display_round_trip() {
        for s in ["Omega", "1", "2^3", "2^inf*3^2", "2*5^inf", "7"] {
            let v = m(s);
            assert_eq!(m(&v.to_string()), v, "round trip of {s}");
        }
        // Integer literals normalize to factored form but parse back equal.
        assert_eq!(m("12").to_string(), "2^2*3");
        assert_eq!(m(&m("12").to_string()), m("12"));
    }

    #[test]
    fn order_agreement_exhaustive() {
        let all = enumerate_moduli(&[2, 3], 2, true);
        for a in &all {
            for b in &all {
                let div = a.divides(b);
                assert_eq!(div, &a.lcm(b) == b, "lcm order agreement {a} {b}");
                assert_eq!(div, &a.gcd(b) == a, "gcd order agreement {a} {b}");
            }
        }
    }

    #[test]
    fn lattice_laws_exhaustive() {
        let all = enumerate_moduli(&[2, 3], 1, true);
        for a in &all {
            for b in &all {
                assert_eq!(a.lcm(b), b.lcm(a));
                assert_eq!(a.gcd(b), b.gcd(a));
                assert_eq!(a.gcd(&a.lcm(b)), *a, "absorption {a} {b}");
                assert_eq!(a.lcm(&a.gcd(b)), *a, "absorption dual {a} {b}");
                for c in &all {
                    assert_eq!(a.lcm(&b.lcm(c)), a.lcm(b).lcm(c));
                    assert_eq!(a.gcd(&b.gcd(c)), a.gcd(b).gcd(c));
                }
            }
        }
    }

    #[test]
    fn divisor_correctness() {
        let all = enumerate_moduli(&[2, 3], 2, true);
        for n in &all {
            for d in n.finite_divisors(&[2, 3], 2) {
                let emb = ExtModulus::from_integer(d).unwrap();
                assert!(emb.divides(n), "{d} should divide {n}");
            }
        }
    }
}
