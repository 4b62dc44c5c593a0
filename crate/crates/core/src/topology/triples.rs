//! Compatible topology triples (sigma, tau, nu) for a biadditive map
//! w: E x F -> A in the adic family: sigma and tau are coordinatewise adic
//! data on the free modules E and F, nu a single modulus on A (rank-1 A).
//!
//! Compatibility means joint continuity of w at every point. For tensor
//! maps over Z with adic data this reduces to a divisibility rule:
//! continuity at a point (x0, y0) demands w(x0, t v) and w(s u, y0) shrink
//! into every nu-neighborhood, which forces nu | sigma_i and nu | tau_i in
//! every coordinate; conversely those divisibilities make all three
//! increment terms land in the target congruence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adic::{enumerate_moduli, ExtModulus};
use crate::config::SearchConfig;
use crate::error::{Error, Result};
use crate::heisenberg::BiadditiveMap;
use crate::report::VerdictReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologyTriple {
    pub sigma: Vec<ExtModulus>,
    pub tau: Vec<ExtModulus>,
    pub nu: ExtModulus,
}

impl TopologyTriple {
    pub fn discrete(dim_e: usize, dim_f: usize) -> Self {
        TopologyTriple {
            sigma: vec![ExtModulus::Omega; dim_e],
            tau: vec![ExtModulus::Omega; dim_f],
            nu: ExtModulus::Omega,
        }
    }

    pub fn matches(&self, w: &BiadditiveMap) -> Result<()> {
        let (e, f, a) = w.dims();
        if self.sigma.len() != e || self.tau.len() != f || a != 1 {
            return Err(Error::DimensionMismatch(format!(
                "triple shape ({}, {}, 1) does not match map dims ({e}, {f}, {a})",
                self.sigma.len(),
                self.tau.len()
            )));
        }
        Ok(())
    }
}

pub fn vector_coarser(a: &[ExtModulus], b: &[ExtModulus]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.divides(y))
}

pub fn vector_hausdorff(v: &[ExtModulus]) -> bool {
    v.iter().all(|m| m.is_infinite())
}

#[derive(Debug, Clone)]
pub struct CompatibilityVerdict {
    pub compatible: bool,
    /// Divisibility derivation, or the concrete continuity-violating point.
    pub certificate: String,
}

/// Decision rule: compatible iff nu divides every sigma_i and every tau_i.
/// A negative answer carries a symbolic point certificate; a positive one
/// is spot-checked by finite-quotient continuity trials at random points.
pub fn triple_compatible(
    triple: &TopologyTriple,
    w: &BiadditiveMap,
    config: &SearchConfig,
) -> Result<CompatibilityVerdict> {
    triple.matches(w)?;
    for (i, s) in triple.sigma.iter().enumerate() {
        if !triple.nu.divides(s) {
            return Ok(CompatibilityVerdict {
                compatible: false,
                certificate: format!(
                    "nu = {} does not divide sigma_{} = {s}: at the point (x, y) with y the \
                     unit vector in coordinate {}, no sigma-congruence on x forces w(x, y) \
                     into the nu-congruence",
                    triple.nu,
                    i + 1,
                    i + 1
                ),
            });
        }
    }
    for (i, t) in triple.tau.iter().enumerate() {
        if !triple.nu.divides(t) {
            return Ok(CompatibilityVerdict {
                compatible: false,
                certificate: format!(
                    "nu = {} does not divide tau_{} = {t}: at the point (x, y) with x the \
                     unit vector in coordinate {}, no tau-congruence on y forces w(x, y) \
                     into the nu-congruence",
                    triple.nu,
                    i + 1,
                    i + 1
                ),
            });
        }
    }
    // spot-check the rule: at random integer points, perturbations drawn
    // from the canonical congruences keep w inside the target congruence
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x7472_6970);
    let (dim_e, dim_f, _) = w.dims();
    let trials = config.trials.min(200);
    for _ in 0..trials {
        let depth = rng.gen_range(*config.depths().start()..=*config.depths().end());
        let a = triple.nu.canonical_divisor(&config.primes, depth);
        let svec: Vec<u64> = triple
            .sigma
            .iter()
            .map(|m| m.canonical_divisor(&config.primes, depth))
            .collect();
        let tvec: Vec<u64> = triple
            .tau
            .iter()
            .map(|m| m.canonical_divisor(&config.primes, depth))
            .collect();
        let rand_vec = |rng: &mut ChaCha8Rng, len: usize| -> Vec<BigInt> {
            (0..len).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()
        };
        let x0 = rand_vec(&mut rng, dim_e);
        let y0 = rand_vec(&mut rng, dim_f);
        let dx: Vec<BigInt> = svec
            .iter()
            .map(|&s| BigInt::from(s) * BigInt::from(rng.gen_range(-3i64..=3)))
            .collect();
        let dy: Vec<BigInt> = tvec
            .iter()
            .map(|&t| BigInt::from(t) * BigInt::from(rng.gen_range(-3i64..=3)))
            .collect();
        let x1: Vec<BigInt> = x0.iter().zip(&dx).map(|(a, b)| a + b).collect();
        let y1: Vec<BigInt> = y0.iter().zip(&dy).map(|(a, b)| a + b).collect();
        let before = w.eval(&x0, &y0)?;
        let after = w.eval(&x1, &y1)?;
        let diff = &after[0] - &before[0];
        let ok = if a == 0 {
            diff == BigInt::from(0)
        } else {
            (&diff % BigInt::from(a)) == BigInt::from(0)
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "compatibility rule contradicted by the continuity oracle at depth {depth}"
            )));
        }
    }
    Ok(CompatibilityVerdict {
        compatible: true,
        certificate: format!(
            "nu divides every sigma and tau coordinate; {trials} continuity trials passed"
        ),
    })
}

fn enumerate_vectors(len: usize, moduli: &[ExtModulus]) -> Vec<Vec<ExtModulus>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * moduli.len());
        for v in &out {
            for m in moduli {
                let mut w = v.clone();
                w.push(m.clone());
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn decide_minimality(
    w: &BiadditiveMap,
    original: &TopologyTriple,
    config: &SearchConfig,
    vary_nu: bool,
) -> Result<VerdictReport> {
    original.matches(w)?;
    let property = if vary_nu { "strongly-minimal-map" } else { "minimal-map" };
    let report = VerdictReport::new(property, w.to_string(), original_literal(original), config);
    let hausdorff_moduli: Vec<ExtModulus> =
        enumerate_moduli(&config.primes, config.exp_cap, true)
            .into_iter()
            .filter(|m| m.is_infinite())
            .collect();
    let sigmas: Vec<Vec<ExtModulus>> =
        enumerate_vectors(original.sigma.len(), &hausdorff_moduli)
            .into_iter()
            .filter(|v| vector_coarser(v, &original.sigma))
            .collect();
    let taus: Vec<Vec<ExtModulus>> = enumerate_vectors(original.tau.len(), &hausdorff_moduli)
        .into_iter()
        .filter(|v| vector_coarser(v, &original.tau))
        .collect();
    let nus: Vec<ExtModulus> = if vary_nu {
        hausdorff_moduli
            .iter()
            .filter(|m| m.divides(&original.nu))
            .cloned()
            .collect()
    } else {
        vec![original.nu.clone()]
    };
    let mut witnesses = Vec::new();
    for nu in &nus {
        for sigma in &sigmas {
            for tau in &taus {
                let candidate = TopologyTriple {
                    sigma: sigma.clone(),
                    tau: tau.clone(),
                    nu: nu.clone(),
                };
                let verdict = triple_compatible(&candidate, w, config)?;
                if verdict.compatible
                    && (candidate.sigma != original.sigma || candidate.tau != original.tau)
                {
                    witnesses.push(triple_literal(&candidate));
                }
            }
        }
    }
    Ok(if witnesses.is_empty() {
        report.holds("every enumerated compatible coarser triple keeps sigma and tau")
    } else {
        report.fails(witnesses, "compatible coarser triple with changed factors")
    })
}

/// Minimal biadditive map: within the family, every compatible coarser
/// Hausdorff (sigma1, tau1) with the original nu keeps sigma and tau.
pub fn is_minimal_map(
    w: &BiadditiveMap,
    original: &TopologyTriple,
    config: &SearchConfig,
) -> Result<VerdictReport> {
    decide_minimality(w, original, config, false)
}

/// Strongly minimal: nu is also allowed to relax to any coarser Hausdorff
/// modulus.
pub fn is_strongly_minimal_map(
    w: &BiadditiveMap,
    original: &TopologyTriple,
    config: &SearchConfig,
) -> Result<VerdictReport> {
    decide_minimality(w, original, config, true)
}

fn join(v: &[ExtModulus]) -> String {
    v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")
}

pub fn triple_literal(t: &TopologyTriple) -> String {
    format!("triple(sigma={}; tau={}; nu={})", join(&t.sigma), join(&t.tau), t.nu)
}

fn original_literal(t: &TopologyTriple) -> String {
    triple_literal(t)
}

impl fmt::Display for TopologyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", triple_literal(self))
    }
}

impl FromStr for TopologyTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("triple(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad triple literal `{s}`")))?;
        let mut sigma = None;
        let mut tau = None;
        let mut nu = None;
        for part in body.split(';') {
            let part = part.trim();
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad triple slot `{part}`")))?;
            let parse_vec = |v: &str| -> Result<Vec<ExtModulus>> {
                v.split(',').map(|m| m.trim().parse()).collect()
            };
            match key.trim() {
                "sigma" => sigma = Some(parse_vec(val)?),
                "tau" => tau = Some(parse_vec(val)?),
                "nu" => nu = Some(val.trim().parse()?),
                other => return Err(Error::Parse(format!("unknown triple slot `{other}`"))),
            }
        }
        match (sigma, tau, nu) {
            (Some(sigma), Some(tau), Some(nu)) => Ok(TopologyTriple { sigma, tau, nu }),
            _ => Err(Error::Parse("triple literal needs sigma, tau and nu".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn cfg(primes: &[u64], cap: u32) -> SearchConfig {
        SearchConfig::new(primes.to_vec(), cap).unwrap()
    }

    fn triple(s: &str) -> TopologyTriple {
        s.parse().unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let m = BiadditiveMap::multiplication(RingSpec::Integers);
        let c = cfg(&[2], 2);
        let padic = triple("triple(sigma=2^inf; tau=2^inf; nu=2^inf)");
        assert!(triple_compatible(&padic, &m, &c).unwrap().compatible);

        let bad = triple("triple(sigma=2^inf; tau=2^inf; nu=Omega)");
        let v = triple_compatible(&bad, &m, &c).unwrap();
        assert!(!v.compatible);
        assert!(v.certificate.contains("sigma_1"));

        let disc = TopologyTriple::discrete(1, 1);
        assert!(triple_compatible(&disc, &m, &c).unwrap().compatible);
    }

    #[test]
    fn minimality_of_multiplication() {
        let m = BiadditiveMap::multiplication(RingSpec::Integers);
        let c = cfg(&[2], 1);
        let disc = TopologyTriple::discrete(1, 1);
        let r = is_minimal_map(&m, &disc, &c).unwrap();
        assert!(r.is_holds());
        let r = is_strongly_minimal_map(&m, &disc, &c).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Fails);
        assert!(r
            .witnesses
            .contains(&"triple(sigma=2^inf; tau=2^inf; nu=2^inf)".to_string()));
    }

    #[test]
    fn minimality_of_dot_maps() {
        let w2 = BiadditiveMap::dot(RingSpec::Integers, 2);
        let c = cfg(&[2], 1);
        let disc = TopologyTriple::discrete(2, 2);
        let r = is_minimal_map(&w2, &disc, &c).unwrap();
        assert!(r.is_holds());
    }

    #[test]
    fn literal_round_trip() {
        let t = triple("triple(sigma=2^inf,Omega; tau=2^inf,2^inf; nu=2^inf)");
        assert_eq!(
            triple_literal(&t),
            "triple(sigma=2^inf,Omega; tau=2^inf,2^inf; nu=2^inf)"
        );
    }
}
