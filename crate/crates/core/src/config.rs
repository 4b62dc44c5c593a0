//! Search-box configuration shared by the topology deciders: the prime set,
//! the exponent cap, and the finite truncation used by saturation oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Primes whose powers index the enumerated moduli; sorted, duplicate-free.
    pub primes: Vec<u64>,
    /// Finite exponents run over 0..=exp_cap (plus the infinite exponent).
    pub exp_cap: u32,
    /// Modulus of the finite quotient UT(n, Z/L) used by the oracles.
    pub truncation: u64,
    /// Hard cap on any finite enumeration.
    pub budget: u64,
    /// Randomized closure trials per oracle certification.
    pub trials: u32,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(primes: Vec<u64>, exp_cap: u32) -> Result<Self> {
        let mut primes = primes;
        primes.sort_unstable();
        primes.dedup();
        if primes.is_empty() {
            return Err(Error::Precondition("prime set must be nonempty".into()));
        }
        for &p in &primes {
            if p < 2 || (2..p).any(|d| p % d == 0) {
                return Err(Error::Precondition(format!("{p} is not prime")));
            }
        }
        let truncation = default_truncation(&primes, exp_cap)?;
        Ok(SearchConfig {
            primes,
            exp_cap,
            truncation,
            budget: 1 << 21,
            trials: 1000,
            seed: 0,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u32) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_truncation(mut self, truncation: u64) -> Self {
        self.truncation = truncation;
        self
    }

    /// Cofinal basic-subgroup depths: canonical divisor vectors at depths
    /// 1..=exp_cap+1 resolve every enumerated modulus.
    pub fn depths(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.exp_cap + 1
    }
}

/// L = (prod primes)^(exp_cap + 2): every canonical divisor at any depth
/// in the box divides L, so truncation never aliases distinct divisors.
pub fn default_truncation(primes: &[u64], exp_cap: u32) -> Result<u64> {
    let radical: u64 = primes.iter().try_fold(1u64, |acc, &p| {
        acc.checked_mul(p)
            .ok_or_else(|| Error::Precondition("prime product overflow".into()))
    })?;
    radical
        .checked_pow(exp_cap + 2)
        .ok_or_else(|| Error::Precondition("truncation overflow".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_examples() {
        assert_eq!(default_truncation(&[2], 2).unwrap(), 16);
        assert_eq!(default_truncation(&[2, 3], 2).unwrap(), 1296);
        assert_eq!(default_truncation(&[2], 1).unwrap(), 8);
    }

    #[test]
    fn config_normalizes() {
        let c = SearchConfig::new(vec![3, 2, 3], 2).unwrap();
        assert_eq!(c.primes, vec![2, 3]);
        assert_eq!(c.truncation, 1296);
        assert!(SearchConfig::new(vec![], 1).is_err());
        assert!(SearchConfig::new(vec![4], 1).is_err());
    }
}
