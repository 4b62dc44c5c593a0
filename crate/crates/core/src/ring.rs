//! Exact arithmetic in the supported coefficient rings: the integers and
//! the residue rings Z/mZ, with arbitrary-precision values throughout.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingSpec {
    Integers,
    /// Z/mZ with m >= 2.
    Residues(u64),
}

impl RingSpec {
    pub fn residues(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("modulus {m} < 2")));
        }
        Ok(RingSpec::Residues(m))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingSpec::Residues(_))
    }

    /// Canonical representative of `v` in this ring.
    pub fn reduce(&self, v: BigInt) -> BigInt {
        match self {
            RingSpec::Integers => v,
            RingSpec::Residues(m) => {
                let m = BigInt::from(*m);
                let r = v % &m;
                if r.is_negative() {
                    r + m
                } else {
                    r
                }
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Residues(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in ring literal `{s}`")))?;
            return RingSpec::residues(m);
        }
        Err(Error::Parse(format!("bad ring literal `{s}`")))
    }
}

/// An element of one of the supported rings; residue representatives are
/// always reduced into [0, m).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem {
    spec: RingSpec,
    value: BigInt,
}

impl RingElem {
    pub fn new(spec: RingSpec, value: impl Into<BigInt>) -> Self {
        let value = spec.reduce(value.into());
        RingElem { spec, value }
    }

    pub fn zero(spec: RingSpec) -> Self {
        RingElem::new(spec, BigInt::zero())
    }

    pub fn one(spec: RingSpec) -> Self {
        RingElem::new(spec, BigInt::one())
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::RingMismatch(self.spec, other.spec));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.spec, &self.value + &other.value))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.spec, &self.value - &other.value))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(RingElem::new(self.spec, &self.value * &other.value))
    }

    pub fn neg(&self) -> RingElem {
        RingElem::new(self.spec, -&self.value)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The canonical quotient homomorphism Z -> Z/mZ.
pub fn reduce_hom(x: &RingElem, m: u64) -> Result<RingElem> {
    if x.spec() != RingSpec::Integers {
        return Err(Error::Precondition("reduce_hom expects an integer".into()));
    }
    let spec = RingSpec::residues(m)?;
    Ok(RingElem::new(spec, x.value().clone()))
}

/// All elements of a finite ring, in canonical order.
pub fn enumerate_elements(spec: RingSpec) -> Result<Vec<RingElem>> {
    match spec {
        RingSpec::Integers => Err(Error::InfiniteRing(spec)),
        RingSpec::Residues(m) => Ok((0..m).map(|v| RingElem::new(spec, v)).collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_examples() {
        let z12 = RingSpec::residues(12).unwrap();
        let five = RingElem::new(z12, 5);
        let nine = RingElem::new(z12, 9);
        assert_eq!(five.add(&nine).unwrap(), RingElem::new(z12, 2));

        let a = RingElem::new(RingSpec::Integers, -3);
        let b = RingElem::new(RingSpec::Integers, 4);
        assert_eq!(a.mul(&b).unwrap(), RingElem::new(RingSpec::Integers, -12));

        let z7 = RingSpec::residues(7).unwrap();
        assert_eq!(RingElem::zero(z7).neg(), RingElem::zero(z7));
    }

    #[test]
    fn reduce_examples() {
        let x = |v: i64| RingElem::new(RingSpec::Integers, v);
        assert_eq!(reduce_hom(&x(17), 5).unwrap().value(), &BigInt::from(2));
        assert_eq!(reduce_hom(&x(-1), 4).unwrap().value(), &BigInt::from(3));
        assert_eq!(reduce_hom(&x(0), 9).unwrap().value(), &BigInt::from(0));
    }

    #[test]
    fn enumerate_examples() {
        let z3 = RingSpec::residues(3).unwrap();
        let got: Vec<_> = enumerate_elements(z3)
            .unwrap()
            .into_iter()
            .map(|e| e.value().clone())
            .collect();
        assert_eq!(got, vec![BigInt::from(0), BigInt::from(1), BigInt::from(2)]);
        assert_eq!(enumerate_elements(RingSpec::residues(2).unwrap()).unwrap().len(), 2);
        assert!(matches!(
            enumerate_elements(RingSpec::Integers),
            Err(Error::InfiniteRing(_))
        ));
    }

    #[test]
    fn mismatched_spec_rejected() {
        let a = RingElem::new(RingSpec::Integers, 1);
        let b = RingElem::new(RingSpec::residues(4).unwrap(), 1);
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn ring_literals() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert_eq!("Z/12".parse::<RingSpec>().unwrap(), RingSpec::Residues(12));
        assert!("Z/1".parse::<RingSpec>().is_err());
    }
}
