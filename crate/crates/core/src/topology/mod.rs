//! Graded adic topologies on UT(n,Z): linear group topologies whose basic
//! open subgroups are the graded congruence subgroups U(a_1,...,a_{n-1}),
//! with the level-d modulus a_d running over finite divisors of an extended
//! supernatural number N_d (Omega encoding the discrete constraint a_d = 0).
//!
//! Admissibility axioms on the tuple (N_1,...,N_{n-1}):
//!   A1 (multiplicativity): N_{d+e} | N_d * N_e whenever d+e <= n-1 — basic
//!      subgroups are closed under products (cross terms live at level d+e);
//!   A2 (conjugation): N_d | N_e for e <= d — conjugation perturbs level d
//!      by lower-level data, so deeper moduli must divide shallower ones.
//! A2 implies A1 (N_{d+e} | N_d | N_d * N_e); both are still checked as
//! stated, and certified against the finite-quotient oracle.

pub mod deciders;
pub mod oracle;
pub mod triples;

use std::fmt;
use std::str::FromStr;

use crate::adic::ExtModulus;
use crate::error::{Error, Result};
use crate::ut::SubgroupSpec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedAdicTopology {
    n: usize,
    levels: Vec<ExtModulus>,
}

/// A concrete symbolic violation of the admissibility axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// N_{d+e} does not divide N_d * N_e.
    A1 { d: usize, e: usize },
    /// N_d does not divide N_e although e <= d.
    A2 { d: usize, e: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::A1 { d, e } => {
                write!(f, "A1 fails at (d,e)=({d},{e}): N_{} does not divide N_{d}*N_{e}", d + e)
            }
            AxiomViolation::A2 { d, e } => {
                write!(f, "A2 fails at (d,e)=({d},{e}): N_{d} does not divide N_{e}")
            }
        }
    }
}

/// Topology induced on a subgroup or quotient carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducedTopology {
    /// Adic topology on a rank-1 carrier (center, one-parameter subgroups).
    Line(ExtModulus),
    /// Product of independent adic coordinates on Z^k (abelian carriers).
    Vector(Vec<ExtModulus>),
    /// Graded tuple reindexed on the levels of a smaller unitriangular
    /// carrier (restriction to the derived subgroup).
    Graded(GradedAdicTopology),
    /// Quotient of UT(n) by its corner: the level moduli N_1..N_{n-2}
    /// govern the surviving positions.
    CornerErased { n: usize, levels: Vec<ExtModulus> },
}

impl fmt::Display for InducedTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |levels: &[ExtModulus]| {
            levels
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            InducedTopology::Line(m) => write!(f, "line({m})"),
            InducedTopology::Vector(v) => write!(f, "vec({})", join(v)),
            InducedTopology::Graded(t) => write!(f, "{t}"),
            InducedTopology::CornerErased { n, levels } => {
                write!(f, "corner-erased(n={n}; {})", join(levels))
            }
        }
    }
}

impl InducedTopology {
    /// Hausdorff test for the induced carrier: every governing modulus must
    /// be infinite or Omega.
    pub fn is_hausdorff(&self) -> bool {
        match self {
            InducedTopology::Line(m) => m.is_infinite(),
            InducedTopology::Vector(v) => v.iter().all(|m| m.is_infinite()),
            InducedTopology::Graded(t) => t.is_hausdorff(),
            InducedTopology::CornerErased { levels, .. } => {
                levels.iter().all(|m| m.is_infinite())
            }
        }
    }
}

impl GradedAdicTopology {
    pub fn new(n: usize, levels: Vec<ExtModulus>) -> Result<Self> {
        if n < 2 || levels.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "degree {n} wants {} levels, got {}",
                n.saturating_sub(1),
                levels.len()
            )));
        }
        Ok(GradedAdicTopology { n, levels })
    }

    /// The discrete topology: every level Omega.
    pub fn discrete(n: usize) -> Self {
        GradedAdicTopology::new(n, vec![ExtModulus::Omega; n - 1]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[ExtModulus] {
        &self.levels
    }

    /// 1-based level accessor.
    pub fn level(&self, d: usize) -> &ExtModulus {
        &self.levels[d - 1]
    }

    /// First symbolic axiom violation, if any. A1 and A2 are both checked
    /// exactly as stated.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let top = self.n - 1;
        for d in 1..=top {
            for e in 1..=top {
                if d + e <= top {
                    let bound = self.level(d).mul(self.level(e));
                    if !self.level(d + e).divides(&bound) {
                        return Err(AxiomViolation::A1 { d, e });
                    }
                }
            }
        }
        for d in 1..=top {
            for e in 1..=d {
                if !self.level(d).divides(self.level(e)) {
                    return Err(AxiomViolation::A2 { d, e });
                }
            }
        }
        Ok(())
    }

    pub fn is_symbolically_valid(&self) -> bool {
        self.check_axioms().is_ok()
    }

    /// Hausdorff iff every level is infinite or Omega: a finite N_d leaves
    /// I + N_d E_{1,1+d} inside every basic subgroup.
    pub fn is_hausdorff(&self) -> bool {
        self.levels.iter().all(|m| m.is_infinite())
    }

    fn check_degree(&self, other: &GradedAdicTopology) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// self coarser-or-equal other: componentwise N1_d | N2_d.
    pub fn is_coarser(&self, other: &GradedAdicTopology) -> Result<bool> {
        self.check_degree(other)?;
        Ok(self
            .levels
            .iter()
            .zip(&other.levels)
            .all(|(a, b)| a.divides(b)))
    }

    /// Supremum: componentwise lcm (basic subgroups intersect).
    pub fn sup(&self, other: &GradedAdicTopology) -> Result<GradedAdicTopology> {
        self.check_degree(other)?;
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.lcm(b))
            .collect();
        GradedAdicTopology::new(self.n, levels)
    }

    /// Canonical basic-subgroup vector at depth k: a_d = each supported
    /// prime of N_d capped at exponent k; 0 for Omega. Cofinal in the filter
    /// as k grows.
    pub fn canonical_vector(&self, primes: &[u64], depth: u32) -> Vec<u64> {
        self.levels
            .iter()
            .map(|m| m.canonical_divisor(primes, depth))
            .collect()
    }

    /// Subspace topology on a distinguished subgroup, in closed form.
    pub fn restrict(&self, s: &SubgroupSpec) -> Result<InducedTopology> {
        match s {
            SubgroupSpec::Center => Ok(InducedTopology::Line(self.level(self.n - 1).clone())),
            SubgroupSpec::OneParam(i, j) => {
                if !(*i >= 1 && i < j && *j <= self.n) {
                    return Err(Error::IndexOutOfRange { i: *i, j: *j, n: self.n });
                }
                Ok(InducedTopology::Line(self.level(j - i).clone()))
            }
            SubgroupSpec::Derived => {
                if self.n == 2 {
                    return Err(Error::UnsupportedSubgroup(
                        "derived subgroup of UT(2) is trivial".into(),
                    ));
                }
                let levels = self.levels[1..].to_vec();
                Ok(InducedTopology::Graded(GradedAdicTopology::new(
                    self.n - 1,
                    levels,
                )?))
            }
            other => Err(Error::UnsupportedSubgroup(format!(
                "restrict does not support {other}"
            ))),
        }
    }

    /// Quotient topology by a normal distinguished subgroup, in closed form.
    pub fn quotient(&self, s: &SubgroupSpec) -> Result<InducedTopology> {
        match s {
            SubgroupSpec::Center => {
                if self.n == 3 {
                    // UT(3)/Z is Z^2 with both coordinates at level 1
                    Ok(InducedTopology::Vector(vec![
                        self.level(1).clone(),
                        self.level(1).clone(),
                    ]))
                } else {
                    Ok(InducedTopology::CornerErased {
                        n: self.n,
                        levels: self.levels[..self.n - 2].to_vec(),
                    })
                }
            }
            SubgroupSpec::Derived => Ok(InducedTopology::Vector(vec![
                self.level(1).clone();
                self.n - 1
            ])),
            other => Err(Error::UnsupportedSubgroup(format!(
                "quotient requires a normal subgroup, got {other}"
            ))),
        }
    }

    /// Extension over the center: replace the corner level with sigma.
    /// Requires sigma coarser than the current center restriction
    /// (sigma | N_{n-1}); then the result restricts to sigma on the center
    /// and leaves the center quotient unchanged.
    pub fn extension(&self, sigma: &ExtModulus) -> Result<GradedAdicTopology> {
        let corner = self.level(self.n - 1);
        if !sigma.divides(corner) {
            return Err(Error::Precondition(format!(
                "sigma = {sigma} is not coarser than the center restriction {corner}"
            )));
        }
        let mut levels = self.levels.clone();
        levels[self.n - 2] = corner.gcd(sigma);
        let out = GradedAdicTopology::new(self.n, levels)?;
        debug_assert_eq!(
            out.restrict(&SubgroupSpec::Center)?,
            InducedTopology::Line(sigma.clone())
        );
        debug_assert_eq!(
            out.quotient(&SubgroupSpec::Center)?,
            self.quotient(&SubgroupSpec::Center)?
        );
        Ok(out)
    }
}

impl fmt::Display for GradedAdicTopology {
    /// Literal form `gt(n=3; 2^inf, 2^inf)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(|m| m.to_string()).collect();
        write!(f, "gt(n={}; {})", self.n, parts.join(", "))
    }
}

impl FromStr for GradedAdicTopology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("gt(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad topology literal `{s}`")))?;
        let (head, tail) = body
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("bad topology literal `{s}`")))?;
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad degree in `{s}`")))?;
        let levels: Result<Vec<ExtModulus>> =
            tail.split(',').map(|m| m.trim().parse()).collect();
        GradedAdicTopology::new(n, levels?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(s: &str) -> GradedAdicTopology {
        s.parse().unwrap()
    }

    #[test]
    fn axiom_examples() {
        assert!(gt("gt(n=3; Omega, Omega)").is_symbolically_valid());
        assert!(gt("gt(n=3; 2^inf, 2^inf)").is_symbolically_valid());
        let bad = gt("gt(n=3; 2^inf, Omega)");
        assert!(matches!(
            bad.check_axioms(),
            Err(AxiomViolation::A1 { d: 1, e: 1 })
        ));
        // deeper level finer than a shallower one; A1 still holds (4 | 2*2)
        let bad = gt("gt(n=3; 2, 2^2)");
        assert!(matches!(bad.check_axioms(), Err(AxiomViolation::A2 { .. })));
        // Omega at level 1 with infinite corner: every axiom as stated holds
        assert!(gt("gt(n=3; Omega, 2^inf)").is_symbolically_valid());
    }

    #[test]
    fn coarser_and_sup() {
        let p2 = gt("gt(n=3; 2^inf, 2^inf)");
        let disc = GradedAdicTopology::discrete(3);
        assert!(p2.is_coarser(&disc).unwrap());
        assert!(!disc.is_coarser(&p2).unwrap());
        assert!(p2.is_coarser(&p2).unwrap());

        let p3 = gt("gt(n=3; 3^inf, 3^inf)");
        assert_eq!(p2.sup(&p3).unwrap(), gt("gt(n=3; 2^inf*3^inf, 2^inf*3^inf)"));

        let fine = gt("gt(n=3; 2^inf, 2^3)");
        assert!(fine.is_coarser(&p2).unwrap());
        assert!(!p2.is_coarser(&fine).unwrap());
    }

    #[test]
    fn hausdorff_examples() {
        assert!(gt("gt(n=3; 2^inf, 2^inf)").is_hausdorff());
        assert!(!gt("gt(n=3; 2^inf, 2^3)").is_hausdorff());
        assert!(GradedAdicTopology::discrete(3).is_hausdorff());
    }

    #[test]
    fn restrict_examples() {
        let t = gt("gt(n=3; 2^inf, 3^inf)");
        assert_eq!(
            t.restrict(&SubgroupSpec::Center).unwrap(),
            InducedTopology::Line("3^inf".parse().unwrap())
        );
        let disc = GradedAdicTopology::discrete(3);
        assert_eq!(
            disc.restrict(&SubgroupSpec::OneParam(1, 2)).unwrap(),
            InducedTopology::Line(ExtModulus::Omega)
        );
        let t4 = gt("gt(n=4; 2^inf, 2^inf, 2^inf)");
        assert_eq!(
            t4.restrict(&SubgroupSpec::Derived).unwrap(),
            InducedTopology::Graded(gt("gt(n=3; 2^inf, 2^inf)"))
        );
    }

    #[test]
    fn quotient_examples() {
        let t = gt("gt(n=3; 2^inf, 3^inf)");
        assert_eq!(
            t.quotient(&SubgroupSpec::Center).unwrap(),
            InducedTopology::Vector(vec![
                "2^inf".parse().unwrap(),
                "2^inf".parse().unwrap()
            ])
        );
        let disc = GradedAdicTopology::discrete(3);
        assert_eq!(
            disc.quotient(&SubgroupSpec::Derived).unwrap(),
            InducedTopology::Vector(vec![ExtModulus::Omega, ExtModulus::Omega])
        );
        let p2 = gt("gt(n=3; 2^inf, 2^inf)");
        assert_eq!(
            p2.quotient(&SubgroupSpec::Derived).unwrap(),
            InducedTopology::Vector(vec![
                "2^inf".parse().unwrap(),
                "2^inf".parse().unwrap()
            ])
        );
        assert!(p2.quotient(&SubgroupSpec::OneParam(1, 2)).is_err());
        let t4 = gt("gt(n=4; 2^inf, 2^2, 2^2)");
        assert_eq!(
            t4.quotient(&SubgroupSpec::Center).unwrap(),
            InducedTopology::CornerErased {
                n: 4,
                levels: vec!["2^inf".parse().unwrap(), "2^2".parse().unwrap()]
            }
        );
    }

    #[test]
    fn extension_examples() {
        // extending by the current center restriction returns gamma
        let p2 = gt("gt(n=3; 2^inf, 2^inf)");
        assert_eq!(p2.extension(&"2^inf".parse().unwrap()).unwrap(), p2);

        let six = gt("gt(n=3; 2^inf*3^inf, 2^inf*3^inf)");
        let ext = six.extension(&"2^inf".parse().unwrap()).unwrap();
        assert_eq!(ext, gt("gt(n=3; 2^inf*3^inf, 2^inf)"));

        // discrete gamma extended by 2^inf: valid under the stated axioms
        let disc = GradedAdicTopology::discrete(3);
        let ext = disc.extension(&"2^inf".parse().unwrap()).unwrap();
        assert_eq!(ext, gt("gt(n=3; Omega, 2^inf)"));
        assert!(ext.is_symbolically_valid());

        // sigma must be coarser than the corner level
        let narrow = gt("gt(n=3; 2^inf, 2^inf)");
        assert!(narrow.extension(&"3^inf".parse().unwrap()).is_err());
    }

    #[test]
    fn literal_round_trip() {
        for s in [
            "gt(n=3; 2^inf, 2^inf)",
            "gt(n=3; Omega, Omega)",
            "gt(n=4; 2^inf*3^2, 2^inf, 1)",
        ] {
            assert_eq!(gt(s).to_string(), s);
        }
        assert!("gt(n=3; 2^inf)".parse::<GradedAdicTopology>().is_err());
        assert!("gt(3; 2^inf, 2^inf)".parse::<GradedAdicTopology>().is_err());
    }

    #[test]
    fn canonical_vectors() {
        let t = gt("gt(n=3; 2^inf, 2^inf)");
        assert_eq!(t.canonical_vector(&[2], 1), vec![2, 2]);
        assert_eq!(t.canonical_vector(&[2], 3), vec![8, 8]);
        let disc = GradedAdicTopology::discrete(3);
        assert_eq!(disc.canonical_vector(&[2], 2), vec![0, 0]);
        let mixed = gt("gt(n=3; Omega, 2^inf)");
        assert_eq!(mixed.canonical_vector(&[2], 2), vec![0, 4]);
    }
}
