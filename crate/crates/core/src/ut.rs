//! The UT(n,K) engine: unitriangular matrix arithmetic, transvections,
//! commutators, distinguished subgroups and the finite-group oracle over
//! residue rings.
//!
//! Entries are stored sparsely by position (i,j), 1-based with i < j; the
//! diagonal is implicitly 1 and everything below is 0. The level of a
//! position is j - i; all congruence data is graded by level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UTMatrix {
    n: usize,
    ring: RingSpec,
    entries: BTreeMap<(usize, usize), BigInt>,
}

/// All strictly-upper positions of degree n, row-major.
pub fn positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push((i, j));
        }
    }
    out
}

impl UTMatrix {
    pub fn identity(n: usize, ring: RingSpec) -> Self {
        assert!(n >= 2, "degree must be at least 2");
        UTMatrix {
            n,
            ring,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i < 1 || j <= i || j > self.n {
            return Err(Error::IndexOutOfRange { i, j, n: self.n });
        }
        Ok(())
    }

    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: BigInt) -> Result<()> {
        self.check_index(i, j)?;
        let v = self.ring.reduce(v);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
        Ok(())
    }

    pub fn from_entries(
        n: usize,
        ring: RingSpec,
        entries: impl IntoIterator<Item = ((usize, usize), BigInt)>,
    ) -> Result<Self> {
        let mut m = UTMatrix::identity(n, ring);
        for ((i, j), v) in entries {
            m.set_entry(i, j, v)?;
        }
        Ok(m)
    }

    /// The transvection e_{i,j}(x) = I + x E_{i,j}.
    pub fn transvection(n: usize, i: usize, j: usize, x: &RingElem) -> Result<Self> {
        let mut m = UTMatrix::identity(n, x.spec());
        m.check_index(i, j)?;
        m.set_entry(i, j, x.value().clone())?;
        Ok(m)
    }

    /// The canonical coordinate projection p_{i,j}.
    pub fn projection(&self, i: usize, j: usize) -> Result<RingElem> {
        self.check_index(i, j)?;
        Ok(RingElem::new(self.ring, self.entry(i, j)))
    }

    fn check_shape(&self, other: &UTMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    pub fn mul(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_shape(other)?;
        let mut out = UTMatrix::identity(self.n, self.ring);
        for (i, j) in positions(self.n) {
            let mut v = self.entry(i, j) + other.entry(i, j);
            for s in (i + 1)..j {
                v += self.entry(i, s) * other.entry(s, j);
            }
            out.set_entry(i, j, v)?;
        }
        Ok(out)
    }

    /// Level-by-level back-substitution: the level-d entry of the inverse is
    /// determined by lower levels, so entries of M^{-1} at level d lie in the
    /// ideal generated by the level-<=d entries of M.
    pub fn inv(&self) -> UTMatrix {
        let mut out = UTMatrix::identity(self.n, self.ring);
        for d in 1..self.n {
            for i in 1..=(self.n - d) {
                let j = i + d;
                // (M * X)_{i,j} = m_{i,j} + x_{i,j} + sum_{i<s<j} m_{i,s} x_{s,j} = 0
                let mut v = -self.entry(i, j);
                for s in (i + 1)..j {
                    v -= self.entry(i, s) * out.entry(s, j);
                }
                out.set_entry(i, j, v).expect("index in range");
            }
        }
        out
    }

    /// [A,B] = A B A^{-1} B^{-1}.
    pub fn commutator(&self, other: &UTMatrix) -> Result<UTMatrix> {
        self.check_shape(other)?;
        self.mul(other)?.mul(&self.inv())?.mul(&other.inv())
    }

    /// True when all entries at levels <= m vanish (membership in UT^m).
    pub fn in_filtration(&self, m: usize) -> bool {
        self.entries.keys().all(|(i, j)| j - i > m)
    }

    /// Compact u64 key for finite-quotient set computations.
    /// Requires a residue ring whose full entry vector fits in 64 bits.
    pub fn encode(&self) -> u64 {
        let m = match self.ring {
            RingSpec::Residues(m) => m,
            RingSpec::Integers => panic!("encode requires a finite ring"),
        };
        let mut key: u64 = 0;
        for (i, j) in positions(self.n) {
            let v: u64 = u64::try_from(&self.entry(i, j)).expect("canonical residue");
            key = key
                .checked_mul(m)
                .and_then(|k| k.checked_add(v))
                .expect("encoded matrix must fit in u64");
        }
        key
    }

    /// Uniform random matrix; integer entries are drawn from [-bound, bound].
    pub fn random<R: Rng>(n: usize, ring: RingSpec, rng: &mut R, bound: i64) -> UTMatrix {
        let mut out = UTMatrix::identity(n, ring);
        for (i, j) in positions(n) {
            let v = match ring {
                RingSpec::Integers => BigInt::from(rng.gen_range(-bound..=bound)),
                RingSpec::Residues(m) => BigInt::from(rng.gen_range(0..m)),
            };
            out.set_entry(i, j, v).expect("index in range");
        }
        out
    }
}

impl fmt::Display for UTMatrix {
    /// Literal form `ut(3; 1,2=2; 1,3=3; 2,3=5)`; zero entries are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ut({}", self.n)?;
        for ((i, j), v) in &self.entries {
            write!(f, "; {i},{j}={v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for UTMatrix {
    type Err = Error;

    /// Parses the literal form over Z.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix("ut(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad matrix literal `{s}`")))?;
        let mut parts = body.split(';');
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::Parse("missing degree".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad degree".into()))?;
        if n < 2 {
            return Err(Error::Parse("degree must be at least 2".into()));
        }
        let mut m = UTMatrix::identity(n, RingSpec::Integers);
        for part in parts {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (pos, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad entry `{part}`")))?;
            let (i, j) = pos
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad position `{pos}`")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Parse("bad row".into()))?;
            let j: usize = j.trim().parse().map_err(|_| Error::Parse("bad column".into()))?;
            let v: BigInt = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad value `{val}`")))?;
            m.set_entry(i, j, v)?;
        }
        Ok(m)
    }
}

/// Distinguished subgroups of UT(n,K).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubgroupSpec {
    /// Z(UT(n,K)), the corner 1-parameter group G_{1,n}.
    Center,
    /// G_{i,j}: only the (i,j) entry may be nonzero.
    OneParam(usize, usize),
    /// UT^m(n,K): m consecutive zero superdiagonals.
    Filtration(usize),
    /// The derived subgroup UT^1(n,K).
    Derived,
    /// Level-d entries divisible by a_d; a_d = 0 forces the entry to vanish.
    /// Length of the vector is n-1.
    GradedCongruence(Vec<u64>),
    WholeGroup,
}

impl SubgroupSpec {
    /// Validates the closure condition a_{d+e} | a_d * a_e (with 0 meaning
    /// "entry forced to 0") and returns the graded congruence subgroup.
    pub fn graded_congruence(moduli: Vec<u64>) -> Result<Self> {
        check_graded_closure(&moduli)?;
        Ok(SubgroupSpec::GradedCongruence(moduli))
    }

    pub fn degree_ok(&self, n: usize) -> bool {
        match self {
            SubgroupSpec::OneParam(i, j) => *i >= 1 && i < j && *j <= n,
            SubgroupSpec::Filtration(m) => *m <= n,
            SubgroupSpec::GradedCongruence(a) => a.len() == n - 1,
            _ => n >= 2,
        }
    }

    pub fn contains(&self, m: &UTMatrix) -> Result<bool> {
        let n = m.n();
        if !self.degree_ok(n) {
            return Err(Error::DegreeMismatch(n, n));
        }
        Ok(match self {
            SubgroupSpec::WholeGroup => true,
            SubgroupSpec::Center => m
                .entries
                .keys()
                .all(|&(i, j)| (i, j) == (1, n)),
            SubgroupSpec::OneParam(pi, pj) => {
                m.entries.keys().all(|&(i, j)| (i, j) == (*pi, *pj))
            }
            SubgroupSpec::Filtration(level) => m.in_filtration(*level),
            SubgroupSpec::Derived => m.in_filtration(1),
            SubgroupSpec::GradedCongruence(a) => positions(n).into_iter().all(|(i, j)| {
                entry_divisible(&m.entry(i, j), a[j - i - 1], m.ring())
            }),
        })
    }

    /// All members inside UT(n, Z/m).
    pub fn members(&self, n: usize, modulus: u64, budget: u64) -> Result<Vec<UTMatrix>> {
        let all = enumerate_group(n, modulus, budget)?;
        let mut out = Vec::new();
        for m in all {
            if self.contains(&m)? {
                out.push(m);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Center => write!(f, "center"),
            SubgroupSpec::OneParam(i, j) => write!(f, "oneparam({i},{j})"),
            SubgroupSpec::Filtration(m) => write!(f, "filtration({m})"),
            SubgroupSpec::Derived => write!(f, "derived"),
            SubgroupSpec::GradedCongruence(a) => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "graded({})", parts.join(","))
            }
            SubgroupSpec::WholeGroup => write!(f, "whole"),
        }
    }
}

impl FromStr for SubgroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "center" => return Ok(SubgroupSpec::Center),
            "derived" => return Ok(SubgroupSpec::Derived),
            "whole" => return Ok(SubgroupSpec::WholeGroup),
            _ => {}
        }
        if let Some(body) = s.strip_prefix("oneparam(").and_then(|s| s.strip_suffix(')')) {
            let (i, j) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad subgroup literal `{s}`")))?;
            let i = i.trim().parse().map_err(|_| Error::Parse("bad row".into()))?;
            let j = j.trim().parse().map_err(|_| Error::Parse("bad column".into()))?;
            return Ok(SubgroupSpec::OneParam(i, j));
        }
        if let Some(body) = s.strip_prefix("filtration(").and_then(|s| s.strip_suffix(')')) {
            let m = body.trim().parse().map_err(|_| Error::Parse("bad level".into()))?;
            return Ok(SubgroupSpec::Filtration(m));
        }
        if let Some(body) = s.strip_prefix("graded(").and_then(|s| s.strip_suffix(')')) {
            let moduli: Result<Vec<u64>> = body
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::Parse("bad congruence modulus".into()))
                })
                .collect();
            return SubgroupSpec::graded_congruence(moduli?);
        }
        Err(Error::Parse(format!("bad subgroup literal `{s}`")))
    }
}

/// Closure condition for a graded congruence vector: products of members
/// pick up cross terms a_d * a_e at level d+e.
pub fn check_graded_closure(moduli: &[u64]) -> Result<()> {
    let levels = moduli.len();
    for d in 1..=levels {
        for e in 1..=levels {
            if d + e > levels {
                continue;
            }
            let target = moduli[d + e - 1];
            let (x, y) = (moduli[d - 1], moduli[e - 1]);
            let ok = if x == 0 || y == 0 {
                true // cross term vanishes
            } else if target == 0 {
                false // nonzero cross term cannot be forced to 0
            } else {
                (x as u128 * y as u128) % target as u128 == 0
            };
            if !ok {
                return Err(Error::InvalidCongruence(format!(
                    "a_{} = {} does not divide a_{}*a_{} = {}*{}",
                    d + e,
                    target,
                    d,
                    e,
                    x,
                    y
                )));
            }
        }
    }
    Ok(())
}

fn entry_divisible(v: &BigInt, a: u64, ring: RingSpec) -> bool {
    if a == 0 {
        return v.is_zero();
    }
    let modulus = match ring {
        RingSpec::Integers => BigInt::from(a),
        RingSpec::Residues(m) => BigInt::from(a.gcd(&m)),
    };
    (v % modulus).is_zero()
}

/// All m^{n(n-1)/2} elements of UT(n, Z/m), deterministic order.
pub fn enumerate_group(n: usize, modulus: u64, budget: u64) -> Result<Vec<UTMatrix>> {
    let spec = RingSpec::residues(modulus)?;
    let pos = positions(n);
    let size = (modulus as u128).checked_pow(pos.len() as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: size,
            budget,
        });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut digits = vec![0u64; pos.len()];
    loop {
        let m = UTMatrix::from_entries(
            n,
            spec,
            pos.iter()
                .zip(&digits)
                .map(|(&p, &v)| (p, BigInt::from(v))),
        )?;
        out.push(m);
        // increment mixed-radix counter
        let mut k = pos.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < modulus {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// The saturation U * H = { u h : u in U, h in H-members }.
pub fn saturate(u: &BTreeSet<UTMatrix>, h_members: &[UTMatrix]) -> Result<BTreeSet<UTMatrix>> {
    let mut out = BTreeSet::new();
    for a in u {
        if !a.ring().is_finite() {
            return Err(Error::InfiniteRing(a.ring()));
        }
        for h in h_members {
            out.insert(a.mul(h)?);
        }
    }
    Ok(out)
}

/// Brute-force center of a finite set of group elements.
pub fn brute_force_center(elements: &[UTMatrix]) -> Result<Vec<UTMatrix>> {
    let mut out = Vec::new();
    'outer: for a in elements {
        for b in elements {
            if a.mul(b)? != b.mul(a)? {
                continue 'outer;
            }
        }
        out.push(a.clone());
    }
    Ok(out)
}

/// Brute-force commutator subgroup: all commutators, closed under products.
pub fn brute_force_derived(elements: &[UTMatrix]) -> Result<BTreeSet<UTMatrix>> {
    let mut gens = BTreeSet::new();
    for a in elements {
        for b in elements {
            gens.insert(a.commutator(b)?);
        }
    }
    // close under multiplication (inverses come along since the group is finite)
    let mut closure: BTreeSet<UTMatrix> = gens.clone();
    let mut frontier: Vec<UTMatrix> = closure.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.mul(g)?;
            if closure.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(closure)
}

/// Commutator identities relating projections of [M, e(x)] to
/// closed forms in the entries of M.
pub fn commutator_identity(
    variant: u8,
    m: &UTMatrix,
    x: &RingElem,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(RingElem, RingElem, bool)> {
    let n = m.n();
    if !(1 <= i && i < j && j < k && k <= n) {
        return Err(Error::IndexOutOfRange { i, j: k, n });
    }
    let (lhs, rhs) = match variant {
        1 => {
            let e = UTMatrix::transvection(n, j, k, x)?;
            let lhs = m.commutator(&e)?.projection(i, k)?;
            let rhs = x.mul(&m.projection(i, j)?)?;
            (lhs, rhs)
        }
        2 => {
            let e = UTMatrix::transvection(n, i, j, x)?;
            let lhs = e.commutator(m)?.projection(i, k)?;
            let rhs = x.mul(&m.inv().projection(j, k)?)?.neg();
            (lhs, rhs)
        }
        3 => {
            if (i, j, k) != (n - 2, n - 1, n) {
                return Err(Error::Precondition(
                    "variant 3 fixes (i,j,k) = (n-2, n-1, n)".into(),
                ));
            }
            let e = UTMatrix::transvection(n, n - 2, n - 1, x)?;
            let lhs = e.commutator(m)?.projection(n - 2, n)?;
            let rhs = x.mul(&m.projection(n - 1, n)?)?;
            (lhs, rhs)
        }
        v => return Err(Error::Precondition(format!("unknown variant {v}"))),
    };
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zmat(n: usize, entries: &[((usize, usize), i64)]) -> UTMatrix {
        UTMatrix::from_entries(
            n,
            RingSpec::Integers,
            entries.iter().map(|&(p, v)| (p, BigInt::from(v))),
        )
        .unwrap()
    }

    fn zx(v: i64) -> RingElem {
        RingElem::new(RingSpec::Integers, v)
    }

    #[test]
    fn mul_examples() {
        let a = UTMatrix::transvection(3, 1, 2, &zx(2)).unwrap();
        let b = UTMatrix::transvection(3, 2, 3, &zx(5)).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, zmat(3, &[((1, 2), 2), ((2, 3), 5), ((1, 3), 10)]));

        let id = UTMatrix::identity(3, RingSpec::Integers);
        assert_eq!(a.mul(&id).unwrap(), a);

        let c = UTMatrix::transvection(3, 1, 2, &zx(3)).unwrap();
        assert_eq!(a.mul(&c).unwrap(), UTMatrix::transvection(3, 1, 2, &zx(5)).unwrap());
    }

    #[test]
    fn inv_examples() {
        let m = zmat(3, &[((1, 2), 2), ((1, 3), 3), ((2, 3), 5)]);
        let inv = m.inv();
        assert_eq!(inv, zmat(3, &[((1, 2), -2), ((1, 3), 7), ((2, 3), -5)]));
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(UTMatrix::identity(4, RingSpec::Integers).inv().is_identity());
    }

    #[test]
    fn inv_last_superdiagonal_negates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 4, 5] {
            for _ in 0..100 {
                let m = UTMatrix::random(n, RingSpec::Integers, &mut rng, 9);
                assert_eq!(m.inv().entry(n - 1, n), -m.entry(n - 1, n));
            }
        }
    }

    #[test]
    fn transvection_examples() {
        let e = UTMatrix::transvection(3, 2, 3, &zx(5)).unwrap();
        assert_eq!(e.entry(2, 3), BigInt::from(5));
        assert_eq!(e.entry(1, 2), BigInt::from(0));
        assert!(UTMatrix::transvection(3, 1, 3, &zx(0)).unwrap().is_identity());

        let z2 = RingSpec::residues(2).unwrap();
        let e = UTMatrix::transvection(3, 1, 2, &RingElem::one(z2)).unwrap();
        assert!(e.mul(&e).unwrap().is_identity());
        assert!(!e.is_identity());
    }

    #[test]
    fn commutator_examples() {
        let a = UTMatrix::transvection(3, 1, 2, &zx(1)).unwrap();
        let b = UTMatrix::transvection(3, 2, 3, &zx(1)).unwrap();
        assert_eq!(
            a.commutator(&b).unwrap(),
            UTMatrix::transvection(3, 1, 3, &zx(1)).unwrap()
        );
        assert!(a.commutator(&a).unwrap().is_identity());
        let id = UTMatrix::identity(3, RingSpec::Integers);
        assert!(a.commutator(&id).unwrap().is_identity());
    }

    #[test]
    fn identity_variants() {
        let m = zmat(3, &[((1, 2), 2), ((1, 3), 3), ((2, 3), 5)]);
        let (l, r, eq) = commutator_identity(1, &m, &zx(4), 1, 2, 3).unwrap();
        assert!(eq);
        assert_eq!(l, zx(8));
        assert_eq!(r, zx(8));

        let (l, r, eq) = commutator_identity(2, &m, &zx(4), 1, 2, 3).unwrap();
        assert!(eq);
        assert_eq!(l, zx(20));
        assert_eq!(r, zx(20));

        let (l, _, eq) = commutator_identity(3, &m, &zx(2), 1, 2, 3).unwrap();
        assert!(eq);
        assert_eq!(l, zx(10));
    }

    #[test]
    fn projection_examples() {
        let e = UTMatrix::transvection(3, 1, 3, &zx(7)).unwrap();
        assert_eq!(e.projection(1, 3).unwrap(), zx(7));
        let id = UTMatrix::identity(3, RingSpec::Integers);
        assert_eq!(id.projection(1, 2).unwrap(), zx(0));
        let a = UTMatrix::transvection(3, 1, 2, &zx(2)).unwrap();
        let b = UTMatrix::transvection(3, 2, 3, &zx(5)).unwrap();
        assert_eq!(a.mul(&b).unwrap().projection(1, 3).unwrap(), zx(10));
    }

    #[test]
    fn membership_examples() {
        let e13 = UTMatrix::transvection(3, 1, 3, &zx(7)).unwrap();
        assert!(SubgroupSpec::Center.contains(&e13).unwrap());

        let e12 = UTMatrix::transvection(3, 1, 2, &zx(1)).unwrap();
        assert!(!SubgroupSpec::Derived.contains(&e12).unwrap());

        let m = zmat(3, &[((1, 2), 2), ((1, 3), 3), ((2, 3), 5)]);
        let spec = SubgroupSpec::graded_congruence(vec![2, 1]).unwrap();
        assert!(!spec.contains(&m).unwrap(), "2 does not divide m23 = 5");
    }

    #[test]
    fn graded_closure_rejects() {
        assert!(SubgroupSpec::graded_congruence(vec![2, 8]).is_err());
        assert!(SubgroupSpec::graded_congruence(vec![2, 4]).is_ok());
        assert!(SubgroupSpec::graded_congruence(vec![0, 0]).is_ok());
        // level-2 forced zero under nonzero level-1 cross terms
        assert!(SubgroupSpec::graded_congruence(vec![2, 0]).is_err());
    }

    #[test]
    fn enumerate_sizes() {
        assert_eq!(enumerate_group(3, 2, 1 << 20).unwrap().len(), 8);
        assert_eq!(enumerate_group(3, 4, 1 << 20).unwrap().len(), 64);
        assert_eq!(enumerate_group(4, 2, 1 << 20).unwrap().len(), 64);
        assert!(matches!(
            enumerate_group(5, 64, 1 << 20),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn saturate_examples() {
        let one_param = SubgroupSpec::OneParam(1, 2);
        let h = one_param.members(3, 4, 1 << 20).unwrap();
        let id = UTMatrix::identity(3, RingSpec::residues(4).unwrap());
        let sat = saturate(&BTreeSet::from([id]), &h).unwrap();
        assert_eq!(sat.len(), 4);
        assert!(sat.iter().all(|m| one_param.contains(m).unwrap()));

        let grad = SubgroupSpec::graded_congruence(vec![2, 2]).unwrap();
        let u: BTreeSet<_> = grad.members(3, 4, 1 << 20).unwrap().into_iter().collect();
        let z = SubgroupSpec::Center.members(3, 4, 1 << 20).unwrap();
        let sat = saturate(&u, &z).unwrap();
        let expected = SubgroupSpec::graded_congruence(vec![2, 1]).unwrap();
        for m in enumerate_group(3, 4, 1 << 20).unwrap() {
            assert_eq!(sat.contains(&m), expected.contains(&m).unwrap());
        }

        assert!(saturate(&BTreeSet::new(), &h).unwrap().is_empty());
    }

    #[test]
    fn literal_round_trip() {
        let m = zmat(3, &[((1, 2), 2), ((1, 3), 3), ((2, 3), 5)]);
        assert_eq!(m.to_string(), "ut(3; 1,2=2; 1,3=3; 2,3=5)");
        assert_eq!("ut(3; 1,2=2; 1,3=3; 2,3=5)".parse::<UTMatrix>().unwrap(), m);
        assert_eq!("ut(4)".parse::<UTMatrix>().unwrap(), UTMatrix::identity(4, RingSpec::Integers));
    }

    #[test]
    fn center_brute_force_matches_corner() {
        for n in [3usize, 4] {
            for m in [2u64, 3] {
                let all = enumerate_group(n, m, 1 << 20).unwrap();
                let center = brute_force_center(&all).unwrap();
                let corner = SubgroupSpec::OneParam(1, n);
                assert_eq!(center.len() as u64, m);
                assert!(center.iter().all(|x| corner.contains(x).unwrap()));
            }
        }
    }

    #[test]
    fn derived_brute_force_matches_filtration() {
        for m in [2u64, 3, 4] {
            let all = enumerate_group(3, m, 1 << 20).unwrap();
            let derived = brute_force_derived(&all).unwrap();
            let filt = SubgroupSpec::Filtration(1);
            for x in &all {
                assert_eq!(derived.contains(x), filt.contains(x).unwrap());
            }
        }
    }
}
