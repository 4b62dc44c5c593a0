//! Generalized Heisenberg groups H(w) = (A ⊕ E) ⋊ F for a biadditive map
//! w: E × F -> A given in structure-constant (tensor) form over free modules,
//! together with the degree-3 unitriangular isomorphism, the switch
//! isomorphism, and the induced affine action on A × E.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::RingSpec;
use crate::ut::UTMatrix;

/// w(x,y)_r = sum_{p,q} c_{p,q,r} x_p y_q, with x in K^e and y in K^f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiadditiveMap {
    ring: RingSpec,
    dim_e: usize,
    dim_f: usize,
    dim_a: usize,
    /// tensor[p][q][r] = c_{p,q,r}
    tensor: Vec<Vec<Vec<BigInt>>>,
}

impl BiadditiveMap {
    pub fn new(
        ring: RingSpec,
        dim_e: usize,
        dim_f: usize,
        dim_a: usize,
        tensor: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        if tensor.len() != dim_e
            || tensor.iter().any(|row| {
                row.len() != dim_f || row.iter().any(|cell| cell.len() != dim_a)
            })
        {
            return Err(Error::DimensionMismatch(
                "tensor shape does not match (e, f, a)".into(),
            ));
        }
        let tensor = tensor
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| cell.into_iter().map(|c| ring.reduce(c)).collect())
                    .collect()
            })
            .collect();
        Ok(BiadditiveMap {
            ring,
            dim_e,
            dim_f,
            dim_a,
            tensor,
        })
    }

    /// Ring multiplication m(x,y) = x*y: e = f = a = 1, c = 1.
    pub fn multiplication(ring: RingSpec) -> Self {
        BiadditiveMap::new(ring, 1, 1, 1, vec![vec![vec![BigInt::from(1)]]]).unwrap()
    }

    /// The dot-product family w_n(x,y) = sum_i x_i y_i.
    pub fn dot(ring: RingSpec, n: usize) -> Self {
        let tensor = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| vec![BigInt::from(u8::from(p == q))])
                    .collect()
            })
            .collect();
        BiadditiveMap::new(ring, n, n, 1, tensor).unwrap()
    }

    /// The identically-zero map of the given shape.
    pub fn zero(ring: RingSpec, dim_e: usize, dim_f: usize, dim_a: usize) -> Self {
        let tensor = vec![vec![vec![BigInt::zero(); dim_a]; dim_f]; dim_e];
        BiadditiveMap::new(ring, dim_e, dim_f, dim_a, tensor).unwrap()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_e, self.dim_f, self.dim_a)
    }

    pub fn is_multiplication(&self) -> bool {
        self.dims() == (1, 1, 1)
            && self.tensor[0][0][0] == self.ring.reduce(BigInt::from(1))
    }

    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.dim_e || y.len() != self.dim_f {
            return Err(Error::DimensionMismatch(format!(
                "eval got ({}, {}), map wants ({}, {})",
                x.len(),
                y.len(),
                self.dim_e,
                self.dim_f
            )));
        }
        let mut out = vec![BigInt::zero(); self.dim_a];
        for (p, xp) in x.iter().enumerate() {
            for (q, yq) in y.iter().enumerate() {
                for (r, slot) in out.iter_mut().enumerate() {
                    *slot += &self.tensor[p][q][r] * xp * yq;
                }
            }
        }
        Ok(out.into_iter().map(|v| self.ring.reduce(v)).collect())
    }

    /// w◁(f,x) = w(x,f): the same tensor with the first two slots swapped.
    pub fn switched(&self) -> BiadditiveMap {
        let tensor = (0..self.dim_f)
            .map(|q| {
                (0..self.dim_e)
                    .map(|p| self.tensor[p][q].clone())
                    .collect()
            })
            .collect();
        BiadditiveMap::new(self.ring, self.dim_f, self.dim_e, self.dim_a, tensor).unwrap()
    }

    /// Exact separatedness over a finite ring; over Z, exhaustive up to the
    /// entry bound (returned flag says whether the verdict is exact).
    pub fn is_separated(&self, bound: i64) -> Result<SeparationVerdict> {
        let exact = self.ring.is_finite();
        let e_vectors = self.vectors(self.dim_e, bound)?;
        let f_vectors = self.vectors(self.dim_f, bound)?;
        let zero_a = vec![BigInt::zero(); self.dim_a];
        for x in &e_vectors {
            if x.iter().all(|v| v.is_zero()) {
                continue;
            }
            if f_vectors.iter().all(|f| self.eval(x, f).unwrap() == zero_a) {
                return Ok(SeparationVerdict {
                    separated: false,
                    exact,
                    witness: Some(Witness::LeftPoint(x.clone())),
                });
            }
        }
        for f in &f_vectors {
            if f.iter().all(|v| v.is_zero()) {
                continue;
            }
            if e_vectors.iter().all(|x| self.eval(x, f).unwrap() == zero_a) {
                return Ok(SeparationVerdict {
                    separated: false,
                    exact,
                    witness: Some(Witness::RightPoint(f.clone())),
                });
            }
        }
        Ok(SeparationVerdict {
            separated: true,
            exact,
            witness: None,
        })
    }

    fn vectors(&self, len: usize, bound: i64) -> Result<Vec<Vec<BigInt>>> {
        let scalars: Vec<BigInt> = match self.ring {
            RingSpec::Residues(m) => (0..m).map(BigInt::from).collect(),
            RingSpec::Integers => (-bound..=bound).map(BigInt::from).collect(),
        };
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * scalars.len());
            for v in &out {
                for s in &scalars {
                    let mut w = v.clone();
                    w.push(s.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Nonzero x0 with w(x0, -) identically zero over the search range.
    LeftPoint(Vec<BigInt>),
    /// Nonzero f0 with w(-, f0) identically zero over the search range.
    RightPoint(Vec<BigInt>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationVerdict {
    pub separated: bool,
    /// false when the verdict only covers a bounded search over Z
    pub exact: bool,
    pub witness: Option<Witness>,
}

/// A point (a, x, f) of H(w) = (A ⊕ E) ⋊ F, entries canonically reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElement {
    pub a: Vec<BigInt>,
    pub x: Vec<BigInt>,
    pub f: Vec<BigInt>,
}

impl HeisenbergElement {
    pub fn new(w: &BiadditiveMap, a: Vec<BigInt>, x: Vec<BigInt>, f: Vec<BigInt>) -> Result<Self> {
        if a.len() != w.dim_a || x.len() != w.dim_e || f.len() != w.dim_f {
            return Err(Error::DimensionMismatch(format!(
                "element shape ({}, {}, {}) does not match map dims ({}, {}, {})",
                a.len(),
                x.len(),
                f.len(),
                w.dim_a,
                w.dim_e,
                w.dim_f
            )));
        }
        let reduce = |v: Vec<BigInt>| v.into_iter().map(|c| w.ring.reduce(c)).collect();
        Ok(HeisenbergElement {
            a: reduce(a),
            x: reduce(x),
            f: reduce(f),
        })
    }

    pub fn identity(w: &BiadditiveMap) -> Self {
        HeisenbergElement {
            a: vec![BigInt::zero(); w.dim_a],
            x: vec![BigInt::zero(); w.dim_e],
            f: vec![BigInt::zero(); w.dim_f],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
            && self.x.iter().all(Zero::is_zero)
            && self.f.iter().all(Zero::is_zero)
    }

    pub fn random<R: Rng>(w: &BiadditiveMap, rng: &mut R, bound: i64) -> Self {
        let mut draw = |len: usize| -> Vec<BigInt> {
            (0..len)
                .map(|_| match w.ring {
                    RingSpec::Integers => BigInt::from(rng.gen_range(-bound..=bound)),
                    RingSpec::Residues(m) => BigInt::from(rng.gen_range(0..m)),
                })
                .collect()
        };
        let a = draw(w.dim_a);
        let x = draw(w.dim_e);
        let f = draw(w.dim_f);
        HeisenbergElement::new(w, a, x, f).expect("shapes match by construction")
    }
}

fn vec_add(w: &BiadditiveMap, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    u.iter()
        .zip(v)
        .map(|(a, b)| w.ring.reduce(a + b))
        .collect()
}

fn vec_neg(w: &BiadditiveMap, u: &[BigInt]) -> Vec<BigInt> {
    u.iter().map(|a| w.ring.reduce(-a)).collect()
}

/// Group law: (a1 + a2 + w(x2, f1), x1 + x2, f1 + f2).
pub fn h_mul(
    u1: &HeisenbergElement,
    u2: &HeisenbergElement,
    w: &BiadditiveMap,
) -> Result<HeisenbergElement> {
    let cross = w.eval(&u2.x, &u1.f)?;
    let a = vec_add(w, &vec_add(w, &u1.a, &u2.a), &cross);
    let x = vec_add(w, &u1.x, &u2.x);
    let f = vec_add(w, &u1.f, &u2.f);
    HeisenbergElement::new(w, a, x, f)
}

/// Inverse: (-a + w(x, f), -x, -f).
pub fn h_inv(u: &HeisenbergElement, w: &BiadditiveMap) -> Result<HeisenbergElement> {
    let cross = w.eval(&u.x, &u.f)?;
    let a = vec_add(w, &vec_neg(w, &u.a), &cross);
    HeisenbergElement::new(w, a, vec_neg(w, &u.x), vec_neg(w, &u.f))
}

/// Commutator: both the product form u1 u2 u1^{-1} u2^{-1} and the closed
/// form (w(x2,f1) - w(x1,f2), 0, 0); errors if they disagree.
pub fn h_comm(
    u1: &HeisenbergElement,
    u2: &HeisenbergElement,
    w: &BiadditiveMap,
) -> Result<HeisenbergElement> {
    let product = h_mul(&h_mul(u1, u2, w)?, &h_mul(&h_inv(u1, w)?, &h_inv(u2, w)?, w)?, w)?;
    let lhs = w.eval(&u2.x, &u1.f)?;
    let rhs = w.eval(&u1.x, &u2.f)?;
    let a: Vec<BigInt> = lhs
        .iter()
        .zip(&rhs)
        .map(|(l, r)| w.ring.reduce(l - r))
        .collect();
    let closed = HeisenbergElement::new(
        w,
        a,
        vec![BigInt::zero(); w.dim_e],
        vec![BigInt::zero(); w.dim_f],
    )?;
    if product != closed {
        return Err(Error::Precondition(format!(
            "commutator closed form disagrees with product form at {u1} , {u2}"
        )));
    }
    Ok(closed)
}

/// H(m) -> UT(3,K): m12 = f, m23 = x, m13 = a.
pub fn to_ut3(u: &HeisenbergElement, w: &BiadditiveMap) -> Result<UTMatrix> {
    if !w.is_multiplication() {
        return Err(Error::Precondition(
            "to_ut3 requires the ring-multiplication map".into(),
        ));
    }
    UTMatrix::from_entries(
        3,
        w.ring,
        [
            ((1, 2), u.f[0].clone()),
            ((2, 3), u.x[0].clone()),
            ((1, 3), u.a[0].clone()),
        ],
    )
}

/// Switch isomorphism s(a,x,f) = (w(x,f) - a, -f, -x) into H(w◁).
pub fn switch_iso(u: &HeisenbergElement, w: &BiadditiveMap) -> Result<HeisenbergElement> {
    let cross = w.eval(&u.x, &u.f)?;
    let a: Vec<BigInt> = cross
        .iter()
        .zip(&u.a)
        .map(|(c, a)| w.ring.reduce(c - a))
        .collect();
    HeisenbergElement::new(&w.switched(), a, vec_neg(w, &u.f), vec_neg(w, &u.x))
}

/// The action w∇(f, (a, x)) = (a + w(x, f), x) of F on A × E.
pub fn nabla_action(
    f: &[BigInt],
    a: &[BigInt],
    x: &[BigInt],
    w: &BiadditiveMap,
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if f.len() != w.dim_f || a.len() != w.dim_a || x.len() != w.dim_e {
        return Err(Error::DimensionMismatch("nabla_action shapes".into()));
    }
    let cross = w.eval(x, f)?;
    Ok((
        vec_add(w, a, &cross),
        x.iter().map(|v| w.ring.reduce(v.clone())).collect(),
    ))
}

/// Every element of H(w) over a finite ring, deterministic order.
pub fn enumerate_elements(w: &BiadditiveMap, budget: u64) -> Result<Vec<HeisenbergElement>> {
    let m = match w.ring {
        RingSpec::Residues(m) => m,
        RingSpec::Integers => return Err(Error::InfiniteRing(w.ring)),
    };
    let total_dims = (w.dim_a + w.dim_e + w.dim_f) as u32;
    let size = (m as u128).checked_pow(total_dims).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: size,
            budget,
        });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut digits = vec![0u64; total_dims as usize];
    loop {
        let a = digits[..w.dim_a].iter().map(|&v| BigInt::from(v)).collect();
        let x = digits[w.dim_a..w.dim_a + w.dim_e]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        let f = digits[w.dim_a + w.dim_e..]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        out.push(HeisenbergElement::new(w, a, x, f)?);
        let mut k = digits.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < m {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for HeisenbergElement {
    /// Literal form `h(a=1; x=2; f=3)`; vector slots are comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h(a={}; x={}; f={})",
            fmt_vec(&self.a),
            fmt_vec(&self.x),
            fmt_vec(&self.f)
        )
    }
}

impl FromStr for HeisenbergElement {
    type Err = Error;

    /// Parses the literal form with integer entries (not yet reduced to a
    /// ring; pair with a map via HeisenbergElement::new to type it).
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("h(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad element literal `{s}`")))?;
        let mut a = None;
        let mut x = None;
        let mut f = None;
        for part in body.split(';') {
            let part = part.trim();
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad slot `{part}`")))?;
            let vec: Result<Vec<BigInt>> = val
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad entry `{c}`")))
                })
                .collect();
            match key.trim() {
                "a" => a = Some(vec?),
                "x" => x = Some(vec?),
                "f" => f = Some(vec?),
                other => return Err(Error::Parse(format!("unknown slot `{other}`"))),
            }
        }
        match (a, x, f) {
            (Some(a), Some(x), Some(f)) => Ok(HeisenbergElement { a, x, f }),
            _ => Err(Error::Parse("element literal needs a, x and f slots".into())),
        }
    }
}

impl fmt::Display for BiadditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_multiplication() {
            return write!(f, "m({})", self.ring);
        }
        if *self == BiadditiveMap::dot(self.ring, self.dim_e) {
            return write!(f, "w_n({}, n={})", self.ring, self.dim_e);
        }
        write!(
            f,
            "tensor({}, e={}, f={}, a={})",
            self.ring, self.dim_e, self.dim_f, self.dim_a
        )
    }
}

impl FromStr for BiadditiveMap {
    type Err = Error;

    /// Parses `m(Z)`, `m(Z/4)` and `w_n(Z/4, n=2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix("m(").and_then(|s| s.strip_suffix(')')) {
            return Ok(BiadditiveMap::multiplication(body.parse()?));
        }
        if let Some(body) = s.strip_prefix("w_n(").and_then(|s| s.strip_suffix(')')) {
            let (ring, n) = body
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad map literal `{s}`")))?;
            let n = n
                .trim()
                .strip_prefix("n=")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad dimension in `{s}`")))?;
            return Ok(BiadditiveMap::dot(ring.trim().parse()?, n));
        }
        Err(Error::Parse(format!("bad map literal `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hz(a: i64, x: i64, f: i64) -> HeisenbergElement {
        HeisenbergElement {
            a: vec![BigInt::from(a)],
            x: vec![BigInt::from(x)],
            f: vec![BigInt::from(f)],
        }
    }

    #[test]
    fn mul_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        assert_eq!(h_mul(&hz(1, 2, 3), &hz(4, 5, 6), &w).unwrap(), hz(20, 7, 9));
        let u = hz(7, -1, 4);
        assert_eq!(h_mul(&u, &HeisenbergElement::identity(&w), &w).unwrap(), u);

        let w5 = BiadditiveMap::multiplication(RingSpec::residues(5).unwrap());
        let u1 = HeisenbergElement::new(&w5, vec![1.into()], vec![2.into()], vec![3.into()]).unwrap();
        let u2 = HeisenbergElement::new(&w5, vec![4.into()], vec![5.into()], vec![6.into()]).unwrap();
        let p = h_mul(&u1, &u2, &w5).unwrap();
        assert_eq!(p, HeisenbergElement::new(&w5, vec![0.into()], vec![2.into()], vec![4.into()]).unwrap());
    }

    #[test]
    fn inv_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        let u = hz(1, 2, 3);
        assert_eq!(h_inv(&u, &w).unwrap(), hz(5, -2, -3));
        assert!(h_mul(&u, &h_inv(&u, &w).unwrap(), &w).unwrap().is_identity());
        assert!(h_inv(&HeisenbergElement::identity(&w), &w).unwrap().is_identity());
        assert_eq!(h_inv(&hz(9, 0, 0), &w).unwrap(), hz(-9, 0, 0));
    }

    #[test]
    fn comm_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        assert_eq!(h_comm(&hz(0, 2, 3), &hz(0, 5, 7), &w).unwrap(), hz(1, 0, 0));
        let u = hz(3, 1, -2);
        assert!(h_comm(&u, &u, &w).unwrap().is_identity());
        assert!(h_comm(&hz(5, 0, 0), &u, &w).unwrap().is_identity());
    }

    #[test]
    fn separation_examples() {
        let m4 = BiadditiveMap::multiplication(RingSpec::residues(4).unwrap());
        assert!(m4.is_separated(0).unwrap().separated);

        let z = BiadditiveMap::zero(RingSpec::Integers, 1, 1, 1);
        let v = z.is_separated(3).unwrap();
        assert!(!v.separated);
        assert!(matches!(v.witness, Some(Witness::LeftPoint(_))));

        let w2 = BiadditiveMap::dot(RingSpec::residues(2).unwrap(), 2);
        assert!(w2.is_separated(0).unwrap().separated);

        let mz = BiadditiveMap::multiplication(RingSpec::Integers);
        let v = mz.is_separated(3).unwrap();
        assert!(v.separated && !v.exact);
    }

    #[test]
    fn ut3_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        let m = to_ut3(&hz(3, 5, 2), &w).unwrap();
        assert_eq!(m, "ut(3; 1,2=2; 1,3=3; 2,3=5)".parse().unwrap());
        assert!(to_ut3(&HeisenbergElement::identity(&w), &w).unwrap().is_identity());
        let c = to_ut3(&hz(4, 0, 0), &w).unwrap();
        assert_eq!(c, "ut(3; 1,3=4)".parse().unwrap());
    }

    #[test]
    fn ut3_homomorphism_random() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = HeisenbergElement::random(&w, &mut rng, 9);
            let v = HeisenbergElement::random(&w, &mut rng, 9);
            let lhs = to_ut3(&h_mul(&u, &v, &w).unwrap(), &w).unwrap();
            let rhs = to_ut3(&u, &w).unwrap().mul(&to_ut3(&v, &w).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn switch_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        assert_eq!(switch_iso(&hz(1, 2, 3), &w).unwrap(), hz(5, -3, -2));
        assert!(switch_iso(&HeisenbergElement::identity(&w), &w).unwrap().is_identity());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let back = w.switched();
        for _ in 0..100 {
            let u = HeisenbergElement::random(&w, &mut rng, 9);
            let v = HeisenbergElement::random(&w, &mut rng, 9);
            // s is an (anti-free) homomorphism into H(w◁)
            let lhs = switch_iso(&h_mul(&u, &v, &w).unwrap(), &w).unwrap();
            let rhs = h_mul(&switch_iso(&u, &w).unwrap(), &switch_iso(&v, &w).unwrap(), &back).unwrap();
            assert_eq!(lhs, rhs);
            // involution
            assert_eq!(switch_iso(&switch_iso(&u, &w).unwrap(), &back).unwrap(), u);
        }
    }

    #[test]
    fn nabla_examples() {
        let w = BiadditiveMap::multiplication(RingSpec::Integers);
        let (a, x) = nabla_action(&[3.into()], &[1.into()], &[2.into()], &w).unwrap();
        assert_eq!((a, x), (vec![BigInt::from(7)], vec![BigInt::from(2)]));
        let (a, x) = nabla_action(&[0.into()], &[1.into()], &[2.into()], &w).unwrap();
        assert_eq!((a, x), (vec![BigInt::from(1)], vec![BigInt::from(2)]));
    }

    #[test]
    fn nabla_additive() {
        let w = BiadditiveMap::dot(RingSpec::Integers, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let f: Vec<BigInt> = (0..2).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            let a1 = vec![BigInt::from(rng.gen_range(-9i64..=9))];
            let a2 = vec![BigInt::from(rng.gen_range(-9i64..=9))];
            let x1: Vec<BigInt> = (0..2).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            let x2: Vec<BigInt> = (0..2).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
            let sum_a = vec_add(&w, &a1, &a2);
            let sum_x = vec_add(&w, &x1, &x2);
            let lhs = nabla_action(&f, &sum_a, &sum_x, &w).unwrap();
            let r1 = nabla_action(&f, &a1, &x1, &w).unwrap();
            let r2 = nabla_action(&f, &a2, &x2, &w).unwrap();
            assert_eq!(lhs, (vec_add(&w, &r1.0, &r2.0), vec_add(&w, &r1.1, &r2.1)));
        }
    }

    #[test]
    fn group_axioms_sampled() {
        let maps = [
            BiadditiveMap::multiplication(RingSpec::Integers),
            BiadditiveMap::multiplication(RingSpec::residues(4).unwrap()),
            BiadditiveMap::dot(RingSpec::Integers, 2),
            BiadditiveMap::dot(RingSpec::residues(3).unwrap(), 3),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for w in &maps {
            for _ in 0..250 {
                let u = HeisenbergElement::random(w, &mut rng, 9);
                let v = HeisenbergElement::random(w, &mut rng, 9);
                let t = HeisenbergElement::random(w, &mut rng, 9);
                let lhs = h_mul(&h_mul(&u, &v, w).unwrap(), &t, w).unwrap();
                let rhs = h_mul(&u, &h_mul(&v, &t, w).unwrap(), w).unwrap();
                assert_eq!(lhs, rhs);
                assert!(h_mul(&u, &h_inv(&u, w).unwrap(), w).unwrap().is_identity());
                h_comm(&u, &v, w).unwrap(); // closed form checked internally
            }
        }
    }

    #[test]
    fn brute_force_center_is_a() {
        let w = BiadditiveMap::multiplication(RingSpec::residues(4).unwrap());
        let all = enumerate_elements(&w, 1 << 10).unwrap();
        assert_eq!(all.len(), 64);
        let mut center = Vec::new();
        'outer: for u in &all {
            for v in &all {
                if h_mul(u, v, &w).unwrap() != h_mul(v, u, &w).unwrap() {
                    continue 'outer;
                }
            }
            center.push(u.clone());
        }
        assert_eq!(center.len(), 4);
        for u in &center {
            assert!(u.x.iter().all(Zero::is_zero) && u.f.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn finite_bijectivity() {
        let w = BiadditiveMap::multiplication(RingSpec::residues(4).unwrap());
        let all = enumerate_elements(&w, 1 << 10).unwrap();
        let images: std::collections::BTreeSet<_> =
            all.iter().map(|u| to_ut3(u, &w).unwrap()).collect();
        assert_eq!(images.len(), 64);
        let switched: std::collections::BTreeSet<_> =
            all.iter().map(|u| switch_iso(u, &w).unwrap()).collect();
        assert_eq!(switched.len(), 64);
    }

    #[test]
    fn literals() {
        let u = hz(1, 2, 3);
        assert_eq!(u.to_string(), "h(a=1; x=2; f=3)");
        assert_eq!("h(a=1; x=2; f=3)".parse::<HeisenbergElement>().unwrap(), u);

        let m = "m(Z)".parse::<BiadditiveMap>().unwrap();
        assert_eq!(m, BiadditiveMap::multiplication(RingSpec::Integers));
        assert_eq!(m.to_string(), "m(Z)");
        let w = "w_n(Z/4, n=2)".parse::<BiadditiveMap>().unwrap();
        assert_eq!(w, BiadditiveMap::dot(RingSpec::residues(4).unwrap(), 2));
        assert_eq!(w.to_string(), "w_n(Z/4, n=2)");
    }
}
