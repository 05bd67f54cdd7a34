//! Sparse multivariate polynomials over the rationals with a positive
//! weight grading.
//!
//! Terms are stored in descending order of the global monomial order
//! (weighted degree first, reverse lexicographic tie-break), so the first
//! stored term is always the leading term.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse_polynomial;

/// Exact coefficient type.
pub type Coeff = BigRational;

pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Coeff {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Weighted degree of a monomial, module element or Koszul element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedDegree(pub u32);

/// The ambient ring `K[x_1..x_n]` with `deg x_i = a_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl RingSpec {
    pub fn new<S: Into<String>>(names: Vec<S>, weights: Vec<u32>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyRing);
        }
        if names.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                got: weights.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
            if weights[i] == 0 {
                return Err(Error::NonPositiveWeight { name: name.clone() });
            }
        }
        Ok(RingSpec { names, weights })
    }

    /// Ring with unit weights and the given variable names.
    pub fn standard(names: &[&str]) -> Self {
        Self::new(names.to_vec(), vec![1; names.len()]).expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: exps.len(),
            });
        }
        let deg = exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum();
        Ok(Monomial {
            deg,
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            deg: 0,
            exps: vec![0; self.nvars()].into_boxed_slice(),
        }
    }

    pub fn var_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.nvars()];
        exps[i] = 1;
        Monomial {
            deg: self.weights[i],
            exps: exps.into_boxed_slice(),
        }
    }

    /// `Σ exponents[i]·a_i`, checked against the ring dimension.
    pub fn weighted_degree(&self, m: &Monomial) -> Result<GradedDegree> {
        if m.exps.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: m.exps.len(),
            });
        }
        Ok(GradedDegree(
            m.exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum(),
        ))
    }

    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let exps: Vec<u32> = a
            .exps
            .iter()
            .zip(b.exps.iter())
            .map(|(x, y)| *x.max(y))
            .collect();
        self.monomial(exps).expect("same arity")
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::from_monomial(self.var_monomial(i), Coeff::one())
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        Polynomial::from_monomial(self.one(), c)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    /// All monomials of weighted degree `d`, in descending term order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(ring: &RingSpec, i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = ring.nvars();
            if i == n - 1 {
                let w = ring.weights[i];
                if left.is_multiple_of(w) {
                    exps[i] = left / w;
                    out.push(ring.monomial(exps.clone()).expect("arity"));
                }
                exps[i] = 0;
                return;
            }
            let w = ring.weights[i];
            for e in 0..=left / w {
                exps[i] = e;
                rec(ring, i + 1, left - e * w, exps, out);
            }
            exps[i] = 0;
        }
        rec(self, 0, d, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn partial_derivative(&self, f: &Polynomial, i: usize) -> Result<Polynomial> {
        if i >= self.nvars() {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars(),
            });
        }
        let w = self.weights[i];
        let terms = f.terms.iter().filter_map(|(m, c)| {
            let e = m.exps[i];
            (e > 0).then(|| {
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                (
                    Monomial {
                        deg: m.deg - w,
                        exps,
                    },
                    c * rat(i64::from(e)),
                )
            })
        });
        Ok(Polynomial::from_terms(f.nvars, terms))
    }

    /// Weighted Euler operator `Σ a_i x_i ∂f/∂x_i`; equals `deg(f)·f` for
    /// homogeneous `f`.
    pub fn euler_apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: f.nvars,
            });
        }
        if f.homogeneity() == Homogeneity::Mixed {
            return Err(Error::NotHomogeneous(self.format(f)));
        }
        let mut acc = self.zero();
        for i in 0..self.nvars() {
            let d = self.partial_derivative(f, i)?;
            let term = d.mul_monomial(&self.var_monomial(i), &rat(i64::from(self.weights[i])));
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        f.display(self).to_string()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(self, text)
    }
}

/// Exponent vector with its cached weighted degree.
///
/// Ordered by weighted degree, then reverse lexicographically: among equal
/// degrees the monomial with the smaller exponent in the last differing
/// variable is larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    Of(GradedDegree),
    Mixed,
}

/// Sparse polynomial; terms sorted descending, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn from_monomial(m: Monomial, c: Coeff) -> Self {
        let nvars = m.exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(m, c)],
        }
    }

    /// Canonicalises an arbitrary term list: merges duplicates, drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.exps.len(), nvars);
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        Polynomial {
            nvars,
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Constant term if this polynomial is a nonzero constant.
    pub fn as_constant(&self) -> Option<&Coeff> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some((first, _)) = self.terms.first() else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(m, _)| m.deg == first.deg) {
            Homogeneity::Of(GradedDegree(first.deg))
        } else {
            Homogeneity::Mixed
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.homogeneity() {
            Homogeneity::Of(GradedDegree(d)) => Some(d),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·m·self`; monomial multiplication preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// `self - c·m·other` in one merge pass.
    pub fn sub_scaled(&self, other: &Polynomial, m: &Monomial, c: &Coeff) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(t, x)| (t.mul(m), x * c))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, x) = b.next().unwrap();
                    out.push((t, -x));
                }
                (Some((ta, _)), Some((tb, _))) => match ta.cmp(tb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, x) = b.next().unwrap();
                        out.push((t, -x));
                    }
                    Ordering::Equal => {
                        let (t, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let s = x - y;
                        if !s.is_zero() {
                            out.push((t.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::from_monomial(
            Monomial {
                deg: 0,
                exps: vec![0; self.nvars].into_boxed_slice(),
            },
            Coeff::one(),
        );
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Coeff)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Appends a term smaller than every stored term.
    pub(crate) fn push_trailing(&mut self, m: Monomial, c: Coeff) {
        debug_assert!(self.terms.last().is_none_or(|(t, _)| *t > m));
        if !c.is_zero() {
            self.terms.push((m, c));
        }
    }

    /// `true` when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> DisplayPoly<'a> {
        DisplayPoly { poly: self, ring }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let one = Monomial {
            deg: 0,
            exps: vec![0; rhs.nvars].into_boxed_slice(),
        };
        self.sub_scaled(rhs, &one, &-Coeff::one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let one = Monomial {
            deg: 0,
            exps: vec![0; rhs.nvars].into_boxed_slice(),
        };
        self.sub_scaled(rhs, &one, &Coeff::one())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: acc
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

pub struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    ring: &'a RingSpec,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> RingSpec {
        RingSpec::standard(&["x", "y"])
    }

    #[test]
    fn weighted_degree_examples() {
        let r = xy();
        assert_eq!(
            r.weighted_degree(&r.monomial(vec![1, 0]).unwrap()).unwrap(),
            GradedDegree(1)
        );
        assert_eq!(r.weighted_degree(&r.one()).unwrap(), GradedDegree(0));
        let w = RingSpec::new(vec!["x", "y"], vec![1, 2]).unwrap();
        assert_eq!(
            w.weighted_degree(&w.monomial(vec![2, 1]).unwrap()).unwrap(),
            GradedDegree(4)
        );
        let three = RingSpec::standard(&["x", "y", "z"]);
        assert!(matches!(
            r.weighted_degree(&three.one()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(
            RingSpec::new(vec!["x", "y"], vec![1, 0]),
            Err(Error::NonPositiveWeight { name: "y".into() })
        );
        assert_eq!(
            RingSpec::new(vec!["x", "x"], vec![1, 1]),
            Err(Error::DuplicateVariable("x".into()))
        );
        assert_eq!(
            RingSpec::new(Vec::<String>::new(), vec![]),
            Err(Error::EmptyRing)
        );
    }

    #[test]
    fn homogeneity_examples() {
        let r = xy();
        assert_eq!(
            r.parse("x^2 + x*y").unwrap().homogeneity(),
            Homogeneity::Of(GradedDegree(2))
        );
        assert_eq!(
            r.parse("x + y^2").unwrap().homogeneity(),
            Homogeneity::Mixed
        );
        let w = RingSpec::new(vec!["x", "y"], vec![2, 1]).unwrap();
        assert_eq!(
            w.parse("x + y^2").unwrap().homogeneity(),
            Homogeneity::Of(GradedDegree(2))
        );
        assert_eq!(r.zero().homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn derivative_examples() {
        let r = xy();
        let d = |s: &str, i| r.format(&r.partial_derivative(&r.parse(s).unwrap(), i).unwrap());
        assert_eq!(d("x^2", 0), "2*x");
        assert_eq!(d("5", 0), "0");
        assert_eq!(d("x*y^2", 1), "2*x*y");
        assert!(matches!(
            r.partial_derivative(&r.var(0), 2),
            Err(Error::VariableOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn euler_examples() {
        let r = xy();
        let f = r.parse("x^2").unwrap();
        assert_eq!(r.euler_apply(&f).unwrap(), f.scale(&rat(2)));
        let f = r.parse("x*y").unwrap();
        assert_eq!(r.euler_apply(&f).unwrap(), f.scale(&rat(2)));
        // 1·x·4x^3 + 2·y·2y = 4x^4 + 4y^2
        let w = RingSpec::new(vec!["x", "y"], vec![1, 2]).unwrap();
        let f = w.parse("x^4 + y^2").unwrap();
        assert_eq!(w.format(&w.euler_apply(&f).unwrap()), "4*x^4 + 4*y^2");
        assert!(matches!(
            r.euler_apply(&r.parse("x + y^2").unwrap()),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn ring_operation_examples() {
        let r = xy();
        let p = |s: &str| r.parse(s).unwrap();
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        let f = p("3*x^2 - 1/2*y");
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(p("2*x").scale(&ratio(1, 2)), p("x"));
    }

    #[test]
    fn degrevlex_order() {
        let r = RingSpec::standard(&["x", "y", "z"]);
        let m = |e: Vec<u32>| r.monomial(e).unwrap();
        // x^2 > xy > y^2 > xz > yz > z^2
        let mut ms = [
            m(vec![0, 0, 2]),
            m(vec![1, 1, 0]),
            m(vec![0, 1, 1]),
            m(vec![2, 0, 0]),
            m(vec![1, 0, 1]),
            m(vec![0, 2, 0]),
        ];
        ms.sort_by(|a, b| b.cmp(a));
        let got: Vec<_> = ms.iter().map(|m| m.exps().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(r.monomials_of_degree(2).len(), 6);
    }
}
