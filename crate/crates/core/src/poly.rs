//! Exact scalars and sparse polynomials in four variables.
//!
//! Two variable sets share one representation: the bigraded source ring
//! `k[s,u,t,v]` with `deg(s) = deg(u) = (1,0)` and `deg(t) = deg(v) = (0,1)`,
//! and the target ring `k[T1,T2,T3,T4]` where implicit equations live.
//! Terms are kept in a `BTreeMap` keyed by exponent tuples, so iteration in
//! reverse key order is the canonical descending lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zpoly::{self, ZPoly};

pub use num_rational::BigRational as Rational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A degree in the `Z^2` grading. Comparison is componentwise, so two
/// bidegrees may be incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct Bidegree {
    pub d1: i64,
    pub d2: i64,
}

impl Bidegree {
    pub const fn new(d1: i64, d2: i64) -> Self {
        Bidegree { d1, d2 }
    }

    /// `self >= other` componentwise.
    pub fn dominates(&self, other: &Bidegree) -> bool {
        self.d1 >= other.d1 && self.d2 >= other.d2
    }

    pub fn is_nonnegative(&self) -> bool {
        self.d1 >= 0 && self.d2 >= 0
    }

    /// Dimension of the graded piece `S_(d1,d2)`.
    pub fn piece_dim(&self) -> usize {
        if self.is_nonnegative() {
            (self.d1 as usize + 1) * (self.d2 as usize + 1)
        } else {
            0
        }
    }
}

impl From<[i64; 2]> for Bidegree {
    fn from([d1, d2]: [i64; 2]) -> Self {
        Bidegree::new(d1, d2)
    }
}

impl From<Bidegree> for [i64; 2] {
    fn from(b: Bidegree) -> Self {
        [b.d1, b.d2]
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.d1.cmp(&other.d1), self.d2.cmp(&other.d2)) {
            (a, b) if a == b => Some(a),
            (Ordering::Equal, b) => Some(b),
            (a, Ordering::Equal) => Some(a),
            _ => None,
        }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl Mul<Bidegree> for i64 {
    type Output = Bidegree;
    fn mul(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self * rhs.d1, self * rhs.d2)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Parses `"a,b"` or `"(a,b)"`.
impl FromStr for Bidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let bad = || Error::Input(format!("expected a bidegree 'A,B', got '{s}'"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let d1 = parts[0].parse().map_err(|_| bad())?;
        let d2 = parts[1].parse().map_err(|_| bad())?;
        Ok(Bidegree::new(d1, d2))
    }
}

/// Exponent tuple of a monomial in four variables. The derived ordering is
/// ascending lexicographic; canonical printing walks it in reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; 4];
        e[i] = 1;
        Monomial(e)
    }

    /// Bidegree with `s,u` in the first factor and `t,v` in the second.
    pub fn bidegree(&self) -> Bidegree {
        let e = self.0;
        Bidegree::new((e[0] + e[1]) as i64, (e[2] + e[3]) as i64)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (self.0, other.0);
        Monomial([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 4];
        for i in 0..4 {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    fn write_with(&self, names: &[&str; 4], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &e) in names.iter().zip(self.0.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Names of the four variables a polynomial type is written in.
pub trait VarSet: Clone + Copy + fmt::Debug + PartialEq + Eq + Default + Send + Sync + 'static {
    const NAMES: [&'static str; 4];
}

/// `s, u, t, v` with the bigrading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Suvt;

impl VarSet for Suvt {
    const NAMES: [&'static str; 4] = ["s", "u", "t", "v"];
}

/// `T1..T4`, homogeneous coordinates of the target space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TVars;

impl VarSet for TVars {
    const NAMES: [&'static str; 4] = ["T1", "T2", "T3", "T4"];
}

/// Sparse polynomial over `Q` in four variables. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly<V: VarSet> {
    terms: BTreeMap<Monomial, Rational>,
    _vars: PhantomData<V>,
}

/// Element of the bigraded ring `Q[s,u,t,v]`.
pub type BigradedPoly = Poly<Suvt>;
/// Element of `Q[T1,T2,T3,T4]`.
pub type TPoly = Poly<TVars>;

impl<V: VarSet> Poly<V> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new(), _vars: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Rational::one())
    }

    /// Sums the given terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// First term in canonical order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// True for zero and for polynomials whose terms all share one total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
            _vars: PhantomData,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
            _vars: PhantomData,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational; 4]) -> Rational {
        let mut pows: [Vec<Rational>; 4] = Default::default();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for i in 0..4 {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut pows[i];
                if cache.is_empty() {
                    cache.push(Rational::one());
                }
                while cache.len() <= e {
                    let next = cache.last().unwrap() * &point[i];
                    cache.push(next);
                }
                val *= &cache[e];
            }
            total += val;
        }
        total
    }

    /// Replaces variable `i` by `values[i]` and expands.
    ///
    /// Runs over the integers: each value is scaled to integer coefficients,
    /// the scaling is folded into the coefficients of `self`, and the result
    /// is expanded by nested Horner evaluation.
    pub fn substitute<W: VarSet>(&self, values: &[Poly<W>; 4]) -> Poly<W> {
        if self.is_zero() {
            return Poly::zero();
        }
        let scales: [BigInt; 4] = [0, 1, 2, 3].map(|i| values[i].denominator_lcm());
        let ints = [0, 1, 2, 3].map(|i| {
            ZPoly::from_poly(&values[i].scale(&Rational::from_integer(scales[i].clone())))
        });
        let folded = Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut den = BigInt::one();
            for i in 0..4 {
                den *= num_traits::pow(scales[i].clone(), m.0[i] as usize);
            }
            (*m, c / Rational::from_integer(den))
        }));
        let d = folded.denominator_lcm();
        let zq = ZPoly::from_poly(&folded.scale(&Rational::from_integer(d.clone())));
        zpoly::substitute(&zq, &ints).to_poly(&d)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer multiple with content 1 and positive leading coefficient in
    /// canonical order. Zero maps to zero.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.denominator_lcm();
        let nums: Vec<BigInt> = self.terms.values().map(|c| (c * &l).to_integer()).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if self.leading_term().unwrap().1.is_negative() {
            g = -g;
        }
        Poly {
            terms: self
                .terms
                .keys()
                .zip(nums)
                .map(|(m, n)| (*m, Rational::from_integer(n / &g)))
                .collect(),
            _vars: PhantomData,
        }
    }

    /// Equality up to a nonzero rational factor.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.primitive_part() == other.primitive_part()
    }

    pub fn map_coeffs<F: FnMut(&Rational) -> Rational>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl BigradedPoly {
    /// The bidegree shared by every term.
    pub fn bidegree(&self) -> Result<Bidegree> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        for d in it {
            if d != first {
                return Err(Error::NotBihomogeneous(first, d));
            }
        }
        Ok(first)
    }
}

/// Replaces `T_i` by `values[i]`.
pub fn substitute_t(q: &TPoly, values: &[BigradedPoly; 4]) -> BigradedPoly {
    q.substitute(values)
}

impl<V: VarSet> fmt::Display for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.write_with(&V::NAMES, f)?;
            }
        }
        Ok(())
    }
}

impl<V: VarSet> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<V: VarSet> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<V: VarSet> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<V: VarSet> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            _vars: PhantomData,
        }
    }
}

impl<V: VarSet> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<V: VarSet> $tr for Poly<V> {
            type Output = Poly<V>;
            fn $f(self, rhs: Poly<V>) -> Poly<V> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Four polynomials of a common bidegree defining `P1 x P1 --> P3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    polys: [BigradedPoly; 4],
    bidegree: Bidegree,
}

impl Parametrization {
    pub fn new(polys: [BigradedPoly; 4]) -> Result<Self> {
        let bidegree = polys[0].bidegree()?;
        for p in &polys[1..] {
            let d = p.bidegree()?;
            if d != bidegree {
                return Err(Error::DegreeMismatch { expected: bidegree, found: d });
            }
        }
        Ok(Parametrization { polys, bidegree })
    }

    /// Like [`Parametrization::new`], additionally checking a declared bidegree.
    pub fn with_bidegree(polys: [BigradedPoly; 4], declared: Bidegree) -> Result<Self> {
        let f = Self::new(polys)?;
        if f.bidegree != declared {
            return Err(Error::DegreeMismatch { expected: declared, found: f.bidegree });
        }
        Ok(f)
    }

    pub fn polys(&self) -> &[BigradedPoly; 4] {
        &self.polys
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    /// `(f1(p), .., f4(p))`.
    pub fn image_point(&self, point: &[Rational; 4]) -> [Rational; 4] {
        [0, 1, 2, 3].map(|i| self.polys[i].evaluate(point))
    }
}
