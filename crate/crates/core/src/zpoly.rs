//! Integer polynomials in four variables with packed exponents.
//!
//! This is the arithmetic kernel under the determinant, gcd and substitution
//! routines: coefficients stay in `Z`, so exact division never needs rational
//! normalisation. Exponents are packed 16 bits per variable into a `u64` with
//! the first variable in the high bits, which makes integer order on keys
//! coincide with lexicographic order on exponent tuples.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Poly, Rational, VarSet};

const FIELD: u64 = 0xffff;

fn pack(m: &Monomial) -> u64 {
    let e = m.0;
    debug_assert!(e.iter().all(|&x| (x as u64) <= FIELD), "exponent overflow");
    ((e[0] as u64) << 48) | ((e[1] as u64) << 32) | ((e[2] as u64) << 16) | e[3] as u64
}

fn unpack(k: u64) -> Monomial {
    Monomial([(k >> 48) as u32, ((k >> 32) & FIELD) as u32, ((k >> 16) & FIELD) as u32, (k & FIELD) as u32])
}

fn exp_of(k: u64, var: usize) -> u64 {
    (k >> (48 - 16 * var)) & FIELD
}

fn divides(a: u64, b: u64) -> bool {
    (0..4).all(|v| exp_of(a, v) <= exp_of(b, v))
}

/// Sparse integer polynomial; terms sorted by descending key, no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct ZPoly {
    terms: Vec<(u64, BigInt)>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { terms: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ZPoly { terms: vec![(0, c)] }
        }
    }

    fn from_map<I: IntoIterator<Item = (u64, BigInt)>>(it: I) -> Self {
        let mut terms: Vec<(u64, BigInt)> = it.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        ZPoly { terms }
    }

    /// Requires integer coefficients.
    pub fn from_poly<V: VarSet>(p: &Poly<V>) -> Self {
        ZPoly {
            terms: p
                .terms()
                .map(|(m, c)| {
                    assert!(c.is_integer(), "ZPoly::from_poly needs integer coefficients");
                    (pack(m), c.to_integer())
                })
                .collect(),
        }
    }

    /// Converts back, dividing every coefficient by `denom`.
    pub fn to_poly<V: VarSet>(&self, denom: &BigInt) -> Poly<V> {
        Poly::from_terms(
            self.terms.iter().map(|(k, c)| (unpack(*k), Rational::new(c.clone(), denom.clone()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == 0)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            let (ka, ca) = &self.terms[i];
            let (kb, cb) = &other.terms[j];
            if ka > kb {
                out.push((*ka, ca.clone()));
                i += 1;
            } else if kb > ka {
                out.push((*kb, cb.clone()));
                j += 1;
            } else {
                let c = ca + cb;
                if !c.is_zero() {
                    out.push((*ka, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        ZPoly { terms: out }
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(self.len() * 2);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let prod = ca * cb;
                acc.entry(ka + kb).and_modify(|c| *c += &prod).or_insert(prod);
            }
        }
        ZPoly::from_map(acc)
    }

    fn shift(&self, key: u64) -> ZPoly {
        ZPoly { terms: self.terms.iter().map(|(k, a)| (k + key, a.clone())).collect() }
    }

    /// `self / d` when the division is exact, `None` otherwise.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        let (lk, lc) = d.terms.first()?;
        if d.len() == 1 {
            let mut terms = Vec::with_capacity(self.len());
            for (k, c) in &self.terms {
                if !divides(*lk, *k) {
                    return None;
                }
                let (q, r) = c.div_rem(lc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((k - lk, q));
            }
            return Some(ZPoly { terms });
        }
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((&k, c)) = rem.last_key_value() {
            if !divides(*lk, k) {
                return None;
            }
            let (q, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let qk = k - lk;
            for (dk, dc) in &d.terms {
                let key = qk + dk;
                let delta = &q * dc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qk, q));
        }
        Some(ZPoly { terms: quot })
    }

    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    /// Content 1 and positive leading coefficient.
    pub fn normalized(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        ZPoly { terms: self.terms.iter().map(|(k, c)| (*k, c / &g)).collect() }
    }

    fn degree_in(&self, var: usize) -> u64 {
        self.terms.iter().map(|(k, _)| exp_of(*k, var)).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^e`, as a polynomial free of `x_var`.
    fn coeff_in(&self, var: usize, e: u64) -> ZPoly {
        let shift = e << (48 - 16 * var);
        ZPoly::from_map(
            self.terms
                .iter()
                .filter(|(k, _)| exp_of(*k, var) == e)
                .map(|(k, c)| (k - shift, c.clone())),
        )
    }

    fn coeffs_in(&self, var: usize) -> Vec<ZPoly> {
        let mut groups: BTreeMap<u64, Vec<(u64, BigInt)>> = BTreeMap::new();
        let mask = FIELD << (48 - 16 * var);
        for (k, c) in &self.terms {
            groups.entry(exp_of(*k, var)).or_default().push((k & !mask, c.clone()));
        }
        groups.into_values().map(ZPoly::from_map).collect()
    }

    fn var_power(var: usize, e: u64) -> u64 {
        e << (48 - 16 * var)
    }
}

/// Greatest common divisor, normalized (content 1, positive leading term).
pub(crate) fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    heuristic_gcd(a, b, 0).unwrap_or_else(|| gcd_from(a, b, 0)).normalized()
}

const HEURISTIC_ATTEMPTS: usize = 6;

fn max_abs(p: &ZPoly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

/// `p` with `x_var := xi`.
fn eval_var(p: &ZPoly, var: usize, xi: &BigInt) -> ZPoly {
    let top = p.degree_in(var) as usize;
    let mut pows = Vec::with_capacity(top + 1);
    pows.push(BigInt::one());
    for i in 0..top {
        let next = &pows[i] * xi;
        pows.push(next);
    }
    let mask = FIELD << (48 - 16 * var);
    let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(p.len());
    for (k, c) in &p.terms {
        let v = c * &pows[exp_of(*k, var) as usize];
        acc.entry(k & !mask).and_modify(|x| *x += &v).or_insert(v);
    }
    ZPoly::from_map(acc)
}

/// Inverse of [`eval_var`] by symmetric `xi`-adic expansion of each coefficient.
fn xi_adic(g: &ZPoly, var: usize, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (k, c) in &g.terms {
        let mut c = c.clone();
        let mut e = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((k + ZPoly::var_power(var, e), d.clone()));
            }
            c = (c - d) / xi;
            e += 1;
        }
    }
    ZPoly::from_map(terms)
}

/// Heuristic gcd (GCDHEU): evaluate one variable at a large integer, recurse,
/// and recover the gcd from the `xi`-adic digits of the image. Every candidate
/// is confirmed by exact division; `None` means give up.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly, var: usize) -> Option<ZPoly> {
    let (ca, cb) = (a.content(), b.content());
    let c = ca.gcd(&cb);
    if var == 4 {
        return Some(ZPoly::constant(c));
    }
    let a = a.exact_div(&ZPoly::constant(ca)).expect("content divides");
    let b = b.exact_div(&ZPoly::constant(cb)).expect("content divides");
    let scale = |g: ZPoly| g.mul(&ZPoly::constant(c.clone()));
    if a.degree_in(var) == 0 && b.degree_in(var) == 0 {
        return heuristic_gcd(&a, &b, var + 1).map(scale);
    }
    let mut xi = 2 * max_abs(&a).min(max_abs(&b)) + 29;
    for _ in 0..HEURISTIC_ATTEMPTS {
        let (ea, eb) = (eval_var(&a, var, &xi), eval_var(&b, var, &xi));
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(gamma) = heuristic_gcd(&ea, &eb, var + 1) {
                let cand = xi_adic(&gamma, var, &xi);
                if !cand.is_zero() {
                    let cand = cand.exact_div(&ZPoly::constant(cand.content())).expect("content divides");
                    if a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
                        return Some(scale(cand));
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Both inputs nonzero and free of variables below `var`.
fn gcd_from(a: &ZPoly, b: &ZPoly, var: usize) -> ZPoly {
    if var == 4 {
        return ZPoly::constant(a.content().gcd(&b.content()));
    }
    let (da, db) = (a.degree_in(var), b.degree_in(var));
    if da == 0 && db == 0 {
        return gcd_from(a, b, var + 1);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let g = gcd_from(&ca, &cb, var + 1);
    let mut r0 = a.exact_div(&ca).expect("content divides");
    let mut r1 = b.exact_div(&cb).expect("content divides");
    if r0.degree_in(var) < r1.degree_in(var) {
        std::mem::swap(&mut r0, &mut r1);
    }
    let h = loop {
        if r1.degree_in(var) == 0 {
            break ZPoly::constant(BigInt::one());
        }
        let r = prem(&r0, &r1, var);
        if r.is_zero() {
            break r1;
        }
        r0 = r1;
        r1 = primitive_in(&r, var);
    };
    g.mul(&h)
}

fn content_in(p: &ZPoly, var: usize) -> ZPoly {
    let mut coeffs = p.coeffs_in(var).into_iter();
    let mut g = coeffs.next().expect("nonzero polynomial");
    for c in coeffs {
        if g.is_constant() && g.leading_coeff().is_some_and(|x| x.abs().is_one()) {
            break;
        }
        g = gcd_from(&g, &c, var + 1);
    }
    g.normalized()
}

fn primitive_in(p: &ZPoly, var: usize) -> ZPoly {
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in `x_var`.
fn prem(a: &ZPoly, b: &ZPoly, var: usize) -> ZPoly {
    let db = b.degree_in(var);
    let lb = b.coeff_in(var, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeff_in(var, dr);
        let t = lr.shift(ZPoly::var_power(var, dr - db)).mul(b);
        r = r.mul(&lb).sub(&t);
    }
    r
}

/// Substitutes `vals[i]` for variable `i` of `p` by nested Horner evaluation.
pub(crate) fn substitute(p: &ZPoly, vals: &[ZPoly; 4]) -> ZPoly {
    horner(&p.terms, 0, vals)
}

fn horner(terms: &[(u64, BigInt)], var: usize, vals: &[ZPoly; 4]) -> ZPoly {
    if terms.is_empty() {
        return ZPoly::zero();
    }
    if var == 4 {
        let c = terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc + c);
        return ZPoly::constant(c);
    }
    let mut groups: BTreeMap<u64, Vec<(u64, BigInt)>> = BTreeMap::new();
    for (k, c) in terms {
        groups.entry(exp_of(*k, var)).or_default().push((*k, c.clone()));
    }
    let top = *groups.keys().next_back().unwrap();
    let mut acc = ZPoly::zero();
    for e in (0..=top).rev() {
        if !acc.is_zero() {
            acc = acc.mul(&vals[var]);
        }
        if let Some(g) = groups.get(&e) {
            acc = acc.add(&horner(g, var + 1, vals));
        }
    }
    acc
}
