#![allow(dead_code)]

use implicitize::poly::rat;
use implicitize::{parse_poly, Bidegree, BigradedPoly, Monomial, Parametrization, Rational, TPoly};
use num_traits::Zero;
use proptest::prelude::*;

pub const REFERENCE_POLYS: [&str; 4] = [
    "s^2*t^3+2*s*u*t^3+3*u^2*t^3+4*s^2*t^2*v+5*s*u*t^2*v+6*u^2*t^2*v+7*s^2*t*v^2+8*s*u*t*v^2+9*u^2*t*v^2+10*s^2*v^3+s*u*v^3+2*u^2*v^3",
    "2*s^2*t^3-3*s^2*t^2*v-s^2*t*v^2+s*u*t^2*v+3*s*u*t*v^2-3*u^2*t^2*v+2*u^2*t*v^2-u^2*v^3",
    "2*s^2*t^3-3*s^2*t^2*v-2*s*u*t^3+s^2*t*v^2+5*s*u*t^2*v-3*s*u*t*v^2-3*u^2*t^2*v+4*u^2*t*v^2-u^2*v^3",
    "3*s^2*t^2*v-2*s*u*t^3-s^2*t*v^2+s*u*t^2*v-3*s*u*t*v^2-u^2*t^2*v+4*u^2*t*v^2-u^2*v^3",
];

pub fn reference() -> Parametrization {
    Parametrization::with_bidegree(REFERENCE_POLYS.map(|s| parse_poly(s).unwrap()), Bidegree::new(2, 3))
        .unwrap()
}

pub fn segre() -> Parametrization {
    Parametrization::new(["s*t", "s*v", "u*t", "u*v"].map(|s| parse_poly(s).unwrap())).unwrap()
}

pub fn reference_toml() -> String {
    let polys: Vec<String> = REFERENCE_POLYS.iter().map(|p| format!("  \"{p}\",")).collect();
    format!("bidegree = [2, 3]\npolynomials = [\n{}\n]\n", polys.join("\n"))
}

/// Monomials `s^i u^(a-i) t^j v^(b-j)`, listed independently of the crate.
pub fn bihomogeneous_monomials(a: u32, b: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            out.push(Monomial([i, a - i, j, b - j]));
        }
    }
    out
}

pub fn poly_from_coeffs(monos: &[Monomial], coeffs: &[i64]) -> BigradedPoly {
    BigradedPoly::from_terms(monos.iter().copied().zip(coeffs.iter().map(|&c| rat(c))))
}

/// Bihomogeneous polynomial of bidegree `(a, b)`; may be zero.
pub fn bihomogeneous(a: u32, b: u32, range: i64) -> impl Strategy<Value = BigradedPoly> {
    let monos = bihomogeneous_monomials(a, b);
    let n = monos.len();
    prop::collection::vec(prop_oneof![2 => Just(0i64), 3 => -range..=range], n)
        .prop_map(move |c| poly_from_coeffs(&monos, &c))
}

pub fn nonzero_bihomogeneous(a: u32, b: u32, range: i64) -> impl Strategy<Value = BigradedPoly> {
    bihomogeneous(a, b, range).prop_filter("nonzero", |p| !p.is_zero())
}

/// Random parametrizations of bidegree at most `(max1, max2)`.
pub fn parametrization(max1: u32, max2: u32) -> impl Strategy<Value = Parametrization> {
    (1..=max1, 1..=max2).prop_flat_map(|(a, b)| {
        [(); 4].map(|_| nonzero_bihomogeneous(a, b, 5)).prop_map(|p| Parametrization::new(p).unwrap())
    })
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Determinant by the Leibniz formula.
pub fn leibniz_det(m: &[Vec<TPoly>]) -> TPoly {
    let n = m.len();
    let mut total = TPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = TPoly::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Rank by plain fraction Gaussian elimination.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let factor = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let delta = &factor * &a[rank][k];
                    a[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
