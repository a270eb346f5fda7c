//! Word-size prime field arithmetic, Chinese remaindering and rational
//! reconstruction. Used by the interpolation cross-check, whose results are
//! always re-verified over `Q` before they are returned.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^31`, descending. Products of two residues fit in a `u64`.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 31) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

pub fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

pub fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let d = reduce(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce(x.numer(), p), inv_mod(d, p), p))
}

/// Reduced row echelon form modulo a prime `p < 2^31`, returning pivot
/// columns and the nullspace basis (one vector per free column, 1 in that
/// coordinate).
pub fn nullspace_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    assert!(p < 1 << 31, "modulus too large for single-word products");
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows.len() {
            break;
        }
        let Some(r) = (prow..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(prow, r);
        let inv = inv_mod(rows[prow][col], p);
        for x in rows[prow].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[prow].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == prow || row[col] == 0 {
                continue;
            }
            let f = p - row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = (*x + f * *y) % p;
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect();
    (pivots, basis)
}

/// Combines `x = a mod m` and `x = b mod p` into `x mod m*p`, with `x` in `[0, m*p)`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let a_mod_p = reduce(a, p);
    let m_mod_p = reduce(m, p);
    let diff = (b + p - a_mod_p) % p;
    let k = mul_mod(diff, inv_mod(m_mod_p, p), p);
    a + m * BigInt::from(k)
}

/// Finds `n/d` with `|n|, d <= sqrt(m/2)` congruent to `a` modulo `m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    let (num, den) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&p| is_prime(p) && p < 1 << 31));
        assert!(ps[0] > ps[1] && ps[1] > ps[2]);
    }

    #[test]
    fn reconstruct_fraction() {
        let x = Rational::new(BigInt::from(-37), BigInt::from(91));
        let mut m = BigInt::one();
        let mut a = BigInt::zero();
        for p in primes().take(2) {
            a = crt(&a, &m, reduce_rational(&x, p).unwrap(), p);
            m *= BigInt::from(p);
        }
        assert_eq!(rational_reconstruct(&a, &m), Some(x));
    }

    #[test]
    fn small_nullspace() {
        let p = 101;
        let (piv, basis) = nullspace_mod(vec![vec![1, 1], vec![2, 2]], 2, p);
        assert_eq!(piv, vec![0]);
        assert_eq!(basis, vec![vec![100, 1]]);
    }
}
