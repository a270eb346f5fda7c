//! Monomial bases of graded pieces, multiplication maps between them, and
//! exact rank/nullspace computation over `Q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Bidegree, BigradedPoly, Monomial, Rational};

/// Canonical monomial basis of `S_(a,b)`: `s^i u^(a-i) t^j v^(b-j)` in
/// descending lexicographic order (`i` outer, `j` inner, both descending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    bidegree: Bidegree,
    monomials: Vec<Monomial>,
}

impl GradedBasis {
    pub fn new(deg: Bidegree) -> Self {
        let mut monomials = Vec::with_capacity(deg.piece_dim());
        if deg.is_nonnegative() {
            let (a, b) = (deg.d1 as u32, deg.d2 as u32);
            for i in (0..=a).rev() {
                for j in (0..=b).rev() {
                    monomials.push(Monomial([i, a - i, j, b - j]));
                }
            }
        }
        GradedBasis { bidegree: deg, monomials }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Position of `m` in the basis, if it belongs to this graded piece.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.bidegree() != self.bidegree {
            return None;
        }
        let (a, b) = (self.bidegree.d1 as usize, self.bidegree.d2 as usize);
        Some((a - m.0[0] as usize) * (b + 1) + (b - m.0[2] as usize))
    }

    /// Coordinates of `p` in this basis.
    pub fn coeff_vector(&self, p: &BigradedPoly) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.len()];
        if p.is_zero() {
            return Ok(out);
        }
        let d = p.bidegree()?;
        if d != self.bidegree {
            return Err(Error::DegreeMismatch { expected: self.bidegree, found: d });
        }
        for (m, c) in p.terms() {
            out[self.index_of(m).expect("bidegree checked")] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`GradedBasis::coeff_vector`].
    pub fn polynomial(&self, coords: &[Rational]) -> BigradedPoly {
        assert_eq!(coords.len(), self.len(), "coordinate vector length");
        BigradedPoly::from_terms(self.monomials.iter().copied().zip(coords.iter().cloned()))
    }
}

pub fn graded_basis(deg: Bidegree) -> GradedBasis {
    GradedBasis::new(deg)
}

pub fn coeff_vector(p: &BigradedPoly, basis: &GradedBasis) -> Result<Vec<Rational>> {
    basis.coeff_vector(p)
}

/// Dense row-major matrix over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Copies `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref_nullspace(self).rank
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Matrix of `m -> f*m` from `S_src` to `S_(src + deg f)` in canonical bases.
pub fn multiplication_matrix(f: &BigradedPoly, src: Bidegree) -> Result<QMatrix> {
    let delta = f.bidegree()?;
    let src_basis = GradedBasis::new(src);
    let tgt_basis = GradedBasis::new(src + delta);
    let mut m = QMatrix::zeros(tgt_basis.len(), src_basis.len());
    for (j, mono) in src_basis.monomials().iter().enumerate() {
        for (fm, c) in f.terms() {
            let i = tgt_basis.index_of(&fm.mul(mono)).expect("product lies in target piece");
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// Rank and canonical nullspace basis of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nullspace {
    pub rank: usize,
    /// One vector per free column, in ascending column order; each has a 1
    /// in its own free coordinate and zeros in the other free coordinates.
    pub basis: Vec<Vec<Rational>>,
    /// Pivot column of each nonzero row of the reduced echelon form.
    pub pivots: Vec<usize>,
}

fn bits(x: &BigInt) -> u64 {
    x.bits()
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Exact reduced row echelon form.
///
/// Rows are scaled to integers and reduced by cross-multiplication, dividing
/// each updated row by its content. The pivot row for each column is the
/// candidate with the fewest nonzero entries, ties broken by the bit size of
/// the pivot. The reduced form itself is unique, so pivot choice only affects
/// cost.
pub fn rref_nullspace(m: &QMatrix) -> Nullspace {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut r: Vec<BigInt> = row.iter().map(|x| (x * &l).to_integer()).collect();
            remove_content(&mut r);
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let best = (prow..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (a[r].iter().filter(|x| !x.is_zero()).count(), bits(&a[r][col])));
        let Some(best) = best else { continue };
        a.swap(prow, best);
        let pivot_row = a[prow].clone();
        let p = &pivot_row[col];
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let g = p.gcd(&factor);
            let (mp, mf) = (p / &g, &factor / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x = &*x * &mp;
                    }
                } else {
                    *x = &*x * &mp - &mf * y;
                }
            }
            remove_content(row);
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
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                if !a[r][f].is_zero() {
                    v[c] = -Rational::new(a[r][f].clone(), a[r][c].clone());
                }
            }
            v
        })
        .collect();
    Nullspace { rank: pivots.len(), basis, pivots }
}

/// True when every entry of `v` is zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn basis_sizes() {
        assert_eq!(graded_basis(Bidegree::new(3, 2)).len(), 12);
        assert_eq!(graded_basis(Bidegree::new(5, 5)).len(), 36);
        assert_eq!(graded_basis(Bidegree::new(0, 0)).monomials(), &[Monomial::ONE]);
        assert!(graded_basis(Bidegree::new(-1, 3)).is_empty());
        assert!(graded_basis(Bidegree::new(2, -1)).is_empty());
    }

    #[test]
    fn basis_is_canonical_and_indexed() {
        let b = graded_basis(Bidegree::new(3, 2));
        assert_eq!(b.monomials()[0], Monomial([3, 0, 2, 0]));
        assert_eq!(b.monomials()[11], Monomial([0, 3, 0, 2]));
        for w in b.monomials().windows(2) {
            assert!(w[0] > w[1]);
        }
        for (i, m) in b.monomials().iter().enumerate() {
            assert_eq!(b.index_of(m), Some(i));
        }
    }

    #[test]
    fn coeff_vector_units_and_errors() {
        let b = graded_basis(Bidegree::new(3, 2));
        let first = BigradedPoly::term(b.monomials()[0], rat(1));
        let v = b.coeff_vector(&first).unwrap();
        assert_eq!(v[0], rat(1));
        assert!(is_zero_vector(&v[1..]));
        assert_eq!(b.coeff_vector(&BigradedPoly::zero()).unwrap().len(), 12);
        let s = BigradedPoly::var(0);
        assert!(matches!(b.coeff_vector(&s), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn multiplication_by_s() {
        let m = multiplication_matrix(&BigradedPoly::var(0), Bidegree::new(0, 0)).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(m.get(0, 0), &rat(1));
        assert_eq!(m.get(1, 0), &rat(0));
        let one = multiplication_matrix(&BigradedPoly::one(), Bidegree::new(3, 2)).unwrap();
        assert_eq!(one, QMatrix::identity(12));
    }

    #[test]
    fn nullspace_small_cases() {
        let id = rref_nullspace(&QMatrix::identity(5));
        assert_eq!(id.rank, 5);
        assert!(id.basis.is_empty());

        let z = rref_nullspace(&QMatrix::zeros(3, 4));
        assert_eq!(z.rank, 0);
        assert_eq!(z.basis.len(), 4);

        let ones = rref_nullspace(&QMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(ones.rank, 1);
        assert_eq!(ones.basis, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn nullspace_with_fractions() {
        let m = QMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), rat(1), rat(0)],
            vec![rat(0), rat(3), Rational::new(3.into(), 4.into())],
        ]);
        let ns = rref_nullspace(&m);
        assert_eq!(ns.rank, 2);
        assert_eq!(ns.basis.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&ns.basis[0])));
        assert_eq!(ns.basis[0][2], rat(1));
    }
}
