//! The matrix representation `M_nu` and the implicit equation.
//!
//! Column `j` of `M_nu` is the syzygy `(a1..a4)_j` viewed as the element
//! `a1*T1 + a2*T2 + a3*T3 + a4*T4` of `S_nu[T]`, written in the monomial
//! basis of `S_nu`. Its maximal minors vanish on the image of the
//! parametrization.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx_complex::{syzygy_basis, SyzygyBasis};
use crate::error::{Error, Result};
use crate::graded_linalg::{rref_nullspace, GradedBasis, QMatrix};
use crate::modular;
use crate::par::{map_range, Execution};
use crate::poly::{substitute_t, Bidegree, Monomial, Parametrization, Rational, TPoly};
use crate::zpoly::{self, ZPoly};

/// Half-width of the integer box random points are drawn from.
pub const SAMPLE_RADIUS: i64 = 10;

/// `c1*T1 + c2*T2 + c3*T3 + c4*T4`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinTForm {
    pub coeffs: [Rational; 4],
}

impl LinTForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_tpoly(&self) -> TPoly {
        TPoly::from_terms((0..4).map(|i| (Monomial::var(i), self.coeffs[i].clone())))
    }

    pub fn evaluate(&self, t: &[Rational; 4]) -> Rational {
        self.coeffs.iter().zip(t).fold(Rational::zero(), |acc, (c, x)| acc + c * x)
    }
}

impl fmt::Display for LinTForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tpoly())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    pub nu: Bidegree,
    /// Rows are indexed by this basis of `S_nu`.
    pub row_basis: GradedBasis,
    pub columns: SyzygyBasis,
    /// `entries[row][col]`.
    pub entries: Vec<Vec<LinTForm>>,
}

impl MatrixRep {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(self.columns.len(), Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Numeric matrix obtained by substituting `T := point`.
    pub fn evaluate_at(&self, point: &[Rational; 4]) -> QMatrix {
        QMatrix::from_rows(
            self.entries.iter().map(|row| row.iter().map(|e| e.evaluate(point)).collect()).collect(),
        )
    }

    /// Square (or rectangular) submatrix on the given columns, as `TPoly`s.
    pub fn submatrix(&self, cols: &[usize]) -> Vec<Vec<TPoly>> {
        self.entries
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].to_tpoly()).collect())
            .collect()
    }
}

/// Assembles `M_nu` from the canonical degree-`nu` syzygy basis.
pub fn build_matrix(f: &Parametrization, nu: Bidegree) -> Result<MatrixRep> {
    let columns = syzygy_basis(f, nu)?;
    Ok(matrix_from_syzygies(columns))
}

pub fn matrix_from_syzygies(columns: SyzygyBasis) -> MatrixRep {
    let row_basis = GradedBasis::new(columns.nu);
    let mut entries = vec![vec![LinTForm::default(); columns.len()]; row_basis.len()];
    for (j, col) in columns.columns.iter().enumerate() {
        for (i, a) in col.iter().enumerate() {
            let v = row_basis.coeff_vector(a).expect("syzygy components have bidegree nu");
            for (r, c) in v.into_iter().enumerate() {
                entries[r][j].coeffs[i] = c;
            }
        }
    }
    MatrixRep { nu: columns.nu, row_basis, columns, entries }
}

fn random_int(rng: &mut ChaCha8Rng) -> Rational {
    Rational::from_integer(BigInt::from(rng.gen_range(-SAMPLE_RADIUS..=SAMPLE_RADIUS)))
}

fn random_t_point(rng: &mut ChaCha8Rng) -> [Rational; 4] {
    loop {
        let p = [(); 4].map(|_| random_int(rng));
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

/// A parameter point off the base locus, with its image `(f1(p)..f4(p))`.
pub fn sample_surface_point(f: &Parametrization, rng: &mut ChaCha8Rng) -> ([Rational; 4], [Rational; 4]) {
    loop {
        let p = [(); 4].map(|_| random_int(rng));
        if (p[0].is_zero() && p[1].is_zero()) || (p[2].is_zero() && p[3].is_zero()) {
            continue;
        }
        let img = f.image_point(&p);
        if img.iter().all(Zero::is_zero) {
            continue;
        }
        return (p, img);
    }
}

/// Bareiss fraction-free determinant over `Q[T1..T4]`.
pub fn bareiss_det(m: &[Vec<TPoly>]) -> TPoly {
    bareiss_det_with(m, Execution::default())
}

/// [`bareiss_det`] with the entry updates of each elimination step run under `exec`.
///
/// Rows are scaled to integer coefficients first, so every intermediate
/// division is an exact division in `Z[T]`. The pivot at each step is the
/// nonzero entry of the trailing block with the fewest terms.
pub fn bareiss_det_with(m: &[Vec<TPoly>], exec: Execution) -> TPoly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "bareiss_det needs a square matrix");
    if n == 0 {
        return TPoly::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<ZPoly>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
            scale *= &l;
            let lr = Rational::from_integer(l);
            row.iter().map(|p| ZPoly::from_poly(&p.scale(&lr))).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = ZPoly::constant(BigInt::one());
    for k in 0..n {
        let pivot = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].len());
        let Some((pi, pj)) = pivot else {
            return TPoly::zero();
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        if k == n - 1 {
            break;
        }
        let size = n - k - 1;
        let a_ref = &a;
        let prev_ref = &prev;
        let updated = map_range(exec, size * size, |idx| {
            let (i, j) = (k + 1 + idx / size, k + 1 + idx % size);
            let mut num = a_ref[k][k].mul(&a_ref[i][j]);
            if !a_ref[i][k].is_zero() && !a_ref[k][j].is_zero() {
                num = num.sub(&a_ref[i][k].mul(&a_ref[k][j]));
            }
            num.exact_div(prev_ref).expect("Bareiss quotients are exact")
        });
        for (idx, v) in updated.into_iter().enumerate() {
            a[k + 1 + idx / size][k + 1 + idx % size] = v;
        }
        prev = a[k][k].clone();
    }
    let det = if negate { a[n - 1][n - 1].neg() } else { a[n - 1][n - 1].clone() };
    det.to_poly(&scale)
}

/// Determinant of a square matrix of linear forms.
pub fn bareiss_det_linear(m: &[Vec<LinTForm>]) -> TPoly {
    let polys: Vec<Vec<TPoly>> =
        m.iter().map(|row| row.iter().map(LinTForm::to_tpoly).collect()).collect();
    bareiss_det(&polys)
}

const SELECTION_ATTEMPTS: usize = 8;

/// Column indices of a maximal square minor with nonzero determinant.
pub fn select_max_minor(m: &MatrixRep, seed: u64) -> Result<Vec<usize>> {
    Ok(select_minors(m, 1, seed, Execution::default())?.remove(0).0)
}

/// Up to `count` distinct full-row-size minors, each certified by a nonzero
/// symbolic determinant (returned alongside its columns).
///
/// Candidates come from column-pivoted elimination of `M` evaluated at a
/// random integer point; the first candidate keeps the natural column order,
/// later ones use random column permutations.
pub fn select_minors(
    m: &MatrixRep,
    count: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<(Vec<usize>, TPoly)>> {
    let rows = m.rows();
    let cols = m.cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<(Vec<usize>, TPoly)> = Vec::new();
    let mut best_rank = 0;
    let attempts = SELECTION_ATTEMPTS * count.max(1);
    for attempt in 0..attempts {
        let point = random_t_point(&mut rng);
        let mut order: Vec<usize> = (0..cols).collect();
        if attempt > 0 && !found.is_empty() {
            order.shuffle(&mut rng);
        }
        let evaluated = m.evaluate_at(&point);
        let permuted = QMatrix::from_rows(
            (0..rows).map(|i| order.iter().map(|&j| evaluated.get(i, j).clone()).collect()).collect(),
        );
        let ns = rref_nullspace(&permuted);
        best_rank = best_rank.max(ns.rank);
        if ns.rank < rows {
            continue;
        }
        let mut chosen: Vec<usize> = ns.pivots.iter().map(|&p| order[p]).collect();
        chosen.sort_unstable();
        if found.iter().any(|(c, _)| *c == chosen) {
            continue;
        }
        let det = bareiss_det_with(&m.submatrix(&chosen), exec);
        if det.is_zero() {
            continue;
        }
        found.push((chosen, det));
        if found.len() == count.max(1) {
            break;
        }
    }
    if found.is_empty() {
        return Err(Error::RankDeficient { rank: best_rank, rows });
    }
    Ok(found)
}

/// Gcd of the nonzero inputs, primitive with positive leading coefficient.
pub fn reduce_equation(dets: &[TPoly]) -> Result<TPoly> {
    let mut acc: Option<ZPoly> = None;
    for d in dets.iter().filter(|d| !d.is_zero()) {
        let z = ZPoly::from_poly(&d.primitive_part());
        acc = Some(match acc {
            None => z,
            Some(g) => zpoly::gcd(&g, &z),
        });
    }
    let g = acc.ok_or(Error::AllZero)?;
    Ok(g.to_poly::<crate::poly::TVars>(&BigInt::one()).primitive_part())
}

/// True iff `eq(f1, f2, f3, f4)` is the zero polynomial.
pub fn verify_substitution(eq: &TPoly, f: &Parametrization) -> bool {
    substitute_t(eq, f.polys()).is_zero()
}

/// Samples `trials` surface points and checks that `M` loses rank at each.
pub fn rank_drop_check(m: &MatrixRep, f: &Parametrization, trials: usize, seed: u64) -> bool {
    rank_drop_check_with(m, f, trials, seed, Execution::default())
}

pub fn rank_drop_check_with(
    m: &MatrixRep,
    f: &Parametrization,
    trials: usize,
    seed: u64,
    exec: Execution,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images: Vec<[Rational; 4]> =
        (0..trials).map(|_| sample_surface_point(f, &mut rng).1).collect();
    let rows = m.rows();
    map_range(exec, images.len(), |i| m.evaluate_at(&images[i]).rank() < rows)
        .into_iter()
        .all(|dropped| dropped)
}

/// Exponent tuples of total degree `d` in four variables, descending lex.
pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(Monomial([a, b, c, d - a - b - c]));
            }
        }
    }
    out
}

const MAX_PRIMES: usize = 400;

/// Degree-`degree` polynomial vanishing on sampled image points, found by
/// interpolation. Independent of the syzygy/determinant route.
///
/// The evaluation matrix (one row per sampled image point, one column per
/// monomial of the given degree) is reduced modulo word-size primes; its
/// nullspace vector is lifted by Chinese remaindering and rational
/// reconstruction, and the lift is accepted only after it is checked to
/// vanish exactly at every sample. A one-dimensional nullspace modulo a
/// prime bounds the rational nullity by one, so an accepted result is the
/// unique such polynomial up to scaling.
pub fn interpolation_oracle(f: &Parametrization, degree: usize, seed: u64) -> Result<TPoly> {
    interpolation_oracle_with(f, degree, seed, Execution::default())
}

pub fn interpolation_oracle_with(
    f: &Parametrization,
    degree: usize,
    seed: u64,
    exec: Execution,
) -> Result<TPoly> {
    if degree == 0 {
        return Err(Error::Input("interpolation degree must be at least 1".into()));
    }
    let monos = monomials_of_degree(degree as u32);
    let ncols = monos.len();
    let nsamples = ncols + 16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Distinct projective points only; repeats would not impose new conditions.
    let mut seen = HashSet::new();
    let mut points: Vec<[BigInt; 4]> = Vec::with_capacity(nsamples);
    while points.len() < nsamples {
        let pt = projective_integer_point(&sample_surface_point(f, &mut rng).1);
        if seen.insert(pt.clone()) {
            points.push(pt);
        }
    }

    let mut lifted: Option<(Vec<usize>, Vec<BigInt>, BigInt)> = None;
    let mut ambiguous = usize::MAX;
    let mut ambiguous_hits = 0;
    for p in modular::primes().take(MAX_PRIMES) {
        let rows: Vec<Vec<u64>> = map_range(exec, points.len(), |r| {
            let res = points[r].clone().map(|x| modular::reduce(&x, p));
            let pows = res.map(|x| {
                let mut v = vec![1u64; degree + 1];
                for e in 1..=degree {
                    v[e] = v[e - 1] * x % p;
                }
                v
            });
            monos
                .iter()
                .map(|m| {
                    (0..4).fold(1u64, |acc, i| acc * pows[i][m.0[i] as usize] % p)
                })
                .collect()
        });
        let (pivots, basis) = modular::nullspace_mod(rows, ncols, p);
        match basis.len() {
            0 => return Err(Error::NoEquation(degree)),
            1 => {}
            k => {
                ambiguous = ambiguous.min(k);
                ambiguous_hits += 1;
                if ambiguous_hits >= 3 && lifted.is_none() {
                    return Err(Error::AmbiguousNullspace { degree, dim: ambiguous });
                }
                continue;
            }
        }
        let v = &basis[0];
        let (residues, modulus): (Vec<BigInt>, BigInt) = match lifted.take() {
            None => (v.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(p)),
            Some((piv, acc, m)) => {
                if piv != pivots {
                    lifted = Some((piv, acc, m));
                    continue;
                }
                let combined = acc.iter().zip(v).map(|(a, &b)| modular::crt(a, &m, b, p)).collect();
                (combined, m * BigInt::from(p))
            }
        };
        if let Some(eq) = reconstruct(&residues, &modulus, &monos, &points) {
            return Ok(eq);
        }
        lifted = Some((pivots, residues, modulus));
    }
    Err(Error::ReconstructionFailed(degree))
}

/// Integer representative of a projective point with coprime coordinates.
fn projective_integer_point(img: &[Rational; 4]) -> [BigInt; 4] {
    let l = img.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = img.clone().map(|x| (x * Rational::from_integer(l.clone())).to_integer());
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.map(|x| x / &g)
}

fn reconstruct(
    residues: &[BigInt],
    modulus: &BigInt,
    monos: &[Monomial],
    points: &[[BigInt; 4]],
) -> Option<TPoly> {
    let coeffs: Vec<Rational> = residues
        .iter()
        .map(|a| modular::rational_reconstruct(a, modulus))
        .collect::<Option<_>>()?;
    let eq = TPoly::from_terms(monos.iter().copied().zip(coeffs)).primitive_part();
    let z = ZPoly::from_poly(&eq);
    let vanishes = points.iter().all(|pt| {
        let vals = pt.clone().map(ZPoly::constant);
        zpoly::substitute(&z, &vals).is_zero()
    });
    vanishes.then_some(eq)
}

/// Outcome of the determinant stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitResult {
    pub equation: TPoly,
    pub degree: usize,
    /// Columns of each minor whose determinant entered the gcd.
    pub minor_columns: Vec<Vec<usize>>,
    /// Total degree of the first (unreduced) determinant.
    pub determinant_degree: usize,
    pub verified: bool,
}

/// Determinant(s) of maximal minors of `m`, reduced to a primitive gcd and
/// checked by substitution.
pub fn implicit_equation(
    m: &MatrixRep,
    f: &Parametrization,
    minors: usize,
    seed: u64,
    exec: Execution,
) -> Result<ImplicitResult> {
    if m.rows() == 0 {
        return Err(Error::EmptyMatrix(m.nu));
    }
    let selected = select_minors(m, minors.max(1), seed, exec)?;
    let dets: Vec<TPoly> = selected.iter().map(|(_, d)| d.clone()).collect();
    let determinant_degree = dets[0].total_degree().unwrap_or(0) as usize;
    let equation = reduce_equation(&dets)?;
    let verified = verify_substitution(&equation, f);
    Ok(ImplicitResult {
        degree: equation.total_degree().unwrap_or(0) as usize,
        equation,
        minor_columns: selected.into_iter().map(|(c, _)| c).collect(),
        determinant_degree,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_tpoly};

    fn t(s: &str) -> TPoly {
        parse_tpoly(s).unwrap()
    }

    fn segre() -> Parametrization {
        Parametrization::new(["s*t", "s*v", "u*t", "u*v"].map(|x| parse_poly(x).unwrap())).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(&[vec![t("T1")]]), t("T1"));
        let m = vec![vec![t("T1"), t("T2")], vec![t("T3"), t("T4")]];
        assert_eq!(bareiss_det(&m), t("T1*T4 - T2*T3"));
        assert_eq!(bareiss_det_with(&m, Execution::Sequential), t("T1*T4 - T2*T3"));
        let singular = vec![vec![t("T1"), t("T2")], vec![t("2*T1"), t("2*T2")]];
        assert!(bareiss_det(&singular).is_zero());
        let halves = vec![vec![t("1/2*T1"), t("0")], vec![t("0"), t("T2/3")]];
        assert_eq!(bareiss_det(&halves), t("1/6*T1*T2"));
    }

    #[test]
    fn determinant_by_cofactor_expansion() {
        let m = vec![
            vec![t("T1 + T2"), t("T3"), t("0")],
            vec![t("2*T4"), t("T1 - T3"), t("T2")],
            vec![t("T3"), t("-T4"), t("T1 + 5*T4")],
        ];
        let cof = |a: &TPoly, b: &TPoly, c: &TPoly, d: &TPoly| &(a * d) - &(b * c);
        let expected = &(&(&m[0][0] * &cof(&m[1][1], &m[1][2], &m[2][1], &m[2][2]))
            - &(&m[0][1] * &cof(&m[1][0], &m[1][2], &m[2][0], &m[2][2])))
            + &(&m[0][2] * &cof(&m[1][0], &m[1][1], &m[2][0], &m[2][1]));
        assert_eq!(bareiss_det(&m), expected);
    }

    #[test]
    fn reduce_content_and_gcd() {
        assert_eq!(reduce_equation(&[t("2*T1*T4 - 2*T2*T3")]).unwrap(), t("T1*T4 - T2*T3"));
        assert_eq!(reduce_equation(&[t("0"), t("-3*T1")]).unwrap(), t("T1"));
        assert_eq!(reduce_equation(&[t("0")]), Err(Error::AllZero));
        assert_eq!(reduce_equation(&[]), Err(Error::AllZero));
        let p = t("T1^2 - T2*T3");
        let g = reduce_equation(&[&p * &t("T1 + T4"), &p * &t("T2 - 7*T3")]).unwrap();
        assert_eq!(g, p);
    }

    #[test]
    fn segre_matrix_and_oracle() {
        let f = segre();
        let m = build_matrix(&f, Bidegree::new(1, 0)).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        let res = implicit_equation(&m, &f, 1, 7, Execution::Sequential).unwrap();
        assert_eq!(res.equation, t("T1*T4 - T2*T3"));
        assert!(res.verified);
        assert_eq!(interpolation_oracle(&f, 2, 3).unwrap(), t("T1*T4 - T2*T3"));
        assert_eq!(interpolation_oracle(&f, 1, 3), Err(Error::NoEquation(1)));
        assert!(matches!(
            interpolation_oracle(&f, 3, 3),
            Err(Error::AmbiguousNullspace { degree: 3, dim: 4 })
        ));
        assert!(rank_drop_check(&m, &f, 20, 1));
    }

    #[test]
    fn minor_selection_edge_cases() {
        let f = segre();
        let mut m = build_matrix(&f, Bidegree::new(1, 0)).unwrap();
        // Duplicate column 0: the duplicate never enters the minor twice.
        for row in m.entries.iter_mut() {
            let c = row[0].clone();
            row.push(c);
        }
        let cols = select_max_minor(&m, 5).unwrap();
        assert_eq!(cols.len(), 2);
        assert!(!(cols.contains(&0) && cols.contains(&2)));

        for row in m.entries.iter_mut() {
            for e in row.iter_mut() {
                *e = LinTForm::default();
            }
        }
        assert!(matches!(select_max_minor(&m, 5), Err(Error::RankDeficient { rank: 0, rows: 2 })));
    }

    #[test]
    fn zero_column_drops_rank_everywhere() {
        let f = segre();
        let mut m = build_matrix(&f, Bidegree::new(1, 0)).unwrap();
        for row in m.entries.iter_mut() {
            row[1] = LinTForm::default();
        }
        assert!(rank_drop_check(&m, &f, 10, 0));
    }

    #[test]
    fn verification_verdicts() {
        let f = segre();
        assert!(verify_substitution(&t("T1*T4 - T2*T3"), &f));
        assert!(!verify_substitution(&t("T1"), &f));
        assert!(verify_substitution(&(&t("T1*T2") - &t("T2*T1")), &f));
    }

    #[test]
    fn degree_monomials() {
        assert_eq!(monomials_of_degree(12).len(), 455);
        assert_eq!(monomials_of_degree(1), vec![Monomial([1, 0, 0, 0]), Monomial([0, 1, 0, 0]), Monomial([0, 0, 1, 0]), Monomial([0, 0, 0, 1])]);
    }
}
