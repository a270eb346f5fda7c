mod common;

use implicitize::graded_linalg::{graded_basis, multiplication_matrix};
use implicitize::matrix_rep::monomials_of_degree;
use implicitize::poly::rat;
use implicitize::*;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;

fn point() -> impl Strategy<Value = [Rational; 4]> {
    [rational(), rational(), rational(), rational()]
}

fn small_bidegree() -> impl Strategy<Value = (u32, u32)> {
    (0u32..=3, 0u32..=3)
}

fn nonzero_pair() -> impl Strategy<Value = (BigradedPoly, BigradedPoly)> {
    (small_bidegree(), small_bidegree())
        .prop_flat_map(|((a, b), (c, d))| (nonzero_bihomogeneous(a, b, 4), nonzero_bihomogeneous(c, d, 4)))
}

fn any_poly() -> impl Strategy<Value = BigradedPoly> {
    small_bidegree().prop_flat_map(|(a, b)| bihomogeneous(a, b, 6))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(p in any_poly(), q in any_poly(), r in any_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &BigradedPoly::one(), p.clone());
    }

    #[test]
    fn bidegree_is_additive((p, q) in nonzero_pair()) {
        let pq = &p * &q;
        prop_assert_eq!(pq.bidegree().unwrap(), p.bidegree().unwrap() + q.bidegree().unwrap());
    }

    #[test]
    fn evaluation_is_a_ring_morphism(p in any_poly(), q in any_poly(), x in point()) {
        prop_assert_eq!((&p * &q).evaluate(&x), p.evaluate(&x) * q.evaluate(&x));
        prop_assert_eq!((&p + &q).evaluate(&x), p.evaluate(&x) + q.evaluate(&x));
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        c in prop::collection::vec(-3i64..=3, 10),
        f in parametrization(2, 2),
        x in point(),
    ) {
        let q = TPoly::from_terms(monomials_of_degree(2).into_iter().zip(c.into_iter().map(rat)));
        let image = f.image_point(&x);
        prop_assert_eq!(substitute_t(&q, f.polys()).evaluate(&x), q.evaluate(&image));
    }

    #[test]
    fn coefficients_stay_reduced(p in any_poly(), q in any_poly(), k in 1i64..=9) {
        let r = (&p * &q).scale(&Rational::new(1.into(), k.into()));
        for (_, c) in r.terms() {
            prop_assert!(c.denom().is_positive());
            prop_assert!(c.numer().gcd(c.denom()).is_one());
        }
        let pp = r.primitive_part();
        if !pp.is_zero() {
            prop_assert!(pp.terms().all(|(_, c)| c.is_integer()));
            let content = pp.terms().fold(num_bigint::BigInt::zero(), |g, (_, c)| g.gcd(&c.to_integer()));
            prop_assert!(content.is_one());
            prop_assert!(pp.terms().next().unwrap().1.is_positive());
            prop_assert!(pp.is_associate(&r));
        }
    }

    #[test]
    fn multiplication_matrices_commute((f, g) in nonzero_pair(), (x, y) in small_bidegree()) {
        let src = Bidegree::new(x as i64, y as i64);
        let (df, dg) = (f.bidegree().unwrap(), g.bidegree().unwrap());
        let fg = multiplication_matrix(&f, src + dg).unwrap().mul(&multiplication_matrix(&g, src).unwrap());
        let gf = multiplication_matrix(&g, src + df).unwrap().mul(&multiplication_matrix(&f, src).unwrap());
        prop_assert_eq!(fg, gf);
    }

    #[test]
    fn multiplication_matrix_multiplies(f in any_poly(), (x, y) in small_bidegree(), c in prop::collection::vec(-5i64..=5, 16)) {
        let src = Bidegree::new(x as i64, y as i64);
        let basis = graded_basis(src);
        let g = basis.polynomial(&c[..basis.len()].iter().map(|&v| rat(v)).collect::<Vec<_>>());
        let Ok(df) = f.bidegree() else { return Ok(()) };
        let target = graded_basis(src + df);
        let m = multiplication_matrix(&f, src).unwrap();
        prop_assert_eq!(m.mul_vec(&basis.coeff_vector(&g).unwrap()), target.coeff_vector(&(&f * &g)).unwrap());
    }

    #[test]
    fn coeff_vector_round_trip((a, b) in small_bidegree(), c in prop::collection::vec(rational(), 16)) {
        let basis = graded_basis(Bidegree::new(a as i64, b as i64));
        let coords = &c[..basis.len()];
        let p = basis.polynomial(coords);
        prop_assert_eq!(basis.coeff_vector(&p).unwrap(), coords.to_vec());
        if !p.is_zero() {
            prop_assert_eq!(basis.polynomial(&basis.coeff_vector(&p).unwrap()), p);
        }
    }
}

#[test]
fn basis_sizes() {
    for a in 0..=8u32 {
        for b in 0..=8u32 {
            let basis = graded_basis(Bidegree::new(a as i64, b as i64));
            assert_eq!(basis.len(), ((a + 1) * (b + 1)) as usize);
            let mut expected = bihomogeneous_monomials(a, b);
            expected.sort();
            let mut got = basis.monomials().to_vec();
            got.sort();
            assert_eq!(got, expected);
            for (i, m) in basis.monomials().iter().enumerate() {
                assert_eq!(basis.index_of(m), Some(i));
            }
        }
    }
    assert!(graded_basis(Bidegree::new(-1, 3)).is_empty());
    assert!(graded_basis(Bidegree::new(2, -1)).is_empty());
}

#[test]
fn execution_strategies_agree() {
    use implicitize::approx_complex::complex_summary_with;
    use implicitize::matrix_rep::{bareiss_det_with, rank_drop_check_with};
    let f = reference();
    let nu = Bidegree::new(3, 2);
    let m = build_matrix(&f, nu).unwrap();
    let entries = m.submatrix(&(0..12).collect::<Vec<_>>());
    assert_eq!(bareiss_det_with(&entries, Execution::Sequential), bareiss_det_with(&entries, Execution::Parallel));
    assert_eq!(
        complex_summary_with(&f, nu, Execution::Sequential).unwrap(),
        complex_summary_with(&f, nu, Execution::Parallel).unwrap()
    );
    assert!(rank_drop_check_with(&m, &f, 10, 3, Execution::Sequential));
    assert!(rank_drop_check_with(&m, &f, 10, 3, Execution::Parallel));
}
