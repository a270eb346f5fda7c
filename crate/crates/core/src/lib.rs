//! Implicitization of rational surfaces `P1 x P1 --> P3`.
//!
//! Given four bihomogeneous polynomials `f1..f4` in `s,u,t,v`, the crate
//! builds the degree slices of their Koszul complex, extracts the syzygies
//! of a chosen bidegree `nu`, assembles the matrix representation `M_nu`
//! whose entries are linear forms in `T1..T4`, and computes its determinant
//! exactly. All arithmetic is over `Q`.

pub mod approx_complex;
pub mod error;
pub mod graded_linalg;
pub mod matrix_rep;
pub mod modular;
pub mod par;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod report;
mod zpoly;

pub use approx_complex::{
    complex_summary, in_good_region, koszul_slice, region, syzygy_basis, z_dim, ComplexSummary,
    KoszulSlice, RegionSpec, SyzygyBasis,
};
pub use error::{Error, Result};
pub use graded_linalg::{
    coeff_vector, graded_basis, multiplication_matrix, rref_nullspace, GradedBasis, Nullspace,
    QMatrix,
};
pub use matrix_rep::{
    bareiss_det, build_matrix, interpolation_oracle, rank_drop_check, reduce_equation,
    select_max_minor, verify_substitution, ImplicitResult, LinTForm, MatrixRep,
};
pub use par::Execution;
pub use parse::{parse_poly, parse_tpoly};
pub use poly::{substitute_t, Bidegree, BigradedPoly, Monomial, Parametrization, Rational, TPoly};
