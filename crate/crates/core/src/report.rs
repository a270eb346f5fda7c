//! Serializable report structures emitted by the CLI.

use serde::Serialize;

use crate::approx_complex::{ComplexSummary, RegionSpec};
use crate::matrix_rep::MatrixRep;
use crate::poly::{Bidegree, Parametrization};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputEcho {
    pub bidegree: Bidegree,
    pub polynomials: Vec<String>,
}

impl From<&Parametrization> for InputEcho {
    fn from(f: &Parametrization) -> Self {
        InputEcho {
            bidegree: f.bidegree(),
            polynomials: f.polys().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionReport {
    pub e: Bidegree,
    /// The good degrees are `(N^2 + corner1) U (N^2 + corner2)`.
    pub corners: [Bidegree; 2],
    pub default_nu: Bidegree,
}

impl From<&RegionSpec> for RegionReport {
    fn from(r: &RegionSpec) -> Self {
        RegionReport { e: r.e, corners: r.corners, default_nu: r.default_nu() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryReport {
    pub dims: [usize; 4],
    pub euler: i64,
    pub macrae_degree: i64,
}

impl From<&ComplexSummary> for SummaryReport {
    fn from(s: &ComplexSummary) -> Self {
        SummaryReport { dims: s.dims, euler: s.euler, macrae_degree: s.macrae_degree }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixReport {
    pub rows: usize,
    pub cols: usize,
    /// Monomials of `S_nu` labelling the rows.
    pub row_monomials: Vec<String>,
    /// Entries as linear forms in `T1..T4`, row by row.
    pub entries: Vec<Vec<String>>,
}

impl From<&MatrixRep> for MatrixReport {
    fn from(m: &MatrixRep) -> Self {
        MatrixReport {
            rows: m.rows(),
            cols: m.cols(),
            row_monomials: m
                .row_basis
                .monomials()
                .iter()
                .map(|mono| crate::poly::BigradedPoly::term(*mono, crate::poly::rat(1)).to_string())
                .collect(),
            entries: m
                .entries
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

/// Milliseconds per pipeline stage. All zero unless timing was requested,
/// so that reruns produce identical reports.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub complex_ms: f64,
    pub matrix_ms: f64,
    pub determinant_ms: f64,
    pub verify_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtraChecks {
    pub rank_drop_trials: usize,
    pub rank_drop: bool,
    /// `None` when the interpolation check was skipped.
    pub oracle_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputReport {
    pub input: InputEcho,
    pub region: RegionReport,
    pub nu_used: Bidegree,
    pub nu_in_good_region: bool,
    pub summary: SummaryReport,
    pub matrix: MatrixReport,
    pub minor_columns: Vec<Vec<usize>>,
    pub determinant_degree: Option<usize>,
    pub equation: Option<String>,
    pub equation_degree: Option<usize>,
    pub verified: bool,
    pub seed: u64,
    pub minors: usize,
    pub checks: Option<ExtraChecks>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertReport {
    pub region: RegionReport,
    pub nu_used: Bidegree,
    pub nu_in_good_region: bool,
    pub summary: SummaryReport,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixOnlyReport {
    pub nu_used: Bidegree,
    pub nu_in_good_region: bool,
    pub matrix: MatrixReport,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub equation: String,
    pub equation_degree: usize,
    pub verified: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}
