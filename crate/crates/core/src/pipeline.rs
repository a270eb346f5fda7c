//! Input documents and the end-to-end implicitization run.

use std::path::Path;
use std::time::Instant;

use serde::Deserialize;

use crate::approx_complex::{complex_summary_with, region, RegionSpec};
use crate::error::{Error, Result};
use crate::matrix_rep::{
    build_matrix, implicit_equation, interpolation_oracle_with, rank_drop_check_with, MatrixRep,
};
use crate::par::Execution;
use crate::parse::parse_poly;
use crate::poly::{Bidegree, BigradedPoly, Parametrization};
use crate::report::{
    ExtraChecks, HilbertReport, InputEcho, MatrixOnlyReport, OutputReport, RegionReport,
    SummaryReport, Timings,
};

pub const DEFAULT_SEED: u64 = 1;
/// Largest equation degree the optional interpolation cross-check attempts.
pub const ORACLE_MAX_DEGREE: usize = 16;
const RANK_DROP_TRIALS: usize = 20;

/// Parsed input document.
///
/// ```toml
/// bidegree = [2, 3]
/// polynomials = ["s^2*t^3 + ...", "...", "...", "..."]
/// nu = [3, 2]     # optional
/// seed = 7        # optional
/// minors = 1      # optional
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub bidegree: Bidegree,
    pub polynomials: Vec<String>,
    #[serde(default)]
    pub nu: Option<Bidegree>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub minors: Option<usize>,
}

impl InputSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn parametrization(&self) -> Result<Parametrization> {
        if self.polynomials.len() != 4 {
            return Err(Error::Input(format!(
                "expected exactly 4 polynomials, found {}",
                self.polynomials.len()
            )));
        }
        let polys: Vec<BigradedPoly> =
            self.polynomials.iter().map(|s| parse_poly(s)).collect::<Result<_>>()?;
        let polys: [BigradedPoly; 4] = polys.try_into().expect("length checked");
        Parametrization::with_bidegree(polys, self.bidegree)
    }
}

/// Overrides and switches from the command line.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub nu: Option<Bidegree>,
    pub seed: Option<u64>,
    pub minors: Option<usize>,
    pub matrix_only: bool,
    /// Also run the rank-drop and interpolation cross-checks.
    pub extra_checks: bool,
    pub timings: bool,
    pub exec: Execution,
}

/// Validated input with the evaluation degree resolved.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub f: Parametrization,
    pub region: RegionSpec,
    pub nu: Bidegree,
    pub nu_good: bool,
    pub seed: u64,
    pub minors: usize,
    pub warnings: Vec<String>,
}

pub fn prepare(spec: &InputSpec, opts: &RunOptions) -> Result<Prepared> {
    let f = spec.parametrization()?;
    let region = region(f.bidegree())?;
    let nu = opts.nu.or(spec.nu).unwrap_or_else(|| region.default_nu());
    let nu_good = region.is_good(nu);
    let mut warnings = Vec::new();
    if !nu_good {
        warnings.push(format!(
            "nu = {nu} lies in the region R_B{} where the complex may have torsion; \
             good degrees dominate {} or {}",
            region.e, region.corners[0], region.corners[1]
        ));
    }
    Ok(Prepared {
        f,
        region,
        nu,
        nu_good,
        seed: opts.seed.or(spec.seed).unwrap_or(DEFAULT_SEED),
        minors: opts.minors.or(spec.minors).unwrap_or(1).max(1),
        warnings,
    })
}

fn elapsed_ms(start: Instant, enabled: bool) -> f64 {
    if enabled {
        start.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    }
}

pub fn run_hilbert(spec: &InputSpec, opts: &RunOptions) -> Result<HilbertReport> {
    let prep = prepare(spec, opts)?;
    let summary = complex_summary_with(&prep.f, prep.nu, opts.exec)?;
    Ok(HilbertReport {
        region: RegionReport::from(&prep.region),
        nu_used: prep.nu,
        nu_in_good_region: prep.nu_good,
        summary: SummaryReport::from(&summary),
        warnings: prep.warnings,
    })
}

pub fn run_matrix(spec: &InputSpec, opts: &RunOptions) -> Result<(MatrixOnlyReport, MatrixRep)> {
    let prep = prepare(spec, opts)?;
    let m = build_matrix(&prep.f, prep.nu)?;
    Ok((
        MatrixOnlyReport {
            nu_used: prep.nu,
            nu_in_good_region: prep.nu_good,
            matrix: (&m).into(),
            warnings: prep.warnings,
        },
        m,
    ))
}

/// Region, Hilbert data, matrix, determinant, reduction and verification.
pub fn run_implicitize(spec: &InputSpec, opts: &RunOptions) -> Result<OutputReport> {
    let prep = prepare(spec, opts)?;
    let f = &prep.f;
    let mut timings = Timings::default();
    let mut notes = Vec::new();

    let start = Instant::now();
    let summary = complex_summary_with(f, prep.nu, opts.exec)?;
    timings.complex_ms = elapsed_ms(start, opts.timings);
    if summary.dims[2] != 0 || summary.dims[3] != 0 {
        notes.push(format!(
            "Z2 or Z3 is nonzero in degree {}: the slice has more than two terms and \
             the matrix determinant is only one factor of its determinant",
            prep.nu
        ));
    }

    let start = Instant::now();
    let m = build_matrix(f, prep.nu)?;
    timings.matrix_ms = elapsed_ms(start, opts.timings);

    let mut report = OutputReport {
        input: InputEcho::from(f),
        region: RegionReport::from(&prep.region),
        nu_used: prep.nu,
        nu_in_good_region: prep.nu_good,
        summary: SummaryReport::from(&summary),
        matrix: (&m).into(),
        minor_columns: Vec::new(),
        determinant_degree: None,
        equation: None,
        equation_degree: None,
        verified: false,
        seed: prep.seed,
        minors: prep.minors,
        checks: None,
        warnings: prep.warnings.clone(),
        notes: Vec::new(),
        timings: Timings::default(),
    };
    if opts.matrix_only {
        notes.push("determinant skipped (--matrix-only)".into());
        report.notes = notes;
        report.timings = timings;
        return Ok(report);
    }

    let start = Instant::now();
    let res = implicit_equation(&m, f, prep.minors, prep.seed, opts.exec)?;
    timings.determinant_ms = elapsed_ms(start, opts.timings);
    if res.minor_columns.len() < prep.minors {
        notes.push(format!(
            "only {} distinct maximal minor(s) found of {} requested",
            res.minor_columns.len(),
            prep.minors
        ));
    }
    if res.determinant_degree as i64 != summary.macrae_degree {
        notes.push(format!(
            "determinant degree {} differs from the MacRae degree {}",
            res.determinant_degree, summary.macrae_degree
        ));
    }
    if res.degree < res.determinant_degree {
        notes.push(format!(
            "gcd of minors removed a factor of degree {}",
            res.determinant_degree - res.degree
        ));
    }
    notes.push(
        "the equation is the primitive determinant (or gcd of minors); a power of the implicit \
         equation times an extraneous factor is not separated further"
            .into(),
    );

    let start = Instant::now();
    if opts.extra_checks {
        let rank_drop = rank_drop_check_with(&m, f, RANK_DROP_TRIALS, prep.seed, opts.exec);
        let oracle_agrees = (res.degree <= ORACLE_MAX_DEGREE).then(|| {
            interpolation_oracle_with(f, res.degree, prep.seed, opts.exec)
                .map(|eq| eq == res.equation)
                .unwrap_or(false)
        });
        report.checks =
            Some(ExtraChecks { rank_drop_trials: RANK_DROP_TRIALS, rank_drop, oracle_agrees });
    }
    timings.verify_ms = elapsed_ms(start, opts.timings);

    report.minor_columns = res.minor_columns;
    report.determinant_degree = Some(res.determinant_degree);
    report.equation = Some(res.equation.to_string());
    report.equation_degree = Some(res.degree);
    report.verified = res.verified;
    report.notes = notes;
    report.timings = timings;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEGRE: &str = r#"
bidegree = [1, 1]
polynomials = ["s*t", "s*v", "u*t", "u*v"]
"#;

    #[test]
    fn parses_input_document() {
        let spec = InputSpec::from_toml(SEGRE).unwrap();
        assert_eq!(spec.bidegree, Bidegree::new(1, 1));
        assert_eq!(spec.nu, None);
        let with_nu = InputSpec::from_toml(&format!("{SEGRE}nu = [2, 0]\nseed = 9\nminors = 2")).unwrap();
        assert_eq!(with_nu.nu, Some(Bidegree::new(2, 0)));
        assert_eq!((with_nu.seed, with_nu.minors), (Some(9), Some(2)));
        assert!(InputSpec::from_toml("bidegree = [1, 1]\npolynomials = []\ncolour = 3").is_err());
    }

    #[test]
    fn rejects_bad_polynomials() {
        let three = InputSpec::from_toml("bidegree = [1,1]\npolynomials = [\"s*t\",\"s*v\",\"u*t\"]").unwrap();
        assert!(matches!(three.parametrization(), Err(Error::Input(_))));
        let wrong = InputSpec::from_toml("bidegree = [1,2]\npolynomials = [\"s*t\",\"s*v\",\"u*t\",\"u*v\"]").unwrap();
        assert!(matches!(wrong.parametrization(), Err(Error::DegreeMismatch { .. })));
        let mixed = InputSpec::from_toml("bidegree = [1,1]\npolynomials = [\"s*t+s\",\"s*v\",\"u*t\",\"u*v\"]").unwrap();
        assert!(matches!(mixed.parametrization(), Err(Error::NotBihomogeneous(..))));
    }

    #[test]
    fn segre_run() {
        let spec = InputSpec::from_toml(SEGRE).unwrap();
        let r = run_implicitize(&spec, &RunOptions::default()).unwrap();
        assert_eq!(r.nu_used, Bidegree::new(1, 0));
        assert_eq!(r.equation.as_deref(), Some("T1*T4 - T2*T3"));
        assert!(r.verified);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn warns_inside_region() {
        let spec = InputSpec::from_toml(SEGRE).unwrap();
        let opts = RunOptions { nu: Some(Bidegree::new(0, 0)), ..Default::default() };
        let prep = prepare(&spec, &opts).unwrap();
        assert!(!prep.nu_good);
        assert_eq!(prep.warnings.len(), 1);
    }

    #[test]
    fn matrix_only_skips_determinant() {
        let spec = InputSpec::from_toml(SEGRE).unwrap();
        let opts = RunOptions { matrix_only: true, ..Default::default() };
        let r = run_implicitize(&spec, &opts).unwrap();
        assert_eq!(r.equation, None);
        assert!(!r.verified);
        assert_eq!(r.matrix.rows, 2);
    }
}
