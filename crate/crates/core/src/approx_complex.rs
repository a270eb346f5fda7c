//! Degree slices of the Koszul complex of `f1..f4`, the cycle modules `Z_p`
//! in a fixed degree, and the acyclicity region for `P1 x P1`.
//!
//! Degree conventions follow the module grading: `K_p` is a sum of copies of
//! `S(-p*d)` indexed by `p`-subsets of `{1,2,3,4}`, where `d` is the bidegree
//! of the parametrization. The slice of `K_p` in degree `mu` therefore has
//! column blocks `S_(mu - p*d)`. For a component degree `nu`, `Z_p` is read
//! off in module degree `nu + p*d`, so its elements have coefficients of
//! bidegree `nu`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded_linalg::{multiplication_matrix, rref_nullspace, GradedBasis, QMatrix};
use crate::par::{map_range, Execution};
use crate::poly::{Bidegree, BigradedPoly, Parametrization};

/// One block of rows or columns in a Koszul slice: the basis vector `e_I`
/// tensored with a graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted 0-based indices into `f1..f4`.
    pub subset: Vec<usize>,
    pub basis: GradedBasis,
}

#[derive(Clone, Debug)]
pub struct KoszulSlice {
    pub p: usize,
    pub degree: Bidegree,
    pub matrix: QMatrix,
    pub row_blocks: Vec<Block>,
    pub col_blocks: Vec<Block>,
}

/// `k`-subsets of `{0,1,2,3}` in lexicographic order.
pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..16)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..4).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

/// Matrix of `kappa_p : (K_p)_mu -> (K_(p-1))_mu`.
///
/// The block from `e_I` to `e_(I \ {i})` is `(-1)^pos * (mult. by f_i)` where
/// `pos` is the 0-based position of `i` in `I`.
pub fn koszul_slice(f: &Parametrization, p: usize, mu: Bidegree) -> Result<KoszulSlice> {
    if !(1..=4).contains(&p) {
        return Err(Error::Input(format!("Koszul index {p} outside 1..=4")));
    }
    let d = f.bidegree();
    let src_deg = mu - (p as i64) * d;
    let tgt_deg = mu - (p as i64 - 1) * d;
    let col_blocks: Vec<Block> = subsets(p)
        .into_iter()
        .map(|subset| Block { subset, basis: GradedBasis::new(src_deg) })
        .collect();
    let row_blocks: Vec<Block> = subsets(p - 1)
        .into_iter()
        .map(|subset| Block { subset, basis: GradedBasis::new(tgt_deg) })
        .collect();
    let (nsrc, ntgt) = (src_deg.piece_dim(), tgt_deg.piece_dim());
    let mut matrix = QMatrix::zeros(row_blocks.len() * ntgt, col_blocks.len() * nsrc);

    let mults: Vec<QMatrix> = f
        .polys()
        .iter()
        .map(|fi| multiplication_matrix(fi, src_deg))
        .collect::<Result<_>>()?;
    for (cb, col) in col_blocks.iter().enumerate() {
        for (pos, &i) in col.subset.iter().enumerate() {
            let face: Vec<usize> = col.subset.iter().copied().filter(|&j| j != i).collect();
            let rb = row_blocks.iter().position(|b| b.subset == face).expect("face is a subset");
            let block = if pos % 2 == 0 {
                mults[i].clone()
            } else {
                let mut neg = QMatrix::zeros(mults[i].rows(), mults[i].cols());
                for r in 0..neg.rows() {
                    for c in 0..neg.cols() {
                        neg.set(r, c, -mults[i].get(r, c).clone());
                    }
                }
                neg
            };
            matrix.set_block(rb * ntgt, cb * nsrc, &block);
        }
    }
    Ok(KoszulSlice { p, degree: mu, matrix, row_blocks, col_blocks })
}

/// `dim (Z_p)_(nu + p*d)` for `1 <= p <= 3`.
pub fn z_dim(f: &Parametrization, p: usize, nu: Bidegree) -> Result<usize> {
    if !(1..=3).contains(&p) {
        return Err(Error::Input(format!("Z_{p} is not used; expected 1 <= p <= 3")));
    }
    let slice = koszul_slice(f, p, nu + (p as i64) * f.bidegree())?;
    Ok(slice.matrix.cols() - rref_nullspace(&slice.matrix).rank)
}

/// Basis of the degree-`nu` syzygies `(a1..a4)` with `sum a_i f_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub nu: Bidegree,
    pub columns: Vec<[BigradedPoly; 4]>,
}

impl SyzygyBasis {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// Canonical nullspace basis of `kappa_1` with column blocks `S_nu`.
pub fn syzygy_basis(f: &Parametrization, nu: Bidegree) -> Result<SyzygyBasis> {
    let slice = koszul_slice(f, 1, nu + f.bidegree())?;
    let ns = rref_nullspace(&slice.matrix);
    let basis = GradedBasis::new(nu);
    let n = basis.len();
    let columns = ns
        .basis
        .iter()
        .map(|v| [0, 1, 2, 3].map(|i| basis.polynomial(&v[i * n..(i + 1) * n])))
        .collect();
    Ok(SyzygyBasis { nu, columns })
}

/// Corners of the complement of the acyclicity region `R_B(e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionSpec {
    pub e: Bidegree,
    pub corners: [Bidegree; 2],
}

impl RegionSpec {
    /// Good degrees: `(N^2 + corner1) U (N^2 + corner2)`.
    pub fn is_good(&self, nu: Bidegree) -> bool {
        self.corners.iter().any(|c| nu.dominates(c))
    }

    /// The default evaluation degree, `(2e1 - 1, e2 - 1)`.
    pub fn default_nu(&self) -> Bidegree {
        self.corners[0]
    }
}

/// For `P1 x P1` the local cohomology of the Cox ring with respect to
/// `B = (s,u)(t,v)` lives in `H^2` (supports `a <= -2, b >= 0` and
/// `a >= 0, b <= -2`) and `H^3` (`a, b <= -2`). Shifting by `e` and `2e`
/// leaves the two quadrants with corners `(2e1-1, e2-1)` and `(e1-1, 2e2-1)`.
pub fn region(e: Bidegree) -> Result<RegionSpec> {
    if e.d1 < 1 || e.d2 < 1 {
        return Err(Error::InvalidBidegree(e));
    }
    Ok(region_unchecked(e))
}

fn region_unchecked(e: Bidegree) -> RegionSpec {
    RegionSpec {
        e,
        corners: [
            Bidegree::new(2 * e.d1 - 1, e.d2 - 1),
            Bidegree::new(e.d1 - 1, 2 * e.d2 - 1),
        ],
    }
}

pub fn in_good_region(e: Bidegree, nu: Bidegree) -> bool {
    region_unchecked(e).is_good(nu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub nu: Bidegree,
    /// `(hZ0, hZ1, hZ2, hZ3)`.
    pub dims: [usize; 4],
    pub euler: i64,
    pub macrae_degree: i64,
}

impl ComplexSummary {
    pub fn from_dims(nu: Bidegree, dims: [usize; 4]) -> Self {
        let h = dims.map(|x| x as i64);
        ComplexSummary {
            nu,
            dims,
            euler: h[0] - h[1] + h[2] - h[3],
            macrae_degree: h[1] - 2 * h[2] + 3 * h[3],
        }
    }
}

pub fn complex_summary(f: &Parametrization, nu: Bidegree) -> Result<ComplexSummary> {
    complex_summary_with(f, nu, Execution::default())
}

/// [`complex_summary`] with the three kernel computations run under `exec`.
pub fn complex_summary_with(
    f: &Parametrization,
    nu: Bidegree,
    exec: Execution,
) -> Result<ComplexSummary> {
    let z = map_range(exec, 3, |i| z_dim(f, i + 1, nu));
    let mut dims = [nu.piece_dim(), 0, 0, 0];
    for (i, r) in z.into_iter().enumerate() {
        dims[i + 1] = r?;
    }
    Ok(ComplexSummary::from_dims(nu, dims))
}
