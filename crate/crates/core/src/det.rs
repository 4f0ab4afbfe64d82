//! Row and column determinants over the quaternions, and the minor sums built from them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;

pub const DEFAULT_MAX_DET_DIM: usize = 7;

/// Relative tolerance for the Hermitian precondition of the minor sums.
const HERMITIAN_TOL: f64 = 1e-9;

/// Strictly increasing 1-based indices drawn from `1..=ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    indices: Vec<usize>,
    ambient: usize,
}

impl IndexSubset {
    pub fn new(indices: Vec<usize>, ambient: usize) -> Result<Self> {
        if indices.is_empty() || indices.len() > ambient {
            return Err(Error::InvalidSize { r: indices.len(), n: ambient });
        }
        if indices[0] < 1 || *indices.last().unwrap() > ambient || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMatrix(format!("{indices:?} is not an increasing subset of 1..={ambient}")));
        }
        Ok(IndexSubset { indices, ambient })
    }

    pub fn full(n: usize) -> Self {
        IndexSubset { indices: (1..=n).collect(), ambient: n }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// 1-based position of `i` inside the subset.
    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.binary_search(&i).ok().map(|p| p + 1)
    }

    fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }
}

/// Lexicographically ordered `r`-subsets of `1..=n`, optionally restricted to those containing `anchor`.
pub fn enumerate_subsets(n: usize, r: usize, anchor: Option<usize>) -> Result<Vec<IndexSubset>> {
    if r == 0 || r > n {
        return Err(Error::InvalidSize { r, n });
    }
    if let Some(a) = anchor {
        if a == 0 || a > n {
            return Err(Error::InvalidIndex { index: a, n });
        }
    }
    Ok((1..=n)
        .combinations(r)
        .filter(|c| anchor.is_none_or(|a| c.contains(&a)))
        .map(|indices| IndexSubset { indices, ambient: n })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetSide {
    Row,
    Column,
}

/// A permutation written as a product of disjoint cycles in the canonical order used by
/// `rdet_i` (anchor cycle first) or `cdet_j` (anchor cycle last). Indices are 1-based and each
/// cycle lists `x, p(x), p(p(x)), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePermutation {
    cycles: Vec<Vec<usize>>,
    anchor: usize,
    side: DetSide,
}

impl CyclePermutation {
    /// `image[k]` is the 1-based image of `k + 1`.
    pub fn canonical(image: &[usize], anchor: usize, side: DetSide) -> Result<Self> {
        let n = image.len();
        if anchor == 0 || anchor > n {
            return Err(Error::InvalidIndex { index: anchor, n });
        }
        let zero: Vec<usize> = image.iter().map(|&v| v.wrapping_sub(1)).collect();
        if !zero.iter().all(|&v| v < n) || zero.iter().unique().count() != n {
            return Err(Error::InvalidMatrix(format!("{image:?} is not a permutation")));
        }
        let cycles = canonical_cycles(&zero, anchor - 1, side)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v + 1).collect())
            .collect();
        Ok(CyclePermutation { cycles, anchor, side })
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn side(&self) -> DetSide {
        self.side
    }

    /// `(-1)^(n - r)` with `r` the number of cycles, fixed points included.
    pub fn sign(&self) -> f64 {
        let n: usize = self.cycles.iter().map(Vec::len).sum();
        if (n - self.cycles.len()).is_multiple_of(2) { 1.0 } else { -1.0 }
    }

    /// The ordered `(row, col)` index pairs of the product term, 1-based.
    pub fn factors(&self) -> Vec<(usize, usize)> {
        self.cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()])))
            .collect()
    }
}

/// Disjoint cycles of a 0-based permutation, each rooted at its minimum, sorted by minimum.
fn disjoint_cycles(image: &[usize]) -> Vec<Vec<usize>> {
    let n = image.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = image[x];
        }
        cycles.push(cycle);
    }
    cycles
}

fn canonical_cycles(image: &[usize], anchor: usize, side: DetSide) -> Vec<Vec<usize>> {
    let all = disjoint_cycles(image);
    let (mut with_anchor, mut others): (Vec<_>, Vec<_>) = all.into_iter().partition(|c| c.contains(&anchor));
    let mut anchored = with_anchor.pop().expect("anchor lies in exactly one cycle");
    let at = anchored.iter().position(|&x| x == anchor).unwrap();
    anchored.rotate_left(at);
    match side {
        DetSide::Row => {
            let mut out = vec![anchored];
            out.extend(others);
            out
        }
        DetSide::Column => {
            others.reverse();
            others.push(anchored);
            others
        }
    }
}

/// One product term: sign and the flat `row * n + col` indices of its factors, in order.
struct Term {
    sign: f64,
    factors: Vec<u16>,
}

struct PermTable {
    n: usize,
    rows: Vec<Vec<Term>>,
    cols: Vec<Vec<Term>>,
}

impl PermTable {
    fn build(n: usize) -> Self {
        let images: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let terms = |anchor: usize, side: DetSide| -> Vec<Term> {
            images
                .iter()
                .map(|img| {
                    let cycles = canonical_cycles(img, anchor, side);
                    let sign = if (n - cycles.len()).is_multiple_of(2) { 1.0 } else { -1.0 };
                    let factors = cycles
                        .iter()
                        .flat_map(|c| (0..c.len()).map(move |k| (c[k] * n + c[(k + 1) % c.len()]) as u16))
                        .collect();
                    Term { sign, factors }
                })
                .collect()
        };
        PermTable {
            n,
            rows: (0..n).map(|a| terms(a, DetSide::Row)).collect(),
            cols: (0..n).map(|a| terms(a, DetSide::Column)).collect(),
        }
    }

    fn eval(&self, entries: &[Quaternion], anchor: usize, side: DetSide) -> Quaternion {
        debug_assert_eq!(entries.len(), self.n * self.n);
        let terms = match side {
            DetSide::Row => &self.rows[anchor],
            DetSide::Column => &self.cols[anchor],
        };
        let mut acc = Quaternion::ZERO;
        for t in terms {
            let mut p = Quaternion::ONE;
            for &f in &t.factors {
                p *= entries[f as usize];
            }
            acc += p * t.sign;
        }
        acc
    }
}

fn table(n: usize) -> Arc<PermTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PermTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(PermTable::build(n));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(n).or_insert(built))
}

/// Number of product terms visited for an `n x n` determinant.
pub fn term_count(n: usize) -> usize {
    (1..=n).product()
}

/// Determinant evaluator with a cap on the matrix dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetEngine {
    pub max_dim: usize,
}

impl Default for DetEngine {
    fn default() -> Self {
        DetEngine { max_dim: DEFAULT_MAX_DET_DIM }
    }
}

impl DetEngine {
    pub fn new(max_dim: usize) -> Self {
        DetEngine { max_dim: max_dim.max(1) }
    }

    fn check_square(&self, a: &QMatrix) -> Result<usize> {
        if !a.is_square() {
            return Err(Error::NotSquare(a.rows(), a.cols()));
        }
        let n = a.rows();
        if n > self.max_dim {
            return Err(Error::DimensionTooLarge { n, max: self.max_dim });
        }
        Ok(n)
    }

    fn anchored(&self, a: &QMatrix, index: usize, side: DetSide) -> Result<Quaternion> {
        let n = self.check_square(a)?;
        if index == 0 || index > n {
            return Err(Error::InvalidIndex { index, n });
        }
        Ok(table(n).eval(a.entries(), index - 1, side))
    }

    /// The `i`th row determinant (1-based `i`).
    pub fn rdet(&self, a: &QMatrix, i: usize) -> Result<Quaternion> {
        self.anchored(a, i, DetSide::Row)
    }

    /// The `j`th column determinant (1-based `j`).
    pub fn cdet(&self, a: &QMatrix, j: usize) -> Result<Quaternion> {
        self.anchored(a, j, DetSide::Column)
    }

    /// Determinant of a Hermitian matrix, after checking that all row and column
    /// determinants agree and are real within `tol * (1 + |det|)`.
    pub fn hdet(&self, a: &QMatrix, tol: f64) -> Result<f64> {
        let n = self.check_square(a)?;
        let defect = a.hermitian_defect()?;
        if defect > tol {
            return Err(Error::NotHermitian(defect));
        }
        let t = table(n);
        let base = t.eval(a.entries(), 0, DetSide::Row);
        let bound = tol * (1.0 + base.norm());
        let mut spread = base.imag_max_abs();
        for k in 0..n {
            for side in [DetSide::Row, DetSide::Column] {
                let v = t.eval(a.entries(), k, side);
                spread = spread.max(v.dist(base)).max(v.imag_max_abs());
            }
        }
        if spread > bound {
            return Err(Error::InconsistentDeterminants(spread));
        }
        Ok(base.w)
    }

    /// Real part of `rdet_1`, with no agreement check.
    fn hdet_fast(&self, a: &QMatrix) -> Result<f64> {
        Ok(self.rdet(a, 1)?.w)
    }

    fn check_minor_args(&self, h: &QMatrix, r: usize) -> Result<usize> {
        let n = self.check_hermitian(h)?;
        if r == 0 || r > n {
            return Err(Error::InvalidSize { r, n });
        }
        if r > self.max_dim {
            return Err(Error::DimensionTooLarge { n: r, max: self.max_dim });
        }
        Ok(n)
    }

    fn check_hermitian(&self, h: &QMatrix) -> Result<usize> {
        if !h.is_square() {
            return Err(Error::NotSquare(h.rows(), h.cols()));
        }
        let defect = h.hermitian_defect()?;
        if defect > HERMITIAN_TOL * (1.0 + h.fro_norm()) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(h.rows())
    }

    /// Sum of all `r x r` principal minors of the Hermitian matrix `h`.
    pub fn principal_minor_sum(&self, h: &QMatrix, r: usize) -> Result<f64> {
        let n = self.check_minor_args(h, r)?;
        let mut total = 0.0;
        for beta in enumerate_subsets(n, r, None)? {
            let idx = beta.zero_based();
            total += self.hdet_fast(&h.select(&idx, &idx))?;
        }
        Ok(total)
    }

    /// Replaces column `i` of `h` by `d`, then sums `cdet` at the position of `i` over all
    /// `r x r` principal submatrices whose index set contains `i`.
    pub fn bordered_cdet_sum(&self, h: &QMatrix, i: usize, d: &[Quaternion], r: usize) -> Result<Quaternion> {
        self.bordered(h, i, d, r, DetSide::Column, true)
    }

    /// Row counterpart of [`DetEngine::bordered_cdet_sum`]: replaces row `j` by `d` and sums `rdet`.
    pub fn bordered_rdet_sum(&self, h: &QMatrix, j: usize, d: &[Quaternion], r: usize) -> Result<Quaternion> {
        self.bordered(h, j, d, r, DetSide::Row, true)
    }

    fn bordered(&self, h: &QMatrix, i: usize, d: &[Quaternion], r: usize, side: DetSide, shortcut: bool) -> Result<Quaternion> {
        let n = self.check_minor_args(h, r)?;
        if i == 0 || i > n {
            return Err(Error::InvalidIndex { index: i, n });
        }
        if d.len() != n {
            return Err(Error::mismatch("bordered sum", (n, 1), (d.len(), 1)));
        }
        let bordered = match side {
            DetSide::Column => h.with_col(i - 1, d),
            DetSide::Row => h.with_row(i - 1, d),
        };
        if shortcut && r == n {
            return self.anchored(&bordered, i, side);
        }
        let mut total = Quaternion::ZERO;
        for beta in enumerate_subsets(n, r, Some(i))? {
            let idx = beta.zero_based();
            let pos = beta.position(i).unwrap();
            total += self.anchored(&bordered.select(&idx, &idx), pos, side)?;
        }
        Ok(total)
    }
}
