//! Dense quaternion matrices and their complex adjoint representation.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::svd;

/// Absolute singular-value floor used when no override is given.
pub const DEFAULT_RANK_FLOOR: f64 = 1e-10;

/// Numerical rank criterion: a singular value counts iff it exceeds
/// `max(rows, cols) * EPSILON * sigma_max` and the absolute floor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankTolerance {
    pub abs_floor: f64,
}

impl Default for RankTolerance {
    fn default() -> Self {
        RankTolerance { abs_floor: DEFAULT_RANK_FLOOR }
    }
}

impl RankTolerance {
    pub fn with_floor(abs_floor: f64) -> Self {
        RankTolerance { abs_floor }
    }

    /// Threshold for a `rows x cols` (complex) matrix whose largest singular value is `sigma_max`.
    pub fn threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        let rel = rows.max(cols) as f64 * f64::EPSILON * sigma_max;
        rel.max(self.abs_floor)
    }
}

#[derive(Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!("dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidMatrix(format!("entry {bad} is not finite")));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::InvalidMatrix(format!("ragged row {i}: expected {c} entries")));
        }
        QMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from real 4-tuples given row by row.
    pub fn from_arrays(rows: usize, cols: usize, entries: &[[f64; 4]]) -> Result<Self> {
        QMatrix::new(rows, cols, entries.iter().copied().map(Quaternion::from_array).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        assert!(rows > 0 && cols > 0, "QMatrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::from_fn(rows, cols, |_, _| Quaternion::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Quaternion> {
        (i < self.rows && j < self.cols).then(|| self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> Vec<Quaternion> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Quaternion>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| *q == Quaternion::ZERO)
    }

    /// Conjugate transpose.
    pub fn ctranspose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn checked_add(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with("madd", rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.zip_with("msub", rhs, |a, b| a - b)
    }

    pub fn checked_mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch("mmul", self.shape(), rhs.shape()));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, op: &'static str, rhs: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<QMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::mismatch(op, self.shape(), rhs.shape()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(QMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// `q * A`, scaling from the left.
    pub fn scalar_lmul(&self, q: Quaternion) -> QMatrix {
        self.map(|a| q * a)
    }

    /// `A * q`, scaling from the right.
    pub fn scalar_rmul(&self, q: Quaternion) -> QMatrix {
        self.map(|a| a * q)
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        self.map(|a| a * s)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| f(*q)).collect() }
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise distance; infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| a.dist(*b)).fold(0.0, f64::max)
    }

    /// Frobenius distance; infinite when shapes differ.
    pub fn fro_dist(&self, other: &QMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_defect()? <= tol)
    }

    /// `max |A - A*|` entrywise.
    pub fn hermitian_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max(self[(i, j)].dist(self[(j, i)].conj()));
            }
        }
        Ok(worst)
    }

    /// `A* A`, with the lower triangle mirrored from the upper so the result is exactly Hermitian.
    pub fn gram_left(&self) -> QMatrix {
        hermitian_product(&self.ctranspose(), self)
    }

    /// `A A*`, exactly Hermitian.
    pub fn gram_right(&self) -> QMatrix {
        hermitian_product(self, &self.ctranspose())
    }

    /// Copy of `self` with column `j` replaced by `col`.
    pub fn with_col(&self, j: usize, col: &[Quaternion]) -> QMatrix {
        assert_eq!(col.len(), self.rows, "replacement column length");
        let mut out = self.clone();
        for (i, q) in col.iter().enumerate() {
            out[(i, j)] = *q;
        }
        out
    }

    /// Copy of `self` with row `i` replaced by `row`.
    pub fn with_row(&self, i: usize, row: &[Quaternion]) -> QMatrix {
        assert_eq!(row.len(), self.cols, "replacement row length");
        let mut out = self.clone();
        out.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(row);
        out
    }

    /// Submatrix with the given (0-based) row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        QMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }

    /// `[self other]`.
    pub fn hcat(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(Error::mismatch("hcat", self.shape(), other.shape()));
        }
        Ok(QMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self[(i, j)] } else { other[(i, j - self.cols)] }
        }))
    }

    /// `[self; other]`.
    pub fn vcat(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::mismatch("vcat", self.shape(), other.shape()));
        }
        Ok(QMatrix::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows { self[(i, j)] } else { other[(i - self.rows, j)] }
        }))
    }

    /// The 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &QMatrix, b: &QMatrix, c: &QMatrix, d: &QMatrix) -> Result<QMatrix> {
        a.hcat(b)?.vcat(&c.hcat(d)?)
    }

    /// Writing `A = A1 + A2 j` with complex `A1, A2`, returns `[[A1, A2], [-conj(A2), conj(A1)]]`.
    pub fn complex_embed(&self) -> ComplexMatrix {
        let (m, n) = self.shape();
        let mut out = ComplexMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let q = self[(i, j)];
                let a1 = Complex64::new(q.w, q.x);
                let a2 = Complex64::new(q.y, q.z);
                out[(i, j)] = a1;
                out[(i, j + n)] = a2;
                out[(i + m, j)] = -a2.conj();
                out[(i + m, j + n)] = a1.conj();
            }
        }
        out
    }

    /// Inverse of [`QMatrix::complex_embed`]; both copies of each block are averaged.
    pub fn from_complex_embedding(c: &ComplexMatrix) -> Result<QMatrix> {
        if !c.rows().is_multiple_of(2) || !c.cols().is_multiple_of(2) || c.rows() == 0 || c.cols() == 0 {
            return Err(Error::InvalidMatrix(format!(
                "complex embedding must have even positive dimensions, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        let (m, n) = (c.rows() / 2, c.cols() / 2);
        Ok(QMatrix::from_fn(m, n, |i, j| {
            let a1 = (c[(i, j)] + c[(i + m, j + n)].conj()) * 0.5;
            let a2 = (c[(i, j + n)] - c[(i + m, j)].conj()) * 0.5;
            Quaternion::new(a1.re, a1.im, a2.re, a2.im)
        }))
    }

    /// Quaternion rank: half the numerical rank of the complex embedding.
    pub fn rank(&self, tol: &RankTolerance) -> usize {
        let embedded = self.complex_embed();
        embedded.rank(tol).div_ceil(2)
    }

    /// Singular values of the quaternion matrix (each appears once, not twice as in the embedding).
    pub fn singular_values(&self) -> Vec<f64> {
        let s = svd::singular_values(&self.complex_embed());
        s.into_iter().step_by(2).collect()
    }
}

fn hermitian_product(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.rows();
    let mut g = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v: Quaternion = (0..a.cols()).map(|k| a[(i, k)] * b[(k, j)]).sum();
            if i == j {
                g[(i, i)] = Quaternion::real(v.w);
            } else {
                g[(i, j)] = v;
                g[(j, i)] = v.conj();
            }
        }
    }
    g
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds for {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds for {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `checked_*` methods return errors instead.

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QMatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Quaternion>>,
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QMatrixJson { rows: self.rows, cols: self.cols, data: self.to_rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QMatrixJson::deserialize(deserializer)?;
        if raw.data.len() != raw.rows {
            return Err(D::Error::custom(format!("declared {} rows but data has {}", raw.rows, raw.data.len())));
        }
        if let Some(i) = raw.data.iter().position(|r| r.len() != raw.cols) {
            return Err(D::Error::custom(format!("ragged row {i}: expected {} entries", raw.cols)));
        }
        QMatrix::new(raw.rows, raw.cols, raw.data.into_iter().flatten().collect()).map_err(D::Error::custom)
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = ComplexMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn conj_transpose(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn checked_mul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch("complex mmul", (self.rows, self.cols), (rhs.rows, rhs.cols)));
        }
        Ok(ComplexMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        }))
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn rank(&self, tol: &RankTolerance) -> usize {
        let s = svd::singular_values(self);
        let smax = s.first().copied().unwrap_or(0.0);
        let thresh = tol.threshold(self.rows, self.cols, smax);
        s.iter().filter(|&&v| v > thresh).count()
    }

    /// Moore-Penrose inverse from the SVD, dropping singular values at or below the rank threshold.
    pub fn pinv(&self, tol: &RankTolerance) -> ComplexMatrix {
        let dec = svd::svd(self);
        let smax = dec.s.first().copied().unwrap_or(0.0);
        let thresh = tol.threshold(self.rows, self.cols, smax);
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for (k, &s) in dec.s.iter().enumerate() {
            if s <= thresh {
                continue;
            }
            let inv = 1.0 / s;
            for i in 0..self.cols {
                let vik = dec.v[(i, k)] * inv;
                for j in 0..self.rows {
                    out[(i, j)] += vik * dec.u[(j, k)].conj();
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::QRng;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    pub(crate) fn example1_a1() -> QMatrix {
        QMatrix::from_rows(vec![vec![I, ONE], vec![-ONE, I], vec![K, -J]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = QRng::new(3);
        let a = rng.matrix(2, 2);
        assert_eq!(&QMatrix::identity(2) * &a, a);
        assert_eq!(&a * &QMatrix::identity(2), a);
    }

    #[test]
    fn one_by_one_reduces_to_scalar_product() {
        let a = QMatrix::from_rows(vec![vec![I]]).unwrap();
        let b = QMatrix::from_rows(vec![vec![J]]).unwrap();
        assert_eq!(&a * &b, QMatrix::from_rows(vec![vec![K]]).unwrap());
    }

    #[test]
    fn left_and_right_scaling_differ() {
        let a = QMatrix::from_rows(vec![vec![I]]).unwrap();
        assert_eq!(a.scalar_lmul(J)[(0, 0)], -K);
        assert_eq!(a.scalar_rmul(J)[(0, 0)], K);
    }

    #[test]
    fn mismatched_shapes_are_errors() {
        let a = QMatrix::zeros(2, 3);
        let b = QMatrix::zeros(2, 2);
        assert!(matches!(a.checked_mul(&a), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.checked_add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.checked_sub(&b), Err(Error::DimensionMismatch { .. })));
        assert!(b.checked_mul(&a).is_ok());
    }

    #[test]
    fn ctranspose_examples() {
        let a = QMatrix::from_rows(vec![vec![I, ONE]]).unwrap();
        let expected = QMatrix::from_rows(vec![vec![-I], vec![ONE]]).unwrap();
        assert_eq!(a.ctranspose(), expected);
        let mut rng = QRng::new(11);
        let b = rng.matrix(3, 2);
        assert_eq!(b.ctranspose().ctranspose(), b);
    }

    #[test]
    fn gram_of_a1_is_hermitian_with_real_diagonal() {
        // A1* A1 = [[3, -3i], [3i, 3]] by direct expansion.
        let g = example1_a1().gram_left();
        let expected = QMatrix::from_rows(vec![vec![ONE * 3.0, I * -3.0], vec![I * 3.0, ONE * 3.0]]).unwrap();
        assert!(g.max_abs_diff(&expected) < 1e-15);
        assert!(g.is_hermitian(0.0).unwrap());
        let plain = &example1_a1().ctranspose() * &example1_a1();
        assert!(plain.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn hermitian_checks() {
        let h = QMatrix::from_rows(vec![vec![ONE * 6.0, J * 4.0], vec![J * -4.0, ONE * 3.0]]).unwrap();
        assert!(h.is_hermitian(1e-12).unwrap());
        let nil = QMatrix::from_rows(vec![vec![Quaternion::ZERO, ONE], vec![Quaternion::ZERO, Quaternion::ZERO]]).unwrap();
        assert!(!nil.is_hermitian(1e-12).unwrap());
        let mut rng = QRng::new(5);
        let a = rng.matrix(3, 2);
        assert!((&a * &a.ctranspose()).is_hermitian(1e-12).unwrap());
        assert!(matches!(QMatrix::zeros(2, 3).is_hermitian(1e-12), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn embedding_of_units() {
        let j = QMatrix::from_rows(vec![vec![J]]).unwrap().complex_embed();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        assert_eq!(j.entries(), &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        let i = QMatrix::from_rows(vec![vec![I]]).unwrap().complex_embed();
        assert_eq!(i.entries(), &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]);
    }

    #[test]
    fn embedding_round_trips() {
        let mut rng = QRng::new(8);
        let a = rng.matrix(3, 4);
        let back = QMatrix::from_complex_embedding(&a.complex_embed()).unwrap();
        assert!(back.max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let mut rng = QRng::new(21);
        for _ in 0..20 {
            let a = rng.matrix(2, 3);
            let b = rng.matrix(3, 2);
            let c = rng.matrix(2, 3);
            let prod = (&a * &b).complex_embed();
            let emb = a.complex_embed().checked_mul(&b.complex_embed()).unwrap();
            assert!(prod.max_abs_diff(&emb) < 1e-12);
            let sum = (&a + &c).complex_embed();
            let esum = ComplexMatrix::from_fn(4, 6, |i, j| a.complex_embed()[(i, j)] + c.complex_embed()[(i, j)]);
            assert!(sum.max_abs_diff(&esum) < 1e-12);
        }
    }

    #[test]
    fn rank_examples() {
        let tol = RankTolerance::default();
        assert_eq!(QMatrix::zeros(3, 2).rank(&tol), 0);
        assert_eq!(example1_a1().rank(&tol), 1);
        let a = QMatrix::from_rows(vec![vec![ONE * 2.0, J], vec![-K, I], vec![I, K]]).unwrap();
        assert_eq!(a.rank(&tol), 2);
        assert_eq!(QMatrix::identity(4).rank(&tol), 4);
    }

    #[test]
    fn rank_is_invariant_under_adjoint_and_gram() {
        let tol = RankTolerance::default();
        let mut rng = QRng::new(99);
        for _ in 0..40 {
            let m = rng.dim(1, 4);
            let n = rng.dim(1, 4);
            let r = rng.dim(0, m.min(n));
            let a = rng.planted_rank(m, n, r);
            assert_eq!(a.rank(&tol), r);
            assert_eq!(a.ctranspose().rank(&tol), r);
            assert_eq!(a.gram_left().rank(&tol), r);
            assert_eq!(a.gram_right().rank(&tol), r);
            assert_eq!(a.complex_embed().rank(&tol) % 2, 0);
        }
    }

    #[test]
    fn frobenius_norms() {
        assert_eq!(QMatrix::zeros(2, 2).fro_norm(), 0.0);
        let a = QMatrix::from_rows(vec![vec![q(1.0, 1.0, 0.0, 0.0)]]).unwrap();
        assert!((a.fro_norm() - 2f64.sqrt()).abs() < 1e-15);
        assert!((QMatrix::identity(3).fro_norm() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn adjoint_reverses_products() {
        let mut rng = QRng::new(4);
        for _ in 0..20 {
            let a = rng.matrix(3, 2);
            let b = rng.matrix(2, 4);
            let lhs = (&a * &b).ctranspose();
            let rhs = &b.ctranspose() * &a.ctranspose();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn json_shape_and_validation() {
        let a = QMatrix::from_rows(vec![vec![I, ONE]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":[[[0.0,1.0,0.0,0.0],[1.0,0.0,0.0,0.0]]]}"#);
        let back: QMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let ragged = r#"{"rows":2,"cols":2,"data":[[[1,0,0,0],[0,0,0,0]],[[1,0,0,0]]]}"#;
        assert!(serde_json::from_str::<QMatrix>(ragged).is_err());
        let wrong_rows = r#"{"rows":3,"cols":1,"data":[[[1,0,0,0]]]}"#;
        assert!(serde_json::from_str::<QMatrix>(wrong_rows).is_err());
        let empty = r#"{"rows":0,"cols":0,"data":[]}"#;
        assert!(serde_json::from_str::<QMatrix>(empty).is_err());
    }

    #[test]
    fn blocks_and_concatenation() {
        let a = QMatrix::identity(2);
        let z = QMatrix::zeros(2, 1);
        let h = a.hcat(&z).unwrap();
        assert_eq!(h.shape(), (2, 3));
        let v = a.vcat(&QMatrix::zeros(1, 2)).unwrap();
        assert_eq!(v.shape(), (3, 2));
        assert!(a.hcat(&QMatrix::zeros(3, 1)).is_err());
        let b = QMatrix::block(&a, &z, &QMatrix::zeros(1, 2), &QMatrix::identity(1)).unwrap();
        assert_eq!(b, QMatrix::identity(3));
    }
}
