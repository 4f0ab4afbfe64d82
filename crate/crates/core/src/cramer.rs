//! Determinantal (Cramer-rule) representations of `A†C`, `CB†` and `A†CB†`.
//!
//! [`LeftGram`] holds `H = A*A`; its numerators turn `A*Z` into `A†Z` up to the common
//! denominator. [`RightGram`] does the same on the right with `H = BB*`. Both maps are linear
//! in a way that lets nested formulas be assembled as ordinary matrix products.

use crate::config::Settings;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// Which of the two dual representations of `A†CB†` to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Form {
    /// Column determinants of `A*A` applied to row-determinant vectors over `BB*`.
    #[default]
    Column,
    /// Row determinants of `BB*` applied to column-determinant vectors over `A*A`.
    Row,
}

/// `num / den` with a real denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct DetFraction {
    pub num: QMatrix,
    pub den: f64,
}

impl DetFraction {
    pub fn value(&self) -> QMatrix {
        self.num.scale(1.0 / self.den)
    }
}

/// `H = A*A` for an `m x n` matrix `A`, with rank and principal-minor denominator.
#[derive(Clone, Debug)]
pub struct LeftGram {
    h: QMatrix,
    rank: usize,
    den: f64,
    settings: Settings,
}

impl LeftGram {
    pub fn new(a: &QMatrix, settings: &Settings) -> Result<Self> {
        let h = a.gram_left();
        Self::from_gram(h, a.rank(&settings.rank), settings)
    }

    fn from_gram(h: QMatrix, rank: usize, settings: &Settings) -> Result<Self> {
        let den = if rank == 0 { 1.0 } else { settings.det.principal_minor_sum(&h, rank)? };
        Ok(LeftGram { h, rank, den, settings: *settings })
    }

    pub fn gram(&self) -> &QMatrix {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn den(&self) -> f64 {
        self.den
    }

    /// Entry `(i, j)` is the bordered column-determinant sum of `H` with column `i` replaced by
    /// column `j` of `y`. Right-linear: `numerators(Y W) = numerators(Y) W`.
    pub fn numerators(&self, y: &QMatrix) -> Result<QMatrix> {
        let n = self.h.rows();
        if y.rows() != n {
            return Err(Error::mismatch("left numerators", self.h.shape(), y.shape()));
        }
        if self.rank == 0 {
            return Ok(QMatrix::zeros(n, y.cols()));
        }
        let mut out = QMatrix::zeros(n, y.cols());
        for j in 0..y.cols() {
            let d = y.col(j);
            for i in 0..n {
                out[(i, j)] = self.settings.det.bordered_cdet_sum(&self.h, i + 1, &d, self.rank)?;
            }
        }
        Ok(out)
    }

    /// `A†Z` given `A*Z`.
    pub fn apply(&self, astar_z: &QMatrix) -> Result<QMatrix> {
        Ok(self.numerators(astar_z)?.scale(1.0 / self.den))
    }
}

/// `H = BB*` for an `r x s` matrix `B`, with rank and principal-minor denominator.
#[derive(Clone, Debug)]
pub struct RightGram {
    h: QMatrix,
    rank: usize,
    den: f64,
    settings: Settings,
}

impl RightGram {
    pub fn new(b: &QMatrix, settings: &Settings) -> Result<Self> {
        let h = b.gram_right();
        let rank = b.rank(&settings.rank);
        let den = if rank == 0 { 1.0 } else { settings.det.principal_minor_sum(&h, rank)? };
        Ok(RightGram { h, rank, den, settings: *settings })
    }

    pub fn gram(&self) -> &QMatrix {
        &self.h
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn den(&self) -> f64 {
        self.den
    }

    /// Entry `(i, j)` is the bordered row-determinant sum of `H` with row `j` replaced by row `i`
    /// of `y`. Left-linear: `numerators(W Y) = W numerators(Y)`.
    pub fn numerators(&self, y: &QMatrix) -> Result<QMatrix> {
        let r = self.h.rows();
        if y.cols() != r {
            return Err(Error::mismatch("right numerators", y.shape(), self.h.shape()));
        }
        if self.rank == 0 {
            return Ok(QMatrix::zeros(y.rows(), r));
        }
        let mut out = QMatrix::zeros(y.rows(), r);
        for i in 0..y.rows() {
            let d = y.row(i);
            for j in 0..r {
                out[(i, j)] = self.settings.det.bordered_rdet_sum(&self.h, j + 1, &d, self.rank)?;
            }
        }
        Ok(out)
    }

    /// `Z B†` given `Z B*`.
    pub fn apply(&self, z_bstar: &QMatrix) -> Result<QMatrix> {
        Ok(self.numerators(z_bstar)?.scale(1.0 / self.den))
    }
}

/// Numerator and denominator of `A†CB†` from `C̃ = A*CB*`.
pub fn two_sided(left: &LeftGram, right: &RightGram, c_tilde: &QMatrix, form: Form) -> Result<DetFraction> {
    let num = match form {
        Form::Column => left.numerators(&right.numerators(c_tilde)?)?,
        Form::Row => right.numerators(&left.numerators(c_tilde)?)?,
    };
    Ok(DetFraction { num, den: left.den() * right.den() })
}

/// `A†CB†` by determinants.
pub fn cramer_axb(a: &QMatrix, c: &QMatrix, b: &QMatrix, form: Form, settings: &Settings) -> Result<QMatrix> {
    let c_tilde = a.ctranspose().checked_mul(c)?.checked_mul(&b.ctranspose())?;
    let left = LeftGram::new(a, settings)?;
    let right = RightGram::new(b, settings)?;
    Ok(two_sided(&left, &right, &c_tilde, form)?.value())
}

/// `A†C` by determinants.
pub fn cramer_ax(a: &QMatrix, c: &QMatrix, settings: &Settings) -> Result<QMatrix> {
    let c_hat = a.ctranspose().checked_mul(c)?;
    LeftGram::new(a, settings)?.apply(&c_hat)
}

/// `CB†` by determinants.
pub fn cramer_xb(c: &QMatrix, b: &QMatrix, settings: &Settings) -> Result<QMatrix> {
    let c_hat = c.checked_mul(&b.ctranspose())?;
    RightGram::new(b, settings)?.apply(&c_hat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pinv::mp_oracle;
    use crate::quaternion::Quaternion;
    use crate::random::QRng;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;
    const ONE: Quaternion = Quaternion::ONE;

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn identities_return_c() {
        let mut rng = QRng::new(1);
        let c = rng.matrix(3, 2);
        for form in [Form::Column, Form::Row] {
            let x = cramer_axb(&QMatrix::identity(3), &c, &QMatrix::identity(2), form, &s()).unwrap();
            assert!(x.max_abs_diff(&c) < 1e-12);
        }
    }

    #[test]
    fn annihilated_right_hand_side_gives_zero() {
        let a1 = QMatrix::from_rows(vec![vec![I, ONE], vec![-ONE, I], vec![K, -J]]).unwrap();
        let b1 = QMatrix::from_rows(vec![vec![I], vec![K]]).unwrap();
        let c = QMatrix::from_rows(vec![vec![ONE], vec![I], vec![J * 2.0]]).unwrap();
        assert!((&(&a1.ctranspose() * &c) * &b1.ctranspose()).is_zero());
        let x = cramer_axb(&a1, &c, &b1, Form::Column, &s()).unwrap();
        assert!(x.fro_norm() < 1e-14);
    }

    #[test]
    fn matches_pseudoinverse_products() {
        let mut rng = QRng::new(2);
        for _ in 0..25 {
            let (m, n, r, q) = (rng.dim(1, 4), rng.dim(1, 4), rng.dim(1, 4), rng.dim(1, 4));
            let rank_a = rng.dim(0, m.min(n));
            let a = rng.planted_rank(m, n, rank_a);
            let rank_b = rng.dim(0, r.min(q));
            let b = rng.planted_rank(r, q, rank_b);
            let c = rng.matrix(m, q);
            let ap = mp_oracle(&a, &s().rank).pinv;
            let bp = mp_oracle(&b, &s().rank).pinv;
            let expected = &(&ap * &c) * &bp;
            for form in [Form::Column, Form::Row] {
                let x = cramer_axb(&a, &c, &b, form, &s()).unwrap();
                assert!(x.max_abs_diff(&expected) < 1e-9, "{form:?}");
            }
            assert!(cramer_ax(&a, &c, &s()).unwrap().max_abs_diff(&(&ap * &c)) < 1e-9);
            let c2 = rng.matrix(m, q);
            assert!(cramer_xb(&c2, &b, &s()).unwrap().max_abs_diff(&(&c2 * &bp)) < 1e-9);
        }
    }

    #[test]
    fn consistent_left_equation_is_solved() {
        let mut rng = QRng::new(3);
        for _ in 0..20 {
            let rank_a = rng.dim(1, 3);
            let a = rng.planted_rank(4, 3, rank_a);
            let c = &a * &rng.matrix(3, 2);
            let x = cramer_ax(&a, &c, &s()).unwrap();
            assert!((&a * &x).fro_dist(&c) < 1e-8);
        }
    }

    #[test]
    fn numerators_are_linear() {
        let mut rng = QRng::new(4);
        let a = rng.planted_rank(4, 3, 2);
        let left = LeftGram::new(&a, &s()).unwrap();
        let y = rng.matrix(3, 2);
        let w = rng.matrix(2, 3);
        let lhs = left.numerators(&(&y * &w)).unwrap();
        let rhs = &left.numerators(&y).unwrap() * &w;
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);

        let right = RightGram::new(&a, &s()).unwrap();
        let y = rng.matrix(2, 4);
        let w = rng.matrix(3, 2);
        let lhs = right.numerators(&(&w * &y)).unwrap();
        let rhs = &w * &right.numerators(&y).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
    }

    #[test]
    fn zero_rank_is_zero() {
        let z = QMatrix::zeros(2, 3);
        let left = LeftGram::new(&z, &s()).unwrap();
        assert_eq!(left.rank(), 0);
        assert_eq!(left.den(), 1.0);
        assert!(left.numerators(&QMatrix::identity(3)).unwrap().is_zero());
        assert!(cramer_xb(&QMatrix::identity(3), &z, &s()).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let left = LeftGram::new(&QMatrix::identity(2), &s()).unwrap();
        assert!(left.numerators(&QMatrix::zeros(3, 1)).is_err());
        let right = RightGram::new(&QMatrix::identity(2), &s()).unwrap();
        assert!(right.numerators(&QMatrix::zeros(1, 3)).is_err());
    }
}
