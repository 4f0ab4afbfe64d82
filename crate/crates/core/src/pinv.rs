//! Moore-Penrose inverse by determinants and by an SVD of the complex embedding,
//! and the orthogonal projectors built from it.

use serde::{Deserialize, Serialize};

use crate::config::Settings;
use crate::cramer::{LeftGram, RightGram};
use crate::error::Result;
use crate::matrix::{QMatrix, RankTolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MpMethod {
    CramerLeft,
    CramerRight,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Through `A*A`.
    Left,
    /// Through `AA*`.
    Right,
}

impl Side {
    /// The side with the smaller Gram matrix: left when `cols <= rows`.
    pub fn smaller_gram(a: &QMatrix) -> Side {
        if a.cols() <= a.rows() { Side::Left } else { Side::Right }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MpResult {
    pub pinv: QMatrix,
    pub method: MpMethod,
    pub rank_used: usize,
}

/// `A†` from determinantal formulas. `side = None` picks the smaller Gram matrix.
pub fn mp_cramer(a: &QMatrix, side: Option<Side>, settings: &Settings) -> Result<MpResult> {
    let astar = a.ctranspose();
    match side.unwrap_or_else(|| Side::smaller_gram(a)) {
        Side::Left => {
            let g = LeftGram::new(a, settings)?;
            Ok(MpResult { pinv: g.apply(&astar)?, method: MpMethod::CramerLeft, rank_used: g.rank() })
        }
        Side::Right => {
            let g = RightGram::new(a, settings)?;
            Ok(MpResult { pinv: g.apply(&astar)?, method: MpMethod::CramerRight, rank_used: g.rank() })
        }
    }
}

/// `A†` as the un-embedded pseudoinverse of the complex embedding.
pub fn mp_oracle(a: &QMatrix, tol: &RankTolerance) -> MpResult {
    let emb = a.complex_embed();
    let pinv = QMatrix::from_complex_embedding(&emb.pinv(tol)).expect("embedding has even dimensions");
    MpResult { pinv, method: MpMethod::Oracle, rank_used: a.rank(tol) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjMethod {
    /// Bordered determinant sums over the Gram matrix.
    Determinantal,
    /// Products with the oracle pseudoinverse.
    Product,
}

/// `P_A = A†A`.
pub fn proj_p(a: &QMatrix, method: ProjMethod, settings: &Settings) -> Result<QMatrix> {
    match method {
        ProjMethod::Determinantal => LeftGram::new(a, settings)?.apply(&a.gram_left()),
        ProjMethod::Product => Ok(&mp_oracle(a, &settings.rank).pinv * a),
    }
}

/// `Q_A = AA†`.
pub fn proj_q(a: &QMatrix, method: ProjMethod, settings: &Settings) -> Result<QMatrix> {
    match method {
        ProjMethod::Determinantal => RightGram::new(a, settings)?.apply(&a.gram_right()),
        ProjMethod::Product => Ok(a * &mp_oracle(a, &settings.rank).pinv),
    }
}

/// `L_A = I - A†A`.
pub fn proj_l(a: &QMatrix, method: ProjMethod, settings: &Settings) -> Result<QMatrix> {
    Ok(&QMatrix::identity(a.cols()) - &proj_p(a, method, settings)?)
}

/// `R_A = I - AA†`.
pub fn proj_r(a: &QMatrix, method: ProjMethod, settings: &Settings) -> Result<QMatrix> {
    Ok(&QMatrix::identity(a.rows()) - &proj_q(a, method, settings)?)
}

/// Largest Frobenius deviation from the four Penrose equations.
pub fn penrose_defect(a: &QMatrix, x: &QMatrix) -> f64 {
    let ax = a * x;
    let xa = x * a;
    [
        (&ax * a).fro_dist(a),
        (&xa * x).fro_dist(x),
        ax.ctranspose().fro_dist(&ax),
        xa.ctranspose().fro_dist(&xa),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}
