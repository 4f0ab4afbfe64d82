use serde::{Deserialize, Serialize};

use super::ops::{chain, Ops};
use super::problem::{EquationKind, Problem, Slot};
use crate::config::Settings;
use crate::error::Result;
use crate::matrix::QMatrix;

/// `M = R_A1 A2`, `N = B2 L_B1`, `S = A2 L_M` and the ranks of `A1, B1, A2, B2, M, N, S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Aux {
    pub m: QMatrix,
    pub n: QMatrix,
    pub s: QMatrix,
    pub ranks: [usize; 7],
}

/// Auxiliary matrices of the identity-filled two-unknown form, from product-form projectors.
pub fn derive_aux(problem: &Problem, settings: &Settings) -> Result<Aux> {
    let c = problem.canonical()?;
    let ops = Ops { settings };
    let m = &ops.r(&c.a1) * &c.a2;
    let n = &c.b2 * &ops.l(&c.b1);
    let s = &c.a2 * &ops.l(&m);
    let tol = &settings.rank;
    let ranks = [&c.a1, &c.b1, &c.a2, &c.b2, &m, &n, &s].map(|x| x.rank(tol));
    Ok(Aux { m, n, s, ranks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A projector expression that must vanish.
    Projector,
    /// A rank equality, reported alongside its projector counterpart.
    Rank,
    /// A solvability condition of a Lyapunov-like kind.
    Condition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    /// Frobenius norm for projector and condition checks; rank gap for rank checks.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Whether every projector criterion agrees with its rank counterpart.
    pub criteria_agree: bool,
    pub checks: Vec<Check>,
}

/// The four projector criteria of the two-unknown form, paired with rank equalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pair {
    RowSpace,
    LeftCoupling,
    ColumnSpace,
    RightCoupling,
}

fn pairs_for(kind: EquationKind) -> &'static [Pair] {
    use Pair::*;
    match kind {
        EquationKind::GenSylvester => &[RowSpace, LeftCoupling, ColumnSpace, RightCoupling],
        EquationKind::OneSidedLeft => &[RowSpace, LeftCoupling],
        EquationKind::OneSidedRight => &[ColumnSpace, RightCoupling],
        EquationKind::ClassicalSylvester => &[LeftCoupling],
        EquationKind::SylvesterMirror => &[RightCoupling],
        EquationKind::TwoLeft => &[RowSpace],
        EquationKind::TwoRight => &[ColumnSpace],
        EquationKind::Stein | EquationKind::LyapunovLike | EquationKind::LyapunovStar => &[],
    }
}

fn vanishing(name: &str, kind: CheckKind, x: &QMatrix, bound: f64) -> Check {
    let r = x.fro_norm();
    Check { name: name.to_string(), kind, passed: r <= bound, residual: r, detail: None }
}

fn rank_equality(name: &str, lhs: usize, rhs: usize) -> Check {
    Check {
        name: name.to_string(),
        kind: CheckKind::Rank,
        passed: lhs == rhs,
        residual: lhs.abs_diff(rhs) as f64,
        detail: Some(format!("{lhs} vs {rhs}")),
    }
}

/// Evaluates the solvability criteria of the problem's kind. The verdict follows the projector
/// and condition checks; rank checks are evaluated independently and compared.
pub fn check_consistency(problem: &Problem, settings: &Settings) -> Result<ConsistencyReport> {
    let bound = settings.tol * (1.0 + problem.rhs().fro_norm());
    let ops = Ops { settings };
    let checks = match problem.kind() {
        EquationKind::LyapunovLike => {
            let (a, b, c) = (problem.slot(Slot::A1), problem.slot(Slot::B1), problem.rhs());
            let (m, _) = a.shape();
            let half_p = &QMatrix::identity(m) - &ops.p(b).scale(0.5);
            let half_q = &QMatrix::identity(m) - &ops.q(a).scale(0.5);
            let left = chain(&[&ops.pinv(a), c, &half_p]);
            let right = chain(&[&half_q, c, &ops.pinv(b)]).ctranspose();
            vec![
                vanishing("A†C(I-P_B/2) = [(I-Q_A/2)CB†]*", CheckKind::Condition, &(&left - &right), bound),
                vanishing("R_A C L_B = 0", CheckKind::Condition, &chain(&[&ops.r(a), c, &ops.l(b)]), bound),
            ]
        }
        EquationKind::LyapunovStar => {
            let (a, b) = (problem.slot(Slot::A1), problem.rhs());
            let ra = ops.r(a);
            vec![
                vanishing("B* = B", CheckKind::Condition, &(&b.ctranspose() - b), bound),
                vanishing("R_A B R_A = 0", CheckKind::Condition, &chain(&[&ra, b, &ra]), bound),
            ]
        }
        kind => {
            let c = problem.canonical()?;
            let tol = &settings.rank;
            let rank = |x: &QMatrix| x.rank(tol);
            let aux_m = &ops.r(&c.a1) * &c.a2;
            let aux_n = &c.b2 * &ops.l(&c.b1);
            let mut checks = Vec::new();
            for pair in pairs_for(kind) {
                match pair {
                    Pair::RowSpace => {
                        let e = chain(&[&ops.r(&aux_m), &ops.r(&c.a1), &c.c]);
                        checks.push(vanishing("R_M R_A1 C = 0", CheckKind::Projector, &e, bound));
                        let a12 = c.a1.hcat(&c.a2)?;
                        checks.push(rank_equality("rank[A1 A2 C] = rank[A1 A2]", rank(&a12.hcat(&c.c)?), rank(&a12)));
                    }
                    Pair::LeftCoupling => {
                        let e = chain(&[&ops.r(&c.a1), &c.c, &ops.l(&c.b2)]);
                        checks.push(vanishing("R_A1 C L_B2 = 0", CheckKind::Projector, &e, bound));
                        let z = QMatrix::zeros(c.b2.rows(), c.a1.cols());
                        let blk = QMatrix::block(&c.a1, &c.c, &z, &c.b2)?;
                        checks.push(rank_equality("rank[A1 C; 0 B2] = rank A1 + rank B2", rank(&blk), rank(&c.a1) + rank(&c.b2)));
                    }
                    Pair::ColumnSpace => {
                        let e = chain(&[&c.c, &ops.l(&c.b1), &ops.l(&aux_n)]);
                        checks.push(vanishing("C L_B1 L_N = 0", CheckKind::Projector, &e, bound));
                        let b12 = c.b1.vcat(&c.b2)?;
                        checks.push(rank_equality("rank[B1; B2; C] = rank[B1; B2]", rank(&b12.vcat(&c.c)?), rank(&b12)));
                    }
                    Pair::RightCoupling => {
                        let e = chain(&[&ops.r(&c.a2), &c.c, &ops.l(&c.b1)]);
                        checks.push(vanishing("R_A2 C L_B1 = 0", CheckKind::Projector, &e, bound));
                        let z = QMatrix::zeros(c.b1.rows(), c.a2.cols());
                        let blk = QMatrix::block(&c.a2, &c.c, &z, &c.b1)?;
                        checks.push(rank_equality("rank[A2 C; 0 B1] = rank A2 + rank B1", rank(&blk), rank(&c.a2) + rank(&c.b1)));
                    }
                }
            }
            checks
        }
    };
    let consistent = checks.iter().filter(|c| c.kind != CheckKind::Rank).all(|c| c.passed);
    let criteria_agree = checks
        .chunks(2)
        .filter(|w| w.len() == 2 && w[1].kind == CheckKind::Rank)
        .all(|w| w[0].passed == w[1].passed);
    Ok(ConsistencyReport { consistent, criteria_agree, checks })
}
