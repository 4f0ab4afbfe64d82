//! Two worked examples with known answers, used by `selftest` and the acceptance suite.

use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::solvers::{PairSolution, Problem};

const I: Quaternion = Quaternion::I;
const J: Quaternion = Quaternion::J;
const K: Quaternion = Quaternion::K;
const ONE: Quaternion = Quaternion::ONE;

fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
    Quaternion::new(w, x, y, z)
}

fn rows(r: Vec<Vec<Quaternion>>) -> QMatrix {
    QMatrix::from_rows(r).expect("well-formed constant")
}

fn col(v: Vec<Quaternion>) -> QMatrix {
    rows(v.into_iter().map(|x| vec![x]).collect())
}

pub fn two_sided_a1() -> QMatrix {
    rows(vec![vec![I, ONE], vec![-ONE, I], vec![K, -J]])
}

/// `A2 = [1; i; j]`, the coefficient consistent with `M = (1/3)[2; 2i; 4j]` and `A1*A2 = [-i; 1]`.
pub fn two_sided_a2() -> QMatrix {
    col(vec![ONE, I, J])
}

/// `A2 = [i; j; k]`, which makes the two-sided example inconsistent.
pub fn two_sided_a2_misprint() -> QMatrix {
    col(vec![I, J, K])
}

/// `A1 X1 B1 + A2 X2 B2 = C` with the given `A2`.
pub fn two_sided_with(a2: QMatrix) -> Problem {
    Problem::gen_sylvester(two_sided_a1(), col(vec![I, K]), a2, col(vec![J, -I]), col(vec![ONE, I, J * 2.0]))
        .expect("well-formed constant")
}

pub fn two_sided() -> Problem {
    two_sided_with(two_sided_a2())
}

/// `X1 = (1/8)[1 j; i k]`, `X2 = (3/4)[-j i]`.
pub fn two_sided_solution() -> PairSolution {
    PairSolution {
        x1: rows(vec![vec![ONE, J], vec![I, K]]).scale(0.125),
        x2: Some(rows(vec![vec![-J, I]]).scale(0.75)),
    }
}

/// `M = R_A1 A2 = (1/3)[2; 2i; 4j]`.
pub fn two_sided_m() -> QMatrix {
    col(vec![ONE * 2.0, I * 2.0, J * 4.0]).scale(1.0 / 3.0)
}

/// `M† = (1/4)[1 -i -2j]`.
pub fn two_sided_m_pinv() -> QMatrix {
    rows(vec![vec![ONE, -I, J * -2.0]]).scale(0.25)
}

pub fn two_sided_a1_pinv() -> QMatrix {
    rows(vec![vec![-I, -ONE, -K], vec![ONE, -I, J]]).scale(1.0 / 6.0)
}

pub fn lyapunov_a() -> QMatrix {
    rows(vec![vec![ONE * 2.0, J], vec![-K, I], vec![I, K]])
}

pub fn lyapunov_b() -> QMatrix {
    rows(vec![vec![ONE * 2.0, J, -K], vec![-J, ONE, I], vec![K, -I, ONE * 2.0]])
}

/// `A X + X* A* = B`.
pub fn lyapunov() -> Problem {
    Problem::lyapunov_star(lyapunov_a(), lyapunov_b()).expect("well-formed constant")
}

pub fn lyapunov_a_pinv() -> QMatrix {
    rows(vec![vec![ONE * 2.0, -K, I], vec![J * 2.0, I * -2.0, K * -2.0]]).scale(0.5)
}

pub fn lyapunov_q() -> QMatrix {
    let o = Quaternion::ZERO;
    rows(vec![vec![ONE * 2.0, o, o], vec![o, ONE, J], vec![o, -J, ONE]]).scale(0.5)
}

/// The published value of `A†B - A†B Q_A / 2`. Its third column does not follow from the inputs.
pub fn lyapunov_published_x() -> QMatrix {
    rows(vec![
        vec![q(4.0, -1.0, -1.0, 0.0), q(2.0, 1.0, 3.0, -0.5), q(-1.0, -2.5, 1.0, -3.0)],
        vec![q(2.0, 0.0, 4.0, 2.0), q(-3.0, -1.0, 4.0, -1.0), q(2.0, -3.0, -1.0, -7.0)],
    ])
    .scale(0.25)
}

/// One row of the self-test table.
#[derive(Clone, Debug, PartialEq)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn within(name: &'static str, got: &QMatrix, want: &QMatrix, tol: f64) -> GoldenCheck {
    let gap = if got.shape() == want.shape() { got.max_abs_diff(want) } else { f64::INFINITY };
    GoldenCheck { name, passed: gap <= tol, detail: format!("max deviation {gap:.3e}") }
}

fn failed(name: &'static str, e: crate::Error) -> GoldenCheck {
    GoldenCheck { name, passed: false, detail: e.to_string() }
}

/// Compares every computed quantity of both worked examples with its published value.
pub fn run_checks(settings: &crate::config::Settings) -> Vec<GoldenCheck> {
    use crate::cramer::Form;
    use crate::pinv::{mp_cramer, mp_oracle, proj_q, ProjMethod};
    use crate::solvers::{check_consistency, derive_aux, solve_cramer, solve_direct};

    const TOL: f64 = 1e-9;
    let mut out = Vec::new();
    let p = two_sided();
    let want = two_sided_solution();

    match check_consistency(&p, settings) {
        Ok(r) => out.push(GoldenCheck {
            name: "two-sided: consistency criteria hold",
            passed: r.consistent && r.criteria_agree,
            detail: format!("consistent={} criteria_agree={}", r.consistent, r.criteria_agree),
        }),
        Err(e) => out.push(failed("two-sided: consistency criteria hold", e)),
    }
    match mp_cramer(&two_sided_a1(), None, settings) {
        Ok(r) => out.push(within("two-sided: A1† (determinantal)", &r.pinv, &two_sided_a1_pinv(), TOL)),
        Err(e) => out.push(failed("two-sided: A1† (determinantal)", e)),
    }
    match derive_aux(&p, settings) {
        Ok(aux) => {
            out.push(within("two-sided: M = R_A1 A2", &aux.m, &two_sided_m(), TOL));
            out.push(within("two-sided: M†", &mp_oracle(&aux.m, &settings.rank).pinv, &two_sided_m_pinv(), TOL));
            out.push(GoldenCheck {
                name: "two-sided: N = 0",
                passed: aux.n.fro_norm() <= TOL,
                detail: format!("|N| = {:.3e}", aux.n.fro_norm()),
            });
        }
        Err(e) => out.push(failed("two-sided: M = R_A1 A2", e)),
    }
    let pair = |name: &'static str, r: crate::Result<(PairSolution, crate::solvers::SolveReport)>| match r {
        Ok((sol, report)) => {
            let gap = sol.max_abs_diff(&want);
            GoldenCheck {
                name,
                passed: gap <= TOL && report.residual_norm < TOL,
                detail: format!("max deviation {gap:.3e}, residual {:.3e}", report.residual_norm),
            }
        }
        Err(e) => failed(name, e),
    };
    out.push(pair("two-sided: direct X1, X2", solve_direct(&p, false, settings)));
    out.push(pair("two-sided: Cramer X1, X2 (column form)", solve_cramer(&p, Form::Column, false, settings)));
    out.push(pair("two-sided: Cramer X1, X2 (row form)", solve_cramer(&p, Form::Row, false, settings)));

    let p = lyapunov();
    let a = lyapunov_a();
    match mp_cramer(&a, None, settings) {
        Ok(r) => out.push(within("Lyapunov: A† (determinantal)", &r.pinv, &lyapunov_a_pinv(), TOL)),
        Err(e) => out.push(failed("Lyapunov: A† (determinantal)", e)),
    }
    match proj_q(&a, ProjMethod::Determinantal, settings) {
        Ok(qa) => out.push(within("Lyapunov: Q_A (determinantal)", &qa, &lyapunov_q(), TOL)),
        Err(e) => out.push(failed("Lyapunov: Q_A (determinantal)", e)),
    }
    match settings.det.hdet(&a.gram_left(), TOL) {
        Ok(d) => out.push(GoldenCheck {
            name: "Lyapunov: det(A*A) = 2",
            passed: (d - 2.0).abs() <= TOL,
            detail: format!("{d}"),
        }),
        Err(e) => out.push(failed("Lyapunov: det(A*A) = 2", e)),
    }
    match check_consistency(&p, settings) {
        Ok(r) => out.push(GoldenCheck {
            name: "Lyapunov: consistent",
            passed: r.consistent,
            detail: r
                .checks
                .iter()
                .map(|c| format!("{}: {} ({:.3e})", c.name, if c.passed { "holds" } else { "fails" }, c.residual))
                .collect::<Vec<_>>()
                .join("; "),
        }),
        Err(e) => out.push(failed("Lyapunov: consistent", e)),
    }
    let published = lyapunov_published_x();
    let lyap = |name: &'static str, r: crate::Result<(PairSolution, crate::solvers::SolveReport)>| match r {
        Ok((sol, _)) => within(name, &sol.x1, &published, TOL),
        Err(e) => failed(name, e),
    };
    let forced_direct = solve_direct(&p, true, settings);
    if let Ok((sol, _)) = &forced_direct {
        let d = sol.x1[(0, 0)].dist(published[(0, 0)]);
        out.push(GoldenCheck { name: "Lyapunov: x11 = (4-i-j)/4", passed: d <= TOL, detail: format!("deviation {d:.3e}") });
    }
    out.push(lyap("Lyapunov: direct X (forced)", forced_direct));
    out.push(lyap("Lyapunov: Cramer X (column form, forced)", solve_cramer(&p, Form::Column, true, settings)));
    out.push(lyap("Lyapunov: Cramer X (row form, forced)", solve_cramer(&p, Form::Row, true, settings)));
    out
}
