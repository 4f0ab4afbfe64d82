use super::ops::Ops;
use super::*;
use crate::generate::{consistent, perturbed_inconsistent};
use crate::quaternion::Quaternion;
use crate::random::QRng;

const I: Quaternion = Quaternion::I;
const J: Quaternion = Quaternion::J;
const K: Quaternion = Quaternion::K;
const ONE: Quaternion = Quaternion::ONE;

fn s() -> Settings {
    Settings::default()
}

fn col(v: Vec<Quaternion>) -> QMatrix {
    QMatrix::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap()
}

use crate::golden::{
    lyapunov as example_two, lyapunov_published_x as example_two_x, two_sided as example_one,
    two_sided_solution as example_one_solution, two_sided_with as example_one_with,
};

#[test]
fn example_one_direct() {
    let p = example_one();
    let (sol, report) = solve_direct(&p, false, &s()).unwrap();
    assert!(sol.max_abs_diff(&example_one_solution()) < 1e-9, "{sol:?}");
    assert!(report.consistent && report.criteria_agree);
    assert!(report.residual_norm < 1e-9);
}

#[test]
fn example_one_cramer_both_forms() {
    let p = example_one();
    for form in [Form::Column, Form::Row] {
        let (sol, report) = solve_cramer(&p, form, false, &s()).unwrap();
        assert!(sol.max_abs_diff(&example_one_solution()) < 1e-9, "{form:?}: {sol:?}");
        assert!(report.residual_norm < 1e-9);
        assert_eq!(report.method, Method::Cramer);
        assert!(!report.provenance.is_empty());
    }
}

#[test]
fn example_one_auxiliaries() {
    let p = example_one();
    let aux = derive_aux(&p, &s()).unwrap();
    assert!(aux.n.fro_norm() < 1e-12);
    assert_eq!(aux.ranks, [1, 1, 1, 1, 1, 0, 0]);
    let ops = Ops { settings: &s() };
    assert!(ops.l(p.slot(Slot::B1)).fro_norm() < 1e-12);
    let m = col(vec![ONE * 2.0, I * 2.0, J * 4.0]).scale(1.0 / 3.0);
    assert!(aux.m.max_abs_diff(&m) < 1e-12);
    assert!((aux.m.gram_left()[(0, 0)].w - 8.0 / 3.0).abs() < 1e-12);
    let a1 = p.slot(Slot::A1);
    let a1_a2 = &a1.ctranspose() * p.slot(Slot::A2);
    assert!(a1_a2.max_abs_diff(&col(vec![-I, ONE])) < 1e-12);
    assert!(a1.ctranspose().checked_mul(p.rhs()).unwrap().checked_mul(&p.slot(Slot::B1).ctranspose()).unwrap().fro_norm() < 1e-12);
}

#[test]
fn example_one_as_printed_is_inconsistent() {
    let p = example_one_with(col(vec![I, J, K]));
    let r = check_consistency(&p, &s()).unwrap();
    assert!(!r.consistent && r.criteria_agree);
    assert!(residual(&p, &example_one_solution()).unwrap() > 0.1);
}

#[test]
fn example_two_fails_the_range_condition() {
    let p = example_two();
    let r = check_consistency(&p, &s()).unwrap();
    assert!(r.checks[0].passed, "B is Hermitian");
    assert!(!r.checks[1].passed);
    assert!(matches!(solve_direct(&p, false, &s()), Err(Error::Inconsistent(_))));
}

#[test]
fn example_two_forced_solutions() {
    let p = example_two();
    let (direct, report) = solve_direct(&p, true, &s()).unwrap();
    assert!(report.forced);
    assert!((report.residual_norm - 1.5).abs() < 1e-9);
    for form in [Form::Column, Form::Row] {
        let (sol, _) = solve_cramer(&p, form, true, &s()).unwrap();
        assert!(sol.max_abs_diff(&direct) < 1e-9, "{form:?}");
    }
    // The first two columns agree with the printed solution; the third does not.
    let printed = example_two_x();
    for i in 0..2 {
        for j in 0..2 {
            assert!(direct.x1[(i, j)].dist(printed[(i, j)]) < 1e-9, "({i}, {j})");
        }
        assert!(direct.x1[(i, 2)].dist(printed[(i, 2)]) > 0.1);
    }
    let ops = Ops { settings: &s() };
    let a = p.slot(Slot::A1);
    let first = &ops.pinv(a) * p.rhs();
    let half = (&first * &ops.q(a)).scale(0.5);
    assert!(direct.x1.max_abs_diff(&(&first - &half)) < 1e-12);
}

#[test]
fn stein_partial_is_rhs() {
    let mut rng = QRng::new(3);
    for _ in 0..5 {
        let p = consistent(EquationKind::Stein, &mut rng, 4).unwrap().problem().unwrap();
        for (sol, _) in [solve_direct(&p, false, &s()).unwrap(), solve_cramer(&p, Form::Column, false, &s()).unwrap()] {
            assert_eq!(&sol.x1, p.rhs());
            assert!(sol.x2.unwrap().is_zero());
        }
    }
}

#[test]
fn methods_agree_on_planted_instances() {
    let mut rng = QRng::new(41);
    for kind in EquationKind::ALL {
        let max_dim = if kind == EquationKind::GenSylvester { 3 } else { 4 };
        for _ in 0..8 {
            let p = consistent(kind, &mut rng, max_dim).unwrap().problem().unwrap();
            let bound = 1e-8 * (1.0 + p.rhs().fro_norm());
            let (direct, rd) = solve_direct(&p, false, &s()).unwrap();
            assert!(rd.residual_norm <= bound, "{kind} direct residual {}", rd.residual_norm);
            for form in [Form::Column, Form::Row] {
                let (cramer, rc) = solve_cramer(&p, form, false, &s()).unwrap();
                assert!(rc.residual_norm <= bound, "{kind} cramer residual {}", rc.residual_norm);
                let gap = cramer.max_abs_diff(&direct);
                assert!(gap <= 1e-8, "{kind} {form:?} gap {gap}");
            }
        }
    }
}

#[test]
fn solve_both_reports_gap() {
    let p = example_one();
    let opts = SolveOptions { method: Method::Both, ..SolveOptions::default() };
    let (_, report) = solve(&p, opts, &s()).unwrap();
    assert!(report.method_gap.unwrap() < 1e-9);
}

#[test]
fn general_solution_closure() {
    let mut rng = QRng::new(77);
    for kind in EquationKind::ALL {
        for _ in 0..8 {
            let p = consistent(kind, &mut rng, 4).unwrap().problem().unwrap();
            let free = FreeParams::random(&p, &mut rng, &s());
            let sol = solve_general(&p, &free, &s()).unwrap();
            let r = residual(&p, &sol).unwrap();
            assert!(r <= 1e-8 * (1.0 + p.rhs().fro_norm()), "{kind}: {r}");
        }
    }
}

#[test]
fn general_with_zero_free_is_partial() {
    let mut rng = QRng::new(78);
    for kind in EquationKind::ALL {
        let p = consistent(kind, &mut rng, 4).unwrap().problem().unwrap();
        let (direct, _) = solve_direct(&p, false, &s()).unwrap();
        let general = solve_general(&p, &FreeParams::default(), &s()).unwrap();
        assert!(direct.max_abs_diff(&general) < 1e-10, "{kind}");
    }
}

#[test]
fn unused_free_parameter_rejected() {
    let p = consistent(EquationKind::TwoLeft, &mut QRng::new(1), 3).unwrap().problem().unwrap();
    let (x1, _) = p.unknown_shapes();
    let free = FreeParams { z: Some(QMatrix::zeros(x1.0, x1.1)), ..FreeParams::default() };
    assert!(solve_general(&p, &free, &s()).is_err());
}

#[test]
fn special_kinds_match_their_two_sided_form() {
    let mut rng = QRng::new(90);
    for kind in EquationKind::ALL.into_iter().filter(|k| k.has_two_unknowns()) {
        for _ in 0..4 {
            let p = consistent(kind, &mut rng, 4).unwrap().problem().unwrap();
            let (special, _) = solve_direct(&p, false, &s()).unwrap();
            let (general, _) = solve_direct(&p.as_gen_sylvester().unwrap(), false, &s()).unwrap();
            assert!(special.max_abs_diff(&general) <= 1e-9, "{kind}");
            let (cramer, _) = solve_cramer(&p.as_gen_sylvester().unwrap(), Form::Column, false, &s()).unwrap();
            assert!(special.max_abs_diff(&cramer) <= 1e-8, "{kind}");
        }
    }
}

#[test]
fn simplification_identities() {
    let mut rng = QRng::new(5);
    let ops = Ops { settings: &s() };
    for _ in 0..20 {
        let p = consistent(EquationKind::GenSylvester, &mut rng, 4).unwrap().problem().unwrap();
        let aux = derive_aux(&p, &s()).unwrap();
        let (mp, np, sp) = (ops.pinv(&aux.m), ops.pinv(&aux.n), ops.pinv(&aux.s));
        assert!((&mp * &ops.r(p.slot(Slot::A1))).max_abs_diff(&mp) < 1e-9);
        assert!((&ops.l(p.slot(Slot::B1)) * &np).max_abs_diff(&np) < 1e-9);
        assert!((&ops.l(&aux.m) * &sp).max_abs_diff(&sp) < 1e-9);
    }
}

#[test]
fn inconsistent_refused_unless_forced() {
    let mut rng = QRng::new(6);
    let p = perturbed_inconsistent(&mut rng, 4).unwrap().problem().unwrap();
    assert!(matches!(solve_direct(&p, false, &s()), Err(Error::Inconsistent(_))));
    assert!(matches!(solve_cramer(&p, Form::Column, false, &s()), Err(Error::Inconsistent(_))));
    let (_, report) = solve_direct(&p, true, &s()).unwrap();
    assert!(report.forced && !report.consistent);
    assert!(report.residual_norm > 1e-6);
    let (_, report) = solve_cramer(&p, Form::Row, true, &s()).unwrap();
    assert!(report.forced);
}

#[test]
fn criteria_agree_both_ways() {
    let mut rng = QRng::new(8);
    for _ in 0..15 {
        let good = consistent(EquationKind::GenSylvester, &mut rng, 4).unwrap().problem().unwrap();
        let r = check_consistency(&good, &s()).unwrap();
        assert!(r.consistent && r.criteria_agree);
        let bad = perturbed_inconsistent(&mut rng, 4).unwrap().problem().unwrap();
        let r = check_consistency(&bad, &s()).unwrap();
        assert!(!r.consistent && r.criteria_agree, "{:?}", r.checks);
    }
}

#[test]
fn lyapunov_star_needs_hermitian_rhs() {
    let mut b = example_two().rhs().clone();
    b[(0, 1)] += ONE;
    let p = Problem::lyapunov_star(example_two().slot(Slot::A1).clone(), b).unwrap();
    let r = check_consistency(&p, &s()).unwrap();
    assert!(!r.consistent);
    assert!(!r.checks[0].passed);
}

#[test]
fn residual_grows_with_perturbation() {
    let p = example_one();
    let mut sol = example_one_solution();
    assert!(residual(&p, &sol).unwrap() < 1e-12);
    sol.x1[(0, 0)] += ONE;
    let a1 = p.slot(Slot::A1);
    let b1 = p.slot(Slot::B1);
    let mut e = QMatrix::zeros(2, 2);
    e[(0, 0)] = ONE;
    let expected = (&(a1 * &e) * b1).fro_norm();
    assert!((residual(&p, &sol).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn report_round_trips_json() {
    let (_, report) = solve_direct(&example_one(), false, &s()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: SolveReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}
