//! The two-unknown equation `A1 X1 B1 + A2 X2 B2 = C`, its special cases, and two
//! Lyapunov-like equations.

mod consistency;
mod cramer;
mod direct;
mod ops;
mod problem;

use serde::{Deserialize, Serialize};

pub use self::consistency::{check_consistency, derive_aux, Aux, Check, CheckKind, ConsistencyReport};
pub use self::cramer::solve_cramer;
pub use self::direct::{solve_direct, solve_general, solve_general_canonical, FreeParams, FreeShapes};
pub use self::problem::{Canonical, EquationKind, Problem, Slot, Slots};

use crate::config::Settings;
use crate::cramer::Form;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// `(X1, X2)`; `x2` is absent for the single-unknown Lyapunov-like kinds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSolution {
    pub x1: QMatrix,
    pub x2: Option<QMatrix>,
}

impl PairSolution {
    /// Largest entrywise distance between the two solutions.
    pub fn max_abs_diff(&self, other: &PairSolution) -> f64 {
        let d2 = match (&self.x2, &other.x2) {
            (Some(a), Some(b)) => a.max_abs_diff(b),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        self.x1.max_abs_diff(&other.x1).max(d2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Cramer,
    General,
    Both,
}

/// Which formula produced a solution component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub component: String,
    pub formula: String,
}

impl Provenance {
    pub(crate) fn new(component: &str, formula: &str) -> Self {
        Provenance { component: component.to_string(), formula: formula.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub kind: EquationKind,
    pub method: Method,
    pub consistent: bool,
    pub criteria_agree: bool,
    pub forced: bool,
    pub checks: Vec<Check>,
    pub residual_norm: f64,
    pub rhs_norm: f64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub provenance: Vec<Provenance>,
    /// Largest entrywise gap between the Cramer and direct solutions when both were computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method_gap: Option<f64>,
}

/// Options for [`solve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub method: Method,
    pub form: Form,
    pub force: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { method: Method::Direct, form: Form::Column, force: false }
    }
}

/// Left-hand side of the equation evaluated at `sol`.
pub fn lhs(problem: &Problem, sol: &PairSolution) -> Result<QMatrix> {
    match problem.kind() {
        EquationKind::LyapunovLike => {
            let (a, b) = (problem.slot(Slot::A1), problem.slot(Slot::B1));
            a.checked_mul(&sol.x1)?.checked_add(&sol.x1.ctranspose().checked_mul(b)?)
        }
        EquationKind::LyapunovStar => {
            let a = problem.slot(Slot::A1);
            a.checked_mul(&sol.x1)?.checked_add(&sol.x1.ctranspose().checked_mul(&a.ctranspose())?)
        }
        _ => {
            let c = problem.canonical()?;
            let x2 = sol.x2.as_ref().ok_or_else(|| Error::InvalidMatrix("solution lacks X2".into()))?;
            let t1 = c.a1.checked_mul(&sol.x1)?.checked_mul(&c.b1)?;
            let t2 = c.a2.checked_mul(x2)?.checked_mul(&c.b2)?;
            t1.checked_add(&t2)
        }
    }
}

/// `|LHS(sol) - RHS|_F`.
pub fn residual(problem: &Problem, sol: &PairSolution) -> Result<f64> {
    Ok(lhs(problem, sol)?.checked_sub(problem.rhs())?.fro_norm())
}

/// Runs the requested method; `Method::Both` solves both ways and reports the gap, returning
/// the Cramer solution.
pub fn solve(problem: &Problem, options: SolveOptions, settings: &Settings) -> Result<(PairSolution, SolveReport)> {
    match options.method {
        Method::Direct => solve_direct(problem, options.force, settings),
        Method::Cramer => solve_cramer(problem, options.form, options.force, settings),
        Method::General => {
            let (sol, mut report) = solve_direct(problem, options.force, settings)?;
            let general = solve_general(problem, &FreeParams::default(), settings)?;
            report.method = Method::General;
            report.residual_norm = residual(problem, &general)?;
            report.method_gap = Some(sol.max_abs_diff(&general));
            Ok((general, report))
        }
        Method::Both => {
            let (direct, _) = solve_direct(problem, options.force, settings)?;
            let (sol, mut report) = solve_cramer(problem, options.form, options.force, settings)?;
            report.method = Method::Both;
            report.method_gap = Some(sol.max_abs_diff(&direct));
            Ok((sol, report))
        }
    }
}

/// Consistency gate shared by the solvers: an error unless consistent or forced.
pub(crate) fn gate(problem: &Problem, force: bool, settings: &Settings) -> Result<ConsistencyReport> {
    let report = check_consistency(problem, settings)?;
    if !report.consistent && !force {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed && c.kind != CheckKind::Rank).map(|c| c.name.as_str()).collect();
        return Err(Error::Inconsistent(format!("failed criteria: {}", failed.join(", "))));
    }
    Ok(report)
}

pub(crate) fn finish(
    problem: &Problem,
    sol: PairSolution,
    method: Method,
    gate: ConsistencyReport,
    force: bool,
    provenance: Vec<Provenance>,
) -> Result<(PairSolution, SolveReport)> {
    let report = SolveReport {
        kind: problem.kind(),
        method,
        consistent: gate.consistent,
        criteria_agree: gate.criteria_agree,
        forced: force && !gate.consistent,
        checks: gate.checks,
        residual_norm: residual(problem, &sol)?,
        rhs_norm: problem.rhs().fro_norm(),
        provenance,
        method_gap: None,
    };
    Ok((sol, report))
}

#[cfg(test)]
mod tests;
