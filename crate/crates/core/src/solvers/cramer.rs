use super::direct::solve_direct;
use super::problem::{EquationKind, Problem, Slot};
use super::{finish, gate, Method, PairSolution, Provenance, SolveReport};
use crate::config::Settings;
use crate::cramer::{two_sided, Form, LeftGram, RightGram};
use crate::error::Result;
use crate::matrix::QMatrix;

struct Det<'a> {
    settings: &'a Settings,
    form: Form,
}

impl Det<'_> {
    fn left(&self, a: &QMatrix) -> Result<LeftGram> {
        LeftGram::new(a, self.settings)
    }

    fn right(&self, b: &QMatrix) -> Result<RightGram> {
        RightGram::new(b, self.settings)
    }

    /// `Q_A` from row-determinant sums over `AA*`.
    fn q(&self, a: &QMatrix) -> Result<QMatrix> {
        self.right(a)?.apply(&a.gram_right())
    }

    /// `P_A` from column-determinant sums over `A*A`.
    fn p(&self, a: &QMatrix) -> Result<QMatrix> {
        self.left(a)?.apply(&a.gram_left())
    }

    /// Numerator of `A†CB†` over the Gram matrices `ga` of `A` and `gb` of `B`.
    fn two_num(&self, ga: &LeftGram, gb: &RightGram, a: &QMatrix, c: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
        let c_tilde = a.ctranspose().checked_mul(c)?.checked_mul(&b.ctranspose())?;
        Ok(two_sided(ga, gb, &c_tilde, self.form)?.num)
    }
}

fn prov(items: &[(&str, &str)]) -> Vec<Provenance> {
    items.iter().map(|(c, f)| Provenance::new(c, f)).collect()
}

/// Solution assembled from row and column determinants. Stein-type equations have no separate
/// determinantal form and return the direct partial solution.
pub fn solve_cramer(problem: &Problem, form: Form, force: bool, settings: &Settings) -> Result<(PairSolution, SolveReport)> {
    use EquationKind::*;
    if problem.kind() == Stein {
        let (sol, mut report) = solve_direct(problem, force, settings)?;
        report.method = Method::Cramer;
        report.provenance = prov(&[("x1", "C"), ("x2", "0")]);
        return Ok((sol, report));
    }
    let report = gate(problem, force, settings)?;
    let d = Det { settings, form };
    let get = |s: Slot| problem.slot(s);
    let c = problem.rhs();
    let star = QMatrix::ctranspose;

    let (sol, provenance) = match problem.kind() {
        GenSylvester => {
            let (a1, b1, a2, b2) = (get(Slot::A1), get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let m = a2 - &(&d.q(a1)? * a2);
            let n = b2 - &(b2 * &d.p(b1)?);
            let s = a2 - &(a2 * &d.p(&m)?);
            let (ga1, gb1, ga2, gb2) = (d.left(a1)?, d.right(b1)?, d.left(a2)?, d.right(b2)?);
            let (gm, gn, gs) = (d.left(&m)?, d.right(&n)?, d.left(&s)?);

            let x11 = d.two_num(&ga1, &gb1, a1, c, b1)?.scale(1.0 / (ga1.den() * gb1.den()));
            let phi = d.two_num(&gm, &gb1, &m, c, b1)?;
            let x12 = (&ga1.numerators(&(&star(a1) * a2))? * &phi).scale(1.0 / (ga1.den() * gm.den() * gb1.den()));
            let eta = d.two_num(&ga2, &gn, a2, c, &n)?;
            let x13 = (&(&ga1.numerators(&(&star(a1) * &s))? * &eta) * &gb1.numerators(&(b2 * &star(b1)))?)
                .scale(1.0 / (ga1.den() * ga2.den() * gn.den() * gb1.den()));
            let x21 = d.two_num(&gm, &gb2, &m, c, b2)?.scale(1.0 / (gm.den() * gb2.den()));
            let x22 = (&gs.numerators(&s.gram_left())? * &eta).scale(1.0 / (gs.den() * ga2.den() * gn.den()));
            let x1 = &(&x11 - &x12) - &x13;
            let x2 = &x21 + &x22;
            (
                PairSolution { x1, x2: Some(x2) },
                prov(&[
                    ("x11", "A1†CB1†: cdet sums over A1*A1 and rdet sums over B1B1*"),
                    ("x12", "A1†A2 M†CB1†: cdet sums over A1*A1 times the two-sided numerator over M*M, B1B1*"),
                    ("x13", "A1†S A2†CN† B2B1†: cdet sums over A1*A1, two-sided numerator over A2*A2, NN*, rdet sums over B1B1*"),
                    ("x21", "M†CB2†: cdet sums over M*M and rdet sums over B2B2*"),
                    ("x22", "P_S A2†CN†: cdet projector over S*S times the two-sided numerator over A2*A2, NN*"),
                    ("M, N, S", "determinantal projectors Q_A1, P_B1, P_M"),
                ]),
            )
        }
        OneSidedLeft | TwoLeft => {
            let (a1, a2) = (get(Slot::A1), get(Slot::A2));
            let m = a2 - &(&d.q(a1)? * a2);
            let (ga1, gm) = (d.left(a1)?, d.left(&m)?);
            let x1 = &ga1.apply(&(&star(a1) * c))?
                - &(&ga1.numerators(&(&star(a1) * a2))? * &gm.numerators(&(&star(&m) * c))?).scale(1.0 / (ga1.den() * gm.den()));
            let p1 = ("x1", "A1†C - A1†A2 M†C: cdet sums over A1*A1 and M*M");
            if problem.kind() == TwoLeft {
                let x2 = gm.apply(&(&star(&m) * c))?;
                (PairSolution { x1, x2: Some(x2) }, prov(&[p1, ("x2", "M†C: cdet sums over M*M")]))
            } else {
                let b2 = get(Slot::B2);
                let gb2 = d.right(b2)?;
                let x2 = d.two_num(&gm, &gb2, &m, c, b2)?.scale(1.0 / (gm.den() * gb2.den()));
                (PairSolution { x1, x2: Some(x2) }, prov(&[p1, ("x2", "M†CB2†: cdet sums over M*M and rdet sums over B2B2*")]))
            }
        }
        OneSidedRight => {
            let (b1, a2, b2) = (get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let n = b2 - &(b2 * &d.p(b1)?);
            let (gb1, gn, ga2r) = (d.right(b1)?, d.right(&n)?, d.right(a2)?);
            let x1 = &gb1.apply(&(c * &star(b1)))?
                - &(&(&ga2r.numerators(&a2.gram_right())? * &gn.numerators(&(c * &star(&n)))?) * &gb1.numerators(&(b2 * &star(b1)))?)
                    .scale(1.0 / (ga2r.den() * gn.den() * gb1.den()));
            let ga2 = d.left(a2)?;
            let x2 = d.two_num(&ga2, &gn, a2, c, &n)?.scale(1.0 / (ga2.den() * gn.den()));
            (
                PairSolution { x1, x2: Some(x2) },
                prov(&[
                    ("x1", "CB1† - Q_A2 CN† B2B1†: rdet sums over B1B1*, A2A2*, NN*"),
                    ("x2", "A2†CN†: cdet sums over A2*A2 and rdet sums over NN*"),
                ]),
            )
        }
        ClassicalSylvester => {
            let (a1, b2) = (get(Slot::A1), get(Slot::B2));
            let (ga1, gb2, ga1r) = (d.left(a1)?, d.right(b2)?, d.right(a1)?);
            let x1 = ga1.apply(&(&star(a1) * c))?;
            let cb = gb2.numerators(&(c * &star(b2)))?;
            let x2 = &cb.scale(1.0 / gb2.den())
                - &(&ga1r.numerators(&a1.gram_right())? * &cb).scale(1.0 / (ga1r.den() * gb2.den()));
            (
                PairSolution { x1, x2: Some(x2) },
                prov(&[
                    ("x1", "A1†C: cdet sums over A1*A1"),
                    ("x2", "CB2† - Q_A1 CB2†: rdet sums over B2B2* and A1A1*"),
                ]),
            )
        }
        SylvesterMirror => {
            let (b1, a2) = (get(Slot::B1), get(Slot::A2));
            let (gb1, ga2, gb1l) = (d.right(b1)?, d.left(a2)?, d.left(b1)?);
            let x1 = gb1.apply(&(c * &star(b1)))?;
            let ac = ga2.numerators(&(&star(a2) * c))?;
            let x2 = &ac.scale(1.0 / ga2.den())
                - &(&ac * &gb1l.numerators(&b1.gram_left())?).scale(1.0 / (ga2.den() * gb1l.den()));
            (
                PairSolution { x1, x2: Some(x2) },
                prov(&[
                    ("x1", "CB1†: rdet sums over B1B1*"),
                    ("x2", "A2†C - A2†C P_B1: cdet sums over A2*A2 and B1*B1"),
                ]),
            )
        }
        TwoRight => {
            let (b1, b2) = (get(Slot::B1), get(Slot::B2));
            let n = b2 - &(b2 * &d.p(b1)?);
            let (gb1, gn) = (d.right(b1)?, d.right(&n)?);
            let cn = gn.numerators(&(c * &star(&n)))?;
            let x1 = &gb1.apply(&(c * &star(b1)))?
                - &(&cn * &gb1.numerators(&(b2 * &star(b1)))?).scale(1.0 / (gn.den() * gb1.den()));
            let x2 = cn.scale(1.0 / gn.den());
            (
                PairSolution { x1, x2: Some(x2) },
                prov(&[("x1", "CB1† - CN† B2B1†: rdet sums over B1B1* and NN*"), ("x2", "CN†: rdet sums over NN*")]),
            )
        }
        LyapunovLike => {
            let (a, b) = (get(Slot::A1), get(Slot::B1));
            let bs = star(b);
            let (ga, gbs) = (d.left(a)?, d.right(&bs)?);
            let first = ga.apply(&(&star(a) * c))?;
            let second = d.two_num(&ga, &gbs, a, &(c * &bs), &bs)?.scale(1.0 / (2.0 * ga.den() * gbs.den()));
            (
                PairSolution { x1: &first - &second, x2: None },
                prov(&[("x", "A†C - A†C P_B / 2: cdet sums over A*A and rdet sums over B*B")]),
            )
        }
        LyapunovStar => {
            let a = get(Slot::A1);
            let (ga, gar) = (d.left(a)?, d.right(a)?);
            let first = ga.apply(&(&star(a) * c))?;
            let second = d.two_num(&ga, &gar, a, &(c * a), a)?.scale(1.0 / (2.0 * ga.den() * gar.den()));
            (
                PairSolution { x1: &first - &second, x2: None },
                prov(&[("x", "A†B - A†B Q_A / 2: cdet sums over A*A and rdet sums over AA*")]),
            )
        }
        Stein => unreachable!("handled above"),
    };
    finish(problem, sol, Method::Cramer, report, force, provenance)
}
