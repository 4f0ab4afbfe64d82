use super::ops::{chain, Ops};
use super::problem::{EquationKind, Problem, Slot};
use super::{finish, gate, Method, PairSolution, SolveReport};
use crate::config::Settings;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::random::QRng;

/// Free matrices of a general solution; absent ones are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FreeParams {
    pub u: Option<QMatrix>,
    pub v: Option<QMatrix>,
    pub z: Option<QMatrix>,
    pub w: Option<QMatrix>,
    /// Lyapunov-star only.
    pub y: Option<QMatrix>,
    /// Lyapunov-star only; must satisfy `A (Zc + Zc*) A* = 0`.
    pub zc: Option<QMatrix>,
}

/// Shapes of the free matrices a kind accepts; `None` marks an unused parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FreeShapes {
    pub u: Option<(usize, usize)>,
    pub v: Option<(usize, usize)>,
    pub z: Option<(usize, usize)>,
    pub w: Option<(usize, usize)>,
    pub y: Option<(usize, usize)>,
    pub zc: Option<(usize, usize)>,
}

impl FreeShapes {
    pub fn of(problem: &Problem) -> FreeShapes {
        use EquationKind::*;
        let (x1, x2) = problem.unknown_shapes();
        let x2 = x2.unwrap_or((0, 0));
        let (u, v, z, w) = match problem.kind() {
            GenSylvester => (true, true, true, true),
            OneSidedLeft | ClassicalSylvester => (true, true, false, true),
            OneSidedRight | SylvesterMirror | TwoRight => (false, true, true, true),
            Stein => (false, true, false, true),
            TwoLeft => (true, true, false, false),
            LyapunovLike => (true, false, false, false),
            LyapunovStar => {
                let n = x1.0;
                return FreeShapes { y: Some(x1), zc: Some((n, n)), ..FreeShapes::default() };
            }
        };
        FreeShapes {
            u: u.then_some(x1),
            v: v.then_some(x2),
            z: z.then_some(x1),
            w: w.then_some(x2),
            y: None,
            zc: None,
        }
    }
}

impl FreeParams {
    /// Random admissible free matrices for the problem's kind.
    pub fn random(problem: &Problem, rng: &mut QRng, settings: &Settings) -> FreeParams {
        let shapes = FreeShapes::of(problem);
        let mut draw = |s: Option<(usize, usize)>| s.map(|(r, c)| rng.matrix(r, c));
        let mut free = FreeParams {
            u: draw(shapes.u),
            v: draw(shapes.v),
            z: draw(shapes.z),
            w: draw(shapes.w),
            y: draw(shapes.y),
            zc: None,
        };
        if let Some((n, _)) = shapes.zc {
            // Skew-Hermitian part plus a term annihilated by A on the left.
            let g = rng.matrix(n, n);
            let h = rng.matrix(n, n);
            let skew = &h - &h.ctranspose();
            let la = Ops { settings }.l(problem.slot(Slot::A1));
            free.zc = Some(&skew + &(&la * &g));
        }
        free
    }

    fn resolve(&self, problem: &Problem) -> Result<Resolved> {
        let shapes = FreeShapes::of(problem);
        let pick = |name: &str, given: &Option<QMatrix>, shape: Option<(usize, usize)>| -> Result<QMatrix> {
            match (given, shape) {
                (Some(m), Some(s)) if m.shape() == s => Ok(m.clone()),
                (Some(m), Some(s)) => Err(Error::mismatch("free parameter", s, m.shape())),
                (Some(_), None) => {
                    Err(Error::InvalidMatrix(format!("free parameter {name} is not used by kind {}", problem.kind())))
                }
                (None, Some((r, c))) => Ok(QMatrix::zeros(r, c)),
                (None, None) => Ok(QMatrix::zeros(1, 1)),
            }
        };
        Ok(Resolved {
            u: pick("U", &self.u, shapes.u)?,
            v: pick("V", &self.v, shapes.v)?,
            z: pick("Z", &self.z, shapes.z)?,
            w: pick("W", &self.w, shapes.w)?,
            y: pick("Y", &self.y, shapes.y)?,
            zc: pick("Zc", &self.zc, shapes.zc)?,
        })
    }
}

struct Resolved {
    u: QMatrix,
    v: QMatrix,
    z: QMatrix,
    w: QMatrix,
    y: QMatrix,
    zc: QMatrix,
}

/// Partial solution from pseudoinverse products, with every free matrix set to zero.
pub fn solve_direct(problem: &Problem, force: bool, settings: &Settings) -> Result<(PairSolution, SolveReport)> {
    let report = gate(problem, force, settings)?;
    let sol = partial(problem, &Ops { settings });
    finish(problem, sol, Method::Direct, report, force, Vec::new())
}

fn pair(x1: QMatrix, x2: QMatrix) -> PairSolution {
    PairSolution { x1, x2: Some(x2) }
}

fn partial(problem: &Problem, o: &Ops) -> PairSolution {
    use EquationKind::*;
    let get = |s: Slot| problem.slot(s);
    let c = problem.rhs();
    match problem.kind() {
        GenSylvester => {
            let (a1, b1, a2, b2) = (get(Slot::A1), get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let (a1p, b1p, a2p, b2p) = (o.pinv(a1), o.pinv(b1), o.pinv(a2), o.pinv(b2));
            let m = &o.r(a1) * a2;
            let n = b2 * &o.l(b1);
            let s = a2 * &o.l(&m);
            let (mp, np) = (o.pinv(&m), o.pinv(&n));
            let x1 = &(&chain(&[&a1p, c, &b1p]) - &chain(&[&a1p, a2, &mp, c, &b1p]))
                - &chain(&[&a1p, &s, &a2p, c, &np, b2, &b1p]);
            let x2 = &chain(&[&mp, c, &b2p]) + &chain(&[&o.p(&s), &a2p, c, &np]);
            pair(x1, x2)
        }
        OneSidedLeft => {
            let (a1, a2, b2) = (get(Slot::A1), get(Slot::A2), get(Slot::B2));
            let a1p = o.pinv(a1);
            let mp = o.pinv(&(&o.r(a1) * a2));
            let x1 = &(&a1p * c) - &chain(&[&a1p, a2, &mp, c]);
            pair(x1, chain(&[&mp, c, &o.pinv(b2)]))
        }
        OneSidedRight => {
            let (b1, a2, b2) = (get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let b1p = o.pinv(b1);
            let np = o.pinv(&(b2 * &o.l(b1)));
            let x1 = &(c * &b1p) - &chain(&[&o.q(a2), c, &np, b2, &b1p]);
            pair(x1, chain(&[&o.pinv(a2), c, &np]))
        }
        Stein => {
            let (p, q) = (get(Slot::A2).cols(), get(Slot::B2).rows());
            pair(c.clone(), QMatrix::zeros(p, q))
        }
        ClassicalSylvester => {
            let (a1, b2) = (get(Slot::A1), get(Slot::B2));
            pair(&o.pinv(a1) * c, chain(&[&o.r(a1), c, &o.pinv(b2)]))
        }
        SylvesterMirror => {
            let (b1, a2) = (get(Slot::B1), get(Slot::A2));
            pair(c * &o.pinv(b1), chain(&[&o.pinv(a2), c, &o.l(b1)]))
        }
        TwoLeft => {
            let (a1, a2) = (get(Slot::A1), get(Slot::A2));
            let a1p = o.pinv(a1);
            let mp = o.pinv(&(&o.r(a1) * a2));
            let x1 = &(&a1p * c) - &chain(&[&a1p, a2, &mp, c]);
            pair(x1, &mp * c)
        }
        TwoRight => {
            let (b1, b2) = (get(Slot::B1), get(Slot::B2));
            let b1p = o.pinv(b1);
            let np = o.pinv(&(b2 * &o.l(b1)));
            let x1 = &(c * &b1p) - &chain(&[c, &np, b2, &b1p]);
            pair(x1, c * &np)
        }
        LyapunovLike => {
            let (a, b) = (get(Slot::A1), get(Slot::B1));
            let half = &QMatrix::identity(a.rows()) - &o.p(b).scale(0.5);
            PairSolution { x1: chain(&[&o.pinv(a), c, &half]), x2: None }
        }
        LyapunovStar => {
            let a = get(Slot::A1);
            let half = &QMatrix::identity(a.rows()) - &o.q(a).scale(0.5);
            PairSolution { x1: chain(&[&o.pinv(a), c, &half]), x2: None }
        }
    }
}

/// General solution for the given free matrices. Does not gate on consistency; the result
/// solves the equation whenever the equation is consistent.
pub fn solve_general(problem: &Problem, free: &FreeParams, settings: &Settings) -> Result<PairSolution> {
    use EquationKind::*;
    let f = free.resolve(problem)?;
    let o = Ops { settings };
    let base = partial(problem, &o);
    let get = |s: Slot| problem.slot(s);
    let x2p = || base.x2.clone().expect("two-unknown kind");
    let sol = match problem.kind() {
        GenSylvester => {
            let (a1, b1, a2, b2) = (get(Slot::A1), get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let m = &o.r(a1) * a2;
            let n = b2 * &o.l(b1);
            let s = a2 * &o.l(&m);
            let x1 = &(&(&base.x1 - &chain(&[&o.pinv(a1), &s, &f.v, &o.r(&n), b2, &o.pinv(b1)])) + &(&o.l(a1) * &f.u))
                + &(&f.z * &o.r(b1));
            let inner = &f.v - &chain(&[&o.p(&s), &f.v, &o.q(&n)]);
            let x2 = &(&x2p() + &(&o.l(&m) * &inner)) + &(&f.w * &o.r(b2));
            pair(x1, x2)
        }
        OneSidedLeft => {
            let (a1, a2, b2) = (get(Slot::A1), get(Slot::A2), get(Slot::B2));
            let m = &o.r(a1) * a2;
            let s = a2 * &o.l(&m);
            let x1 = &(&base.x1 - &chain(&[&o.pinv(a1), &s, &f.v, b2])) + &(&o.l(a1) * &f.u);
            let x2 = &(&x2p() + &(&o.l(&m) * &f.v)) + &(&f.w * &o.r(b2));
            pair(x1, x2)
        }
        OneSidedRight => {
            let (b1, a2, b2) = (get(Slot::B1), get(Slot::A2), get(Slot::B2));
            let n = b2 * &o.l(b1);
            let x1 = &(&base.x1 - &chain(&[a2, &f.v, &o.r(&n), b2, &o.pinv(b1)])) + &(&f.z * &o.r(b1));
            let x2 = &(&(&x2p() + &f.v) - &chain(&[&o.p(a2), &f.v, &o.q(&n)])) + &(&f.w * &o.r(b2));
            pair(x1, x2)
        }
        Stein => {
            let (a2, b2) = (get(Slot::A2), get(Slot::B2));
            let x1 = &base.x1 - &chain(&[a2, &f.v, b2]);
            pair(x1, &f.v + &(&f.w * &o.r(b2)))
        }
        ClassicalSylvester => {
            let (a1, b2) = (get(Slot::A1), get(Slot::B2));
            let x1 = &(&base.x1 - &chain(&[&o.pinv(a1), &f.v, b2])) + &(&o.l(a1) * &f.u);
            let x2 = &(&x2p() + &(&o.q(a1) * &f.v)) + &(&f.w * &o.r(b2));
            pair(x1, x2)
        }
        SylvesterMirror => {
            let (b1, a2) = (get(Slot::B1), get(Slot::A2));
            let x1 = &(&base.x1 - &chain(&[a2, &f.v, &o.pinv(b1)])) + &(&f.z * &o.r(b1));
            let x2 = &(&x2p() + &(&f.v * &o.p(b1))) + &(&o.l(a2) * &f.w);
            pair(x1, x2)
        }
        TwoLeft => {
            let (a1, a2) = (get(Slot::A1), get(Slot::A2));
            let m = &o.r(a1) * a2;
            let s = a2 * &o.l(&m);
            let x1 = &(&base.x1 - &chain(&[&o.pinv(a1), &s, &f.v])) + &(&o.l(a1) * &f.u);
            pair(x1, &x2p() + &(&o.l(&m) * &f.v))
        }
        TwoRight => {
            let (b1, b2) = (get(Slot::B1), get(Slot::B2));
            let n = b2 * &o.l(b1);
            let rn = o.r(&n);
            let x1 = &(&base.x1 - &chain(&[&f.v, &rn, b2, &o.pinv(b1)])) + &(&f.z * &o.r(b1));
            let x2 = &(&x2p() + &(&f.v * &rn)) + &(&f.w * &o.r(b2));
            pair(x1, x2)
        }
        LyapunovLike => {
            let (a, b) = (get(Slot::A1), get(Slot::B1));
            let la = o.l(a);
            let lbla = o.l(&(&b.ctranspose() * &la));
            PairSolution { x1: &base.x1 + &chain(&[&la, &lbla, &f.u]), x2: None }
        }
        LyapunovStar => {
            let a = get(Slot::A1);
            let sym = &f.zc + &f.zc.ctranspose();
            let defect = chain(&[a, &sym, &a.ctranspose()]).fro_norm();
            let bound = settings.tol * (1.0 + problem.rhs().fro_norm());
            if defect > bound {
                return Err(Error::ConstraintViolated(format!("|A (Zc + Zc*) A*| = {defect:e}")));
            }
            let x = &(&base.x1 + &(&o.l(a) * &f.y)) + &chain(&[&o.p(a), &f.zc, &a.ctranspose()]);
            PairSolution { x1: x, x2: None }
        }
    };
    Ok(sol)
}

/// General solution of the identity-filled two-sided form of a two-unknown kind.
pub fn solve_general_canonical(problem: &Problem, free: &FreeParams, settings: &Settings) -> Result<PairSolution> {
    solve_general(&problem.as_gen_sylvester()?, free, settings)
}
