//! Seeded random instances: planted solutions for every kind and perturbed inconsistent ones.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::QMatrix;
use crate::random::QRng;
use crate::solvers::{lhs, EquationKind, PairSolution, Problem, Slot, Slots};

/// A problem together with the solution it was built from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub kind: EquationKind,
    pub seed: u64,
    pub slots: Slots,
    pub planted: PairSolution,
}

impl Instance {
    pub fn problem(&self) -> Result<Problem> {
        Problem::new(self.kind, self.slots.clone())
    }
}

fn coefficient(rng: &mut QRng, rows: usize, cols: usize) -> QMatrix {
    let r = rng.dim(1, rows.min(cols));
    rng.planted_rank(rows, cols, r)
}

/// Random coefficients for `kind` with `C = LHS(planted)`; every dimension lies in `1..=max_dim`.
pub fn consistent(kind: EquationKind, rng: &mut QRng, max_dim: usize) -> Result<Instance> {
    let seed = rng.seed();
    let d = |rng: &mut QRng| rng.dim(1, max_dim);
    let mut slots = Slots::default();
    let planted = match kind {
        EquationKind::LyapunovLike | EquationKind::LyapunovStar => {
            let (m, n) = (d(rng), d(rng));
            let a = coefficient(rng, m, n);
            let x = rng.matrix(n, m);
            slots.a1 = Some(a.clone());
            if kind == EquationKind::LyapunovLike {
                let b = if rng.coin() { a.ctranspose() } else { a.ctranspose().scale(-1.0) };
                slots.b1 = Some(b);
            }
            slots.c = Some(QMatrix::zeros(m, m));
            PairSolution { x1: x, x2: None }
        }
        _ => {
            let (m, s) = (d(rng), d(rng));
            let used = kind.slots();
            let (n, r, p, q) = (d(rng), d(rng), d(rng), d(rng));
            let mut pick = |slot: Slot, rows: usize, cols: usize, rng: &mut QRng| {
                if used.contains(&slot) {
                    slots.set(slot, coefficient(rng, rows, cols));
                }
            };
            let (n, r) = (if used.contains(&Slot::A1) { n } else { m }, if used.contains(&Slot::B1) { r } else { s });
            let (p, q) = (if used.contains(&Slot::A2) { p } else { m }, if used.contains(&Slot::B2) { q } else { s });
            pick(Slot::A1, m, n, rng);
            pick(Slot::B1, r, s, rng);
            pick(Slot::A2, m, p, rng);
            pick(Slot::B2, q, s, rng);
            slots.c = Some(QMatrix::zeros(m, s));
            PairSolution { x1: rng.matrix(n, r), x2: Some(rng.matrix(p, q)) }
        }
    };
    let c = lhs(&Problem::new(kind, slots.clone())?, &planted)?;
    slots.c = Some(c);
    Ok(Instance { kind, seed, slots, planted })
}

/// A general two-sided instance whose coefficients share a deficient column or row space,
/// with a random perturbation added to the planted right-hand side.
pub fn perturbed_inconsistent(rng: &mut QRng, max_dim: usize) -> Result<Instance> {
    let seed = rng.seed();
    let max_dim = max_dim.max(2);
    let mut inst = consistent(EquationKind::GenSylvester, rng, max_dim)?;
    let slots = &mut inst.slots;
    let (m, s) = slots.c.as_ref().expect("rhs").shape();
    if rng.coin() && m >= 2 || s < 2 {
        let m = if m < 2 { 2 } else { m };
        let (n, p) = (rng.dim(1, max_dim), rng.dim(1, max_dim));
        let rank_a = rng.dim(1, (m - 1).min(n));
        let a1 = rng.planted_rank(m, n, rank_a);
        let mix = rng.matrix(n, p);
        slots.a1 = Some(a1.clone());
        slots.a2 = Some(&a1 * &mix);
        inst.planted.x1 = rng.matrix(n, inst.planted.x1.cols());
        inst.planted.x2 = Some(rng.matrix(p, inst.planted.x2.as_ref().expect("x2").cols()));
        let s = slots.b1.as_ref().expect("b1").cols();
        slots.c = Some(QMatrix::zeros(m, s));
    } else {
        let (r, q) = (rng.dim(1, max_dim), rng.dim(1, max_dim));
        let rank_b = rng.dim(1, (s - 1).min(r));
        let b1 = rng.planted_rank(r, s, rank_b);
        let mix = rng.matrix(q, r);
        slots.b1 = Some(b1.clone());
        slots.b2 = Some(&mix * &b1);
        inst.planted.x1 = rng.matrix(inst.planted.x1.rows(), r);
        inst.planted.x2 = Some(rng.matrix(inst.planted.x2.as_ref().expect("x2").rows(), q));
    }
    let c = lhs(&Problem::new(EquationKind::GenSylvester, slots.clone())?, &inst.planted)?;
    let (m, s) = c.shape();
    let e = rng.matrix(m, s);
    slots.c = Some(&c + &e);
    inst.seed = seed;
    Ok(inst)
}
