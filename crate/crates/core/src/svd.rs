//! One-sided Jacobi (Hestenes) SVD for small dense complex matrices.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;

const MAX_SWEEPS: usize = 80;

/// `A = U diag(s) V*`, with `s` sorted in decreasing order.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.cols() > a.rows() {
        let t = jacobi(&a.conj_transpose());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    jacobi(a)
}

pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).s
}

/// Requires `rows >= cols`. Columns of `U` belonging to zero singular values are left as zero.
fn jacobi(a: &ComplexMatrix) -> Svd {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.clone();
    let mut v = ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    alpha += w[(i, p)].norm_sqr();
                    beta += w[(i, q)].norm_sqr();
                    gamma += w[(i, p)].conj() * w[(i, q)];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<(f64, usize)> = (0..n)
        .map(|j| ((0..m).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));

    let mut u = ComplexMatrix::zeros(m, n);
    let mut vs = ComplexMatrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (k, &(sigma, j)) in order.iter().enumerate() {
        s.push(sigma);
        for i in 0..n {
            vs[(i, k)] = v[(i, j)];
        }
        if sigma > 0.0 {
            for i in 0..m {
                u[(i, k)] = w[(i, j)] / sigma;
            }
        }
    }
    Svd { u, s, v: vs }
}

/// Applies the unitary column rotation that zeroes the `(p, q)` inner product.
fn rotate(x: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let e = phase.conj();
    for i in 0..x.rows() {
        let xp = x[(i, p)];
        let xq = x[(i, q)] * e;
        x[(i, p)] = xp * c - xq * s;
        x[(i, q)] = xp * s + xq * c;
    }
}
