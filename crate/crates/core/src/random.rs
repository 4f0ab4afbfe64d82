//! Seeded random quaternion matrices for tests and instance generation.

use rand::{RngExt, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::matrix::QMatrix;
use crate::quaternion::Quaternion;

pub struct QRng {
    seed: u64,
    rng: SplitMix64,
}

impl QRng {
    pub fn new(seed: u64) -> Self {
        QRng { seed, rng: SplitMix64::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.random_range(-1.0..=1.0)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn dim(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_range(0..2) == 1
    }

    /// Entries uniform in `[-1, 1]^4`.
    pub fn quaternion(&mut self) -> Quaternion {
        Quaternion::new(self.unit(), self.unit(), self.unit(), self.unit())
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> QMatrix {
        QMatrix::from_fn(rows, cols, |_, _| self.quaternion())
    }

    /// Product of random `rows x r` and `r x cols` factors; the zero matrix when `r == 0`.
    pub fn planted_rank(&mut self, rows: usize, cols: usize, r: usize) -> QMatrix {
        if r == 0 {
            return QMatrix::zeros(rows, cols);
        }
        let left = self.matrix(rows, r);
        let right = self.matrix(r, cols);
        &left * &right
    }

    /// Random Hermitian matrix with real diagonal.
    pub fn hermitian(&mut self, n: usize) -> QMatrix {
        let mut h = QMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = Quaternion::real(self.unit());
            for j in i + 1..n {
                let q = self.quaternion();
                h[(i, j)] = q;
                h[(j, i)] = q.conj();
            }
        }
        h
    }

    /// Random matrix whose entries lie in the complex subfield (zero j and k parts).
    pub fn complex_valued(&mut self, rows: usize, cols: usize) -> QMatrix {
        QMatrix::from_fn(rows, cols, |_, _| Quaternion::new(self.unit(), self.unit(), 0.0, 0.0))
    }
}
