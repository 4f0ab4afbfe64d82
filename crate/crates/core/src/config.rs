//! Numerical settings shared by every solver path.

use crate::det::{DetEngine, DEFAULT_MAX_DET_DIM};
use crate::matrix::{RankTolerance, DEFAULT_RANK_FLOOR};

pub const DEFAULT_TOL: f64 = 1e-8;

/// Environment variable overriding the determinant dimension cap.
pub const MAX_DET_DIM_ENV: &str = "QSYLV_MAX_DET_DIM";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub det: DetEngine,
    pub rank: RankTolerance,
    /// Relative tolerance of the consistency criteria, scaled by `1 + |C|_F`.
    pub tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            det: DetEngine::new(DEFAULT_MAX_DET_DIM),
            rank: RankTolerance::with_floor(DEFAULT_RANK_FLOOR),
            tol: DEFAULT_TOL,
        }
    }
}

impl Settings {
    /// Defaults, with the determinant cap taken from the environment when set to a positive integer.
    pub fn from_env() -> Self {
        let mut s = Settings::default();
        if let Some(n) = std::env::var(MAX_DET_DIM_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            if n >= 1 {
                s.det = DetEngine::new(n);
            }
        }
        s
    }

    pub fn with_max_det_dim(mut self, n: usize) -> Self {
        self.det = DetEngine::new(n);
        self
    }

    pub fn with_rank_floor(mut self, floor: f64) -> Self {
        self.rank = RankTolerance::with_floor(floor);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}
