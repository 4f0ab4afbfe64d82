//! Quaternion matrix equations solved by determinantal formulas and by Moore-Penrose products.

pub mod cli;
pub mod config;
pub mod cramer;
pub mod det;
pub mod error;
pub mod generate;
pub mod golden;
pub mod io;
pub mod matrix;
pub mod pinv;
pub mod quaternion;
pub mod random;
pub mod solvers;
pub mod svd;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, QMatrix, RankTolerance};
pub use quaternion::Quaternion;
