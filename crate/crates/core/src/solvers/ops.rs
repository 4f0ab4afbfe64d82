//! Pseudoinverse and projector shorthands used by the product-form formulas.

use crate::config::Settings;
use crate::matrix::QMatrix;
use crate::pinv::mp_oracle;

pub(crate) struct Ops<'a> {
    pub settings: &'a Settings,
}

impl Ops<'_> {
    pub fn pinv(&self, a: &QMatrix) -> QMatrix {
        mp_oracle(a, &self.settings.rank).pinv
    }

    /// `A†A`
    pub fn p(&self, a: &QMatrix) -> QMatrix {
        &self.pinv(a) * a
    }

    /// `AA†`
    pub fn q(&self, a: &QMatrix) -> QMatrix {
        a * &self.pinv(a)
    }

    /// `I - A†A`
    pub fn l(&self, a: &QMatrix) -> QMatrix {
        &QMatrix::identity(a.cols()) - &self.p(a)
    }

    /// `I - AA†`
    pub fn r(&self, a: &QMatrix) -> QMatrix {
        &QMatrix::identity(a.rows()) - &self.q(a)
    }
}

/// Left-to-right product of a chain of conformable matrices.
pub(crate) fn chain(factors: &[&QMatrix]) -> QMatrix {
    let (first, rest) = factors.split_first().expect("non-empty product");
    rest.iter().fold((*first).clone(), |acc, f| &acc * f)
}
