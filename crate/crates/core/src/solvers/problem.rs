use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquationKind {
    /// `A1 X1 B1 + A2 X2 B2 = C`
    GenSylvester,
    /// `A1 X1 + A2 X2 B2 = C`
    #[serde(rename = "one-left")]
    OneSidedLeft,
    /// `X1 B1 + A2 X2 B2 = C`
    #[serde(rename = "one-right")]
    OneSidedRight,
    /// `X1 + A2 X2 B2 = C`
    Stein,
    /// `A1 X1 + X2 B2 = C`
    #[serde(rename = "sylvester")]
    ClassicalSylvester,
    /// `X1 B1 + A2 X2 = C`
    SylvesterMirror,
    /// `A1 X1 + A2 X2 = C`
    TwoLeft,
    /// `X1 B1 + X2 B2 = C`
    TwoRight,
    /// `A X + X* B = C`, with `A` in slot `a1` and `B` in slot `b1`.
    LyapunovLike,
    /// `A X + X* A* = B`, with `A` in slot `a1` and `B` in slot `c`.
    LyapunovStar,
}

impl EquationKind {
    pub const ALL: [EquationKind; 10] = [
        EquationKind::GenSylvester,
        EquationKind::OneSidedLeft,
        EquationKind::OneSidedRight,
        EquationKind::Stein,
        EquationKind::ClassicalSylvester,
        EquationKind::SylvesterMirror,
        EquationKind::TwoLeft,
        EquationKind::TwoRight,
        EquationKind::LyapunovLike,
        EquationKind::LyapunovStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::GenSylvester => "gen-sylvester",
            EquationKind::OneSidedLeft => "one-left",
            EquationKind::OneSidedRight => "one-right",
            EquationKind::Stein => "stein",
            EquationKind::ClassicalSylvester => "sylvester",
            EquationKind::SylvesterMirror => "sylvester-mirror",
            EquationKind::TwoLeft => "two-left",
            EquationKind::TwoRight => "two-right",
            EquationKind::LyapunovLike => "lyapunov-like",
            EquationKind::LyapunovStar => "lyapunov-star",
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            EquationKind::GenSylvester => "A1 X1 B1 + A2 X2 B2 = C",
            EquationKind::OneSidedLeft => "A1 X1 + A2 X2 B2 = C",
            EquationKind::OneSidedRight => "X1 B1 + A2 X2 B2 = C",
            EquationKind::Stein => "X1 + A2 X2 B2 = C",
            EquationKind::ClassicalSylvester => "A1 X1 + X2 B2 = C",
            EquationKind::SylvesterMirror => "X1 B1 + A2 X2 = C",
            EquationKind::TwoLeft => "A1 X1 + A2 X2 = C",
            EquationKind::TwoRight => "X1 B1 + X2 B2 = C",
            EquationKind::LyapunovLike => "A X + X* B = C",
            EquationKind::LyapunovStar => "A X + X* A* = B",
        }
    }

    /// Coefficient slots this kind reads; every other slot must be empty.
    pub fn slots(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            EquationKind::GenSylvester => &[A1, B1, A2, B2, C],
            EquationKind::OneSidedLeft => &[A1, A2, B2, C],
            EquationKind::OneSidedRight => &[B1, A2, B2, C],
            EquationKind::Stein => &[A2, B2, C],
            EquationKind::ClassicalSylvester => &[A1, B2, C],
            EquationKind::SylvesterMirror => &[B1, A2, C],
            EquationKind::TwoLeft => &[A1, A2, C],
            EquationKind::TwoRight => &[B1, B2, C],
            EquationKind::LyapunovLike => &[A1, B1, C],
            EquationKind::LyapunovStar => &[A1, C],
        }
    }

    pub fn has_two_unknowns(self) -> bool {
        !matches!(self, EquationKind::LyapunovLike | EquationKind::LyapunovStar)
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EquationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidMatrix(format!("unknown equation kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    A1,
    B1,
    A2,
    B2,
    C,
}

impl Slot {
    pub const ALL: [Slot; 5] = [Slot::A1, Slot::B1, Slot::A2, Slot::B2, Slot::C];

    pub fn name(self) -> &'static str {
        match self {
            Slot::A1 => "a1",
            Slot::B1 => "b1",
            Slot::A2 => "a2",
            Slot::B2 => "b2",
            Slot::C => "c",
        }
    }
}

/// Raw coefficient slots; which ones are required depends on the kind.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Slots {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<QMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<QMatrix>,
}

impl Slots {
    pub fn get(&self, slot: Slot) -> Option<&QMatrix> {
        match slot {
            Slot::A1 => self.a1.as_ref(),
            Slot::B1 => self.b1.as_ref(),
            Slot::A2 => self.a2.as_ref(),
            Slot::B2 => self.b2.as_ref(),
            Slot::C => self.c.as_ref(),
        }
    }

    pub fn set(&mut self, slot: Slot, m: QMatrix) {
        let target = match slot {
            Slot::A1 => &mut self.a1,
            Slot::B1 => &mut self.b1,
            Slot::A2 => &mut self.a2,
            Slot::B2 => &mut self.b2,
            Slot::C => &mut self.c,
        };
        *target = Some(m);
    }
}

/// The two-unknown equation with absent coefficients replaced by identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub a1: QMatrix,
    pub b1: QMatrix,
    pub a2: QMatrix,
    pub b2: QMatrix,
    pub c: QMatrix,
}

/// A validated equation instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    kind: EquationKind,
    slots: Slots,
}

impl Problem {
    pub fn new(kind: EquationKind, slots: Slots) -> Result<Self> {
        for slot in Slot::ALL {
            let needed = kind.slots().contains(&slot);
            match (needed, slots.get(slot).is_some()) {
                (true, false) => return Err(Error::MissingSlot { kind: kind.name(), slot: slot.name() }),
                (false, true) => {
                    return Err(Error::InvalidMatrix(format!("slot {} is not used by kind {}", slot.name(), kind.name())))
                }
                _ => {}
            }
        }
        let p = Problem { kind, slots };
        p.validate()?;
        Ok(p)
    }

    pub fn gen_sylvester(a1: QMatrix, b1: QMatrix, a2: QMatrix, b2: QMatrix, c: QMatrix) -> Result<Self> {
        Problem::new(
            EquationKind::GenSylvester,
            Slots { a1: Some(a1), b1: Some(b1), a2: Some(a2), b2: Some(b2), c: Some(c) },
        )
    }

    pub fn lyapunov_like(a: QMatrix, b: QMatrix, c: QMatrix) -> Result<Self> {
        Problem::new(EquationKind::LyapunovLike, Slots { a1: Some(a), b1: Some(b), c: Some(c), ..Slots::default() })
    }

    pub fn lyapunov_star(a: QMatrix, b: QMatrix) -> Result<Self> {
        Problem::new(EquationKind::LyapunovStar, Slots { a1: Some(a), c: Some(b), ..Slots::default() })
    }

    pub fn kind(&self) -> EquationKind {
        self.kind
    }

    pub fn slots(&self) -> &Slots {
        &self.slots
    }

    /// A slot the kind requires. Panics for slots the kind does not use.
    pub fn slot(&self, slot: Slot) -> &QMatrix {
        self.slots.get(slot).unwrap_or_else(|| panic!("slot {} unused by {}", slot.name(), self.kind))
    }

    pub fn rhs(&self) -> &QMatrix {
        self.slot(Slot::C)
    }

    fn validate(&self) -> Result<()> {
        let c = self.rhs();
        match self.kind {
            EquationKind::LyapunovLike => {
                let (a, b) = (self.slot(Slot::A1), self.slot(Slot::B1));
                let (m, n) = a.shape();
                if b.shape() != (n, m) {
                    return Err(Error::mismatch("B of A X + X* B = C", (n, m), b.shape()));
                }
                if c.shape() != (m, m) {
                    return Err(Error::mismatch("C of A X + X* B = C", (m, m), c.shape()));
                }
            }
            EquationKind::LyapunovStar => {
                let m = self.slot(Slot::A1).rows();
                if c.shape() != (m, m) {
                    return Err(Error::mismatch("B of A X + X* A* = B", (m, m), c.shape()));
                }
            }
            _ => {
                let (m, s) = c.shape();
                for (slot, side) in [(Slot::A1, 'r'), (Slot::A2, 'r'), (Slot::B1, 'c'), (Slot::B2, 'c')] {
                    if let Some(x) = self.slots.get(slot) {
                        let ok = if side == 'r' { x.rows() == m } else { x.cols() == s };
                        if !ok {
                            return Err(Error::mismatch(slot.name(), x.shape(), c.shape()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Identity-filled form of a two-unknown kind.
    pub fn canonical(&self) -> Result<Canonical> {
        if !self.kind.has_two_unknowns() {
            return Err(Error::InvalidMatrix(format!("kind {} has a single unknown", self.kind)));
        }
        let c = self.rhs().clone();
        let (m, s) = c.shape();
        let fill = |slot: Slot, n: usize| self.slots.get(slot).cloned().unwrap_or_else(|| QMatrix::identity(n));
        Ok(Canonical { a1: fill(Slot::A1, m), b1: fill(Slot::B1, s), a2: fill(Slot::A2, m), b2: fill(Slot::B2, s), c })
    }

    /// The same equation posed as a general two-sided instance.
    pub fn as_gen_sylvester(&self) -> Result<Problem> {
        let c = self.canonical()?;
        Problem::gen_sylvester(c.a1, c.b1, c.a2, c.b2, c.c)
    }

    /// `(rows, cols)` of `X1` and of `X2` when present.
    pub fn unknown_shapes(&self) -> ((usize, usize), Option<(usize, usize)>) {
        match self.kind {
            EquationKind::LyapunovLike | EquationKind::LyapunovStar => {
                let (m, n) = self.slot(Slot::A1).shape();
                ((n, m), None)
            }
            _ => {
                let c = self.canonical().expect("two-unknown kind");
                ((c.a1.cols(), c.b1.rows()), Some((c.a2.cols(), c.b2.rows())))
            }
        }
    }
}
