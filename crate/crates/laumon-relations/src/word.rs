//! Relations as weighted sums of words in the mode operators.

use std::fmt;

use laumon_action::{PsiSign, XKind};
use laumon_algebra::{Monomial, Poly, Var};
use num_bigint::BigInt;

/// A single mode operator. Hatted letters act at node `n` with the mode
/// rescaled by `(v^n u^2)^{-mode}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X {
        kind: XKind,
        node: i64,
        hat: bool,
        mode: i32,
    },
    Psi {
        sign: PsiSign,
        node: i64,
        hat: bool,
        mode: i32,
    },
}

impl Letter {
    pub fn x(kind: XKind, node: i64, mode: i32) -> Self {
        Letter::X {
            kind,
            node,
            hat: false,
            mode,
        }
    }

    pub fn x_hat(kind: XKind, node: i64, hat: bool, mode: i32) -> Self {
        Letter::X { kind, node, hat, mode }
    }

    pub fn psi(sign: PsiSign, node: i64, mode: i32) -> Self {
        Letter::Psi {
            sign,
            node,
            hat: false,
            mode,
        }
    }

    /// The letter with its `x` mode forgotten: words sharing a skeleton
    /// have the same paths through the basis.
    pub(crate) fn skeleton(self) -> Skel {
        match self {
            Letter::X { kind, node, hat, .. } => Skel::X { kind, node, hat },
            Letter::Psi { sign, node, hat, mode } => Skel::Psi { sign, node, hat, mode },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::X { kind, node, hat, mode } => {
                write!(f, "{kind}{}_{{{node},{mode}}}", if hat { "^" } else { "" })
            }
            Letter::Psi { sign, node, hat, mode } => {
                let s = if sign == PsiSign::Plus { "+" } else { "-" };
                write!(f, "psi{}{s}_{{{node},{mode}}}", if hat { "^" } else { "" })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Skel {
    X {
        kind: XKind,
        node: i64,
        hat: bool,
    },
    Psi {
        sign: PsiSign,
        node: i64,
        hat: bool,
        mode: i32,
    },
}

/// `weight · L_1 L_2 ⋯ L_k`, applied right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub weight: Poly,
    pub word: Vec<Letter>,
}

impl Term {
    pub fn new(weight: Poly, word: Vec<Letter>) -> Self {
        Term { weight, word }
    }
}

/// One concrete mode instance of a relation: the sum of its terms must
/// vanish as an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub label: String,
    pub terms: Vec<Term>,
}

/// `c · v^e` as a Laurent polynomial.
pub fn vmono(c: i64, e: i32) -> Poly {
    Poly::term(Monomial::pow(Var::V, e), BigInt::from(c))
}

pub fn int(c: i64) -> Poly {
    Poly::constant(BigInt::from(c))
}

/// `v - v^{-1}`.
pub fn v_minus_vinv() -> Poly {
    vmono(1, 1).sub(&vmono(1, -1))
}
