//! The restricted move set.
//!
//! `α_i` is the associativity move `A*(B*C) -> (A*B)*C` performed at the
//! `i`-th node of the left spine; everything hanging to the right of the
//! spine above that node is carried along unchanged. Rotations at any
//! other address are available through [`rotate_at`], but normalization
//! and the coherence suites never use them.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Blocked, Error, Result};
use crate::expr::{Expr, NodeAddress};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

/// `α_i` or `α_i⁻¹`. Text form `a<i>` / `A<i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter {
            index,
            sign: Sign::Pos,
        }
    }

    pub fn neg(index: usize) -> Self {
        Letter {
            index,
            sign: Sign::Neg,
        }
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            sign: match self.sign {
                Sign::Pos => Sign::Neg,
                Sign::Neg => Sign::Pos,
            },
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Pos => write!(f, "a{}", self.index),
            Sign::Neg => write!(f, "A{}", self.index),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in letter `{s}`"),
        };
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('a') => Sign::Pos,
            Some('A') => Sign::Neg,
            _ => return Err(bad("expected `a` or `A`")),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected a decimal index"));
        }
        let index = digits.parse().map_err(|_| bad("index out of range"))?;
        Ok(Letter { index, sign })
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A realization of the generators as partial maps on expressions.
///
/// [`SpineRotations`] is the real one. The verification suites are written
/// against this trait so that they can be run against deliberately broken
/// tables, which they must reject.
pub trait MoveTable: Sync {
    fn forward(&self, index: usize, e: &Expr) -> Result<Expr>;

    fn backward(&self, index: usize, e: &Expr) -> Result<Expr>;

    fn apply(&self, letter: Letter, e: &Expr) -> Result<Expr> {
        match letter.sign {
            Sign::Pos => self.forward(letter.index, e),
            Sign::Neg => self.backward(letter.index, e),
        }
    }

    fn can_apply(&self, index: usize, e: &Expr) -> bool {
        self.forward(index, e).is_ok()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SpineRotations;

impl MoveTable for SpineRotations {
    fn forward(&self, index: usize, e: &Expr) -> Result<Expr> {
        apply_alpha(index, e)
    }

    fn backward(&self, index: usize, e: &Expr) -> Result<Expr> {
        apply_alpha_inv(index, e)
    }

    fn can_apply(&self, index: usize, e: &Expr) -> bool {
        can_apply(index, e)
    }
}

/// `(A*(B*C))` to `((A*B)*C)`.
pub(crate) fn rotate_left(node: &Expr) -> std::result::Result<Expr, Blocked> {
    match node {
        Expr::Leaf => Err(Blocked::RightChildIsLeaf),
        Expr::Node(a, bc) => match &**bc {
            Expr::Leaf => Err(Blocked::RightChildIsLeaf),
            Expr::Node(b, c) => Ok(Expr::node(Expr::Node(a.clone(), b.clone()), (**c).clone())),
        },
    }
}

/// `((A*B)*C)` to `(A*(B*C))`.
pub(crate) fn rotate_right(node: &Expr) -> std::result::Result<Expr, Blocked> {
    match node {
        Expr::Leaf => Err(Blocked::LeftChildIsLeaf),
        Expr::Node(ab, c) => match &**ab {
            Expr::Leaf => Err(Blocked::LeftChildIsLeaf),
            Expr::Node(a, b) => Ok(Expr::node((**a).clone(), Expr::Node(b.clone(), c.clone()))),
        },
    }
}

pub fn can_apply(index: usize, e: &Expr) -> bool {
    matches!(
        e.spine_node(index),
        Some(Expr::Node(_, r)) if !r.is_leaf()
    )
}

fn at_spine(
    index: usize,
    e: &Expr,
    letter: Letter,
    rotate: fn(&Expr) -> std::result::Result<Expr, Blocked>,
) -> Result<Expr> {
    let fail = |reason| Error::Inapplicable {
        letter: letter.to_string(),
        reason,
    };
    let node = e.spine_node(index).ok_or(fail(Blocked::NoSuchNode))?;
    let rotated = rotate(node).map_err(fail)?;
    let mut out = rotated;
    // rebuild the spine above the rotated node
    for depth in (0..index).rev() {
        let Some(Expr::Node(_, r)) = e.spine_node(depth) else {
            unreachable!("spine node above an existing node");
        };
        out = Expr::node(out, (**r).clone());
    }
    Ok(out)
}

pub fn apply_alpha(index: usize, e: &Expr) -> Result<Expr> {
    at_spine(index, e, Letter::pos(index), rotate_left)
}

pub fn apply_alpha_inv(index: usize, e: &Expr) -> Result<Expr> {
    at_spine(index, e, Letter::neg(index), rotate_right)
}

/// Left rotation at an arbitrary node.
pub fn rotate_at(e: &Expr, address: &NodeAddress) -> Result<Expr> {
    rotate_with(e, address, rotate_left)
}

/// Right rotation at an arbitrary node; inverse of [`rotate_at`].
pub fn rotate_inv_at(e: &Expr, address: &NodeAddress) -> Result<Expr> {
    rotate_with(e, address, rotate_right)
}

fn rotate_with(
    e: &Expr,
    address: &NodeAddress,
    rotate: fn(&Expr) -> std::result::Result<Expr, Blocked>,
) -> Result<Expr> {
    e.subtree_at(address)?;
    let mut blocked = None;
    let out = e.replace_at(address.steps(), |node| match rotate(node) {
        Ok(r) => Some(r),
        Err(b) => {
            blocked = Some(b);
            None
        }
    });
    out.ok_or_else(|| Error::InapplicableRotation {
        address: address.clone(),
        reason: blocked.unwrap_or(Blocked::NoSuchNode),
    })
}

/// Smallest source and target of `α_i`, on `i + 3` leaves.
pub fn generator_template(index: usize) -> (Expr, Expr) {
    let mut source = Expr::right_comb(3).expect("n > 0");
    let mut target = Expr::left_comb(3).expect("n > 0");
    for _ in 0..index {
        source = Expr::node(source, Expr::Leaf);
        target = Expr::node(target, Expr::Leaf);
    }
    (source, target)
}
