//! Thompson's group F as reduced tree pairs.
//!
//! A pair `(D, R)` with equal leaf counts is read as the arrow `D -> R`.
//! Products are diagrammatic: `multiply(p, q)` is "p then q", so that
//! `(T1, T2) * (T2, T3) = (T1, T3)`. Two pairs describe the same element
//! when they have the same reduced form, obtained by deleting carets that
//! sit over the same pair of adjacent leaves in both trees.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::moves::{generator_template, Letter, MoveTable, Sign, SpineRotations};
use crate::normalize::{canonical_iso_in, Word};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TreePair {
    pub domain: Expr,
    pub range: Expr,
}

impl TreePair {
    pub fn new(domain: Expr, range: Expr) -> Result<Self> {
        let (left, right) = (domain.leaf_count(), range.leaf_count());
        if left != right {
            return Err(Error::LeafCountMismatch { left, right });
        }
        Ok(TreePair { domain, range })
    }

    pub fn identity() -> Self {
        TreePair {
            domain: Expr::Leaf,
            range: Expr::Leaf,
        }
    }

    /// Pair for a single letter; inverse letters swap the template.
    pub fn generator(letter: Letter) -> Self {
        let (source, target) = generator_template(letter.index);
        match letter.sign {
            Sign::Pos => TreePair {
                domain: source,
                range: target,
            },
            Sign::Neg => TreePair {
                domain: target,
                range: source,
            },
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.leaf_count()
    }

    /// Left-leaf indices of carets present in both trees, ascending.
    pub fn common_carets(&self) -> Vec<usize> {
        let d = caret_positions(&self.domain);
        let r = caret_positions(&self.range);
        d.into_iter()
            .filter(|j| r.binary_search(j).is_ok())
            .collect()
    }

    /// Deletes the caret over leaves `j, j+1` from both trees.
    pub fn cancel_caret(&self, j: usize) -> Option<TreePair> {
        Some(TreePair {
            domain: collapse_caret(&self.domain, j)?,
            range: collapse_caret(&self.range, j)?,
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.common_carets().is_empty()
    }

    pub fn reduced(&self) -> TreePair {
        let mut cur = self.clone();
        while let Some(&j) = cur.common_carets().first() {
            cur = cur.cancel_caret(j).expect("caret is common to both trees");
        }
        cur
    }

    /// Grows the range to `target` and the domain by the same carets.
    /// `None` unless the range is a caret-prefix of `target`.
    pub fn expand_range(&self, target: &Expr) -> Option<TreePair> {
        let subs = leaf_subtrees(&self.range, target)?;
        Some(TreePair {
            domain: substitute(&self.domain, &subs),
            range: target.clone(),
        })
    }

    pub fn expand_domain(&self, target: &Expr) -> Option<TreePair> {
        let subs = leaf_subtrees(&self.domain, target)?;
        Some(TreePair {
            domain: target.clone(),
            range: substitute(&self.range, &subs),
        })
    }

    pub fn render(&self) -> String {
        format!("{} | {}", self.domain, self.range)
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.domain, self.range)
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreePair({self})")
    }
}

impl FromStr for TreePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((d, r)) = s.split_once('|') else {
            return Err(Error::Syntax {
                pos: s.len(),
                msg: "expected `<domain> | <range>`".into(),
            });
        };
        let domain = d.parse::<Expr>()?;
        let range = r.parse::<Expr>().map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos: pos + d.len() + 1,
                msg,
            },
            other => other,
        })?;
        TreePair::new(domain, range)
    }
}

fn caret_positions(e: &Expr) -> Vec<usize> {
    fn walk(e: &Expr, offset: usize, out: &mut Vec<usize>) -> usize {
        match e {
            Expr::Leaf => 1,
            Expr::Node(l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    out.push(offset);
                }
                let nl = walk(l, offset, out);
                nl + walk(r, offset + nl, out)
            }
        }
    }
    let mut out = Vec::new();
    walk(e, 0, &mut out);
    out
}

fn collapse_caret(e: &Expr, j: usize) -> Option<Expr> {
    match e {
        Expr::Leaf => None,
        Expr::Node(l, r) if l.is_leaf() && r.is_leaf() => (j == 0).then_some(Expr::Leaf),
        Expr::Node(l, r) => {
            let nl = l.leaf_count();
            if j < nl {
                Some(Expr::node(collapse_caret(l, j)?, (**r).clone()))
            } else {
                Some(Expr::node((**l).clone(), collapse_caret(r, j - nl)?))
            }
        }
    }
}

pub fn reduce_pair(p: &TreePair) -> TreePair {
    p.reduced()
}

/// Smallest tree having both `a` and `b` as caret-prefixes (shape union).
pub fn common_refinement(a: &Expr, b: &Expr) -> Expr {
    match (a, b) {
        (Expr::Leaf, t) | (t, Expr::Leaf) => t.clone(),
        (Expr::Node(al, ar), Expr::Node(bl, br)) => {
            Expr::node(common_refinement(al, bl), common_refinement(ar, br))
        }
    }
}

/// True iff `full` is obtained from `prefix` by hanging trees on its leaves.
pub fn is_prefix_of(prefix: &Expr, full: &Expr) -> bool {
    match (prefix, full) {
        (Expr::Leaf, _) => true,
        (Expr::Node(..), Expr::Leaf) => false,
        (Expr::Node(pl, pr), Expr::Node(fl, fr)) => is_prefix_of(pl, fl) && is_prefix_of(pr, fr),
    }
}

/// The subtrees of `full` hanging at each leaf of `prefix`, left to right.
pub fn leaf_subtrees(prefix: &Expr, full: &Expr) -> Option<Vec<Expr>> {
    fn walk(prefix: &Expr, full: &Expr, out: &mut Vec<Expr>) -> bool {
        match (prefix, full) {
            (Expr::Leaf, t) => {
                out.push(t.clone());
                true
            }
            (Expr::Node(..), Expr::Leaf) => false,
            (Expr::Node(pl, pr), Expr::Node(fl, fr)) => walk(pl, fl, out) && walk(pr, fr, out),
        }
    }
    let mut out = Vec::with_capacity(prefix.leaf_count());
    walk(prefix, full, &mut out).then_some(out)
}

/// Replaces the `k`-th leaf of `e` by `subs[k]`: an instance of `e`.
///
/// Panics if `subs` has fewer entries than `e` has leaves.
pub fn substitute(e: &Expr, subs: &[Expr]) -> Expr {
    fn walk(e: &Expr, subs: &mut std::slice::Iter<'_, Expr>) -> Expr {
        match e {
            Expr::Leaf => subs.next().expect("one subtree per leaf").clone(),
            Expr::Node(l, r) => {
                let l = walk(l, subs);
                Expr::node(l, walk(r, subs))
            }
        }
    }
    walk(e, &mut subs.iter())
}

/// `p` then `q`.
pub fn multiply(p: &TreePair, q: &TreePair) -> TreePair {
    let middle = common_refinement(&p.range, &q.domain);
    let p = p.expand_range(&middle).expect("refinement extends p.range");
    let q = q
        .expand_domain(&middle)
        .expect("refinement extends q.domain");
    TreePair {
        domain: p.domain,
        range: q.range,
    }
    .reduced()
}

pub fn invert(p: &TreePair) -> TreePair {
    TreePair {
        domain: p.range.clone(),
        range: p.domain.clone(),
    }
    .reduced()
}

/// Product of the letters' generator pairs, in application order.
pub fn from_word(w: &Word) -> TreePair {
    w.letters().iter().fold(TreePair::identity(), |acc, &l| {
        multiply(&acc, &TreePair::generator(l))
    })
}

/// The path `domain -> left comb -> range` of the reduced pair.
pub fn canonical_word(p: &TreePair) -> Word {
    canonical_word_in(&SpineRotations, p).expect("spine rotations always normalize")
}

pub fn canonical_word_in(table: &dyn MoveTable, p: &TreePair) -> Result<Word> {
    let r = p.reduced();
    canonical_iso_in(table, &r.domain, &r.range)
}

pub fn equal(p: &TreePair, q: &TreePair) -> bool {
    p.reduced() == q.reduced()
}
