//! Words in the generators and the normalization procedure.
//!
//! A [`Word`] lists letters in the order they are applied: the first letter
//! acts first. Composition strings written right-to-left are the reverse of
//! this; use [`Word::from_composition`] / [`Word::to_composition`] to cross
//! over.
//!
//! Normalization always applies `α_k` with `k` the current normalization
//! level. The level never decreases along the way, so the resulting word has
//! non-decreasing indices, and it is the only positive word with that
//! property that reaches the left comb.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::moves::{Letter, MoveTable, SpineRotations};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn positive(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    /// Letters reversed and each one inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Reads a right-to-left composition string (rightmost acts first).
    pub fn from_composition(letters: Vec<Letter>) -> Word {
        let mut letters = letters;
        letters.reverse();
        Word(letters)
    }

    pub fn to_composition(&self) -> Vec<Letter> {
        self.0.iter().rev().copied().collect()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Space separated letters; the empty word is `-`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{self}]")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "-" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let pos = offset + s[offset..].find(token).unwrap_or(0);
            offset = pos + token.len();
            let letter = token.parse::<Letter>().map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax { pos, msg },
                other => other,
            })?;
            letters.push(letter);
        }
        Ok(Word(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn apply_word(w: &Word, e: &Expr) -> Result<Expr> {
    apply_word_in(&SpineRotations, w, e)
}

/// Applies `w` letter by letter; a failure reports its 1-based position.
pub fn apply_word_in(table: &dyn MoveTable, w: &Word, e: &Expr) -> Result<Expr> {
    let mut cur = e.clone();
    for (k, &letter) in w.letters().iter().enumerate() {
        cur = table
            .apply(letter, &cur)
            .map_err(|source| Error::WordFailed {
                position: k + 1,
                source: Box::new(source),
            })?;
    }
    Ok(cur)
}

pub fn normalize_word(e: &Expr) -> Word {
    normalize_word_in(&SpineRotations, e).expect("spine rotations always normalize")
}

/// Normalization driven by an arbitrary move table.
///
/// Fails instead of looping when the table does not make progress: the
/// number of steps is capped by the rotation potential of `e`.
pub fn normalize_word_in(table: &dyn MoveTable, e: &Expr) -> Result<Word> {
    let limit = e.right_depth_potential();
    let mut word = Word::empty();
    let mut cur = e.clone();
    while !cur.is_fully_normalized() {
        if word.len() >= limit {
            return Err(Error::Stalled {
                expr: e.render(),
                detail: format!("no left comb after {limit} steps"),
            });
        }
        let level = cur.metrics().level;
        cur = table.forward(level, &cur).map_err(|err| Error::Stalled {
            expr: cur.render(),
            detail: err.to_string(),
        })?;
        word.push(Letter::pos(level));
    }
    Ok(word)
}

/// All letters positive with non-decreasing indices.
pub fn is_canonical_word(w: &Word) -> bool {
    w.is_positive() && w.letters().windows(2).all(|p| p[0].index <= p[1].index)
}

pub fn canonical_iso(e: &Expr, f: &Expr) -> Result<Word> {
    canonical_iso_in(&SpineRotations, e, f)
}

/// Path `e -> left comb -> f`: the normalizing word of `e` followed by the
/// inverse of the normalizing word of `f`. Not freely reduced.
pub fn canonical_iso_in(table: &dyn MoveTable, e: &Expr, f: &Expr) -> Result<Word> {
    let (left, right) = (e.leaf_count(), f.leaf_count());
    if left != right {
        return Err(Error::LeafCountMismatch { left, right });
    }
    let p = normalize_word_in(table, e)?;
    let q = normalize_word_in(table, f)?;
    Ok(p.concat(&q.inverse()))
}

/// Cancels adjacent `a_i A_i` and `A_i a_i` until none remain.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Sorts a positive word with the rule `[a_j, a_i] -> [a_i, a_{j+1}]`
/// (`i < j`), always rewriting the leftmost descent.
pub fn rewrite_positive(w: &Word) -> Result<Word> {
    if let Some(l) = w.letters().iter().find(|l| !l.is_positive()) {
        return Err(Error::NonPositiveWord(l.to_string()));
    }
    let mut idx: Vec<usize> = w.letters().iter().map(|l| l.index).collect();
    while let Some(k) = idx.windows(2).position(|p| p[0] > p[1]) {
        let (j, i) = (idx[k], idx[k + 1]);
        idx[k] = i;
        idx[k + 1] = j + 1;
    }
    Ok(Word::positive(&idx))
}
