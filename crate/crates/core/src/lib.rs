//! Coherence of associativity under a restricted move set.
//!
//! Parenthesizations of `n` variables are binary trees ([`Expr`]). The moves
//! `α_i` ([`moves`]) rotate at the `i`-th node of the left spine. Every tree
//! has a unique non-decreasing word of such moves down to the left comb
//! ([`normalize`]), which gives a canonical isomorphism between any two trees
//! with the same leaf count. Tree pairs modulo common carets form Thompson's
//! group F ([`fgroup`]); [`verify`] checks the whole picture exhaustively on
//! small leaf counts.

pub mod error;
pub mod expr;
pub mod fgroup;
pub mod graph;
pub mod moves;
pub mod normalize;
pub mod verify;

pub use error::{Blocked, Error, Result};
pub use expr::{enumerate, enumerate_capped, Expr, Metrics, NodeAddress, Step, DEFAULT_CAP};
pub use fgroup::{
    canonical_word, common_refinement, equal, from_word, invert, multiply, reduce_pair, TreePair,
};
pub use graph::RotationGraph;
pub use moves::{
    apply_alpha, apply_alpha_inv, can_apply, generator_template, rotate_at, rotate_inv_at, Letter,
    MoveTable, Sign, SpineRotations,
};
pub use normalize::{
    apply_word, canonical_iso, free_reduce, is_canonical_word, normalize_word, rewrite_positive,
    Word,
};
pub use verify::{Report, Verifier};
