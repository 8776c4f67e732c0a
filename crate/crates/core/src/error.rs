use thiserror::Error;

use crate::expr::NodeAddress;

/// Why a rotation could not be performed at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocked {
    /// The left spine is shorter than the requested index.
    NoSuchNode,
    /// A forward move needs an internal right child.
    RightChildIsLeaf,
    /// An inverse move needs an internal left child.
    LeftChildIsLeaf,
}

impl std::fmt::Display for Blocked {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Blocked::NoSuchNode => "no node at that position",
            Blocked::RightChildIsLeaf => "right child is a leaf",
            Blocked::LeftChildIsLeaf => "left child is a leaf",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid address {address}: step {step} descends into a leaf")]
    InvalidAddress { address: NodeAddress, step: usize },

    #[error("{letter} is not applicable: {reason}")]
    Inapplicable { letter: String, reason: Blocked },

    #[error("rotation at {address} is not applicable: {reason}")]
    InapplicableRotation {
        address: NodeAddress,
        reason: Blocked,
    },

    #[error("word fails at position {position}: {source}")]
    WordFailed {
        position: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("leaf count {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("leaf counts differ: {left} vs {right}")]
    LeafCountMismatch { left: usize, right: usize },

    #[error("leaf count must be at least 1")]
    ZeroLeaves,

    #[error("word contains the inverse letter {0}; only positive words are accepted")]
    NonPositiveWord(String),

    #[error("normalization stalled at {expr}: {detail}")]
    Stalled { expr: String, detail: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
