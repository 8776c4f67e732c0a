//! Parenthesized expressions as binary trees.
//!
//! Variables are positional: the leftmost leaf is the first variable, and
//! so on. Nothing is stored in a leaf. The canonical text form uses `x` for
//! a variable and `(a*b)` for a product, with no whitespace.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest leaf count `enumerate` accepts unless told otherwise.
/// Catalan(11) = 58786 shapes.
pub const DEFAULT_CAP: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Leaf,
    Node(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn node(left: Expr, right: Expr) -> Expr {
        Expr::Node(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Expr::Leaf)
    }

    pub fn children(&self) -> Option<(&Expr, &Expr)> {
        match self {
            Expr::Leaf => None,
            Expr::Node(l, r) => Some((l, r)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Expr::Leaf => 1,
            Expr::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// The fully normalized expression `(...((x*x)*x)...*x)` on `n` leaves.
    pub fn left_comb(n: usize) -> Result<Expr> {
        if n == 0 {
            return Err(Error::ZeroLeaves);
        }
        Ok((1..n).fold(Expr::Leaf, |acc, _| Expr::node(acc, Expr::Leaf)))
    }

    pub fn right_comb(n: usize) -> Result<Expr> {
        if n == 0 {
            return Err(Error::ZeroLeaves);
        }
        Ok((1..n).fold(Expr::Leaf, |acc, _| Expr::node(Expr::Leaf, acc)))
    }

    /// True iff every right child is a leaf.
    pub fn is_fully_normalized(&self) -> bool {
        let mut cur = self;
        while let Expr::Node(l, r) = cur {
            if !r.is_leaf() {
                return false;
            }
            cur = l;
        }
        true
    }

    /// Normalization level and weight.
    ///
    /// Strip right-hand leaves down the left spine. The number of steps taken
    /// before reaching a node with an internal right child is the level, and
    /// the leaf count of that right child is the weight. The left comb on `n`
    /// leaves has level `n` and weight 1.
    pub fn metrics(&self) -> Metrics {
        let mut cur = self;
        let mut level = 0;
        while let Expr::Node(l, r) = cur {
            if !r.is_leaf() {
                return Metrics {
                    level,
                    weight: r.leaf_count(),
                };
            }
            cur = l;
            level += 1;
        }
        Metrics {
            level: self.leaf_count(),
            weight: 1,
        }
    }

    /// The node reached by walking `depth` steps down the left spine.
    pub fn spine_node(&self, depth: usize) -> Option<&Expr> {
        let mut cur = self;
        for _ in 0..depth {
            match cur {
                Expr::Node(l, _) => cur = l,
                Expr::Leaf => return None,
            }
        }
        Some(cur)
    }

    pub fn subtree_at(&self, address: &NodeAddress) -> Result<&Expr> {
        let mut cur = self;
        for (k, step) in address.steps().iter().enumerate() {
            match (cur, step) {
                (Expr::Node(l, _), Step::L) => cur = l,
                (Expr::Node(_, r), Step::R) => cur = r,
                (Expr::Leaf, _) => {
                    return Err(Error::InvalidAddress {
                        address: address.clone(),
                        step: k + 1,
                    })
                }
            }
        }
        Ok(cur)
    }

    /// Rebuild `self` with the subtree at `address` replaced by `f(subtree)`.
    pub(crate) fn replace_at<F>(&self, address: &[Step], f: F) -> Option<Expr>
    where
        F: FnOnce(&Expr) -> Option<Expr>,
    {
        match address.split_first() {
            None => f(self),
            Some((step, rest)) => {
                let (l, r) = self.children()?;
                Some(match step {
                    Step::L => Expr::node(l.replace_at(rest, f)?, r.clone()),
                    Step::R => Expr::node(l.clone(), r.replace_at(rest, f)?),
                })
            }
        }
    }

    /// Addresses of every internal node, in preorder.
    pub fn internal_addresses(&self) -> Vec<NodeAddress> {
        fn walk(e: &Expr, path: &mut Vec<Step>, out: &mut Vec<NodeAddress>) {
            if let Expr::Node(l, r) = e {
                out.push(NodeAddress(path.clone()));
                path.push(Step::L);
                walk(l, path, out);
                path.pop();
                path.push(Step::R);
                walk(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Depth of each leaf, counting right steps only, summed over leaves.
    /// Every forward rotation lowers this by at least one.
    pub fn right_depth_potential(&self) -> usize {
        fn walk(e: &Expr, rights: usize) -> usize {
            match e {
                Expr::Leaf => rights,
                Expr::Node(l, r) => walk(l, rights) + walk(r, rights + 1),
            }
        }
        walk(self, 0)
    }

    pub fn render(&self) -> String {
        let mut s = String::with_capacity(4 * self.leaf_count());
        self.write_into(&mut s);
        s
    }

    fn write_into(&self, out: &mut String) {
        match self {
            Expr::Leaf => out.push('x'),
            Expr::Node(l, r) => {
                out.push('(');
                l.write_into(out);
                out.push('*');
                r.write_into(out);
                out.push(')');
            }
        }
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({})", self.render())
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

impl Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, tok: u8) -> Result<()> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(&b) if b == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(&b) => Err(self.error(&format!(
                "expected `{}`, found `{}`",
                tok as char, b as char
            ))),
            None => Err(self.error(&format!("expected `{}`, found end of input", tok as char))),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::Leaf)
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.expr()?;
                self.expect(b'*')?;
                let r = self.expr()?;
                self.expect(b')')?;
                Ok(Expr::node(l, r))
            }
            Some(&b) => Err(self.error(&format!("unexpected `{}`", b as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    L,
    R,
}

/// Path from the root; empty means the root itself.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeAddress(Vec<Step>);

impl NodeAddress {
    pub fn root() -> Self {
        NodeAddress(Vec::new())
    }

    pub fn new(steps: Vec<Step>) -> Self {
        NodeAddress(steps)
    }

    /// `L` repeated `depth` times: the `depth`-th node of the left spine.
    pub fn spine(depth: usize) -> Self {
        NodeAddress(vec![Step::L; depth])
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Index on the left spine, if every step is `L`.
    pub fn spine_depth(&self) -> Option<usize> {
        self.0.iter().all(|s| *s == Step::L).then_some(self.0.len())
    }
}

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for s in &self.0 {
            f.write_str(match s {
                Step::L => "L",
                Step::R => "R",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeAddress({self})")
    }
}

impl FromStr for NodeAddress {
    type Err = Error;

    /// Accepts `LRL`, `L,R,L`, `[L, R, L]`; `-` or the empty string is the root.
    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (pos, c) in s.char_indices() {
            match c {
                'L' | 'l' => steps.push(Step::L),
                'R' | 'r' => steps.push(Step::R),
                ',' | '[' | ']' | '-' => {}
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("unexpected `{c}` in address"),
                    })
                }
            }
        }
        Ok(NodeAddress(steps))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub level: usize,
    pub weight: usize,
}

/// All expressions on `n` leaves, sorted by rendered text.
pub fn enumerate(n: usize) -> Result<Vec<Expr>> {
    enumerate_capped(n, DEFAULT_CAP)
}

pub fn enumerate_capped(n: usize, cap: usize) -> Result<Vec<Expr>> {
    if n == 0 {
        return Err(Error::ZeroLeaves);
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    // by_size[k] holds every shape with k + 1 leaves
    let mut by_size: Vec<Vec<Expr>> = vec![vec![Expr::Leaf]];
    for size in 2..=n {
        let mut shapes = Vec::new();
        for left in 1..size {
            for l in &by_size[left - 1] {
                for r in &by_size[size - left - 1] {
                    shapes.push(Expr::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(shapes);
    }
    let mut keyed: Vec<(String, Expr)> = by_size
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(|e| (e.render(), e))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, e)| e).collect())
}
