//! Rotation graphs on a fixed leaf count, exported as DOT.

use std::fmt::Write;

use serde::Serialize;

use crate::error::Result;
use crate::expr::{enumerate_capped, Expr};
use crate::moves::{apply_alpha, rotate_at, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// Nodes are all trees on `n` leaves in enumeration order. Restricted mode
/// has one edge per applicable `α_i`; full mode has one per applicable
/// rotation anywhere, labelled `a<i>` on the spine and `rot@<address>`
/// elsewhere.
#[derive(Debug, Clone, Serialize)]
pub struct RotationGraph {
    pub leaves: usize,
    pub full: bool,
    pub nodes: Vec<Expr>,
    pub edges: Vec<Edge>,
}

impl RotationGraph {
    pub fn build(n: usize, full: bool, cap: usize) -> Result<Self> {
        let nodes = enumerate_capped(n, cap)?;
        let index = |e: &Expr| {
            nodes
                .binary_search_by(|probe| probe.render().cmp(&e.render()))
                .expect("rotations stay inside the enumeration")
        };
        let mut edges = Vec::new();
        for (from, e) in nodes.iter().enumerate() {
            if full {
                for address in e.internal_addresses() {
                    let Ok(target) = rotate_at(e, &address) else {
                        continue;
                    };
                    let label = match address.spine_depth() {
                        Some(i) => Letter::pos(i).to_string(),
                        None => format!("rot@{address}"),
                    };
                    edges.push(Edge {
                        from,
                        to: index(&target),
                        label,
                    });
                }
            } else {
                for i in 0..n {
                    if let Ok(target) = apply_alpha(i, e) {
                        edges.push(Edge {
                            from,
                            to: index(&target),
                            label: Letter::pos(i).to_string(),
                        });
                    }
                }
            }
        }
        Ok(RotationGraph {
            leaves: n,
            full,
            nodes,
            edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let kind = if self.full { "full" } else { "restricted" };
        let _ = writeln!(out, "digraph rotations_{}_{kind} {{", self.leaves);
        for (k, e) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{k} [label=\"{e}\"];");
        }
        for edge in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                edge.from, edge.to, edge.label
            );
        }
        out.push_str("}\n");
        out
    }
}
