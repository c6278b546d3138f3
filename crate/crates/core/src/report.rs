//! Text and serialisable reports of derivation trees and solutions.

use std::fmt::Write;

use serde::Serialize;

use crate::unifier::{DerivationTree, FailReason, LeafKind, Solution};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunMetadata {
    pub mode: String,
    pub input: String,
    pub max_depth: usize,
    pub max_count: usize,
    pub translated: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EdgeReport {
    pub from: usize,
    pub rule: String,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LeafReport {
    pub id: usize,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    pub triple: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SolutionReport {
    pub leaf: usize,
    pub context: String,
    pub substitution: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub schema: u32,
    pub run: RunMetadata,
    pub nodes: usize,
    pub edges: Vec<EdgeReport>,
    pub leaves: Vec<LeafReport>,
    pub solutions: Vec<SolutionReport>,
}

fn kind_name(k: LeafKind) -> &'static str {
    match k {
        LeafKind::Successful => "successful",
        LeafKind::Fail => "fail",
    }
}

fn reason_name(r: FailReason) -> &'static str {
    match r {
        FailReason::NonFixpointEquation => "non-fixpoint equation",
        FailReason::StuckFreshness => "stuck freshness constraint",
    }
}

impl Report {
    /// `solutions` pairs each solution with the id of the leaf it came from.
    pub fn new(run: RunMetadata, tree: &DerivationTree, solutions: &[(usize, Solution)]) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            run,
            nodes: tree.len(),
            edges: tree
                .edges()
                .map(|(from, rule, to)| EdgeReport {
                    from,
                    rule: rule.label().to_string(),
                    to,
                })
                .collect(),
            leaves: tree
                .leaves()
                .map(|n| {
                    let (kind, reason) = n.leaf.expect("leaf");
                    LeafReport {
                        id: n.id,
                        kind: kind_name(kind),
                        reason: reason.map(reason_name),
                        triple: n.triple.to_string(),
                    }
                })
                .collect(),
            solutions: solutions
                .iter()
                .map(|(leaf, s)| SolutionReport {
                    leaf: *leaf,
                    context: s.ctx.to_string(),
                    substitution: s.subst.to_string(),
                })
                .collect(),
        }
    }
}

/// One `<id> --rule--> <id>` line per edge, in pre-order.
pub fn render_edges(tree: &DerivationTree) -> String {
    let mut out = String::new();
    for (from, rule, to) in tree.edges() {
        let _ = writeln!(out, "{from} --{}--> {to}", rule.label());
    }
    out
}

/// Edges followed by a classification of every leaf.
pub fn render_tree(tree: &DerivationTree) -> String {
    let mut out = render_edges(tree);
    for n in tree.leaves() {
        let (kind, reason) = n.leaf.expect("leaf");
        let _ = match reason {
            Some(r) => writeln!(out, "leaf {} {} ({}): {}", n.id, kind_name(kind), reason_name(r), n.triple),
            None => writeln!(out, "leaf {} {}: {}", n.id, kind_name(kind), n.triple),
        };
    }
    out
}

pub fn render_solutions(solutions: &[(usize, Solution)]) -> String {
    let mut out = String::new();
    for (leaf, s) in solutions {
        let _ = writeln!(out, "leaf {leaf}: {s}");
    }
    out
}
