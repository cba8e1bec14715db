//! Graphviz output for finite posets.

use std::fmt::Write;

/// Hasse diagram of the poset on `labels` given by `leq`.
///
/// Nodes are named by their labels, and an edge `x -> y` is drawn when `y`
/// covers `x`. Edges are emitted in index order, so output is stable.
pub fn hasse_diagram(name: &str, labels: &[String], leq: impl Fn(usize, usize) -> bool) -> String {
    let n = labels.len();
    let lt = |i: usize, j: usize| i != j && leq(i, j) && !leq(j, i);
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    let _ = writeln!(out, "  rankdir=BT;");
    for label in labels {
        let _ = writeln!(out, "  \"{label}\";");
    }
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", labels[i], labels[j]);
            }
        }
    }
    out.push_str("}\n");
    out
}
