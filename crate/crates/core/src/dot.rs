//! Hasse diagrams in the DOT language, drawn bottom to top.

use std::fmt::Write as _;

use crate::lattice::FiniteLattice;
use crate::poset::Poset;
use crate::wds::WeightedDoubleSkeleton;

fn hasse(name: &str, p: &Poset, label: impl Fn(usize, usize) -> Option<String>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
    out.push_str("  rankdir=BT;\n  node [shape=circle];\n  edge [arrowhead=none];\n");
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = (0..p.len())
            .filter(|&v| heights[v] == h)
            .map(|v| v.to_string())
            .collect();
        if !row.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", row.join("; "));
        }
    }
    for (a, b) in p.covers() {
        match label(a, b) {
            Some(l) => {
                let _ = writeln!(out, "  {a} -> {b} [label=\"{l}\"];");
            }
            None => {
                let _ = writeln!(out, "  {a} -> {b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn lattice_dot(name: &str, l: &FiniteLattice) -> String {
    hasse(name, l.poset(), |_, _| None)
}

/// The poset `P` of a weighted double skeleton with each cover labelled by
/// its weight.
pub fn wds_dot(name: &str, s: &WeightedDoubleSkeleton) -> String {
    hasse(name, s.p(), |a, b| s.weight(a, b).map(|w| w.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wds::extract_wds;

    #[test]
    fn cube() {
        let dot = lattice_dot("B3", &FiniteLattice::boolean(3).unwrap());
        assert_eq!(dot.matches("->").count(), 12);
        assert_eq!(dot.matches("rank=same").count(), 4);
        let nodes: std::collections::BTreeSet<&str> = dot
            .lines()
            .filter(|l| l.contains("rank=same"))
            .flat_map(|l| {
                l.trim_start_matches("  { rank=same; ")
                    .trim_end_matches("; }")
                    .split("; ")
            })
            .collect();
        assert_eq!(nodes.len(), 8);
    }

    #[test]
    fn weights_label_edges() {
        let d5 =
            crate::lattice::build_lattice(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let dot = wds_dot("D5", &extract_wds(&d5).unwrap());
        assert!(dot.contains("0 -> 1 [label=\"2\"];"));
        assert!(dot.contains("1 -> 2 [label=\"1\"];"));
    }
}
