//! Graphviz output.

use std::fmt::Write as _;

use crate::graph::Graph;
use crate::reduction::Role;
use crate::verify::Coloring;

/// Fill colors for colors `1..=12`.
pub const PALETTE: [&str; 12] = [
    "#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45", "#fabed4",
    "#469990", "#9a6324",
];

fn shape(role: Role) -> &'static str {
    match role {
        Role::Base => "box",
        Role::Support => "ellipse",
        Role::Index => "diamond",
        Role::Distributive => "doublecircle",
    }
}

/// Undirected DOT text, nodes in index order then edges in sorted order.
/// With more colors than the palette holds, colors are shown as labels
/// `vertex:color` instead of fills.
pub fn export_dot(g: &Graph, coloring: Option<&Coloring>, roles: Option<&[Role]>) -> String {
    let mut out = String::from("graph G {\n");
    let numeric = coloring.is_some_and(|c| c.k() > PALETTE.len());
    for v in 0..g.order() {
        let mut attrs = Vec::new();
        if let Some(c) = coloring {
            let col = c.color(v);
            if numeric {
                attrs.push(format!("label=\"{v}:{col}\""));
            } else {
                attrs.push(format!("style=filled, fillcolor=\"{}\"", PALETTE[col - 1]));
            }
        }
        if let Some(r) = roles.and_then(|r| r.get(v)) {
            attrs.push(format!("shape={}", shape(*r)));
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {v};");
        } else {
            let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::cycle_nbc;
    use crate::reduction::{reduce_ess_to_nbc, EssInstance};
    use std::collections::BTreeSet;

    #[test]
    fn colored_cycle() {
        let c8 = cycle_nbc(8).unwrap();
        let text = export_dot(&c8.graph, Some(&c8.coloring), None);
        let nodes = text.lines().filter(|l| l.contains('[')).count();
        let edges = text.lines().filter(|l| l.contains("--")).count();
        let fills: BTreeSet<&str> = text.lines().filter_map(|l| l.split("fillcolor=").nth(1)).collect();
        assert_eq!((nodes, edges, fills.len()), (8, 8, 2));
    }

    #[test]
    fn plain_graph_has_no_fills() {
        let text = export_dot(&Graph::cycle(5).unwrap(), None, None);
        assert!(!text.contains("fill"));
        assert!(text.starts_with("graph G {") && text.trim_end().ends_with('}'));
    }

    #[test]
    fn many_colors_use_labels() {
        let c = Coloring::new(13, (1..=13).collect()).unwrap();
        let text = export_dot(&Graph::empty(13), Some(&c), None);
        assert!(text.contains("label=\"12:13\"") && !text.contains("fill"));
    }

    #[test]
    fn roles_as_shapes() {
        let r = reduce_ess_to_nbc(&EssInstance::new(vec![1], 2, None).unwrap()).unwrap();
        let text = export_dot(&r.graph, None, Some(&r.roles));
        let expected = "graph G {\n  0 [shape=box];\n  1 [shape=ellipse];\n  2 [shape=ellipse];\n  3 [shape=diamond];\n  \
                        4 [shape=doublecircle];\n  5 [shape=doublecircle];\n  0 -- 1;\n  0 -- 2;\n  1 -- 3;\n  2 -- 3;\n  \
                        3 -- 4;\n  3 -- 5;\n}\n";
        assert_eq!(text, expected);
    }
}
