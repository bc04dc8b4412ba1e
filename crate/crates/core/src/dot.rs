//! Graphviz export. Relations are drawn as dashed chains along their paths.

use std::fmt::Write;

use crate::quiver::BoundQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(bq: &BoundQuiver) -> String {
    let mut out = String::from("digraph quiver {\n  rankdir=LR;\n  node [shape=circle];\n");
    for v in bq.vertices() {
        let _ = writeln!(out, "  {};", quote(bq.vertex_name(v)));
    }
    for a in bq.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(bq.vertex_name(bq.source(a))),
            quote(bq.vertex_name(bq.target(a))),
            quote(bq.arrow_name(a))
        );
    }
    for (i, rel) in bq.relations().iter().enumerate() {
        let label = rel
            .iter()
            .map(|&a| bq.arrow_name(a))
            .collect::<Vec<_>>()
            .join(" ");
        for (k, &a) in rel.iter().enumerate() {
            let _ = write!(
                out,
                "  {} -> {} [style=dashed, color=gray, arrowhead=none, constraint=false",
                quote(bq.vertex_name(bq.source(a))),
                quote(bq.vertex_name(bq.target(a))),
            );
            if k == 0 {
                let _ = write!(out, ", xlabel={}", quote(&format!("r{}: {label}", i + 1)));
            }
            out.push_str("];\n");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_quiver;

    #[test]
    fn one_edge_per_arrow_and_dashed_relation_chain() {
        let bq = parse_quiver(
            "quiver\nvertices: 1 2 3\narrows:\n a: 1 -> 2\n b: 2 -> 3\nrelations:\n a b\n",
        )
        .unwrap();
        let dot = to_dot(&bq);
        assert!(dot.starts_with("digraph quiver {"));
        assert_eq!(dot.matches("[label=").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert!(dot.contains("xlabel=\"r1: a b\""));
    }
}
