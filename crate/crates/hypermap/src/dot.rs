//! Graphviz DOT rendering of hypermaps and hypermobiles.
//!
//! A hypermap is drawn with one point per vertex and one shaded node per dark
//! face joined to the vertices around it, so that the dark faces read as
//! hyperedges. With an orientation, 1-way edges are arrows labelled by their
//! weight and 0-way edges are dashed. A mobile is drawn with circles for round
//! nodes, filled squares for dark squares, open squares for light squares and
//! small arrowheads for buds.

use std::fmt::Write as _;

use crate::io::Document;
use crate::map::Root;
use crate::mobile::{format_rational, Hypermobile, NodeKind, Slot};
use crate::orientation::EdgeStatus;

/// DOT text of a hypermap document.
pub fn hypermap_dot(doc: &Document) -> String {
    let h = doc.rooted.hypermap();
    let m = h.map();
    let mut out = String::from("graph hypermap {\n  node [shape=point, width=0.12];\n");
    for v in 0..m.num_vertices() {
        let root = doc.rooted.root_vertex() == Some(v);
        let style = if root { ", color=red, width=0.2" } else { "" };
        let _ = writeln!(out, "  v{v} [xlabel=\"{v}\"{style}];");
    }
    let outer = doc.rooted.root_face();
    for f in h.dark_faces() {
        let mut attrs =
            String::from("shape=square, style=filled, fillcolor=gray40, label=\"\", width=0.2");
        if outer == Some(f) {
            attrs.push_str(", color=red, penwidth=2");
        }
        if doc.marked == Some(f) {
            attrs.push_str(", fillcolor=gray70");
        }
        let _ = writeln!(out, "  f{f} [{attrs}];");
        for &d in m.face_darts(f) {
            let _ = writeln!(
                out,
                "  f{f} -- v{} [color=gray70, style=dotted];",
                m.vertex(d)
            );
        }
    }
    for e in 0..m.num_edges() {
        let [a, b] = m.edge_darts(e);
        let (u, v) = (m.vertex(a), m.vertex(b));
        match &doc.orientation {
            None => {
                let _ = writeln!(out, "  v{u} -- v{v};");
            }
            Some(o) => {
                let w = format_rational(o.weight(e));
                let _ = match o.status(e) {
                    EdgeStatus::OneWay(t) => {
                        let (tail, head) = (m.vertex(t), m.head(t));
                        writeln!(out, "  v{tail} -- v{head} [dir=forward, label=\"{w}\"];")
                    }
                    EdgeStatus::ZeroWay => {
                        writeln!(out, "  v{u} -- v{v} [style=dashed, label=\"{w}\"];")
                    }
                };
            }
        }
    }
    if let Root::Corner(d) = doc.rooted.root() {
        let _ = writeln!(out, "  label=\"root corner at dart {d}\";");
    }
    out.push_str("}\n");
    out
}

/// DOT text of a hypermobile.
pub fn mobile_dot(t: &Hypermobile) -> String {
    let mut out = String::from("graph mobile {\n");
    for v in 0..t.num_nodes() {
        let attrs = match t.kind(v) {
            NodeKind::Round => "shape=circle, label=\"\", width=0.2",
            NodeKind::DarkSquare => {
                "shape=square, style=filled, fillcolor=black, label=\"\", width=0.2"
            }
            NodeKind::LightSquare => "shape=square, label=\"\", width=0.2",
        };
        let _ = writeln!(out, "  n{v} [{attrs}];");
    }
    for (i, e) in t.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "  n{} -- n{} [label=\"{}\"]; // edge {i}",
            e.ends[0],
            e.ends[1],
            format_rational(e.weight)
        );
    }
    let mut bud = 0;
    for v in 0..t.num_nodes() {
        for slot in t.rotation(v) {
            if *slot == Slot::Bud {
                let _ = writeln!(out, "  b{bud} [shape=none, label=\"\", width=0];");
                let _ = writeln!(
                    out,
                    "  n{v} -- b{bud} [dir=forward, arrowhead=normal, len=0.4];"
                );
                bud += 1;
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::{loop_hypermap, RootedHypermap};

    #[test]
    fn loop_hypermap_has_one_vertex_and_one_dark_face() {
        let doc = Document::new(RootedHypermap::new(loop_hypermap(), Root::DarkFace(0)).unwrap());
        let dot = hypermap_dot(&doc);
        assert!(dot.starts_with("graph hypermap {"));
        assert_eq!(dot.matches("[xlabel=").count(), 1);
        assert_eq!(dot.matches("shape=square").count(), 1);
        assert!(dot.trim_end().ends_with('}'));
    }

    #[test]
    fn mobile_buds_become_arrows() {
        let t = Hypermobile::from_mob("mob 1\nL(*, -1:D)\n").unwrap();
        let dot = mobile_dot(&t);
        assert_eq!(dot.matches("arrowhead=normal").count(), 1);
        assert_eq!(dot.matches("fillcolor=black").count(), 1);
    }
}
