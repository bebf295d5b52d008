use std::fmt::Write;

use divide_core::{Color, DiscalGraph, Divide, EdgeKind, Node};

fn rotation_comment(out: &mut String, v: usize, rot: &[usize]) {
    let r: Vec<String> = rot.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "  // rotation v{v}: {}", r.join(" "));
}

/// Code as an undirected graph; white and star vertices sit on the boundary.
pub fn code_dot(g: &DiscalGraph) -> String {
    let (plan, touch) = g.to_plan();
    let mut out = String::from("graph code {\n");
    for v in 0..plan.num_vertices() {
        rotation_comment(&mut out, v, plan.rotation(v));
        let (fill, font, shape) = match g.color(v) {
            Color::Black => ("black", "white", "circle"),
            Color::White => ("white", "black", "circle"),
            Color::Star => ("white", "black", "star"),
        };
        let _ = writeln!(
            out,
            "  v{v} [label=\"v{v}\", shape={shape}, style=filled, fillcolor={fill}, fontcolor={font}, color={}];",
            g.color(v)
        );
    }
    for e in 0..plan.num_edges() {
        let (a, b) = (plan.origin(2 * e), plan.origin(2 * e + 1));
        let _ = writeln!(
            out,
            "  v{a} -- v{b} [label=\"e{e}\", taillabel=\"{}\", headlabel=\"{}\"];",
            2 * e,
            2 * e + 1
        );
    }
    if !touch.is_empty() {
        let t: Vec<String> = touch.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "  // boundary touches before darts: {}", t.join(" "));
    }
    out.push_str("}\n");
    out
}

/// Divide with crossings as points, endpoints as boxes and the boundary
/// circle as dashed edges.
pub fn divide_dot(d: &Divide) -> String {
    let mut out = String::from("graph divide {\n");
    if d.is_circle() {
        out.push_str("  c [label=\"circle\", shape=circle];\n}\n");
        return out;
    }
    let m = d.map();
    for v in 0..m.num_vertices() {
        rotation_comment(&mut out, v, m.rotation(v));
        let shape = match m.vertex_label(v) {
            Node::Crossing => "point",
            Node::Endpoint => "box",
        };
        let _ = writeln!(out, "  n{v} [label=\"{v}\", shape={shape}];");
    }
    for e in 0..m.num_edges() {
        let (a, b) = (m.origin(2 * e), m.origin(2 * e + 1));
        let style = match m.edge_label(e) {
            EdgeKind::Interior => "solid",
            EdgeKind::Boundary => "dashed",
        };
        let _ = writeln!(
            out,
            "  n{a} -- n{b} [style={style}, taillabel=\"{}\", headlabel=\"{}\"];",
            2 * e,
            2 * e + 1
        );
    }
    out.push_str("}\n");
    out
}
