//! The discal minor order and the colored planar minor order.

use std::collections::HashSet;

use crate::discal::{Color, DiscalGraph, PlanMap};
use crate::error::Result;
use crate::plane_map::{CanonicalCode, Dart, Label, PlaneMap};
use crate::search::{Downset, Move, ReductionSequence};

/// Sizes that no minor operation increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Size {
    edges: usize,
    vertices: usize,
    faces: usize,
    at_least: [usize; 3],
}

impl Size {
    fn covers(&self, h: &Size) -> bool {
        self.edges >= h.edges
            && self.vertices >= h.vertices
            && self.faces >= h.faces
            && self.at_least.iter().zip(&h.at_least).all(|(a, b)| a >= b)
    }
}

fn color_counts(colors: impl Iterator<Item = Color>) -> [usize; 3] {
    let mut at_least = [0; 3];
    for c in colors {
        for (k, slot) in at_least.iter_mut().enumerate() {
            if c as usize >= k {
                *slot += 1;
            }
        }
    }
    at_least
}

fn discal_size(g: &DiscalGraph) -> Size {
    Size {
        edges: g.num_interior_edges(),
        vertices: g.num_vertices(),
        faces: g.bounded_faces().len(),
        at_least: color_counts(g.map().vertex_labels().iter().copied()),
    }
}

fn discal_moves(g: &DiscalGraph) -> Vec<Move<DiscalGraph>> {
    let mut out = vec![];
    for e in g.interior_edges() {
        if let Ok(r) = g.delete_edge(e) {
            out.push(Move {
                op: "delete",
                target: e,
                result: r,
            });
        }
        if let Ok(r) = g.contract_edge(e) {
            out.push(Move {
                op: "contract",
                target: e,
                result: r,
            });
        }
    }
    out
}

/// Every discal minor of `g`, keyed by canonical form.
pub fn discal_downset(g: &DiscalGraph) -> Result<Vec<(CanonicalCode, DiscalGraph)>> {
    let down = Downset::explore(
        g.clone(),
        |x| x.canonical_form(),
        discal_moves,
        |_| true,
        None,
    )?;
    Ok(down.items().map(|(k, v)| (k.clone(), v.clone())).collect())
}

/// Deletions and contractions turning `g` into `h` through discal graphs.
pub fn discal_minor_leq(h: &DiscalGraph, g: &DiscalGraph) -> Result<Option<ReductionSequence>> {
    let target = h.canonical_form()?;
    let hs = discal_size(h);
    let down = Downset::explore(
        g.clone(),
        |x| x.canonical_form(),
        |x| {
            let mut v = discal_moves(x);
            v.retain(|m| discal_size(&m.result).covers(&hs));
            v
        },
        |x| x.num_interior_edges() > h.num_interior_edges(),
        Some(&target),
    )?;
    Ok(down.path_to(&target))
}

/// Bounded faces of a plane map with a designated outer face.
fn plane_faces<V: Label>(m: &PlaneMap<V, ()>) -> usize {
    let f = m
        .trace_faces()
        .into_iter()
        .filter(|f| !f.is_empty())
        .count();
    f.saturating_sub(usize::from(m.outer_dart().is_some()))
}

fn first_survivor<V: Label>(m: &PlaneMap<V, ()>, a: Dart, b: Dart) -> Option<Dart> {
    let o = m.outer_dart()?;
    let other = if o == a { b } else { a };
    [o, other]
        .into_iter()
        .find_map(|s| m.face_walk(s).into_iter().find(|&d| d != a && d != b))
}

/// Deletes edge `e`, also dropping an end left without edges. When both
/// ends are left alone, either one may stay.
pub fn plan_delete<V: Label>(m: &PlaneMap<V, ()>, e: usize) -> Result<Vec<PlaneMap<V, ()>>> {
    let (a, b) = (2 * e, 2 * e + 1);
    let mut parts = m.to_parts();
    parts.edges.retain(|x| x.0 != a);
    for v in parts.vertices.iter_mut() {
        v.1.retain(|&d| d != a && d != b);
    }
    parts.outer = first_survivor(m, a, b);
    let lone: Vec<usize> = (0..parts.vertices.len())
        .filter(|&v| parts.vertices[v].1.is_empty())
        .collect();
    if parts.vertices.len() == 1 || lone.is_empty() {
        return Ok(vec![PlaneMap::from_parts(parts)?]);
    }
    let mut out = vec![];
    for &v in &lone {
        let mut p = parts.clone();
        p.vertices.remove(v);
        if lone.len() == 2 && p.vertices.len() != 1 {
            continue;
        }
        out.push(PlaneMap::from_parts(p)?);
    }
    Ok(out)
}

/// Contracts the non-loop edge `e`; the merged vertex takes `label`.
pub fn plan_contract<V: Label>(m: &PlaneMap<V, ()>, e: usize, label: V) -> Result<PlaneMap<V, ()>> {
    let (a, b) = (2 * e, 2 * e + 1);
    let (u, v) = (m.origin(a), m.origin(b));
    let after = |x: Dart| {
        let mut out = vec![];
        let mut y = m.sigma(x);
        while y != x {
            out.push(y);
            y = m.sigma(y);
        }
        out
    };
    let mut rot = after(a);
    rot.extend(after(b));
    let mut parts = m.to_parts();
    parts.edges.retain(|x| x.0 != a);
    parts.outer = first_survivor(m, a, b);
    let mut vertices = vec![];
    for (x, vx) in parts.vertices.into_iter().enumerate() {
        if x == v {
            continue;
        }
        vertices.push(if x == u {
            (label.clone(), rot.clone())
        } else {
            vx
        });
    }
    parts.vertices = vertices;
    PlaneMap::from_parts(parts)
}

fn plan_size(m: &PlanMap) -> Size {
    Size {
        edges: m.num_edges(),
        vertices: m.num_vertices(),
        faces: plane_faces(m),
        at_least: color_counts(m.vertex_labels().iter().copied()),
    }
}

/// Planar minor moves with colors lowered one step at a time by `lower`.
fn plan_moves(m: &PlanMap, lower: &dyn Fn(Color) -> Vec<Color>) -> Vec<Move<PlanMap>> {
    let mut out = vec![];
    for v in 0..m.num_vertices() {
        for c in lower(*m.vertex_label(v)) {
            let mut labels: Vec<Color> = m.vertex_labels().to_vec();
            labels[v] = c;
            let mut parts = m.to_parts();
            for (i, l) in labels.into_iter().enumerate() {
                parts.vertices[i].0 = l;
            }
            if let Ok(r) = PlaneMap::from_parts(parts) {
                out.push(Move {
                    op: "decolor",
                    target: v,
                    result: r,
                });
            }
        }
    }
    for e in 0..m.num_edges() {
        for r in plan_delete(m, e).unwrap_or_default() {
            if r.is_connected() {
                out.push(Move {
                    op: "delete",
                    target: e,
                    result: r,
                });
            }
        }
        let (u, v) = (m.origin(2 * e), m.origin(2 * e + 1));
        if u != v && m.vertex_label(u) == m.vertex_label(v) {
            if let Ok(r) = plan_contract(m, e, *m.vertex_label(u)) {
                out.push(Move {
                    op: "contract",
                    target: e,
                    result: r,
                });
            }
        }
    }
    out
}

/// Colored planar minor test with the order `Star < White < Black`.
pub fn plan_minor_leq(h: &PlanMap, g: &PlanMap) -> Result<Option<ReductionSequence>> {
    plan_minor_leq_with(h, g, &|c: Color| c.decreased().into_iter().collect())
}

/// Colored planar minor test; `lower` lists the colors one step below.
pub fn plan_minor_leq_with(
    h: &PlanMap,
    g: &PlanMap,
    lower: &dyn Fn(Color) -> Vec<Color>,
) -> Result<Option<ReductionSequence>> {
    let target = h.canonical_form()?;
    let hs = plan_size(h);
    let down = Downset::explore(
        g.clone(),
        |x| x.canonical_form(),
        |x| {
            let mut v = plan_moves(x, lower);
            v.retain(|m| plan_size(&m.result).covers(&hs));
            v
        },
        |x| plan_size(x) != hs,
        Some(&target),
    )?;
    Ok(down.path_to(&target))
}

/// Canonical forms in a discal downset, for repeated membership tests.
pub fn downset_keys(g: &DiscalGraph) -> Result<HashSet<CanonicalCode>> {
    Ok(discal_downset(g)?.into_iter().map(|(k, _)| k).collect())
}
