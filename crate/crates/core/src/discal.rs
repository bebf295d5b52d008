//! Discal graphs: colored plane graphs in the disc, stored together with the
//! boundary circle.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closed::{self, EdgeKind};
use crate::divide::interior_components;
use crate::error::{Error, Result};
use crate::plane_map::{
    parse_lines, parse_numbers, CanonicalCode, Dart, Label, MapParts, PlaneMap, Vertex,
};

/// Vertex colors ordered `Star < White < Black`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Star,
    White,
    Black,
}

impl Label for Color {
    fn token(&self) -> u32 {
        *self as u32
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Star => "star",
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

impl FromStr for Color {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Color, String> {
        match s {
            "star" => Ok(Color::Star),
            "white" => Ok(Color::White),
            "black" => Ok(Color::Black),
            _ => Err(format!("unknown color '{s}'")),
        }
    }
}

impl Color {
    pub fn on_boundary(self) -> bool {
        self != Color::Black
    }

    /// One step down the order.
    pub fn decreased(self) -> Option<Color> {
        match self {
            Color::Black => Some(Color::White),
            Color::White => Some(Color::Star),
            Color::Star => None,
        }
    }
}

pub type CodeMap = PlaneMap<Color, EdgeKind>;

/// A colored plane graph without boundary edges. Its outer dart lies on the
/// face that contains the disc boundary.
pub type PlanMap = PlaneMap<Color, ()>;

/// A discal graph. White and star vertices carry the boundary darts; an
/// all-black graph keeps its outer dart on the face containing the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscalGraph {
    map: CodeMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DiscalReport {
    pub violations: Vec<String>,
}

impl DiscalReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DiscalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            f.write_str("valid")
        } else {
            f.write_str(&self.violations.join("; "))
        }
    }
}

pub fn validate_discal(g: &DiscalGraph) -> DiscalReport {
    let m = &g.map;
    let mut r = DiscalReport::default();
    let mut bad = |s: String| r.violations.push(s);
    if m.num_vertices() == 0 {
        bad("graph has no vertex".into());
        return DiscalReport {
            violations: r.violations,
        };
    }
    let ring = closed::ring(m);
    let on_ring: HashSet<Vertex> = ring.order.iter().copied().collect();
    let stars = m
        .vertex_labels()
        .iter()
        .filter(|&&c| c == Color::Star)
        .count();
    let whites = m
        .vertex_labels()
        .iter()
        .filter(|&&c| c == Color::White)
        .count();
    if stars > 1 {
        bad(format!("{stars} star vertices, at most one allowed"));
    }
    if stars > 0 && whites > 0 {
        bad("star vertex next to white vertices".into());
    }
    if closed::has_boundary(m) && !closed::ring_is_well_formed(m) {
        bad("boundary darts do not form the outer face".into());
    }
    for v in 0..m.num_vertices() {
        let c = *m.vertex_label(v);
        let bdarts = m
            .rotation(v)
            .iter()
            .filter(|&&d| *m.edge_label(d / 2) == EdgeKind::Boundary)
            .count();
        if c.on_boundary() && (!on_ring.contains(&v) || bdarts != 2) {
            bad(format!(
                "{c} vertex {v} does not lie on the boundary circle"
            ));
        }
        if c == Color::Black && bdarts > 0 {
            bad(format!("black vertex {v} lies on the boundary circle"));
        }
    }
    if interior_components(m).len() > 1 {
        bad("graph is disconnected".into());
    }
    match m.genus() {
        Ok(0) => {}
        Ok(k) => bad(format!("embedding has genus {k}")),
        Err(e) => bad(e.to_string()),
    }
    if m.num_darts() > 0 && m.outer_dart().is_none() {
        bad("no outer face designated".into());
    }
    DiscalReport {
        violations: r.violations,
    }
}

/// Inserts boundary darts into `parts` before each given dart id, or as a
/// lone loop at a vertex without darts, and rewires the ring in that order.
fn attach_at(parts: &mut MapParts<Color, EdgeKind>, spots: &[(Vertex, Option<usize>)]) {
    let mut fresh = closed::FreshIds::after(parts);
    let mut ring = vec![];
    for &(v, before) in spots {
        let (p, s) = (fresh.take(), fresh.take());
        let rot = &mut parts.vertices[v].1;
        let at = before
            .and_then(|d| rot.iter().position(|&x| x == d))
            .unwrap_or(rot.len());
        rot.splice(at..at, [p, s]);
        ring.push((p, s));
    }
    closed::rewire_ring(parts, &ring);
}

impl DiscalGraph {
    pub fn from_map(map: CodeMap) -> Result<DiscalGraph> {
        let g = DiscalGraph { map };
        let r = validate_discal(&g);
        if r.is_valid() {
            Ok(g)
        } else {
            Err(Error::InvalidDiscal(r.to_string()))
        }
    }

    pub fn from_map_unchecked(map: CodeMap) -> DiscalGraph {
        DiscalGraph { map }
    }

    pub fn map(&self) -> &CodeMap {
        &self.map
    }

    pub fn single(color: Color) -> DiscalGraph {
        DiscalGraph::from_plan(
            &PlaneMap::new(vec![(color, vec![])], vec![], None).unwrap(),
            None,
        )
        .expect("single vertex is discal")
    }

    /// Adds the boundary circle to a plane graph. The circle touches each
    /// white or star vertex just before the given outer-face dart, by default
    /// at its first visit along the outer walk.
    pub fn from_plan(plan: &PlanMap, touch: Option<&[Dart]>) -> Result<DiscalGraph> {
        let nv = plan.num_vertices();
        let mut parts = plan.to_parts().map_edges(|_| EdgeKind::Interior);
        let walk = plan.outer_walk();
        let mut spots: Vec<(Vertex, Option<usize>)> = vec![];
        match touch {
            Some(ds) => {
                for &d in ds {
                    if !walk.contains(&d) {
                        return Err(Error::InvalidDiscal(format!(
                            "dart {d} is not on the outer face"
                        )));
                    }
                    spots.push((plan.origin(d), Some(d)));
                }
            }
            None => {
                let mut seen = HashSet::new();
                for &d in &walk {
                    let v = plan.origin(d);
                    if plan.vertex_label(v).on_boundary() && seen.insert(v) {
                        spots.push((v, Some(d)));
                    }
                }
            }
        }
        if plan.num_darts() == 0 && nv == 1 && plan.vertex_label(0).on_boundary() {
            spots = vec![(0, None)];
        }
        let mut listed = HashSet::new();
        for &(v, _) in &spots {
            if !listed.insert(v) {
                return Err(Error::InvalidDiscal(format!(
                    "vertex {v} touches the boundary twice"
                )));
            }
        }
        for v in 0..nv {
            if plan.vertex_label(v).on_boundary() && !listed.contains(&v) {
                return Err(Error::InvalidDiscal(format!(
                    "{} vertex {v} is not on the outer face",
                    plan.vertex_label(v)
                )));
            }
        }
        if !spots.is_empty() {
            attach_at(&mut parts, &spots);
        }
        DiscalGraph::from_map(PlaneMap::from_parts(parts)?)
    }

    /// The graph without its boundary edges, with the darts at which the
    /// boundary touches, in boundary order.
    pub fn to_plan(&self) -> (PlanMap, Vec<Dart>) {
        let m = &self.map;
        let ring = closed::ring(m);
        let mut parts = m.to_parts();
        let bd: HashSet<usize> = (0..m.num_darts())
            .filter(|&d| *m.edge_label(d / 2) == EdgeKind::Boundary)
            .collect();
        let mut touch_old = vec![];
        for &(_, succ) in &ring.ports {
            let after = m.sigma(succ);
            if !bd.contains(&after) {
                touch_old.push(after);
            }
        }
        if !ring.order.is_empty() {
            parts.outer = touch_old.first().copied();
        }
        for v in parts.vertices.iter_mut() {
            v.1.retain(|d| !bd.contains(d));
        }
        parts.edges.retain(|e| e.2 == EdgeKind::Interior);
        let mut ids = HashMap::new();
        for (i, e) in parts.edges.iter().enumerate() {
            ids.insert(e.0, 2 * i);
            ids.insert(e.1, 2 * i + 1);
        }
        let plan = PlaneMap::from_parts(parts.map_edges(|_| ()))
            .expect("interior of a discal graph is a map");
        let touch = touch_old.iter().map(|d| ids[d]).collect();
        (plan, touch)
    }

    pub fn num_vertices(&self) -> usize {
        self.map.num_vertices()
    }

    pub fn color(&self, v: Vertex) -> Color {
        *self.map.vertex_label(v)
    }

    pub fn has_star(&self) -> bool {
        self.map.vertex_labels().contains(&Color::Star)
    }

    pub fn count(&self, c: Color) -> usize {
        self.map.vertex_labels().iter().filter(|&&x| x == c).count()
    }

    pub fn is_interior_edge(&self, e: usize) -> bool {
        *self.map.edge_label(e) == EdgeKind::Interior
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.map.num_edges())
            .filter(|&e| self.is_interior_edge(e))
            .collect()
    }

    pub fn num_interior_edges(&self) -> usize {
        self.interior_edges().len()
    }

    /// Interior degree of `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.map
            .rotation(v)
            .iter()
            .filter(|&&d| self.is_interior_edge(d / 2))
            .count()
    }

    /// Boundary vertices in boundary order.
    pub fn boundary_order(&self) -> Vec<Vertex> {
        closed::ring(&self.map).order
    }

    /// Faces not touching the boundary circle and not containing it.
    pub fn bounded_faces(&self) -> Vec<Vec<Dart>> {
        let m = &self.map;
        let outer_face = m.outer_dart().map(|o| m.face_walk(o));
        m.trace_faces()
            .into_iter()
            .filter(|f| !f.is_empty())
            .filter(|f| f.iter().all(|&d| self.is_interior_edge(d / 2)))
            .filter(|f| outer_face.as_ref().is_none_or(|o| !o.contains(&f[0])))
            .collect()
    }

    pub fn canonical_form(&self) -> Result<CanonicalCode> {
        let m = &self.map;
        if !self.has_star() {
            return m.canonical_form();
        }
        let star = (0..m.num_vertices())
            .find(|&v| self.color(v) == Color::Star)
            .unwrap();
        let (plan, _) = self.to_plan();
        let plan = plan.map_labels(|c| *c, |_| EdgeKind::Interior);
        if plan.num_darts() == 0 {
            return plan.canonical_form_rooted(&[], &[]);
        }
        let roots: Vec<Dart> = plan.rotation(star).to_vec();
        plan.canonical_form_rooted(&roots, &roots)
    }

    pub fn to_text(&self) -> String {
        let (plan, touch) = self.to_plan();
        let mut s = plan.to_text();
        if !touch.is_empty() {
            let ds: Vec<String> = touch.iter().map(|d| d.to_string()).collect();
            s.push_str(&format!("bd : {}\n", ds.join(" ")));
        }
        s
    }

    /// Plane-map text with colors as labels and an optional `bd : <darts>`
    /// line naming where the boundary touches each white or star vertex.
    pub fn from_text(text: &str) -> Result<DiscalGraph> {
        let mut body = String::new();
        let mut touch = None;
        for (line, head, _, after) in parse_lines(text)? {
            if head == "bd" {
                touch = Some(parse_numbers(after.as_deref().unwrap_or(""), line)?);
            }
        }
        for l in text.lines() {
            if l.trim_start().starts_with("bd") {
                body.push('\n');
            } else {
                body.push_str(l);
                body.push('\n');
            }
        }
        let plan = PlanMap::from_text(&body)?;
        DiscalGraph::from_plan(&plan, touch.as_deref())
    }

    /// Deletes edge `e`: allowed when it keeps the graph connected or when one
    /// end is a white vertex of degree one, which then goes too.
    pub fn delete_edge(&self, e: usize) -> Result<DiscalGraph> {
        let m = &self.map;
        if e >= m.num_edges() || !self.is_interior_edge(e) {
            return Err(Error::NotAllowed(format!(
                "edge {e} is not an edge of the graph"
            )));
        }
        let (a, b) = (2 * e, 2 * e + 1);
        let mut parts = m.to_parts();
        parts.edges.retain(|x| x.0 != a);
        for v in parts.vertices.iter_mut() {
            v.1.retain(|&d| d != a && d != b);
        }
        if !closed::has_boundary(m) {
            parts.outer = first_survivor(m, a, b);
        }
        if !self.is_bridge(e) {
            return DiscalGraph::from_map(PlaneMap::from_parts(parts)?);
        }
        let leaf = [m.origin(a), m.origin(b)]
            .into_iter()
            .find(|&v| self.color(v) == Color::White && self.degree(v) == 1);
        let Some(w) = leaf else {
            return Err(Error::NotAllowed(format!(
                "deleting edge {e} disconnects the graph"
            )));
        };
        let ring = closed::ring(m);
        let keep: Vec<(usize, usize)> = ring
            .order
            .iter()
            .zip(&ring.ports)
            .filter(|(v, _)| **v != w)
            .map(|(_, &p)| p)
            .collect();
        let (pw, _) = ring.ports[ring.order.iter().position(|&v| v == w).unwrap()];
        let gone: HashSet<usize> = m.rotation(w).iter().copied().collect();
        parts.vertices.remove(w);
        parts
            .edges
            .retain(|x| !gone.contains(&x.0) && !gone.contains(&x.1));
        closed::rewire_ring(&mut parts, &keep);
        if keep.is_empty() {
            parts.outer = m
                .face_walk(pw)
                .into_iter()
                .find(|&d| self.is_interior_edge(d / 2) && d / 2 != e);
        }
        DiscalGraph::from_map(PlaneMap::from_parts(parts)?)
    }

    /// Contracts edge `e`. Two white ends merge only across a face bounded by
    /// `e` and one boundary arc, which disappears.
    pub fn contract_edge(&self, e: usize) -> Result<DiscalGraph> {
        let m = &self.map;
        if e >= m.num_edges() || !self.is_interior_edge(e) {
            return Err(Error::NotAllowed(format!(
                "edge {e} is not an edge of the graph"
            )));
        }
        if m.is_loop(e) {
            return Err(Error::NotAllowed(format!("edge {e} is a loop")));
        }
        let (a, b) = (2 * e, 2 * e + 1);
        let (u, v) = (m.origin(a), m.origin(b));
        let color = self.color(u).min(self.color(v));
        let after = |x: Dart| -> Vec<Dart> {
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
        let mut ring_ports: Vec<(Vertex, (usize, usize))> = {
            let r = closed::ring(m);
            r.order.into_iter().zip(r.ports).collect()
        };
        if self.color(u).on_boundary() && self.color(v).on_boundary() {
            let ring = &ring_ports;
            let pos = |x: Vertex| ring.iter().position(|r| r.0 == x).unwrap();
            let n = ring.len();
            let (pu, pv) = (pos(u), pos(v));
            // The bounding arc runs from `first`'s succ dart to `second`'s pred dart.
            let pair =
                if (pu + 1) % n == pv && m.sigma(ring[pu].1 .1) == a && m.sigma(b) == ring[pv].1 .0
                {
                    Some((pu, pv))
                } else if (pv + 1) % n == pu
                    && m.sigma(ring[pv].1 .1) == b
                    && m.sigma(a) == ring[pu].1 .0
                {
                    Some((pv, pu))
                } else {
                    None
                };
            let Some((i, j)) = pair else {
                return Err(Error::NotAllowed(format!(
                    "contracting edge {e} would pinch the boundary circle"
                )));
            };
            let (p1, s1) = ring[i].1;
            let (p2, s2) = ring[j].1;
            rot.retain(|&d| d != s1 && d != p2);
            ring_ports[i].1 = (p1, s2);
            ring_ports.remove(j);
        }
        let outer = if closed::has_boundary(m) {
            None
        } else {
            first_survivor(m, a, b)
        };
        let mut vertices = vec![];
        let mut new_index = vec![usize::MAX; m.num_vertices()];
        for (x, vx) in parts.vertices.into_iter().enumerate() {
            if x == v {
                continue;
            }
            new_index[x] = vertices.len();
            vertices.push(if x == u { (color, rot.clone()) } else { vx });
        }
        parts.vertices = vertices;
        let ring: Vec<(usize, usize)> = ring_ports.iter().map(|r| r.1).collect();
        closed::rewire_ring(&mut parts, &ring);
        if !closed::has_boundary(m) {
            parts.outer = outer;
        }
        DiscalGraph::from_map(PlaneMap::from_parts(parts)?)
    }

    /// True when removing edge `e` disconnects the interior graph.
    pub fn is_bridge(&self, e: usize) -> bool {
        let m = &self.map;
        if m.is_loop(e) {
            return false;
        }
        let (s, t) = (m.origin(2 * e), m.origin(2 * e + 1));
        let mut seen = vec![false; m.num_vertices()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &d in m.rotation(v) {
                if d / 2 == e || !self.is_interior_edge(d / 2) {
                    continue;
                }
                let w = m.target(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        !seen[t]
    }

    pub fn plan(&self) -> PlanMap {
        self.to_plan().0
    }
}

/// First dart after the removed edge `{a, b}` along the outer face.
fn first_survivor(m: &CodeMap, a: Dart, b: Dart) -> Option<Dart> {
    let o = m.outer_dart()?;
    if o != a && o != b {
        return Some(o);
    }
    let other = if o == a { b } else { a };
    for start in [o, other] {
        if let Some(d) = m.face_walk(start).into_iter().find(|&d| d != a && d != b) {
            return Some(d);
        }
    }
    None
}

impl<V, E> MapParts<V, E> {
    pub fn map_edges<F>(self, f: impl Fn(&E) -> F) -> MapParts<V, F> {
        MapParts {
            vertices: self.vertices,
            edges: self
                .edges
                .into_iter()
                .map(|(a, b, l)| (a, b, f(&l)))
                .collect(),
            outer: self.outer,
        }
    }
}
