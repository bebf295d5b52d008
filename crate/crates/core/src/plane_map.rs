//! Combinatorial maps on the sphere.
//!
//! A map is stored as a set of darts (half-edges). Darts `2k` and `2k + 1`
//! form edge `k`, so the edge involution is `d ^ 1`. Each dart has an origin
//! vertex, and the rotation system gives, for every vertex, the
//! counter-clockwise cyclic order of its darts. Faces are the orbits of
//! `phi(d) = next(d ^ 1)`; a face walk keeps the face on its right-hand side.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{structure, Error, Result};

pub type Dart = usize;
pub type Vertex = usize;

/// Opaque vertex or edge label. `token` feeds the canonical code, so two
/// labels compare equal in canonical forms iff their tokens are equal.
pub trait Label: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn token(&self) -> u32;
}

impl Label for () {
    fn token(&self) -> u32 {
        0
    }
}

impl Label for u32 {
    fn token(&self) -> u32 {
        *self
    }
}

/// Vertex list with rotation (arbitrary dart ids), edge list pairing those
/// ids, and an optional dart on the outer face. This is the editable form
/// every map operation goes through.
#[derive(Debug, Clone)]
pub struct MapParts<V, E> {
    pub vertices: Vec<(V, Vec<usize>)>,
    pub edges: Vec<(usize, usize, E)>,
    pub outer: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap<V, E = ()> {
    origin: Vec<Vertex>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    rotations: Vec<Vec<Dart>>,
    vlabels: Vec<V>,
    elabels: Vec<E>,
    outer: Option<Dart>,
}

/// Canonical code of a rooted, labelled map. Totally ordered so that the
/// minimum over all admissible roots is well defined.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.0 {
            if !first {
                f.write_str(".")?;
            }
            first = false;
            write!(f, "{x:x}")?;
        }
        Ok(())
    }
}

impl<V: Label, E: Label> PlaneMap<V, E> {
    /// Builds a map from rotations over arbitrary dart ids. Edge `i` of the
    /// result owns darts `2i` (first id of the pair) and `2i + 1`.
    pub fn new(
        vertices: Vec<(V, Vec<usize>)>,
        edges: Vec<(usize, usize, E)>,
        outer: Option<usize>,
    ) -> Result<Self> {
        let mut index: HashMap<usize, Dart> = HashMap::with_capacity(edges.len() * 2);
        let mut elabels = Vec::with_capacity(edges.len());
        for (i, (a, b, l)) in edges.into_iter().enumerate() {
            if a == b {
                return Err(structure(format!("edge pairs dart {a} with itself")));
            }
            for (id, d) in [(a, 2 * i), (b, 2 * i + 1)] {
                if index.insert(id, d).is_some() {
                    return Err(structure(format!("dart {id} used by two edges")));
                }
            }
            elabels.push(l);
        }
        let n = index.len();
        let mut origin = vec![usize::MAX; n];
        let mut next = vec![usize::MAX; n];
        let mut prev = vec![usize::MAX; n];
        let mut rotations = Vec::with_capacity(vertices.len());
        let mut vlabels = Vec::with_capacity(vertices.len());
        let nv = vertices.len();
        for (v, (label, rot)) in vertices.into_iter().enumerate() {
            if rot.is_empty() && nv > 1 {
                return Err(structure(format!("vertex {v} has no darts")));
            }
            let mut mapped = Vec::with_capacity(rot.len());
            for id in rot {
                let d = *index
                    .get(&id)
                    .ok_or_else(|| structure(format!("dart {id} belongs to no edge")))?;
                if origin[d] != usize::MAX {
                    return Err(structure(format!("dart {id} appears in two rotations")));
                }
                origin[d] = v;
                mapped.push(d);
            }
            for (i, &d) in mapped.iter().enumerate() {
                let nx = mapped[(i + 1) % mapped.len()];
                next[d] = nx;
                prev[nx] = d;
            }
            rotations.push(mapped);
            vlabels.push(label);
        }
        if let Some(d) = origin.iter().position(|&o| o == usize::MAX) {
            return Err(structure(format!("dart {d} lies in no rotation")));
        }
        let outer = match outer {
            Some(id) => Some(
                *index
                    .get(&id)
                    .ok_or_else(|| structure(format!("outer dart {id} does not exist")))?,
            ),
            None => None,
        };
        Ok(PlaneMap {
            origin,
            next,
            prev,
            rotations,
            vlabels,
            elabels,
            outer,
        })
    }

    /// The map with no vertex at all.
    pub fn empty() -> Self {
        PlaneMap {
            origin: vec![],
            next: vec![],
            prev: vec![],
            rotations: vec![],
            vlabels: vec![],
            elabels: vec![],
            outer: None,
        }
    }

    pub fn to_parts(&self) -> MapParts<V, E> {
        MapParts {
            vertices: self
                .rotations
                .iter()
                .zip(&self.vlabels)
                .map(|(r, l)| (l.clone(), r.clone()))
                .collect(),
            edges: (0..self.num_edges())
                .map(|e| (2 * e, 2 * e + 1, self.elabels[e].clone()))
                .collect(),
            outer: self.outer,
        }
    }

    pub fn from_parts(parts: MapParts<V, E>) -> Result<Self> {
        Self::new(parts.vertices, parts.edges, parts.outer)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.elabels.len()
    }

    pub fn num_darts(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rotations.is_empty()
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        d ^ 1
    }

    /// Next dart counter-clockwise around the origin of `d`.
    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.next[d]
    }

    #[inline]
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Face successor.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.next[d ^ 1]
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> Vertex {
        self.origin[d]
    }

    #[inline]
    pub fn target(&self, d: Dart) -> Vertex {
        self.origin[d ^ 1]
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn vertex_label(&self, v: Vertex) -> &V {
        &self.vlabels[v]
    }

    pub fn vertex_labels(&self) -> &[V] {
        &self.vlabels
    }

    pub fn edge_label(&self, e: usize) -> &E {
        &self.elabels[e]
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.origin[2 * e] == self.origin[2 * e + 1]
    }

    /// Face walks. An isolated vertex contributes one face with an empty walk.
    pub fn trace_faces(&self) -> Vec<Vec<Dart>> {
        if self.num_darts() == 0 {
            return if self.num_vertices() == 1 {
                vec![vec![]]
            } else {
                vec![]
            };
        }
        let mut seen = vec![false; self.num_darts()];
        let mut faces = Vec::new();
        for s in 0..self.num_darts() {
            if seen[s] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.phi(d);
            }
            faces.push(walk);
        }
        faces
    }

    /// Face index of every dart, consistent with `trace_faces`.
    pub fn face_index(&self) -> (Vec<Vec<Dart>>, Vec<usize>) {
        let faces = self.trace_faces();
        let mut of = vec![usize::MAX; self.num_darts()];
        for (i, f) in faces.iter().enumerate() {
            for &d in f {
                of[d] = i;
            }
        }
        (faces, of)
    }

    /// Walk of the face containing `d`, starting at `d`.
    pub fn face_walk(&self, d: Dart) -> Vec<Dart> {
        let mut walk = vec![d];
        let mut x = self.phi(d);
        while x != d {
            walk.push(x);
            x = self.phi(x);
        }
        walk
    }

    pub fn outer_walk(&self) -> Vec<Dart> {
        self.outer.map(|d| self.face_walk(d)).unwrap_or_default()
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        if nv <= 1 {
            return true;
        }
        self.components().len() == 1
    }

    /// Vertex sets of the connected components.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let nv = self.num_vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut out = Vec::new();
        for s in 0..nv {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for &d in &self.rotations[v] {
                    let w = self.target(d);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// `(2 - V + E - F) / 2` for a connected map.
    pub fn genus(&self) -> Result<usize> {
        if self.is_empty() {
            return Ok(0);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let chi =
            self.num_vertices() as i64 - self.num_edges() as i64 + self.trace_faces().len() as i64;
        let twice = 2 - chi;
        if twice < 0 || twice % 2 != 0 {
            return Err(structure(format!(
                "Euler characteristic {chi} has odd defect"
            )));
        }
        Ok((twice / 2) as usize)
    }

    /// Structural checks: connected, genus 0, outer dart present when the map
    /// has darts.
    pub fn check_planar(&self) -> Result<()> {
        if self.genus()? != 0 {
            return Err(structure("map is not planar (genus > 0)"));
        }
        if self.num_darts() > 0 && self.outer.is_none() {
            return Err(structure("no outer face designated"));
        }
        Ok(())
    }
}

impl<V: Label, E: Label> PlaneMap<V, E> {
    fn encode(&self, start: Dart, reflect: bool) -> Vec<u32> {
        let n = self.num_darts();
        let mut num = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut code = Vec::with_capacity(2 + 4 * n);
        code.push(n as u32);
        code.push(self.num_vertices() as u32);
        num[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            let a = d ^ 1;
            let r = if reflect { self.prev[d] } else { self.next[d] };
            for x in [a, r] {
                if num[x] == u32::MAX {
                    num[x] = order.len() as u32;
                    order.push(x);
                }
            }
            code.extend([
                num[a],
                num[r],
                self.vlabels[self.origin[d]].token(),
                self.elabels[d / 2].token(),
            ]);
        }
        code
    }

    /// Minimum code over the given roots, read with the stored orientation
    /// from `roots` and with the mirrored orientation from `mirror_roots`.
    pub fn canonical_form_rooted(
        &self,
        roots: &[Dart],
        mirror_roots: &[Dart],
    ) -> Result<CanonicalCode> {
        if self.num_darts() == 0 {
            return Ok(match self.num_vertices() {
                0 => CanonicalCode(vec![0, 0]),
                1 => CanonicalCode(vec![0, 1, self.vlabels[0].token()]),
                _ => return Err(Error::Disconnected),
            });
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let best = roots
            .iter()
            .map(|&r| self.encode(r, false))
            .chain(mirror_roots.iter().map(|&r| self.encode(r, true)))
            .min()
            .ok_or_else(|| structure("no root for canonical form"))?;
        Ok(CanonicalCode(best))
    }

    /// Canonical code up to relabelling and reflection, respecting the outer
    /// face when one is designated. Mirroring reverses every face walk, so the
    /// outer face is then entered through the reversed darts of its walk.
    pub fn canonical_form(&self) -> Result<CanonicalCode> {
        match self.outer {
            Some(_) => {
                let walk = self.outer_walk();
                let mirror: Vec<Dart> = walk.iter().map(|&d| d ^ 1).collect();
                self.canonical_form_rooted(&walk, &mirror)
            }
            None => {
                let all: Vec<Dart> = (0..self.num_darts()).collect();
                self.canonical_form_rooted(&all, &all)
            }
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.num_darts() != other.num_darts() || self.num_vertices() != other.num_vertices() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    /// Dual map: one vertex per face, rotation given by the face walk. The
    /// outer dart is kept, so the dual's outer face is the primal vertex
    /// carrying it and `dual(dual(m))` has the same rotation and face
    /// permutations as `m`.
    pub fn dual_map(&self) -> PlaneMap<(), E> {
        let faces = self.trace_faces();
        let mut origin = vec![0; self.num_darts()];
        for (f, walk) in faces.iter().enumerate() {
            for &d in walk {
                origin[d] = f;
            }
        }
        let mut next = vec![0; self.num_darts()];
        let mut prev = vec![0; self.num_darts()];
        for d in 0..self.num_darts() {
            let p = self.phi(d);
            next[d] = p;
            prev[p] = d;
        }
        let rotations = if self.num_darts() == 0 {
            vec![vec![]; faces.len()]
        } else {
            faces
        };
        PlaneMap {
            origin,
            next,
            prev,
            vlabels: vec![(); rotations.len()],
            rotations,
            elabels: self.elabels.clone(),
            outer: self.outer,
        }
    }

    pub fn map_labels<W: Label, F: Label>(
        &self,
        fv: impl Fn(&V) -> W,
        fe: impl Fn(&E) -> F,
    ) -> PlaneMap<W, F> {
        PlaneMap {
            origin: self.origin.clone(),
            next: self.next.clone(),
            prev: self.prev.clone(),
            rotations: self.rotations.clone(),
            vlabels: self.vlabels.iter().map(fv).collect(),
            elabels: self.elabels.iter().map(fe).collect(),
            outer: self.outer,
        }
    }

    /// Same map under new dart and vertex numbering: edge `e` becomes edge
    /// `edge_perm[e]` with its darts swapped when `flip[e]`, vertex `v`
    /// becomes `vertex_perm[v]`, and each rotation list is rotated by
    /// `shift[v]`. The outer dart follows along.
    pub fn relabeled(
        &self,
        edge_perm: &[usize],
        flip: &[bool],
        vertex_perm: &[usize],
        shift: &[usize],
    ) -> Result<Self> {
        let dart = |d: Dart| 2 * edge_perm[d / 2] + ((d & 1) ^ usize::from(flip[d / 2]));
        let mut vertices: Vec<Option<(V, Vec<usize>)>> = vec![None; self.num_vertices()];
        for v in 0..self.num_vertices() {
            let rot = &self.rotations[v];
            let k = if rot.is_empty() {
                0
            } else {
                shift[v] % rot.len()
            };
            let r: Vec<usize> = rot[k..].iter().chain(&rot[..k]).map(|&d| dart(d)).collect();
            vertices[vertex_perm[v]] = Some((self.vlabels[v].clone(), r));
        }
        let mut edges: Vec<Option<(usize, usize, E)>> = vec![None; self.num_edges()];
        for e in 0..self.num_edges() {
            let ne = edge_perm[e];
            edges[ne] = Some((2 * ne, 2 * ne + 1, self.elabels[e].clone()));
        }
        Self::new(
            vertices
                .into_iter()
                .map(|v| v.expect("vertex_perm is a permutation"))
                .collect(),
            edges
                .into_iter()
                .map(|e| e.expect("edge_perm is a permutation"))
                .collect(),
            self.outer.map(dart),
        )
    }
}

impl<V: Label + fmt::Display> PlaneMap<V, ()> {
    /// Line-oriented text form: `v <id> <label> : <darts>`, `e <d> <d>`,
    /// `outer : <d>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            s.push_str(&format!("v {v} {} :", self.vlabels[v]));
            for d in rot {
                s.push_str(&format!(" {d}"));
            }
            s.push('\n');
        }
        for e in 0..self.num_edges() {
            s.push_str(&format!("e {} {}\n", 2 * e, 2 * e + 1));
        }
        if let Some(o) = self.outer {
            s.push_str(&format!("outer : {o}\n"));
        }
        s
    }
}

impl<V: Label + FromStr> PlaneMap<V, ()> {
    pub fn from_text(text: &str) -> Result<Self> {
        let parsed = parse_lines(text)?;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut outer = None;
        for (line, head, fields, tail) in parsed {
            let err = |msg: String| Error::Parse { line, msg };
            match head.as_str() {
                "v" => {
                    if fields.len() != 2 {
                        return Err(err("expected `v <id> <label> : <darts>`".into()));
                    }
                    let label = fields[1]
                        .parse::<V>()
                        .map_err(|_| err(format!("bad vertex label `{}`", fields[1])))?;
                    let darts = parse_numbers(&tail.unwrap_or_default(), line)?;
                    vertices.push((label, darts));
                }
                "e" => {
                    let ds = parse_numbers(&fields.join(" "), line)?;
                    if ds.len() != 2 {
                        return Err(err("expected `e <dart> <dart>`".into()));
                    }
                    edges.push((ds[0], ds[1], ()));
                }
                "outer" => {
                    let ds = parse_numbers(&tail.unwrap_or_default(), line)?;
                    if ds.len() != 1 {
                        return Err(err("expected `outer : <dart>`".into()));
                    }
                    outer = Some(ds[0]);
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        Self::new(vertices, edges, outer)
    }
}

/// Splits text into `(line number, head, fields before ':', text after ':')`,
/// dropping blank lines and `#` comments.
pub(crate) fn parse_lines(text: &str) -> Result<Vec<(usize, String, Vec<String>, Option<String>)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (before, after) = match line.split_once(':') {
            Some((b, a)) => (b, Some(a.trim().to_string())),
            None => (line, None),
        };
        let mut words = before.split_whitespace().map(str::to_string);
        let head = words.next().ok_or(Error::Parse {
            line: i + 1,
            msg: "empty record".into(),
        })?;
        out.push((i + 1, head, words.collect(), after));
    }
    Ok(out)
}

pub(crate) fn parse_numbers(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|w| {
            w.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{w}` is not a dart id"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = PlaneMap<u32>;

    fn loop_map() -> M {
        M::new(vec![(0, vec![0, 1])], vec![(0, 1, ())], Some(0)).unwrap()
    }

    fn edge_map() -> M {
        M::new(vec![(0, vec![0]), (0, vec![1])], vec![(0, 1, ())], Some(0)).unwrap()
    }

    fn path(labels: [u32; 3]) -> M {
        M::new(
            vec![
                (labels[0], vec![0]),
                (labels[1], vec![1, 2]),
                (labels[2], vec![3]),
            ],
            vec![(0, 1, ()), (2, 3, ())],
            Some(0),
        )
        .unwrap()
    }

    pub(crate) fn k4(twisted: bool) -> M {
        let center = if twisted {
            vec![0, 4, 2]
        } else {
            vec![0, 2, 4]
        };
        M::new(
            vec![
                (0, center),
                (0, vec![6, 1, 11]),
                (0, vec![8, 3, 7]),
                (0, vec![10, 5, 9]),
            ],
            vec![
                (0, 1, ()),
                (2, 3, ()),
                (4, 5, ()),
                (6, 7, ()),
                (8, 9, ()),
                (10, 11, ()),
            ],
            Some(6),
        )
        .unwrap()
    }

    #[test]
    fn loop_has_two_faces() {
        let m = loop_map();
        assert_eq!(m.trace_faces().len(), 2);
        assert_eq!(m.genus().unwrap(), 0);
    }

    #[test]
    fn tree_has_one_face() {
        assert_eq!(edge_map().trace_faces().len(), 1);
        assert_eq!(path([1, 2, 3]).genus().unwrap(), 0);
    }

    #[test]
    fn k4_genus() {
        assert_eq!(k4(false).trace_faces().len(), 4);
        assert_eq!(k4(false).genus().unwrap(), 0);
        assert_eq!(k4(true).genus().unwrap(), 1);
    }

    #[test]
    fn faces_partition_darts() {
        let m = k4(false);
        let total: usize = m.trace_faces().iter().map(Vec::len).sum();
        assert_eq!(total, m.num_darts());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(M::new(vec![(0, vec![0])], vec![(0, 1, ())], None).is_err());
        assert!(M::new(vec![(0, vec![0, 0])], vec![(0, 1, ())], None).is_err());
        assert!(M::new(vec![(0, vec![0, 1]), (0, vec![])], vec![(0, 1, ())], None).is_err());
    }

    #[test]
    fn canonical_form_ignores_numbering_direction() {
        let a = path([1, 2, 3]);
        let b = M::new(
            vec![(3, vec![5]), (2, vec![4, 7]), (1, vec![6])],
            vec![(4, 5, ()), (6, 7, ())],
            Some(6),
        )
        .unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!loop_map().is_isomorphic(&edge_map()).unwrap());
        assert!(!path([1, 2, 3]).is_isomorphic(&path([2, 1, 3])).unwrap());
    }

    #[test]
    fn mirror_images_share_a_code() {
        // A vertex with three distinguishable pendant neighbours: the two
        // cyclic orders are mirror images.
        let star = |order: [u32; 3]| {
            M::new(
                vec![
                    (0, vec![0, 2, 4]),
                    (order[0], vec![1]),
                    (order[1], vec![3]),
                    (order[2], vec![5]),
                ],
                vec![(0, 1, ()), (2, 3, ()), (4, 5, ())],
                Some(0),
            )
            .unwrap()
        };
        assert!(star([1, 2, 3]).is_isomorphic(&star([1, 3, 2])).unwrap());
    }

    #[test]
    fn outer_face_is_respected() {
        // Loop with a pendant edge inside versus outside.
        let mk = |outer| {
            M::new(
                vec![(0, vec![0, 2, 1]), (1, vec![3])],
                vec![(0, 1, ()), (2, 3, ())],
                Some(outer),
            )
            .unwrap()
        };
        let faces = mk(0).trace_faces();
        assert_eq!(faces.len(), 2);
        let big = faces.iter().find(|f| f.len() == 3).unwrap()[0];
        let small = faces.iter().find(|f| f.len() == 1).unwrap()[0];
        assert!(!mk(big).is_isomorphic(&mk(small)).unwrap());
    }

    #[test]
    fn dual_of_loop_is_an_edge() {
        let d = loop_map().dual_map();
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_edges(), 1);
        assert!(!d.is_loop(0));
    }

    #[test]
    fn dual_of_triangle_is_triple_edge() {
        let tri = M::new(
            vec![(0, vec![0, 5]), (0, vec![2, 1]), (0, vec![4, 3])],
            vec![(0, 1, ()), (2, 3, ()), (4, 5, ())],
            Some(0),
        )
        .unwrap();
        assert_eq!(tri.genus().unwrap(), 0);
        let d = tri.dual_map();
        assert_eq!(d.num_vertices(), 2);
        assert!((0..3).all(|e| !d.is_loop(e)));
        assert!(d
            .dual_map()
            .is_isomorphic(&tri.map_labels(|_| (), |_| ()))
            .unwrap());
    }

    #[test]
    fn text_round_trip() {
        let m = k4(false);
        let back = M::from_text(&m.to_text()).unwrap();
        assert_eq!(back, m);
        let err = M::from_text("v 0 1 : 0\nq 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
