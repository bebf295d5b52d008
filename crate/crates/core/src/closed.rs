//! Conventions shared by divides and codes stored together with the disc
//! boundary.
//!
//! Objects that touch the boundary circle are stored as one connected map
//! that also contains the circle: every vertex on the circle carries two
//! boundary darts, and its rotation ends with `[.., pred, succ]` where `succ`
//! leads to the next boundary vertex. The `succ` darts form one face, the
//! region outside the disc, and the outer dart of the map is one of them.

use serde::{Deserialize, Serialize};

use crate::plane_map::{Dart, Label, MapParts, PlaneMap, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Interior,
    Boundary,
}

impl Label for EdgeKind {
    fn token(&self) -> u32 {
        match self {
            EdgeKind::Interior => 0,
            EdgeKind::Boundary => 1,
        }
    }
}

/// Boundary vertices in cyclic order with their `(pred, succ)` darts.
#[derive(Debug, Clone, Default)]
pub(crate) struct Ring {
    pub order: Vec<Vertex>,
    pub ports: Vec<(Dart, Dart)>,
}

pub(crate) fn has_boundary<V: Label>(m: &PlaneMap<V, EdgeKind>) -> bool {
    (0..m.num_edges()).any(|e| *m.edge_label(e) == EdgeKind::Boundary)
}

/// Reads the boundary ring off the outer face. Empty when the map has no
/// boundary edge.
pub(crate) fn ring<V: Label>(m: &PlaneMap<V, EdgeKind>) -> Ring {
    if !has_boundary(m) {
        return Ring::default();
    }
    let Some(start) = m.outer_dart() else {
        return Ring::default();
    };
    let walk = m.face_walk(start);
    let n = walk.len();
    let mut r = Ring::default();
    for i in 0..n {
        let succ = walk[i];
        let pred = walk[(i + n - 1) % n] ^ 1;
        r.order.push(m.origin(succ));
        r.ports.push((pred, succ));
    }
    r
}

/// True when every outer-face dart is a boundary dart leaving its vertex as
/// the last entry of the rotation, right after the matching `pred` dart.
pub(crate) fn ring_is_well_formed<V: Label>(m: &PlaneMap<V, EdgeKind>) -> bool {
    let Some(start) = m.outer_dart() else {
        return false;
    };
    let walk = m.face_walk(start);
    let n = walk.len();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        let succ = walk[i];
        let pred = walk[(i + n - 1) % n] ^ 1;
        if *m.edge_label(succ / 2) != EdgeKind::Boundary
            || m.sigma(pred) != succ
            || !seen.insert(m.origin(succ))
        {
            return false;
        }
    }
    let boundary_edges = (0..m.num_edges())
        .filter(|&e| *m.edge_label(e) == EdgeKind::Boundary)
        .count();
    boundary_edges == n
}

/// Drops every boundary edge from `parts` and re-creates the ring through
/// the given `(pred, succ)` dart ids, which must still sit in the rotations.
pub(crate) fn rewire_ring<V>(parts: &mut MapParts<V, EdgeKind>, ring: &[(usize, usize)]) {
    parts.edges.retain(|e| e.2 == EdgeKind::Interior);
    let n = ring.len();
    for i in 0..n {
        parts
            .edges
            .push((ring[i].1, ring[(i + 1) % n].0, EdgeKind::Boundary));
    }
    if n > 0 {
        parts.outer = Some(ring[0].1);
    }
}

/// Allocator for dart ids that cannot clash with ids already in `parts`.
pub(crate) struct FreshIds(usize);

impl FreshIds {
    pub fn after<V, E>(parts: &MapParts<V, E>) -> Self {
        let m = parts
            .edges
            .iter()
            .map(|e| e.0.max(e.1) + 1)
            .max()
            .unwrap_or(0);
        FreshIds(m)
    }

    pub fn take(&mut self) -> usize {
        self.0 += 1;
        self.0 - 1
    }
}
