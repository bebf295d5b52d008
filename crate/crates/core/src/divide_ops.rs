//! Desingularization, Reidemeister III moves and the subdivide order.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::closed::{self, EdgeKind};
use crate::divide::{interior_components, Checkerboard, Divide, DivideMap, Node};
use crate::error::{Error, Result};
use crate::plane_map::{Dart, MapParts, PlaneMap, Vertex};
use crate::search::{Downset, Move, ReductionSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothing {
    BlackJoin,
    WhiteJoin,
}

impl Smoothing {
    pub fn name(self) -> &'static str {
        match self {
            Smoothing::BlackJoin => "black-join",
            Smoothing::WhiteJoin => "white-join",
        }
    }

    pub fn parse(s: &str) -> Option<Smoothing> {
        match s {
            "black-join" | "black" => Some(Smoothing::BlackJoin),
            "white-join" | "white" => Some(Smoothing::WhiteJoin),
            _ => None,
        }
    }
}

/// Result of a desingularization together with the coloring it inherits.
/// The coloring is `None` when nothing of the old divide survives as a dart.
#[derive(Debug, Clone)]
pub struct Desingularized {
    pub divide: Divide,
    pub coloring: Option<Checkerboard>,
}

/// Builds a map and reports where each dart id ended up.
fn build(parts: MapParts<Node, EdgeKind>) -> Result<(DivideMap, HashMap<usize, Dart>)> {
    let mut ids = HashMap::new();
    for (i, e) in parts.edges.iter().enumerate() {
        ids.insert(e.0, 2 * i);
        ids.insert(e.1, 2 * i + 1);
    }
    Ok((PlaneMap::from_parts(parts)?, ids))
}

fn crossing_rotation(d: &Divide, p: Vertex) -> Result<[Dart; 4]> {
    let m = d.map();
    if d.is_circle() || p >= m.num_vertices() || *m.vertex_label(p) != Node::Crossing {
        return Err(Error::NotAllowed(format!("vertex {p} is not a crossing")));
    }
    m.rotation(p)
        .try_into()
        .map_err(|_| Error::InvalidDivide(format!("crossing {p} is not 4-valent")))
}

/// Smooths crossing `p` using the first checkerboard.
pub fn desingularize(d: &Divide, p: Vertex, mode: Smoothing) -> Result<Divide> {
    let c = d.checkerboards()?;
    desingularize_with(d, &c[0], p, mode).map(|r| r.divide)
}

/// Smooths crossing `p`, joining the two black (or white) quadrants of `c`.
pub fn desingularize_with(
    d: &Divide,
    c: &Checkerboard,
    p: Vertex,
    mode: Smoothing,
) -> Result<Desingularized> {
    let rot = crossing_rotation(d, p)?;
    let m = d.map();
    let regions = d.regions();
    let (faces, face_of) = m.face_index();
    let corner_black = |j: usize| c.black[regions.dart_region[rot[(j + 1) % 4]]];
    let black_even = corner_black(0);
    let hug_even = match mode {
        Smoothing::BlackJoin => !black_even,
        Smoothing::WhiteJoin => black_even,
    };
    let hugged: [usize; 2] = if hug_even { [0, 2] } else { [1, 3] };
    let merged: [usize; 2] = if hug_even { [1, 3] } else { [0, 2] };
    let mut partner = HashMap::new();
    for j in hugged {
        partner.insert(rot[j], rot[(j + 1) % 4]);
        partner.insert(rot[(j + 1) % 4], rot[j]);
    }
    let at_p = |x: Dart| m.origin(x) == p;

    let mut used: HashSet<Dart> = HashSet::new();
    let mut done_outside: HashSet<Dart> = HashSet::new();
    let mut new_edges = vec![];
    for o in 0..m.num_darts() {
        if at_p(o) || !at_p(o ^ 1) || done_outside.contains(&o) {
            continue;
        }
        let mut x = o ^ 1;
        let end = loop {
            let y = partner[&x];
            used.insert(x);
            used.insert(y);
            let z = y ^ 1;
            if at_p(z) {
                x = z;
            } else {
                break z;
            }
        };
        done_outside.insert(o);
        done_outside.insert(end);
        new_edges.push((o, end, EdgeKind::Interior));
    }
    let mut circles = 0;
    for &s in &rot {
        if used.contains(&s) {
            continue;
        }
        circles += 1;
        let mut x = s;
        while used.insert(x) {
            let y = partner[&x];
            used.insert(y);
            x = y ^ 1;
        }
    }

    let mut parts = m.to_parts();
    parts.vertices.remove(p);
    parts.edges.retain(|e| !at_p(e.0) && !at_p(e.1));
    parts.edges.extend(new_edges);
    if parts.vertices.is_empty() {
        return match circles {
            1 => Ok(Desingularized {
                divide: Divide::circle(),
                coloring: None,
            }),
            _ => Err(Error::NotAllowed(format!(
                "smoothing {p} leaves {circles} closed circles"
            ))),
        };
    }

    // Old faces whose darts end up in the region touching the boundary.
    let mut outer_faces: HashSet<usize> = (0..faces.len())
        .filter(|&f| {
            faces[f]
                .first()
                .map(|&x| {
                    regions
                        .touches_boundary
                        .get(regions.dart_region[x])
                        .copied()
                        .unwrap_or(false)
                })
                .unwrap_or(false)
        })
        .collect();
    let merged_faces: Vec<usize> = merged.iter().map(|&j| face_of[rot[(j + 1) % 4]]).collect();
    if merged_faces.iter().any(|f| outer_faces.contains(f)) {
        outer_faces.extend(merged_faces);
    }
    let outer_candidates: Vec<Dart> = outer_faces
        .iter()
        .flat_map(|&f| faces[f].iter().copied())
        .filter(|&x| !at_p(x) && d.is_interior_dart(x))
        .collect();
    if !d.has_endpoints() {
        parts.outer = outer_candidates.iter().min().copied();
    }

    let (map, ids) = build(parts)?;
    let comps = interior_components(&map);
    let (map, ids) = match (comps.len(), circles) {
        (1, 0) => (map, ids),
        (1, 1) if is_single_segment(&map, &comps[0]) => {
            return Ok(Desingularized {
                divide: Divide::circle(),
                coloring: None,
            });
        }
        (2, 0) => {
            let drop = if is_single_segment(&map, &comps[1]) {
                1
            } else if is_single_segment(&map, &comps[0]) {
                0
            } else {
                return Err(Error::NotAllowed(format!(
                    "smoothing {p} disconnects the divide"
                )));
            };
            let keep: HashSet<Vertex> = comps[1 - drop].iter().copied().collect();
            let outer = outer_candidates
                .iter()
                .filter_map(|x| ids.get(x).copied())
                .filter(|&x| keep.contains(&map.origin(x)))
                .min();
            let (m2, ids2) = drop_vertices(&map, &comps[drop], outer)?;
            let composed = ids
                .iter()
                .filter_map(|(k, v)| ids2.get(v).map(|w| (*k, *w)))
                .collect();
            (m2, composed)
        }
        _ => {
            return Err(Error::NotAllowed(format!(
                "smoothing {p} disconnects the divide"
            )))
        }
    };
    let divide = Divide::from_map(map)?;
    let coloring = inherit_coloring(d, c, &divide, &ids)?;
    Ok(Desingularized { divide, coloring })
}

fn is_single_segment(m: &DivideMap, comp: &[Vertex]) -> bool {
    comp.len() == 2 && comp.iter().all(|&v| *m.vertex_label(v) == Node::Endpoint)
}

/// Removes `gone` and closes the boundary ring over the gap.
fn drop_vertices(
    m: &DivideMap,
    gone: &[Vertex],
    outer: Option<Dart>,
) -> Result<(DivideMap, HashMap<usize, Dart>)> {
    let gone: HashSet<Vertex> = gone.iter().copied().collect();
    let ring = closed::ring(m);
    let mut parts = m.to_parts();
    let keep_ring: Vec<(usize, usize)> = ring
        .order
        .iter()
        .zip(&ring.ports)
        .filter(|(v, _)| !gone.contains(v))
        .map(|(_, &pd)| pd)
        .collect();
    parts
        .edges
        .retain(|e| !gone.contains(&m.origin(e.0)) && !gone.contains(&m.origin(e.1)));
    closed::rewire_ring(&mut parts, &keep_ring);
    if keep_ring.is_empty() {
        parts.outer = outer;
    }
    let vertices = std::mem::take(&mut parts.vertices);
    parts.vertices = vertices
        .into_iter()
        .enumerate()
        .filter(|(v, _)| !gone.contains(v))
        .map(|(_, x)| x)
        .collect();
    build(parts)
}

fn inherit_coloring(
    old: &Divide,
    c: &Checkerboard,
    new: &Divide,
    ids: &HashMap<usize, Dart>,
) -> Result<Option<Checkerboard>> {
    let old_regions = old.regions();
    let new_regions = new.regions();
    let boards = new.checkerboards()?;
    let mut score = [0i64; 2];
    for (&old_id, &nd) in ids {
        if !old.is_interior_dart(old_id) {
            continue;
        }
        let want = c.black[old_regions.dart_region[old_id]];
        for (k, b) in boards.iter().enumerate() {
            if b.black[new_regions.dart_region[nd]] == want {
                score[k] += 1;
            } else {
                score[k] -= 1;
            }
        }
    }
    if score == [0, 0] {
        return Ok(None);
    }
    let [a, b] = boards;
    Ok(Some(if score[0] >= score[1] { a } else { b }))
}

/// Darts naming the triangular inner regions bounded by three crossings.
pub fn riii_sites(d: &Divide) -> Vec<Dart> {
    if d.is_circle() {
        return vec![];
    }
    let regions = d.regions();
    let m = d.map();
    let mut out = vec![];
    for (r, walk) in regions.walks.iter().enumerate() {
        if regions.touches_boundary[r] || walk.len() != 3 {
            continue;
        }
        let vs: HashSet<Vertex> = walk.iter().map(|&x| m.origin(x)).collect();
        if vs.len() == 3 && vs.iter().all(|&v| *m.vertex_label(v) == Node::Crossing) {
            out.push(*walk.iter().min().unwrap());
        }
    }
    out.sort_unstable();
    out
}

/// Moves the strand opposite each corner across the triangle at `site`.
pub fn apply_riii(d: &Divide, site: Dart) -> Result<Divide> {
    if !riii_sites(d).contains(&site) {
        return Err(Error::NotAllowed(format!(
            "dart {site} does not bound a triangle of crossings"
        )));
    }
    let m = d.map();
    let t = m.face_walk(site);
    let xs: Vec<Vertex> = t.iter().map(|&x| m.origin(x)).collect();
    let mut ports = vec![];
    for i in 0..3 {
        // y is the triangle dart arriving at X_i.
        let y = t[(i + 2) % 3] ^ 1;
        let e1 = m.sigma(m.sigma(y));
        let e2 = m.sigma(e1);
        ports.push(e2);
        ports.push(e1);
    }
    let mut parts = m.to_parts();
    let removed: HashSet<Vertex> = xs.iter().copied().collect();
    let on_old = |x: Dart| removed.contains(&m.origin(x));
    parts.edges.retain(|e| !on_old(e.0) && !on_old(e.1));
    let mut fresh = closed::FreshIds::after(&m.to_parts());
    let new_of: HashMap<Dart, usize> = ports.iter().map(|&p| (p, fresh.take())).collect();
    let next: Vec<usize> = (0..3).map(|_| fresh.take()).collect();
    let prev: Vec<usize> = (0..3).map(|_| fresh.take()).collect();
    let mut vertices: Vec<(Node, Vec<usize>)> = parts
        .vertices
        .iter()
        .enumerate()
        .filter(|(v, _)| !removed.contains(v))
        .map(|(_, x)| x.clone())
        .collect();
    for k in 0..3 {
        let early = new_of[&ports[2 * k + 1]];
        let late = new_of[&ports[(2 * k + 2) % 6]];
        vertices.push((Node::Crossing, vec![prev[k], next[k], late, early]));
        parts
            .edges
            .push((next[k], prev[(k + 1) % 3], EdgeKind::Interior));
    }
    let mut linked = HashSet::new();
    for &p in &ports {
        if !linked.insert(p) {
            continue;
        }
        let far = p ^ 1;
        if new_of.contains_key(&far) {
            linked.insert(far);
            parts
                .edges
                .push((new_of[&p], new_of[&far], EdgeKind::Interior));
        } else {
            parts.edges.push((new_of[&p], far, EdgeKind::Interior));
        }
    }
    parts.vertices = vertices;
    if let Some(o) = m.outer_dart() {
        if on_old(o) {
            let f = m.face_walk(o);
            let j = ports
                .iter()
                .position(|p| f.contains(p))
                .ok_or_else(|| Error::InvalidDivide("outer region lost in triangle move".into()))?;
            parts.outer = Some(new_of[&ports[j]]);
        }
    }
    Divide::from_map(PlaneMap::from_parts(parts)?)
}

/// Every divide reachable by smoothing crossings, keyed by canonical form.
pub(crate) fn smoothing_downset(
    d: &Divide,
    min_crossings: usize,
    goal: Option<&crate::plane_map::CanonicalCode>,
) -> Result<Downset<Divide>> {
    Downset::explore(
        d.clone(),
        |x: &Divide| x.canonical_form(),
        |x: &Divide| {
            let mut out = vec![];
            for p in x.crossings() {
                for mode in [Smoothing::WhiteJoin, Smoothing::BlackJoin] {
                    if let Ok(r) = desingularize(x, p, mode) {
                        out.push(Move {
                            op: mode.name(),
                            target: p,
                            result: r,
                        });
                    }
                }
            }
            out
        },
        |x: &Divide| x.num_crossings() > min_crossings,
        goal,
    )
}

/// Every divide obtainable from `d` by desingularizations.
pub fn subdivide_downset(d: &Divide) -> Result<Vec<Divide>> {
    Ok(smoothing_downset(d, 0, None)?
        .items()
        .map(|(_, x)| x.clone())
        .collect())
}

/// Smoothings turning `d2` into `d1`, if `d1` is a subdivide of `d2`.
pub fn subdivide_leq(d1: &Divide, d2: &Divide) -> Result<Option<ReductionSequence>> {
    if !d1.is_connected() || !d2.is_connected() {
        return Err(Error::Disconnected);
    }
    let goal = d1.canonical_form()?;
    let down = smoothing_downset(d2, d1.num_crossings(), Some(&goal))?;
    Ok(down.path_to(&goal))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::divide::{betti, validate_divide};

    pub(crate) const Q: &str = "x 0 : 0 1 2 3\ne 0 1\ne 2 3\nouter : 1\n";
    pub(crate) const FIGURE_EIGHT: &str = "x 0 : 0 1 2 3\ne 0 1\ne 2 3\nouter : 0\n";
    pub(crate) const CROSS: &str = "x 0 : 0 1 2 3\nb 1 : 10\nb 2 : 11\nb 3 : 12\nb 4 : 13\nbd : 1 2 3 4\ne 0 10\ne 1 11\ne 2 12\ne 3 13\n";

    fn q() -> Divide {
        Divide::from_text(Q).unwrap()
    }

    #[test]
    fn q_counts() {
        let d = q();
        assert!(validate_divide(&d).is_valid());
        assert_eq!(betti(&d).unwrap(), 3);
        assert_eq!(d.regions().inner().len(), 2);
        let eight = Divide::from_text(FIGURE_EIGHT).unwrap();
        assert_eq!(betti(&eight).unwrap(), 3);
        assert_ne!(d.canonical_form().unwrap(), eight.canonical_form().unwrap());
    }

    #[test]
    fn q_coloring_has_black_middle() {
        let d = q();
        let regions = d.regions();
        let boards = d.checkerboards().unwrap();
        let outer = regions.touches_boundary.iter().position(|&t| t).unwrap();
        let middle = regions.walks.iter().position(|w| w.len() == 2).unwrap();
        for b in &boards {
            assert_ne!(b.black[outer], b.black[middle]);
        }
        assert_ne!(boards[0], boards[1]);
    }

    #[test]
    fn q_smoothings() {
        let d = q();
        let boards = d.checkerboards().unwrap();
        let regions = d.regions();
        let middle = regions.walks.iter().position(|w| w.len() == 2).unwrap();
        let c = if boards[0].black[middle] {
            &boards[0]
        } else {
            &boards[1]
        };
        let white = desingularize_with(&d, c, 0, Smoothing::WhiteJoin).unwrap();
        assert!(white.divide.is_circle());
        assert!(matches!(
            desingularize_with(&d, c, 0, Smoothing::BlackJoin),
            Err(Error::NotAllowed(_))
        ));
    }

    #[test]
    fn two_chords_smooth_to_one() {
        let d = Divide::from_text(CROSS).unwrap();
        assert_eq!(betti(&d).unwrap(), 1);
        assert_eq!(validate_divide(&d).segments, 2);
        for mode in [Smoothing::WhiteJoin, Smoothing::BlackJoin] {
            let r = desingularize(&d, 0, mode).unwrap();
            assert_eq!(
                r.canonical_form().unwrap(),
                Divide::segment().canonical_form().unwrap()
            );
            assert_eq!(betti(&r).unwrap(), 0);
        }
    }

    #[test]
    fn degree_three_crossing_is_reported() {
        let map = PlaneMap::new(
            vec![
                (Node::Crossing, vec![0, 2, 4]),
                (Node::Crossing, vec![1, 3, 5]),
            ],
            vec![
                (0, 1, EdgeKind::Interior),
                (2, 3, EdgeKind::Interior),
                (4, 5, EdgeKind::Interior),
            ],
            Some(0),
        )
        .unwrap();
        let report = crate::divide::validate_divide(&Divide::from_map_unchecked(map));
        assert!(report.violations.iter().any(|v| v.clause == "(i)/(iii)"));
    }

    #[test]
    fn circle_is_below_q() {
        let seq = subdivide_leq(&Divide::circle(), &q()).unwrap().unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.steps[0].op, "white-join");
    }

    #[test]
    fn text_round_trip() {
        for t in [Q, FIGURE_EIGHT, CROSS] {
            let d = Divide::from_text(t).unwrap();
            let e = Divide::from_text(&d.to_text()).unwrap();
            assert_eq!(d.canonical_form().unwrap(), e.canonical_form().unwrap());
        }
        assert!(Divide::from_text("circle\n").unwrap().is_circle());
    }
}
