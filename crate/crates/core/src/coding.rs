//! Passing between a divide and its code.

use std::collections::HashMap;

use crate::closed::{self, EdgeKind};
use crate::discal::{Color, DiscalGraph};
use crate::divide::{Checkerboard, Divide};
use crate::error::{Error, Result};
use crate::plane_map::{Dart, MapParts, PlaneMap, Vertex};

/// The code of `d` under coloring `c`.
pub fn code(d: &Divide, c: &Checkerboard) -> Result<DiscalGraph> {
    code_with_edges(d, c).map(|(g, _)| g)
}

/// The code together with the code edge of every crossing of `d`.
pub fn code_with_edges(
    d: &Divide,
    c: &Checkerboard,
) -> Result<(DiscalGraph, HashMap<Vertex, usize>)> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let regions = d.regions();
    if regions.len() != c.black.len() {
        return Err(Error::InvalidDivide(
            "coloring does not match the divide".into(),
        ));
    }
    if d.is_circle() {
        let color = if c.black[0] {
            Color::Black
        } else {
            Color::Star
        };
        return Ok((DiscalGraph::single(color), HashMap::new()));
    }
    let m = d.map();
    let with_ends = d.has_endpoints();
    let mut vertex_of = vec![usize::MAX; regions.len()];
    let mut colors = vec![];
    for r in 0..regions.len() {
        if c.black[r] {
            vertex_of[r] = colors.len();
            colors.push(match (regions.touches_boundary[r], with_ends) {
                (false, _) => Color::Black,
                (true, true) => Color::White,
                (true, false) => Color::Star,
            });
        }
    }

    // Code dart sitting in the corner that precedes each P-dart.
    let mut dart_at: HashMap<Dart, usize> = HashMap::new();
    let mut edges = vec![];
    let mut edge_of = HashMap::new();
    let mut outer = None;
    let outer_region = m.outer_dart().map(|o| regions.dart_region[o]);
    for (k, p) in d.crossings().into_iter().enumerate() {
        let rot = m.rotation(p);
        let black = |j: usize| c.black[regions.dart_region[rot[(j + 1) % 4]]];
        let j = if black(0) { 0 } else { 1 };
        dart_at.insert(rot[(j + 1) % 4], 2 * k);
        dart_at.insert(rot[(j + 3) % 4], 2 * k + 1);
        edges.push((2 * k, 2 * k + 1, EdgeKind::Interior));
        edge_of.insert(p, k);
        if !with_ends && !c.black[outer_region.unwrap()] {
            for (jj, dart) in [(j, 2 * k), (j + 2, 2 * k + 1)] {
                if Some(regions.dart_region[rot[(jj + 2) % 4]]) == outer_region {
                    outer.get_or_insert(dart);
                }
            }
        }
    }

    let mut fresh = 2 * edges.len();
    let mut rotations: Vec<Vec<usize>> = vec![vec![]; colors.len()];
    let mut ports: HashMap<usize, (usize, usize)> = HashMap::new();
    let ring_p = closed::ring(m);
    let preds: std::collections::HashSet<Dart> = ring_p.ports.iter().map(|p| p.0).collect();
    for r in 0..regions.len() {
        if !c.black[r] {
            continue;
        }
        let v = vertex_of[r];
        let mut rot = vec![];
        for &w in regions.walks[r].iter().rev() {
            if let Some(&x) = dart_at.get(&w) {
                rot.push(x);
            } else if preds.contains(&w) {
                let (bp, bs) = (fresh, fresh + 1);
                fresh += 2;
                rot.push(bp);
                rot.push(bs);
                ports.insert(v, (bp, bs));
            }
        }
        if colors[v] == Color::Star {
            let (bp, bs) = (fresh, fresh + 1);
            fresh += 2;
            rot.push(bp);
            rot.push(bs);
            ports.insert(v, (bp, bs));
        }
        rotations[v] = rot;
    }
    let mut ring = vec![];
    if with_ends {
        for &(p, _) in &ring_p.ports {
            let r = regions.dart_region[p];
            if c.black[r] {
                ring.push(ports[&vertex_of[r]]);
            }
        }
    } else if let Some(&s) = ports.values().next() {
        ring.push(s);
    }
    let mut parts = MapParts {
        vertices: colors.into_iter().zip(rotations).collect(),
        edges,
        outer,
    };
    closed::rewire_ring(&mut parts, &ring);
    let g = DiscalGraph::from_map(PlaneMap::from_parts(parts)?)?;
    Ok((g, edge_of))
}

/// The divide whose code is `g`, built as the medial graph of `g`.
pub fn divide_from_code(g: &DiscalGraph) -> Result<Divide> {
    divide_from_code_with_crossings(g).map(|(d, _)| d)
}

/// Also reports the crossing built on each interior edge of `g`.
pub fn divide_from_code_with_crossings(g: &DiscalGraph) -> Result<(Divide, HashMap<usize, usize>)> {
    let m = g.map();
    let interior = |d: Dart| *m.edge_label(d / 2) == EdgeKind::Interior;
    let plus = |a: Dart| 2 * a;
    let minus = |a: Dart| 2 * a + 1;
    let mut fresh = 2 * m.num_darts();
    let mut crossings = vec![];
    let mut crossing_of = HashMap::new();
    for e in g.interior_edges() {
        let (a, b) = (2 * e, 2 * e + 1);
        crossing_of.insert(e, crossings.len());
        crossings.push([plus(a), minus(a), plus(b), minus(b)]);
    }
    if crossings.is_empty() && g.num_vertices() == 1 && g.color(0) != Color::White {
        return Ok((Divide::circle(), crossing_of));
    }
    let mut arcs = vec![];
    let mut ends: HashMap<Vertex, (usize, usize)> = HashMap::new();
    for v in 0..m.num_vertices() {
        let rot = m.rotation(v);
        let inner: Vec<Dart> = rot.iter().copied().filter(|&d| interior(d)).collect();
        match g.color(v) {
            Color::Black => {
                for (i, &x) in inner.iter().enumerate() {
                    arcs.push((plus(x), minus(inner[(i + 1) % inner.len()])));
                }
            }
            Color::Star => {
                // The boundary loop sits between the last and first dart.
                let start = rot.iter().position(|&d| !interior(d)).unwrap();
                let ordered: Vec<Dart> = (1..=rot.len())
                    .map(|i| rot[(start + i) % rot.len()])
                    .filter(|&d| interior(d))
                    .collect();
                for (i, &x) in ordered.iter().enumerate() {
                    arcs.push((plus(x), minus(ordered[(i + 1) % ordered.len()])));
                }
            }
            Color::White => {
                let succ = (0..rot.len())
                    .find(|&i| !interior(rot[i]) && !interior(rot[(i + rot.len() - 1) % rot.len()]))
                    .ok_or_else(|| {
                        Error::InvalidDiscal(format!("white vertex {v} has no boundary corner"))
                    })?;
                let ordered: Vec<Dart> = (1..rot.len() - 1)
                    .map(|i| rot[(succ + i) % rot.len()])
                    .collect();
                let (l, r) = (fresh, fresh + 1);
                fresh += 2;
                ends.insert(v, (l, r));
                if ordered.is_empty() {
                    arcs.push((l, r));
                    continue;
                }
                arcs.push((r, minus(ordered[0])));
                arcs.push((l, plus(*ordered.last().unwrap())));
                for w in ordered.windows(2) {
                    arcs.push((plus(w[0]), minus(w[1])));
                }
            }
        }
    }
    let mut endpoints = vec![];
    for v in g.boundary_order() {
        if let Some(&(l, r)) = ends.get(&v) {
            endpoints.push(l);
            endpoints.push(r);
        }
    }
    let outer = if !endpoints.is_empty() {
        None
    } else if g.has_star() {
        let star = (0..m.num_vertices())
            .find(|&v| g.color(v) == Color::Star)
            .unwrap();
        m.rotation(star)
            .iter()
            .copied()
            .find(|&d| interior(d))
            .map(minus)
    } else {
        m.outer_dart().map(|a| plus(a ^ 1))
    };
    let d = Divide::from_pieces(&crossings, &endpoints, &arcs, outer)?;
    let numbering: HashMap<usize, usize> = d.crossings().into_iter().enumerate().collect();
    let crossing_of = crossing_of
        .into_iter()
        .map(|(e, i)| (e, numbering[&i]))
        .collect();
    Ok((d, crossing_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::betti;
    use crate::divide_ops::tests::{CROSS, FIGURE_EIGHT, Q};

    pub(crate) const X_CODE: &str = "v 0 black : 0 2 4 6\nv 1 white : 1\nv 2 white : 3\nv 3 white : 5\nv 4 white : 7\ne 0 1\ne 2 3\ne 4 5\ne 6 7\nouter : 0\n";
    const Q_CODE: &str = "v 0 black : 0 1\ne 0 1\nouter : 0\n";

    fn round_trips(d: &Divide) {
        for c in d.checkerboards().unwrap() {
            let g = code(d, &c).unwrap();
            let back = divide_from_code(&g).unwrap();
            assert_eq!(
                back.canonical_form().unwrap(),
                d.canonical_form().unwrap(),
                "{}\n{}",
                d.to_text(),
                g.to_text()
            );
            let again = back
                .checkerboards()
                .unwrap()
                .into_iter()
                .map(|c2| code(&back, &c2).unwrap().canonical_form().unwrap())
                .collect::<Vec<_>>();
            assert!(again.contains(&g.canonical_form().unwrap()));
        }
    }

    #[test]
    fn q_code_is_loop() {
        let g = DiscalGraph::from_text(Q_CODE).unwrap();
        let d = divide_from_code(&g).unwrap();
        assert_eq!(
            d.canonical_form().unwrap(),
            Divide::from_text(Q).unwrap().canonical_form().unwrap()
        );
    }

    #[test]
    fn x_from_code() {
        let g = DiscalGraph::from_text(X_CODE).unwrap();
        let d = divide_from_code(&g).unwrap();
        assert_eq!(d.num_crossings(), 4);
        assert_eq!(betti(&d).unwrap(), 5);
        assert_eq!(d.regions().len(), 9);
        round_trips(&d);
    }

    #[test]
    fn small_round_trips() {
        for t in [Q, FIGURE_EIGHT, CROSS] {
            round_trips(&Divide::from_text(t).unwrap());
        }
        round_trips(&Divide::circle());
        round_trips(&Divide::segment());
    }

    #[test]
    fn single_vertices() {
        assert!(divide_from_code(&DiscalGraph::single(Color::Black))
            .unwrap()
            .is_circle());
        assert!(divide_from_code(&DiscalGraph::single(Color::Star))
            .unwrap()
            .is_circle());
        let s = divide_from_code(&DiscalGraph::single(Color::White)).unwrap();
        assert_eq!(
            s.canonical_form().unwrap(),
            Divide::segment().canonical_form().unwrap()
        );
    }
}
