//! Divides as closed plane maps: crossings, segment endpoints and the
//! boundary circle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closed::{self, EdgeKind};
use crate::error::{Error, Result};
use crate::plane_map::{
    parse_lines, parse_numbers, CanonicalCode, Dart, Label, MapParts, PlaneMap, Vertex,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    Crossing,
    Endpoint,
}

impl Label for Node {
    fn token(&self) -> u32 {
        match self {
            Node::Crossing => 0,
            Node::Endpoint => 1,
        }
    }
}

pub type DivideMap = PlaneMap<Node, EdgeKind>;

/// A divide in the unit disc.
///
/// Crossings have four interior darts; opposite positions of the rotation
/// belong to one strand. Endpoints have rotation `[arc, pred, succ]`. A
/// divide without endpoints has no boundary edges and its outer dart lies on
/// the region touching the boundary circle. The embedded circle has no
/// vertex at all and is flagged separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divide {
    map: DivideMap,
    circle: bool,
}

/// Regions of the disc minus the divide.
#[derive(Debug, Clone)]
pub struct Regions {
    /// Region of each dart, `usize::MAX` for darts facing outside the disc.
    pub dart_region: Vec<usize>,
    pub walks: Vec<Vec<Dart>>,
    pub touches_boundary: Vec<bool>,
}

impl Regions {
    pub fn len(&self) -> usize {
        self.touches_boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.touches_boundary.is_empty()
    }

    pub fn inner(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&r| !self.touches_boundary[r])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Checkerboard {
    pub black: Vec<bool>,
}

impl Checkerboard {
    pub fn swapped(&self) -> Checkerboard {
        Checkerboard {
            black: self.black.iter().map(|b| !b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub connected: bool,
    pub segments: usize,
    pub circles: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, clause: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            clause: clause.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(
                f,
                "valid ({} segments, {} circles)",
                self.segments, self.circles
            );
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} {}", v.clause, v.message))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Divide {
    pub fn circle() -> Divide {
        Divide {
            map: PlaneMap::empty(),
            circle: true,
        }
    }

    /// One chord without crossings.
    pub fn segment() -> Divide {
        Divide::from_pieces(&[], &[0, 1], &[(0, 1)], None).expect("segment is valid")
    }

    /// Accepts `map` after [`validate_divide`] finds no violation.
    pub fn from_map(map: DivideMap) -> Result<Divide> {
        let d = Divide { map, circle: false };
        let report = validate_divide(&d);
        if report.is_valid() {
            Ok(d)
        } else {
            Err(Error::InvalidDivide(report.to_string()))
        }
    }

    pub fn from_map_unchecked(map: DivideMap) -> Divide {
        Divide { map, circle: false }
    }

    /// Builds a divide from crossing rotations, endpoint arc darts listed in
    /// boundary order, and arcs pairing dart ids.
    pub fn from_pieces(
        crossings: &[[usize; 4]],
        endpoints: &[usize],
        arcs: &[(usize, usize)],
        outer: Option<usize>,
    ) -> Result<Divide> {
        let mut parts = MapParts {
            vertices: vec![],
            edges: vec![],
            outer,
        };
        for &(a, b) in arcs {
            parts.edges.push((a, b, EdgeKind::Interior));
        }
        let mut fresh = closed::FreshIds::after(&parts);
        for x in crossings {
            parts.vertices.push((Node::Crossing, x.to_vec()));
        }
        let mut ring = Vec::new();
        for &a in endpoints {
            let (p, s) = (fresh.take(), fresh.take());
            parts.vertices.push((Node::Endpoint, vec![a, p, s]));
            ring.push((p, s));
        }
        if !ring.is_empty() {
            if outer.is_some() {
                return Err(Error::InvalidDivide(
                    "outer dart given for a divide with endpoints".into(),
                ));
            }
            closed::rewire_ring(&mut parts, &ring);
        }
        Divide::from_map(PlaneMap::from_parts(parts)?)
    }

    pub fn map(&self) -> &DivideMap {
        &self.map
    }

    pub fn is_circle(&self) -> bool {
        self.circle
    }

    pub fn crossings(&self) -> Vec<Vertex> {
        self.vertices_of(Node::Crossing)
    }

    pub fn endpoints(&self) -> Vec<Vertex> {
        self.vertices_of(Node::Endpoint)
    }

    fn vertices_of(&self, kind: Node) -> Vec<Vertex> {
        (0..self.map.num_vertices())
            .filter(|&v| *self.map.vertex_label(v) == kind)
            .collect()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings().len()
    }

    pub fn has_endpoints(&self) -> bool {
        self.map.vertex_labels().contains(&Node::Endpoint)
    }

    pub fn is_interior_dart(&self, d: Dart) -> bool {
        *self.map.edge_label(d / 2) == EdgeKind::Interior
    }

    /// Endpoints in boundary order.
    pub fn boundary_order(&self) -> Vec<Vertex> {
        closed::ring(&self.map).order
    }

    /// Arcs joining two crossings.
    pub fn crossing_arcs(&self) -> usize {
        (0..self.map.num_edges())
            .filter(|&e| {
                *self.map.edge_label(e) == EdgeKind::Interior
                    && *self.map.vertex_label(self.map.origin(2 * e)) == Node::Crossing
                    && *self.map.vertex_label(self.map.origin(2 * e + 1)) == Node::Crossing
            })
            .count()
    }

    pub fn regions(&self) -> Regions {
        if self.circle {
            return Regions {
                dart_region: vec![],
                walks: vec![vec![], vec![]],
                touches_boundary: vec![false, true],
            };
        }
        let (faces, face_of) = self.map.face_index();
        let outer_face = self.map.outer_dart().map(|d| face_of[d]);
        let with_ends = self.has_endpoints();
        let mut id = vec![usize::MAX; faces.len()];
        let mut walks = vec![];
        let mut touches = vec![];
        for (f, walk) in faces.iter().enumerate() {
            if with_ends && Some(f) == outer_face {
                continue;
            }
            id[f] = walks.len();
            let t = if with_ends {
                walk.iter().any(|&d| !self.is_interior_dart(d))
            } else {
                Some(f) == outer_face
            };
            walks.push(walk.clone());
            touches.push(t);
        }
        let dart_region = face_of.iter().map(|&f| id[f]).collect();
        Regions {
            dart_region,
            walks,
            touches_boundary: touches,
        }
    }

    /// Both proper two-colorings; the first one colors region 0 black.
    pub fn checkerboards(&self) -> Result<[Checkerboard; 2]> {
        let regions = self.regions();
        let n = regions.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut adj = vec![vec![]; n];
        for d in 0..self.map.num_darts() {
            if self.is_interior_dart(d) {
                adj[regions.dart_region[d]].push(regions.dart_region[d ^ 1]);
            }
        }
        if self.circle {
            adj = vec![vec![1], vec![0]];
        }
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(true);
            let mut queue = VecDeque::from([s]);
            while let Some(r) = queue.pop_front() {
                let c = color[r].unwrap();
                for &o in &adj[r] {
                    match color[o] {
                        None => {
                            color[o] = Some(!c);
                            queue.push_back(o);
                        }
                        Some(x) if x == c => {
                            return Err(Error::InvalidDivide(
                                "regions admit no checkerboard coloring".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
        }
        let first = Checkerboard {
            black: color.into_iter().map(|c| c.unwrap()).collect(),
        };
        let second = first.swapped();
        Ok([first, second])
    }

    /// Strands traced through crossings: `(is_closed, darts)` per strand.
    pub fn strands(&self) -> Vec<(bool, Vec<Dart>)> {
        let m = &self.map;
        let mut used = vec![false; m.num_darts()];
        let mut out = vec![];
        let straight = |d: Dart| -> Option<Dart> {
            let v = m.origin(d);
            match m.vertex_label(v) {
                Node::Crossing if m.degree(v) == 4 => Some(m.sigma(m.sigma(d))),
                _ => None,
            }
        };
        for e in m
            .vertex_labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Node::Endpoint)
            .map(|(v, _)| v)
        {
            let Some(&start) = m.rotation(e).iter().find(|&&d| self.is_interior_dart(d)) else {
                continue;
            };
            if used[start] {
                continue;
            }
            let mut darts = vec![];
            let mut d = start;
            loop {
                used[d] = true;
                used[d ^ 1] = true;
                darts.push(d);
                match straight(d ^ 1) {
                    Some(n) if !used[n] => d = n,
                    _ => break,
                }
            }
            out.push((false, darts));
        }
        for s in 0..m.num_darts() {
            if used[s] || !self.is_interior_dart(s) {
                continue;
            }
            let mut darts = vec![];
            let mut d = s;
            loop {
                used[d] = true;
                used[d ^ 1] = true;
                darts.push(d);
                match straight(d ^ 1) {
                    Some(n) if !used[n] => d = n,
                    _ => break,
                }
            }
            out.push((true, darts));
        }
        if self.circle {
            out.push((true, vec![]));
        }
        out
    }

    /// Connected once the boundary circle is ignored.
    pub fn is_connected(&self) -> bool {
        interior_components(&self.map).len() <= 1
    }

    pub fn canonical_form(&self) -> Result<CanonicalCode> {
        if self.circle {
            return Ok(CanonicalCode(vec![u32::MAX]));
        }
        self.map.canonical_form()
    }

    pub fn to_text(&self) -> String {
        let m = &self.map;
        let mut s = String::new();
        if self.circle {
            s.push_str("circle\n");
            return s;
        }
        for v in self.crossings() {
            let r: Vec<String> = m.rotation(v).iter().map(|d| d.to_string()).collect();
            s.push_str(&format!("x {v} : {}\n", r.join(" ")));
        }
        for v in self.endpoints() {
            let a = m
                .rotation(v)
                .iter()
                .find(|&&d| self.is_interior_dart(d))
                .copied()
                .unwrap_or(0);
            s.push_str(&format!("b {v} : {a}\n"));
        }
        let order = self.boundary_order();
        if !order.is_empty() {
            let ids: Vec<String> = order.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("bd : {}\n", ids.join(" ")));
        }
        for e in 0..m.num_edges() {
            if *m.edge_label(e) == EdgeKind::Interior {
                s.push_str(&format!("e {} {}\n", 2 * e, 2 * e + 1));
            }
        }
        if !self.has_endpoints() {
            if let Some(o) = m.outer_dart() {
                s.push_str(&format!("outer : {o}\n"));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Divide> {
        let mut crossings: Vec<(usize, [usize; 4])> = vec![];
        let mut ends: HashMap<usize, usize> = HashMap::new();
        let mut order: Option<Vec<usize>> = None;
        let mut arcs = vec![];
        let mut outer = None;
        let mut circle = false;
        for (line, head, fields, after) in parse_lines(text)? {
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            match head.as_str() {
                "x" => {
                    let id = fields.first().ok_or_else(|| err("crossing needs an id"))?;
                    let id = parse_numbers(id, line)?[0];
                    let ds = parse_numbers(after.as_deref().unwrap_or(""), line)?;
                    let arr: [usize; 4] = ds.try_into().map_err(|v: Vec<usize>| {
                        err(&format!("crossing {id} has {} darts, expected 4", v.len()))
                    })?;
                    crossings.push((id, arr));
                }
                "b" => {
                    let id = fields.first().ok_or_else(|| err("endpoint needs an id"))?;
                    let id = parse_numbers(id, line)?[0];
                    let ds = parse_numbers(after.as_deref().unwrap_or(""), line)?;
                    if ds.len() != 1 {
                        return Err(err(&format!(
                            "endpoint {id} has {} darts, expected 1",
                            ds.len()
                        )));
                    }
                    if ends.insert(id, ds[0]).is_some() {
                        return Err(err(&format!("endpoint {id} declared twice")));
                    }
                }
                "bd" => order = Some(parse_numbers(after.as_deref().unwrap_or(""), line)?),
                "e" => {
                    let ds = parse_numbers(&fields.join(" "), line)?;
                    if ds.len() != 2 {
                        return Err(err("arc needs two darts"));
                    }
                    arcs.push((ds[0], ds[1]));
                }
                "outer" => {
                    let ds = parse_numbers(after.as_deref().unwrap_or(""), line)?;
                    outer = ds.first().copied();
                }
                "circle" => circle = true,
                other => return Err(err(&format!("unknown record '{other}'"))),
            }
        }
        if circle {
            if !crossings.is_empty() || !ends.is_empty() || !arcs.is_empty() {
                return Err(Error::InvalidDivide(
                    "'circle' cannot be combined with other records".into(),
                ));
            }
            return Ok(Divide::circle());
        }
        let order = match order {
            Some(o) => o,
            None if ends.is_empty() => vec![],
            None => {
                return Err(Error::InvalidDivide(
                    "endpoints given without 'bd' order".into(),
                ))
            }
        };
        if order.len() != ends.len() {
            return Err(Error::InvalidDivide(
                "'bd' must list every endpoint exactly once".into(),
            ));
        }
        let mut end_darts = vec![];
        for id in &order {
            end_darts.push(*ends.get(id).ok_or_else(|| {
                Error::InvalidDivide(format!("'bd' names unknown endpoint {id}"))
            })?);
        }
        crossings.sort_by_key(|c| c.0);
        let rots: Vec<[usize; 4]> = crossings.into_iter().map(|c| c.1).collect();
        Divide::from_pieces(&rots, &end_darts, &arcs, outer)
    }
}

/// Components of the map with boundary edges removed.
pub(crate) fn interior_components<V: Label>(m: &PlaneMap<V, EdgeKind>) -> Vec<Vec<Vertex>> {
    let nv = m.num_vertices();
    let mut comp = vec![usize::MAX; nv];
    let mut out = vec![];
    for s in 0..nv {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for &d in m.rotation(v) {
                if *m.edge_label(d / 2) == EdgeKind::Interior {
                    let w = m.target(d);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Checks every divide invariant and lists what fails.
pub fn validate_divide(d: &Divide) -> ValidationReport {
    let mut r = ValidationReport {
        connected: true,
        ..Default::default()
    };
    if d.circle {
        r.circles = 1;
        return r;
    }
    let m = &d.map;
    for v in 0..m.num_vertices() {
        let rot = m.rotation(v);
        match m.vertex_label(v) {
            Node::Crossing => {
                if rot.len() != 4 {
                    r.push(
                        "(i)/(iii)",
                        format!("crossing {v} has degree {}, expected 4", rot.len()),
                    );
                } else if rot.iter().any(|&x| !d.is_interior_dart(x)) {
                    r.push("(iv)", format!("crossing {v} touches the boundary circle"));
                }
            }
            Node::Endpoint => {
                let arcs = rot.iter().filter(|&&x| d.is_interior_dart(x)).count();
                if rot.len() != 3 || arcs != 1 {
                    r.push(
                        "(iv)",
                        format!("endpoint {v} must carry one arc and two boundary darts"),
                    );
                }
            }
        }
    }
    for e in 0..m.num_edges() {
        if m.is_loop(e) && *m.vertex_label(m.origin(2 * e)) == Node::Endpoint {
            r.push("(iv)", format!("arc {e} returns to its own endpoint"));
        }
    }
    let nends = d.endpoints().len();
    if nends > 0 {
        if !closed::ring_is_well_formed(m) || closed::ring(m).order.len() != nends {
            r.push(
                "(iv)",
                "boundary endpoints do not form one cycle around the disc",
            );
        }
    } else if closed::has_boundary(m) {
        r.push("(iv)", "boundary edges without endpoints");
    }
    if m.num_darts() > 0 && m.outer_dart().is_none() {
        r.push("(v)", "no region is marked as touching the boundary circle");
    }
    match m.genus() {
        Ok(0) => {}
        Ok(g) => r.push(
            "(ii)",
            format!("map has genus {g}, not embedded in the disc"),
        ),
        Err(_) => {}
    }
    r.connected = interior_components(m).len() <= 1;
    if r.violations.is_empty() {
        for (closed, _) in d.strands() {
            if closed {
                r.circles += 1;
            } else {
                r.segments += 1;
            }
        }
        if !nends.is_multiple_of(2) {
            r.push(
                "(iv)",
                format!("{nends} endpoints, expected an even number"),
            );
        }
    }
    r
}

/// First Betti number of the fiber surface: crossings plus inner regions.
pub fn betti(d: &Divide) -> Result<usize> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let x = d.num_crossings();
    let o = d.regions().inner().len();
    if x > 0 && d.crossing_arcs() + 1 != x + o {
        return Err(Error::InvalidDivide(format!(
            "{} arcs between crossings, expected {}",
            d.crossing_arcs(),
            x + o - 1
        )));
    }
    Ok(x + o)
}
