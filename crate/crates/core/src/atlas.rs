//! Named divides and the classification of divides with maximal signature.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{self, EdgeKind};
use crate::coding::{code, divide_from_code};
use crate::discal::{Color, DiscalGraph, PlanMap};
use crate::divide::Divide;
use crate::divide_ops::{apply_riii, riii_sites, subdivide_leq};
use crate::error::{Error, Result};
use crate::minor::plan_minor_leq;
use crate::plane_map::{CanonicalCode, Dart, MapParts, PlaneMap, Vertex};
use crate::search::ReductionSequence;
use crate::seifert::{is_maximal, seifert_matrix_divide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    BC,
    D,
    E6,
    E7,
    E8,
    G2,
    Epqr,
    Fpq,
    Q,
    X,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[usize]) -> FamilySpec {
        FamilySpec {
            family,
            params: params.to_vec(),
        }
    }

    pub fn check(&self) -> Result<()> {
        let p = &self.params;
        let ok = match self.family {
            Family::A | Family::BC | Family::D => p.len() == 1 && p[0] >= 1,
            Family::Epqr => p.len() == 3 && p.iter().all(|&x| x >= 1),
            Family::Fpq => p.len() == 2 && p.iter().all(|&x| x >= 2),
            _ => p.is_empty(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Family(format!(
                "parameters {p:?} out of range for {}",
                self.family_name()
            )))
        }
    }

    fn family_name(&self) -> &'static str {
        match self.family {
            Family::A => "A",
            Family::BC => "BC",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::G2 => "G2",
            Family::Epqr => "E",
            Family::Fpq => "F",
            Family::Q => "Q",
            Family::X => "X",
        }
    }

    /// Dimension of the Seifert matrix of the generated member.
    pub fn dimension(&self) -> usize {
        let p = &self.params;
        match self.family {
            Family::A => p[0],
            Family::BC | Family::D => p[0] + 3,
            Family::E6 | Family::G2 => 6,
            Family::E7 => 7,
            Family::E8 => 8,
            Family::Epqr => 1 + p[0] + p[1] + p[2],
            Family::Fpq => p[0] + p[1] + 2,
            Family::Q => 3,
            Family::X => 5,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
        match self.family {
            Family::Epqr | Family::Fpq => write!(f, "{}{}", self.family_name(), ps.join(",")),
            _ => write!(f, "{}{}", self.family_name(), ps.join("")),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts `A5`, `BC3`, `D4`, `E6`, `E7`, `E8`, `G2`, `Q`, `X`,
    /// `E1,2,5` and `F2,5`.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let bad = || Error::Family(format!("cannot read family '{s}'"));
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let spec = match s {
            "Q" => FamilySpec::new(Family::Q, &[]),
            "X" => FamilySpec::new(Family::X, &[]),
            "E6" => FamilySpec::new(Family::E6, &[]),
            "E7" => FamilySpec::new(Family::E7, &[]),
            "E8" => FamilySpec::new(Family::E8, &[]),
            "G2" => FamilySpec::new(Family::G2, &[]),
            _ if s.starts_with("BC") => FamilySpec {
                family: Family::BC,
                params: nums(&s[2..])?,
            },
            _ if s.starts_with('A') => FamilySpec {
                family: Family::A,
                params: nums(&s[1..])?,
            },
            _ if s.starts_with('D') => FamilySpec {
                family: Family::D,
                params: nums(&s[1..])?,
            },
            _ if s.starts_with('E') => FamilySpec {
                family: Family::Epqr,
                params: nums(&s[1..])?,
            },
            _ if s.starts_with('F') => FamilySpec {
                family: Family::Fpq,
                params: nums(&s[1..])?,
            },
            _ => return Err(bad()),
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Incremental construction of small plane codes.
struct Builder {
    vertices: Vec<(Color, Vec<usize>)>,
    edges: Vec<(usize, usize, ())>,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            vertices: vec![],
            edges: vec![],
        }
    }

    fn vertex(&mut self, c: Color) -> Vertex {
        self.vertices.push((c, vec![]));
        self.vertices.len() - 1
    }

    /// Adds an edge; its dart at `u` goes right before `before`, or last.
    fn edge_before(&mut self, u: Vertex, v: Vertex, before: Option<Dart>) -> (Dart, Dart) {
        let (a, b) = (2 * self.edges.len(), 2 * self.edges.len() + 1);
        self.edges.push((a, b, ()));
        let rot = &mut self.vertices[u].1;
        let at = before
            .and_then(|d| rot.iter().position(|&x| x == d))
            .unwrap_or(rot.len());
        rot.insert(at, a);
        self.vertices[v].1.push(b);
        (a, b)
    }

    fn edge(&mut self, u: Vertex, v: Vertex) -> (Dart, Dart) {
        self.edge_before(u, v, None)
    }

    /// A path carrying `index` dimensions hanging off `from`; it ends on a
    /// white vertex exactly when `index` is odd.
    fn branch(&mut self, from: Vertex, index: usize, before: Option<Dart>) {
        let len = index.div_ceil(2);
        let mut prev = from;
        for i in 1..=len {
            let c = if i == len && index % 2 == 1 {
                Color::White
            } else {
                Color::Black
            };
            let v = self.vertex(c);
            if i == 1 {
                self.edge_before(prev, v, before);
            } else {
                self.edge(prev, v);
            }
            prev = v;
        }
    }

    fn finish(self) -> Result<DiscalGraph> {
        let outer = if self.edges.is_empty() { None } else { Some(0) };
        let plan: PlanMap = PlaneMap::new(self.vertices, self.edges, outer)?;
        DiscalGraph::from_plan(&plan, None)
    }
}

fn epqr(p: usize, q: usize, r: usize) -> Result<DiscalGraph> {
    let mut b = Builder::new();
    let c = b.vertex(Color::Black);
    for k in [p, q, r] {
        b.branch(c, k, None);
    }
    b.finish()
}

/// Path code with `n` dimensions; `white_ends` white end vertices.
fn path(n: usize, white_ends: usize) -> Result<DiscalGraph> {
    let mut b = Builder::new();
    let blacks = match white_ends {
        0 => n.div_ceil(2),
        1 => n / 2,
        _ => (n - 1) / 2,
    };
    let mut prev = None;
    if white_ends == 2 {
        prev = Some(b.vertex(Color::White));
    }
    for _ in 0..blacks {
        let v = b.vertex(Color::Black);
        if let Some(u) = prev {
            b.edge(u, v);
        }
        prev = Some(v);
    }
    if white_ends >= 1 {
        let w = b.vertex(Color::White);
        if let Some(u) = prev {
            b.edge(u, w);
        }
    }
    b.finish()
}

/// The code generating a family member.
pub fn generate_family(spec: &FamilySpec) -> Result<DiscalGraph> {
    spec.check()?;
    let p = &spec.params;
    match spec.family {
        Family::A => path(p[0], 1 - p[0] % 2),
        Family::D => epqr(1, 1, p[0]),
        Family::E6 => epqr(1, 2, 2),
        Family::E7 => epqr(1, 2, 3),
        Family::E8 => epqr(1, 2, 4),
        Family::Epqr => epqr(p[0], p[1], p[2]),
        Family::BC => {
            let mut b = Builder::new();
            let v = b.vertex(Color::Black);
            let w = b.vertex(Color::White);
            b.edge(v, w);
            b.edge(v, w);
            b.branch(v, p[0] - 1, None);
            b.finish()
        }
        Family::G2 => {
            let plan: PlanMap = PlaneMap::new(
                vec![(Color::Black, vec![0, 2, 4]), (Color::White, vec![5, 3, 1])],
                vec![(0, 1, ()), (2, 3, ()), (4, 5, ())],
                Some(0),
            )?;
            DiscalGraph::from_plan(&plan, None)
        }
        Family::Fpq => {
            let mut b = Builder::new();
            let b1 = b.vertex(Color::Black);
            let b2 = b.vertex(Color::Black);
            let w = b.vertex(Color::White);
            b.edge(b1, b2);
            let (t2, _) = b.edge(b2, w);
            b.edge(w, b1);
            b.branch(b1, p[0] - 2, None);
            b.branch(b2, p[1] - 2, Some(t2));
            b.finish()
        }
        Family::Q => {
            let mut b = Builder::new();
            let v = b.vertex(Color::Black);
            b.edge(v, v);
            b.finish()
        }
        Family::X => {
            let mut b = Builder::new();
            let c = b.vertex(Color::Black);
            for _ in 0..4 {
                let w = b.vertex(Color::White);
                b.edge(c, w);
            }
            b.finish()
        }
    }
}

pub fn family_divide(spec: &FamilySpec) -> Result<Divide> {
    divide_from_code(&generate_family(spec)?)
}

/// Divides reachable by Reidemeister III moves.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub members: Vec<Divide>,
    pub canon: Vec<CanonicalCode>,
    /// Index of the member each one was reached from, with the site used.
    pub parent: Vec<Option<(usize, Dart)>>,
    pub truncated: bool,
}

impl Orbit {
    /// Sites applied from the start to reach member `i`.
    pub fn path(&self, mut i: usize) -> Vec<Dart> {
        let mut out = vec![];
        while let Some((p, s)) = self.parent[i] {
            out.push(s);
            i = p;
        }
        out.reverse();
        out
    }
}

pub const ORBIT_CAP: usize = 100_000;

/// Breadth-first RIII closure of `d`, expanding each frontier in parallel.
pub fn riii_orbit(d: &Divide, max_size: usize) -> Result<Orbit> {
    let mut orbit = Orbit {
        members: vec![d.clone()],
        canon: vec![d.canonical_form()?],
        parent: vec![None],
        truncated: false,
    };
    let mut seen: HashSet<CanonicalCode> = orbit.canon.iter().cloned().collect();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let found: Vec<(usize, Dart, Divide, CanonicalCode)> = frontier
            .par_iter()
            .flat_map_iter(|&i| {
                let m = &orbit.members[i];
                riii_sites(m)
                    .into_iter()
                    .filter_map(move |s| {
                        let r = apply_riii(m, s).ok()?;
                        let c = r.canonical_form().ok()?;
                        Some((i, s, r, c))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = vec![];
        for (i, s, r, c) in found {
            if !seen.insert(c.clone()) {
                continue;
            }
            if orbit.members.len() >= max_size {
                orbit.truncated = true;
                return Ok(orbit);
            }
            frontier.push(orbit.members.len());
            orbit.members.push(r);
            orbit.canon.push(c);
            orbit.parent.push(Some((i, s)));
        }
    }
    Ok(orbit)
}

/// Maximal family members of a given dimension, in naming preference order.
fn members_of_dimension(n: usize) -> Vec<(String, Vec<DiscalGraph>)> {
    let mut out = vec![];
    let mut add = |name: String, gs: Vec<Result<DiscalGraph>>| {
        let gs: Vec<DiscalGraph> = gs.into_iter().filter_map(|g| g.ok()).collect();
        if !gs.is_empty() {
            out.push((name, gs));
        }
    };
    if n >= 1 {
        let mut variants = vec![path(n, 1 - n % 2)];
        if n % 2 == 1 {
            variants.push(path(n, 2));
        }
        add(format!("A{n}"), variants);
    }
    if n >= 4 {
        add(format!("D{}", n - 3), vec![epqr(1, 1, n - 3)]);
    }
    match n {
        6 => add("E6".into(), vec![epqr(1, 2, 2)]),
        7 => add("E7".into(), vec![epqr(1, 2, 3)]),
        8 => add("E8".into(), vec![epqr(1, 2, 4)]),
        _ => {}
    }
    if n == 6 {
        add(
            "G2".into(),
            vec![generate_family(&FamilySpec::new(Family::G2, &[]))],
        );
    }
    if n >= 4 {
        add(
            format!("BC{}", n - 3),
            vec![generate_family(&FamilySpec::new(Family::BC, &[n - 3]))],
        );
    }
    if (6..=8).contains(&n) {
        add(
            format!("F2,{}", n - 4),
            vec![generate_family(&FamilySpec::new(Family::Fpq, &[2, n - 4]))],
        );
    }
    out
}

type Catalog = HashMap<CanonicalCode, String>;

fn catalog(n: usize) -> Catalog {
    static CACHE: OnceLock<Mutex<HashMap<usize, Catalog>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let mut cat = Catalog::new();
    for (name, gs) in members_of_dimension(n) {
        for g in gs {
            if let Ok(c) = divide_from_code(&g).and_then(|d| d.canonical_form()) {
                cat.entry(c).or_insert_with(|| name.clone());
            }
        }
    }
    cache.lock().unwrap().insert(n, cat.clone());
    cat
}

/// Splits a code at white cut vertices into blocks without one.
pub fn split_at_white_cuts(g: &DiscalGraph) -> Vec<DiscalGraph> {
    for w in 0..g.num_vertices() {
        if g.color(w) != Color::White || g.degree(w) < 2 {
            continue;
        }
        let pieces = pieces_at(g, w);
        if pieces.len() > 1 {
            return pieces.iter().flat_map(split_at_white_cuts).collect();
        }
    }
    vec![g.clone()]
}

/// The blocks of `g` hanging at the white vertex `w`.
fn pieces_at(g: &DiscalGraph, w: Vertex) -> Vec<DiscalGraph> {
    let m = g.map();
    let nv = g.num_vertices();
    let mut comp = vec![usize::MAX; nv];
    let mut ncomp = 0;
    for s in 0..nv {
        if s == w || comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &d in m.rotation(v) {
                if !g.is_interior_edge(d / 2) {
                    continue;
                }
                let t = m.target(d);
                if t != w && comp[t] == usize::MAX {
                    comp[t] = ncomp;
                    stack.push(t);
                }
            }
        }
        ncomp += 1;
    }
    // Each component of g - w is a piece, and so is each loop at w.
    let mut piece_of_edge = HashMap::new();
    let mut npieces = ncomp;
    for e in g.interior_edges() {
        let (a, b) = (m.origin(2 * e), m.origin(2 * e + 1));
        let id = if a == w && b == w {
            npieces += 1;
            npieces - 1
        } else {
            comp[if a == w { b } else { a }]
        };
        piece_of_edge.insert(e, id);
    }
    // Pieces lying in a bounded face of another piece merge into it.
    let mut group: Vec<usize> = (0..npieces).collect();
    loop {
        let mut ids = group.clone();
        ids.sort();
        ids.dedup();
        if ids.len() < 2 {
            return vec![g.clone()];
        }
        let Some(built) = build_pieces(g, w, &comp, &piece_of_edge, &group, &ids) else {
            return vec![g.clone()];
        };
        match find_nested(g, w, &piece_of_edge, &group, &ids, &built) {
            Some((inner, outer)) => {
                for x in group.iter_mut() {
                    if *x == inner {
                        *x = outer;
                    }
                }
            }
            None => return built.into_iter().map(|(p, _)| p).collect(),
        }
    }
}

type Piece = (DiscalGraph, HashMap<Dart, Dart>);

fn build_pieces(
    g: &DiscalGraph,
    w: Vertex,
    comp: &[usize],
    piece_of_edge: &HashMap<usize, usize>,
    group: &[usize],
    ids: &[usize],
) -> Option<Vec<Piece>> {
    let m = g.map();
    let ring = closed::ring(m);
    let mut out = vec![];
    for &k in ids {
        let keep: Vec<Vertex> = (0..g.num_vertices())
            .filter(|&v| v == w || group[comp[v]] == k)
            .collect();
        let mut parts: MapParts<Color, EdgeKind> = MapParts {
            vertices: vec![],
            edges: vec![],
            outer: None,
        };
        let inside = |d: Dart| piece_of_edge.get(&(d / 2)).map(|&p| group[p]) == Some(k);
        for &v in &keep {
            let rot: Vec<Dart> = m
                .rotation(v)
                .iter()
                .copied()
                .filter(|&d| !g.is_interior_edge(d / 2) || inside(d))
                .collect();
            parts.vertices.push((g.color(v), rot));
        }
        for e in g.interior_edges() {
            if inside(2 * e) {
                parts.edges.push((2 * e, 2 * e + 1, EdgeKind::Interior));
            }
        }
        let ports: Vec<(usize, usize)> = ring
            .order
            .iter()
            .zip(&ring.ports)
            .filter(|(v, _)| keep.contains(v))
            .map(|(_, &p)| p)
            .collect();
        closed::rewire_ring(&mut parts, &ports);
        let ids: HashMap<Dart, Dart> = parts
            .edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| [(e.0, 2 * i), (e.1, 2 * i + 1)])
            .collect();
        let piece = DiscalGraph::from_map(PlaneMap::from_parts(parts).ok()?).ok()?;
        out.push((piece, ids));
    }
    Some(out)
}

/// A pair `(inner, outer)` of groups where `inner` sits in a bounded face
/// of `outer`.
fn find_nested(
    g: &DiscalGraph,
    w: Vertex,
    piece_of_edge: &HashMap<usize, usize>,
    group: &[usize],
    ids: &[usize],
    built: &[Piece],
) -> Option<(usize, usize)> {
    let m = g.map();
    let group_of = |d: Dart| piece_of_edge.get(&(d / 2)).map(|&p| group[p]);
    for &b in ids {
        let Some(&b0) = m.rotation(w).iter().find(|&&d| group_of(d) == Some(b)) else {
            continue;
        };
        for (&a, (piece, dart_ids)) in ids.iter().zip(built) {
            if a == b {
                continue;
            }
            let mut x = m.sigma(b0);
            while g.is_interior_edge(x / 2) && group_of(x) != Some(a) {
                x = m.sigma(x);
            }
            if !g.is_interior_edge(x / 2) {
                continue;
            }
            let walk = piece.map().face_walk(dart_ids[&x]);
            if walk.iter().all(|&y| piece.is_interior_edge(y / 2)) {
                return Some((b, a));
            }
        }
    }
    None
}

/// How a prohibited divide sits inside the classified one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// Reached by desingularizations.
    Subdivide,
    /// A code of it is a colored planar minor of a code of the divide, with
    /// colors lowered where needed. This only certifies a surface minor.
    PlanarMinor,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Subdivide => "subdivide",
            WitnessKind::PlanarMinor => "planar-minor",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub kind: WitnessKind,
    pub riii_path: Vec<Dart>,
    pub sequence: ReductionSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Classification {
    Maximal {
        family: String,
        riii_path: Vec<Dart>,
        dimension: usize,
    },
    NotMaximal {
        witness: Option<Witness>,
        certificate_minor: usize,
        minor_det: String,
    },
    /// Neither a family match nor a prohibited minor was found.
    Defect { maximal: bool, reason: String },
}

impl Classification {
    pub fn is_defect(&self) -> bool {
        matches!(self, Classification::Defect { .. })
    }
}

/// The six prohibited divides, smallest first.
pub fn prohibited_divides() -> &'static [(String, Divide)] {
    static LIST: OnceLock<Vec<(String, Divide)>> = OnceLock::new();
    LIST.get_or_init(|| {
        ["Q", "X", "E2,2,2", "E1,3,3", "E1,2,5", "F2,5"]
            .iter()
            .map(|s| {
                let spec: FamilySpec = s.parse().unwrap();
                let name = s.replace(',', "");
                (
                    name,
                    family_divide(&spec).expect("prohibited divide builds"),
                )
            })
            .collect()
    })
}

/// Codes of both colorings of each prohibited divide.
pub fn prohibited_codes() -> &'static [(String, DiscalGraph)] {
    static LIST: OnceLock<Vec<(String, DiscalGraph)>> = OnceLock::new();
    LIST.get_or_init(|| {
        let mut out = vec![];
        for (name, d) in prohibited_divides() {
            let mut seen = HashSet::new();
            for c in d.checkerboards().unwrap() {
                let g = code(d, &c).unwrap();
                if seen.insert(g.canonical_form().unwrap()) {
                    out.push((name.clone(), g));
                }
            }
        }
        out
    })
}

/// First prohibited code that is a discal minor of `g`.
pub fn prohibited_witness(g: &DiscalGraph) -> Result<Option<(String, ReductionSequence)>> {
    for (name, h) in prohibited_codes() {
        if let Some(seq) = crate::minor::discal_minor_leq(h, g)? {
            return Ok(Some((name.clone(), seq)));
        }
    }
    Ok(None)
}

fn leading_minor_certificate(m: &[Vec<i64>]) -> (usize, String) {
    for k in 1..=m.len() {
        let sub: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let det = crate::seifert::determinant(&sub);
        if det <= num_bigint::BigInt::from(0) {
            return (k, det.to_string());
        }
    }
    (0, String::new())
}

/// Family name of a maximal divide, splitting connected sums first.
fn match_family(d: &Divide) -> Result<Option<(String, Vec<Dart>)>> {
    let dim = crate::divide::betti(d)?;
    let orbit = riii_orbit(d, ORBIT_CAP)?;
    let cat = catalog(dim);
    for (i, c) in orbit.canon.iter().enumerate() {
        if let Some(name) = cat.get(c) {
            return Ok(Some((name.clone(), orbit.path(i))));
        }
    }
    for c in d.checkerboards()? {
        let g = code(d, &c)?;
        let blocks = split_at_white_cuts(&g);
        if blocks.len() < 2 {
            continue;
        }
        let mut names = vec![];
        for b in &blocks {
            match match_family(&divide_from_code(b)?)? {
                Some((n, _)) => names.push(n),
                None => return Ok(None),
            }
        }
        names.sort();
        return Ok(Some((names.join(" + "), vec![])));
    }
    Ok(None)
}

/// Decides maximality and explains the answer.
pub fn classify(d: &Divide) -> Result<Classification> {
    let s = seifert_matrix_divide(d)?;
    let maximal = is_maximal(&s.entries)?;
    if s.dim() == 0 {
        return Ok(Classification::Maximal {
            family: "trivial".into(),
            riii_path: vec![],
            dimension: 0,
        });
    }
    if maximal {
        return Ok(match match_family(d)? {
            Some((family, riii_path)) => Classification::Maximal {
                family,
                riii_path,
                dimension: s.dim(),
            },
            None => Classification::Defect {
                maximal,
                reason: "no family matches the RIII orbit".into(),
            },
        });
    }
    let (certificate_minor, minor_det) = leading_minor_certificate(&s.entries);
    let orbit = riii_orbit(d, ORBIT_CAP)?;
    let short = &prohibited_divides()[..2];
    for (i, m) in orbit.members.iter().enumerate() {
        for (name, p) in short {
            if let Some(sequence) = subdivide_leq(p, m)? {
                let witness = Witness {
                    name: name.clone(),
                    kind: WitnessKind::Subdivide,
                    riii_path: orbit.path(i),
                    sequence,
                };
                return Ok(Classification::NotMaximal {
                    witness: Some(witness),
                    certificate_minor,
                    minor_det,
                });
            }
        }
    }
    for (name, p) in prohibited_divides() {
        if let Some(sequence) = subdivide_leq(p, d)? {
            let witness = Witness {
                name: name.clone(),
                kind: WitnessKind::Subdivide,
                riii_path: vec![],
                sequence,
            };
            return Ok(Classification::NotMaximal {
                witness: Some(witness),
                certificate_minor,
                minor_det,
            });
        }
    }
    for (i, m) in orbit.members.iter().enumerate() {
        for c in m.checkerboards()? {
            let plan = code(m, &c)?.plan();
            for (name, h) in prohibited_codes()
                .iter()
                .filter(|(n, _)| n == "Q" || n == "X")
            {
                if let Some(sequence) = plan_minor_leq(&h.plan(), &plan)? {
                    let witness = Witness {
                        name: name.clone(),
                        kind: WitnessKind::PlanarMinor,
                        riii_path: orbit.path(i),
                        sequence,
                    };
                    return Ok(Classification::NotMaximal {
                        witness: Some(witness),
                        certificate_minor,
                        minor_det,
                    });
                }
            }
        }
    }
    Ok(Classification::Defect {
        maximal,
        reason: "no prohibited subdivide or planar minor found".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide::betti;
    use crate::seifert::det_epqr;

    fn spec(s: &str) -> FamilySpec {
        s.parse().unwrap()
    }

    fn det_of(s: &str) -> num_bigint::BigInt {
        let d = family_divide(&spec(s)).unwrap();
        crate::seifert::determinant(&seifert_matrix_divide(&d).unwrap().entries)
    }

    #[test]
    fn parses_names() {
        assert_eq!(spec("E1,2,5"), FamilySpec::new(Family::Epqr, &[1, 2, 5]));
        assert_eq!(spec("F2,5"), FamilySpec::new(Family::Fpq, &[2, 5]));
        assert_eq!(spec("BC4"), FamilySpec::new(Family::BC, &[4]));
        assert_eq!(spec("A7").to_string(), "A7");
        assert!("Z3".parse::<FamilySpec>().is_err());
        assert!("F1,2".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn dimensions_match_betti() {
        for s in [
            "A1", "A2", "A5", "A6", "D1", "D4", "BC1", "BC2", "BC5", "E6", "E7", "E8", "G2", "Q",
            "X", "E2,2,2", "F2,2", "F2,5", "F3,4",
        ] {
            let f = spec(s);
            let d = family_divide(&f).unwrap();
            assert_eq!(betti(&d).unwrap(), f.dimension(), "{s}");
        }
    }

    #[test]
    fn epqr_determinants() {
        for p in 1..=4 {
            for q in 1..=4 {
                for r in 1..=4 {
                    let got = det_of(&format!("E{p},{q},{r}"));
                    assert_eq!(got, det_epqr(p, q, r).into(), "E{p}{q}{r}");
                }
            }
        }
        for n in 1..=7 {
            assert_eq!(det_of(&format!("A{n}")), (n as i64 + 1).into());
        }
    }

    #[test]
    fn g2_and_f_orbits_reach_e() {
        for (a, b) in [("G2", "E1,2,2"), ("F2,3", "E1,2,3"), ("F2,5", "E1,2,5")] {
            let orbit = riii_orbit(&family_divide(&spec(a)).unwrap(), ORBIT_CAP).unwrap();
            let target = family_divide(&spec(b)).unwrap().canonical_form().unwrap();
            assert!(orbit.canon.contains(&target), "{a} -> {b}");
        }
    }

    #[test]
    fn classifies_family_members() {
        for s in ["A4", "A5", "D4", "E6", "E7", "E8", "BC3", "G2", "F2,4"] {
            let c = classify(&family_divide(&spec(s)).unwrap()).unwrap();
            assert!(matches!(c, Classification::Maximal { .. }), "{s}: {c:?}");
        }
        for s in ["Q", "X", "E2,2,2", "E1,3,3", "E1,2,5", "F2,5"] {
            let c = classify(&family_divide(&spec(s)).unwrap()).unwrap();
            assert!(
                matches!(
                    c,
                    Classification::NotMaximal {
                        witness: Some(_),
                        ..
                    }
                ),
                "{s}: {c:?}"
            );
        }
    }

    #[test]
    fn prohibited_minors_found_in_codes() {
        let g = generate_family(&spec("E2,2,3")).unwrap();
        let (name, _) = prohibited_witness(&g).unwrap().unwrap();
        assert_eq!(name, "E222");
        assert!(prohibited_witness(&generate_family(&spec("E8")).unwrap())
            .unwrap()
            .is_none());
    }
}
