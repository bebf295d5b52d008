//! Exhaustive enumeration of small connected divides and the brute-force
//! check of the maximality criterion.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::{classify, prohibited_divides, prohibited_witness, Classification};
use crate::coding::{code, divide_from_code};
use crate::discal::{Color, DiscalGraph, PlanMap};
use crate::divide::{betti, Divide};
use crate::divide_ops::subdivide_leq;
use crate::error::{Error, Result};
use crate::oracle::inertia_by_sturm;
use crate::plane_map::{CanonicalCode, Dart, PlaneMap};
use crate::seifert::{determinant, inertia, is_maximal, seifert_matrix_divide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    Crossings(usize),
    Betti(usize),
}

impl Bound {
    fn max_crossings(self) -> usize {
        match self {
            Bound::Crossings(k) | Bound::Betti(k) => k,
        }
    }
}

pub const DEFAULT_CEILING: u128 = 20_000_000;

fn rooted_maps(n: usize) -> u128 {
    (0..n as u128).fold(1, |a, i| a * 6 * (2 * i + 1) / (i + 3))
}

/// Rough number of colored maps the enumeration visits.
pub fn estimate(bound: Bound) -> u128 {
    (0..=bound.max_crossings())
        .map(|n| rooted_maps(n) * (1u128 << (n + 1)))
        .sum()
}

fn check_ceiling(bound: Bound, ceiling: u128) -> Result<()> {
    let est = estimate(bound);
    if est > ceiling {
        return Err(Error::Ceiling(format!(
            "about {est} states for {bound:?}, ceiling is {ceiling}"
        )));
    }
    Ok(())
}

/// Corners of a map: vertex and the dart the corner precedes.
fn corners(m: &PlanMap) -> Vec<(usize, Option<Dart>, usize)> {
    let (_, face_of) = m.face_index();
    let mut out = vec![];
    for v in 0..m.num_vertices() {
        if m.rotation(v).is_empty() {
            out.push((v, None, 0));
        }
        for &d in m.rotation(v) {
            out.push((v, Some(d), face_of[d]));
        }
    }
    out
}

fn insert_before(rot: &mut Vec<usize>, before: Option<Dart>, x: usize) {
    let at = before
        .and_then(|d| rot.iter().position(|&y| y == d))
        .unwrap_or(rot.len());
    rot.insert(at, x);
}

/// Maps with one more edge: a pendant edge in any corner, or an edge
/// joining two corners of a common face.
fn extensions(m: &PlanMap) -> Vec<PlanMap> {
    let cs = corners(m);
    let (a, b) = (m.num_darts(), m.num_darts() + 1);
    let mut out = vec![];
    for &(v, d, _) in &cs {
        let mut parts = m.to_parts();
        insert_before(&mut parts.vertices[v].1, d, a);
        parts.vertices.push((Color::Black, vec![b]));
        parts.edges.push((a, b, ()));
        out.extend(PlaneMap::from_parts(parts));
    }
    for i in 0..cs.len() {
        for j in i..cs.len() {
            let ((v, d1, f1), (w, d2, f2)) = (cs[i], cs[j]);
            if f1 != f2 {
                continue;
            }
            let mut parts = m.to_parts();
            insert_before(&mut parts.vertices[v].1, d1, a);
            insert_before(&mut parts.vertices[w].1, d2, b);
            parts.edges.push((a, b, ()));
            out.extend(PlaneMap::from_parts(parts));
        }
    }
    out
}

/// Connected plane maps with up to `k` edges, one per isomorphism class.
fn shapes(k: usize) -> Result<Vec<PlanMap>> {
    let mut level = vec![PlaneMap::new(vec![(Color::Black, vec![])], vec![], None)?];
    let mut all = level.clone();
    for _ in 0..k {
        let next: Vec<(CanonicalCode, PlanMap)> = level
            .par_iter()
            .flat_map_iter(extensions)
            .filter_map(|m| Some((m.canonical_form().ok()?, m)))
            .collect();
        let mut seen = HashMap::new();
        for (c, m) in next {
            seen.entry(c).or_insert(m);
        }
        let mut keyed: Vec<(CanonicalCode, PlanMap)> = seen.into_iter().collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        level = keyed.into_iter().map(|(_, m)| m).collect();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

fn recolor(m: &PlanMap, colors: &[Color], outer: Dart) -> PlanMap {
    let mut parts = m.to_parts();
    for (v, c) in parts.vertices.iter_mut().zip(colors) {
        v.0 = *c;
    }
    parts.outer = Some(outer);
    PlaneMap::from_parts(parts).expect("recoloring keeps the map")
}

/// Every code whose interior is the shape `m`.
fn codes_on(m: &PlanMap) -> Vec<DiscalGraph> {
    let nv = m.num_vertices();
    if m.num_darts() == 0 {
        return [Color::Black, Color::Star, Color::White]
            .into_iter()
            .map(DiscalGraph::single)
            .collect();
    }
    let mut out = vec![];
    let (faces, _) = m.face_index();
    for walk in faces.iter().filter(|f| !f.is_empty()) {
        let blacks = vec![Color::Black; nv];
        out.extend(DiscalGraph::from_plan(&recolor(m, &blacks, walk[0]), None));
        for &d in walk {
            let mut cs = blacks.clone();
            cs[m.origin(d)] = Color::Star;
            out.extend(DiscalGraph::from_plan(
                &recolor(m, &cs, walk[0]),
                Some(&[d]),
            ));
        }
        // One touching dart per white vertex, chosen among its visits.
        let mut visits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &d) in walk.iter().enumerate() {
            visits.entry(m.origin(d)).or_default().push(i);
        }
        let on_face: Vec<(usize, Vec<usize>)> = visits.into_iter().collect();
        let mut choice: Vec<Option<usize>> = vec![None; on_face.len()];
        loop {
            // Advance an odometer where each slot is "black" or one visit.
            let mut k = 0;
            while k < choice.len() {
                let opts = on_face[k].1.len();
                match choice[k] {
                    None => {
                        choice[k] = Some(0);
                        break;
                    }
                    Some(i) if i + 1 < opts => {
                        choice[k] = Some(i + 1);
                        break;
                    }
                    Some(_) => {
                        choice[k] = None;
                        k += 1;
                    }
                }
            }
            if k == choice.len() {
                break;
            }
            let mut cs = blacks.clone();
            let mut touch = vec![];
            for (slot, (v, positions)) in choice.iter().zip(&on_face) {
                if let Some(i) = slot {
                    cs[*v] = Color::White;
                    touch.push(positions[*i]);
                }
            }
            touch.sort();
            let darts: Vec<Dart> = touch.iter().map(|&i| walk[i]).collect();
            out.extend(DiscalGraph::from_plan(
                &recolor(m, &cs, walk[0]),
                Some(&darts),
            ));
        }
    }
    out
}

/// Every connected divide within the bound, once per isotopy class,
/// ordered by crossings and then canonical form.
pub fn enumerate_divides(bound: Bound, ceiling: u128) -> Result<Vec<Divide>> {
    check_ceiling(bound, ceiling)?;
    let found: Vec<(CanonicalCode, Divide)> = shapes(bound.max_crossings())?
        .par_iter()
        .flat_map_iter(codes_on)
        .filter_map(|g| {
            let d = divide_from_code(&g).ok()?;
            Some((d.canonical_form().ok()?, d))
        })
        .collect();
    let mut seen = HashMap::new();
    for (c, d) in found {
        seen.entry(c).or_insert(d);
    }
    let mut keyed: Vec<(usize, CanonicalCode, Divide)> = seen
        .into_iter()
        .map(|(c, d)| (d.num_crossings(), c, d))
        .collect();
    keyed.retain(|(_, _, d)| match bound {
        Bound::Crossings(_) => true,
        Bound::Betti(n) => betti(d).is_ok_and(|b| b <= n),
    });
    keyed.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    Ok(keyed.into_iter().map(|(_, _, d)| d).collect())
}

/// Codes of all enumerated divides under both colorings, deduplicated.
pub fn enumerate_codes(bound: Bound, ceiling: u128) -> Result<Vec<DiscalGraph>> {
    let mut seen = HashSet::new();
    let mut out = vec![];
    for d in enumerate_divides(bound, ceiling)? {
        for c in d.checkerboards()? {
            let g = code(&d, &c)?;
            if seen.insert(g.canonical_form()?) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// One line of the verification log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub canon: String,
    pub crossings: usize,
    pub betti: usize,
    pub det: i64,
    pub signature: i64,
    pub maximal: bool,
    pub witness: Option<String>,
    pub code_witness: Option<String>,
    pub family: Option<String>,
    /// Witness found by `classify` for a non-maximal divide, as `name kind`.
    pub surface_witness: Option<String>,
    pub trivial: bool,
    pub oracle_agrees: bool,
    pub defect: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub canon: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub bound: Option<Bound>,
    pub divides: usize,
    pub counts_by_betti: BTreeMap<usize, usize>,
    pub maximal_count: usize,
    pub not_maximal_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub cross_check_mismatches: Vec<Counterexample>,
    pub oracle_mismatches: Vec<Counterexample>,
    pub classify_defects: Vec<Counterexample>,
    /// Counterexamples for which `classify` still found a surface minor.
    pub resolved_by_surface_minor: usize,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
            && self.cross_check_mismatches.is_empty()
            && self.oracle_mismatches.is_empty()
            && self.classify_defects.is_empty()
    }
}

/// All invariants and witnesses of one divide.
pub fn check_divide(d: &Divide) -> Result<Record> {
    let s = seifert_matrix_divide(d)?;
    let det = determinant(&s.entries);
    let inr = inertia(&s.entries)?;
    let oracle_agrees = inertia_by_sturm(&s.entries, &det).is_ok_and(|o| o == inr);
    let maximal = is_maximal(&s.entries)?;
    let mut witness = None;
    for (name, p) in prohibited_divides() {
        if subdivide_leq(p, d)?.is_some() {
            witness = Some(name.clone());
            break;
        }
    }
    let mut code_witness = None;
    for c in d.checkerboards()? {
        if let Some((n, _)) = prohibited_witness(&code(d, &c)?)? {
            code_witness = Some(n);
            break;
        }
    }
    let (family, surface_witness, defect) = match classify(d)? {
        Classification::Maximal { family, .. } => (Some(family), None, None),
        Classification::NotMaximal { witness, .. } => (
            None,
            witness.map(|w| format!("{} {}", w.name, w.kind)),
            None,
        ),
        Classification::Defect { reason, .. } => (None, None, Some(reason)),
    };
    Ok(Record {
        canon: d.canonical_form()?.to_string(),
        crossings: d.num_crossings(),
        betti: s.dim(),
        det: det
            .to_i64()
            .ok_or_else(|| Error::Structure("determinant overflows".into()))?,
        signature: inr.signature(),
        maximal,
        witness,
        code_witness,
        family,
        surface_witness,
        trivial: d.num_crossings() == 0 && d.has_endpoints(),
        oracle_agrees,
        defect,
    })
}

/// Checks "maximal iff no prohibited subdivide" on every divide within the
/// bound. Records already in `known` are reused.
pub fn verify_theorem(
    bound: Bound,
    ceiling: u128,
    known: &HashMap<String, Record>,
) -> Result<(VerificationReport, Vec<Record>)> {
    let start = Instant::now();
    let divides = enumerate_divides(bound, ceiling)?;
    let records: Vec<Record> = divides
        .par_iter()
        .map(|d| {
            let key = d.canonical_form()?.to_string();
            match known.get(&key) {
                Some(r) => Ok(r.clone()),
                None => check_divide(d),
            }
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport {
        bound: Some(bound),
        divides: records.len(),
        ..Default::default()
    };
    for r in &records {
        *report.counts_by_betti.entry(r.betti).or_default() += 1;
        if r.maximal {
            report.maximal_count += 1;
        } else {
            report.not_maximal_count += 1;
        }
        let flag = |kind: &str, detail: String| Counterexample {
            canon: r.canon.clone(),
            kind: kind.into(),
            detail,
        };
        if r.maximal == r.witness.is_some() {
            report.counterexamples.push(flag(
                "criterion",
                format!("maximal {} witness {:?}", r.maximal, r.witness),
            ));
        }
        if r.witness.is_some() != r.code_witness.is_some() {
            report.cross_check_mismatches.push(flag(
                "cross-check",
                format!("divide {:?} code {:?}", r.witness, r.code_witness),
            ));
        }
        if !r.oracle_agrees {
            report
                .oracle_mismatches
                .push(flag("oracle", "inertia methods disagree".into()));
        }
        if !r.maximal && r.witness.is_none() && r.surface_witness.is_some() {
            report.resolved_by_surface_minor += 1;
        }
        if let Some(reason) = &r.defect {
            report
                .classify_defects
                .push(flag("classify", reason.clone()));
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok((report, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divide_ops::tests::Q;

    fn canon_set(ds: &[Divide]) -> HashSet<CanonicalCode> {
        ds.iter().map(|d| d.canonical_form().unwrap()).collect()
    }

    #[test]
    fn bound_zero() {
        let ds = enumerate_divides(Bound::Crossings(0), DEFAULT_CEILING).unwrap();
        assert_eq!(ds.len(), 2);
        assert!(ds.iter().any(|d| d.is_circle()));
    }

    #[test]
    fn small_bounds_contain_q_and_x() {
        let one = enumerate_divides(Bound::Crossings(1), DEFAULT_CEILING).unwrap();
        assert!(canon_set(&one).contains(&Divide::from_text(Q).unwrap().canonical_form().unwrap()));
        let four = enumerate_divides(Bound::Crossings(4), DEFAULT_CEILING).unwrap();
        let x = crate::atlas::family_divide(&"X".parse().unwrap()).unwrap();
        let set = canon_set(&four);
        assert_eq!(set.len(), four.len());
        assert!(set.contains(&x.canonical_form().unwrap()));
    }

    #[test]
    fn ceiling_refuses() {
        assert!(matches!(
            enumerate_divides(Bound::Crossings(9), 1000),
            Err(Error::Ceiling(_))
        ));
    }

    #[test]
    fn verify_small() {
        let (report, records) =
            verify_theorem(Bound::Crossings(2), DEFAULT_CEILING, &HashMap::new()).unwrap();
        assert!(report.verified(), "{report:?}");
        let q = Divide::from_text(Q)
            .unwrap()
            .canonical_form()
            .unwrap()
            .to_string();
        let rq = records.iter().find(|r| r.canon == q).unwrap();
        assert_eq!(
            (rq.betti, rq.maximal, rq.witness.as_deref()),
            (3, false, Some("Q"))
        );
    }
}
