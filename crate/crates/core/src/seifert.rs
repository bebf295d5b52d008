//! Symmetrized Seifert matrices of fiber surfaces and their exact invariants.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::closed::EdgeKind;
use crate::discal::{Color, DiscalGraph};
use crate::divide::Divide;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Crossing(usize),
    Face(usize),
    Vertex(usize),
    Edge(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Crossing(i) => write!(f, "x{i}"),
            BasisLabel::Face(i) => write!(f, "f{i}"),
            BasisLabel::Vertex(i) => write!(f, "v{i}"),
            BasisLabel::Edge(i) => write!(f, "e{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    pub index: Vec<BasisLabel>,
    pub entries: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

/// JSON view of a matrix and its invariants.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixReport {
    pub index: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub det: serde_json::Value,
    pub inertia: [usize; 3],
    pub signature: i64,
    pub maximal: bool,
}

impl SeifertMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn report(&self) -> Result<MatrixReport> {
        let det = determinant(&self.entries);
        let i = inertia(&self.entries)?;
        Ok(MatrixReport {
            index: self.index.iter().map(|l| l.to_string()).collect(),
            matrix: self.entries.clone(),
            det: match det.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(det.to_string()),
            },
            inertia: [i.plus, i.zero, i.minus],
            signature: i.signature(),
            maximal: is_maximal(&self.entries)?,
        })
    }

    /// Same matrix with rows and columns listed in the order `perm`.
    pub fn permuted(&self, perm: &[usize]) -> SeifertMatrix {
        SeifertMatrix {
            index: perm.iter().map(|&i| self.index[i]).collect(),
            entries: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
        }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.index.iter().map(|l| l.to_string()).collect();
        writeln!(f, "{}", labels.join(" "))?;
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", r.join(" "))?;
        }
        Ok(())
    }
}

/// Matrix over crossings and inner regions of a connected divide. It does
/// not depend on the coloring.
pub fn seifert_matrix_divide(d: &Divide) -> Result<SeifertMatrix> {
    if !d.is_connected() {
        return Err(Error::Disconnected);
    }
    let regions = d.regions();
    let crossings = d.crossings();
    let inner = regions.inner();
    let mut index: Vec<BasisLabel> = crossings.iter().map(|&p| BasisLabel::Crossing(p)).collect();
    index.extend(inner.iter().map(|&r| BasisLabel::Face(r)));
    let n = index.len();
    let mut pos: HashMap<BasisLabel, usize> = HashMap::new();
    for (i, l) in index.iter().enumerate() {
        pos.insert(*l, i);
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let map = d.map();
    for (i, &p) in crossings.iter().enumerate() {
        for &x in map.rotation(p) {
            if let Some(&j) = pos.get(&BasisLabel::Face(regions.dart_region[x])) {
                m[i][j] += 1;
                m[j][i] += 1;
            }
        }
    }
    for e in 0..map.num_edges() {
        if *map.edge_label(e) != EdgeKind::Interior {
            continue;
        }
        let (r, s) = (regions.dart_region[2 * e], regions.dart_region[2 * e + 1]);
        if r == s {
            continue;
        }
        if let (Some(&i), Some(&j)) = (pos.get(&BasisLabel::Face(r)), pos.get(&BasisLabel::Face(s)))
        {
            m[i][j] += 1;
            m[j][i] += 1;
        }
    }
    Ok(SeifertMatrix { index, entries: m })
}

/// Matrix over black vertices, edges and bounded faces of a star-free code.
pub fn seifert_matrix_code(g: &DiscalGraph) -> Result<SeifertMatrix> {
    if g.has_star() {
        return Err(Error::StarCode);
    }
    let map = g.map();
    let blacks: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| g.color(v) == Color::Black)
        .collect();
    let edges = g.interior_edges();
    let faces = g.bounded_faces();
    let mut index: Vec<BasisLabel> = blacks.iter().map(|&v| BasisLabel::Vertex(v)).collect();
    index.extend(edges.iter().map(|&e| BasisLabel::Edge(e)));
    index.extend((0..faces.len()).map(BasisLabel::Face));
    let n = index.len();
    let pos: HashMap<BasisLabel, usize> = index.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut bump = |a: BasisLabel, b: BasisLabel| {
        if let (Some(&i), Some(&j)) = (pos.get(&a), pos.get(&b)) {
            m[i][j] += 1;
            m[j][i] += 1;
        }
    };
    for &e in &edges {
        for d in [2 * e, 2 * e + 1] {
            bump(BasisLabel::Vertex(map.origin(d)), BasisLabel::Edge(e));
        }
    }
    for (f, walk) in faces.iter().enumerate() {
        for &d in walk {
            bump(BasisLabel::Edge(d / 2), BasisLabel::Face(f));
            bump(BasisLabel::Vertex(map.origin(d)), BasisLabel::Face(f));
        }
    }
    Ok(SeifertMatrix { index, entries: m })
}

/// Tridiagonal matrix with 2 on the diagonal and 1 beside it.
pub fn path_matrix(p: usize) -> Vec<Vec<i64>> {
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Closed form for the determinant of the `E_{p,q,r}` surface.
pub fn det_epqr(p: i64, q: i64, r: i64) -> i64 {
    -p * q * r + p + q + r + 2
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a = to_big(m);
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    a[n - 1][n - 1].clone() * sign
}

fn check_symmetric(m: &[Vec<i64>]) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSymmetric);
        }
        for j in 0..i {
            if row[j] != m[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Inertia by symmetric congruence diagonalization over the rationals.
pub fn inertia(m: &[Vec<i64>]) -> Result<Inertia> {
    check_symmetric(m)?;
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut out = Inertia {
        plus: 0,
        zero: 0,
        minus: 0,
    };
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            a.swap(i, k);
            for row in a.iter_mut() {
                row.swap(i, k);
            }
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // Adding row and column j to i makes the diagonal entry 2 a[i][j].
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for row in a.iter_mut() {
                let v = row[j].clone();
                row[i] += v;
            }
            a.swap(i, k);
            for row in a.iter_mut() {
                row.swap(i, k);
            }
        } else {
            out.zero += n - k;
            break;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for row in a.iter_mut() {
                let v = &f * &row[k];
                row[i] -= v;
            }
        }
        if pivot.is_positive() {
            out.plus += 1;
        } else {
            out.minus += 1;
        }
    }
    Ok(out)
}

/// Positive definiteness via leading principal minors.
pub fn is_maximal(m: &[Vec<i64>]) -> Result<bool> {
    check_symmetric(m)?;
    let n = m.len();
    let mut a = to_big(m);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Ok(false);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(true)
}

/// Signature of the fiber surface of `d`.
pub fn signature(d: &Divide) -> Result<i64> {
    Ok(inertia(&seifert_matrix_divide(d)?.entries)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::divide_from_code;
    use crate::divide_ops::tests::Q;
    use crate::oracle::inertia_by_sturm;

    const X_CODE: &str = "v 0 black : 0 2 4 6\nv 1 white : 1\nv 2 white : 3\nv 3 white : 5\nv 4 white : 7\ne 0 1\ne 2 3\ne 4 5\ne 6 7\nouter : 0\n";

    fn sorted_rows(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut rows: Vec<Vec<i64>> = m
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r
            })
            .collect();
        rows.sort();
        rows
    }

    #[test]
    fn q_matrix() {
        let d = Divide::from_text(Q).unwrap();
        let s = seifert_matrix_divide(&d).unwrap();
        let middle = d.regions().walks.iter().position(|w| w.len() == 2).unwrap();
        let inner = (0..3)
            .find(|&r| r != middle && !d.regions().touches_boundary[r])
            .unwrap();
        let order: Vec<usize> = [
            BasisLabel::Crossing(0),
            BasisLabel::Face(inner),
            BasisLabel::Face(middle),
        ]
        .iter()
        .map(|l| s.index.iter().position(|x| x == l).unwrap())
        .collect();
        assert_eq!(
            s.permuted(&order).entries,
            vec![vec![2, 1, 2], vec![1, 2, 1], vec![2, 1, 2]]
        );
        assert_eq!(determinant(&s.entries), BigInt::zero());
        assert_eq!(
            inertia(&s.entries).unwrap(),
            Inertia {
                plus: 2,
                zero: 1,
                minus: 0
            }
        );
        assert!(!is_maximal(&s.entries).unwrap());
    }

    #[test]
    fn x_matrix() {
        let g = DiscalGraph::from_text(X_CODE).unwrap();
        let d = divide_from_code(&g).unwrap();
        let s = seifert_matrix_divide(&d).unwrap();
        let want = vec![
            vec![2, 1, 1, 1, 1],
            vec![1, 2, 0, 0, 0],
            vec![1, 0, 2, 0, 0],
            vec![1, 0, 0, 2, 0],
            vec![1, 0, 0, 0, 2],
        ];
        assert_eq!(sorted_rows(&s.entries), sorted_rows(&want));
        assert_eq!(
            sorted_rows(&seifert_matrix_code(&g).unwrap().entries),
            sorted_rows(&want)
        );
        assert_eq!(determinant(&s.entries), BigInt::zero());
        assert_eq!(
            inertia(&s.entries).unwrap(),
            Inertia {
                plus: 4,
                zero: 1,
                minus: 0
            }
        );
    }

    #[test]
    fn circle_matrix() {
        let s = seifert_matrix_divide(&Divide::circle()).unwrap();
        assert_eq!(s.entries, vec![vec![2]]);
    }

    #[test]
    fn path_determinants() {
        for p in 0..=10 {
            let m = path_matrix(p);
            assert_eq!(determinant(&m), BigInt::from(p as i64 + 1));
            assert!(is_maximal(&m).unwrap());
            assert_eq!(
                inertia(&m).unwrap(),
                Inertia {
                    plus: p,
                    zero: 0,
                    minus: 0
                }
            );
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(det_epqr(2, 2, 2), 0);
        assert_eq!(det_epqr(1, 2, 5), 0);
        for r in 1..10 {
            assert_eq!(det_epqr(1, 1, r), 4);
        }
    }

    #[test]
    fn zero_diagonal_and_oracle() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0, 1], vec![0, 0, 2], vec![1, 2, 0]],
            vec![vec![2, 1, 2], vec![1, 2, 1], vec![2, 1, 2]],
            vec![vec![-3, 1, 0], vec![1, 0, 0], vec![0, 0, 0]],
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 9]],
        ];
        for m in cases {
            let det = determinant(&m);
            assert_eq!(
                inertia(&m).unwrap(),
                inertia_by_sturm(&m, &det).unwrap(),
                "{m:?}"
            );
        }
        assert_eq!(
            inertia(&[vec![0, 1], vec![1, 0]]).unwrap(),
            Inertia {
                plus: 1,
                zero: 0,
                minus: 1
            }
        );
        assert!(matches!(
            inertia(&[vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric)
        ));
    }
}
