use std::sync::OnceLock;

use divide_core::enumerate::DEFAULT_CEILING;
use divide_core::oracle::{characteristic_polynomial, inertia_by_sturm};
use divide_core::{
    code, det_epqr, determinant, enumerate_divides, family_divide, inertia, path_matrix,
    seifert_matrix_divide, Bound, DiscalGraph, Divide, FamilySpec, PlaneMap,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn pool() -> &'static [Divide] {
    static POOL: OnceLock<Vec<Divide>> = OnceLock::new();
    POOL.get_or_init(|| {
        enumerate_divides(Bound::Crossings(3), DEFAULT_CEILING)
            .unwrap()
            .into_iter()
            .filter(|d| !d.is_circle())
            .collect()
    })
}

/// Random renumbering of a map with `v` vertices and `e` edges.
#[derive(Debug, Clone)]
struct Shuffle {
    edges: Vec<usize>,
    flip: Vec<bool>,
    vertices: Vec<usize>,
    shift: Vec<usize>,
}

fn shuffle(v: usize, e: usize) -> impl Strategy<Value = Shuffle> {
    (
        Just((0..e).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), e),
        Just((0..v).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(0usize..8, v),
    )
        .prop_map(|(edges, flip, vertices, shift)| Shuffle {
            edges,
            flip,
            vertices,
            shift,
        })
}

fn divide_and_shuffle() -> impl Strategy<Value = (usize, Shuffle)> {
    (0..pool().len()).prop_flat_map(|i| {
        let m = pool()[i].map();
        (Just(i), shuffle(m.num_vertices(), m.num_edges()))
    })
}

fn renumber<V: divide_core::Label, E: divide_core::Label>(
    m: &PlaneMap<V, E>,
    s: &Shuffle,
) -> PlaneMap<V, E> {
    m.relabeled(&s.edges, &s.flip, &s.vertices, &s.shift)
        .unwrap()
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * (n + 1) / 2).prop_map(move |cells| {
        let mut m = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                m[i][j] = cells[k];
                m[j][i] = cells[k];
                k += 1;
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_numbering((i, s) in divide_and_shuffle()) {
        let d = &pool()[i];
        let r = Divide::from_map(renumber(d.map(), &s)).unwrap();
        prop_assert_eq!(r.canonical_form().unwrap(), d.canonical_form().unwrap());
        let a = seifert_matrix_divide(d).unwrap();
        let b = seifert_matrix_divide(&r).unwrap();
        prop_assert_eq!(determinant(&a.entries), determinant(&b.entries));
        prop_assert_eq!(inertia(&a.entries).unwrap(), inertia(&b.entries).unwrap());
    }

    #[test]
    fn text_round_trip((i, s) in divide_and_shuffle()) {
        let r = Divide::from_map(renumber(pool()[i].map(), &s)).unwrap();
        let back = Divide::from_text(&r.to_text()).unwrap();
        prop_assert_eq!(back.canonical_form().unwrap(), r.canonical_form().unwrap());
    }

    #[test]
    fn code_canonical_form_ignores_numbering(i in 0..pool().len(), side in 0usize..2, seed in any::<u64>()) {
        let d = &pool()[i];
        let c = &d.checkerboards().unwrap()[side];
        let g = code(d, c).unwrap();
        let m = g.map();
        let (v, e) = (m.num_vertices(), m.num_edges());
        let mut edges: Vec<usize> = (0..e).collect();
        let mut vertices: Vec<usize> = (0..v).collect();
        edges.rotate_left((seed as usize) % e.max(1));
        vertices.rotate_left((seed as usize >> 8) % v.max(1));
        let s = Shuffle {
            flip: (0..e).map(|k| (seed >> (k % 64)) & 1 == 1).collect(),
            shift: (0..v).map(|k| (seed as usize >> (k % 32)) & 3).collect(),
            edges,
            vertices,
        };
        let h = DiscalGraph::from_map(renumber(m, &s)).unwrap();
        prop_assert_eq!(h.canonical_form().unwrap(), g.canonical_form().unwrap());
    }

    #[test]
    fn dual_of_dual_is_the_same_map(i in 0..pool().len()) {
        let m = pool()[i].map().map_labels(|_| (), |_| ());
        let dd = m.dual_map().dual_map();
        prop_assert_eq!(dd.canonical_form().unwrap(), m.canonical_form().unwrap());
        prop_assert_eq!(m.dual_map().num_vertices(), m.trace_faces().len());
    }

    #[test]
    fn inertia_methods_agree(m in (1usize..6).prop_flat_map(symmetric)) {
        let det = determinant(&m);
        let n = m.len();
        let c0 = characteristic_polynomial(&m)[0].clone();
        let from_poly = if n % 2 == 0 { c0 } else { -c0 };
        prop_assert_eq!(from_poly, BigRational::from_integer(det.clone()));
        let a = inertia(&m).unwrap();
        prop_assert_eq!(a, inertia_by_sturm(&m, &det).unwrap());
        prop_assert_eq!(a.plus + a.zero + a.minus, n);
        prop_assert_eq!(a.zero == 0, det != BigInt::from(0));
    }

    #[test]
    fn epqr_closed_form(p in 1usize..9, q in 1usize..9, r in 1usize..9) {
        let spec: FamilySpec = format!("E{p},{q},{r}").parse().unwrap();
        let s = seifert_matrix_divide(&family_divide(&spec).unwrap()).unwrap();
        prop_assert_eq!(s.dim(), p + q + r + 1);
        prop_assert_eq!(determinant(&s.entries), BigInt::from(det_epqr(p as i64, q as i64, r as i64)));
    }

    #[test]
    fn path_determinant(p in 1usize..40) {
        prop_assert_eq!(determinant(&path_matrix(p)), BigInt::from(p + 1));
    }
}
