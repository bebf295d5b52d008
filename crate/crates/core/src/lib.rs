pub mod atlas;
pub mod closed;
pub mod coding;
pub mod discal;
pub mod divide;
pub mod divide_ops;
pub mod enumerate;
pub mod error;
pub mod minor;
pub mod oracle;
pub mod plane_map;
pub mod search;
pub mod seifert;

pub use atlas::{
    classify, family_divide, generate_family, prohibited_witness, riii_orbit, Classification,
    Family, FamilySpec, Orbit, Witness, WitnessKind,
};
pub use closed::EdgeKind;
pub use coding::{code, code_with_edges, divide_from_code, divide_from_code_with_crossings};
pub use discal::{validate_discal, Color, DiscalGraph, PlanMap};
pub use divide::{betti, validate_divide, Checkerboard, Divide, Node, Regions, ValidationReport};
pub use divide_ops::{
    apply_riii, desingularize, desingularize_with, riii_sites, subdivide_leq, Desingularized,
    Smoothing,
};
pub use enumerate::{
    check_divide, enumerate_codes, enumerate_divides, estimate, verify_theorem, Bound,
    Counterexample, Record, VerificationReport,
};
pub use error::{Error, Result};
pub use minor::{discal_downset, discal_minor_leq, plan_minor_leq, plan_minor_leq_with};
pub use plane_map::{CanonicalCode, Dart, Label, MapParts, PlaneMap, Vertex};
pub use search::{ReductionSequence, ReductionStep};
pub use seifert::{
    det_epqr, determinant, inertia, is_maximal, path_matrix, seifert_matrix_code,
    seifert_matrix_divide, signature, BasisLabel, Inertia, SeifertMatrix,
};
