//! Small worked examples shared by the test suites: desk-scale G-simplicial
//! sets and coefficient bundles. Not part of the public API surface.

use std::collections::BTreeMap;

use crate::equivariant::{FinGroup, GSimplicialSet, OrbitCategory};
use crate::localsys::{CoefficientData, OGAbelianGroup, OGAction, OGGroup, PathStep, PathSystem, TwistingCocycle};
use crate::simplicial::{FormalSimplex, SimplicialSet};
use crate::zmodule::{AbHom, FGAbelianGroup, IntMatrix};

pub fn symmetric_3() -> FinGroup {
    // Permutations of {0,1,2} in lex order; (a*b)(x) = a(b(x)).
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let pos = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let mul = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| pos(&[a[b[0]], a[b[1]], a[b[2]]]))
                .collect()
        })
        .collect();
    FinGroup::new(mul).unwrap()
}

pub fn s3_sign(a: usize) -> i64 {
    [1, -1, -1, 1, 1, -1][a]
}

fn edge_faces(target: usize, source: usize) -> Vec<FormalSimplex> {
    vec![
        FormalSimplex::nondegenerate(0, target),
        FormalSimplex::nondegenerate(0, source),
    ]
}

/// Minimal circle (one vertex, one loop), trivial group.
pub fn circle(truncation: usize) -> GSimplicialSet {
    GSimplicialSet::trivial_action(crate::simplicial::minimal_circle(truncation))
}

/// Wedge of two loops at one vertex, trivial group.
pub fn wedge(truncation: usize) -> GSimplicialSet {
    let mut names = vec![vec!["v".into()], vec!["e".into(), "f".into()]];
    let mut faces = vec![Vec::new(), vec![edge_faces(0, 0), edge_faces(0, 0)]];
    for _ in 2..=truncation {
        names.push(Vec::new());
        faces.push(Vec::new());
    }
    GSimplicialSet::trivial_action(SimplicialSet::new(truncation, names, faces).unwrap())
}

/// Vertices a, b; edges e1, e2 swapped by the flip, edge f fixed.
pub fn theta_graph() -> GSimplicialSet {
    let names = vec![
        vec!["a".into(), "b".into()],
        vec!["e1".into(), "e2".into(), "f".into()],
        vec![],
    ];
    let faces = vec![
        Vec::new(),
        vec![edge_faces(1, 0), edge_faces(1, 0), edge_faces(1, 0)],
        Vec::new(),
    ];
    let space = SimplicialSet::new(2, names, faces).unwrap();
    let action = vec![
        vec![vec![0, 1], vec![0, 1, 2], vec![]],
        vec![vec![0, 1], vec![1, 0, 2], vec![]],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap()
}

/// One fixed vertex, two loops swapped by the flip (a free edge orbit).
pub fn wedge_swapped() -> GSimplicialSet {
    let names = vec![
        vec!["v".into()],
        vec!["e1".into(), "e2".into()],
        vec![],
    ];
    let faces = vec![
        Vec::new(),
        vec![edge_faces(0, 0), edge_faces(0, 0)],
        Vec::new(),
    ];
    let space = SimplicialSet::new(2, names, faces).unwrap();
    let action = vec![
        vec![vec![0], vec![0, 1], vec![]],
        vec![vec![0], vec![1, 0], vec![]],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap()
}

/// Cone on two swapped points: fixed apex w, swapped p and q, edges
/// u: p -> w and u': q -> w.
pub fn swapped_cone() -> GSimplicialSet {
    let names = vec![
        vec!["w".into(), "p".into(), "q".into()],
        vec!["u".into(), "u2".into()],
        vec![],
    ];
    let faces = vec![
        Vec::new(),
        vec![edge_faces(0, 1), edge_faces(0, 2)],
        Vec::new(),
    ];
    let space = SimplicialSet::new(2, names, faces).unwrap();
    let action = vec![
        vec![vec![0, 1, 2], vec![0, 1], vec![]],
        vec![vec![0, 2, 1], vec![1, 0], vec![]],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap()
}

/// Two swapped circles; free action, no fixed vertex.
pub fn free_circles() -> GSimplicialSet {
    let names = vec![
        vec!["p".into(), "q".into()],
        vec!["c1".into(), "c2".into()],
        vec![],
    ];
    let faces = vec![
        Vec::new(),
        vec![edge_faces(0, 0), edge_faces(1, 1)],
        Vec::new(),
    ];
    let space = SimplicialSet::new(2, names, faces).unwrap();
    let action = vec![
        vec![vec![0, 1], vec![0, 1], vec![]],
        vec![vec![1, 0], vec![1, 0], vec![]],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap()
}

/// The standard 2-simplex with trivial group, truncated at 3.
pub fn triangle() -> GSimplicialSet {
    GSimplicialSet::trivial_action(crate::simplicial::standard_simplex(2, 3))
}

/// Two 2-cells with the same boundary triangle, swapped by the flip; the
/// boundary is fixed. Fixed complex of the full group is a circle, of the
/// trivial group a 2-sphere.
pub fn pillow() -> GSimplicialSet {
    let names = vec![
        vec!["x0".into(), "x1".into(), "x2".into()],
        vec!["a01".into(), "a12".into(), "a02".into()],
        vec!["t1".into(), "t2".into()],
        vec![],
    ];
    let tri = || {
        vec![
            FormalSimplex::nondegenerate(1, 1), // d0 = edge 12
            FormalSimplex::nondegenerate(1, 2), // d1 = edge 02
            FormalSimplex::nondegenerate(1, 0), // d2 = edge 01
        ]
    };
    let faces = vec![
        Vec::new(),
        vec![edge_faces(1, 0), edge_faces(2, 1), edge_faces(2, 0)],
        vec![tri(), tri()],
        Vec::new(),
    ];
    let space = SimplicialSet::new(3, names, faces).unwrap();
    let action = vec![
        vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1], vec![]],
        vec![vec![0, 1, 2], vec![0, 1, 2], vec![1, 0], vec![]],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap()
}

/// Z/4 acting through its quotient flip: fixed vertex v, swapped x1/x2 with
/// stabilizer {e, g^2}, edges v -> x1 and v -> x2 swapped likewise.
pub fn z4_spindle() -> GSimplicialSet {
    let names = vec![
        vec!["v".into(), "x1".into(), "x2".into()],
        vec!["c1".into(), "c2".into()],
    ];
    let faces = vec![
        Vec::new(),
        vec![edge_faces(1, 0), edge_faces(2, 0)],
    ];
    let space = SimplicialSet::new(1, names, faces).unwrap();
    let v_swap = vec![0, 2, 1];
    let e_swap = vec![1, 0];
    let v_id = vec![0, 1, 2];
    let e_id = vec![0, 1];
    let action = vec![
        vec![v_id.clone(), e_id.clone()],
        vec![v_swap.clone(), e_swap.clone()],
        vec![v_id, e_id],
        vec![v_swap, e_swap],
    ];
    GSimplicialSet::new(space, FinGroup::cyclic(4), action).unwrap()
}

fn sign_hom(g: &FGAbelianGroup, sign: i64) -> AbHom {
    let n = g.generators();
    let mut m = IntMatrix::identity(n);
    if sign < 0 {
        m = m.neg();
    }
    AbHom::new(g.clone(), g.clone(), m).unwrap()
}

/// Constant coefficients: M0 = Z, pi = Z/2 acting by the sign character.
pub fn coeffs_z_sign(oc: &OrbitCategory) -> CoefficientData {
    let z = FGAbelianGroup::free(1);
    let m0 = OGAbelianGroup::constant(oc, z.clone());
    let pi = OGGroup::constant(oc, FinGroup::cyclic(2));
    let per_subgroup = (0..oc.subgroup_count())
        .map(|_| vec![sign_hom(&z, 1), sign_hom(&z, -1)])
        .collect();
    CoefficientData {
        m0,
        pi,
        phi: OGAction { per_subgroup },
    }
}

/// Constant coefficients: M0 = Z, trivial pi.
pub fn coeffs_trivial_z(oc: &OrbitCategory) -> CoefficientData {
    let z = FGAbelianGroup::free(1);
    let m0 = OGAbelianGroup::constant(oc, z);
    let pi = OGGroup::constant(oc, FinGroup::trivial());
    let phi = OGAction::trivial(oc, &m0, &pi);
    CoefficientData { m0, pi, phi }
}

/// Constant coefficients: M0 = Z/4, pi = Z/2 acting by multiplication by 3.
pub fn coeffs_z4_flip(oc: &OrbitCategory) -> CoefficientData {
    let z4 = FGAbelianGroup::cyclic(4);
    let m0 = OGAbelianGroup::constant(oc, z4.clone());
    let pi = OGGroup::constant(oc, FinGroup::cyclic(2));
    let times3 = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_i64_rows(&[vec![3]])).unwrap();
    let per_subgroup = (0..oc.subgroup_count())
        .map(|_| vec![AbHom::identity(&z4), times3.clone()])
        .collect();
    CoefficientData {
        m0,
        pi,
        phi: OGAction { per_subgroup },
    }
}

/// Constant coefficients: M0 = Z, pi = S3 acting by the sign character.
pub fn coeffs_s3_sign(oc: &OrbitCategory) -> CoefficientData {
    let z = FGAbelianGroup::free(1);
    let m0 = OGAbelianGroup::constant(oc, z.clone());
    let s3 = symmetric_3();
    let pi = OGGroup::constant(oc, s3.clone());
    let per_subgroup = (0..oc.subgroup_count())
        .map(|_| (0..6).map(|a| sign_hom(&z, s3_sign(a))).collect())
        .collect();
    CoefficientData {
        m0,
        pi,
        phi: OGAction { per_subgroup },
    }
}

/// Uniform labels on every fixed edge of every subgroup level. Only valid
/// when pi is constant with identity structure maps.
pub fn uniform_twist(gset: &GSimplicialSet, oc: &OrbitCategory, label_of: impl Fn(usize) -> usize) -> TwistingCocycle {
    let labels = (0..oc.subgroup_count())
        .map(|h| {
            let mask = gset.fixed_mask(oc.subgroup_elements(h));
            let mut table = BTreeMap::new();
            if gset.truncation() >= 1 {
                for e in 0..gset.space.count(1) {
                    if mask[1][e] {
                        table.insert(e, label_of(e));
                    }
                }
            }
            table
        })
        .collect();
    TwistingCocycle { labels }
}

/// Empty path at every vertex-orbit representative (all reps must be the
/// base vertex for this to validate; used for one-vertex complexes).
pub fn point_paths(base_vertex: usize) -> PathSystem {
    let mut paths = BTreeMap::new();
    paths.insert(base_vertex, Vec::new());
    PathSystem {
        base_vertex,
        paths,
    }
}

pub fn steps(list: &[(usize, bool)]) -> Vec<PathStep> {
    list.iter()
        .map(|&(edge, forward)| PathStep { edge, forward })
        .collect()
}

/// Minimal 2-sphere: one vertex, one 2-cell with every face degenerate.
pub fn min_sphere() -> GSimplicialSet {
    let s0v = FormalSimplex {
        word: crate::simplicial::DegeneracyWord::new(vec![0]).unwrap(),
        base: crate::simplicial::SimplexRef { dim: 0, idx: 0 },
    };
    let names = vec![vec!["v".into()], vec![], vec!["t".into()], vec![]];
    let faces = vec![
        Vec::new(),
        Vec::new(),
        vec![vec![s0v.clone(), s0v.clone(), s0v]],
        Vec::new(),
    ];
    GSimplicialSet::trivial_action(SimplicialSet::new(3, names, faces).unwrap())
}

/// Theta-graph coefficients with a non-identity structure map: Z at both
/// orbit objects, restriction to the trivial subgroup multiplying by 2,
/// flip acting trivially, pi = Z/2 by sign at both levels.
pub fn coeffs_weighted_theta(oc: &OrbitCategory) -> CoefficientData {
    assert_eq!(oc.subgroup_count(), 2);
    let z = FGAbelianGroup::free(1);
    let maps = oc
        .morphisms
        .iter()
        .map(|m| {
            let d = if m.src == 0 && m.dst == 1 { 2 } else { 1 };
            AbHom::new(z.clone(), z.clone(), IntMatrix::from_i64_rows(&[vec![d]])).unwrap()
        })
        .collect();
    let m0 = OGAbelianGroup {
        groups: vec![z.clone(), z.clone()],
        maps,
    };
    let pi = OGGroup::constant(oc, FinGroup::cyclic(2));
    let per_subgroup = (0..2).map(|_| vec![sign_hom(&z, 1), sign_hom(&z, -1)]).collect();
    CoefficientData {
        m0,
        pi,
        phi: OGAction { per_subgroup },
    }
}
