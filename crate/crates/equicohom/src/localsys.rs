//! Coefficient data over the orbit category: diagrams of abelian groups,
//! diagrams of finite groups, actions, group-valued edge cocycles, and path
//! systems.
//!
//! The fundamental groupoid itself is never computed. Its computable
//! shadow is the quadruple (M0, pi, phi, kappa) together with a based path
//! system; coefficient morphisms are conjugated out of edge labels and path
//! holonomies. Holonomy multiplies later edges on the left, matching the
//! cocycle orientation `kappa(d1 y) = kappa(d0 y) * kappa(d2 y)` used
//! throughout.

use std::collections::BTreeMap;

use crate::equivariant::{orbits_stabilizers, FinGroup, GSimplicialSet, OrbitCategory};
use crate::error::{Error, Result};
use crate::simplicial::FormalSimplex;
use crate::zmodule::{AbHom, FGAbelianGroup};

/// Contravariant diagram of abelian groups: one group per subgroup, one
/// homomorphism `groups[dst] -> groups[src]` per orbit-category morphism.
#[derive(Debug, Clone)]
pub struct OGAbelianGroup {
    pub groups: Vec<FGAbelianGroup>,
    pub maps: Vec<AbHom>,
}

impl OGAbelianGroup {
    pub fn constant(oc: &OrbitCategory, group: FGAbelianGroup) -> Self {
        let groups = vec![group.clone(); oc.subgroup_count()];
        let maps = oc.morphisms.iter().map(|_| AbHom::identity(&group)).collect();
        OGAbelianGroup { groups, maps }
    }

    pub fn group(&self, h: usize) -> &FGAbelianGroup {
        &self.groups[h]
    }

    pub fn map(&self, morphism: usize) -> &AbHom {
        &self.maps[morphism]
    }

    pub fn validate(&self, oc: &OrbitCategory) -> Vec<String> {
        let mut bad = Vec::new();
        if self.groups.len() != oc.subgroup_count() || self.maps.len() != oc.morphisms.len() {
            bad.push("coefficient diagram does not cover the orbit category".to_string());
            return bad;
        }
        for (id, m) in oc.morphisms.iter().enumerate() {
            let hom = &self.maps[id];
            if hom.domain.generators() != self.groups[m.dst].generators()
                || hom.codomain.generators() != self.groups[m.src].generators()
            {
                bad.push(format!("coefficient map {id} has mismatched shape"));
                continue;
            }
            if !hom.is_well_defined() {
                bad.push(format!("coefficient map {id} does not respect relations"));
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for h in 0..oc.subgroup_count() {
            let id = oc.identity_morphism(h);
            if !self.maps[id].equals(&AbHom::identity(&self.groups[h])) {
                bad.push(format!("identity morphism at subgroup {h} is not the identity"));
            }
        }
        for (m2, s) in oc.morphisms.iter().enumerate() {
            for (m1, f) in oc.morphisms.iter().enumerate() {
                if f.dst != s.src {
                    continue;
                }
                let c = oc.compose(m2, m1);
                let composite = self.maps[m1].compose(&self.maps[m2]);
                if !self.maps[c].equals(&composite) {
                    bad.push(format!(
                        "contravariant functoriality fails for morphisms {m1} then {m2}"
                    ));
                }
            }
        }
        bad
    }
}

/// Contravariant diagram of finite groups.
#[derive(Debug, Clone)]
pub struct OGGroup {
    pub groups: Vec<FinGroup>,
    /// maps[m][a]: image in groups[src] of the element a of groups[dst].
    pub maps: Vec<Vec<usize>>,
}

impl OGGroup {
    pub fn constant(oc: &OrbitCategory, group: FinGroup) -> Self {
        let maps = oc
            .morphisms
            .iter()
            .map(|_| (0..group.order()).collect())
            .collect();
        OGGroup {
            groups: vec![group; oc.subgroup_count()],
            maps,
        }
    }

    pub fn group(&self, h: usize) -> &FinGroup {
        &self.groups[h]
    }

    pub fn map(&self, morphism: usize, a: usize) -> usize {
        self.maps[morphism][a]
    }

    pub fn validate(&self, oc: &OrbitCategory) -> Vec<String> {
        let mut bad = Vec::new();
        if self.groups.len() != oc.subgroup_count() || self.maps.len() != oc.morphisms.len() {
            bad.push("group diagram does not cover the orbit category".to_string());
            return bad;
        }
        for (id, m) in oc.morphisms.iter().enumerate() {
            let f = &self.maps[id];
            let dom = &self.groups[m.dst];
            let cod = &self.groups[m.src];
            if f.len() != dom.order() || f.iter().any(|&v| v >= cod.order()) {
                bad.push(format!("group map {id} has the wrong shape"));
                continue;
            }
            for a in 0..dom.order() {
                for b in 0..dom.order() {
                    if f[dom.mul(a, b)] != cod.mul(f[a], f[b]) {
                        bad.push(format!("group map {id} is not a homomorphism"));
                    }
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for h in 0..oc.subgroup_count() {
            let id = oc.identity_morphism(h);
            if self.maps[id] != (0..self.groups[h].order()).collect::<Vec<_>>() {
                bad.push(format!("group identity morphism at subgroup {h} is not the identity"));
            }
        }
        for (m2, s) in oc.morphisms.iter().enumerate() {
            for (m1, f) in oc.morphisms.iter().enumerate() {
                if f.dst != s.src {
                    continue;
                }
                let c = oc.compose(m2, m1);
                let dom = &self.groups[s.dst];
                for a in 0..dom.order() {
                    if self.maps[c][a] != self.maps[m1][self.maps[m2][a]] {
                        bad.push(format!(
                            "group functoriality fails for morphisms {m1} then {m2}"
                        ));
                    }
                }
            }
        }
        bad
    }
}

/// Naturally varying action of pi on M0 by automorphisms.
#[derive(Debug, Clone)]
pub struct OGAction {
    /// per_subgroup[h][a]: the automorphism of M0(G/H) given by a.
    pub per_subgroup: Vec<Vec<AbHom>>,
}

impl OGAction {
    pub fn trivial(oc: &OrbitCategory, m0: &OGAbelianGroup, pi: &OGGroup) -> Self {
        let per_subgroup = (0..oc.subgroup_count())
            .map(|h| {
                (0..pi.groups[h].order())
                    .map(|_| AbHom::identity(&m0.groups[h]))
                    .collect()
            })
            .collect();
        OGAction { per_subgroup }
    }

    pub fn act(&self, h: usize, a: usize) -> &AbHom {
        &self.per_subgroup[h][a]
    }

    /// phi(a)^{-1}, computed as phi(a^{-1}).
    pub fn act_inverse(&self, pi: &OGGroup, h: usize, a: usize) -> &AbHom {
        self.act(h, pi.groups[h].inv(a))
    }

    pub fn validate(&self, oc: &OrbitCategory, m0: &OGAbelianGroup, pi: &OGGroup) -> Vec<String> {
        let mut bad = Vec::new();
        if self.per_subgroup.len() != oc.subgroup_count() {
            bad.push("action does not cover the orbit category".to_string());
            return bad;
        }
        for h in 0..oc.subgroup_count() {
            let group = &pi.groups[h];
            let acts = &self.per_subgroup[h];
            if acts.len() != group.order() {
                bad.push(format!("action at subgroup {h} misses some group elements"));
                continue;
            }
            let idh = AbHom::identity(&m0.groups[h]);
            for (a, hom) in acts.iter().enumerate() {
                if hom.matrix.rows() != m0.groups[h].generators()
                    || hom.matrix.cols() != m0.groups[h].generators()
                {
                    bad.push(format!("action of element {a} at subgroup {h} has wrong shape"));
                    continue;
                }
                if !hom.is_well_defined() {
                    bad.push(format!(
                        "action of element {a} at subgroup {h} does not respect relations"
                    ));
                }
                let inv = &acts[group.inv(a)];
                if !hom.compose(inv).equals(&idh) || !inv.compose(hom).equals(&idh) {
                    bad.push(format!(
                        "action of element {a} at subgroup {h} is not invertible"
                    ));
                }
            }
            if !acts[group.identity()].equals(&idh) {
                bad.push(format!("identity of pi acts nontrivially at subgroup {h}"));
            }
            for a in 0..group.order() {
                for b in 0..group.order() {
                    let lhs = &acts[group.mul(a, b)];
                    let rhs = acts[a].compose(&acts[b]);
                    if !lhs.equals(&rhs) {
                        bad.push(format!(
                            "action at subgroup {h} is not a homomorphism at ({a},{b})"
                        ));
                    }
                }
            }
        }
        if !bad.is_empty() {
            return bad;
        }
        for (id, m) in oc.morphisms.iter().enumerate() {
            let m0_map = &m0.maps[id];
            for a in 0..pi.groups[m.dst].order() {
                let lhs = m0_map.compose(self.act(m.dst, a));
                let rhs = self.act(m.src, pi.map(id, a)).compose(m0_map);
                if !lhs.equals(&rhs) {
                    bad.push(format!(
                        "action is not natural along morphism {id} at element {a}"
                    ));
                }
            }
        }
        bad
    }
}

/// The bundle (M0, pi, phi); validated as a whole.
#[derive(Debug, Clone)]
pub struct CoefficientData {
    pub m0: OGAbelianGroup,
    pub pi: OGGroup,
    pub phi: OGAction,
}

impl CoefficientData {
    pub fn validate(&self, oc: &OrbitCategory) -> Vec<String> {
        let mut bad = self.m0.validate(oc);
        bad.extend(self.pi.validate(oc));
        if bad.is_empty() {
            bad.extend(self.phi.validate(oc, &self.m0, &self.pi));
        }
        bad
    }
}

/// Group-valued labels on the fixed nondegenerate edges, per subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingCocycle {
    /// labels[h]: ambient edge index -> element of pi(G/H).
    pub labels: Vec<BTreeMap<usize, usize>>,
}

impl TwistingCocycle {
    /// Value on an edge of X^H; degenerate edges evaluate to the identity.
    pub fn eval_edge(&self, pi: &OGGroup, h: usize, edge: &FormalSimplex) -> Result<usize> {
        if edge.dim() != 1 {
            return Err(Error::DimensionMismatch(
                "twisting labels live on edges".to_string(),
            ));
        }
        if !edge.is_nondegenerate() {
            return Ok(pi.groups[h].identity());
        }
        self.labels[h].get(&edge.base.idx).copied().ok_or_else(|| {
            Error::Internal(format!(
                "missing twisting label at subgroup {h}, edge {}",
                edge.base.idx
            ))
        })
    }
}

/// The value forced on a q-simplex by the twisting identities: the label of
/// its leading edge (vertices 0 and 1), with degenerate edges giving the
/// identity. The redundant audit in `validate_twisting` rechecks all four
/// defining identities against this closed form.
pub fn twist_of_simplex(
    gset: &GSimplicialSet,
    pi: &OGGroup,
    kappa: &TwistingCocycle,
    h: usize,
    x: &FormalSimplex,
) -> Result<usize> {
    if x.dim() == 0 {
        return Err(Error::DimensionMismatch(
            "twisting of a vertex is undefined".to_string(),
        ));
    }
    let edge = gset.space.leading_edge(x)?;
    kappa.eval_edge(pi, h, &edge)
}

#[derive(Debug, Clone, Default)]
pub struct TwistReport {
    pub violations: Vec<String>,
}

impl TwistReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_twisting(
    gset: &GSimplicialSet,
    oc: &OrbitCategory,
    pi: &OGGroup,
    kappa: &TwistingCocycle,
) -> TwistReport {
    let mut violations = Vec::new();
    let d = gset.truncation();
    if kappa.labels.len() != oc.subgroup_count() {
        violations.push("twisting labels do not cover every subgroup".to_string());
        return TwistReport { violations };
    }

    // Completeness: labels exactly on the H-fixed nondegenerate edges.
    for h in 0..oc.subgroup_count() {
        let mask = gset.fixed_mask(oc.subgroup_elements(h));
        if d >= 1 {
            for e in 0..gset.space.count(1) {
                let has = kappa.labels[h].contains_key(&e);
                if mask[1][e] && !has {
                    violations.push(format!(
                        "subgroup {h}: edge {} has no twisting label",
                        gset.space.name(crate::simplicial::SimplexRef { dim: 1, idx: e })
                    ));
                }
                if !mask[1][e] && has {
                    violations.push(format!(
                        "subgroup {h}: label on edge {} outside the fixed complex",
                        gset.space.name(crate::simplicial::SimplexRef { dim: 1, idx: e })
                    ));
                }
            }
            for (&e, &v) in &kappa.labels[h] {
                if e >= gset.space.count(1) || v >= pi.groups[h].order() {
                    violations.push(format!("subgroup {h}: label table entry {e} out of range"));
                }
            }
        }
    }
    if !violations.is_empty() {
        return TwistReport { violations };
    }

    // Cocycle condition on every fixed nondegenerate 2-simplex.
    if d >= 2 {
        for h in 0..oc.subgroup_count() {
            let mask = gset.fixed_mask(oc.subgroup_elements(h));
            let group = &pi.groups[h];
            for t in 0..gset.space.count(2) {
                if !mask[2][t] {
                    continue;
                }
                let x = FormalSimplex::nondegenerate(2, t);
                let eval = |i: usize| {
                    kappa.eval_edge(pi, h, &gset.space.face(&x, i).unwrap())
                };
                let (k0, k1, k2) = (eval(0).unwrap(), eval(1).unwrap(), eval(2).unwrap());
                if k1 != group.mul(k0, k2) {
                    violations.push(format!(
                        "subgroup {h}: cocycle fails on 2-simplex {}",
                        gset.space.name(crate::simplicial::SimplexRef { dim: 2, idx: t })
                    ));
                }
            }
        }
    }

    // Naturality along every orbit-category morphism.
    for (id, m) in oc.morphisms.iter().enumerate() {
        let dst_mask = gset.fixed_mask(oc.subgroup_elements(m.dst));
        if d < 1 {
            continue;
        }
        for e in 0..gset.space.count(1) {
            if !dst_mask[1][e] {
                continue;
            }
            let moved = gset.act_index(m.rep, 1, e);
            let lhs = kappa.labels[m.src].get(&moved).copied();
            let rhs = kappa.labels[m.dst].get(&e).map(|&v| pi.map(id, v));
            if lhs != rhs {
                violations.push(format!(
                    "naturality fails along morphism {id} at edge {}",
                    gset.space.name(crate::simplicial::SimplexRef { dim: 1, idx: e })
                ));
            }
        }
    }

    // Redundant audit of the four twisting-function identities for the
    // derived values, over every formal simplex of every fixed complex.
    for h in 0..oc.subgroup_count() {
        let mask = gset.fixed_mask(oc.subgroup_elements(h));
        let group = &pi.groups[h];
        for q in 1..=d {
            for x in gset.space.all_formal(q) {
                if !mask[x.base.dim][x.base.idx] {
                    continue;
                }
                let kq = match twist_of_simplex(gset, pi, kappa, h, &x) {
                    Ok(v) => v,
                    Err(e) => {
                        violations.push(format!("subgroup {h}: {e}"));
                        continue;
                    }
                };
                if q >= 2 {
                    let k_d0 =
                        twist_of_simplex(gset, pi, kappa, h, &gset.space.face(&x, 0).unwrap())
                            .unwrap();
                    let k_d1 =
                        twist_of_simplex(gset, pi, kappa, h, &gset.space.face(&x, 1).unwrap())
                            .unwrap();
                    if kq != group.mul(group.inv(k_d0), k_d1) {
                        violations.push(format!(
                            "subgroup {h}: face-zero identity fails at {}",
                            gset.space.display(&x)
                        ));
                    }
                    for j in 2..=q {
                        let kf = twist_of_simplex(
                            gset,
                            pi,
                            kappa,
                            h,
                            &gset.space.face(&x, j).unwrap(),
                        )
                        .unwrap();
                        if kq != kf {
                            violations.push(format!(
                                "subgroup {h}: face-{j} identity fails at {}",
                                gset.space.display(&x)
                            ));
                        }
                    }
                }
                if q + 1 <= d {
                    for j in 1..=q {
                        let sj = gset.space.degeneracy(&x, j);
                        let ks = twist_of_simplex(gset, pi, kappa, h, &sj).unwrap();
                        if ks != kq {
                            violations.push(format!(
                                "subgroup {h}: degeneracy-{j} identity fails at {}",
                                gset.space.display(&x)
                            ));
                        }
                    }
                    let s0 = gset.space.degeneracy(&x, 0);
                    let k0 = twist_of_simplex(gset, pi, kappa, h, &s0).unwrap();
                    if k0 != group.identity() {
                        violations.push(format!(
                            "subgroup {h}: normalization fails at {}",
                            gset.space.display(&x)
                        ));
                    }
                }
            }
        }
    }

    TwistReport { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    pub edge: usize,
    pub forward: bool,
}

/// Base-pointed edge-paths to each vertex-orbit representative, translated
/// equivariantly to the rest of the orbit.
#[derive(Debug, Clone)]
pub struct PathSystem {
    pub base_vertex: usize,
    /// keyed by the orbit-representative vertex index.
    pub paths: BTreeMap<usize, Vec<PathStep>>,
}

impl PathSystem {
    /// Structural validation. Requires the base vertex to be G-fixed, every
    /// vertex-orbit representative to carry a path from the base vertex
    /// lying inside its stabilizer's fixed complex, and the base vertex's
    /// own path to be empty (the basing convention the comparison maps
    /// rely on).
    pub fn validate(&self, gset: &GSimplicialSet) -> Vec<String> {
        let mut bad = Vec::new();
        let space = &gset.space;
        if self.base_vertex >= space.count(0) {
            bad.push("base vertex out of range".to_string());
            return bad;
        }
        let all: Vec<usize> = (0..gset.group.order()).collect();
        let fixed = gset.fixed_mask(&all);
        if !fixed[0][self.base_vertex] {
            bad.push("base vertex is not fixed by the whole group".to_string());
        }
        let orbits = orbits_stabilizers(gset, 0);
        for orbit in &orbits {
            let Some(steps) = self.paths.get(&orbit.rep) else {
                bad.push(format!(
                    "no path to orbit representative {}",
                    space.name(crate::simplicial::SimplexRef { dim: 0, idx: orbit.rep })
                ));
                continue;
            };
            if orbit.rep == self.base_vertex && !steps.is_empty() {
                bad.push("path at the base vertex must be empty".to_string());
            }
            let stab_mask = gset.fixed_mask(&orbit.stabilizer);
            let mut cur = self.base_vertex;
            for (k, step) in steps.iter().enumerate() {
                if step.edge >= space.count(1) {
                    bad.push(format!("path step {k} to {} uses a missing edge", orbit.rep));
                    break;
                }
                if !stab_mask[1][step.edge] {
                    bad.push(format!(
                        "path step {k} to {} leaves the stabilizer's fixed complex",
                        space.name(crate::simplicial::SimplexRef { dim: 0, idx: orbit.rep })
                    ));
                }
                let target = space.stored_face(1, step.edge, 0).base.idx;
                let source = space.stored_face(1, step.edge, 1).base.idx;
                let (from, to) = if step.forward {
                    (source, target)
                } else {
                    (target, source)
                };
                if from != cur {
                    bad.push(format!(
                        "path to {} breaks at step {k}",
                        space.name(crate::simplicial::SimplexRef { dim: 0, idx: orbit.rep })
                    ));
                    break;
                }
                cur = to;
            }
            if bad.is_empty() && cur != orbit.rep {
                bad.push(format!(
                    "path does not end at {}",
                    space.name(crate::simplicial::SimplexRef { dim: 0, idx: orbit.rep })
                ));
            }
        }
        for &k in self.paths.keys() {
            if !orbits.iter().any(|o| o.rep == k) {
                bad.push(format!("path keyed by non-representative vertex {k}"));
            }
        }
        bad
    }
}

/// The full local-coefficient context: coefficients, raw edge labels, and a
/// path system, with the vertex-orbit translation data cached.
pub struct LocalSystem<'a> {
    pub gset: &'a GSimplicialSet,
    pub oc: &'a OrbitCategory,
    pub coeffs: &'a CoefficientData,
    pub raw: &'a TwistingCocycle,
    pub paths: &'a PathSystem,
    /// per vertex: (orbit representative, minimal g with g*rep = vertex)
    vertex_transport: Vec<(usize, usize)>,
}

impl<'a> LocalSystem<'a> {
    pub fn new(
        gset: &'a GSimplicialSet,
        oc: &'a OrbitCategory,
        coeffs: &'a CoefficientData,
        raw: &'a TwistingCocycle,
        paths: &'a PathSystem,
    ) -> Result<Self> {
        let orbits = orbits_stabilizers(gset, 0);
        let mut vertex_transport = vec![(usize::MAX, usize::MAX); gset.space.count(0)];
        for orbit in &orbits {
            for &x in &orbit.elements {
                let g = (0..gset.group.order())
                    .find(|&g| gset.act_index(g, 0, orbit.rep) == x)
                    .expect("orbit element reachable");
                vertex_transport[x] = (orbit.rep, g);
            }
        }
        Ok(LocalSystem {
            gset,
            oc,
            coeffs,
            raw,
            paths,
            vertex_transport,
        })
    }

    /// The path to an arbitrary vertex: the representative's path translated
    /// by the chosen transporter. Stabilizer elements fix every edge of the
    /// representative's path, so the choice of transporter does not matter.
    pub fn path_for_vertex(&self, vertex: usize) -> Result<Vec<PathStep>> {
        let (rep, g) = self.vertex_transport[vertex];
        let steps = self
            .paths
            .paths
            .get(&rep)
            .ok_or_else(|| Error::PathMissing(format!("vertex {vertex} has no based path")))?;
        Ok(steps
            .iter()
            .map(|s| PathStep {
                edge: self.gset.act_index(g, 1, s.edge),
                forward: s.forward,
            })
            .collect())
    }

    /// Product of raw labels along a path at subgroup level `h`, later steps
    /// multiplied on the left, inverses on backward steps.
    pub fn raw_holonomy(&self, h: usize, steps: &[PathStep]) -> Result<usize> {
        let group = &self.coeffs.pi.groups[h];
        let mut acc = group.identity();
        for step in steps {
            let lab = self
                .raw
                .eval_edge(&self.coeffs.pi, h, &FormalSimplex::nondegenerate(1, step.edge))?;
            let lab = if step.forward { lab } else { group.inv(lab) };
            acc = group.mul(lab, acc);
        }
        Ok(acc)
    }

    /// The based class of the chosen path to `vertex`, at subgroup level `h`.
    pub fn path_class(&self, h: usize, vertex: usize) -> Result<usize> {
        let steps = self.path_for_vertex(vertex)?;
        self.raw_holonomy(h, &steps)
    }

    /// The based loop class of a single (possibly degenerate) edge:
    /// path-to-target^{-1} * raw(edge) * path-to-source.
    pub fn based_class_of_edge(&self, h: usize, edge: &FormalSimplex) -> Result<usize> {
        let group = &self.coeffs.pi.groups[h];
        let label = self.raw.eval_edge(&self.coeffs.pi, h, edge)?;
        let source = self.gset.space.face(edge, 1)?.base.idx;
        let target = self.gset.space.face(edge, 0)?.base.idx;
        let xs = self.path_class(h, source)?;
        let xt = self.path_class(h, target)?;
        Ok(group.mul(group.inv(xt), group.mul(label, xs)))
    }

    /// The based class of an explicit edge-path starting at `start`.
    pub fn based_class_of_path(&self, h: usize, start: usize, steps: &[PathStep]) -> Result<usize> {
        let group = &self.coeffs.pi.groups[h];
        let mut cur = start;
        for step in steps {
            let target = self.gset.space.stored_face(1, step.edge, 0).base.idx;
            let source = self.gset.space.stored_face(1, step.edge, 1).base.idx;
            cur = if step.forward {
                if cur != source {
                    return Err(Error::Validation("path does not chain".to_string()));
                }
                target
            } else {
                if cur != target {
                    return Err(Error::Validation("path does not chain".to_string()));
                }
                source
            };
        }
        let hol = self.raw_holonomy(h, steps)?;
        let xs = self.path_class(h, start)?;
        let xt = self.path_class(h, cur)?;
        Ok(group.mul(group.inv(xt), group.mul(hol, xs)))
    }

    /// The coefficient morphism of a groupoid morphism presented as an
    /// orbit-category morphism plus a connecting edge in the source fixed
    /// complex: the inverse action of its based class composed with the
    /// coefficient map of the orbit morphism.
    pub fn coefficient_morphism_edge(&self, morphism: usize, edge: &FormalSimplex) -> Result<AbHom> {
        let m = self.oc.morphism(morphism);
        let alpha = self.based_class_of_edge(m.src, edge)?;
        let inv_act = self
            .coeffs
            .phi
            .act_inverse(&self.coeffs.pi, m.src, alpha)
            .clone();
        Ok(inv_act.compose(self.coeffs.m0.map(morphism)))
    }

    /// Same, with the connecting data given as an edge-path from `start`.
    pub fn coefficient_morphism_path(
        &self,
        morphism: usize,
        start: usize,
        steps: &[PathStep],
    ) -> Result<AbHom> {
        let m = self.oc.morphism(morphism);
        let alpha = self.based_class_of_path(m.src, start, steps)?;
        let inv_act = self
            .coeffs
            .phi
            .act_inverse(&self.coeffs.pi, m.src, alpha)
            .clone();
        Ok(inv_act.compose(self.coeffs.m0.map(morphism)))
    }
}

/// Conjugate raw edge labels through the path system: the label of an edge
/// from x to y becomes class(y)^{-1} * raw * class(x). The output is again
/// a twisting cocycle, now based at the chosen vertex.
pub fn rebase_twisting(system: &LocalSystem<'_>) -> Result<TwistingCocycle> {
    let mut labels = Vec::with_capacity(system.oc.subgroup_count());
    for h in 0..system.oc.subgroup_count() {
        let mask = system.gset.fixed_mask(system.oc.subgroup_elements(h));
        let mut table = BTreeMap::new();
        if system.gset.truncation() >= 1 {
            for e in 0..system.gset.space.count(1) {
                if !mask[1][e] {
                    continue;
                }
                let edge = FormalSimplex::nondegenerate(1, e);
                table.insert(e, system.based_class_of_edge(h, &edge)?);
            }
        }
        labels.push(table);
    }
    Ok(TwistingCocycle { labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialSet;
    use crate::testkit::*;
    use crate::zmodule::IntMatrix;

    fn theta_setup() -> (GSimplicialSet, OrbitCategory) {
        let theta = theta_graph();
        let oc = OrbitCategory::new(theta.group.clone());
        (theta, oc)
    }

    #[test]
    fn derived_twist_values() {
        let tri = triangle();
        let oc = OrbitCategory::new(tri.group.clone());
        let coeffs = coeffs_s3_sign(&oc);
        // Labels a=1 on edge 01, c=3 on edge 02, b=2 on edge 12 (c = b*a).
        let kappa = uniform_twist(&tri, &oc, |e| [1, 3, 2][e]);
        assert!(validate_twisting(&tri, &oc, &coeffs.pi, &kappa).is_valid());

        let top = FormalSimplex::nondegenerate(2, 0);
        // A nondegenerate 2-simplex takes the value of its leading edge.
        assert_eq!(twist_of_simplex(&tri, &coeffs.pi, &kappa, 0, &top).unwrap(), 1);
        // s_0 of a vertex is degenerate: identity.
        let v = FormalSimplex::nondegenerate(0, 0);
        let s0v = tri.space.degeneracy(&v, 0);
        assert_eq!(twist_of_simplex(&tri, &coeffs.pi, &kappa, 0, &s0v).unwrap(), 0);
        // s_1 of an edge keeps the edge's value.
        let e01 = FormalSimplex::nondegenerate(1, 0);
        let s1e = tri.space.degeneracy(&e01, 1);
        assert_eq!(twist_of_simplex(&tri, &coeffs.pi, &kappa, 0, &s1e).unwrap(), 1);
        // s_0 of an edge is normalized away.
        let s0e = tri.space.degeneracy(&e01, 0);
        assert_eq!(twist_of_simplex(&tri, &coeffs.pi, &kappa, 0, &s0e).unwrap(), 0);
    }

    #[test]
    fn cocycle_convention_is_pinned() {
        let tri = triangle();
        let oc = OrbitCategory::new(tri.group.clone());
        let coeffs = coeffs_s3_sign(&oc);
        // c = a*b instead of b*a: rejected (S3 keeps the orders apart).
        let bad = uniform_twist(&tri, &oc, |e| [1, 4, 2][e]);
        let report = validate_twisting(&tri, &oc, &coeffs.pi, &bad);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("cocycle")));
    }

    #[test]
    fn circle_accepts_any_label() {
        let c = circle(2);
        let oc = OrbitCategory::new(c.group.clone());
        let coeffs = coeffs_z_sign(&oc);
        for label in 0..2 {
            let kappa = uniform_twist(&c, &oc, |_| label);
            assert!(validate_twisting(&c, &oc, &coeffs.pi, &kappa).is_valid());
        }
    }

    #[test]
    fn naturality_violation_is_reported() {
        let (theta, oc) = theta_setup();
        let coeffs = coeffs_z_sign(&oc);
        // Swapped edges must carry equal labels under the flip with identity
        // structure maps; breaking that is a naturality violation.
        let kappa = uniform_twist(&theta, &oc, |e| if e == 0 { 1 } else { 0 });
        let report = validate_twisting(&theta, &oc, &coeffs.pi, &kappa);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("naturality")));
    }

    #[test]
    fn rebasing_on_one_vertex_is_identity() {
        let c = circle(2);
        let oc = OrbitCategory::new(c.group.clone());
        let coeffs = coeffs_z_sign(&oc);
        let raw = uniform_twist(&c, &oc, |_| 1);
        let paths = point_paths(0);
        assert!(paths.validate(&c).is_empty());
        let system = LocalSystem::new(&c, &oc, &coeffs, &raw, &paths).unwrap();
        let based = rebase_twisting(&system).unwrap();
        assert_eq!(based, raw);
    }

    #[test]
    fn rebasing_kills_tree_edges() {
        // Path graph v -p1-> m -p2-> w with S3 labels a, b and the obvious
        // tree paths: both based labels collapse to the identity.
        let names = vec![
            vec!["v".into(), "m".into(), "w".into()],
            vec!["p1".into(), "p2".into()],
        ];
        let faces = vec![
            Vec::new(),
            vec![
                vec![
                    FormalSimplex::nondegenerate(0, 1),
                    FormalSimplex::nondegenerate(0, 0),
                ],
                vec![
                    FormalSimplex::nondegenerate(0, 2),
                    FormalSimplex::nondegenerate(0, 1),
                ],
            ],
        ];
        let space = SimplicialSet::new(1, names, faces).unwrap();
        let gset = GSimplicialSet::trivial_action(space);
        let oc = OrbitCategory::new(gset.group.clone());
        let coeffs = coeffs_s3_sign(&oc);
        let raw = uniform_twist(&gset, &oc, |e| [1, 2][e]);
        let mut paths = point_paths(0);
        paths.paths.insert(1, steps(&[(0, true)]));
        paths.paths.insert(2, steps(&[(0, true), (1, true)]));
        assert!(paths.validate(&gset).is_empty());
        let system = LocalSystem::new(&gset, &oc, &coeffs, &raw, &paths).unwrap();
        let based = rebase_twisting(&system).unwrap();
        assert_eq!(based.labels[0][&0], 0);
        assert_eq!(based.labels[0][&1], 0);
    }

    #[test]
    fn rebasing_theta_through_the_fixed_edge() {
        let (theta, oc) = theta_setup();
        let coeffs = coeffs_z_sign(&oc);
        let raw = uniform_twist(&theta, &oc, |e| if e == 2 { 0 } else { 1 });
        let mut paths = point_paths(0);
        paths.paths.insert(1, steps(&[(2, true)]));
        assert!(paths.validate(&theta).is_empty());
        let system = LocalSystem::new(&theta, &oc, &coeffs, &raw, &paths).unwrap();
        let based = rebase_twisting(&system).unwrap();
        assert_eq!(based.labels[0][&0], 1);
        assert_eq!(based.labels[0][&1], 1);
        assert_eq!(based.labels[0][&2], 0);
        assert_eq!(based.labels[1][&2], 0);
        assert!(validate_twisting(&theta, &oc, &coeffs.pi, &based).is_valid());
    }

    #[test]
    fn rebasing_conjugates_under_basepoint_loops() {
        // Wedge of two loops, S3-labelled; prepending the f-loop to every
        // path conjugates every based label by the f label.
        let w = wedge(2);
        let oc = OrbitCategory::new(w.group.clone());
        let coeffs = coeffs_s3_sign(&oc);
        let raw = uniform_twist(&w, &oc, |e| [1, 3][e]);
        let plain = point_paths(0);
        let system = LocalSystem::new(&w, &oc, &coeffs, &raw, &plain).unwrap();
        let based = rebase_twisting(&system).unwrap();
        assert_eq!(based, raw);

        // Deliberately unbased variant: the base vertex path is the f loop.
        let mut looped = point_paths(0);
        looped.paths.insert(0, steps(&[(1, true)]));
        let system2 = LocalSystem::new(&w, &oc, &coeffs, &raw, &looped).unwrap();
        let conj = rebase_twisting(&system2).unwrap();
        let s3 = symmetric_3();
        for e in 0..2 {
            let c = 3; // class of the loop
            let want = s3.mul(s3.inv(c), s3.mul(raw.labels[0][&e], c));
            assert_eq!(conj.labels[0][&e], want);
        }
    }

    #[test]
    fn coefficient_morphism_specializations() {
        let c = circle(2);
        let oc = OrbitCategory::new(c.group.clone());
        let coeffs = coeffs_z_sign(&oc);
        let raw = uniform_twist(&c, &oc, |_| 1);
        let paths = point_paths(0);
        let system = LocalSystem::new(&c, &oc, &coeffs, &raw, &paths).unwrap();
        let id_m = oc.identity_morphism(0);

        // Degenerate connecting edge at the base vertex: the identity.
        let v = FormalSimplex::nondegenerate(0, 0);
        let degenerate = c.space.degeneracy(&v, 0);
        let hom = system.coefficient_morphism_edge(id_m, &degenerate).unwrap();
        assert!(hom.equals(&crate::zmodule::AbHom::identity(coeffs.m0.group(0))));

        // Connecting edge with based class t: the inverse action of t,
        // multiplication by -1 on Z.
        let e = FormalSimplex::nondegenerate(1, 0);
        let hom = system.coefficient_morphism_edge(id_m, &e).unwrap();
        assert_eq!(hom.matrix, IntMatrix::from_i64_rows(&[vec![-1]]));
    }

    #[test]
    fn coefficient_morphisms_compose() {
        let (theta, oc) = theta_setup();
        let coeffs = coeffs_z_sign(&oc);
        let raw = uniform_twist(&theta, &oc, |e| if e == 2 { 0 } else { 1 });
        let mut paths = point_paths(0);
        paths.paths.insert(1, steps(&[(2, true)]));
        let system = LocalSystem::new(&theta, &oc, &coeffs, &raw, &paths).unwrap();

        // Composable morphism data: first a -> b along e1 at the trivial
        // level, then b -> a along f backward, with identity orbit maps.
        let id0 = oc.identity_morphism(0);
        let p1 = steps(&[(0, true)]);
        let p2 = steps(&[(2, false)]);
        let m1 = system.coefficient_morphism_path(id0, 0, &p1).unwrap();
        let m2 = system.coefficient_morphism_path(id0, 1, &p2).unwrap();
        // Concatenated connecting path for the composite morphism.
        let composite_path = steps(&[(0, true), (2, false)]);
        let mc = system
            .coefficient_morphism_path(id0, 0, &composite_path)
            .unwrap();
        assert!(mc.equals(&m1.compose(&m2)));

        // Same along a nontrivial orbit morphism: G/e -> G/e by the flip.
        let flip = oc.morphism_id(0, 0, 1).unwrap();
        let m_flip = system.coefficient_morphism_path(flip, 0, &p1).unwrap();
        let after = system
            .coefficient_morphism_path(id0, 1, &steps(&[(2, false)]))
            .unwrap();
        // Composite orbit morphism is flip again (flip then identity), and
        // the connecting path concatenates p1 with the translate of p2.
        let translated: Vec<PathStep> = p2
            .iter()
            .map(|s| PathStep {
                edge: theta.act_index(1, 1, s.edge),
                forward: s.forward,
            })
            .collect();
        let mut cat = p1.clone();
        cat.extend(translated);
        let mc2 = system.coefficient_morphism_path(flip, 0, &cat).unwrap();
        assert!(mc2.equals(&after.compose(&m_flip)));
    }

    #[test]
    fn translated_paths_do_not_depend_on_the_transporter() {
        let spindle = z4_spindle();
        let oc = OrbitCategory::new(spindle.group.clone());
        let coeffs = coeffs_z_sign(&oc);
        let raw = uniform_twist(&spindle, &oc, |_| 1);
        let mut paths = point_paths(0);
        paths.paths.insert(1, steps(&[(0, true)]));
        assert!(paths.validate(&spindle).is_empty());
        let system = LocalSystem::new(&spindle, &oc, &coeffs, &raw, &paths).unwrap();
        // Both transporters to x2 (g and g^3) translate the path to c2.
        for g in [1usize, 3] {
            assert_eq!(spindle.act_index(g, 0, 1), 2);
            let translated: Vec<PathStep> = paths.paths[&1]
                .iter()
                .map(|s| PathStep {
                    edge: spindle.act_index(g, 1, s.edge),
                    forward: s.forward,
                })
                .collect();
            assert_eq!(system.path_for_vertex(2).unwrap(), translated);
        }
    }

    #[test]
    fn path_validation_reports_gaps() {
        let (theta, _) = theta_setup();
        let missing = point_paths(0);
        let bad = missing.validate(&theta);
        assert!(bad.iter().any(|v| v.contains("no path")));

        let mut wrong = point_paths(0);
        wrong.paths.insert(1, steps(&[(0, false)]));
        let bad = wrong.validate(&theta);
        assert!(!bad.is_empty());

        // A path that chains correctly but runs through an edge not fixed
        // by the target's stabilizer is rejected too.
        let mut unfixed = point_paths(0);
        unfixed.paths.insert(1, steps(&[(0, true)]));
        let bad = unfixed.validate(&theta);
        assert!(bad.iter().any(|v| v.contains("fixed complex")), "{bad:?}");

        let mut unbased = point_paths(0);
        unbased.paths.insert(1, steps(&[(2, true)]));
        unbased.paths.insert(0, steps(&[(2, true), (2, false)]));
        let bad = unbased.validate(&theta);
        assert!(bad.iter().any(|v| v.contains("base vertex")));
    }

    #[test]
    fn coefficient_diagrams_validate() {
        let (_, oc) = theta_setup();
        for coeffs in [coeffs_z_sign(&oc), coeffs_trivial_z(&oc), coeffs_z4_flip(&oc)] {
            assert!(coeffs.validate(&oc).is_empty());
        }
        let oc3 = OrbitCategory::new(symmetric_3());
        assert!(coeffs_s3_sign(&oc3).validate(&oc3).is_empty());

        // A non-natural action is caught: flip acting by -1 at one level
        // and +1 at the other breaks nothing for constant pi... but an
        // inconsistent non-homomorphism does.
        let mut broken = coeffs_z4_flip(&oc);
        broken.phi.per_subgroup[0][1] = crate::zmodule::AbHom::new(
            broken.m0.groups[0].clone(),
            broken.m0.groups[0].clone(),
            IntMatrix::from_i64_rows(&[vec![2]]),
        )
        .unwrap();
        assert!(!broken.validate(&oc).is_empty());
    }
}
