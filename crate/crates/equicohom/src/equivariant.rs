//! Finite groups, subgroup lattices, the orbit category, and simplicial
//! sets with a group action.
//!
//! Orbit-category morphisms G/H -> G/K are the cosets gK with
//! g^-1 H g contained in K, stored by the minimal element of the coset so
//! that two representatives of the same morphism compare equal.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::simplicial::{FormalSimplex, SimplexRef, SimplicialMap, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FinGroup {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::Validation("group must be nonempty".to_string()));
        }
        for row in &mul {
            if row.len() != order || row.iter().any(|&v| v >= order) {
                return Err(Error::Validation(
                    "multiplication table is not square over 0..order".to_string(),
                ));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::Validation("group has no identity".to_string()))?;
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            let gi = (0..order)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::Validation(format!("element {g} has no inverse")))?;
            inv[g] = gi;
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::Validation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FinGroup {
            order,
            mul,
            identity,
            inv,
        })
    }

    pub fn trivial() -> Self {
        FinGroup::new(vec![vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FinGroup::new(mul).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        // g h g^-1
        self.mul(self.mul(g, h), self.inv(g))
    }

    fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(self.identity);
        loop {
            let mut grew = false;
            let elems: Vec<usize> = set.iter().copied().collect();
            for &a in &elems {
                if set.insert(self.inv(a)) {
                    grew = true;
                }
                for &b in &elems {
                    if set.insert(self.mul(a, b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }
}

/// All subgroups of `g`, each as a sorted element list, ordered by
/// (order, elements).
pub fn subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let trivial: BTreeSet<usize> = [g.identity()].into_iter().collect();
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        let key: Vec<usize> = h.iter().copied().collect();
        if !found.insert(key) {
            continue;
        }
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(x);
            queue.push(g.closure(&seed));
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by_key(|h| (h.len(), h.clone()));
    out
}

/// A morphism G/H -> G/K in the orbit category: the coset g K with
/// g^-1 H g contained in K, keyed by the minimal coset element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub src: usize,
    pub dst: usize,
    pub rep: usize,
}

#[derive(Debug, Clone)]
pub struct OrbitCategory {
    pub group: FinGroup,
    pub subgroups: Vec<Vec<usize>>,
    pub morphisms: Vec<OrbitMorphism>,
    index: BTreeMap<(usize, usize, usize), usize>,
    subgroup_index: BTreeMap<Vec<usize>, usize>,
    /// hom[src][dst] lists morphism ids.
    pub hom: Vec<Vec<Vec<usize>>>,
}

impl OrbitCategory {
    pub fn new(group: FinGroup) -> Self {
        let subs = subgroups(&group);
        let mut subgroup_index = BTreeMap::new();
        for (i, h) in subs.iter().enumerate() {
            subgroup_index.insert(h.clone(), i);
        }
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        let mut hom = vec![vec![Vec::new(); subs.len()]; subs.len()];
        for (hi, h) in subs.iter().enumerate() {
            for (ki, k) in subs.iter().enumerate() {
                let mut seen = BTreeSet::new();
                for g in 0..group.order() {
                    let rep = coset_rep(&group, g, k);
                    if !seen.insert(rep) {
                        continue;
                    }
                    let subconjugate = h
                        .iter()
                        .all(|&x| k.contains(&group.mul(group.mul(group.inv(g), x), g)));
                    if subconjugate {
                        let id = morphisms.len();
                        morphisms.push(OrbitMorphism {
                            src: hi,
                            dst: ki,
                            rep,
                        });
                        index.insert((hi, ki, rep), id);
                        hom[hi][ki].push(id);
                    }
                }
            }
        }
        OrbitCategory {
            group,
            subgroups: subs,
            morphisms,
            index,
            subgroup_index,
            hom,
        }
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn subgroup_elements(&self, h: usize) -> &[usize] {
        &self.subgroups[h]
    }

    pub fn subgroup_id(&self, elements: &[usize]) -> Option<usize> {
        let mut key = elements.to_vec();
        key.sort_unstable();
        key.dedup();
        self.subgroup_index.get(&key).copied()
    }

    pub fn full_subgroup(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn trivial_subgroup(&self) -> usize {
        0
    }

    pub fn morphism(&self, id: usize) -> OrbitMorphism {
        self.morphisms[id]
    }

    pub fn morphism_id(&self, src: usize, dst: usize, g: usize) -> Option<usize> {
        let rep = coset_rep(&self.group, g, &self.subgroups[dst]);
        self.index.get(&(src, dst, rep)).copied()
    }

    pub fn identity_morphism(&self, h: usize) -> usize {
        self.morphism_id(h, h, self.group.identity())
            .expect("identity morphism exists")
    }

    pub fn is_identity(&self, id: usize) -> bool {
        let m = self.morphisms[id];
        m.src == m.dst && self.identity_morphism(m.src) == id
    }

    /// `second o first` where `first: G/H -> G/K`, `second: G/K -> G/L`:
    /// the coset (g1 g2) L.
    pub fn compose(&self, second: usize, first: usize) -> usize {
        let f = self.morphisms[first];
        let s = self.morphisms[second];
        assert_eq!(f.dst, s.src, "morphisms not composable");
        let g = self.group.mul(f.rep, s.rep);
        self.morphism_id(f.src, s.dst, g)
            .expect("composite morphism exists")
    }

    /// Whether H is contained in K as subgroups.
    pub fn is_subgroup_of(&self, h: usize, k: usize) -> bool {
        let kset = &self.subgroups[k];
        self.subgroups[h].iter().all(|x| kset.contains(x))
    }

    pub fn conjugate_subgroup(&self, g: usize, h: usize) -> usize {
        let set: Vec<usize> = self.subgroups[h]
            .iter()
            .map(|&x| self.group.conjugate(g, x))
            .collect();
        self.subgroup_id(&set).expect("conjugate is a subgroup")
    }
}

fn coset_rep(group: &FinGroup, g: usize, k: &[usize]) -> usize {
    k.iter().map(|&x| group.mul(g, x)).min().unwrap()
}

#[derive(Debug, Clone)]
pub struct GSimplicialSet {
    pub space: SimplicialSet,
    pub group: FinGroup,
    /// action[g][q][idx] is where g sends the idx-th nondegenerate q-simplex.
    action: Vec<Vec<Vec<usize>>>,
}

impl GSimplicialSet {
    pub fn new(space: SimplicialSet, group: FinGroup, action: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let gs = GSimplicialSet {
            space,
            group,
            action,
        };
        gs.validate()?;
        Ok(gs)
    }

    pub fn trivial_action(space: SimplicialSet) -> Self {
        let action = vec![(0..=space.truncation())
            .map(|q| (0..space.count(q)).collect())
            .collect()];
        GSimplicialSet {
            space,
            group: FinGroup::trivial(),
            action,
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.space.truncation();
        let n = self.group.order();
        if self.action.len() != n {
            return Err(Error::Validation(
                "action table must cover every group element".to_string(),
            ));
        }
        for (g, per_dim) in self.action.iter().enumerate() {
            if per_dim.len() != d + 1 {
                return Err(Error::Validation(format!(
                    "action of element {g} missing some dimension"
                )));
            }
            for (q, perm) in per_dim.iter().enumerate() {
                if perm.len() != self.space.count(q) {
                    return Err(Error::Validation(format!(
                        "action of element {g} has wrong size in dimension {q}"
                    )));
                }
                let mut seen = vec![false; perm.len()];
                for &img in perm {
                    if img >= perm.len() || seen[img] {
                        return Err(Error::Validation(format!(
                            "action of element {g} is not a permutation in dimension {q}"
                        )));
                    }
                    seen[img] = true;
                }
            }
        }
        let e = self.group.identity();
        for q in 0..=d {
            for i in 0..self.space.count(q) {
                if self.action[e][q][i] != i {
                    return Err(Error::Validation(
                        "identity element must act trivially".to_string(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.group.mul(a, b);
                for q in 0..=d {
                    for i in 0..self.space.count(q) {
                        if self.action[a][q][self.action[b][q][i]] != self.action[ab][q][i] {
                            return Err(Error::Validation(format!(
                                "action is not a homomorphism at ({a},{b})"
                            )));
                        }
                    }
                }
            }
        }
        // Faces must commute with the action on generators.
        for g in 0..n {
            for q in 1..=d {
                for i in 0..self.space.count(q) {
                    let gi = self.action[g][q][i];
                    for face in 0..=q {
                        let f = self.space.stored_face(q, i, face);
                        let gf = self.act(g, f);
                        if &gf != self.space.stored_face(q, gi, face) {
                            return Err(Error::Validation(format!(
                                "action of {g} does not commute with face {face} of {}",
                                self.space.name(SimplexRef { dim: q, idx: i })
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.space.truncation()
    }

    pub fn act_index(&self, g: usize, q: usize, idx: usize) -> usize {
        self.action[g][q][idx]
    }

    pub fn act(&self, g: usize, x: &FormalSimplex) -> FormalSimplex {
        FormalSimplex {
            word: x.word.clone(),
            base: SimplexRef {
                dim: x.base.dim,
                idx: self.action[g][x.base.dim][x.base.idx],
            },
        }
    }

    /// Stabilizer of a nondegenerate simplex, as a sorted element list.
    pub fn stabilizer(&self, q: usize, idx: usize) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| self.action[g][q][idx] == idx)
            .collect()
    }

    /// fixed[q][idx]: whether every element of `h_elements` fixes the simplex.
    pub fn fixed_mask(&self, h_elements: &[usize]) -> Vec<Vec<bool>> {
        (0..=self.truncation())
            .map(|q| {
                (0..self.space.count(q))
                    .map(|i| h_elements.iter().all(|&g| self.action[g][q][i] == i))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub rep: usize,
    pub stabilizer: Vec<usize>,
    pub elements: Vec<usize>,
}

/// G-orbits of the nondegenerate q-simplices; representatives are the
/// minimal indices, orbits are sorted by representative.
pub fn orbits_stabilizers(gset: &GSimplicialSet, q: usize) -> Vec<Orbit> {
    let n = gset.space.count(q);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut elements: BTreeSet<usize> = BTreeSet::new();
        for g in 0..gset.group.order() {
            elements.insert(gset.act_index(g, q, i));
        }
        for &e in &elements {
            seen[e] = true;
        }
        out.push(Orbit {
            rep: i,
            stabilizer: gset.stabilizer(q, i),
            elements: elements.into_iter().collect(),
        });
    }
    out
}

/// The fixed-point subcomplex X^H together with index translations.
#[derive(Debug, Clone)]
pub struct FixedComplex {
    pub complex: SimplicialSet,
    /// local index -> ambient index, per dimension
    pub to_ambient: Vec<Vec<usize>>,
    /// ambient index -> local index, per dimension
    pub from_ambient: Vec<Vec<Option<usize>>>,
}

pub fn fixed_points(gset: &GSimplicialSet, h_elements: &[usize]) -> FixedComplex {
    let mask = gset.fixed_mask(h_elements);
    let d = gset.truncation();
    let mut to_ambient: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    let mut from_ambient: Vec<Vec<Option<usize>>> = (0..=d)
        .map(|q| vec![None; gset.space.count(q)])
        .collect();
    let mut names: Vec<Vec<String>> = vec![Vec::new(); d + 1];
    for q in 0..=d {
        for i in 0..gset.space.count(q) {
            if mask[q][i] {
                from_ambient[q][i] = Some(to_ambient[q].len());
                to_ambient[q].push(i);
                names[q].push(
                    gset.space
                        .name(SimplexRef { dim: q, idx: i })
                        .to_string(),
                );
            }
        }
    }
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); d + 1];
    for q in 1..=d {
        for &amb in &to_ambient[q] {
            let mut fs = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let f = gset.space.stored_face(q, amb, i);
                let local = from_ambient[f.base.dim][f.base.idx]
                    .expect("face of a fixed simplex is fixed");
                fs.push(FormalSimplex {
                    word: f.word.clone(),
                    base: SimplexRef {
                        dim: f.base.dim,
                        idx: local,
                    },
                });
            }
            faces[q].push(fs);
        }
    }
    let complex = SimplicialSet::new(d, names, faces).expect("fixed complex is valid");
    FixedComplex {
        complex,
        to_ambient,
        from_ambient,
    }
}

/// The diagram of fixed complexes over the orbit category: one complex per
/// subgroup, one translation map per morphism (contravariantly).
#[derive(Debug, Clone)]
pub struct OGSimplicialSetDiagram {
    pub fixed: Vec<FixedComplex>,
    /// translations[m]: for morphism m: G/H -> G/K, the map X^K -> X^H.
    pub translations: Vec<SimplicialMap>,
}

pub fn phi(gset: &GSimplicialSet, oc: &OrbitCategory) -> OGSimplicialSetDiagram {
    let fixed: Vec<FixedComplex> = (0..oc.subgroup_count())
        .map(|h| fixed_points(gset, oc.subgroup_elements(h)))
        .collect();
    let translations = oc
        .morphisms
        .iter()
        .map(|m| {
            let src = &fixed[m.src];
            let dst = &fixed[m.dst];
            let mapping = (0..=gset.truncation())
                .map(|q| {
                    dst.to_ambient[q]
                        .iter()
                        .map(|&amb| {
                            let img = gset.act_index(m.rep, q, amb);
                            let local = src.from_ambient[q][img]
                                .expect("translate lands in the source fixed complex");
                            FormalSimplex::nondegenerate(q, local)
                        })
                        .collect()
                })
                .collect();
            SimplicialMap { mapping }
        })
        .collect();
    OGSimplicialSetDiagram {
        fixed,
        translations,
    }
}

/// The G-simplicial set G/H x Delta[n]: cells are (coset, tuple) pairs with
/// left translation on the coset factor. The identity coset is declared
/// first so that orbit representatives sit over eH.
#[derive(Debug, Clone)]
pub struct OrbitTimesSimplex {
    pub gset: GSimplicialSet,
    /// Canonical coset representatives in declaration order (eH first).
    pub cosets: Vec<usize>,
    /// cells[q][idx] = (coset position, vertex tuple)
    pub cells: Vec<Vec<(usize, Vec<usize>)>>,
    index: BTreeMap<(usize, Vec<usize>), (usize, usize)>,
}

impl OrbitTimesSimplex {
    pub fn cell(&self, coset_pos: usize, tuple: &[usize]) -> Option<SimplexRef> {
        self.index
            .get(&(coset_pos, tuple.to_vec()))
            .map(|&(dim, idx)| SimplexRef { dim, idx })
    }

    pub fn coset_position(&self, oc: &OrbitCategory, h: usize, g: usize) -> usize {
        let rep = coset_rep(&oc.group, g, &oc.subgroups[h]);
        self.cosets
            .iter()
            .position(|&r| r == rep)
            .expect("coset present")
    }
}

pub fn orbit_times_simplex(oc: &OrbitCategory, h: usize, n: usize, truncation: usize) -> OrbitTimesSimplex {
    let group = oc.group.clone();
    let hset = &oc.subgroups[h];
    let mut cosets: Vec<usize> = {
        let mut seen = BTreeSet::new();
        (0..group.order())
            .filter_map(|g| {
                let rep = coset_rep(&group, g, hset);
                seen.insert(rep).then_some(rep)
            })
            .collect()
    };
    // Put the identity coset first for deterministic orbit representatives.
    let e_rep = coset_rep(&group, group.identity(), hset);
    cosets.sort_unstable();
    cosets.retain(|&r| r != e_rep);
    cosets.insert(0, e_rep);

    let mut names: Vec<Vec<String>> = vec![Vec::new(); truncation + 1];
    let mut cells: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); truncation + 1];
    let mut index = BTreeMap::new();
    for q in 0..=truncation {
        for (cpos, &crep) in cosets.iter().enumerate() {
            for t in increasing_tuples(n, q + 1) {
                index.insert((cpos, t.clone()), (q, cells[q].len()));
                let tuple_str: Vec<String> = t.iter().map(|v| v.to_string()).collect();
                names[q].push(format!("c{}|{}", crep, tuple_str.join(".")));
                cells[q].push((cpos, t));
            }
        }
    }
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); truncation + 1];
    for q in 1..=truncation {
        for (cpos, t) in &cells[q] {
            let mut fs = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let mut sub = t.clone();
                sub.remove(i);
                let (dim, idx) = index[&(*cpos, sub)];
                fs.push(FormalSimplex::nondegenerate(dim, idx));
            }
            faces[q].push(fs);
        }
    }
    let space = SimplicialSet::new(truncation, names, faces).expect("orbit cells are valid");

    let coset_pos: BTreeMap<usize, usize> = cosets
        .iter()
        .enumerate()
        .map(|(p, &r)| (r, p))
        .collect();
    let action: Vec<Vec<Vec<usize>>> = (0..group.order())
        .map(|g| {
            (0..=truncation)
                .map(|q| {
                    cells[q]
                        .iter()
                        .map(|(cpos, t)| {
                            let moved = coset_rep(&group, group.mul(g, cosets[*cpos]), hset);
                            index[&(coset_pos[&moved], t.clone())].1
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let gset = GSimplicialSet::new(space, group, action).expect("orbit action is valid");
    OrbitTimesSimplex {
        gset,
        cosets,
        cells,
        index,
    }
}

fn increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, n, len, &mut cur, &mut out);
    out
}

/// Whether every fixed complex X^H is nonempty with a single edge-path
/// component.
pub fn is_g_connected(gset: &GSimplicialSet, oc: &OrbitCategory) -> bool {
    (0..oc.subgroup_count()).all(|h| {
        let mask = gset.fixed_mask(oc.subgroup_elements(h));
        connected_under_mask(&gset.space, &mask)
    })
}

fn connected_under_mask(space: &SimplicialSet, mask: &[Vec<bool>]) -> bool {
    let nv = mask[0].iter().filter(|&&b| b).count();
    if nv == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..space.count(0)).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    if space.truncation() >= 1 {
        for e in 0..space.count(1) {
            if !mask[1][e] {
                continue;
            }
            let a = space.stored_face(1, e, 0).base.idx;
            let b = space.stored_face(1, e, 1).base.idx;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut root = None;
    for v in 0..space.count(0) {
        if mask[0][v] {
            let r = find(&mut parent, v);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
    }
    true
}

/// A 0-simplex fixed by the whole group, if any (minimal index).
pub fn fixed_base_vertex(gset: &GSimplicialSet) -> Option<usize> {
    let all: Vec<usize> = (0..gset.group.order()).collect();
    let mask = gset.fixed_mask(&all);
    mask[0].iter().position(|&b| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::standard_simplex;
    use crate::testkit::{symmetric_3, theta_graph};

    #[test]
    fn subgroup_enumeration() {
        let z2 = FinGroup::cyclic(2);
        assert_eq!(subgroups(&z2), vec![vec![0], vec![0, 1]]);
        assert_eq!(subgroups(&FinGroup::trivial()).len(), 1);
        let s3 = symmetric_3();
        assert_eq!(subgroups(&s3).len(), 6);
    }

    #[test]
    fn orbit_category_hom_counts() {
        let oc = OrbitCategory::new(FinGroup::cyclic(2));
        // Subgroups are [{e}, G]; morphisms G/e -> G/e are the two cosets of
        // the trivial subgroup, all other hom sets as expected.
        assert_eq!(oc.hom[0][0].len(), 2);
        assert_eq!(oc.hom[0][1].len(), 1);
        assert_eq!(oc.hom[1][0].len(), 0);
        assert_eq!(oc.hom[1][1].len(), 1);

        let oc1 = OrbitCategory::new(FinGroup::trivial());
        assert_eq!(oc1.subgroup_count(), 1);
        assert_eq!(oc1.morphisms.len(), 1);

        let oc3 = OrbitCategory::new(symmetric_3());
        assert_eq!(oc3.subgroup_count(), 6);
        assert_eq!(oc3.hom[0][0].len(), 6);
    }

    #[test]
    fn composition_is_associative_and_contravariant_ready() {
        let oc = OrbitCategory::new(symmetric_3());
        for (m2, s) in oc.morphisms.iter().enumerate() {
            for (m1, f) in oc.morphisms.iter().enumerate() {
                if f.dst != s.src {
                    continue;
                }
                let c = oc.compose(m2, m1);
                assert_eq!(oc.morphism(c).src, f.src);
                assert_eq!(oc.morphism(c).dst, s.dst);
                // Associativity against a third morphism.
                for (m3, t) in oc.morphisms.iter().enumerate() {
                    if t.src != s.dst {
                        continue;
                    }
                    assert_eq!(oc.compose(m3, c), oc.compose(oc.compose(m3, m2), m1));
                }
            }
        }
    }

    #[test]
    fn fixed_points_of_theta() {
        let theta = theta_graph();
        let full = fixed_points(&theta, &[0, 1]);
        assert_eq!(full.complex.counts(), vec![2, 1, 0]);
        assert_eq!(full.complex.lookup("f").map(|r| r.dim), Some(1));
        let free = fixed_points(&theta, &[0]);
        assert_eq!(free.complex.counts(), vec![2, 3, 0]);

        // Swapped vertices: empty full fixed set.
        let names = vec![vec!["p".to_string(), "q".to_string()]];
        let space = SimplicialSet::new(0, names, vec![Vec::new()]).unwrap();
        let action = vec![vec![vec![0, 1]], vec![vec![1, 0]]];
        let swap = GSimplicialSet::new(space, FinGroup::cyclic(2), action).unwrap();
        assert_eq!(fixed_points(&swap, &[0, 1]).complex.counts(), vec![0]);
        let oc = OrbitCategory::new(FinGroup::cyclic(2));
        assert!(!is_g_connected(&swap, &oc));
    }

    #[test]
    fn orbits_of_theta() {
        let theta = theta_graph();
        let o1 = orbits_stabilizers(&theta, 1);
        assert_eq!(o1.len(), 2);
        assert_eq!(o1[0].rep, 0);
        assert_eq!(o1[0].elements, vec![0, 1]);
        assert_eq!(o1[0].stabilizer, vec![0]);
        assert_eq!(o1[1].rep, 2);
        assert_eq!(o1[1].stabilizer, vec![0, 1]);

        let o0 = orbits_stabilizers(&theta, 0);
        assert_eq!(o0.len(), 2);
        assert!(o0.iter().all(|o| o.stabilizer == vec![0, 1]));
    }

    #[test]
    fn stabilizers_conjugate_along_the_action() {
        let theta = theta_graph();
        for q in 0..=1 {
            for idx in 0..theta.space.count(q) {
                let st = theta.stabilizer(q, idx);
                for g in 0..theta.group.order() {
                    let moved = theta.act_index(g, q, idx);
                    let want: Vec<usize> = {
                        let mut v: Vec<usize> =
                            st.iter().map(|&s| theta.group.conjugate(g, s)).collect();
                        v.sort_unstable();
                        v
                    };
                    assert_eq!(theta.stabilizer(q, moved), want);
                }
            }
        }
    }

    #[test]
    fn fixed_sets_nest_with_subgroups() {
        let theta = theta_graph();
        let big = theta.fixed_mask(&[0, 1]);
        let small = theta.fixed_mask(&[0]);
        for q in 0..=theta.truncation() {
            for i in 0..theta.space.count(q) {
                assert!(!big[q][i] || small[q][i]);
            }
        }
    }

    #[test]
    fn phi_is_contravariantly_functorial() {
        let theta = theta_graph();
        let oc = OrbitCategory::new(theta.group.clone());
        let diagram = phi(&theta, &oc);
        for (m2, s) in oc.morphisms.iter().enumerate() {
            for (m1, f) in oc.morphisms.iter().enumerate() {
                if f.dst != s.src {
                    continue;
                }
                let c = oc.compose(m2, m1);
                // Contravariance: Phi(m2 o m1) = Phi(m1) o Phi(m2).
                let src = &diagram.fixed[f.src].complex;
                let mid = &diagram.fixed[s.src].complex;
                let outer = &diagram.fixed[s.dst].complex;
                for q in 0..=theta.truncation() {
                    for idx in 0..outer.count(q) {
                        let x = FormalSimplex::nondegenerate(q, idx);
                        let via_mid = diagram.translations[m1]
                            .apply(src, &diagram.translations[m2].apply(mid, &x));
                        let direct = diagram.translations[c].apply(src, &x);
                        assert_eq!(via_mid, direct);
                    }
                }
            }
        }
        // Every translation is simplicial from X^K to X^H for m: G/H -> G/K.
        for (mid, m) in oc.morphisms.iter().enumerate() {
            assert!(diagram.translations[mid]
                .commutes_with_faces(&diagram.fixed[m.dst].complex, &diagram.fixed[m.src].complex));
        }
    }

    #[test]
    fn orbit_cells_and_their_fixed_sets() {
        let oc = OrbitCategory::new(FinGroup::cyclic(2));
        // G/G x Delta[q] is Delta[q] with the trivial action.
        let full = orbit_times_simplex(&oc, 1, 1, 1);
        let plain = standard_simplex(1, 1);
        assert_eq!(full.gset.space.counts(), plain.counts());

        // G/e x Delta[1] for G = Z/2: the full fixed set is empty, the
        // trivially-fixed set is two disjoint intervals.
        let free = orbit_times_simplex(&oc, 0, 1, 1);
        let fixed_full = fixed_points(&free.gset, oc.subgroup_elements(1));
        assert_eq!(fixed_full.complex.counts(), vec![0, 0]);
        let fixed_triv = fixed_points(&free.gset, oc.subgroup_elements(0));
        assert_eq!(fixed_triv.complex.counts(), vec![4, 2]);
    }

    #[test]
    fn connectivity_and_base_vertex() {
        let theta = theta_graph();
        let oc = OrbitCategory::new(theta.group.clone());
        assert!(is_g_connected(&theta, &oc));
        assert_eq!(fixed_base_vertex(&theta), Some(0));
    }
}
