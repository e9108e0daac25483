//! Lifts of the classifying map into the twisted product, and the
//! degreewise isomorphism between twisted cochains and such lifts.
//!
//! A lift stores only its fiber component: the base component is forced to
//! the classifying map, which is what makes vertical homotopies checkable
//! by construction. Values on degenerate simplices are derived through the
//! (componentwise) degeneracies.

use std::collections::BTreeMap;

use super::em::EmCochain;
use super::tcp::{classifying_map, fundamental_cochain, TcpSimplex};
use crate::cohomology::{evaluate, EquivariantCochain, Flavor, GComplexCtx};
use crate::equivariant::{orbit_times_simplex, OrbitCategory, OrbitTimesSimplex};
use crate::error::{Error, Result};
use crate::localsys::{twist_of_simplex, CoefficientData, TwistingCocycle};
use crate::simplicial::FormalSimplex;

#[derive(Debug, Clone)]
pub struct Lift {
    /// Cochain degree of the fiber.
    pub degree: usize,
    /// (subgroup, dim, nondegenerate index) -> fiber cochain.
    pub cochains: BTreeMap<(usize, usize, usize), EmCochain>,
}

impl Lift {
    /// The fiber component at an arbitrary (possibly degenerate) simplex of
    /// a fixed complex.
    pub fn eval(&self, h: usize, x: &FormalSimplex) -> Result<EmCochain> {
        let key = (h, x.base.dim, x.base.idx);
        let mut c = self
            .cochains
            .get(&key)
            .ok_or_else(|| {
                Error::LiftInvariantViolation(format!(
                    "lift has no value at subgroup {h}, simplex ({}, {})",
                    x.base.dim, x.base.idx
                ))
            })?
            .clone();
        for &j in x.word.indices().iter().rev() {
            c = c.degeneracy(j);
        }
        Ok(c)
    }

    /// The full twisted-product cell over a simplex: stored fiber plus the
    /// forced base component.
    pub fn cell(
        &self,
        gset: &crate::equivariant::GSimplicialSet,
        coeffs: &CoefficientData,
        kappa: &TwistingCocycle,
        h: usize,
        x: &FormalSimplex,
    ) -> Result<TcpSimplex> {
        Ok(TcpSimplex {
            cochain: self.eval(h, x)?,
            base: classifying_map(gset, coeffs, kappa, h, x)?,
        })
    }

    /// Apply the fiberwise coboundary; the result is a lift into the next
    /// twisted product.
    pub fn delta(&self) -> Lift {
        Lift {
            degree: self.degree + 1,
            cochains: self
                .cochains
                .iter()
                .map(|(k, c)| (*k, c.delta()))
                .collect(),
        }
    }

    /// Whether every fiber component is a cocycle, i.e. the lift lands in
    /// the kernel-of-coboundary subcomplex.
    pub fn lands_in_cocycles(&self, coeffs: &CoefficientData) -> bool {
        self.cochains
            .iter()
            .all(|((h, _, _), c)| c.delta().is_zero(coeffs.m0.group(*h)))
    }
}

/// The isomorphism from twisted cochains on an orbit-times-simplex complex
/// to plain simplex cochains: untwist by the inverse action of the edge
/// from vertex 0, then read off at the identity coset.
pub fn ots_cochain_to_em(
    ots: &OrbitTimesSimplex,
    ots_ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa_ots: &TwistingCocycle,
    h: usize,
    degree: usize,
    q: usize,
    f: &EquivariantCochain,
) -> Result<EmCochain> {
    let mut out = EmCochain::zero(coeffs, h, degree, q);
    for t in super::em::tuples(q, degree + 1) {
        let alpha0 = t[0];
        let twist = leading_edge_twist(ots, ots_ctx, coeffs, kappa_ots, h, alpha0)?;
        let cell = ots
            .cell(0, &t)
            .ok_or_else(|| Error::Internal("orbit cell missing".to_string()))?;
        let value = evaluate(
            ots_ctx,
            coeffs,
            f,
            h,
            &FormalSimplex::nondegenerate(cell.dim, cell.idx),
        )?;
        let group = &coeffs.pi.groups[h];
        let untwisted = coeffs.phi.act(h, group.inv(twist)).apply(&value);
        out.set_value(&t, untwisted);
    }
    Ok(out)
}

/// The inverse: spread a simplex cochain over the orbit cells, twisting by
/// the edge from vertex 0 and transporting along the orbit.
pub fn em_to_ots_cochain(
    ots: &OrbitTimesSimplex,
    ots_ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa_ots: &TwistingCocycle,
    h: usize,
    c: &EmCochain,
) -> Result<EquivariantCochain> {
    let degree = c.degree;
    let mut f = EquivariantCochain::zero(ots_ctx, coeffs, degree, Flavor::Twisted);
    if degree <= ots_ctx.truncation() {
        for (pos, orbit) in ots_ctx.orbits[degree].iter().enumerate() {
            // Orbit representatives sit over the identity coset.
            let (cpos, tuple) = &ots.cells[degree][orbit.rep];
            if *cpos != 0 {
                return Err(Error::Internal(
                    "orbit representative is not over the identity coset".to_string(),
                ));
            }
            let twist = leading_edge_twist(ots, ots_ctx, coeffs, kappa_ots, h, tuple[0])?;
            let stab = ots_ctx.stabilizer_ids[degree][pos];
            if stab != h {
                return Err(Error::Internal(
                    "orbit stabilizer is not the defining subgroup".to_string(),
                ));
            }
            f.blocks[pos] = coeffs.phi.act(h, twist).apply(c.value(tuple));
        }
    }
    Ok(f)
}

/// Twisting value of the edge from vertex 0 to vertex a0 over the identity
/// coset; the identity when a0 = 0 (the edge degenerates).
fn leading_edge_twist(
    ots: &OrbitTimesSimplex,
    ots_ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa_ots: &TwistingCocycle,
    h: usize,
    alpha0: usize,
) -> Result<usize> {
    if alpha0 == 0 {
        return Ok(coeffs.pi.groups[h].identity());
    }
    let edge = ots
        .cell(0, &[0, alpha0])
        .ok_or_else(|| Error::Internal("leading edge missing".to_string()))?;
    twist_of_simplex(
        ots_ctx.gset,
        &coeffs.pi,
        kappa_ots,
        h,
        &FormalSimplex::nondegenerate(edge.dim, edge.idx),
    )
}

/// Cached per-(subgroup, dimension) orbit-times-simplex complexes.
pub struct OtsCache {
    pub entries: BTreeMap<(usize, usize), OrbitTimesSimplex>,
}

impl OtsCache {
    pub fn new() -> Self {
        OtsCache {
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, oc: &OrbitCategory, h: usize, q: usize) -> &OrbitTimesSimplex {
        self.entries
            .entry((h, q))
            .or_insert_with(|| orbit_times_simplex(oc, h, q, q))
    }
}

/// Pull a twisting cocycle on X back to an orbit-times-simplex complex
/// along the equivariant simplex of `x`: the cell (aH, beta) maps to
/// a * (x restricted to beta).
pub fn pullback_twisting(
    gset: &crate::equivariant::GSimplicialSet,
    oc: &OrbitCategory,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    ots: &OrbitTimesSimplex,
    x: &FormalSimplex,
) -> Result<TwistingCocycle> {
    let mut labels = Vec::with_capacity(oc.subgroup_count());
    for k in 0..oc.subgroup_count() {
        let mask = ots.gset.fixed_mask(oc.subgroup_elements(k));
        let mut table = BTreeMap::new();
        if ots.gset.truncation() >= 1 {
            for e in 0..ots.gset.space.count(1) {
                if !mask[1][e] {
                    continue;
                }
                let (cpos, tuple) = &ots.cells[1][e];
                let restricted = select_vertices(gset, x, tuple)?;
                let image = gset.act(ots.cosets[*cpos], &restricted);
                table.insert(e, kappa.eval_edge(&coeffs.pi, k, &image)?);
            }
        }
        labels.push(table);
    }
    Ok(TwistingCocycle { labels })
}

/// The face of `x` spanned by the listed vertices.
pub fn select_vertices(
    gset: &crate::equivariant::GSimplicialSet,
    x: &FormalSimplex,
    vertices: &[usize],
) -> Result<FormalSimplex> {
    let q = x.dim();
    let drop: Vec<usize> = (0..=q).filter(|v| !vertices.contains(v)).collect();
    gset.space.iterated_face(x, &drop)
}

/// The lift associated to a twisted cochain: over each simplex, pull the
/// cochain back to the orbit-times-simplex complex of its equivariant
/// simplex and untwist.
pub fn cochain_to_lift(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    t: &EquivariantCochain,
) -> Result<Lift> {
    let n = t.degree;
    let mut cochains = BTreeMap::new();
    let mut cache = OtsCache::new();
    for h in 0..ctx.oc.subgroup_count() {
        for q in 0..=ctx.truncation() {
            for idx in 0..ctx.gset.space.count(q) {
                if !ctx.fixed_masks[h][q][idx] {
                    continue;
                }
                let x = FormalSimplex::nondegenerate(q, idx);
                let ots = cache.get(ctx.oc, h, q).clone();
                let ots_ctx = GComplexCtx::new(&ots.gset, ctx.oc);
                let kappa_ots =
                    pullback_twisting(ctx.gset, ctx.oc, coeffs, kappa, &ots, &x)?;
                let pulled = pullback_cochain(ctx, coeffs, t, &ots, &ots_ctx, h, &x)?;
                let c = ots_cochain_to_em(&ots, &ots_ctx, coeffs, &kappa_ots, h, n, q, &pulled)?;
                cochains.insert((h, q, idx), c);
            }
        }
    }
    Ok(Lift {
        degree: n,
        cochains,
    })
}

/// The pullback of a twisted cochain along the equivariant simplex of `x`:
/// stored on the orbit cells of the orbit-times-simplex complex.
fn pullback_cochain(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    t: &EquivariantCochain,
    ots: &OrbitTimesSimplex,
    ots_ctx: &GComplexCtx,
    h: usize,
    x: &FormalSimplex,
) -> Result<EquivariantCochain> {
    let n = t.degree;
    let mut out = EquivariantCochain::zero(ots_ctx, coeffs, n, Flavor::Twisted);
    if n <= ots_ctx.truncation() {
        for (pos, orbit) in ots_ctx.orbits[n].iter().enumerate() {
            let (cpos, tuple) = &ots.cells[n][orbit.rep];
            if *cpos != 0 {
                return Err(Error::Internal(
                    "orbit representative is not over the identity coset".to_string(),
                ));
            }
            let restricted = select_vertices(ctx.gset, x, tuple)?;
            out.blocks[pos] = evaluate(ctx, coeffs, t, h, &restricted)?;
        }
    }
    Ok(out)
}

/// The inverse direction: a lift evaluates to a twisted cochain through the
/// fundamental cochain (top-tuple values at stabilizer level).
pub fn lift_to_cochain(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    lift: &Lift,
) -> Result<EquivariantCochain> {
    let n = lift.degree;
    let mut out = EquivariantCochain::zero(ctx, coeffs, n, Flavor::Twisted);
    if n <= ctx.truncation() {
        for (pos, orbit) in ctx.orbits[n].iter().enumerate() {
            let h = ctx.stabilizer_ids[n][pos];
            let x = FormalSimplex::nondegenerate(n, orbit.rep);
            let cell = lift.cell(ctx.gset, coeffs, kappa, h, &x)?;
            out.blocks[pos] = fundamental_cochain(&cell)?;
        }
    }
    Ok(out)
}

/// Every structural invariant of a lift: fiber components exist with the
/// right shapes, faces and degeneracies of the twisted product match the
/// values at faces of the simplex (leading face twisted), the classifying
/// map is itself simplicial, and the whole family is natural over the
/// orbit category.
pub fn check_lift(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    lift: &Lift,
) -> Vec<String> {
    let mut bad = Vec::new();
    let n = lift.degree;
    for h in 0..ctx.oc.subgroup_count() {
        let group = coeffs.m0.group(h);
        for q in 0..=ctx.truncation() {
            for idx in 0..ctx.gset.space.count(q) {
                if !ctx.fixed_masks[h][q][idx] {
                    continue;
                }
                let x = FormalSimplex::nondegenerate(q, idx);
                let Some(c) = lift.cochains.get(&(h, q, idx)) else {
                    bad.push(format!("missing fiber value at subgroup {h}, dim {q}, index {idx}"));
                    continue;
                };
                if c.degree != n || c.simplex_dim != q || c.subgroup != h {
                    bad.push(format!("fiber value has wrong shape at subgroup {h}, dim {q}, index {idx}"));
                    continue;
                }
                // Faces in the twisted product.
                if q >= 1 {
                    for i in 0..=q {
                        let face = match ctx.gset.space.face(&x, i) {
                            Ok(f) => f,
                            Err(e) => {
                                bad.push(e.to_string());
                                continue;
                            }
                        };
                        let at_face = match lift.eval(h, &face) {
                            Ok(v) => v,
                            Err(e) => {
                                bad.push(e.to_string());
                                continue;
                            }
                        };
                        let expected = if i == 0 {
                            let a = twist_of_simplex(ctx.gset, &coeffs.pi, kappa, h, &x)
                                .expect("twist defined");
                            c.face(0).map_values(coeffs.phi.act(h, a), h)
                        } else {
                            c.face(i)
                        };
                        if !at_face.equals(group, &expected) {
                            bad.push(format!(
                                "fiber face {i} mismatch at subgroup {h}, {}",
                                ctx.gset.space.display(&x)
                            ));
                        }
                    }
                }
                // The classifying map commutes with faces and degeneracies.
                let theta = classifying_map(ctx.gset, coeffs, kappa, h, &x).unwrap();
                if q >= 1 {
                    for i in 0..=q {
                        let face = ctx.gset.space.face(&x, i).unwrap();
                        let a = classifying_map(ctx.gset, coeffs, kappa, h, &face).unwrap();
                        let b = super::wbar::wbar_face(&coeffs.pi.groups[h], &theta, i).unwrap();
                        if a != b {
                            bad.push(format!(
                                "classifying map is not simplicial at face {i} of {}",
                                ctx.gset.space.display(&x)
                            ));
                        }
                    }
                }
                if q + 1 <= ctx.truncation() {
                    for j in 0..=q {
                        let s = ctx.gset.space.degeneracy(&x, j);
                        let a = classifying_map(ctx.gset, coeffs, kappa, h, &s).unwrap();
                        let b =
                            super::wbar::wbar_degeneracy(&coeffs.pi.groups[h], &theta, j).unwrap();
                        if a != b {
                            bad.push(format!(
                                "classifying map is not simplicial at degeneracy {j} of {}",
                                ctx.gset.space.display(&x)
                            ));
                        }
                    }
                }
            }
        }
    }
    // Naturality over the orbit category.
    for (mid, m) in ctx.oc.morphisms.iter().enumerate() {
        for q in 0..=ctx.truncation() {
            for idx in 0..ctx.gset.space.count(q) {
                if !ctx.fixed_masks[m.dst][q][idx] {
                    continue;
                }
                let moved = ctx.gset.act_index(m.rep, q, idx);
                let (Some(at_src), Some(at_dst)) = (
                    lift.cochains.get(&(m.src, q, moved)),
                    lift.cochains.get(&(m.dst, q, idx)),
                ) else {
                    continue;
                };
                let transported = at_dst.map_values(coeffs.m0.map(mid), m.src);
                if !at_src.equals(coeffs.m0.group(m.src), &transported) {
                    bad.push(format!(
                        "lift is not natural along morphism {mid} in dimension {q}"
                    ));
                }
            }
        }
    }
    bad
}
