//! Vertical homotopies between lifts: the constructive direction of the
//! classification of cohomologous cocycles.
//!
//! A cobounding cochain is spread over the cylinder as a cochain supported
//! on the end at vertex 1, subtracted from the pulled-back cocycle, and the
//! result is turned into a lift over the cylinder. The lift projects to the
//! classifying map of the base at every level and restricts at the two ends
//! to the lifts of the two cocycles; both facts are checked, not assumed.

use std::collections::BTreeMap;

use super::lift::{check_lift, cochain_to_lift, Lift};
use super::tcp::classifying_map;
use crate::cohomology::{
    apply_delta, evaluate, twisted_delta, EquivariantCochain, GComplexCtx,
};
use crate::equivariant::{GSimplicialSet, OrbitCategory};
use crate::error::{Error, Result};
use crate::localsys::{CoefficientData, TwistingCocycle};
use crate::simplicial::{product, standard_simplex, FormalSimplex, ProductComplex, SimplexRef};

/// The cylinder over a G-simplicial set: the product with the standard
/// 1-simplex, the group acting on the first factor only.
pub struct Cylinder {
    pub product: ProductComplex,
    pub gset: GSimplicialSet,
}

impl Cylinder {
    pub fn new(base: &GSimplicialSet) -> Result<Cylinder> {
        let d = base.truncation();
        let interval = standard_simplex(1, d);
        let prod = product(&base.space, &interval, d)?;
        let order = base.group.order();
        let mut action: Vec<Vec<Vec<usize>>> = Vec::with_capacity(order);
        for g in 0..order {
            let mut per_dim = Vec::with_capacity(d + 1);
            for q in 0..=d {
                let perm = prod.cells[q]
                    .iter()
                    .map(|(l, r)| {
                        let moved = (base.act(g, l), r.clone());
                        prod.cell_index(&moved).expect("action preserves cells")
                    })
                    .collect();
                per_dim.push(perm);
            }
            action.push(per_dim);
        }
        let gset = GSimplicialSet::new(prod.complex.clone(), base.group.clone(), action)?;
        Ok(Cylinder {
            product: prod,
            gset,
        })
    }

    pub fn first_factor(&self, q: usize, idx: usize) -> &FormalSimplex {
        &self.product.cells[q][idx].0
    }

    /// The inclusion of the end at the given interval vertex (0 or 1): a
    /// nondegenerate q-simplex pairs with the fully degenerate vertex,
    /// whose normal word is (q-1, ..., 1, 0).
    pub fn include_end(&self, end: usize, q: usize, idx: usize) -> SimplexRef {
        let word = crate::simplicial::DegeneracyWord::new((0..q).rev().collect()).unwrap();
        let constant = FormalSimplex {
            word,
            base: crate::simplicial::SimplexRef { dim: 0, idx: end },
        };
        let pair = (FormalSimplex::nondegenerate(q, idx), constant);
        let cell = self
            .product
            .cell_index(&pair)
            .expect("end inclusion lands on a product cell");
        SimplexRef { dim: q, idx: cell }
    }
}

/// Pull the base twisting back along the first-factor projection.
pub fn cylinder_twisting(
    cyl: &Cylinder,
    oc: &OrbitCategory,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
) -> Result<TwistingCocycle> {
    let mut labels = Vec::with_capacity(oc.subgroup_count());
    for k in 0..oc.subgroup_count() {
        let mask = cyl.gset.fixed_mask(oc.subgroup_elements(k));
        let mut table = BTreeMap::new();
        if cyl.gset.truncation() >= 1 {
            for e in 0..cyl.gset.space.count(1) {
                if !mask[1][e] {
                    continue;
                }
                let l = cyl.first_factor(1, e);
                table.insert(e, kappa.eval_edge(&coeffs.pi, k, l)?);
            }
        }
        labels.push(table);
    }
    Ok(TwistingCocycle { labels })
}

/// Pull a cochain on the base back along the first-factor projection.
pub fn pullback_along_projection(
    xctx: &GComplexCtx,
    cyl_ctx: &GComplexCtx,
    cyl: &Cylinder,
    coeffs: &CoefficientData,
    f: &EquivariantCochain,
) -> Result<EquivariantCochain> {
    let n = f.degree;
    let mut out = EquivariantCochain::zero(cyl_ctx, coeffs, n, f.flavor);
    if n <= cyl_ctx.truncation() {
        for (pos, orbit) in cyl_ctx.orbits[n].iter().enumerate() {
            let h = cyl_ctx.stabilizer_ids[n][pos];
            let l = cyl.first_factor(n, orbit.rep);
            out.blocks[pos] = evaluate(xctx, coeffs, f, h, l)?;
        }
    }
    Ok(out)
}

/// Restrict a cylinder cochain to one end.
pub fn restrict_to_end(
    cyl_ctx: &GComplexCtx,
    cyl: &Cylinder,
    xctx: &GComplexCtx,
    coeffs: &CoefficientData,
    gamma: &EquivariantCochain,
    end: usize,
) -> Result<EquivariantCochain> {
    let n = gamma.degree;
    let mut out = EquivariantCochain::zero(xctx, coeffs, n, gamma.flavor);
    if n <= xctx.truncation() {
        for (pos, orbit) in xctx.orbits[n].iter().enumerate() {
            let h = xctx.stabilizer_ids[n][pos];
            let cell = cyl.include_end(end, n, orbit.rep);
            out.blocks[pos] = evaluate(
                cyl_ctx,
                coeffs,
                gamma,
                h,
                &FormalSimplex::nondegenerate(cell.dim, cell.idx),
            )?;
        }
    }
    Ok(out)
}

/// Restrict a cylinder lift to one end.
pub fn restrict_lift_to_end(
    cyl: &Cylinder,
    xctx: &GComplexCtx,
    lift: &Lift,
    end: usize,
) -> Result<Lift> {
    let mut cochains = BTreeMap::new();
    for h in 0..xctx.oc.subgroup_count() {
        for q in 0..=xctx.truncation() {
            for idx in 0..xctx.gset.space.count(q) {
                if !xctx.fixed_masks[h][q][idx] {
                    continue;
                }
                let cell = cyl.include_end(end, q, idx);
                let c = lift.eval(h, &FormalSimplex::nondegenerate(cell.dim, cell.idx))?;
                cochains.insert((h, q, idx), c);
            }
        }
    }
    Ok(Lift {
        degree: lift.degree,
        cochains,
    })
}

/// A cochain on the cylinder supported on the end at vertex 1, extending h.
fn end_supported_cochain(
    xctx: &GComplexCtx,
    cyl_ctx: &GComplexCtx,
    cyl: &Cylinder,
    coeffs: &CoefficientData,
    h: &EquivariantCochain,
) -> Result<EquivariantCochain> {
    let n = h.degree;
    let mut out = EquivariantCochain::zero(cyl_ctx, coeffs, n, h.flavor);
    if n <= xctx.truncation() {
        for (pos, orbit) in xctx.orbits[n].iter().enumerate() {
            let cell = cyl.include_end(1, n, orbit.rep);
            let (cyl_pos, g) = cyl_ctx.orbit_lookup[n][cell.idx];
            if g != cyl.gset.group.identity() {
                return Err(Error::Internal(
                    "end inclusion does not hit cylinder orbit representatives".to_string(),
                ));
            }
            out.blocks[cyl_pos] = h.blocks[pos].clone();
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub struct VerticalHomotopy {
    /// The lift over the cylinder.
    pub lift: Lift,
    /// The certifying cocycle on the cylinder it came from.
    pub gamma: EquivariantCochain,
}

/// Build the vertical homotopy between the lifts of two cohomologous
/// cocycles, with `h` the cobounding cochain (`f0 - f1 = delta h`).
pub fn vertical_homotopy(
    xctx: &GComplexCtx,
    cyl: &Cylinder,
    cyl_ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    kappa_cyl: &TwistingCocycle,
    f0: &EquivariantCochain,
    f1: &EquivariantCochain,
    h: Option<&EquivariantCochain>,
) -> Result<VerticalHomotopy> {
    let n = f0.degree;
    if f1.degree != n {
        return Err(Error::DimensionMismatch(
            "cocycles have different degrees".to_string(),
        ));
    }
    if n < xctx.truncation() {
        let delta_n = twisted_delta(xctx, coeffs, kappa, n)?;
        for (name, f) in [("first", f0), ("second", f1)] {
            if !apply_delta(&delta_n, f, xctx, coeffs).is_zero(xctx, coeffs) {
                return Err(Error::Validation(format!("the {name} cochain is not a cocycle")));
            }
        }
    }
    // The cobounding witness must be exact.
    let difference = f0.sub(f1);
    match h {
        Some(h) => {
            if h.degree + 1 != n {
                return Err(Error::DimensionMismatch(
                    "cobounding cochain has the wrong degree".to_string(),
                ));
            }
            let delta_prev = twisted_delta(xctx, coeffs, kappa, n - 1)?;
            let dh = apply_delta(&delta_prev, h, xctx, coeffs);
            if !dh.equals(xctx, coeffs, &difference) {
                return Err(Error::NotCohomologous(
                    "the given cochain does not cobound the difference".to_string(),
                ));
            }
        }
        None => {
            if !difference.is_zero(xctx, coeffs) {
                return Err(Error::NotCohomologous(
                    "no cobounding cochain given and the cocycles differ".to_string(),
                ));
            }
        }
    }

    let gamma0 = pullback_along_projection(xctx, cyl_ctx, cyl, coeffs, f0)?;
    let gamma = match h {
        Some(h) => {
            let beta = end_supported_cochain(xctx, cyl_ctx, cyl, coeffs, h)?;
            let delta_beta = apply_delta(
                &twisted_delta(cyl_ctx, coeffs, kappa_cyl, n - 1)?,
                &beta,
                cyl_ctx,
                coeffs,
            );
            gamma0.sub(&delta_beta)
        }
        None => gamma0,
    };

    // Internal guarantees of the construction.
    if n < cyl_ctx.truncation() {
        let delta_cyl = twisted_delta(cyl_ctx, coeffs, kappa_cyl, n)?;
        if !apply_delta(&delta_cyl, &gamma, cyl_ctx, coeffs).is_zero(cyl_ctx, coeffs) {
            return Err(Error::Internal(
                "cylinder cocycle construction failed".to_string(),
            ));
        }
    }
    let back0 = restrict_to_end(cyl_ctx, cyl, xctx, coeffs, &gamma, 0)?;
    let back1 = restrict_to_end(cyl_ctx, cyl, xctx, coeffs, &gamma, 1)?;
    if !back0.equals(xctx, coeffs, f0) || !back1.equals(xctx, coeffs, f1) {
        return Err(Error::Internal(
            "cylinder cocycle does not restrict to the ends".to_string(),
        ));
    }

    let lift = cochain_to_lift(cyl_ctx, coeffs, kappa_cyl, &gamma)?;
    Ok(VerticalHomotopy { lift, gamma })
}

/// Accept a claimed vertical homotopy: lift invariants on the cylinder,
/// projection to the classifying map of the base through the first factor,
/// and exact end restrictions.
pub fn check_vertical_homotopy(
    xctx: &GComplexCtx,
    cyl: &Cylinder,
    cyl_ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    kappa_cyl: &TwistingCocycle,
    homotopy: &Lift,
    end0: &Lift,
    end1: &Lift,
) -> Vec<String> {
    let mut bad = check_lift(cyl_ctx, coeffs, kappa_cyl, homotopy);

    // Projection condition: the classifying tuple of every cylinder cell
    // equals the classifying tuple of its first factor.
    for k in 0..cyl_ctx.oc.subgroup_count() {
        for q in 0..=cyl_ctx.truncation() {
            for idx in 0..cyl_ctx.gset.space.count(q) {
                if !cyl_ctx.fixed_masks[k][q][idx] {
                    continue;
                }
                let cell = FormalSimplex::nondegenerate(q, idx);
                let over = classifying_map(cyl_ctx.gset, coeffs, kappa_cyl, k, &cell).unwrap();
                let under =
                    classifying_map(xctx.gset, coeffs, kappa, k, cyl.first_factor(q, idx))
                        .unwrap();
                if over.entries != under.entries {
                    bad.push(format!(
                        "projection mismatch at subgroup {k}, dimension {q}, cell {idx}"
                    ));
                }
            }
        }
    }

    for (end, target) in [(0, end0), (1, end1)] {
        match restrict_lift_to_end(cyl, xctx, homotopy, end) {
            Ok(restricted) => {
                for (key, c) in &restricted.cochains {
                    let group = coeffs.m0.group(key.0);
                    match target.cochains.get(key) {
                        Some(want) if c.equals(group, want) => {}
                        _ => bad.push(format!(
                            "end {end} does not restrict to the expected lift at {key:?}"
                        )),
                    }
                }
            }
            Err(e) => bad.push(format!("end {end} restriction failed: {e}")),
        }
    }
    bad
}
