//! The two equivariant cochain complexes and their comparison.
//!
//! Both complexes live on the same storage: one coefficient value per
//! G-orbit of nondegenerate simplices, held at the stabilizer's orbit
//! object. The twisted coboundary reads its leading coefficient from the
//! twisting cocycle; the compatibility (Bredon-Illman) coboundary derives
//! the same coefficient from raw labels and path holonomies through the
//! local-system machinery. That the two routes agree degreewise is exactly
//! what the comparison commands verify.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::equivariant::{orbits_stabilizers, GSimplicialSet, Orbit, OrbitCategory};
use crate::error::{Error, Result};
use crate::localsys::{CoefficientData, LocalSystem, TwistingCocycle};
use crate::simplicial::FormalSimplex;
use crate::zmodule::{cohomology_of_complex, AbHom, FGAbelianGroup, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Bredon,
    Twisted,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flavor::Bredon => write!(f, "bredon"),
            Flavor::Twisted => write!(f, "twisted"),
        }
    }
}

/// Precomputed orbit structure of one G-simplicial set.
pub struct GComplexCtx<'a> {
    pub gset: &'a GSimplicialSet,
    pub oc: &'a OrbitCategory,
    pub fixed_masks: Vec<Vec<Vec<bool>>>,
    pub orbits: Vec<Vec<Orbit>>,
    /// per dim, per simplex index: (orbit position, transporter to it)
    pub orbit_lookup: Vec<Vec<(usize, usize)>>,
    /// per dim, per orbit position: subgroup id of the representative's
    /// stabilizer
    pub stabilizer_ids: Vec<Vec<usize>>,
}

impl<'a> GComplexCtx<'a> {
    pub fn new(gset: &'a GSimplicialSet, oc: &'a OrbitCategory) -> Self {
        let d = gset.truncation();
        let fixed_masks = (0..oc.subgroup_count())
            .map(|h| gset.fixed_mask(oc.subgroup_elements(h)))
            .collect();
        let mut orbits = Vec::with_capacity(d + 1);
        let mut orbit_lookup = Vec::with_capacity(d + 1);
        let mut stabilizer_ids = Vec::with_capacity(d + 1);
        for q in 0..=d {
            let os = orbits_stabilizers(gset, q);
            let mut lookup = vec![(usize::MAX, usize::MAX); gset.space.count(q)];
            let mut stabs = Vec::with_capacity(os.len());
            for (pos, orbit) in os.iter().enumerate() {
                stabs.push(
                    oc.subgroup_id(&orbit.stabilizer)
                        .expect("stabilizer is a subgroup"),
                );
                for &x in &orbit.elements {
                    let g = (0..gset.group.order())
                        .find(|&g| gset.act_index(g, q, orbit.rep) == x)
                        .expect("transporter exists");
                    lookup[x] = (pos, g);
                }
            }
            orbits.push(os);
            orbit_lookup.push(lookup);
            stabilizer_ids.push(stabs);
        }
        GComplexCtx {
            gset,
            oc,
            fixed_masks,
            orbits,
            orbit_lookup,
            stabilizer_ids,
        }
    }

    pub fn truncation(&self) -> usize {
        self.gset.truncation()
    }

    /// The cochain group in degree n: the direct sum of M0 at each orbit's
    /// stabilizer object. Also returns the generator offset per orbit.
    pub fn cochain_space(&self, coeffs: &CoefficientData, n: usize) -> (FGAbelianGroup, Vec<usize>) {
        if n > self.truncation() {
            return (FGAbelianGroup::zero(), Vec::new());
        }
        let summands: Vec<&FGAbelianGroup> = self.stabilizer_ids[n]
            .iter()
            .map(|&h| coeffs.m0.group(h))
            .collect();
        FGAbelianGroup::direct_sum(&summands)
    }

    /// The coefficient transport for evaluating at (H, x): the orbit
    /// position of x and the homomorphism M0(transport): M0(G/G_r) -> M0(G/H).
    pub fn transport(
        &self,
        coeffs: &CoefficientData,
        h: usize,
        q: usize,
        idx: usize,
    ) -> Result<(usize, AbHom)> {
        if !self.fixed_masks[h][q][idx] {
            return Err(Error::Internal(format!(
                "simplex {idx} of dimension {q} is not fixed by subgroup {h}"
            )));
        }
        let (pos, g) = self.orbit_lookup[q][idx];
        let stab = self.stabilizer_ids[q][pos];
        let m = self
            .oc
            .morphism_id(h, stab, g)
            .ok_or_else(|| Error::Internal("transport morphism missing".to_string()))?;
        Ok((pos, coeffs.m0.map(m).clone()))
    }
}

#[derive(Debug, Clone)]
pub struct EquivariantCochain {
    pub degree: usize,
    pub flavor: Flavor,
    /// One coordinate vector per orbit (in orbit order), in the generators
    /// of M0 at the stabilizer's orbit object.
    pub blocks: Vec<Vec<BigInt>>,
}

impl EquivariantCochain {
    pub fn zero(ctx: &GComplexCtx, coeffs: &CoefficientData, degree: usize, flavor: Flavor) -> Self {
        let blocks = if degree > ctx.truncation() {
            Vec::new()
        } else {
            ctx.stabilizer_ids[degree]
                .iter()
                .map(|&h| coeffs.m0.group(h).zero_element())
                .collect()
        };
        EquivariantCochain {
            degree,
            flavor,
            blocks,
        }
    }

    pub fn from_coords(
        ctx: &GComplexCtx,
        coeffs: &CoefficientData,
        degree: usize,
        flavor: Flavor,
        coords: &[BigInt],
    ) -> Self {
        let mut blocks = Vec::new();
        let mut at = 0;
        if degree <= ctx.truncation() {
            for &h in &ctx.stabilizer_ids[degree] {
                let g = coeffs.m0.group(h).generators();
                blocks.push(coords[at..at + g].to_vec());
                at += g;
            }
        }
        assert_eq!(at, coords.len(), "coordinate length mismatch");
        EquivariantCochain {
            degree,
            flavor,
            blocks,
        }
    }

    pub fn coords(&self) -> Vec<BigInt> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn sub(&self, other: &EquivariantCochain) -> EquivariantCochain {
        assert_eq!(self.degree, other.degree);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        EquivariantCochain {
            degree: self.degree,
            flavor: self.flavor,
            blocks,
        }
    }

    pub fn add(&self, other: &EquivariantCochain) -> EquivariantCochain {
        assert_eq!(self.degree, other.degree);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        EquivariantCochain {
            degree: self.degree,
            flavor: self.flavor,
            blocks,
        }
    }

    pub fn is_zero(&self, ctx: &GComplexCtx, coeffs: &CoefficientData) -> bool {
        self.blocks.iter().enumerate().all(|(pos, b)| {
            let h = ctx.stabilizer_ids[self.degree][pos];
            coeffs.m0.group(h).is_zero_element(b)
        })
    }

    pub fn equals(&self, ctx: &GComplexCtx, coeffs: &CoefficientData, other: &Self) -> bool {
        self.degree == other.degree && self.sub(other).is_zero(ctx, coeffs)
    }
}

/// Evaluate a stored cochain at a fixed simplex of X^H: zero on degenerate
/// simplices, coefficient transport from the orbit representative otherwise.
pub fn evaluate(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    f: &EquivariantCochain,
    h: usize,
    x: &FormalSimplex,
) -> Result<Vec<BigInt>> {
    if x.dim() != f.degree {
        return Err(Error::DimensionMismatch(format!(
            "evaluating a degree-{} cochain on a {}-simplex",
            f.degree,
            x.dim()
        )));
    }
    if !x.is_nondegenerate() {
        return Ok(coeffs.m0.group(h).zero_element());
    }
    let (pos, hom) = ctx.transport(coeffs, h, x.dim(), x.base.idx)?;
    Ok(hom.apply(&f.blocks[pos]))
}

/// The sum of transported blocks feeding into one output block: the matrix
/// contribution of a single face evaluation.
fn face_contribution(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    h: usize,
    face: &FormalSimplex,
) -> Result<Option<(usize, IntMatrix)>> {
    if !face.is_nondegenerate() {
        return Ok(None);
    }
    let (pos, hom) = ctx.transport(coeffs, h, face.dim(), face.base.idx)?;
    Ok(Some((pos, hom.matrix)))
}

/// The twisted coboundary C^n -> C^{n+1}: the leading face acts through the
/// inverse action of the twisting value, the rest alternate in sign.
pub fn twisted_delta(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    n: usize,
) -> Result<AbHom> {
    delta_with(ctx, coeffs, n, |h, top| {
        let a = crate::localsys::twist_of_simplex(ctx.gset, &coeffs.pi, kappa, h, top)?;
        Ok(coeffs.phi.act_inverse(&coeffs.pi, h, a).clone())
    })
}

/// The compatibility coboundary C^n -> C^{n+1}: the leading face acts
/// through the coefficient morphism of the simplex's leading edge, derived
/// from raw labels and the path system.
pub fn bredon_delta(
    system: &LocalSystem<'_>,
    ctx: &GComplexCtx,
    n: usize,
) -> Result<AbHom> {
    delta_with(ctx, system.coeffs, n, |h, top| {
        let edge = ctx.gset.space.leading_edge(top)?;
        system.coefficient_morphism_edge(ctx.oc.identity_morphism(h), &edge)
    })
}

fn delta_with(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    n: usize,
    leading_action: impl Fn(usize, &FormalSimplex) -> Result<AbHom>,
) -> Result<AbHom> {
    let (domain, dom_offsets) = ctx.cochain_space(coeffs, n);
    let (codomain, cod_offsets) = ctx.cochain_space(coeffs, n + 1);
    log::debug!(
        "assembling coboundary in degree {n}: {} -> {} generators",
        domain.generators(),
        codomain.generators()
    );
    let mut matrix = IntMatrix::zero(codomain.generators(), domain.generators());
    if n + 1 <= ctx.truncation() {
        for (pos, orbit) in ctx.orbits[n + 1].iter().enumerate() {
            let h = ctx.stabilizer_ids[n + 1][pos];
            let top = FormalSimplex::nondegenerate(n + 1, orbit.rep);
            for i in 0..=(n + 1) {
                let face = ctx.gset.space.face(&top, i)?;
                let Some((src_pos, transport)) = face_contribution(ctx, coeffs, h, &face)? else {
                    continue;
                };
                let block = if i == 0 {
                    leading_action(h, &top)?.matrix.mul(&transport)
                } else {
                    let signed = transport;
                    if i % 2 == 1 {
                        signed.neg()
                    } else {
                        signed
                    }
                };
                add_block(
                    &mut matrix,
                    cod_offsets[pos],
                    dom_offsets[src_pos],
                    &block,
                );
            }
        }
    }
    AbHom::new(domain, codomain, matrix)
}

fn add_block(matrix: &mut IntMatrix, row: usize, col: usize, block: &IntMatrix) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let v = matrix.get(row + i, col + j) + block.get(i, j);
            matrix.set(row + i, col + j, v);
        }
    }
}

/// All coboundaries of one flavor, degrees 0..truncation.
pub fn build_deltas(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    flavor: Flavor,
    system: Option<&LocalSystem<'_>>,
) -> Result<Vec<AbHom>> {
    let d = ctx.truncation();
    (0..d)
        .map(|n| match flavor {
            Flavor::Twisted => twisted_delta(ctx, coeffs, kappa, n),
            Flavor::Bredon => {
                let system = system.ok_or_else(|| {
                    Error::PathMissing(
                        "compatibility coboundary needs a path system".to_string(),
                    )
                })?;
                bredon_delta(system, ctx, n)
            }
        })
        .collect()
}

/// Apply a coboundary to a stored cochain.
pub fn apply_delta(delta: &AbHom, f: &EquivariantCochain, ctx: &GComplexCtx, coeffs: &CoefficientData) -> EquivariantCochain {
    let out = delta.apply(&f.coords());
    EquivariantCochain::from_coords(ctx, coeffs, f.degree + 1, f.flavor, &out)
}

/// Invariant factors of H^n for all n <= truncation - 1.
pub fn cohomology_groups(deltas: &[AbHom]) -> Result<Vec<FGAbelianGroup>> {
    let mut groups = cohomology_of_complex(deltas)?;
    // H at the top degree needs one more dimension of simplices than the
    // truncation provides; it is not reported.
    groups.pop();
    Ok(groups)
}

/// The comparison map from compatibility cochains to twisted cochains: at
/// each orbit representative, transport along the based path to the
/// representative's leading vertex. With a based path system this is the
/// identity on storage; it is still computed honestly from holonomies.
pub fn bredon_to_twisted_hom(
    system: &LocalSystem<'_>,
    ctx: &GComplexCtx,
    n: usize,
) -> Result<AbHom> {
    comparison_hom(system, ctx, n, false)
}

/// The inverse comparison map, transporting back along reversed paths.
pub fn twisted_to_bredon_hom(
    system: &LocalSystem<'_>,
    ctx: &GComplexCtx,
    n: usize,
) -> Result<AbHom> {
    comparison_hom(system, ctx, n, true)
}

fn comparison_hom(
    system: &LocalSystem<'_>,
    ctx: &GComplexCtx,
    n: usize,
    reverse: bool,
) -> Result<AbHom> {
    let coeffs = system.coeffs;
    let (space, offsets) = ctx.cochain_space(coeffs, n);
    let mut matrix = IntMatrix::zero(space.generators(), space.generators());
    if n <= ctx.truncation() {
        for (pos, orbit) in ctx.orbits[n].iter().enumerate() {
            let h = ctx.stabilizer_ids[n][pos];
            let rep = FormalSimplex::nondegenerate(n, orbit.rep);
            let v0 = ctx.gset.space.vertex(&rep, 0)?.base.idx;
            let steps = system.path_for_vertex(v0)?;
            let hom = if reverse {
                let back: Vec<crate::localsys::PathStep> = steps
                    .iter()
                    .rev()
                    .map(|s| crate::localsys::PathStep {
                        edge: s.edge,
                        forward: !s.forward,
                    })
                    .collect();
                system.coefficient_morphism_path(ctx.oc.identity_morphism(h), v0, &back)?
            } else {
                system.coefficient_morphism_path(
                    ctx.oc.identity_morphism(h),
                    system.paths.base_vertex,
                    &steps,
                )?
            };
            add_block(&mut matrix, offsets[pos], offsets[pos], &hom.matrix);
        }
    }
    AbHom::new(space.clone(), space, matrix)
}

/// The hypotheses the comparison needs: a connected fixed complex at every
/// subgroup and a base vertex fixed by the whole group.
pub fn check_comparison_hypotheses(gset: &GSimplicialSet, oc: &OrbitCategory) -> Result<()> {
    if !crate::equivariant::is_g_connected(gset, oc) {
        return Err(Error::HypothesisViolation(
            "some fixed complex is empty or disconnected".to_string(),
        ));
    }
    if crate::equivariant::fixed_base_vertex(gset).is_none() {
        return Err(Error::HypothesisViolation(
            "no vertex is fixed by the whole group".to_string(),
        ));
    }
    Ok(())
}

/// Deterministic random cochain with coordinates in [-9, 9].
pub fn random_cochain(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    degree: usize,
    flavor: Flavor,
    rng: &mut impl rand::Rng,
) -> EquivariantCochain {
    let mut f = EquivariantCochain::zero(ctx, coeffs, degree, flavor);
    for block in &mut f.blocks {
        for v in block.iter_mut() {
            *v = BigInt::from(rng.random_range(-9i64..=9));
        }
    }
    f
}

/// A deterministic random cocycle: an integer combination of kernel-lattice
/// generators of the coboundary.
pub fn random_cocycle(
    ctx: &GComplexCtx,
    coeffs: &CoefficientData,
    delta: &AbHom,
    degree: usize,
    flavor: Flavor,
    rng: &mut impl rand::Rng,
) -> EquivariantCochain {
    let kernel = delta.kernel_lattice();
    let mut coords = vec![BigInt::zero(); delta.domain.generators()];
    for k in 0..kernel.cols() {
        let c = BigInt::from(rng.random_range(-3i64..=3));
        if c.is_zero() {
            continue;
        }
        for i in 0..kernel.rows() {
            coords[i] += kernel.get(i, k) * &c;
        }
    }
    EquivariantCochain::from_coords(ctx, coeffs, degree, flavor, &coords)
}
