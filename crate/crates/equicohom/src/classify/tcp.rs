//! Twisted cartesian product cells over the classifying complex, the
//! classifying map of a twisting cocycle, and the fundamental cochain.
//!
//! Only the leading face is twisted: it acts on the fiber component through
//! the action of the base simplex's first entry. Everything else is
//! componentwise, so the total objects are never materialized; cells are
//! handled pointwise.

use num_bigint::BigInt;

use super::em::EmCochain;
use super::wbar::{canonical_twist, wbar_degeneracy, wbar_face, WBarSimplex};
use crate::equivariant::GSimplicialSet;
use crate::error::{Error, Result};
use crate::localsys::{twist_of_simplex, CoefficientData, TwistingCocycle};
use crate::simplicial::FormalSimplex;

#[derive(Debug, Clone)]
pub struct TcpSimplex {
    pub cochain: EmCochain,
    pub base: WBarSimplex,
}

impl TcpSimplex {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }
}

pub fn tcp_face(coeffs: &CoefficientData, t: &TcpSimplex, i: usize) -> Result<TcpSimplex> {
    if t.cochain.simplex_dim != t.base.dim() {
        return Err(Error::DimensionMismatch(
            "twisted product cell has mismatched components".to_string(),
        ));
    }
    let h = t.base.subgroup;
    let group = &coeffs.pi.groups[h];
    let base = wbar_face(group, &t.base, i)?;
    let cochain = if i == 0 {
        let a = canonical_twist(&t.base)?;
        t.cochain.face(0).map_values(coeffs.phi.act(h, a), h)
    } else {
        t.cochain.face(i)
    };
    Ok(TcpSimplex { cochain, base })
}

pub fn tcp_degeneracy(coeffs: &CoefficientData, t: &TcpSimplex, j: usize) -> Result<TcpSimplex> {
    let h = t.base.subgroup;
    let group = &coeffs.pi.groups[h];
    Ok(TcpSimplex {
        cochain: t.cochain.degeneracy(j),
        base: wbar_degeneracy(group, &t.base, j)?,
    })
}

/// Structure map of the diagram of twisted products along an orbit
/// morphism: coefficients through M0, base entries through pi.
pub fn tcp_map(
    coeffs: &CoefficientData,
    morphism: usize,
    src_subgroup: usize,
    t: &TcpSimplex,
) -> TcpSimplex {
    let hom = coeffs.m0.map(morphism);
    let cochain = t.cochain.map_values(hom, src_subgroup);
    let entries = t
        .base
        .entries
        .iter()
        .map(|&g| coeffs.pi.map(morphism, g))
        .collect();
    TcpSimplex {
        cochain,
        base: WBarSimplex {
            subgroup: src_subgroup,
            entries,
        },
    }
}

/// The classifying map of a twisting cocycle: a q-simplex goes to the tuple
/// of derived twisting values along iterated leading faces. Its first entry
/// recovers the twisting, and it commutes with faces and degeneracies
/// (checked by the identity suite, not assumed).
pub fn classifying_map(
    gset: &GSimplicialSet,
    coeffs: &CoefficientData,
    kappa: &TwistingCocycle,
    h: usize,
    x: &FormalSimplex,
) -> Result<WBarSimplex> {
    let q = x.dim();
    let mut entries = Vec::with_capacity(q);
    let mut cur = x.clone();
    for _ in 0..q {
        entries.push(twist_of_simplex(gset, &coeffs.pi, kappa, h, &cur)?);
        if cur.dim() > 1 {
            cur = gset.space.face(&cur, 0)?;
        }
    }
    Ok(WBarSimplex {
        subgroup: h,
        entries,
    })
}

/// The tautological cochain: evaluate the fiber component at the top
/// simplex. Defined on cells whose dimension equals the cochain degree.
pub fn fundamental_cochain(t: &TcpSimplex) -> Result<Vec<BigInt>> {
    let n = t.dim();
    if t.cochain.degree != n || t.cochain.simplex_dim != n {
        return Err(Error::DimensionMismatch(format!(
            "fundamental cochain needs a degree-{n} cochain on the {n}-simplex"
        )));
    }
    let top: Vec<usize> = (0..=n).collect();
    Ok(t.cochain.value(&top).to_vec())
}

/// Generic simplicial-identity audit over closures, for objects handled
/// pointwise. Returns one message per failed identity.
pub fn check_simplicial_identities<C: Clone>(
    cells: &[(usize, C)],
    face: &dyn Fn(usize, &C, usize) -> Result<C>,
    degeneracy: &dyn Fn(usize, &C, usize) -> Result<C>,
    eq: &dyn Fn(&C, &C) -> bool,
    label: &str,
) -> Vec<String> {
    let mut bad = Vec::new();
    let mut ensure = |ok: bool, msg: String| {
        if !ok {
            bad.push(msg);
        }
    };
    for (d, cell) in cells {
        let d = *d;
        if d >= 2 {
            for j in 1..=d {
                for i in 0..j {
                    let a = face(d - 1, &face(d, cell, j).unwrap(), i).unwrap();
                    let b = face(d - 1, &face(d, cell, i).unwrap(), j - 1).unwrap();
                    ensure(eq(&a, &b), format!("{label}: face-face ({i},{j}) in dim {d}"));
                }
            }
        }
        for j in 0..=d {
            let sj = degeneracy(d, cell, j).unwrap();
            ensure(
                eq(&face(d + 1, &sj, j).unwrap(), cell),
                format!("{label}: face {j} of degeneracy {j} in dim {d}"),
            );
            ensure(
                eq(&face(d + 1, &sj, j + 1).unwrap(), cell),
                format!("{label}: face {} of degeneracy {j} in dim {d}", j + 1),
            );
            for i in 0..j {
                let a = face(d + 1, &sj, i).unwrap();
                let b = degeneracy(d - 1, &face(d, cell, i).unwrap(), j - 1).unwrap();
                ensure(eq(&a, &b), format!("{label}: face {i} degeneracy {j} in dim {d}"));
            }
            for i in (j + 2)..=(d + 1) {
                let a = face(d + 1, &sj, i).unwrap();
                let b = degeneracy(d, &face(d, cell, i - 1).unwrap(), j).unwrap();
                ensure(eq(&a, &b), format!("{label}: face {i} degeneracy {j} in dim {d}"));
            }
            for i in 0..=j {
                let a = degeneracy(d + 1, &sj, i).unwrap();
                let b = degeneracy(d + 1, &degeneracy(d, cell, i).unwrap(), j + 1).unwrap();
                ensure(
                    eq(&a, &b),
                    format!("{label}: degeneracy {i} degeneracy {j} in dim {d}"),
                );
            }
        }
    }
    bad
}
