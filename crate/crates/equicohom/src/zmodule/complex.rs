//! Cohomology of a cochain complex of presented abelian groups.
//!
//! Everything happens in free covers: the kernel of an induced map is the
//! lattice of generator vectors landing in the codomain's relation lattice,
//! and images pick up the relation columns of the ambient group. Quotients
//! come out in invariant-factor form via Smith normal form.

use num_bigint::BigInt;

use super::group::FGAbelianGroup;
use super::hom::AbHom;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, solve};
use crate::error::{Error, Result};

/// Groups `C^0 -> C^1 -> ... -> C^N` presented by `deltas[n]: C^n -> C^{n+1}`;
/// returns `H^0..H^N`. An empty complex has no cohomology groups.
pub fn cohomology_of_complex(deltas: &[AbHom]) -> Result<Vec<FGAbelianGroup>> {
    if deltas.is_empty() {
        return Ok(Vec::new());
    }
    for (n, pair) in deltas.windows(2).enumerate() {
        if pair[0].codomain.generators() != pair[1].domain.generators()
            || pair[0].codomain.presentation() != pair[1].domain.presentation()
        {
            return Err(Error::DimensionMismatch(format!(
                "codomain of delta^{} does not match domain of delta^{}",
                n,
                n + 1
            )));
        }
        if !pair[1].compose(&pair[0]).is_zero_hom() {
            return Err(Error::ComplexNotExact(format!(
                "delta^{} o delta^{} != 0",
                n + 1,
                n
            )));
        }
        if !pair[0].is_well_defined() || !pair[1].is_well_defined() {
            return Err(Error::Validation(format!(
                "coboundary near degree {n} does not respect relations"
            )));
        }
    }
    if deltas.len() == 1 && !deltas[0].is_well_defined() {
        return Err(Error::Validation(
            "coboundary does not respect relations".to_string(),
        ));
    }

    let top = deltas.len();
    let mut out = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let group = if n < top {
            &deltas[n].domain
        } else {
            &deltas[top - 1].codomain
        };
        let gens = group.generators();

        // Kernel lattice of the outgoing map (everything at the top degree).
        let kernel: IntMatrix = if n < top {
            deltas[n].kernel_lattice()
        } else {
            IntMatrix::identity(gens)
        };

        // Image of the incoming map plus the relation lattice.
        let mut boundary_cols: Vec<Vec<BigInt>> = Vec::new();
        if n > 0 {
            let d = &deltas[n - 1].matrix;
            for j in 0..d.cols() {
                boundary_cols.push(d.column(j));
            }
        }
        let rels = group.presentation();
        for j in 0..rels.cols() {
            boundary_cols.push(rels.column(j));
        }

        out.push(quotient_lattice(&kernel, &boundary_cols, gens)?);
    }
    Ok(out)
}

/// `span(kernel columns) / span(boundary columns)` as an abstract group.
/// Every boundary column must lie in the kernel lattice.
fn quotient_lattice(
    kernel: &IntMatrix,
    boundaries: &[Vec<BigInt>],
    ambient: usize,
) -> Result<FGAbelianGroup> {
    assert_eq!(kernel.rows(), ambient);
    let basis_rank = kernel.cols();
    if basis_rank == 0 {
        return Ok(FGAbelianGroup::zero());
    }
    let ksnf = smith_normal_form(kernel);
    let mut expressed: Vec<Vec<BigInt>> = Vec::with_capacity(boundaries.len());
    for b in boundaries {
        let z = solve(&ksnf, b).ok_or_else(|| {
            Error::Internal("boundary vector escapes the cocycle lattice".to_string())
        })?;
        expressed.push(z);
    }
    let rel = IntMatrix::from_columns(basis_rank, &expressed);
    Ok(FGAbelianGroup::from_presentation(rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_hom(rows: &[Vec<i64>]) -> AbHom {
        let m = IntMatrix::from_i64_rows(rows);
        AbHom::new(
            FGAbelianGroup::free(m.cols()),
            FGAbelianGroup::free(m.rows()),
            m,
        )
        .unwrap()
    }

    #[test]
    fn zero_map_circle_complex() {
        // 0 -> Z -(0)-> Z -> 0
        let h = cohomology_of_complex(&[free_hom(&[vec![0]])]).unwrap();
        assert_eq!(h[0].describe(), "Z");
        assert_eq!(h[1].describe(), "Z");
    }

    #[test]
    fn doubling_map_complex() {
        // 0 -> Z -(2)-> Z -> 0
        let h = cohomology_of_complex(&[free_hom(&[vec![2]])]).unwrap();
        assert_eq!(h[0].describe(), "0");
        assert_eq!(h[1].describe(), "Z/2");
    }

    #[test]
    fn empty_complex() {
        assert!(cohomology_of_complex(&[]).unwrap().is_empty());
    }

    #[test]
    fn non_exact_complex_rejected() {
        let d0 = free_hom(&[vec![1]]);
        let d1 = free_hom(&[vec![1]]);
        let err = cohomology_of_complex(&[d0, d1]).unwrap_err();
        assert!(matches!(err, Error::ComplexNotExact(_)));
    }

    #[test]
    fn torsion_coefficient_circle() {
        // Z/4 -(2)-> Z/4 models a circle with a holonomy of order two on Z/4
        // coefficients: H^0 = Z/2 (kernel {0,2}) and H^1 = Z/2.
        let z4 = FGAbelianGroup::cyclic(4);
        let d = AbHom::new(z4.clone(), z4, IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        let h = cohomology_of_complex(&[d]).unwrap();
        assert_eq!(h[0].describe(), "Z/2");
        assert_eq!(h[1].describe(), "Z/2");
    }
}
