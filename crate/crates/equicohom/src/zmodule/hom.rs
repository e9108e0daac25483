//! Homomorphisms between presented abelian groups.

use num_bigint::BigInt;

use super::group::FGAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::{kernel_basis, smith_normal_form};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct AbHom {
    pub domain: FGAbelianGroup,
    pub codomain: FGAbelianGroup,
    /// codomain.generators() x domain.generators(), acting on coordinates.
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: FGAbelianGroup, codomain: FGAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.generators() || matrix.cols() != domain.generators() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.generators(),
                domain.generators()
            )));
        }
        Ok(AbHom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(group: &FGAbelianGroup) -> Self {
        AbHom {
            domain: group.clone(),
            codomain: group.clone(),
            matrix: IntMatrix::identity(group.generators()),
        }
    }

    pub fn zero(domain: &FGAbelianGroup, codomain: &FGAbelianGroup) -> Self {
        AbHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zero(codomain.generators(), domain.generators()),
        }
    }

    /// True iff the matrix carries the domain's relation lattice into the
    /// codomain's, i.e. induces a map of cokernels.
    pub fn is_well_defined(&self) -> bool {
        let rels = self.domain.presentation();
        let image = self.matrix.mul(rels);
        (0..image.cols()).all(|j| self.codomain.is_zero_element(&image.column(j)))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// self after other.
    pub fn compose(&self, other: &AbHom) -> AbHom {
        assert_eq!(
            other.codomain.generators(),
            self.domain.generators(),
            "composition shape mismatch"
        );
        AbHom {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        AbHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        AbHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn neg(&self) -> AbHom {
        AbHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.neg(),
        }
    }

    /// Zero as a map of presented groups (not necessarily a zero matrix).
    pub fn is_zero_hom(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_element(&self.matrix.column(j)))
    }

    /// Pointwise equality as maps of presented groups.
    pub fn equals(&self, other: &AbHom) -> bool {
        self.matrix.rows() == other.matrix.rows()
            && self.matrix.cols() == other.matrix.cols()
            && self.sub(other).is_zero_hom()
    }

    /// Basis (as columns) of the lattice `{x : self(x) = 0 in the codomain}`.
    ///
    /// Solutions are the projections to the domain coordinates of the kernel
    /// of `[matrix | codomain relations]`, reduced to an independent basis.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let stacked = self.matrix.hstack(self.codomain.presentation());
        let snf = smith_normal_form(&stacked);
        let ker = kernel_basis(&snf);
        let projected = ker.row_slice(0, self.domain.generators());
        // The projection of independent vectors may be dependent; re-extract
        // a lattice basis.
        let psnf = smith_normal_form(&projected);
        super::snf::column_lattice_basis(&psnf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_torsion_is_well_defined() {
        let z2 = FGAbelianGroup::cyclic(2);
        assert!(AbHom::identity(&z2).is_well_defined());
    }

    #[test]
    fn torsion_to_free_obstruction() {
        // Z/2 -> Z sending the generator to the generator: 2*gen must die but
        // maps to 2 != 0.
        let h = AbHom::new(
            FGAbelianGroup::cyclic(2),
            FGAbelianGroup::free(1),
            IntMatrix::identity(1),
        )
        .unwrap();
        assert!(!h.is_well_defined());
    }

    #[test]
    fn multiplication_by_three_on_z6() {
        // 6*gen maps to 18 = 0 mod 6.
        let z6 = FGAbelianGroup::cyclic(6);
        let h = AbHom::new(z6.clone(), z6, IntMatrix::from_i64_rows(&[vec![3]])).unwrap();
        assert!(h.is_well_defined());
    }

    #[test]
    fn zero_hom_modulo_relations() {
        // Multiplication by 2 on Z/2 is the zero map though the matrix isn't.
        let z2 = FGAbelianGroup::cyclic(2);
        let h = AbHom::new(z2.clone(), z2, IntMatrix::from_i64_rows(&[vec![2]])).unwrap();
        assert!(h.is_zero_hom());
    }

    #[test]
    fn kernel_lattice_into_torsion() {
        // Z -> Z/4 by 1: kernel is 4Z.
        let h = AbHom::new(
            FGAbelianGroup::free(1),
            FGAbelianGroup::cyclic(4),
            IntMatrix::identity(1),
        )
        .unwrap();
        let k = h.kernel_lattice();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0).magnitude(), &BigInt::from(4).magnitude().clone());
    }
}
