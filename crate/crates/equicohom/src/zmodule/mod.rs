//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups as presentations, homomorphisms between them, and
//! cohomology of cochain complexes of such groups.

mod complex;
mod group;
mod hom;
mod matrix;
mod snf;

pub use complex::cohomology_of_complex;
pub use group::FGAbelianGroup;
pub use hom::AbHom;
pub use matrix::IntMatrix;
pub use snf::{column_lattice_basis, kernel_basis, smith_normal_form, solve, Snf};
