//! Finitely generated abelian groups as integer-matrix presentations.
//!
//! A group is `Z^gens / colspan(presentation)`. Elements are
//! generator-coordinate vectors; equality is membership of the difference in
//! the relation lattice, decided through the cached Smith normal form. The
//! canonical form `(rank, invariant factors)` is the only notion of equality
//! between groups the rest of the crate uses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, solve, Snf};

#[derive(Debug, Clone)]
pub struct FGAbelianGroup {
    gens: usize,
    presentation: IntMatrix,
    rank: usize,
    torsion: Vec<BigInt>,
    snf: Snf,
}

impl PartialEq for FGAbelianGroup {
    /// Canonical-form equality, not presentation equality.
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }
}
impl Eq for FGAbelianGroup {}

impl FGAbelianGroup {
    pub fn from_presentation(presentation: IntMatrix) -> Self {
        let snf = smith_normal_form(&presentation);
        let gens = presentation.rows();
        let nonzero = snf.rank();
        let rank = gens - nonzero;
        let torsion = snf.invariant_factors();
        FGAbelianGroup {
            gens,
            presentation,
            rank,
            torsion,
            snf,
        }
    }

    pub fn free(n: usize) -> Self {
        Self::from_presentation(IntMatrix::zero(n, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_presentation(IntMatrix::from_i64_rows(&[vec![d as i64]]))
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.gens]
    }

    /// Whether `v` lies in the relation lattice, i.e. represents 0.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.gens, "element length mismatch");
        solve(&self.snf, v).is_some()
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    /// Canonical representative of `v` modulo the relation lattice.
    ///
    /// In SNF coordinates `y = U v` the lattice is spanned by `d_i e_i`, so
    /// each torsion coordinate is reduced mod `d_i` and the rest are kept.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.gens, "element length mismatch");
        let mut y = self.snf.u.mul_vec(v);
        let diag = self.snf.diagonal();
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                y[i] = y[i].mod_floor(d);
            }
        }
        self.snf.u_inv.mul_vec(&y)
    }

    /// Human-readable canonical form, e.g. `Z^2 + Z/2 + Z/4` or `0`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Direct sum; also returns the generator offset of each summand.
    pub fn direct_sum(groups: &[&FGAbelianGroup]) -> (FGAbelianGroup, Vec<usize>) {
        let mut offsets = Vec::with_capacity(groups.len());
        let mut acc = 0;
        for g in groups {
            offsets.push(acc);
            acc += g.gens;
        }
        let blocks: Vec<&IntMatrix> = groups.iter().map(|g| &g.presentation).collect();
        let pres = IntMatrix::block_diag(&blocks);
        (FGAbelianGroup::from_presentation(pres), offsets)
    }
}

impl std::fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.describe())
    }
}
