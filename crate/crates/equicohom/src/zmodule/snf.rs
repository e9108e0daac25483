//! Smith normal form over the integers, with unimodular transforms.
//!
//! `S = U * A * V` where `S` is diagonal with each diagonal entry dividing
//! the next. The inverses of `U` and `V` are tracked alongside, which makes
//! integer solving and kernel extraction cheap afterwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s.get(i, i).is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Diagonal entries >= 2, i.e. the invariant factors of the cokernel.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && d.abs() > BigInt::from(1))
            .map(|d| d.abs())
            .collect()
    }
}

/// Position of the entry with smallest nonzero absolute value in the
/// trailing submatrix starting at (t, t).
fn pivot_position(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let v = s.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((_, b)) if *b <= a => {}
                _ => best = Some(((i, j), a)),
            }
        }
    }
    best.map(|(p, _)| p)
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op on S is mirrored on U (and inverted on U_inv columns); same for
    // columns with V. Invariant: s == u * a * v throughout.
    macro_rules! row_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.add_row_multiple($dst, $src, &c);
            u.add_row_multiple($dst, $src, &c);
            u_inv.add_col_multiple($src, $dst, &(-&c));
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.add_col_multiple($dst, $src, &c);
            v.add_col_multiple($dst, $src, &c);
            v_inv.add_row_multiple($src, $dst, &(-&c));
        }};
    }

    let steps = rows.min(cols);
    for t in 0..steps {
        'place_pivot: loop {
            let Some((pi, pj)) = pivot_position(&s, t) else {
                break 'place_pivot;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            // Clear the pivot column.
            let mut dirty = false;
            for i in (t + 1)..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).div_floor(s.get(t, t));
                row_add!(i, t, -q);
                if !s.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'place_pivot;
            }
            // Clear the pivot row.
            for j in (t + 1)..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).div_floor(s.get(t, t));
                col_add!(j, t, -q);
                if !s.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'place_pivot;
            }

            // Divisibility: the pivot must divide every remaining entry.
            let p = s.get(t, t).clone();
            let mut offender = None;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !s.get(i, j).mod_floor(&p).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // Fold the offending row into the pivot row and redo.
                    row_add!(t, i, BigInt::from(1));
                    continue 'place_pivot;
                }
                None => break 'place_pivot,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }

    Snf {
        u,
        s,
        v,
        u_inv,
        v_inv,
    }
}

/// Exact integer solve of `A x = b`; `None` when no integer solution exists.
pub fn solve(snf: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = snf.s.rows();
    let cols = snf.s.cols();
    assert_eq!(b.len(), rows, "rhs length mismatch");
    let c = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let d = if i < cols {
            snf.s.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !c[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = c[i].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis of the integer kernel of `A`, one column per basis vector.
pub fn kernel_basis(snf: &Snf) -> IntMatrix {
    let rank = snf.rank();
    snf.v.column_slice(rank, snf.v.cols())
}

/// Basis of the column lattice of `A`, one column per basis vector.
pub fn column_lattice_basis(snf: &Snf) -> IntMatrix {
    let rank = snf.rank();
    let mut out = IntMatrix::zero(snf.s.rows(), rank);
    for k in 0..rank {
        let d = snf.s.get(k, k);
        for i in 0..snf.s.rows() {
            out.set(i, k, snf.u_inv.get(i, k) * d);
        }
    }
    out
}
