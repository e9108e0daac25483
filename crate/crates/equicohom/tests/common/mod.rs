//! Shared oracle code for the integration suites: an independent
//! non-equivariant twisted-cochain implementation with its own elimination,
//! plus bundle-loading helpers.
//!
//! Nothing here calls into the engine's linear algebra: Smith diagonals
//! come from a plain gcd sweep, kernels from column reduction of an
//! identity-augmented matrix, and solves from fraction-free elimination.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use equicohom::bundle::{compile, parse, CompiledBundle};
use equicohom::simplicial::{FormalSimplex, SimplicialSet};

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn load_fixture(name: &str) -> CompiledBundle {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    compile(&parse(&text).expect("fixture parses"), None).expect("fixture compiles")
}

pub const ALL_FIXTURES: &[&str] = &[
    "circle_trivial",
    "circle_sign",
    "circle_mod4",
    "theta_z2",
    "theta_rank2",
    "wedge_free_orbit",
    "cone_z2",
    "pillow_z2",
    "triangle_s3",
    "free_circles",
    "z4_spindle",
];

/// Smith diagonal by the textbook gcd sweep, no transform tracking.
pub fn oracle_smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        let mut pivot = None;
        'scan: for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let mut changed = false;
            for i in (top + 1)..rows {
                while !m[i][top].is_zero() {
                    let q = m[i][top].div_floor(&m[top][top]);
                    for j in top..cols {
                        let v = &m[i][j] - &q * &m[top][j];
                        m[i][j] = v;
                    }
                    if m[i][top].is_zero() {
                        break;
                    }
                    m.swap(i, top);
                    changed = true;
                }
            }
            for j in (top + 1)..cols {
                while !m[top][j].is_zero() {
                    let q = m[top][j].div_floor(&m[top][top]);
                    for row in m.iter_mut().skip(top) {
                        let v = &row[j] - &q * &row[top];
                        row[j] = v;
                    }
                    if m[top][j].is_zero() {
                        break;
                    }
                    for row in m.iter_mut().skip(top) {
                        row.swap(j, top);
                    }
                    changed = true;
                }
            }
            let row_clear = ((top + 1)..rows).all(|i| m[i][top].is_zero());
            let col_clear = ((top + 1)..cols).all(|j| m[top][j].is_zero());
            if row_clear && col_clear && !changed {
                break;
            }
        }
        let p = m[top][top].clone();
        let offender =
            ((top + 1)..rows).find(|&i| ((top + 1)..cols).any(|j| !m[i][j].mod_floor(&p).is_zero()));
        if let Some(i) = offender {
            for j in top..cols {
                let v = &m[top][j] + &m[i][j];
                m[top][j] = v;
            }
            continue;
        }
        out.push(m[top][top].abs());
        top += 1;
    }
    out
}

/// Invariant factors of coker(columns) inside Z^rank.
pub fn oracle_cokernel(rank: usize, columns: &[Vec<BigInt>]) -> (usize, Vec<BigInt>) {
    let m: Vec<Vec<BigInt>> = (0..rank)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    let diag = oracle_smith_diagonal(m);
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    (rank - nonzero, torsion)
}

/// Integer kernel basis via column elimination of an identity-augmented
/// matrix: columns whose top block vanishes span the kernel.
pub fn oracle_kernel(m: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = (0..rows + cols)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i < rows {
                        m[i][j].clone()
                    } else if i - rows == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut lead = 0;
    for r in 0..rows {
        if lead >= cols {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in lead..cols {
                if work[r][j].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if work[r][b].abs() <= work[r][j].abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(p) = best else { break };
            for row in work.iter_mut() {
                row.swap(lead, p);
            }
            let mut done = true;
            for j in (lead + 1)..cols {
                if work[r][j].is_zero() {
                    continue;
                }
                let q = work[r][j].div_floor(&work[r][lead]);
                for row in work.iter_mut() {
                    let v = &row[j] - &q * &row[lead];
                    row[j] = v;
                }
                if !work[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                lead += 1;
                break;
            }
        }
    }
    let mut out = Vec::new();
    for j in 0..cols {
        if (0..rows).all(|i| work[i][j].is_zero()) {
            out.push((0..cols).map(|i| work[rows + i][j].clone()).collect());
        }
    }
    out
}

/// Solve basis * z = v exactly for each v (assumed solvable), by
/// fraction-free elimination.
pub fn oracle_express_in_basis(
    basis: &[Vec<BigInt>],
    vectors: &[Vec<BigInt>],
    ambient: usize,
) -> Vec<Vec<BigInt>> {
    vectors
        .iter()
        .map(|v| {
            let n = basis.len();
            let mut aug: Vec<Vec<BigInt>> = (0..ambient)
                .map(|i| {
                    let mut row: Vec<BigInt> = (0..n).map(|k| basis[k][i].clone()).collect();
                    row.push(v[i].clone());
                    row
                })
                .collect();
            let mut piv_rows = Vec::new();
            let mut r = 0;
            for c in 0..n {
                let Some(p) = (r..ambient).find(|&i| !aug[i][c].is_zero()) else {
                    continue;
                };
                aug.swap(r, p);
                for i in 0..ambient {
                    if i == r || aug[i][c].is_zero() {
                        continue;
                    }
                    let a = aug[r][c].clone();
                    let b = aug[i][c].clone();
                    let g = a.gcd(&b);
                    let (fa, fb) = (&a / &g, &b / &g);
                    for k in 0..=n {
                        let val = &aug[i][k] * &fa - &aug[r][k] * &fb;
                        aug[i][k] = val;
                    }
                }
                piv_rows.push((r, c));
                r += 1;
            }
            let mut z = vec![BigInt::zero(); n];
            for &(row, col) in &piv_rows {
                let (q, rem) = aug[row][n].div_rem(&aug[row][col]);
                assert!(rem.is_zero(), "oracle solve produced a fraction");
                z[col] = q;
            }
            z
        })
        .collect()
}

/// The ordinary (non-equivariant) twisted coboundary matrices of a plain
/// simplicial set with rank-one integer coefficients and sign-valued
/// holonomy, built directly on simplices.
pub fn plain_twisted_matrices(
    space: &SimplicialSet,
    label_of_edge: &dyn Fn(usize) -> usize,
    sign_of_label: &dyn Fn(usize) -> i64,
) -> Vec<Vec<Vec<BigInt>>> {
    let d = space.truncation();
    let mut mats = Vec::new();
    for n in 0..d {
        let rows = space.count(n + 1);
        let cols = space.count(n);
        let mut m = vec![vec![BigInt::zero(); cols]; rows];
        for t in 0..rows {
            let x = FormalSimplex::nondegenerate(n + 1, t);
            for i in 0..=(n + 1) {
                let f = space.face(&x, i).unwrap();
                if !f.is_nondegenerate() {
                    continue;
                }
                let coef = if i == 0 {
                    let edge = space.leading_edge(&x).unwrap();
                    let label = if edge.is_nondegenerate() {
                        label_of_edge(edge.base.idx)
                    } else {
                        0
                    };
                    // Inverse action; the sign character squares to one.
                    BigInt::from(sign_of_label(label))
                } else if i % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                m[t][f.base.idx] += coef;
            }
        }
        mats.push(m);
    }
    mats
}

/// Cohomology of the plain complex with the oracle's own elimination:
/// (rank, torsion) per degree 0..truncation-1.
pub fn plain_cohomology(
    space: &SimplicialSet,
    mats: &[Vec<Vec<BigInt>>],
) -> Vec<(usize, Vec<BigInt>)> {
    let d = space.truncation();
    let mut out = Vec::new();
    for n in 0..d {
        let rows = space.count(n + 1);
        let cols = space.count(n);
        let kernel = oracle_kernel(&mats[n], rows, cols);
        let mut boundaries: Vec<Vec<BigInt>> = Vec::new();
        if n > 0 {
            let prev = &mats[n - 1];
            for j in 0..space.count(n - 1) {
                boundaries.push((0..cols).map(|i| prev[i][j].clone()).collect());
            }
        }
        let expressed = oracle_express_in_basis(&kernel, &boundaries, cols);
        out.push(oracle_cokernel(kernel.len(), &expressed));
    }
    out
}

/// Cohomology with Z/d coefficients (d = 0 means Z), rank one: kernels are
/// lattices {x : Mx = 0 mod d}, extracted from the kernel of [M | d*I],
/// and images pick up the d-multiples of every generator.
pub fn plain_cohomology_mod(
    space: &SimplicialSet,
    mats: &[Vec<Vec<BigInt>>],
    modulus: u64,
) -> Vec<(usize, Vec<BigInt>)> {
    if modulus == 0 {
        return plain_cohomology(space, mats);
    }
    let d = BigInt::from(modulus);
    let mut out = Vec::new();
    for n in 0..space.truncation() {
        let rows = space.count(n + 1);
        let cols = space.count(n);
        let aug: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let mut row = mats[n][i].clone();
                for j in 0..rows {
                    row.push(if i == j { d.clone() } else { BigInt::zero() });
                }
                row
            })
            .collect();
        // d*I has full row rank, so projecting the kernel basis of the
        // augmented matrix to the first block keeps it a basis.
        let kernel: Vec<Vec<BigInt>> = oracle_kernel(&aug, rows, cols + rows)
            .into_iter()
            .map(|v| v[..cols].to_vec())
            .collect();
        let mut boundaries: Vec<Vec<BigInt>> = Vec::new();
        if n > 0 {
            let prev = &mats[n - 1];
            for j in 0..space.count(n - 1) {
                boundaries.push((0..cols).map(|i| prev[i][j].clone()).collect());
            }
        }
        for i in 0..cols {
            let mut col = vec![BigInt::zero(); cols];
            col[i] = d.clone();
            boundaries.push(col);
        }
        let expressed = oracle_express_in_basis(&kernel, &boundaries, cols);
        out.push(oracle_cokernel(kernel.len(), &expressed));
    }
    out
}
