//! Normalized cochains on standard simplices: the building blocks of the
//! classifying fibration's fiber. A value is stored for every strictly
//! increasing tuple; faces and degeneracies precompose with the coface and
//! codegeneracy vertex maps.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::localsys::CoefficientData;
use crate::zmodule::{AbHom, FGAbelianGroup};

/// Strictly increasing tuples in {0..=q} of the given length, lex order.
pub fn tuples(q: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=q {
            cur.push(v);
            rec(v + 1, q, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(0, q, len, &mut cur, &mut out);
    out
}

fn tuple_rank(q: usize, t: &[usize]) -> usize {
    tuples(q, t.len())
        .iter()
        .position(|u| u == t)
        .expect("tuple in range")
}

/// A normalized n-cochain on the standard q-simplex with values in
/// M0(G/H), stored densely over the increasing (n+1)-tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmCochain {
    pub subgroup: usize,
    pub degree: usize,
    pub simplex_dim: usize,
    /// Generator count of the coefficient group, kept explicitly so that
    /// empty tuple ranges still know their coordinate width.
    pub gens: usize,
    pub values: Vec<Vec<BigInt>>,
}

impl EmCochain {
    pub fn zero(coeffs: &CoefficientData, subgroup: usize, degree: usize, simplex_dim: usize) -> Self {
        let count = tuples(simplex_dim, degree + 1).len();
        let group = coeffs.m0.group(subgroup);
        EmCochain {
            subgroup,
            degree,
            simplex_dim,
            gens: group.generators(),
            values: vec![group.zero_element(); count],
        }
    }

    pub fn value(&self, t: &[usize]) -> &[BigInt] {
        &self.values[tuple_rank(self.simplex_dim, t)]
    }

    pub fn set_value(&mut self, t: &[usize], v: Vec<BigInt>) {
        let r = tuple_rank(self.simplex_dim, t);
        self.values[r] = v;
    }

    /// Precompose with the i-th coface: a cochain on the (q-1)-simplex.
    pub fn face(&self, i: usize) -> EmCochain {
        assert!(i <= self.simplex_dim, "coface index out of range");
        let q = self.simplex_dim - 1;
        let values = tuples(q, self.degree + 1)
            .into_iter()
            .map(|t| {
                let lifted: Vec<usize> =
                    t.iter().map(|&v| if v < i { v } else { v + 1 }).collect();
                self.value(&lifted).to_vec()
            })
            .collect();
        EmCochain {
            subgroup: self.subgroup,
            degree: self.degree,
            simplex_dim: q,
            gens: self.gens,
            values,
        }
    }

    /// Precompose with the j-th codegeneracy: a cochain on the
    /// (q+1)-simplex. Tuples collapsing to a repeated vertex are normalized
    /// away to zero.
    pub fn degeneracy(&self, j: usize) -> EmCochain {
        assert!(j <= self.simplex_dim, "codegeneracy index out of range");
        let q = self.simplex_dim + 1;
        let zero = vec![BigInt::zero(); self.gens];
        let values = tuples(q, self.degree + 1)
            .into_iter()
            .map(|t| {
                let collapsed: Vec<usize> =
                    t.iter().map(|&v| if v <= j { v } else { v - 1 }).collect();
                let repeats = collapsed.windows(2).any(|w| w[0] == w[1]);
                if repeats {
                    zero.clone()
                } else {
                    self.value(&collapsed).to_vec()
                }
            })
            .collect();
        EmCochain {
            subgroup: self.subgroup,
            degree: self.degree,
            simplex_dim: q,
            gens: self.gens,
            values,
        }
    }

    /// The simplicial coboundary on the same simplex, one degree up.
    pub fn delta(&self) -> EmCochain {
        let q = self.simplex_dim;
        let gens = self.gens;
        let values = tuples(q, self.degree + 2)
            .into_iter()
            .map(|t| {
                let mut acc = vec![BigInt::zero(); gens];
                for i in 0..t.len() {
                    let mut sub = t.clone();
                    sub.remove(i);
                    let v = self.value(&sub);
                    if i % 2 == 0 {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a += b;
                        }
                    } else {
                        for (a, b) in acc.iter_mut().zip(v) {
                            *a -= b;
                        }
                    }
                }
                acc
            })
            .collect();
        EmCochain {
            subgroup: self.subgroup,
            degree: self.degree + 1,
            simplex_dim: q,
            gens,
            values,
        }
    }

    /// Apply a coefficient homomorphism to every value; the subgroup tag of
    /// the result is supplied by the caller.
    pub fn map_values(&self, hom: &AbHom, subgroup: usize) -> EmCochain {
        EmCochain {
            subgroup,
            degree: self.degree,
            simplex_dim: self.simplex_dim,
            gens: hom.codomain.generators(),
            values: self.values.iter().map(|v| hom.apply(v)).collect(),
        }
    }

    pub fn add(&self, other: &EmCochain) -> EmCochain {
        assert_eq!(self.values.len(), other.values.len());
        EmCochain {
            subgroup: self.subgroup,
            degree: self.degree,
            simplex_dim: self.simplex_dim,
            gens: self.gens,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &EmCochain) -> EmCochain {
        assert_eq!(self.values.len(), other.values.len());
        EmCochain {
            subgroup: self.subgroup,
            degree: self.degree,
            simplex_dim: self.simplex_dim,
            gens: self.gens,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self, group: &FGAbelianGroup) -> bool {
        self.values.iter().all(|v| group.is_zero_element(v))
    }

    pub fn equals(&self, group: &FGAbelianGroup, other: &EmCochain) -> bool {
        self.degree == other.degree
            && self.simplex_dim == other.simplex_dim
            && self.sub(other).is_zero(group)
    }
}
