//! The classifying complex of a group: q-simplices are q-tuples of group
//! elements.
//!
//! The face convention is pinned by the twisting-function audit, not by
//! fiat: the leading face drops the first entry, inner faces merge
//! neighbours with the later entry multiplied on the left
//! (`g_{i+1} * g_i`), the last face drops the last entry, and degeneracies
//! insert identities. With this convention the first-entry projection is a
//! twisting function for the cocycle orientation used everywhere else; the
//! opposite merge order fails the audit for nonabelian groups.

use crate::equivariant::FinGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WBarSimplex {
    pub subgroup: usize,
    pub entries: Vec<usize>,
}

impl WBarSimplex {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

pub fn wbar_face(group: &FinGroup, w: &WBarSimplex, i: usize) -> Result<WBarSimplex> {
    let q = w.dim();
    if q == 0 || i > q {
        return Err(Error::IndexOutOfRange(format!(
            "face {i} of a {q}-simplex of the classifying complex"
        )));
    }
    let mut entries = w.entries.clone();
    if i == 0 {
        entries.remove(0);
    } else if i == q {
        entries.pop();
    } else {
        let merged = group.mul(entries[i], entries[i - 1]);
        entries[i - 1] = merged;
        entries.remove(i);
    }
    Ok(WBarSimplex {
        subgroup: w.subgroup,
        entries,
    })
}

pub fn wbar_degeneracy(group: &FinGroup, w: &WBarSimplex, j: usize) -> Result<WBarSimplex> {
    let q = w.dim();
    if j > q {
        return Err(Error::IndexOutOfRange(format!(
            "degeneracy {j} of a {q}-simplex of the classifying complex"
        )));
    }
    let mut entries = w.entries.clone();
    entries.insert(j, group.identity());
    Ok(WBarSimplex {
        subgroup: w.subgroup,
        entries,
    })
}

/// The canonical twisting of the classifying complex: the first entry.
pub fn canonical_twist(w: &WBarSimplex) -> Result<usize> {
    w.entries.first().copied().ok_or_else(|| {
        Error::IndexOutOfRange("canonical twist of a 0-simplex".to_string())
    })
}

/// Apply a group homomorphism entrywise (the structure map of the diagram
/// of classifying complexes).
pub fn wbar_map(f: &[usize], subgroup: usize, w: &WBarSimplex) -> WBarSimplex {
    WBarSimplex {
        subgroup,
        entries: w.entries.iter().map(|&g| f[g]).collect(),
    }
}

/// All q-tuples over the group, lex order.
pub fn all_simplices(group: &FinGroup, subgroup: usize, q: usize) -> Vec<WBarSimplex> {
    let mut out = vec![WBarSimplex {
        subgroup,
        entries: Vec::new(),
    }];
    for _ in 0..q {
        let mut next = Vec::new();
        for w in &out {
            for g in 0..group.order() {
                let mut entries = w.entries.clone();
                entries.push(g);
                next.push(WBarSimplex { subgroup, entries });
            }
        }
        out = next;
    }
    out
}
