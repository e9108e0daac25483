//! Finite, dimension-truncated simplicial sets with degeneracy normal
//! forms.
//!
//! Only nondegenerate simplices are stored; every simplex is a
//! `FormalSimplex`, a strictly decreasing degeneracy word applied to a
//! nondegenerate base. Face and degeneracy application rewrite through the
//! simplicial identities to keep that normal form, so two formal simplices
//! are equal iff they are structurally equal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Strictly decreasing word `s_{j1} s_{j2} ... s_{jk}`, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn empty() -> Self {
        DegeneracyWord(Vec::new())
    }

    pub fn new(indices: Vec<usize>) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::Validation(format!(
                    "degeneracy word not strictly decreasing: {indices:?}"
                )));
            }
        }
        Ok(DegeneracyWord(indices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.contains(&j)
    }

    /// Normal form of `s_j` composed outside this word, via
    /// `s_i s_j = s_{j+1} s_i` for `i <= j`.
    fn push_outer(&self, j: usize) -> DegeneracyWord {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut rest = self.0.as_slice();
        // j slides inward unchanged, bumping every head it passes.
        while let Some(&head) = rest.first() {
            if j > head {
                break;
            }
            out.push(head + 1);
            rest = &rest[1..];
        }
        out.push(j);
        out.extend_from_slice(rest);
        DegeneracyWord(out)
    }

    /// Remove one occurrence of `j`, pulling it to the outside first:
    /// `s_a s_j = s_j s_{a-1}` for `j < a`. Returns the inner remainder.
    fn divide(&self, j: usize) -> Option<DegeneracyWord> {
        let pos = self.0.iter().position(|&a| a == j)?;
        let mut out = Vec::with_capacity(self.0.len() - 1);
        for &a in &self.0[..pos] {
            out.push(a - 1);
        }
        out.extend_from_slice(&self.0[pos + 1..]);
        Some(DegeneracyWord(out))
    }
}

/// Reference to a nondegenerate simplex of some complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexRef {
    pub dim: usize,
    pub idx: usize,
}

/// A possibly-degenerate simplex in degeneracy normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSimplex {
    pub word: DegeneracyWord,
    pub base: SimplexRef,
}

impl FormalSimplex {
    pub fn nondegenerate(dim: usize, idx: usize) -> Self {
        FormalSimplex {
            word: DegeneracyWord::empty(),
            base: SimplexRef { dim, idx },
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }
}

/// A face or degeneracy operator, for mixed-word application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Debug, Clone)]
pub struct SimplicialSet {
    truncation: usize,
    /// names[q] lists the identifiers of the nondegenerate q-simplices.
    names: Vec<Vec<String>>,
    /// faces[q][idx][i] for q >= 1; faces[0] is empty.
    faces: Vec<Vec<Vec<FormalSimplex>>>,
    name_index: BTreeMap<String, SimplexRef>,
}

impl SimplicialSet {
    pub fn new(
        truncation: usize,
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<FormalSimplex>>>,
    ) -> Result<Self> {
        if names.len() != truncation + 1 || faces.len() != truncation + 1 {
            return Err(Error::Validation(format!(
                "expected tables for dimensions 0..={truncation}"
            )));
        }
        let mut name_index = BTreeMap::new();
        for (q, level) in names.iter().enumerate() {
            for (idx, name) in level.iter().enumerate() {
                if name_index
                    .insert(name.clone(), SimplexRef { dim: q, idx })
                    .is_some()
                {
                    return Err(Error::Validation(format!("duplicate simplex name {name:?}")));
                }
            }
        }
        let sset = SimplicialSet {
            truncation,
            names,
            faces,
            name_index,
        };
        sset.validate()?;
        Ok(sset)
    }

    fn validate(&self) -> Result<()> {
        for q in 1..=self.truncation {
            if self.faces[q].len() != self.names[q].len() {
                return Err(Error::Validation(format!(
                    "face table size mismatch in dimension {q}"
                )));
            }
            for (idx, fs) in self.faces[q].iter().enumerate() {
                if fs.len() != q + 1 {
                    return Err(Error::Validation(format!(
                        "{} needs {} faces, found {}",
                        self.names[q][idx],
                        q + 1,
                        fs.len()
                    )));
                }
                for (i, f) in fs.iter().enumerate() {
                    if f.dim() != q - 1 {
                        return Err(Error::Validation(format!(
                            "face {} of {} has dimension {}, expected {}",
                            i,
                            self.names[q][idx],
                            f.dim(),
                            q - 1
                        )));
                    }
                    if f.base.dim > self.truncation
                        || f.base.idx >= self.names[f.base.dim].len()
                    {
                        return Err(Error::Validation(format!(
                            "face {} of {} references a missing simplex",
                            i, self.names[q][idx]
                        )));
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j on every generator.
        for q in 2..=self.truncation {
            for idx in 0..self.names[q].len() {
                let x = FormalSimplex::nondegenerate(q, idx);
                for j in 1..=q {
                    for i in 0..j {
                        let a = self.face(&self.face(&x, j)?, i)?;
                        let b = self.face(&self.face(&x, i)?, j - 1)?;
                        if a != b {
                            return Err(Error::Validation(format!(
                                "simplicial identity d_{i} d_{j} failed at {}",
                                self.names[q][idx]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn count(&self, q: usize) -> usize {
        if q > self.truncation {
            0
        } else {
            self.names[q].len()
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.truncation).map(|q| self.count(q)).collect()
    }

    pub fn name(&self, r: SimplexRef) -> &str {
        &self.names[r.dim][r.idx]
    }

    pub fn lookup(&self, name: &str) -> Option<SimplexRef> {
        self.name_index.get(name).copied()
    }

    pub fn display(&self, x: &FormalSimplex) -> String {
        if x.word.is_empty() {
            self.name(x.base).to_string()
        } else {
            let ops: Vec<String> = x.word.indices().iter().map(|j| format!("s{j}")).collect();
            format!("{}({})", ops.join(""), self.name(x.base))
        }
    }

    pub fn stored_face(&self, q: usize, idx: usize, i: usize) -> &FormalSimplex {
        &self.faces[q][idx][i]
    }

    pub fn face(&self, x: &FormalSimplex, i: usize) -> Result<FormalSimplex> {
        let d = x.dim();
        if d == 0 || i > d {
            return Err(Error::IndexOutOfRange(format!(
                "face {i} of a {d}-simplex"
            )));
        }
        match x.word.indices().first().copied() {
            None => Ok(self.faces[x.base.dim][x.base.idx][i].clone()),
            Some(a) => {
                let inner = FormalSimplex {
                    word: DegeneracyWord(x.word.indices()[1..].to_vec()),
                    base: x.base,
                };
                if i == a || i == a + 1 {
                    Ok(inner)
                } else if i < a {
                    let f = self.face(&inner, i)?;
                    Ok(self.degeneracy(&f, a - 1))
                } else {
                    let f = self.face(&inner, i - 1)?;
                    Ok(self.degeneracy(&f, a))
                }
            }
        }
    }

    pub fn degeneracy(&self, x: &FormalSimplex, j: usize) -> FormalSimplex {
        assert!(j <= x.dim(), "degeneracy index out of range");
        FormalSimplex {
            word: x.word.push_outer(j),
            base: x.base,
        }
    }

    /// Apply a mixed word in composition order: the last operator in `ops`
    /// acts first.
    pub fn apply_ops(&self, ops: &[Op], x: &FormalSimplex) -> Result<FormalSimplex> {
        let mut cur = x.clone();
        for op in ops.iter().rev() {
            cur = match *op {
                Op::Face(i) => self.face(&cur, i)?,
                Op::Degeneracy(j) => {
                    if j > cur.dim() {
                        return Err(Error::IndexOutOfRange(format!(
                            "degeneracy {j} of a {}-simplex",
                            cur.dim()
                        )));
                    }
                    self.degeneracy(&cur, j)
                }
            };
        }
        Ok(cur)
    }

    /// `d_{i1} d_{i2} ... d_{ir} x`, rightmost face first.
    pub fn iterated_face(&self, x: &FormalSimplex, indices: &[usize]) -> Result<FormalSimplex> {
        let mut cur = x.clone();
        for &i in indices.iter().rev() {
            cur = self.face(&cur, i)?;
        }
        Ok(cur)
    }

    /// The j-th vertex of a simplex.
    pub fn vertex(&self, x: &FormalSimplex, j: usize) -> Result<FormalSimplex> {
        let q = x.dim();
        if j > q {
            return Err(Error::IndexOutOfRange(format!(
                "vertex {j} of a {q}-simplex"
            )));
        }
        let mut cur = x.clone();
        for i in ((j + 1)..=q).rev() {
            cur = self.face(&cur, i)?;
        }
        for _ in 0..j {
            cur = self.face(&cur, 0)?;
        }
        Ok(cur)
    }

    /// The edge of `x` spanned by vertices 0 and 1 (faces 2..q removed).
    pub fn leading_edge(&self, x: &FormalSimplex) -> Result<FormalSimplex> {
        let q = x.dim();
        if q == 0 {
            return Err(Error::IndexOutOfRange(
                "leading edge of a vertex".to_string(),
            ));
        }
        let mut cur = x.clone();
        for i in (2..=q).rev() {
            cur = self.face(&cur, i)?;
        }
        Ok(cur)
    }

    /// All formal q-simplices, degenerate ones included.
    pub fn all_formal(&self, q: usize) -> Vec<FormalSimplex> {
        let mut out = Vec::new();
        for base_dim in 0..=q.min(self.truncation) {
            let wlen = q - base_dim;
            let words = degeneracy_words(base_dim, wlen);
            for idx in 0..self.count(base_dim) {
                for w in &words {
                    out.push(FormalSimplex {
                        word: w.clone(),
                        base: SimplexRef {
                            dim: base_dim,
                            idx,
                        },
                    });
                }
            }
        }
        out
    }
}

/// All strictly decreasing degeneracy words of length `len` that can be
/// applied to a simplex of dimension `base_dim`.
pub fn degeneracy_words(base_dim: usize, len: usize) -> Vec<DegeneracyWord> {
    fn rec(
        remaining: usize,
        max_index: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<DegeneracyWord>,
    ) {
        if remaining == 0 {
            out.push(DegeneracyWord(cur.clone()));
            return;
        }
        // Innermost-first recursion: build from the right.
        let lower = cur.last().map(|&v| v + 1).unwrap_or(0);
        for j in lower..=max_index {
            cur.push(j);
            rec(remaining - 1, max_index + 1, cur, out);
            cur.pop();
        }
    }
    // Build words from innermost to outermost, then reverse into normal
    // (outermost-first, strictly decreasing) order. The innermost operator
    // acts on dimension base_dim, so its index is at most base_dim.
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(len, base_dim, &mut cur, &mut out);
    for w in &mut out {
        w.0.reverse();
    }
    out
}

/// The standard n-simplex, truncated at dimension `truncation`.
/// Nondegenerate q-simplices are strictly increasing (q+1)-tuples in 0..=n.
pub fn standard_simplex(n: usize, truncation: usize) -> SimplicialSet {
    build_from_tuples(n, truncation, |_| true)
}

/// The boundary of the standard n-simplex: all proper nonempty faces.
pub fn boundary_simplex(n: usize, truncation: usize) -> SimplicialSet {
    build_from_tuples(n, truncation, |t| t.len() < n + 1)
}

fn tuple_name(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    parts.join(".")
}

fn build_from_tuples(n: usize, truncation: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut names: Vec<Vec<String>> = vec![Vec::new(); truncation + 1];
    let mut tuples: Vec<Vec<Vec<usize>>> = vec![Vec::new(); truncation + 1];
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for q in 0..=truncation {
        for t in increasing_tuples(n, q + 1) {
            if keep(&t) {
                index.insert(t.clone(), tuples[q].len());
                names[q].push(tuple_name(&t));
                tuples[q].push(t);
            }
        }
    }
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); truncation + 1];
    for q in 1..=truncation {
        for t in &tuples[q] {
            let mut fs = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let mut sub = t.clone();
                sub.remove(i);
                let idx = index[&sub];
                fs.push(FormalSimplex::nondegenerate(q - 1, idx));
            }
            faces[q].push(fs);
        }
    }
    SimplicialSet::new(truncation, names, faces).expect("standard simplex is valid")
}

fn increasing_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, len, cur, out);
            cur.pop();
        }
    }
    rec(0, n, len, &mut cur, &mut out);
    out
}

/// A simplicial map, stored on nondegenerate generators and extended to
/// formal simplices by commuting with degeneracies.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    /// mapping[q][idx] is the image of the idx-th nondegenerate q-simplex.
    pub mapping: Vec<Vec<FormalSimplex>>,
}

impl SimplicialMap {
    pub fn identity(x: &SimplicialSet) -> Self {
        let mapping = (0..=x.truncation())
            .map(|q| {
                (0..x.count(q))
                    .map(|idx| FormalSimplex::nondegenerate(q, idx))
                    .collect()
            })
            .collect();
        SimplicialMap { mapping }
    }

    pub fn apply(&self, target: &SimplicialSet, x: &FormalSimplex) -> FormalSimplex {
        let mut cur = self.mapping[x.base.dim][x.base.idx].clone();
        for &j in x.word.indices().iter().rev() {
            cur = target.degeneracy(&cur, j);
        }
        cur
    }

    /// True iff the map commutes with every face on every generator.
    pub fn commutes_with_faces(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        for q in 1..=source.truncation() {
            for idx in 0..source.count(q) {
                let x = FormalSimplex::nondegenerate(q, idx);
                let fx = self.apply(target, &x);
                for i in 0..=q {
                    let a = self.apply(target, &source.face(&x, i).unwrap());
                    let b = target.face(&fx, i).unwrap();
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn check_map(f: &SimplicialMap, source: &SimplicialSet, target: &SimplicialSet) -> bool {
    f.commutes_with_faces(source, target)
}

/// A binary product with Eilenberg-Zilber normal forms: nondegenerate
/// q-cells are pairs of formal q-simplices whose degeneracy words share no
/// index.
#[derive(Debug, Clone)]
pub struct ProductComplex {
    pub complex: SimplicialSet,
    /// cells[q][idx] = the (left, right) components of each nondegenerate cell.
    pub cells: Vec<Vec<(FormalSimplex, FormalSimplex)>>,
    index: BTreeMap<(FormalSimplex, FormalSimplex), usize>,
}

impl ProductComplex {
    pub fn cell_index(&self, pair: &(FormalSimplex, FormalSimplex)) -> Option<usize> {
        self.index.get(pair).copied()
    }

    /// Normal form of an arbitrary componentwise pair as a cell of the
    /// product: strip the shared degeneracies onto an outer word.
    pub fn normalize_pair(
        &self,
        left: FormalSimplex,
        right: FormalSimplex,
    ) -> Result<FormalSimplex> {
        let (word, l, r) = strip_common_degeneracies(left, right);
        let q = l.dim();
        let idx = self.cell_index(&(l.clone(), r.clone())).ok_or_else(|| {
            Error::Internal(format!(
                "product cell missing for a pair in dimension {q}"
            ))
        })?;
        let mut cur = FormalSimplex::nondegenerate(q, idx);
        for &j in word.indices().iter().rev() {
            cur = self.complex.degeneracy(&cur, j);
        }
        Ok(cur)
    }
}

/// Factor out every degeneracy index shared by both words. Returns the
/// common outer word and the divided components.
fn strip_common_degeneracies(
    mut left: FormalSimplex,
    mut right: FormalSimplex,
) -> (DegeneracyWord, FormalSimplex, FormalSimplex) {
    let mut outer = Vec::new();
    loop {
        let common: Vec<usize> = left
            .word
            .indices()
            .iter()
            .copied()
            .filter(|&j| right.word.contains(j))
            .collect();
        let Some(&j) = common.iter().max() else {
            break;
        };
        left = FormalSimplex {
            word: left.word.divide(j).unwrap(),
            base: left.base,
        };
        right = FormalSimplex {
            word: right.word.divide(j).unwrap(),
            base: right.base,
        };
        outer.push(j);
    }
    // `outer` was collected outermost-first; renormalize it as a word.
    let mut word = DegeneracyWord::empty();
    for &j in outer.iter().rev() {
        word = word.push_outer(j);
    }
    (word, left, right)
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet, truncation: usize) -> Result<ProductComplex> {
    if x.truncation() < truncation || y.truncation() < truncation {
        return Err(Error::Validation(
            "product factors must be truncated at least at the requested dimension".to_string(),
        ));
    }
    let mut names: Vec<Vec<String>> = vec![Vec::new(); truncation + 1];
    let mut cells: Vec<Vec<(FormalSimplex, FormalSimplex)>> = vec![Vec::new(); truncation + 1];
    let mut index = BTreeMap::new();
    for q in 0..=truncation {
        let lefts = x.all_formal(q);
        let rights = y.all_formal(q);
        for l in &lefts {
            for r in &rights {
                let disjoint = l
                    .word
                    .indices()
                    .iter()
                    .all(|&j| !r.word.contains(j));
                if !disjoint {
                    continue;
                }
                index.insert((l.clone(), r.clone()), cells[q].len());
                names[q].push(format!("({},{})", x.display(l), y.display(r)));
                cells[q].push((l.clone(), r.clone()));
            }
        }
    }

    // Face tables: act componentwise, then strip shared degeneracies.
    let mut faces: Vec<Vec<Vec<FormalSimplex>>> = vec![Vec::new(); truncation + 1];
    for q in 1..=truncation {
        for (l, r) in &cells[q] {
            let mut fs = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let fl = x.face(l, i)?;
                let fr = y.face(r, i)?;
                let (word, bl, br) = strip_common_degeneracies(fl, fr);
                let bdim = bl.dim();
                let bidx = *index.get(&(bl, br)).ok_or_else(|| {
                    Error::Internal("face of a product cell is not a product cell".to_string())
                })?;
                let mut cur = FormalSimplex::nondegenerate(bdim, bidx);
                // Reapply the shared word; dimensions stay within q-1.
                let mut tmp_word = word.indices().to_vec();
                tmp_word.reverse();
                for j in tmp_word {
                    cur = FormalSimplex {
                        word: cur.word.push_outer(j),
                        base: cur.base,
                    };
                }
                fs.push(cur);
            }
            faces[q].push(fs);
        }
    }
    let complex = SimplicialSet::new(truncation, names, faces)?;
    Ok(ProductComplex {
        complex,
        cells,
        index,
    })
}

/// The circle with one vertex and one edge, truncated at `truncation`.
pub fn minimal_circle(truncation: usize) -> SimplicialSet {
    let mut names = vec![vec!["v".to_string()], vec!["e".to_string()]];
    let mut faces = vec![
        Vec::new(),
        vec![vec![
            FormalSimplex::nondegenerate(0, 0),
            FormalSimplex::nondegenerate(0, 0),
        ]],
    ];
    for _ in 2..=truncation {
        names.push(Vec::new());
        faces.push(Vec::new());
    }
    SimplicialSet::new(truncation, names, faces).expect("circle is valid")
}
