//! Filtered simplicial complexes (dimension at most 2) with integer
//! filtration values, plus downward closure, barycentric subdivision and a
//! dense Betti-number oracle.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::hypergraph::{Hypergraph, Vertex};

/// Filtration values are insertion steps.
pub type Value = u32;

/// Highest simplex dimension ever stored.
pub const MAX_DIM: usize = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("empty simplex")]
    EmptySimplex,
    #[error("simplex {0} has dimension above {MAX_DIM}")]
    TooLarge(Simplex),
    #[error("duplicate simplex {0}")]
    Duplicate(Simplex),
    #[error("face {face} of {simplex} is missing")]
    MissingFace { face: Simplex, simplex: Simplex },
    #[error("face {face} (value {face_value}) enters after {simplex} (value {value})")]
    NotMonotone { face: Simplex, face_value: Value, simplex: Simplex, value: Value },
}

/// A simplex as a strictly sorted vertex list. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts and deduplicates the vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn edge(a: Vertex, b: Vertex) -> Self {
        Simplex::new(vec![a, b]).expect("non-empty")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n)
            .map(move |skip| Simplex(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()))
    }

    pub fn is_proper_face_of(&self, other: &Simplex) -> bool {
        self.0.len() < other.0.len() && is_subset(&self.0, &other.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Subset test on strictly sorted slices.
pub fn is_subset(small: &[Vertex], large: &[Vertex]) -> bool {
    if small.len() > large.len() {
        return false;
    }
    let mut it = large.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

/// A face-closed, monotone collection of simplices of dimension at most 2.
///
/// Simplices are stored in filtration order: by value, then dimension, then
/// lexicographically by vertex list. Faces therefore always precede cofaces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilteredComplex {
    simplices: Vec<(Simplex, Value)>,
    index: HashMap<Simplex, usize>,
}

impl FilteredComplex {
    /// Validates face closure, monotonicity and uniqueness.
    pub fn from_simplices<I>(simplices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (Simplex, Value)>,
    {
        let mut simplices: Vec<(Simplex, Value)> = simplices.into_iter().collect();
        for (s, _) in &simplices {
            if s.dim() > MAX_DIM {
                return Err(ComplexError::TooLarge(s.clone()));
            }
        }
        simplices.sort_by(|(a, va), (b, vb)| va.cmp(vb).then(a.dim().cmp(&b.dim())).then_with(|| a.cmp(b)));
        let mut index = HashMap::with_capacity(simplices.len());
        for (i, (s, _)) in simplices.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(ComplexError::Duplicate(s.clone()));
            }
        }
        let complex = FilteredComplex { simplices, index };
        complex.validate()?;
        Ok(complex)
    }

    /// Builds from a map; used by constructions that already deduplicated.
    pub(crate) fn from_map(map: HashMap<Simplex, Value>) -> Result<Self, ComplexError> {
        FilteredComplex::from_simplices(map)
    }

    /// Re-checks both structural invariants.
    pub fn validate(&self) -> Result<(), ComplexError> {
        for (s, v) in &self.simplices {
            for face in s.facets() {
                match self.index.get(&face) {
                    None => return Err(ComplexError::MissingFace { face, simplex: s.clone() }),
                    Some(&i) if self.simplices[i].1 > *v => {
                        return Err(ComplexError::NotMonotone {
                            face_value: self.simplices[i].1,
                            face,
                            simplex: s.clone(),
                            value: *v,
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Simplices in filtration order.
    pub fn simplices(&self) -> &[(Simplex, Value)] {
        &self.simplices
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn value(&self, s: &Simplex) -> Option<Value> {
        self.position(s).map(|i| self.simplices[i].1)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn max_value(&self) -> Option<Value> {
        self.simplices.last().map(|(_, v)| *v)
    }

    /// Number of simplices per dimension.
    pub fn counts(&self) -> [usize; MAX_DIM + 1] {
        let mut c = [0; MAX_DIM + 1];
        for (s, _) in &self.simplices {
            c[s.dim()] += 1;
        }
        c
    }

    /// Distinct filtration values in increasing order.
    pub fn values(&self) -> Vec<Value> {
        let mut v: Vec<Value> = self.simplices.iter().map(|(_, v)| *v).collect();
        v.dedup();
        v
    }

    /// Subcomplex of simplices with value at most `t`.
    pub fn restrict(&self, t: Value) -> FilteredComplex {
        let end = self.simplices.partition_point(|(_, v)| *v <= t);
        let simplices = self.simplices[..end].to_vec();
        let index = simplices.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
        FilteredComplex { simplices, index }
    }

    /// Fixture dump: `v0,v1,..<TAB>value` per line in filtration order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, v) in &self.simplices {
            let _ = writeln!(out, "{s}\t{v}");
        }
        out
    }
}

/// All non-empty subsets of at most `max_dim + 1` vertices of every hyperedge,
/// each valued at the earliest arrival of a hyperedge containing it.
pub fn downward_closure(h: &Hypergraph, max_dim: usize) -> FilteredComplex {
    assert!((1..=MAX_DIM).contains(&max_dim), "downward closure supports max_dim 1 or 2");
    let mut values: HashMap<Simplex, Value> = HashMap::new();
    // Edges are sorted by arrival, so the first insertion is the minimum.
    for (vs, arrival) in h.distinct_edges() {
        for_each_small_subset(vs, max_dim + 1, |sub| {
            values.entry(Simplex(sub.to_vec())).or_insert(arrival);
        });
    }
    FilteredComplex::from_map(values).expect("downward closure is a valid filtration")
}

/// Calls `f` on every non-empty subset of `set` with at most `max_len` elements,
/// in sorted order.
pub(crate) fn for_each_small_subset(set: &[Vertex], max_len: usize, mut f: impl FnMut(&[Vertex])) {
    fn rec(set: &[Vertex], start: usize, max_len: usize, buf: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
        for i in start..set.len() {
            buf.push(set[i]);
            f(buf);
            if buf.len() < max_len {
                rec(set, i + 1, max_len, buf, f);
            }
            buf.pop();
        }
    }
    if max_len == 0 {
        return;
    }
    let mut buf = Vec::with_capacity(max_len);
    rec(set, 0, max_len, &mut buf, &mut f);
}

/// Barycentric subdivision truncated to dimension 2.
///
/// Vertex `i` of the result is the `i`-th simplex of `k` in filtration order.
/// A chain of strictly nested simplices is valued at the largest value among
/// its members.
pub fn barycentric_subdivision(k: &FilteredComplex) -> FilteredComplex {
    let simplices = k.simplices();
    // cofaces[i]: positions of all proper cofaces of simplex i.
    let mut cofaces: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
    for (j, (s, _)) in simplices.iter().enumerate() {
        for_each_small_subset(s.vertices(), s.0.len() - 1, |sub| {
            let i = k.index[&Simplex(sub.to_vec())];
            cofaces[i].push(j);
        });
    }
    let mut out: Vec<(Simplex, Value)> = Vec::new();
    for (i, (_, vi)) in simplices.iter().enumerate() {
        let a = i as Vertex;
        out.push((Simplex::vertex(a), *vi));
        for &j in &cofaces[i] {
            let vj = simplices[j].1.max(*vi);
            out.push((Simplex::edge(a, j as Vertex), vj));
            for &l in &cofaces[j] {
                let vl = simplices[l].1.max(vj);
                out.push((Simplex::new(vec![a, j as Vertex, l as Vertex]).expect("non-empty"), vl));
            }
        }
    }
    FilteredComplex::from_simplices(out).expect("subdivision of a valid complex is valid")
}

/// Rank over Z/2 of a dense 0/1 matrix given as bit-packed rows.
fn rank_mod2(mut rows: Vec<Vec<u64>>) -> usize {
    let width = rows.first().map_or(0, Vec::len) * 64;
    let mut rank = 0;
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Boundary matrix from `dim`-simplices to `(dim-1)`-simplices, one row per
/// `dim`-simplex.
fn boundary_rows(faces: &HashMap<&Simplex, usize>, cells: &[&Simplex]) -> Vec<Vec<u64>> {
    let words = faces.len().div_ceil(64).max(1);
    cells
        .iter()
        .map(|s| {
            let mut row = vec![0u64; words];
            for f in s.facets() {
                let i = faces[&f];
                row[i / 64] ^= 1 << (i % 64);
            }
            row
        })
        .collect()
}

/// Betti numbers (β0, β1) over Z/2 of the subcomplex with values at most
/// `up_to`, by dense Gaussian elimination. Meant for small inputs only.
pub fn betti_oracle(k: &FilteredComplex, up_to: Value) -> (usize, usize) {
    let mut by_dim: [Vec<&Simplex>; MAX_DIM + 1] = Default::default();
    for (s, v) in k.simplices() {
        if *v <= up_to {
            by_dim[s.dim()].push(s);
        }
    }
    fn idx<'a>(cells: &[&'a Simplex]) -> HashMap<&'a Simplex, usize> {
        cells.iter().enumerate().map(|(i, s)| (*s, i)).collect()
    }
    let vertex_idx = idx(&by_dim[0]);
    let edge_idx = idx(&by_dim[1]);
    let rank1 = rank_mod2(boundary_rows(&vertex_idx, &by_dim[1]));
    let rank2 = rank_mod2(boundary_rows(&edge_idx, &by_dim[2]));
    (by_dim[0].len() - rank1, by_dim[1].len() - rank1 - rank2)
}
