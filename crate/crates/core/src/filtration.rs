//! The three hypergraph filtrations: simplicial complex closure (SCC),
//! restricted barycentric subdivision (ResBS) and relative barycentric
//! subdivision (RelBS).
//!
//! ResBS and RelBS are subdivisions whose vertices stand for hyperedges; they
//! are returned as a [`Subdivision`] that remembers which hyperedge (or the
//! quotient point) each vertex represents.
//!
//! RelBS collapses every "missing" simplex (a subset of some hyperedge that is
//! not itself a hyperedge of the final hypergraph) to a single point `p`. The
//! closure is never enumerated. Instead, whether a hyperedge `e` has a missing
//! proper subset is decided by comparing `2^|e| - 2` with the number of
//! hyperedges strictly inside `e`, and whether a missing set lies strictly
//! between `e ⊊ g` by comparing `2^(|g|-|e|) - 2` with the number of
//! hyperedges strictly between them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::complex::{downward_closure, is_subset, FilteredComplex, Simplex, Value};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiltrationKind {
    Scc,
    ResBs,
    RelBs,
}

impl FiltrationKind {
    pub const ALL: [FiltrationKind; 3] = [FiltrationKind::Scc, FiltrationKind::ResBs, FiltrationKind::RelBs];

    pub fn token(self) -> &'static str {
        match self {
            FiltrationKind::Scc => "scc",
            FiltrationKind::ResBs => "resbs",
            FiltrationKind::RelBs => "relbs",
        }
    }

    /// Display name as used in result tables.
    pub fn name(self) -> &'static str {
        match self {
            FiltrationKind::Scc => "SCC",
            FiltrationKind::ResBs => "ResBS",
            FiltrationKind::RelBs => "RelBS",
        }
    }

    pub fn build(self, h: &Hypergraph) -> FilteredComplex {
        match self {
            FiltrationKind::Scc => build_scc_filtration(h),
            FiltrationKind::ResBs => build_resbs_filtration(h),
            FiltrationKind::RelBs => build_relbs_filtration(h),
        }
    }
}

impl fmt::Display for FiltrationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for FiltrationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scc" => Ok(FiltrationKind::Scc),
            "resbs" => Ok(FiltrationKind::ResBs),
            "relbs" => Ok(FiltrationKind::RelBs),
            other => Err(format!("unknown filtration '{other}' (expected scc, resbs or relbs)")),
        }
    }
}

/// What a vertex of a subdivision stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// The point that all missing simplices are collapsed to.
    Quotient,
    Hyperedge(Vec<Vertex>),
}

/// A subdivision complex together with the meaning of each of its vertices:
/// vertex `i` of `complex` represents `cells[i]`.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: FilteredComplex,
    pub cells: Vec<Cell>,
}

/// SCC filtration: the downward closure up to triangles.
pub fn build_scc_filtration(h: &Hypergraph) -> FilteredComplex {
    downward_closure(h, 2)
}

pub fn build_resbs_filtration(h: &Hypergraph) -> FilteredComplex {
    restricted_subdivision(h).complex
}

pub fn build_relbs_filtration(h: &Hypergraph) -> FilteredComplex {
    relative_subdivision(h).complex
}

/// Inclusion structure among the distinct hyperedge sets of a hypergraph.
struct Nesting<'a> {
    sets: Vec<&'a [Vertex]>,
    arrival: Vec<Value>,
    /// `supersets[i]`: indices `j` with `sets[i] ⊊ sets[j]`, ascending.
    supersets: Vec<Vec<usize>>,
    /// `subsets[j]` as a bitset over indices `i` with `sets[i] ⊊ sets[j]`.
    subsets: Vec<Vec<u64>>,
}

impl<'a> Nesting<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let (sets, arrival): (Vec<_>, Vec<_>) = h.distinct_edges().into_iter().unzip();
        let n = sets.len();
        let words = n.div_ceil(64);
        let mut supersets = vec![Vec::new(); n];
        let mut subsets = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if sets[i].len() < sets[j].len() && is_subset(sets[i], sets[j]) {
                    supersets[i].push(j);
                    subsets[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Nesting { sets, arrival, supersets, subsets }
    }

    fn len(&self) -> usize {
        self.sets.len()
    }

    fn is_strict_subset(&self, i: usize, j: usize) -> bool {
        self.subsets[j][i / 64] & (1 << (i % 64)) != 0
    }

    fn count_strict_subsets(&self, j: usize) -> u64 {
        self.subsets[j].iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of hyperedge sets strictly between `sets[i] ⊊ sets[j]`.
    fn count_between(&self, i: usize, j: usize) -> u64 {
        self.supersets[i].iter().filter(|&&f| self.is_strict_subset(f, j)).count() as u64
    }

    /// Chains `i ⊊ j ⊊ l` of hyperedge sets.
    fn chains3(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.supersets[i].iter().flat_map(move |&j| self.supersets[j].iter().map(move |&l| (i, j, l)))
        })
    }
}

/// `2^k - 2`: the number of non-empty proper subsets of a `k`-set, saturating.
fn proper_subset_count(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 2
    }
}

/// Sorts cells by (value, cell) and relabels the chain simplices accordingly.
fn assemble(cells: Vec<(Cell, Value)>, simplices: impl IntoIterator<Item = (Vec<usize>, Value)>) -> Subdivision {
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&a, &b| cells[a].1.cmp(&cells[b].1).then_with(|| cells[a].0.cmp(&cells[b].0)));
    let mut new_id = vec![0 as Vertex; cells.len()];
    for (new, &old) in order.iter().enumerate() {
        new_id[old] = new as Vertex;
    }
    let mut all: HashMap<Simplex, Value> = HashMap::new();
    for (old, (_, v)) in cells.iter().enumerate() {
        all.insert(Simplex::vertex(new_id[old]), *v);
    }
    for (members, v) in simplices {
        let s = Simplex::new(members.iter().map(|&m| new_id[m]).collect()).expect("non-empty");
        all.entry(s).and_modify(|old| *old = (*old).min(v)).or_insert(v);
    }
    let complex = FilteredComplex::from_map(all).expect("subdivision builders produce valid complexes");
    let mut cells: Vec<Option<Cell>> = cells.into_iter().map(|(c, _)| Some(c)).collect();
    let cells = order.iter().map(|&old| cells[old].take().expect("each cell used once")).collect();
    Subdivision { complex, cells }
}

/// ResBS filtration with cell labels. A hyperedge set enters at its earliest
/// arrival; a chain of nested hyperedge sets enters once all members have.
pub fn restricted_subdivision(h: &Hypergraph) -> Subdivision {
    let nest = Nesting::new(h);
    let a = &nest.arrival;
    let cells = (0..nest.len()).map(|i| (Cell::Hyperedge(nest.sets[i].to_vec()), a[i])).collect();
    let edges = (0..nest.len()).flat_map(|i| nest.supersets[i].iter().map(move |&j| (vec![i, j], a[i].max(a[j]))));
    let triangles = nest.chains3().map(|(i, j, l)| (vec![i, j, l], a[i].max(a[j]).max(a[l])));
    assemble(cells, edges.chain(triangles))
}

/// RelBS filtration with cell labels.
///
/// A hyperedge set `e` enters as soon as it lies in the closure, i.e. at the
/// earliest arrival of any hyperedge containing it. Missing sets are taken
/// relative to the whole hypergraph, so the family stays nested. Every
/// hyperedge is joined to the quotient point at most once, at the earliest
/// step where a missing set comparable to it is present. Triangles touching
/// the quotient point are dropped.
pub fn relative_subdivision(h: &Hypergraph) -> Subdivision {
    let nest = Nesting::new(h);
    let n = nest.len();
    let a = &nest.arrival;

    let closure_value: Vec<Value> =
        (0..n).map(|i| nest.supersets[i].iter().map(|&j| a[j]).fold(a[i], Value::min)).collect();
    let has_missing_subset: Vec<bool> =
        (0..n).map(|i| proper_subset_count(nest.sets[i].len()) > nest.count_strict_subsets(i)).collect();
    let quotient_value = (0..n).filter(|&i| has_missing_subset[i]).map(|i| a[i]).min();

    let mut cells: Vec<(Cell, Value)> =
        (0..n).map(|i| (Cell::Hyperedge(nest.sets[i].to_vec()), closure_value[i])).collect();
    let mut simplices: Vec<(Vec<usize>, Value)> = Vec::new();
    for i in 0..n {
        for &j in &nest.supersets[i] {
            simplices.push((vec![i, j], closure_value[i].max(closure_value[j])));
        }
    }
    if let Some(pv) = quotient_value {
        let p = cells.len();
        cells.push((Cell::Quotient, pv));
        for i in 0..n {
            let below = has_missing_subset[i].then_some(closure_value[i]);
            let gap = nest.sets[i].len();
            let above = nest.supersets[i]
                .iter()
                .filter(|&&g| proper_subset_count(nest.sets[g].len() - gap) > nest.count_between(i, g))
                .map(|&g| closure_value[i].max(a[g]))
                .min();
            let t = match (below, above) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            };
            if let Some(t) = t {
                simplices.push((vec![i, p], t));
            }
        }
    }
    simplices.extend(nest.chains3().map(|(i, j, l)| (vec![i, j, l], closure_value[l])));
    assemble(cells, simplices)
}
