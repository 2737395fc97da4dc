//! Persistence barcodes in dimensions 0 and 1 over Z/2.
//!
//! Dimension 0 uses union-find with the elder rule; dimension 1 reduces the
//! triangle boundary columns left to right. Edges that merge components are
//! never cycle creators, so only the remaining edges can appear as pivots.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{FilteredComplex, Simplex, Value};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("internal error: face {face} of {simplex} not found in complex")]
    MissingFace { face: Simplex, simplex: Simplex },
    #[error("internal error: pivot edge {0} is not a cycle creator")]
    BadPivot(Simplex),
}

/// A (birth, death) interval. `death == None` means the class never dies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: Value,
    pub death: Option<Value>,
}

impl PersistencePair {
    pub fn finite(dim: usize, birth: Value, death: Value) -> Self {
        PersistencePair { dim, birth, death: Some(death) }
    }

    pub fn infinite(dim: usize, birth: Value) -> Self {
        PersistencePair { dim, birth, death: None }
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    /// Alive at `t` when `birth <= t < death`.
    pub fn alive_at(&self, t: Value) -> bool {
        self.birth <= t && self.death.is_none_or(|d| t < d)
    }
}

impl PartialOrd for PersistencePair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sorted by (dim, birth, death) with infinite deaths last.
impl Ord for PersistencePair {
    fn cmp(&self, other: &Self) -> Ordering {
        let death = |p: &PersistencePair| p.death.map_or((1, 0), |d| (0, d));
        self.dim.cmp(&other.dim).then(self.birth.cmp(&other.birth)).then_with(|| death(self).cmp(&death(other)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Barcode {
    pub pairs: Vec<PersistencePair>,
    /// Largest filtration value in the source complex (0 when empty).
    pub max_filtration_value: Value,
}

impl Barcode {
    pub fn dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePair> + '_ {
        self.pairs.iter().filter(move |p| p.dim == dim)
    }

    /// Number of bars in dimension `dim` alive at `t`.
    pub fn alive_count(&self, dim: usize, t: Value) -> usize {
        self.dim(dim).filter(|p| p.alive_at(t)).count()
    }

    /// CSV rows `graph_id,dim,birth,death` (no header), `inf` for infinity.
    pub fn csv_rows(&self, graph_id: &str) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            let _ = match p.death {
                Some(d) => writeln!(out, "{graph_id},{},{},{d}", p.dim, p.birth),
                None => writeln!(out, "{graph_id},{},{},inf", p.dim, p.birth),
            };
        }
        out
    }
}

pub const BARCODE_CSV_HEADER: &str = "graph_id,dim,birth,death";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PersistenceOptions {
    /// Keep finite bars with `birth == death`.
    pub include_zero_bars: bool,
}

/// Barcode plus bookkeeping from the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Persistence {
    pub barcode: Barcode,
    /// Zero-length bars removed from `barcode`, per dimension.
    pub dropped_zero_bars: [usize; 2],
    /// Triangles whose reduced column vanished (2-cycle creators).
    pub unpaired_triangles: usize,
}

/// Barcode in dimensions 0 and 1, zero-length bars dropped.
pub fn compute_persistence(k: &FilteredComplex) -> Result<Barcode, PersistenceError> {
    compute_persistence_with(k, PersistenceOptions::default()).map(|p| p.barcode)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Symmetric difference of two ascending index lists.
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn compute_persistence_with(
    k: &FilteredComplex,
    opts: PersistenceOptions,
) -> Result<Persistence, PersistenceError> {
    let simplices = k.simplices();
    let boundary = |idx: usize| -> Result<Vec<usize>, PersistenceError> {
        let s = &simplices[idx].0;
        let mut b = s
            .facets()
            .map(|f| k.position(&f).ok_or_else(|| PersistenceError::MissingFace { face: f, simplex: s.clone() }))
            .collect::<Result<Vec<_>, _>>()?;
        b.sort_unstable();
        Ok(b)
    };

    let mut pairs = Vec::new();
    let mut uf = UnionFind::new(simplices.len());
    // For each union-find root, the filtration position of its oldest vertex.
    let oldest: Vec<usize> = (0..simplices.len()).collect();
    let mut cycle_edge = vec![false; simplices.len()];
    let mut vertices = Vec::new();

    for (idx, (s, value)) in simplices.iter().enumerate() {
        match s.dim() {
            0 => vertices.push(idx),
            1 => {
                let b = boundary(idx)?;
                let (ra, rb) = (uf.find(b[0]), uf.find(b[1]));
                if ra == rb {
                    cycle_edge[idx] = true;
                    continue;
                }
                // Filtration position orders vertices by (value, id), so the
                // smaller position is the elder component.
                let (elder, younger) = if oldest[ra] < oldest[rb] { (ra, rb) } else { (rb, ra) };
                pairs.push(PersistencePair::finite(0, simplices[oldest[younger]].1, *value));
                uf.parent[younger] = elder;
            }
            _ => {}
        }
    }
    for &v in &vertices {
        if uf.find(v) == v {
            pairs.push(PersistencePair::infinite(0, simplices[oldest[v]].1));
        }
    }

    // Reduce triangle columns; `pivot_owner[edge]` is the reduced column whose
    // lowest entry is `edge`.
    let mut pivot_owner: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut unpaired_triangles = 0;
    for (idx, (s, value)) in simplices.iter().enumerate() {
        if s.dim() != 2 {
            continue;
        }
        let mut col = boundary(idx)?;
        while let Some(&low) = col.last() {
            match pivot_owner.get(&low) {
                Some(other) => col = add_columns(&col, other),
                None => break,
            }
        }
        match col.last() {
            Some(&low) => {
                if !cycle_edge[low] {
                    return Err(PersistenceError::BadPivot(simplices[low].0.clone()));
                }
                pairs.push(PersistencePair::finite(1, simplices[low].1, *value));
                pivot_owner.insert(low, col);
            }
            None => unpaired_triangles += 1,
        }
    }
    for (idx, &is_cycle) in cycle_edge.iter().enumerate() {
        if is_cycle && !pivot_owner.contains_key(&idx) {
            pairs.push(PersistencePair::infinite(1, simplices[idx].1));
        }
    }

    let mut dropped_zero_bars = [0; 2];
    if !opts.include_zero_bars {
        pairs.retain(|p| {
            let zero = p.death == Some(p.birth);
            if zero {
                dropped_zero_bars[p.dim] += 1;
            }
            !zero
        });
    }
    pairs.sort();
    Ok(Persistence {
        barcode: Barcode { pairs, max_filtration_value: k.max_value().unwrap_or(0) },
        dropped_zero_bars,
        unpaired_triangles,
    })
}
