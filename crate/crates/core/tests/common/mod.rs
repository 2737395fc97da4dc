#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hyperph::{Cell, FilteredComplex, Hyperedge, Hypergraph, Simplex, Subdivision, Value, Vertex};
use proptest::prelude::*;

/// Random hypergraph: up to `max_v` vertices, up to `max_e` hyperedges of size
/// at most `max_size`, arrivals in `0..max_t`.
pub fn hypergraph(max_v: u32, max_e: usize, max_size: usize, max_t: u32) -> impl Strategy<Value = Hypergraph> {
    (1..=max_v).prop_flat_map(move |nv| {
        prop::collection::vec((prop::collection::btree_set(0..nv, 1..=max_size.min(nv as usize)), 0..max_t), 0..=max_e)
            .prop_map(move |edges| {
                let edges =
                    edges.into_iter().map(|(vs, t)| Hyperedge::new(vs.into_iter().collect(), t).unwrap()).collect();
                Hypergraph::new("random", nv as usize, edges).unwrap()
            })
    })
}

/// Random filtered complex on up to `max_v` vertices: chosen simplices get
/// random values, faces take the minimum over their chosen cofaces.
pub fn complex(max_v: u32, max_t: Value) -> impl Strategy<Value = FilteredComplex> {
    (1..=max_v).prop_flat_map(move |nv| {
        prop::collection::vec((prop::collection::btree_set(0..nv, 1..=3usize.min(nv as usize)), 0..max_t), 1..30)
            .prop_map(|chosen| {
                let mut values: BTreeMap<Vec<Vertex>, Value> = BTreeMap::new();
                for (set, t) in chosen {
                    let set: Vec<Vertex> = set.into_iter().collect();
                    for sub in subsets(&set) {
                        let e = values.entry(sub).or_insert(t);
                        *e = (*e).min(t);
                    }
                }
                FilteredComplex::from_simplices(values.into_iter().map(|(s, v)| (Simplex::new(s).unwrap(), v))).unwrap()
            })
    })
}

/// All non-empty subsets of a sorted set, each sorted.
pub fn subsets(set: &[Vertex]) -> Vec<Vec<Vertex>> {
    (1u32..(1 << set.len()))
        .map(|mask| set.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect())
        .collect()
}

fn strict_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.len() < b.len() && a.iter().all(|v| b.contains(v))
}

/// A complex described by the labels of its vertices, independent of ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labeled {
    pub vertices: BTreeSet<Cell>,
    pub edges: BTreeSet<BTreeSet<Cell>>,
    pub triangles: BTreeSet<BTreeSet<Cell>>,
}

/// The subcomplex of `s` at value `t`, in terms of cells.
pub fn labeled_at(s: &Subdivision, t: Value) -> Labeled {
    let mut out = Labeled::default();
    for (simplex, v) in s.complex.simplices() {
        if *v > t {
            continue;
        }
        let cells: BTreeSet<Cell> = simplex.vertices().iter().map(|&i| s.cells[i as usize].clone()).collect();
        match simplex.dim() {
            0 => {
                out.vertices.extend(cells);
            }
            1 => {
                out.edges.insert(cells);
            }
            _ => {
                out.triangles.insert(cells);
            }
        }
    }
    out
}

/// Final hyperedge sets of `h`.
pub fn hyperedge_sets(h: &Hypergraph) -> BTreeSet<Vec<Vertex>> {
    h.edges().iter().map(|e| e.vertices().to_vec()).collect()
}

/// Full downward closure (every subset of every hyperedge).
pub fn full_closure(h: &Hypergraph) -> BTreeSet<Vec<Vertex>> {
    h.edges().iter().flat_map(|e| subsets(e.vertices())).collect()
}

/// RelBS of the prefix `H_t` built literally: subdivide the closure of `H_t`,
/// collapse the simplices missing from the final hypergraph to one point,
/// merge parallel edges and drop triangles that touch the point.
pub fn static_relbs(h: &Hypergraph, t: Value) -> Labeled {
    let finals = hyperedge_sets(h);
    let closure: Vec<Vec<Vertex>> = full_closure(&h.prefix(t)).into_iter().collect();
    let cell = |s: &Vec<Vertex>| {
        if finals.contains(s) {
            Cell::Hyperedge(s.clone())
        } else {
            Cell::Quotient
        }
    };
    let mut out = Labeled::default();
    for s in &closure {
        out.vertices.insert(cell(s));
    }
    for a in &closure {
        for b in &closure {
            if strict_subset(a, b) {
                let (ca, cb) = (cell(a), cell(b));
                if ca != cb {
                    out.edges.insert([ca, cb].into_iter().collect());
                }
                for c in &closure {
                    if strict_subset(b, c) {
                        let cc = cell(c);
                        let all = [cell(a), cell(b), cc];
                        if all.iter().all(|x| *x != Cell::Quotient) {
                            out.triangles.insert(all.into_iter().collect());
                        }
                    }
                }
            }
        }
    }
    out
}

/// ResBS of the prefix `H_t`: chains of hyperedge sets present by step `t`.
pub fn static_resbs(h: &Hypergraph, t: Value) -> Labeled {
    let sets: Vec<Vec<Vertex>> = hyperedge_sets(&h.prefix(t)).into_iter().collect();
    let cell = |s: &Vec<Vertex>| Cell::Hyperedge(s.clone());
    let mut out = Labeled::default();
    for a in &sets {
        out.vertices.insert(cell(a));
        for b in &sets {
            if strict_subset(a, b) {
                out.edges.insert([cell(a), cell(b)].into_iter().collect());
                for c in &sets {
                    if strict_subset(b, c) {
                        out.triangles.insert([cell(a), cell(b), cell(c)].into_iter().collect());
                    }
                }
            }
        }
    }
    out
}
