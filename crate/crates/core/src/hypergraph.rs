//! Hypergraphs with insertion order, corpus ingestion and the two
//! structural filters used before building filtrations (ego extraction and
//! hyperedge-size capping).
//!
//! Two on-disk corpus formats are understood:
//!
//! * **jsonl**: one object per line, `{"id": .., "label": .., "edges": [[..], ..]}`
//!   with an optional `arrivals` array overriding the positional insertion order
//!   and an optional `num_vertices`.
//! * **contact**: the four aligned text files `<stem>-nverts.txt`,
//!   `<stem>-simplices.txt`, `<stem>-times.txt` and `<stem>-labels.txt`. A contact
//!   network is one large hypergraph; the corpus is formed by its labelled ego
//!   hypergraphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex identifier.
pub type Vertex = u32;

/// Filtration step at which a hyperedge is inserted.
pub type Arrival = u32;

/// Default hyperedge size cap (hyperedges of size 25 or more are dropped).
pub const DEFAULT_MAX_EDGE_SIZE: usize = 24;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HypergraphError {
    fn parse(line: usize, message: impl Into<String>) -> Self {
        HypergraphError::Parse { line, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        HypergraphError::Validation(message.into())
    }
}

/// A hyperedge: a non-empty, strictly sorted vertex set inserted at `arrival`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    vertices: Vec<Vertex>,
    arrival: Arrival,
}

impl Hyperedge {
    /// Sorts and deduplicates `vertices`. Fails on an empty vertex list.
    pub fn new(mut vertices: Vec<Vertex>, arrival: Arrival) -> Result<Self, HypergraphError> {
        if vertices.is_empty() {
            return Err(HypergraphError::validation("empty hyperedge"));
        }
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Hyperedge { vertices, arrival })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrival(&self) -> Arrival {
        self.arrival
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// A hypergraph whose hyperedges carry insertion steps.
///
/// Edges are kept sorted by arrival (stable with respect to the input order).
/// The same vertex set may appear more than once; only its earliest arrival
/// matters to any of the filtrations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    id: String,
    num_vertices: usize,
    edges: Vec<Hyperedge>,
    /// `original[v]` is the id `v` had before re-indexing, when this graph was
    /// extracted from a larger one.
    original: Option<Vec<Vertex>>,
}

impl Hypergraph {
    pub fn new(id: impl Into<String>, num_vertices: usize, mut edges: Vec<Hyperedge>) -> Result<Self, HypergraphError> {
        let id = id.into();
        for e in &edges {
            if let Some(&v) = e.vertices.last() {
                if v as usize >= num_vertices {
                    return Err(HypergraphError::validation(format!(
                        "hypergraph {id}: vertex {v} out of range (num_vertices = {num_vertices})"
                    )));
                }
            }
        }
        edges.sort_by_key(|e| e.arrival);
        Ok(Hypergraph { id, num_vertices, edges, original: None })
    }

    /// Builds a hypergraph from vertex lists, using list position as arrival.
    pub fn from_edge_lists<I, E>(id: impl Into<String>, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, e)| Hyperedge::new(e.into(), i as Arrival))
            .collect::<Result<Vec<_>, _>>()?;
        let n = edges.iter().filter_map(|e| e.vertices.last()).map(|&v| v as usize + 1).max().unwrap_or(0);
        Hypergraph::new(id, n, edges)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Hyperedge::len).max().unwrap_or(0)
    }

    pub fn max_arrival(&self) -> Option<Arrival> {
        self.edges.last().map(|e| e.arrival)
    }

    /// Id of `v` in the hypergraph this one was extracted from.
    pub fn original_vertex(&self, v: Vertex) -> Vertex {
        match &self.original {
            Some(map) => map[v as usize],
            None => v,
        }
    }

    /// Distinct hyperedge vertex sets with their earliest arrival, in edge order.
    pub fn distinct_edges(&self) -> Vec<(&[Vertex], Arrival)> {
        let mut seen = HashSet::new();
        self.edges
            .iter()
            .filter(|e| seen.insert(e.vertices.as_slice()))
            .map(|e| (e.vertices.as_slice(), e.arrival))
            .collect()
    }

    /// Hypergraph with only the edges whose arrival is at most `step`.
    pub fn prefix(&self, step: Arrival) -> Hypergraph {
        Hypergraph {
            id: self.id.clone(),
            num_vertices: self.num_vertices,
            edges: self.edges.iter().take_while(|e| e.arrival <= step).cloned().collect(),
            original: self.original.clone(),
        }
    }

    /// Sub-hypergraph of all hyperedges containing `ego`, with vertices
    /// re-indexed densely (in increasing original order) and arrivals re-ranked
    /// to consecutive steps. An ego that lies in no hyperedge yields a
    /// hypergraph without edges or vertices.
    pub fn ego(&self, ego: Vertex) -> Result<Hypergraph, HypergraphError> {
        if ego as usize >= self.num_vertices {
            return Err(HypergraphError::validation(format!(
                "ego {ego} out of range (num_vertices = {})",
                self.num_vertices
            )));
        }
        let kept: Vec<&Hyperedge> = self.edges.iter().filter(|e| e.contains(ego)).collect();
        let used: BTreeSet<Vertex> = kept.iter().flat_map(|e| e.vertices.iter().copied()).collect();
        let old_ids: Vec<Vertex> = used.into_iter().collect();
        let new_id: HashMap<Vertex, Vertex> =
            old_ids.iter().enumerate().map(|(new, &old)| (old, new as Vertex)).collect();
        let edges = kept
            .into_iter()
            .map(|e| Hyperedge { vertices: e.vertices.iter().map(|v| new_id[v]).collect(), arrival: e.arrival })
            .collect();
        let original = old_ids.iter().map(|&v| self.original_vertex(v)).collect();
        Ok(Hypergraph {
            id: format!("{}-{}", self.id, self.original_vertex(ego)),
            num_vertices: old_ids.len(),
            edges: rerank(edges),
            original: Some(original),
        })
    }

    /// New id for the ego vertex inside [`Hypergraph::ego`]'s output.
    pub fn reindexed(&self, original: Vertex) -> Option<Vertex> {
        match &self.original {
            Some(map) => map.binary_search(&original).ok().map(|i| i as Vertex),
            None => ((original as usize) < self.num_vertices).then_some(original),
        }
    }

    /// Drops hyperedges with more than `max_size` vertices and re-ranks the
    /// surviving arrivals. The vertex set is left untouched.
    pub fn filter_by_size(&self, max_size: usize) -> Hypergraph {
        let edges = self.edges.iter().filter(|e| e.len() <= max_size).cloned().collect();
        Hypergraph {
            id: self.id.clone(),
            num_vertices: self.num_vertices,
            edges: rerank(edges),
            original: self.original.clone(),
        }
    }
}

/// Maps arrivals (already non-decreasing) onto consecutive steps from 0.
fn rerank(mut edges: Vec<Hyperedge>) -> Vec<Hyperedge> {
    let mut step = 0;
    let mut last = None;
    for e in &mut edges {
        if let Some(prev) = last {
            if e.arrival != prev {
                step += 1;
            }
        }
        last = Some(e.arrival);
        e.arrival = step;
    }
    edges
}

/// A hypergraph paired with its class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledHypergraph {
    pub graph: Hypergraph,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    Jsonl,
    Contact,
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "contact" => Ok(CorpusFormat::Contact),
            other => Err(format!("unknown corpus format '{other}' (expected jsonl or contact)")),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::Jsonl => "jsonl",
            CorpusFormat::Contact => "contact",
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonRecord {
    id: String,
    label: String,
    edges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arrivals: Option<Vec<Arrival>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num_vertices: Option<usize>,
}

/// A labelled collection of hypergraphs with unique ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    items: Vec<LabeledHypergraph>,
}

impl Corpus {
    pub fn new(items: Vec<LabeledHypergraph>) -> Result<Self, HypergraphError> {
        let mut ids = HashSet::new();
        for item in &items {
            if !ids.insert(item.graph.id()) {
                return Err(HypergraphError::validation(format!("duplicate hypergraph id '{}'", item.graph.id())));
            }
        }
        Ok(Corpus { items })
    }

    pub fn items(&self) -> &[LabeledHypergraph] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.items.iter().map(|i| i.label.as_str()).collect()
    }

    /// Reads a jsonl corpus. Blank lines are skipped.
    pub fn from_jsonl<R: BufRead>(reader: R) -> Result<Self, HypergraphError> {
        let mut items = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| HypergraphError::parse(lineno, e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: JsonRecord =
                serde_json::from_str(&line).map_err(|e| HypergraphError::parse(lineno, e.to_string()))?;
            let arrivals = match rec.arrivals {
                Some(a) if a.len() != rec.edges.len() => {
                    return Err(HypergraphError::parse(
                        lineno,
                        format!("{} arrivals for {} edges", a.len(), rec.edges.len()),
                    ))
                }
                Some(a) => a,
                None => (0..rec.edges.len() as Arrival).collect(),
            };
            let edges = rec
                .edges
                .into_iter()
                .zip(arrivals)
                .map(|(e, a)| Hyperedge::new(e, a))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| HypergraphError::validation(format!("line {lineno}: {e}")))?;
            let needed = edges.iter().filter_map(|e| e.vertices.last()).map(|&v| v as usize + 1).max().unwrap_or(0);
            let n = rec.num_vertices.unwrap_or(needed);
            let graph = Hypergraph::new(rec.id, n, edges)
                .map_err(|e| HypergraphError::validation(format!("line {lineno}: {e}")))?;
            items.push(LabeledHypergraph { graph, label: rec.label });
        }
        Corpus::new(items)
    }

    /// Serializes the corpus back to jsonl. Arrivals are written only when they
    /// differ from edge positions.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let g = &item.graph;
            let positional = g.edges.iter().enumerate().all(|(i, e)| e.arrival as usize == i);
            let needed = g.edges.iter().filter_map(|e| e.vertices.last()).map(|&v| v as usize + 1).max().unwrap_or(0);
            let rec = JsonRecord {
                id: g.id.clone(),
                label: item.label.clone(),
                edges: g.edges.iter().map(|e| e.vertices.clone()).collect(),
                arrivals: (!positional).then(|| g.edges.iter().map(|e| e.arrival).collect()),
                num_vertices: (g.num_vertices != needed).then_some(g.num_vertices),
            };
            out.push_str(&serde_json::to_string(&rec).expect("corpus record serializes"));
            out.push('\n');
        }
        out
    }

    /// Reads a contact network from `<stem>-{nverts,simplices,times,labels}.txt`.
    pub fn from_contact_files(stem: &Path) -> Result<Self, HypergraphError> {
        let read = |suffix: &str| {
            let mut name = stem.as_os_str().to_owned();
            name.push(format!("-{suffix}.txt"));
            let path = PathBuf::from(name);
            std::fs::read_to_string(&path).map_err(|source| HypergraphError::Io { path, source })
        };
        let name = stem.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "contact".to_string());
        ContactNetwork::parse(&name, &read("nverts")?, &read("simplices")?, &read("times")?, &read("labels")?)?
            .ego_corpus()
    }

    /// Dispatches on `format`; `path` is a file for jsonl and a stem for contact.
    pub fn load(path: &Path, format: CorpusFormat) -> Result<Self, HypergraphError> {
        match format {
            CorpusFormat::Jsonl => {
                let file = std::fs::File::open(path)
                    .map_err(|source| HypergraphError::Io { path: path.to_path_buf(), source })?;
                Corpus::from_jsonl(std::io::BufReader::new(file))
            }
            CorpusFormat::Contact => Corpus::from_contact_files(path),
        }
    }
}

/// A timestamped contact hypergraph with per-vertex labels.
#[derive(Debug, Clone)]
pub struct ContactNetwork {
    pub graph: Hypergraph,
    /// Label per (0-based) vertex, for the vertices listed in the labels file.
    pub labels: BTreeMap<Vertex, String>,
}

fn parse_numbers(text: &str, what: &str) -> Result<Vec<(usize, i64)>, HypergraphError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse::<i64>()
                .map(|v| (i + 1, v))
                .map_err(|e| HypergraphError::parse(i + 1, format!("{what}: {e}")))
        })
        .collect()
}

impl ContactNetwork {
    /// Parses the four contact files from memory. Vertex ids in the files are
    /// 1-based; timestamps are ranked so that ties share a step.
    pub fn parse(
        name: &str,
        nverts: &str,
        simplices: &str,
        times: &str,
        labels: &str,
    ) -> Result<Self, HypergraphError> {
        let sizes = parse_numbers(nverts, "nverts")?;
        let flat = parse_numbers(simplices, "simplices")?;
        let stamps = parse_numbers(times, "times")?;
        if sizes.len() != stamps.len() {
            return Err(HypergraphError::validation(format!(
                "{} hyperedge sizes but {} timestamps",
                sizes.len(),
                stamps.len()
            )));
        }
        let total: i64 = sizes.iter().map(|&(_, s)| s).sum();
        if total != flat.len() as i64 {
            return Err(HypergraphError::validation(format!(
                "sizes sum to {total} but {} vertex ids given",
                flat.len()
            )));
        }
        let ranks: BTreeMap<i64, Arrival> = stamps
            .iter()
            .map(|&(_, t)| t)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, i as Arrival))
            .collect();

        let mut edges = Vec::with_capacity(sizes.len());
        let mut cursor = flat.iter();
        let mut max_vertex = 0usize;
        for (&(line, size), &(_, stamp)) in sizes.iter().zip(&stamps) {
            if size <= 0 {
                return Err(HypergraphError::validation(format!("nverts line {line}: empty hyperedge")));
            }
            let mut vs = Vec::with_capacity(size as usize);
            for _ in 0..size {
                let &(vline, v) = cursor.next().expect("length checked above");
                if v < 1 || v > Vertex::MAX as i64 {
                    return Err(HypergraphError::validation(format!(
                        "simplices line {vline}: vertex id {v} out of range (ids are 1-based)"
                    )));
                }
                max_vertex = max_vertex.max(v as usize);
                vs.push((v - 1) as Vertex);
            }
            edges.push(Hyperedge::new(vs, ranks[&stamp])?);
        }

        let mut label_map = BTreeMap::new();
        for (i, line) in labels.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (v, label) = line
                .split_once('\t')
                .ok_or_else(|| HypergraphError::parse(i + 1, "labels: expected vertex<TAB>label"))?;
            let v: i64 = v.trim().parse().map_err(|e| HypergraphError::parse(i + 1, format!("labels: {e}")))?;
            if v < 1 || v > Vertex::MAX as i64 {
                return Err(HypergraphError::validation(format!("labels line {}: vertex id {v} out of range", i + 1)));
            }
            max_vertex = max_vertex.max(v as usize);
            label_map.insert((v - 1) as Vertex, label.trim().to_string());
        }
        Ok(ContactNetwork { graph: Hypergraph::new(name, max_vertex, edges)?, labels: label_map })
    }

    /// One ego hypergraph per labelled vertex, skipping egos in no hyperedge.
    pub fn ego_corpus(&self) -> Result<Corpus, HypergraphError> {
        let mut items = Vec::new();
        for (&v, label) in &self.labels {
            let ego = self.graph.ego(v)?;
            if ego.edges().is_empty() {
                log::warn!("ego {} lies in no hyperedge, skipped", v + 1);
                continue;
            }
            items.push(LabeledHypergraph { graph: ego, label: label.clone() });
        }
        Corpus::new(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrivals(h: &Hypergraph) -> Vec<Arrival> {
        h.edges().iter().map(|e| e.arrival()).collect()
    }

    #[test]
    fn jsonl_line_maps_fields() {
        let c = Corpus::from_jsonl(r#"{"id":"g1","label":"A","edges":[[0,1],[1,2]]}"#.as_bytes()).unwrap();
        let g = &c.items()[0].graph;
        assert_eq!(g.id(), "g1");
        assert_eq!(c.items()[0].label, "A");
        assert_eq!(g.edges().len(), 2);
        assert_eq!(arrivals(g), vec![0, 1]);
        assert_eq!(g.num_vertices(), 3);
    }

    #[test]
    fn jsonl_explicit_arrivals_reorder() {
        let c =
            Corpus::from_jsonl(r#"{"id":"g","label":"A","edges":[[0,1],[2]],"arrivals":[5,1]}"#.as_bytes()).unwrap();
        let g = &c.items()[0].graph;
        assert_eq!(g.edges()[0].vertices(), &[2]);
        assert_eq!(arrivals(g), vec![1, 5]);
    }

    #[test]
    fn jsonl_empty_edge_is_validation_error() {
        let err = Corpus::from_jsonl(r#"{"id":"g2","label":"A","edges":[[]]}"#.as_bytes()).unwrap_err();
        assert!(matches!(err, HypergraphError::Validation(_)), "{err}");
    }

    #[test]
    fn jsonl_malformed_line_reports_line_number() {
        let text = "{\"id\":\"a\",\"label\":\"A\",\"edges\":[[0]]}\n{not json\n";
        match Corpus::from_jsonl(text.as_bytes()).unwrap_err() {
            HypergraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn jsonl_vertex_out_of_range() {
        let err =
            Corpus::from_jsonl(r#"{"id":"g","label":"A","edges":[[0,3]],"num_vertices":3}"#.as_bytes()).unwrap_err();
        assert!(matches!(err, HypergraphError::Validation(_)));
    }

    #[test]
    fn jsonl_duplicate_ids_rejected() {
        let text = "{\"id\":\"a\",\"label\":\"A\",\"edges\":[[0]]}\n{\"id\":\"a\",\"label\":\"B\",\"edges\":[[0]]}\n";
        assert!(matches!(Corpus::from_jsonl(text.as_bytes()).unwrap_err(), HypergraphError::Validation(_)));
    }

    #[test]
    fn contact_timestamps_rank_with_ties() {
        let net = ContactNetwork::parse("hs", "2\n2\n2\n", "1\n2\n2\n3\n1\n3\n", "40\n20\n20\n", "1\tA\n").unwrap();
        let by_set: Vec<(Vec<Vertex>, Arrival)> =
            net.graph.edges().iter().map(|e| (e.vertices().to_vec(), e.arrival())).collect();
        assert_eq!(by_set, vec![(vec![1, 2], 0), (vec![0, 2], 0), (vec![0, 1], 1)]);
        assert_eq!(net.labels[&0], "A");
    }

    #[test]
    fn contact_zero_vertex_rejected() {
        let err = ContactNetwork::parse("x", "1\n", "0\n", "1\n", "").unwrap_err();
        assert!(matches!(err, HypergraphError::Validation(_)));
    }

    #[test]
    fn contact_bad_number_reports_line() {
        match ContactNetwork::parse("x", "1\nzz\n", "1\n", "1\n", "").unwrap_err() {
            HypergraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn ego_filters_and_reindexes() {
        let h = Hypergraph::from_edge_lists("h", [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let e = h.ego(1).unwrap();
        let sets: Vec<&[Vertex]> = e.edges().iter().map(|e| e.vertices()).collect();
        assert_eq!(sets, vec![&[0, 1][..], &[1, 2][..]]);
        assert_eq!(arrivals(&e), vec![0, 1]);
        assert_eq!(e.num_vertices(), 3);
        assert_eq!(e.reindexed(1), Some(1));
    }

    #[test]
    fn ego_disjoint_edges() {
        let h = Hypergraph::from_edge_lists("h", [vec![0, 1], vec![2, 3]]).unwrap();
        let e = h.ego(0).unwrap();
        assert_eq!(e.edges().len(), 1);
        assert_eq!(e.num_vertices(), 2);
        assert_eq!(e.edges()[0].vertices(), &[0, 1]);
    }

    #[test]
    fn ego_reindexing_keeps_original_ids() {
        let h = Hypergraph::from_edge_lists("h", [vec![3, 7], vec![5, 9], vec![7, 9]]).unwrap();
        let e = h.ego(7).unwrap();
        assert_eq!(e.num_vertices(), 3);
        assert_eq!(e.original_vertex(0), 3);
        assert_eq!(e.original_vertex(1), 7);
        assert_eq!(e.original_vertex(2), 9);
        assert_eq!(e.reindexed(7), Some(1));
        assert_eq!(e.id(), "h-7");
    }

    #[test]
    fn ego_absent_gives_empty() {
        let h = Hypergraph::new("h", 4, vec![Hyperedge::new(vec![0, 1], 0).unwrap()]).unwrap();
        let e = h.ego(3).unwrap();
        assert!(e.edges().is_empty());
        assert!(h.ego(4).is_err());
    }

    #[test]
    fn ego_in_every_edge_is_identity_up_to_reindexing() {
        let h = Hypergraph::from_edge_lists("h", [vec![2, 4], vec![2, 6, 8], vec![2]]).unwrap();
        let e = h.ego(2).unwrap();
        assert_eq!(e.edges().len(), 3);
        for (a, b) in h.edges().iter().zip(e.edges()) {
            assert_eq!(a.arrival(), b.arrival());
            let mapped: Vec<Vertex> = b.vertices().iter().map(|&v| e.original_vertex(v)).collect();
            assert_eq!(mapped, a.vertices());
        }
    }

    #[test]
    fn size_filter_drops_large_edges() {
        let big: Vec<Vertex> = (0..87).collect();
        let h = Hypergraph::from_edge_lists("makam", [vec![0, 1], big, (0..24).collect()]).unwrap();
        let f = h.filter_by_size(DEFAULT_MAX_EDGE_SIZE);
        assert_eq!(f.edges().len(), 2);
        assert_eq!(f.max_edge_size(), 24);
        assert_eq!(arrivals(&f), vec![0, 1]);
        assert_eq!(f.num_vertices(), 87);

        assert_eq!(h.filter_by_size(87), h);
        assert!(h.filter_by_size(1).edges().is_empty());
    }

    #[test]
    fn jsonl_round_trip() {
        let text = concat!(
            "{\"id\":\"a\",\"label\":\"A\",\"edges\":[[0,1],[1,2]]}\n",
            "{\"id\":\"b\",\"label\":\"B\",\"edges\":[[2],[0,1]],\"arrivals\":[0,0],\"num_vertices\":5}\n",
        );
        let c = Corpus::from_jsonl(text.as_bytes()).unwrap();
        let again = Corpus::from_jsonl(c.to_jsonl().as_bytes()).unwrap();
        assert_eq!(c, again);
    }
}
