//! Barcode vectorization: five numbers per homology dimension.
//!
//! For bars `(x_i, y_i)` of one dimension, with infinite deaths replaced by
//! `y_max`:
//!
//! | feature | value                              |
//! |---------|------------------------------------|
//! | count   | number of bars                     |
//! | f1      | Σ x_i (y_i − x_i)                  |
//! | f2      | Σ (y_max − y_i)(y_i − x_i)         |
//! | f3      | Σ x_i² (y_i − x_i)⁴                |
//! | f4      | Σ (y_max − y_i)² (y_i − x_i)⁴      |

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::Value;
use crate::filtration::FiltrationKind;
use crate::hypergraph::{Corpus, DEFAULT_MAX_EDGE_SIZE};
use crate::persistence::{compute_persistence_with, Barcode, PersistenceError, PersistenceOptions, PersistencePair};
use crate::real::Real;

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("hypergraph {id}: {source}")]
    Persistence {
        id: String,
        #[source]
        source: PersistenceError,
    },
    #[error("feature csv: {0}")]
    Csv(String),
}

/// Which homology dimensions contribute feature blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DimSet {
    Zero,
    One,
    Both,
}

impl DimSet {
    pub const ALL: [DimSet; 3] = [DimSet::Zero, DimSet::One, DimSet::Both];

    pub fn dims(self) -> &'static [usize] {
        match self {
            DimSet::Zero => &[0],
            DimSet::One => &[1],
            DimSet::Both => &[0, 1],
        }
    }

    pub fn width(self) -> usize {
        5 * self.dims().len()
    }

    pub fn token(self) -> &'static str {
        match self {
            DimSet::Zero => "0",
            DimSet::One => "1",
            DimSet::Both => "01",
        }
    }

    /// Table heading, e.g. "Dim 0 & 1".
    pub fn name(self) -> &'static str {
        match self {
            DimSet::Zero => "Dim 0",
            DimSet::One => "Dim 1",
            DimSet::Both => "Dim 0 & 1",
        }
    }

    pub fn column_names(self) -> Vec<String> {
        self.dims()
            .iter()
            .flat_map(|d| ["count", "f1", "f2", "f3", "f4"].into_iter().map(move |f| format!("d{d}_{f}")))
            .collect()
    }
}

impl fmt::Display for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DimSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(DimSet::Zero),
            "1" => Ok(DimSet::One),
            "01" | "0,1" | "both" => Ok(DimSet::Both),
            other => Err(format!("unknown dimension set '{other}' (expected 0, 1 or 01)")),
        }
    }
}

/// How `y_max` is chosen when substituting infinite deaths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YMaxMode {
    /// Largest finite endpoint among the bars of the dimension.
    #[default]
    PerBarcode,
    /// Largest filtration value of the whole complex.
    Global,
}

impl FromStr for YMaxMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "barcode" | "per-barcode" => Ok(YMaxMode::PerBarcode),
            "global" => Ok(YMaxMode::Global),
            other => Err(format!("unknown ymax mode '{other}' (expected barcode or global)")),
        }
    }
}

impl fmt::Display for YMaxMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YMaxMode::PerBarcode => "barcode",
            YMaxMode::Global => "global",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DimFeatures<T> {
    pub count: usize,
    pub f1: T,
    pub f2: T,
    pub f3: T,
    pub f4: T,
}

impl<T: Real> DimFeatures<T> {
    pub fn as_array(&self) -> [T; 5] {
        [T::from_count(self.count), self.f1, self.f2, self.f3, self.f4]
    }
}

/// Features of the bars in one dimension. `y_max` overrides the per-bar
/// maximum when given.
pub fn dim_features<'a, T: Real>(
    bars: impl IntoIterator<Item = &'a PersistencePair>,
    y_max: Option<Value>,
) -> DimFeatures<T> {
    let bars: Vec<&PersistencePair> = bars.into_iter().collect();
    if bars.is_empty() {
        return DimFeatures::default();
    }
    let y_max = y_max
        .unwrap_or_else(|| bars.iter().flat_map(|p| std::iter::once(p.birth).chain(p.death)).max().expect("non-empty"));
    let y_max_r = T::from_value(y_max);
    let mut out = DimFeatures { count: bars.len(), ..Default::default() };
    for p in bars {
        let x = T::from_value(p.birth);
        let y = T::from_value(p.death.unwrap_or(y_max).max(p.birth));
        let len = y - x;
        let tail = y_max_r - y;
        let len4 = len.powi(4);
        out.f1 = out.f1 + x * len;
        out.f2 = out.f2 + tail * len;
        out.f3 = out.f3 + x * x * len4;
        out.f4 = out.f4 + tail * tail * len4;
    }
    out
}

/// Feature blocks for the requested dimensions, in dimension order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector<T> {
    pub dims: DimSet,
    pub blocks: Vec<DimFeatures<T>>,
}

impl<T: Real> FeatureVector<T> {
    pub fn to_row(&self) -> Vec<T> {
        self.blocks.iter().flat_map(DimFeatures::as_array).collect()
    }
}

pub fn extract_features<T: Real>(b: &Barcode, dims: DimSet, ymax: YMaxMode) -> FeatureVector<T> {
    let global = match ymax {
        YMaxMode::PerBarcode => None,
        YMaxMode::Global => Some(b.max_filtration_value),
    };
    FeatureVector { dims, blocks: dims.dims().iter().map(|&d| dim_features(b.dim(d), global)).collect() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeaturizeConfig {
    pub max_edge_size: usize,
    pub persistence: PersistenceOptions,
    pub ymax: YMaxMode,
}

impl Default for FeaturizeConfig {
    fn default() -> Self {
        FeaturizeConfig {
            max_edge_size: DEFAULT_MAX_EDGE_SIZE,
            persistence: PersistenceOptions::default(),
            ymax: YMaxMode::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow<T> {
    pub id: String,
    pub label: String,
    pub values: Vec<T>,
}

/// One feature row per hypergraph, in corpus order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable<T> {
    pub dims: DimSet,
    pub rows: Vec<FeatureRow<T>>,
}

impl<T: Real> FeatureTable<T> {
    pub fn header(&self) -> String {
        let mut cols = vec!["id".to_string(), "label".to_string()];
        cols.extend(self.dims.column_names());
        cols.join(",")
    }

    pub fn labels(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.label.clone()).collect()
    }

    pub fn matrix(&self) -> Vec<Vec<T>> {
        self.rows.iter().map(|r| r.values.clone()).collect()
    }

    /// Columns of `dims` (which must be covered by this table's dims).
    pub fn select(&self, dims: DimSet) -> Option<FeatureTable<T>> {
        let offsets: Vec<usize> = dims
            .dims()
            .iter()
            .map(|d| self.dims.dims().iter().position(|x| x == d).map(|p| p * 5))
            .collect::<Option<_>>()?;
        Some(FeatureTable {
            dims,
            rows: self
                .rows
                .iter()
                .map(|r| FeatureRow {
                    id: r.id.clone(),
                    label: r.label.clone(),
                    values: offsets.iter().flat_map(|&o| r.values[o..o + 5].iter().copied()).collect(),
                })
                .collect(),
        })
    }

    /// CSV with header; reals printed with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let mut header = vec!["id".to_string(), "label".to_string()];
        header.extend(self.dims.column_names());
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.id.clone(), r.label.clone()];
            for (i, v) in r.values.iter().enumerate() {
                rec.push(if i % 5 == 0 {
                    format!("{}", v.to_f64().unwrap_or(0.0) as u64)
                } else {
                    format_g17(v.to_f64().unwrap_or(f64::NAN))
                });
            }
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn from_csv(text: &str) -> Result<Self, FeatureError> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header: Vec<String> =
            r.headers().map_err(|e| FeatureError::Csv(e.to_string()))?.iter().map(str::to_string).collect();
        let dims = DimSet::ALL
            .into_iter()
            .find(|d| {
                header.len() == 2 + d.width() && header[..2] == ["id", "label"] && header[2..] == d.column_names()[..]
            })
            .ok_or_else(|| FeatureError::Csv(format!("unrecognized header: {}", header.join(","))))?;
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| FeatureError::Csv(format!("row {}: {e}", i + 2)))?;
            let values = rec
                .iter()
                .skip(2)
                .map(|s| {
                    s.parse::<f64>()
                        .ok()
                        .and_then(T::from_f64)
                        .ok_or_else(|| FeatureError::Csv(format!("row {}: bad number '{s}'", i + 2)))
                })
                .collect::<Result<Vec<T>, _>>()?;
            rows.push(FeatureRow { id: rec[0].to_string(), label: rec[1].to_string(), values });
        }
        Ok(FeatureTable { dims, rows })
    }
}

/// `printf("%.17g")` formatting.
pub fn format_g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (PRECISION - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Result of featurizing a corpus.
#[derive(Debug, Clone)]
pub struct Featurized<T> {
    pub table: FeatureTable<T>,
    /// Hyperedges removed by the size cap, summed over the corpus.
    pub removed_edges: usize,
}

/// Size filter, filtration, persistence and feature extraction per hypergraph.
/// Runs on the current rayon pool; row order follows the corpus.
pub fn featurize_corpus<T: Real>(
    corpus: &Corpus,
    kind: FiltrationKind,
    dims: DimSet,
    cfg: &FeaturizeConfig,
) -> Result<Featurized<T>, FeatureError> {
    let results: Vec<(FeatureRow<T>, usize)> = corpus
        .items()
        .par_iter()
        .map(|item| {
            let h = item.graph.filter_by_size(cfg.max_edge_size);
            let removed = item.graph.edges().len() - h.edges().len();
            let complex = kind.build(&h);
            let p = compute_persistence_with(&complex, cfg.persistence)
                .map_err(|source| FeatureError::Persistence { id: item.graph.id().to_string(), source })?;
            let fv: FeatureVector<T> = extract_features(&p.barcode, dims, cfg.ymax);
            Ok((
                FeatureRow { id: item.graph.id().to_string(), label: item.label.clone(), values: fv.to_row() },
                removed,
            ))
        })
        .collect::<Result<_, FeatureError>>()?;
    let removed_edges = results.iter().map(|(_, r)| r).sum();
    Ok(Featurized { table: FeatureTable { dims, rows: results.into_iter().map(|(r, _)| r).collect() }, removed_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Hypergraph, LabeledHypergraph};

    fn bar(b: Value, d: Option<Value>) -> PersistencePair {
        PersistencePair { dim: 0, birth: b, death: d }
    }

    #[test]
    fn worked_example() {
        let f: DimFeatures<f64> = dim_features(&[bar(0, Some(2)), bar(1, None)], None);
        assert_eq!(f.count, 2);
        assert_eq!([f.f1, f.f2, f.f3, f.f4], [1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn empty_barcode_is_zero() {
        let f: DimFeatures<f64> = dim_features(&[], None);
        assert_eq!(f, DimFeatures::default());
        let b = Barcode::default();
        let fv: FeatureVector<f32> = extract_features(&b, DimSet::Both, YMaxMode::PerBarcode);
        assert_eq!(fv.to_row(), vec![0.0; 10]);
    }

    #[test]
    fn single_infinite_bar() {
        let f: DimFeatures<f64> = dim_features(&[bar(0, None)], None);
        assert_eq!(f.count, 1);
        assert_eq!([f.f1, f.f2, f.f3, f.f4], [0.0; 4]);
    }

    #[test]
    fn global_ymax() {
        let b = Barcode { pairs: vec![bar(1, None)], max_filtration_value: 4 };
        let fv: FeatureVector<f64> = extract_features(&b, DimSet::Zero, YMaxMode::Global);
        // y = 4: f1 = 1*3, f3 = 1*81
        assert_eq!(fv.to_row(), vec![1.0, 3.0, 0.0, 81.0, 0.0]);
    }

    #[test]
    fn dimset_widths_and_names() {
        assert_eq!(DimSet::Both.width(), 10);
        assert_eq!(DimSet::Zero.width(), 5);
        assert_eq!(DimSet::Both.column_names()[5], "d1_count");
        assert_eq!("0,1".parse::<DimSet>().unwrap(), DimSet::Both);
    }

    #[test]
    fn g17_matches_printf() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1234.5), "1234.5");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_g17(0.0), "0");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(123456789012345680.0), "1.2345678901234568e+17");
    }

    #[test]
    fn csv_round_trip_and_select() {
        let table = FeatureTable {
            dims: DimSet::Both,
            rows: vec![FeatureRow {
                id: "a,b".to_string(),
                label: "X".to_string(),
                values: vec![2.0, 0.1, 0.2, 0.3, 0.4, 3.0, 0.5, 0.6, 0.7, 0.8],
            }],
        };
        let text = table.to_csv();
        assert!(text.starts_with("id,label,d0_count,d0_f1,d0_f2,d0_f3,d0_f4,d1_count,"));
        let back = FeatureTable::<f64>::from_csv(&text).unwrap();
        assert_eq!(back.rows[0].id, "a,b");
        assert_eq!(back.rows[0].values[1], 0.1);
        let d1 = back.select(DimSet::One).unwrap();
        assert_eq!(d1.rows[0].values, vec![3.0, 0.5, 0.6, 0.7, 0.8]);
        assert!(d1.select(DimSet::Zero).is_none());
    }

    #[test]
    fn featurize_rows_follow_corpus() {
        let g = |id: &str| LabeledHypergraph {
            graph: Hypergraph::from_edge_lists(id, [vec![1], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap(),
            label: "A".into(),
        };
        let corpus = Corpus::new(vec![g("x"), g("y"), g("z")]).unwrap();
        let out: Featurized<f64> =
            featurize_corpus(&corpus, FiltrationKind::RelBs, DimSet::Both, &FeaturizeConfig::default()).unwrap();
        let ids: Vec<&str> = out.table.rows.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, vec!["x", "y", "z"]);
        assert!(out.table.rows.iter().all(|r| r.values.len() == 10));
        assert_eq!(out.table.rows[0].values, out.table.rows[1].values);
        assert_eq!(out.removed_edges, 0);
    }
}
