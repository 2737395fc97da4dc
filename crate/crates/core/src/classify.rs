//! Random forest of Gini trees and stratified k-fold cross-validation.
//!
//! Labels are kept as strings and mapped to indices in lexicographic order,
//! so every "smallest index" tie-break is a "lexicographically smallest
//! label" tie-break.
//!
//! Randomness: tree `i` of a forest draws from a ChaCha8 stream `i + 1` seeded
//! with the forest seed; fold assignment uses stream 0. Results therefore do not
//! depend on how trees are scheduled across threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("single class: need at least 2 distinct labels")]
    SingleClass,
    #[error("{rows} feature rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
    #[error("need at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("row {row} has {got} features, expected {expected}")]
    WidthMismatch { row: usize, got: usize, expected: usize },
    #[error("row {0} has a non-finite feature value")]
    NonFinite(usize),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("cross-validation needs every class to have at least 2 members (class '{0}' has 1)")]
    ClassTooSmall(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForestParams {
    pub n_trees: usize,
    /// `None` grows trees until leaves are pure or too small to split.
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
    /// `None` means ⌈√d⌉ for `d` features.
    pub features_per_split: Option<usize>,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams { n_trees: 100, max_depth: None, min_samples_split: 2, features_per_split: None, seed: 42 }
    }
}

impl ForestParams {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if self.n_trees == 0 {
            return Err(ClassifyError::Params("n_trees must be at least 1".into()));
        }
        if self.min_samples_split < 2 {
            return Err(ClassifyError::Params("min_samples_split must be at least 2".into()));
        }
        if self.features_per_split == Some(0) {
            return Err(ClassifyError::Params("features_per_split must be at least 1".into()));
        }
        Ok(())
    }

    fn split_features(&self, d: usize) -> usize {
        self.features_per_split.unwrap_or_else(|| (d as f64).sqrt().ceil() as usize).clamp(1, d.max(1))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node<T> {
    Leaf(usize),
    Split { feature: usize, threshold: T, left: usize, right: usize },
}

/// A CART classification tree; `x[feature] <= threshold` goes left.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree<T> {
    nodes: Vec<Node<T>>,
}

impl<T: Real> DecisionTree<T> {
    /// Class index at the leaf reached by `x`.
    pub fn predict_index(&self, x: &[T]) -> usize {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf(c) => return *c,
                Node::Split { feature, threshold, left, right } => {
                    at = if x[*feature] <= *threshold { *left } else { *right }
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn rec<T>(nodes: &[Node<T>], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + rec(nodes, *left).max(rec(nodes, *right)),
            }
        }
        rec(&self.nodes, 0)
    }
}

fn gini(counts: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let t = total as f64;
    1.0 - counts.iter().map(|&c| (c as f64 / t).powi(2)).sum::<f64>()
}

fn majority(counts: &[usize]) -> usize {
    // first maximum = smallest class index
    let mut best = 0;
    for (c, &n) in counts.iter().enumerate() {
        if n > counts[best] {
            best = c;
        }
    }
    best
}

struct TreeBuilder<'a, T> {
    x: &'a [Vec<T>],
    y: &'a [usize],
    n_classes: usize,
    params: &'a ForestParams,
    mtry: usize,
    nodes: Vec<Node<T>>,
}

struct BestSplit<T> {
    feature: usize,
    threshold: T,
    impurity: f64,
}

impl<T: Real> TreeBuilder<'_, T> {
    fn counts(&self, samples: &[usize]) -> Vec<usize> {
        let mut c = vec![0; self.n_classes];
        for &s in samples {
            c[self.y[s]] += 1;
        }
        c
    }

    /// Best threshold on `feature`, or `None` when the feature is constant.
    fn best_threshold(&self, samples: &mut [usize], feature: usize) -> Option<(T, f64)> {
        samples.sort_by(|&a, &b| self.x[a][feature].partial_cmp(&self.x[b][feature]).expect("finite features"));
        let n = samples.len();
        let first = self.x[samples[0]][feature];
        let last = self.x[samples[n - 1]][feature];
        if first == last {
            return None;
        }
        let mut left = vec![0usize; self.n_classes];
        let mut right = self.counts(samples);
        let mut best: Option<(T, f64)> = None;
        for i in 0..n - 1 {
            let c = self.y[samples[i]];
            left[c] += 1;
            right[c] -= 1;
            let a = self.x[samples[i]][feature];
            let b = self.x[samples[i + 1]][feature];
            if a == b {
                continue;
            }
            let nl = i + 1;
            let nr = n - nl;
            let imp = (nl as f64 * gini(&left, nl) + nr as f64 * gini(&right, nr)) / n as f64;
            if best.as_ref().is_none_or(|(_, bi)| imp < *bi) {
                let two = T::one() + T::one();
                let mut mid = a + (b - a) / two;
                if mid >= b {
                    mid = a;
                }
                best = Some((mid, imp));
            }
        }
        best
    }

    fn build(&mut self, samples: &mut [usize], depth: usize, rng: &mut ChaCha8Rng) -> usize {
        let counts = self.counts(samples);
        let n = samples.len();
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let at_depth = self.params.max_depth.is_some_and(|d| depth >= d);
        if pure || at_depth || n < self.params.min_samples_split {
            return self.push(Node::Leaf(majority(&counts)));
        }

        let d = self.x[0].len();
        let mut features: Vec<usize> = (0..d).collect();
        features.shuffle(rng);
        let mut best: Option<BestSplit<T>> = None;
        let mut tried = 0;
        for &f in &features {
            // constant features do not count towards the per-split budget
            if tried >= self.mtry {
                break;
            }
            if let Some((threshold, impurity)) = self.best_threshold(samples, f) {
                tried += 1;
                if best.as_ref().is_none_or(|b| impurity < b.impurity) {
                    best = Some(BestSplit { feature: f, threshold, impurity });
                }
            }
        }
        let Some(split) = best else {
            return self.push(Node::Leaf(majority(&counts)));
        };

        let mut left: Vec<usize> = Vec::new();
        let mut right: Vec<usize> = Vec::new();
        for &s in samples.iter() {
            if self.x[s][split.feature] <= split.threshold {
                left.push(s);
            } else {
                right.push(s);
            }
        }
        let at = self.push(Node::Leaf(0));
        let l = self.build(&mut left, depth + 1, rng);
        let r = self.build(&mut right, depth + 1, rng);
        self.nodes[at] = Node::Split { feature: split.feature, threshold: split.threshold, left: l, right: r };
        at
    }

    fn push(&mut self, node: Node<T>) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest<T> {
    trees: Vec<DecisionTree<T>>,
    classes: Vec<String>,
    n_features: usize,
}

/// Encodes labels as indices into the sorted distinct labels.
fn encode(y: &[String]) -> (Vec<String>, Vec<usize>) {
    let classes: Vec<String> = y.iter().cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let codes = y.iter().map(|l| classes.binary_search(l).expect("label present")).collect();
    (classes, codes)
}

fn check_inputs<T: Real>(x: &[Vec<T>], y: &[String]) -> Result<usize, ClassifyError> {
    if x.len() != y.len() {
        return Err(ClassifyError::LengthMismatch { rows: x.len(), labels: y.len() });
    }
    if x.len() < 2 {
        return Err(ClassifyError::TooFewRows(x.len()));
    }
    let d = x[0].len();
    for (i, row) in x.iter().enumerate() {
        if row.len() != d {
            return Err(ClassifyError::WidthMismatch { row: i, got: row.len(), expected: d });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(ClassifyError::NonFinite(i));
        }
    }
    Ok(d)
}

fn tree_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Trains `params.n_trees` trees on bootstrap samples, in parallel.
pub fn train_forest<T: Real>(
    x: &[Vec<T>],
    y: &[String],
    params: &ForestParams,
) -> Result<RandomForest<T>, ClassifyError> {
    params.validate()?;
    let d = check_inputs(x, y)?;
    let (classes, codes) = encode(y);
    if classes.len() < 2 {
        return Err(ClassifyError::SingleClass);
    }
    let n = x.len();
    let mtry = params.split_features(d);
    let trees = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = tree_rng(params.seed, t as u64 + 1);
            let mut sample: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
            let mut b = TreeBuilder { x, y: &codes, n_classes: classes.len(), params, mtry, nodes: Vec::new() };
            b.build(&mut sample, 0, &mut rng);
            DecisionTree { nodes: b.nodes }
        })
        .collect();
    Ok(RandomForest { trees, classes, n_features: d })
}

impl<T: Real> RandomForest<T> {
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn trees(&self) -> &[DecisionTree<T>] {
        &self.trees
    }

    pub fn predict_index(&self, x: &[T]) -> Result<usize, ClassifyError> {
        if x.len() != self.n_features {
            return Err(ClassifyError::WidthMismatch { row: 0, got: x.len(), expected: self.n_features });
        }
        let mut votes = vec![0usize; self.classes.len()];
        for t in &self.trees {
            votes[t.predict_index(x)] += 1;
        }
        Ok(majority(&votes))
    }

    /// Majority vote; ties go to the lexicographically smallest label.
    pub fn predict(&self, x: &[T]) -> Result<&str, ClassifyError> {
        self.predict_index(x).map(|c| self.classes[c].as_str())
    }
}

/// Stratified fold assignment. Within each class, members are shuffled and
/// dealt round-robin; the dealing position carries over between classes so
/// overall fold sizes stay balanced too.
pub fn stratified_folds(y: &[String], folds: usize, seed: u64) -> Vec<usize> {
    let mut rng = tree_rng(seed, 0);
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, l) in y.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut assignment = vec![0; y.len()];
    let mut next = 0;
    for members in by_class.values_mut() {
        members.shuffle(&mut rng);
        for &m in members.iter() {
            assignment[m] = next % folds;
            next += 1;
        }
    }
    assignment
}

/// Precision or recall; `None` when undefined (serialized as `"NA"`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric(pub Option<f64>);

impl Metric {
    fn ratio(num: usize, den: usize) -> Self {
        Metric((den > 0).then(|| num as f64 / den as f64))
    }

    pub fn percent(&self) -> String {
        match self.0 {
            Some(v) => format!("{:.2}", v * 100.0),
            None => "NA".to_string(),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_f64(v),
            None => s.serialize_str("NA"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub label: String,
    pub precision: Metric,
    pub recall: Metric,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvReport {
    pub folds: usize,
    pub accuracy: f64,
    pub per_class: Vec<ClassMetrics>,
    /// Mean over classes with a defined value.
    pub macro_precision: Metric,
    pub macro_recall: Metric,
    pub fold_accuracies: Vec<f64>,
    pub fold_sizes: Vec<usize>,
    pub labels: Vec<String>,
    /// `confusion[actual][predicted]`.
    pub confusion: Vec<Vec<usize>>,
}

impl CvReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "folds     {}", self.folds);
        let _ = writeln!(out, "accuracy  {:.2}", self.accuracy * 100.0);
        let _ = writeln!(out, "precision {} (macro)", self.macro_precision.percent());
        let _ = writeln!(out, "recall    {} (macro)", self.macro_recall.percent());
        let width = self.per_class.iter().map(|c| c.label.len()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<width$}  {:>9}  {:>9}  {:>7}", "class", "precision", "recall", "support");
        for c in &self.per_class {
            let _ = writeln!(
                out,
                "{:<width$}  {:>9}  {:>9}  {:>7}",
                c.label,
                c.precision.percent(),
                c.recall.percent(),
                c.support
            );
        }
        out
    }
}

fn mean_defined(values: impl Iterator<Item = Metric>) -> Metric {
    let defined: Vec<f64> = values.filter_map(|m| m.0).collect();
    Metric((!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64))
}

/// Stratified k-fold cross-validation. If the smallest class has fewer than
/// `folds` members, the fold count drops to that size (with a warning).
pub fn cross_validate<T: Real>(
    x: &[Vec<T>],
    y: &[String],
    params: &ForestParams,
    folds: usize,
) -> Result<CvReport, ClassifyError> {
    params.validate()?;
    check_inputs(x, y)?;
    let (classes, codes) = encode(y);
    if classes.len() < 2 {
        return Err(ClassifyError::SingleClass);
    }
    if folds < 2 {
        return Err(ClassifyError::Params("folds must be at least 2".into()));
    }
    let mut sizes = vec![0usize; classes.len()];
    for &c in &codes {
        sizes[c] += 1;
    }
    let (smallest_class, &smallest) = sizes.iter().enumerate().min_by_key(|&(_, n)| *n).expect("at least two classes");
    if smallest < 2 {
        return Err(ClassifyError::ClassTooSmall(classes[smallest_class].clone()));
    }
    let k = if smallest < folds {
        log::warn!(
            "class '{}' has only {smallest} members; using {smallest} folds instead of {folds}",
            classes[smallest_class]
        );
        smallest
    } else {
        folds
    };

    let assignment = stratified_folds(y, k, params.seed);
    let mut confusion = vec![vec![0usize; classes.len()]; classes.len()];
    let mut fold_accuracies = Vec::with_capacity(k);
    let mut fold_sizes = Vec::with_capacity(k);
    for fold in 0..k {
        let (train, test): (Vec<usize>, Vec<usize>) = (0..x.len()).partition(|&i| assignment[i] != fold);
        let tx: Vec<Vec<T>> = train.iter().map(|&i| x[i].clone()).collect();
        let ty: Vec<String> = train.iter().map(|&i| y[i].clone()).collect();
        let forest = train_forest(&tx, &ty, params)?;
        let mut correct = 0;
        for &i in &test {
            let predicted = forest.predict(&x[i])?;
            let p = classes.binary_search_by(|c| c.as_str().cmp(predicted)).expect("known label");
            confusion[codes[i]][p] += 1;
            correct += usize::from(p == codes[i]);
        }
        fold_accuracies.push(correct as f64 / test.len() as f64);
        fold_sizes.push(test.len());
    }

    let total: usize = confusion.iter().flatten().sum();
    let trace: usize = (0..classes.len()).map(|c| confusion[c][c]).sum();
    let per_class: Vec<ClassMetrics> = classes
        .iter()
        .enumerate()
        .map(|(c, label)| {
            let predicted: usize = confusion.iter().map(|row| row[c]).sum();
            let actual: usize = confusion[c].iter().sum();
            ClassMetrics {
                label: label.clone(),
                precision: Metric::ratio(confusion[c][c], predicted),
                recall: Metric::ratio(confusion[c][c], actual),
                support: actual,
            }
        })
        .collect();
    Ok(CvReport {
        folds: k,
        accuracy: trace as f64 / total as f64,
        macro_precision: mean_defined(per_class.iter().map(|c| c.precision)),
        macro_recall: mean_defined(per_class.iter().map(|c| c.recall)),
        per_class,
        fold_accuracies,
        fold_sizes,
        labels: classes,
        confusion,
    })
}
