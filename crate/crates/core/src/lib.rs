//! # hyperph
//!
//! Persistent homology of hypergraphs with insertion-ordered hyperedges.
//!
//! The pipeline is:
//!
//! 1. [`hypergraph`]: read a labelled corpus (jsonl or contact files),
//!    optionally take ego hypergraphs and cap hyperedge size.
//! 2. [`filtration`]: build one of three filtered complexes
//!    ([`FiltrationKind::Scc`], [`FiltrationKind::ResBs`], [`FiltrationKind::RelBs`]).
//! 3. [`persistence`]: barcodes in dimensions 0 and 1 over Z/2.
//! 4. [`features`]: five numbers per dimension.
//! 5. [`classify`]: random forest with stratified cross-validation.
//!
//! Feature values and the classifier are generic over [`Real`] (`f32` or `f64`);
//! the aliases below fix `f64`.
//!
//! ```
//! use hyperph::{compute_persistence, FiltrationKind, Hypergraph};
//!
//! let h = Hypergraph::from_edge_lists("g", [vec![1], vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
//! let barcode = compute_persistence(&FiltrationKind::RelBs.build(&h)).unwrap();
//! assert_eq!(barcode.dim(1).count(), 1);
//! ```

pub mod classify;
pub mod complex;
pub mod diagram;
pub mod features;
pub mod filtration;
pub mod hypergraph;
pub mod persistence;
pub mod real;

pub use classify::{cross_validate, train_forest, ClassifyError, CvReport, ForestParams, Metric};
pub use complex::{
    barycentric_subdivision, betti_oracle, downward_closure, ComplexError, FilteredComplex, Simplex, Value,
};
pub use features::{extract_features, featurize_corpus, DimSet, FeatureError, FeaturizeConfig, YMaxMode};
pub use filtration::{
    build_relbs_filtration, build_resbs_filtration, build_scc_filtration, relative_subdivision, restricted_subdivision,
    Cell, FiltrationKind, Subdivision,
};
pub use hypergraph::{
    ContactNetwork, Corpus, CorpusFormat, Hyperedge, Hypergraph, HypergraphError, LabeledHypergraph, Vertex,
    DEFAULT_MAX_EDGE_SIZE,
};
pub use persistence::{
    compute_persistence, compute_persistence_with, Barcode, Persistence, PersistenceError, PersistenceOptions,
    PersistencePair,
};
pub use real::Real;

pub type FeatureVector = features::FeatureVector<f64>;
pub type FeatureVectorF32 = features::FeatureVector<f32>;
pub type FeatureTable = features::FeatureTable<f64>;
pub type FeatureTableF32 = features::FeatureTable<f32>;
pub type RandomForest = classify::RandomForest<f64>;
pub type RandomForestF32 = classify::RandomForest<f32>;
