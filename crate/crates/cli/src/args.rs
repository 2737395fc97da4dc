use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperph::{ClassifyError, DimSet, FiltrationKind, ForestParams, YMaxMode, DEFAULT_MAX_EDGE_SIZE};

#[derive(Debug, Parser)]
#[command(name = "hyperph", version, about = "Persistent homology features and classification for hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write barcodes (graph_id,dim,birth,death) for every hypergraph.
    Persist(PersistArgs),
    /// Write a feature table (five features per homology dimension).
    Featurize(FeaturizeArgs),
    /// Random forest cross-validation on features or a raw corpus.
    Classify(ClassifyArgs),
    /// Write one persistence diagram SVG per hypergraph and dimension.
    Diagram(DiagramArgs),
    /// Write the ego hypergraphs of a corpus as jsonl.
    EgoExtract(EgoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One hypergraph per line: {"id","label","edges"[,"arrivals","num_vertices"]}.
    Jsonl,
    /// File stem of <stem>-{nverts,simplices,times,labels}.txt; one ego per labelled vertex.
    Contact,
    /// Feature CSV written by `featurize` (classify only).
    Features,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationArg {
    Scc,
    Resbs,
    Relbs,
    All,
}

impl FiltrationArg {
    pub fn kinds(self) -> Vec<FiltrationKind> {
        match self {
            FiltrationArg::Scc => vec![FiltrationKind::Scc],
            FiltrationArg::Resbs => vec![FiltrationKind::ResBs],
            FiltrationArg::Relbs => vec![FiltrationKind::RelBs],
            FiltrationArg::All => FiltrationKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimsArg {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[value(name = "01")]
    Both,
    All,
}

impl DimsArg {
    pub fn sets(self) -> Vec<DimSet> {
        match self {
            DimsArg::Zero => vec![DimSet::Zero],
            DimsArg::One => vec![DimSet::One],
            DimsArg::Both => vec![DimSet::Both],
            DimsArg::All => DimSet::ALL.to_vec(),
        }
    }

    /// Smallest set covering every requested dimension.
    pub fn cover(self) -> DimSet {
        match self {
            DimsArg::Zero => DimSet::Zero,
            DimsArg::One => DimSet::One,
            _ => DimSet::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum YMaxArg {
    /// Largest finite endpoint among the bars of each dimension.
    Barcode,
    /// Largest filtration value of the complex.
    Global,
}

impl From<YMaxArg> for YMaxMode {
    fn from(y: YMaxArg) -> Self {
        match y {
            YMaxArg::Barcode => YMaxMode::PerBarcode,
            YMaxArg::Global => YMaxMode::Global,
        }
    }
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Input corpus (a file for jsonl, a file stem for contact).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Jsonl)]
    pub format: InputFormat,
    /// Hyperedges with more vertices than this are dropped.
    #[arg(long, default_value_t = DEFAULT_MAX_EDGE_SIZE)]
    pub max_edge_size: usize,
    /// Keep bars with birth == death.
    #[arg(long)]
    pub include_zero_bars: bool,
    /// Worker threads [default: available parallelism].
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PersistArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = FiltrationArg::Relbs)]
    pub filtration: FiltrationArg,
    /// Output CSV. With `--filtration all`, <stem>.<kind>.csv per filtration.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = FiltrationArg::Relbs)]
    pub filtration: FiltrationArg,
    /// Homology dimensions (`all` writes both blocks).
    #[arg(long, value_enum, default_value_t = DimsArg::Both)]
    pub dims: DimsArg,
    #[arg(long, value_enum, default_value_t = YMaxArg::Barcode)]
    pub ymax: YMaxArg,
    /// Output CSV. With `--filtration all`, <stem>.<kind>.csv per filtration.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ForestArgs {
    #[arg(long, default_value_t = 100)]
    pub trees: usize,
    /// Maximum tree depth [default: unlimited].
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub min_samples_split: usize,
    /// Features tried per split [default: ceil(sqrt(width))].
    #[arg(long)]
    pub features_per_split: Option<usize>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub folds: usize,
}

impl ForestArgs {
    pub fn params(&self) -> Result<ForestParams, ClassifyError> {
        let p = ForestParams {
            n_trees: self.trees,
            max_depth: self.max_depth,
            min_samples_split: self.min_samples_split,
            features_per_split: self.features_per_split,
            seed: self.seed,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Ignored for feature input.
    #[arg(long, value_enum, default_value_t = FiltrationArg::Relbs)]
    pub filtration: FiltrationArg,
    #[arg(long, value_enum, default_value_t = DimsArg::Both)]
    pub dims: DimsArg,
    #[arg(long, value_enum, default_value_t = YMaxArg::Barcode)]
    pub ymax: YMaxArg,
    #[command(flatten)]
    pub forest: ForestArgs,
    /// JSON report; the text report goes next to it as <stem>.txt and to stdout.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long, value_enum, default_value_t = FiltrationArg::Relbs)]
    pub filtration: FiltrationArg,
    #[arg(long, value_enum, default_value_t = DimsArg::Both)]
    pub dims: DimsArg,
    /// Output directory; files are <id>.<kind>.dim<d>.svg.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct EgoArgs {
    /// Input corpus (a file for jsonl, a file stem for contact).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Contact)]
    pub format: InputFormat,
    /// Output jsonl.
    #[arg(long)]
    pub output: PathBuf,
}
