use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context};
use hyperph::diagram::render_svg;
use hyperph::features::{FeatureTable, Featurized};
use hyperph::persistence::BARCODE_CSV_HEADER;
use hyperph::{
    compute_persistence_with, cross_validate, featurize_corpus, Barcode, Corpus, CorpusFormat, CvReport, DimSet,
    FeatureError, FeaturizeConfig, FiltrationKind, HypergraphError, LabeledHypergraph, PersistenceOptions,
};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    ClassifyArgs, CorpusArgs, DiagramArgs, EgoArgs, FeaturizeArgs, FiltrationArg, InputFormat, PersistArgs,
};
use crate::output::{file_safe, with_kind, write_atomic};
use crate::Failure;

fn hypergraph_failure(e: HypergraphError) -> Failure {
    match e {
        HypergraphError::Validation(_) => Failure::invalid(e),
        HypergraphError::Parse { .. } | HypergraphError::Io { .. } => Failure::io(e),
    }
}

fn feature_failure(e: FeatureError) -> Failure {
    match e {
        FeatureError::Csv(_) => Failure::io(e),
        FeatureError::Persistence { .. } => Failure::invalid(e),
    }
}

fn init_pool(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = jobs {
        if n == 0 {
            return Err(Failure::invalid(anyhow!("--jobs must be at least 1")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(Failure::invalid)?;
    }
    Ok(())
}

fn corpus_format(f: InputFormat) -> Result<CorpusFormat, Failure> {
    match f {
        InputFormat::Jsonl => Ok(CorpusFormat::Jsonl),
        InputFormat::Contact => Ok(CorpusFormat::Contact),
        InputFormat::Features => Err(Failure::invalid(anyhow!("--format features is only accepted by classify"))),
    }
}

fn load_corpus(a: &CorpusArgs) -> Result<Corpus, Failure> {
    init_pool(a.jobs)?;
    let corpus = Corpus::load(&a.input, corpus_format(a.format)?).map_err(hypergraph_failure)?;
    log::info!("loaded {} hypergraphs from {}", corpus.len(), a.input.display());
    Ok(corpus)
}

fn persistence_options(a: &CorpusArgs) -> PersistenceOptions {
    PersistenceOptions { include_zero_bars: a.include_zero_bars }
}

/// Barcode per hypergraph in corpus order, plus the number of hyperedges
/// removed by the size cap.
fn barcodes(corpus: &Corpus, kind: FiltrationKind, a: &CorpusArgs) -> Result<(Vec<Barcode>, usize), Failure> {
    let opts = persistence_options(a);
    let results: Vec<(Barcode, usize)> = corpus
        .items()
        .par_iter()
        .map(|item| {
            let h = item.graph.filter_by_size(a.max_edge_size);
            let removed = item.graph.edges().len() - h.edges().len();
            let p = compute_persistence_with(&kind.build(&h), opts)
                .with_context(|| format!("hypergraph {}", item.graph.id()))
                .map_err(Failure::invalid)?;
            Ok((p.barcode, removed))
        })
        .collect::<Result<_, Failure>>()?;
    let removed = results.iter().map(|r| r.1).sum();
    Ok((results.into_iter().map(|r| r.0).collect(), removed))
}

fn report_removed(removed: usize, max_edge_size: usize) {
    if removed > 0 {
        log::info!("size cap {max_edge_size} removed {removed} hyperedges");
    }
}

/// Output path per filtration: the path itself for one, `<stem>.<kind>.<ext>` for several.
fn outputs(path: &Path, kinds: &[FiltrationKind], ext: &str) -> Vec<(FiltrationKind, std::path::PathBuf)> {
    kinds
        .iter()
        .map(|&k| {
            let p = if kinds.len() == 1 { path.to_path_buf() } else { with_kind(path, k.token(), ext) };
            (k, p)
        })
        .collect()
}

pub fn persist(a: &PersistArgs) -> Result<(), Failure> {
    let corpus = load_corpus(&a.corpus)?;
    for (kind, path) in outputs(&a.output, &a.filtration.kinds(), "csv") {
        let (bars, removed) = barcodes(&corpus, kind, &a.corpus)?;
        report_removed(removed, a.corpus.max_edge_size);
        let mut csv = format!("{BARCODE_CSV_HEADER}\n");
        for (item, b) in corpus.items().iter().zip(&bars) {
            csv.push_str(&b.csv_rows(item.graph.id()));
        }
        write_atomic(&path, csv.as_bytes())?;
        log::info!("{kind}: wrote {}", path.display());
    }
    Ok(())
}

fn featurize_kind(
    corpus: &Corpus,
    kind: FiltrationKind,
    dims: DimSet,
    a: &CorpusArgs,
    ymax: hyperph::YMaxMode,
) -> Result<FeatureTable<f64>, Failure> {
    let cfg = FeaturizeConfig { max_edge_size: a.max_edge_size, persistence: persistence_options(a), ymax };
    let Featurized { table, removed_edges } =
        featurize_corpus::<f64>(corpus, kind, dims, &cfg).map_err(feature_failure)?;
    report_removed(removed_edges, a.max_edge_size);
    Ok(table)
}

pub fn featurize(a: &FeaturizeArgs) -> Result<(), Failure> {
    let corpus = load_corpus(&a.corpus)?;
    for (kind, path) in outputs(&a.output, &a.filtration.kinds(), "csv") {
        let table = featurize_kind(&corpus, kind, a.dims.cover(), &a.corpus, a.ymax.into())?;
        write_atomic(&path, table.to_csv().as_bytes())?;
        log::info!("{kind}: wrote {} rows to {}", table.rows.len(), path.display());
    }
    Ok(())
}

struct Cell {
    filtration: Option<FiltrationKind>,
    dims: DimSet,
    report: CvReport,
}

fn run_cv(table: &FeatureTable<f64>, dims: DimSet, a: &ClassifyArgs) -> Result<CvReport, Failure> {
    let selected = table.select(dims).ok_or_else(|| {
        Failure::invalid(anyhow!("feature table has dims {} and cannot provide {}", table.dims.token(), dims.token()))
    })?;
    let params = a.forest.params().map_err(Failure::invalid)?;
    cross_validate(&selected.matrix(), &selected.labels(), &params, a.forest.folds).map_err(Failure::invalid)
}

pub fn classify(a: &ClassifyArgs) -> Result<(), Failure> {
    a.forest.params().map_err(Failure::invalid)?;
    let mut cells = Vec::new();
    if a.corpus.format == InputFormat::Features {
        init_pool(a.corpus.jobs)?;
        let text = std::fs::read_to_string(&a.corpus.input)
            .with_context(|| a.corpus.input.display().to_string())
            .map_err(Failure::io)?;
        let table = FeatureTable::<f64>::from_csv(&text).map_err(feature_failure)?;
        if a.filtration != FiltrationArg::Relbs {
            log::warn!("--filtration is ignored for feature input");
        }
        for dims in a.dims.sets() {
            let report = run_cv(&table, dims, a)?;
            cells.push(Cell { filtration: None, dims, report });
        }
    } else {
        let corpus = load_corpus(&a.corpus)?;
        for kind in a.filtration.kinds() {
            let table = featurize_kind(&corpus, kind, a.dims.cover(), &a.corpus, a.ymax.into())?;
            for dims in a.dims.sets() {
                log::info!("cross-validating {} / {}", kind.name(), dims.name());
                let report = run_cv(&table, dims, a)?;
                cells.push(Cell { filtration: Some(kind), dims, report });
            }
        }
    }

    let params = a.forest.params().map_err(Failure::invalid)?;
    let doc = json!({
        "params": params,
        "folds_requested": a.forest.folds,
        "reports": cells.iter().map(|c| json!({
            "filtration": c.filtration.map(|k| k.token()),
            "dims": c.dims.token(),
            "report": c.report,
        })).collect::<Vec<_>>(),
    });
    let mut body = serde_json::to_string_pretty(&doc).map_err(Failure::invalid)?;
    body.push('\n');
    write_atomic(&a.output, body.as_bytes())?;

    let text = text_report(&cells);
    write_atomic(&a.output.with_extension("txt"), text.as_bytes())?;
    print!("{text}");
    Ok(())
}

type Metric = fn(&CvReport) -> String;

fn row_name(f: Option<FiltrationKind>) -> &'static str {
    f.map(|k| k.name()).unwrap_or("features")
}

fn text_report(cells: &[Cell]) -> String {
    let mut out = String::new();
    for c in cells {
        let _ = writeln!(out, "== {} / {} ==", row_name(c.filtration), c.dims.name());
        out.push_str(&c.report.to_text());
        out.push('\n');
    }
    if cells.len() > 1 {
        let rows: Vec<Option<FiltrationKind>> = {
            let mut seen = Vec::new();
            for c in cells {
                if !seen.contains(&c.filtration) {
                    seen.push(c.filtration);
                }
            }
            seen
        };
        let cols: Vec<DimSet> = cells.iter().map(|c| c.dims).collect::<BTreeSet<_>>().into_iter().collect();
        let metrics: [(&str, Metric); 3] = [
            ("accuracy", |r| format!("{:.2}", r.accuracy * 100.0)),
            ("precision", |r| r.macro_precision.percent()),
            ("recall", |r| r.macro_recall.percent()),
        ];
        for (metric, get) in metrics {
            let _ = write!(out, "{metric:<10}");
            for d in &cols {
                let _ = write!(out, "  {:>9}", d.name());
            }
            out.push('\n');
            for f in &rows {
                let _ = write!(out, "{:<10}", row_name(*f));
                for d in &cols {
                    let v = cells
                        .iter()
                        .find(|c| c.filtration == *f && c.dims == *d)
                        .map(|c| get(&c.report))
                        .unwrap_or_else(|| "-".to_string());
                    let _ = write!(out, "  {v:>9}");
                }
                out.push('\n');
            }
            out.push('\n');
        }
    }
    out
}

pub fn diagram(a: &DiagramArgs) -> Result<(), Failure> {
    let corpus = load_corpus(&a.corpus)?;
    std::fs::create_dir_all(&a.output).with_context(|| a.output.display().to_string()).map_err(Failure::io)?;
    let dims = a.dims.cover();
    let mut written = 0;
    for kind in a.filtration.kinds() {
        let (bars, removed) = barcodes(&corpus, kind, &a.corpus)?;
        report_removed(removed, a.corpus.max_edge_size);
        for (item, b) in corpus.items().iter().zip(&bars) {
            let id = item.graph.id();
            for &d in dims.dims() {
                let title = format!("{id} {} H{d}", kind.name());
                let path = a.output.join(format!("{}.{}.dim{d}.svg", file_safe(id), kind.token()));
                write_atomic(&path, render_svg(b, d, &title).as_bytes())?;
                written += 1;
            }
        }
    }
    log::info!("wrote {written} diagrams to {}", a.output.display());
    Ok(())
}

pub fn ego_extract(a: &EgoArgs) -> Result<(), Failure> {
    let format = corpus_format(a.format)?;
    let corpus = Corpus::load(&a.input, format).map_err(hypergraph_failure)?;
    let egos = match format {
        // contact input is already one ego per labelled vertex
        CorpusFormat::Contact => corpus,
        CorpusFormat::Jsonl => {
            let mut items = Vec::new();
            for item in corpus.items() {
                let used: BTreeSet<u32> =
                    item.graph.edges().iter().flat_map(|e| e.vertices().iter().copied()).collect();
                for v in used {
                    items.push(LabeledHypergraph {
                        graph: item.graph.ego(v).map_err(hypergraph_failure)?,
                        label: item.label.clone(),
                    });
                }
            }
            Corpus::new(items).map_err(hypergraph_failure)?
        }
    };
    write_atomic(&a.output, egos.to_jsonl().as_bytes())?;
    log::info!("wrote {} ego hypergraphs to {}", egos.len(), a.output.display());
    Ok(())
}
