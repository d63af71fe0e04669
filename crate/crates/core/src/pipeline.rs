//! End-to-end runs: ingest a corpus, mine seed sets, cluster, evaluate and
//! write the result files.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::baselines::{cosine_assign, kmeans_run, CosineOptions, HardClustering};
use crate::corpus::{
    build_tdm, build_vocabulary, tfidf_vectors, DocumentVector, TermDocumentMatrix,
};
use crate::error::{Error, Result, SeedHint};
use crate::fcm::{compute_seeds, fcm_run, harden, ClusterSeeds, FcmParams, MembershipMatrix};
use crate::fpgrowth::{
    fp_growth, max_feasible_support, maximal_filter, support_spectrum, transpose_to_transactions,
    FpTree, TransactionDb,
};
use crate::metrics::{evaluate, EvaluationReport};
use crate::text::{preprocess_document, PreprocessConfig, ProcessedDocument, RawDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One `{"id", "text", "label"?}` object per line.
    Jsonl,
    /// `*.txt` files, id = file stem, labels from an optional `labels.csv`.
    Directory,
    /// One `{"id", "keywords", "label"?}` object per line; no preprocessing.
    KeywordsJsonl,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(CorpusFormat::Jsonl),
            "directory" | "dir" => Ok(CorpusFormat::Directory),
            "keywords-jsonl" => Ok(CorpusFormat::KeywordsJsonl),
            other => Err(Error::Config(format!(
                "unknown corpus format `{other}` (expected jsonl, directory or keywords-jsonl)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordDocument {
    pub id: String,
    pub keywords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Corpus {
    Raw(Vec<RawDocument>),
    Keywords(Vec<KeywordDocument>),
}

impl Corpus {
    pub fn len(&self) -> usize {
        match self {
            Corpus::Raw(d) => d.len(),
            Corpus::Keywords(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ids(&self) -> Vec<String> {
        match self {
            Corpus::Raw(d) => d.iter().map(|x| x.id.clone()).collect(),
            Corpus::Keywords(d) => d.iter().map(|x| x.id.clone()).collect(),
        }
    }

    pub fn labels(&self) -> Vec<Option<String>> {
        match self {
            Corpus::Raw(d) => d.iter().map(|x| x.label.clone()).collect(),
            Corpus::Keywords(d) => d.iter().map(|x| x.label.clone()).collect(),
        }
    }

    /// Keyword lists for every document. Keyword corpora pass through
    /// untouched; raw text goes through `cfg`.
    pub fn process(&self, cfg: &PreprocessConfig) -> Result<Vec<ProcessedDocument>> {
        match self {
            Corpus::Raw(d) => d.iter().map(|x| preprocess_document(x, cfg)).collect(),
            Corpus::Keywords(d) => d
                .iter()
                .map(|x| ProcessedDocument::new(x.id.clone(), x.keywords.clone()))
                .collect(),
        }
    }
}

fn check_unique<'a>(ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId { id: id.to_string() });
        }
    }
    Ok(())
}

fn parse_jsonl<T: serde::de::DeserializeOwned>(source: &str, origin: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let doc = serde_json::from_str(line)
            .map_err(|e| Error::parse(format!("{origin}:{}", lineno + 1), e.to_string()))?;
        out.push(doc);
    }
    Ok(out)
}

pub fn parse_documents_jsonl(source: &str, origin: &str) -> Result<Vec<RawDocument>> {
    let docs: Vec<RawDocument> = parse_jsonl(source, origin)?;
    check_unique(docs.iter().map(|d| d.id.as_str()))?;
    Ok(docs)
}

pub fn parse_keywords_jsonl(source: &str, origin: &str) -> Result<Vec<KeywordDocument>> {
    let docs: Vec<KeywordDocument> = parse_jsonl(source, origin)?;
    check_unique(docs.iter().map(|d| d.id.as_str()))?;
    for d in &docs {
        ProcessedDocument::new(d.id.clone(), d.keywords.clone())?;
    }
    Ok(docs)
}

fn read_labels_csv(path: &Path) -> Result<BTreeMap<String, String>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let mut labels = BTreeMap::new();
    for (row, record) in reader.deserialize::<(String, String)>().enumerate() {
        let (id, label) = record.map_err(|e| csv_error(path, e))?;
        if labels.insert(id.clone(), label).is_some() {
            return Err(Error::parse(
                format!("{}:{}", path.display(), row + 2),
                format!("label for `{id}` given twice"),
            ));
        }
    }
    Ok(labels)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let location = match e.position() {
        Some(p) => format!("{}:{}", path.display(), p.line()),
        None => path.display().to_string(),
    };
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        kind => Error::parse(location, format!("{kind:?}")),
    }
}

fn read_directory(dir: &Path) -> Result<Vec<RawDocument>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|x| x == "txt") {
            files.push(path);
        }
    }
    files.sort();
    let labels_path = dir.join("labels.csv");
    let labels = if labels_path.is_file() {
        read_labels_csv(&labels_path)?
    } else {
        BTreeMap::new()
    };
    let mut docs = Vec::with_capacity(files.len());
    for path in files {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::parse(path.display().to_string(), "file name is not UTF-8"))?
            .to_string();
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let label = labels.get(&id).cloned();
        docs.push(RawDocument { id, text, label });
    }
    Ok(docs)
}

pub fn ingest_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let corpus = match format {
        CorpusFormat::Directory => Corpus::Raw(read_directory(path)?),
        CorpusFormat::Jsonl | CorpusFormat::KeywordsJsonl => {
            let source = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let origin = path.display().to_string();
            if format == CorpusFormat::Jsonl {
                Corpus::Raw(parse_documents_jsonl(&source, &origin)?)
            } else {
                Corpus::Keywords(parse_keywords_jsonl(&source, &origin)?)
            }
        }
    };
    if corpus.is_empty() {
        return Err(Error::CorpusEmpty {
            path: path.to_path_buf(),
        });
    }
    Ok(corpus)
}

/// Minimum support as an absolute term count or as a fraction of the
/// vocabulary size, rounded up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Count(u64),
    Fraction(f64),
}

impl MinSupport {
    pub fn resolve(self, num_transactions: usize) -> u64 {
        match self {
            MinSupport::Count(c) => c,
            MinSupport::Fraction(f) => ((f * num_transactions as f64).ceil() as u64).max(1),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            MinSupport::Count(0) => Err(Error::Config("min_sup must be at least 1".into())),
            MinSupport::Fraction(f) if !(f > 0.0 && f <= 1.0) => Err(Error::Config(format!(
                "fractional min_sup must lie in (0, 1], got {f}"
            ))),
            _ => Ok(()),
        }
    }
}

impl FromStr for MinSupport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("min_sup `{s}` is neither a count nor a fraction"));
        let sup = if s.contains('.') {
            MinSupport::Fraction(s.parse().map_err(|_| bad())?)
        } else {
            MinSupport::Count(s.parse().map_err(|_| bad())?)
        };
        sup.validate()?;
        Ok(sup)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fcm,
    KMeans,
    Cosine,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Fcm, Algorithm::KMeans, Algorithm::Cosine];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Fcm => "fcm",
            Algorithm::KMeans => "kmeans",
            Algorithm::Cosine => "cosine",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown algorithm `{s}` (expected fcm, kmeans or cosine)"
                ))
            })
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub min_sup: MinSupport,
    /// Smallest document set that may seed a cluster.
    pub min_set_size: usize,
    pub fcm: FcmParams,
    pub algorithm: Algorithm,
    pub cosine: CosineOptions,
    pub preprocess: PreprocessConfig,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            min_sup: MinSupport::Count(3),
            min_set_size: 2,
            fcm: FcmParams::default(),
            algorithm: Algorithm::Fcm,
            cosine: CosineOptions::default(),
            preprocess: PreprocessConfig::new(),
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        self.min_sup.validate()?;
        if self.min_set_size == 0 {
            return Err(Error::Config("min_set_size must be at least 1".into()));
        }
        self.fcm.validate()
    }
}

/// Everything computed before clustering.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub documents: Vec<ProcessedDocument>,
    pub tdm: TermDocumentMatrix,
    pub transactions: TransactionDb,
    pub vectors: Vec<DocumentVector>,
}

pub fn prepare(corpus: &Corpus, cfg: &PipelineConfig) -> Result<Prepared> {
    let documents = corpus.process(&cfg.preprocess)?;
    let vocabulary = build_vocabulary(&documents);
    let tdm = build_tdm(&documents, &vocabulary)?;
    let transactions = transpose_to_transactions(&tdm);
    let vectors = tfidf_vectors(&tdm);
    Ok(Prepared {
        documents,
        tdm,
        transactions,
        vectors,
    })
}

/// For a run that found no seeds: supports from the feasible maximum down,
/// paired with how many seed sets each would give.
pub fn seed_diagnostic(prepared: &Prepared, min_set_size: usize) -> Vec<(u64, usize)> {
    let top = max_feasible_support(&prepared.transactions, min_set_size);
    let low = top.saturating_sub(4).max(1);
    if top == 0 {
        return Vec::new();
    }
    support_spectrum(&prepared.transactions, min_set_size, (low..=top).rev())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedSet {
    pub items: Vec<String>,
    pub support: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSettings {
    pub algorithm: Algorithm,
    pub min_sup: u64,
    pub min_set_size: usize,
    pub m: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub recompute_centers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub settings: RunSettings,
    pub documents: Vec<String>,
    pub terms: Vec<String>,
    pub seeds: Vec<SeedSet>,
    pub seed_centroids: Vec<DocumentVector>,
    pub clustering: HardClustering,
    /// Document ids of each cluster.
    pub clusters: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub memberships: Option<MembershipMatrix>,
    pub centroids: Vec<DocumentVector>,
    pub iterations: usize,
    pub converged: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub objective_trace: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sse_trace: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub empty_clusters: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unclustered: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvaluationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation_note: Option<String>,
    /// Wall-clock time of the run. Left out of every written file so that
    /// reruns are byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn mine_seeds(prepared: &Prepared, min_sup: u64, min_set_size: usize) -> Result<ClusterSeeds> {
    let all = fp_growth(&FpTree::build(&prepared.transactions, min_sup));
    let maximal = maximal_filter(&all, min_set_size);
    if maximal.is_empty() {
        return Err(Error::NoSeeds(Some(SeedHint {
            min_sup,
            min_set_size,
            max_feasible: max_feasible_support(&prepared.transactions, min_set_size),
        })));
    }
    compute_seeds(&maximal, &prepared.vectors)
}

pub fn run_pipeline(corpus: &Corpus, cfg: &PipelineConfig) -> Result<RunReport> {
    let start = Instant::now();
    cfg.validate()?;
    let prepared = prepare(corpus, cfg)?;
    let min_sup = cfg.min_sup.resolve(prepared.transactions.len());
    let seeds = mine_seeds(&prepared, min_sup, cfg.min_set_size)?;
    let ids = prepared.tdm.doc_ids().to_vec();
    let name = |d: usize| ids[d].clone();
    let vectors = &prepared.vectors;

    let mut memberships = None;
    let mut objective_trace = Vec::new();
    let mut sse_trace = Vec::new();
    let mut empty_clusters = Vec::new();
    let mut unclustered = None;
    let (clustering, centroids, iterations, converged) = match cfg.algorithm {
        Algorithm::Fcm => {
            let r = fcm_run(vectors, &seeds, cfg.fcm)?;
            let hard = harden(&r.memberships);
            memberships = Some(r.memberships);
            objective_trace = r.objective_trace;
            (hard, r.centroids, r.iterations, r.converged)
        }
        Algorithm::KMeans => {
            let r = kmeans_run(vectors, &seeds, cfg.fcm.max_iter)?;
            sse_trace = r.sse_trace;
            empty_clusters = r.empty_clusters;
            (r.clustering, r.centroids, r.iterations, r.converged)
        }
        Algorithm::Cosine => {
            let r = cosine_assign(vectors, &seeds, cfg.cosine)?;
            unclustered = Some(r.unclustered.iter().map(|&d| name(d)).collect());
            let centroids = r
                .clustering
                .clusters()
                .iter()
                .zip(&seeds.centroids)
                .map(|(members, seed)| {
                    if members.is_empty() {
                        seed.clone()
                    } else {
                        DocumentVector::mean(members.iter().map(|&d| &vectors[d]))
                    }
                })
                .collect();
            (r.clustering, centroids, 1, true)
        }
    };

    let labels = corpus.labels();
    let (evaluation, evaluation_note) = if labels.iter().all(Option::is_none) {
        (None, Some("corpus has no class labels".to_string()))
    } else {
        (Some(evaluate(&clustering, &ids, &labels)?), None)
    };

    Ok(RunReport {
        settings: RunSettings {
            algorithm: cfg.algorithm,
            min_sup,
            min_set_size: cfg.min_set_size,
            m: cfg.fcm.m,
            epsilon: cfg.fcm.epsilon,
            max_iter: cfg.fcm.max_iter,
            recompute_centers: cfg.cosine.recompute_centers,
        },
        terms: prepared
            .tdm
            .vocabulary()
            .terms()
            .map(str::to_owned)
            .collect(),
        seeds: seeds
            .sources
            .iter()
            .map(|s| SeedSet {
                items: s.items.iter().map(|&d| name(d)).collect(),
                support: s.support,
            })
            .collect(),
        seed_centroids: seeds.centroids,
        clusters: clustering
            .clusters()
            .iter()
            .map(|c| c.iter().map(|&d| name(d)).collect())
            .collect(),
        clustering,
        memberships,
        centroids,
        iterations,
        converged,
        objective_trace,
        sse_trace,
        empty_clusters,
        unclustered,
        evaluation,
        evaluation_note,
        documents: ids,
        elapsed: start.elapsed(),
    })
}

fn fixed6(x: f64) -> String {
    format!("{x:.6}")
}

/// Round every float in a JSON tree to six decimals.
fn round_json(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r = (x * 1e6).round() / 1e6;
            if let Some(num) = serde_json::Number::from_f64(if r == 0.0 { 0.0 } else { r }) {
                *n = num;
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(round_json),
        serde_json::Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(bytes).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    write_file(path, text.as_bytes())
}

fn write_json<T: Serialize>(path: &Path, value: &T, rounded: bool) -> Result<()> {
    let mut tree = serde_json::to_value(value).expect("report types serialize");
    if rounded {
        round_json(&mut tree);
    }
    let mut text = serde_json::to_string_pretty(&tree).expect("value serializes");
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn write_csv(path: &Path, rows: Vec<Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    write_file(path, &bytes)
}

/// Write the run's files into `dir`, creating it if needed. Returns the
/// paths written, in a fixed order.
pub fn emit_report(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut out = |name: &str| {
        let p = dir.join(name);
        written.push(p.clone());
        p
    };

    write_json(&out("report.json"), report, false)?;

    let mut rows = vec![vec!["id".into(), "cluster".into(), "membership".into()]];
    for (d, id) in report.documents.iter().enumerate() {
        let c = report.clustering.assignment()[d];
        let u = report.memberships.as_ref().map_or(1.0, |u| u.get(d, c));
        rows.push(vec![id.clone(), c.to_string(), fixed6(u)]);
    }
    write_csv(&out("clusters.csv"), rows)?;

    if let Some(u) = &report.memberships {
        let mut header = vec!["id".to_string()];
        header.extend((0..u.n_clusters()).map(|c| format!("cluster_{c}")));
        let mut rows = vec![header];
        for (id, row) in report.documents.iter().zip(u.rows()) {
            let mut r = vec![id.clone()];
            r.extend(row.iter().copied().map(fixed6));
            rows.push(r);
        }
        write_csv(&out("memberships.csv"), rows)?;
    }

    let mut header = vec!["cluster".to_string()];
    header.extend(report.terms.iter().cloned());
    let mut rows = vec![header];
    for (c, v) in report.centroids.iter().enumerate() {
        let mut r = vec![c.to_string()];
        r.extend(v.as_slice().iter().copied().map(fixed6));
        rows.push(r);
    }
    write_csv(&out("centroids.csv"), rows)?;

    write_json(&out("seeds.json"), &report.seeds, true)?;
    if let Some(eval) = &report.evaluation {
        write_json(&out("metrics.json"), eval, true)?;
    }
    Ok(written)
}
