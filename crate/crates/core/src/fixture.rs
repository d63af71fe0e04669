//! The bundled ten-document sample corpus: six documents on social
//! networking and four on computer networking, with the preprocessing
//! configuration that reduces the raw text to keyword lists.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::fcm::FcmParams;
use crate::metrics::render_rows;
use crate::pipeline::{
    emit_report, parse_documents_jsonl, parse_keywords_jsonl, run_pipeline, Algorithm, Corpus,
    MinSupport, PipelineConfig, RunReport,
};
use crate::text::{parse_canonical_forms, parse_word_list, PreprocessConfig};

pub const KEYWORDS_JSONL: &str = include_str!("../fixtures/keywords.jsonl");
pub const DOCUMENTS_JSONL: &str = include_str!("../fixtures/documents.jsonl");
pub const STOPWORDS: &str = include_str!("../fixtures/stopwords.txt");
pub const ALLOWLIST: &str = include_str!("../fixtures/allowlist.txt");
pub const CANONICAL_FORMS: &str = include_str!("../fixtures/canonical.txt");

/// Support threshold used with the sample corpus.
pub const MIN_SUP: u64 = 3;

/// The corpus as curated keyword lists.
pub fn keyword_corpus() -> Corpus {
    Corpus::Keywords(parse_keywords_jsonl(KEYWORDS_JSONL, "keywords.jsonl").expect("bundled"))
}

/// The corpus as raw sentences.
pub fn raw_corpus() -> Corpus {
    Corpus::Raw(parse_documents_jsonl(DOCUMENTS_JSONL, "documents.jsonl").expect("bundled"))
}

pub fn preprocess_config() -> PreprocessConfig {
    PreprocessConfig::new()
        .with_stopwords(parse_word_list(STOPWORDS, "stopwords.txt").expect("bundled"))
        .with_allowlist(parse_word_list(ALLOWLIST, "allowlist.txt").expect("bundled"))
        .with_canonical_forms(
            parse_canonical_forms(CANONICAL_FORMS, "canonical.txt").expect("bundled"),
        )
}

pub fn config(algorithm: Algorithm, m: f64) -> PipelineConfig {
    PipelineConfig {
        min_sup: MinSupport::Count(MIN_SUP),
        algorithm,
        fcm: FcmParams {
            m,
            ..FcmParams::default()
        },
        preprocess: preprocess_config(),
        ..PipelineConfig::default()
    }
}

fn describe(report: &RunReport) -> String {
    report
        .clusters
        .iter()
        .map(|c| format!("{{{}}}", c.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Run FCM (m = 2 and m = 1.5), K-means and cosine assignment on the keyword
/// corpus, write each run under `out/<name>/`, and return the comparison
/// table, which is also written to `out/comparison.txt`.
pub fn reproduce(out: &Path) -> Result<String> {
    let corpus = keyword_corpus();
    let runs = [
        ("fcm-m2", "FP-growth + FCM (m=2)", Algorithm::Fcm, 2.0),
        ("fcm-m1.5", "FP-growth + FCM (m=1.5)", Algorithm::Fcm, 1.5),
        ("kmeans", "FP-growth + K-means", Algorithm::KMeans, 2.0),
        ("cosine", "FP-growth + cosine", Algorithm::Cosine, 2.0),
    ];
    let mut rows = vec![vec![
        "Method".to_string(),
        "Entropy".into(),
        "Purity".into(),
        "Entropy(2dp)".into(),
        "Purity(1dp)".into(),
        "Clusters".into(),
    ]];
    for (dir, title, algorithm, m) in runs {
        let report = run_pipeline(&corpus, &config(algorithm, m))?;
        emit_report(&report, &out.join(dir))?;
        let eval = report
            .evaluation
            .as_ref()
            .expect("sample corpus is labelled");
        rows.push(vec![
            title.to_string(),
            format!("{:.6}", eval.entropy),
            format!("{:.6}", eval.purity),
            format!("{:.2}", eval.entropy),
            format!("{:.1}", eval.purity),
            describe(&report),
        ]);
    }
    let mut text = String::new();
    let _ = writeln!(text, "min_sup = {MIN_SUP}");
    text.push_str(&render_rows(&rows));
    crate::pipeline::write_text(&out.join("comparison.txt"), &text)?;
    Ok(text)
}
