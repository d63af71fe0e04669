//! External evaluation of a hard clustering against gold class labels.

use std::fmt::Write as _;

use indexmap::IndexSet;
use serde::Serialize;

use crate::baselines::HardClustering;
use crate::error::{Error, Result};

/// Cluster-by-class counts. Classes are kept in order of first appearance
/// among the labelled documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfusionTable {
    pub classes: Vec<String>,
    /// `counts[i][j]`: documents of cluster `i` carrying class `j`.
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionTable {
    pub fn cluster_sizes(&self) -> Vec<u64> {
        self.counts.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// `doc_ids` and `labels` are positional, aligned with the clustering.
pub fn confusion(
    clustering: &HardClustering,
    doc_ids: &[String],
    labels: &[Option<String>],
) -> Result<ConfusionTable> {
    if labels.len() != clustering.n_docs() || doc_ids.len() != clustering.n_docs() {
        return Err(Error::Config(format!(
            "{} labels and {} ids for {} clustered documents",
            labels.len(),
            doc_ids.len(),
            clustering.n_docs()
        )));
    }
    let mut classes: IndexSet<&str> = IndexSet::new();
    let mut cells = Vec::with_capacity(labels.len());
    for (doc, label) in labels.iter().enumerate() {
        let label = label.as_deref().ok_or_else(|| Error::MissingLabel {
            id: doc_ids[doc].clone(),
        })?;
        let (j, _) = classes.insert_full(label);
        cells.push((clustering.assignment()[doc], j));
    }
    let mut counts = vec![vec![0u64; classes.len()]; clustering.n_clusters()];
    for (i, j) in cells {
        counts[i][j] += 1;
    }
    Ok(ConfusionTable {
        classes: classes.into_iter().map(str::to_owned).collect(),
        counts,
    })
}

/// Base-2 Shannon entropy of one cluster's class counts, with 0·log 0 = 0.
pub fn cluster_entropy(row: &[u64]) -> f64 {
    let total: u64 = row.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h: f64 = row
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // a pure cluster gives -1*log2(1) = -0.0
    h.max(0.0)
}

pub fn cluster_purity(row: &[u64]) -> f64 {
    let total: u64 = row.iter().sum();
    if total == 0 {
        return 0.0;
    }
    *row.iter().max().unwrap() as f64 / total as f64
}

fn weighted(table: &ConfusionTable, f: fn(&[u64]) -> f64) -> f64 {
    let m = table.total();
    if m == 0 {
        return 0.0;
    }
    table
        .counts
        .iter()
        .map(|row| row.iter().sum::<u64>() as f64 / m as f64 * f(row))
        .sum()
}

pub fn total_entropy(table: &ConfusionTable) -> f64 {
    weighted(table, cluster_entropy)
}

pub fn total_purity(table: &ConfusionTable) -> f64 {
    weighted(table, cluster_purity)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterScore {
    pub size: u64,
    pub entropy: f64,
    pub purity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub confusion: ConfusionTable,
    pub clusters: Vec<ClusterScore>,
    pub entropy: f64,
    pub purity: f64,
}

pub fn evaluate(
    clustering: &HardClustering,
    doc_ids: &[String],
    labels: &[Option<String>],
) -> Result<EvaluationReport> {
    let confusion = confusion(clustering, doc_ids, labels)?;
    let clusters = confusion
        .counts
        .iter()
        .map(|row| ClusterScore {
            size: row.iter().sum(),
            entropy: cluster_entropy(row),
            purity: cluster_purity(row),
        })
        .collect();
    Ok(EvaluationReport {
        entropy: total_entropy(&confusion),
        purity: total_purity(&confusion),
        confusion,
        clusters,
    })
}

impl EvaluationReport {
    /// Aligned plain-text table: one row per cluster with class counts,
    /// entropy and purity, then the weighted totals.
    pub fn render_table(&self) -> String {
        let mut header = vec!["Cluster".to_string()];
        header.extend(self.confusion.classes.iter().cloned());
        header.push("Entropy".into());
        header.push("Purity".into());

        let mut rows = vec![header];
        for (i, (counts, score)) in self.confusion.counts.iter().zip(&self.clusters).enumerate() {
            let mut row = vec![(i + 1).to_string()];
            row.extend(counts.iter().map(u64::to_string));
            row.push(format!("{:.4}", score.entropy));
            row.push(format!("{:.4}", score.purity));
            rows.push(row);
        }
        let mut total = vec!["Total".to_string()];
        total.extend(self.confusion.classes.iter().map(|_| String::new()));
        total.push(format!("{:.4}", self.entropy));
        total.push(format!("{:.4}", self.purity));
        rows.push(total);

        render_rows(&rows)
    }
}

pub(crate) fn render_rows(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                if c == 0 {
                    format!("{cell:<w$}", w = widths[c])
                } else {
                    format!("{cell:>w$}", w = widths[c])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
