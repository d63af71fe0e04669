//! Vocabulary, term-document counts, TF-IDF document vectors and cosine
//! similarity.

use std::io::Write;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::ProcessedDocument;

/// Terms with dense ids assigned in order of first occurrence, scanning the
/// documents in input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    terms: IndexSet<String>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn id(&self, term: &str) -> Option<usize> {
        self.terms.get_index_of(term)
    }

    pub fn term(&self, id: usize) -> Option<&str> {
        self.terms.get_index(id).map(String::as_str)
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(String::as_str)
    }
}

pub fn build_vocabulary(docs: &[ProcessedDocument]) -> Vocabulary {
    let mut terms = IndexSet::new();
    for doc in docs {
        for kw in &doc.keywords {
            if !terms.contains(kw) {
                terms.insert(kw.clone());
            }
        }
    }
    Vocabulary { terms }
}

/// Raw occurrence counts, one row per term and one column per document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDocumentMatrix {
    counts: Vec<Vec<u32>>,
    vocabulary: Vocabulary,
    doc_ids: Vec<String>,
}

impl TermDocumentMatrix {
    pub fn count(&self, term: usize, doc: usize) -> u32 {
        self.counts[term][doc]
    }

    /// Row `term` across all documents.
    pub fn row(&self, term: usize) -> &[u32] {
        &self.counts[term]
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn num_terms(&self) -> usize {
        self.counts.len()
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    /// Total keyword count of document `doc`.
    pub fn doc_total(&self, doc: usize) -> u32 {
        self.counts.iter().map(|row| row[doc]).sum()
    }

    /// Number of documents containing `term`.
    pub fn document_frequency(&self, term: usize) -> u32 {
        self.counts[term].iter().filter(|&&c| c > 0).count() as u32
    }

    /// CSV with a `term` header cell followed by the document ids.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        write_matrix_csv(out, &self.vocabulary, &self.doc_ids, |t, d| {
            self.counts[t][d].to_string()
        })
    }
}

pub fn build_tdm(docs: &[ProcessedDocument], vocab: &Vocabulary) -> Result<TermDocumentMatrix> {
    let mut counts = vec![vec![0u32; docs.len()]; vocab.len()];
    for (d, doc) in docs.iter().enumerate() {
        for kw in &doc.keywords {
            let t = vocab
                .id(kw)
                .ok_or_else(|| Error::UnknownTerm { term: kw.clone() })?;
            counts[t][d] += 1;
        }
    }
    Ok(TermDocumentMatrix {
        counts,
        vocabulary: vocab.clone(),
        doc_ids: docs.iter().map(|d| d.id.clone()).collect(),
    })
}

pub fn tf(count: u32, doc_total: u32) -> f64 {
    f64::from(count) / f64::from(doc_total)
}

/// `log10(num_docs / df)`; zero for a term present in every document.
pub fn idf(num_docs: usize, df: usize) -> f64 {
    (num_docs as f64 / df as f64).log10()
}

/// A dense TF-IDF weight vector over the vocabulary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DocumentVector(pub Vec<f64>);

impl DocumentVector {
    pub fn zeros(dim: usize) -> Self {
        DocumentVector(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dot(&self, other: &DocumentVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn squared_distance(&self, other: &DocumentVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    pub fn distance(&self, other: &DocumentVector) -> f64 {
        self.squared_distance(other).sqrt()
    }

    /// Coordinate-wise mean of `vectors`. Panics on an empty iterator.
    pub fn mean<'a>(vectors: impl IntoIterator<Item = &'a DocumentVector>) -> DocumentVector {
        let mut iter = vectors.into_iter();
        let first = iter.next().expect("mean of no vectors");
        let mut sum = first.0.clone();
        let mut n = 1usize;
        for v in iter {
            for (s, x) in sum.iter_mut().zip(&v.0) {
                *s += x;
            }
            n += 1;
        }
        for s in &mut sum {
            *s /= n as f64;
        }
        DocumentVector(sum)
    }
}

/// One TF-IDF vector per document, in column order.
pub fn tfidf_vectors(tdm: &TermDocumentMatrix) -> Vec<DocumentVector> {
    let n = tdm.num_docs();
    let idfs: Vec<f64> = (0..tdm.num_terms())
        .map(|t| idf(n, tdm.document_frequency(t) as usize))
        .collect();
    (0..n)
        .map(|d| {
            let total = tdm.doc_total(d);
            DocumentVector(
                idfs.iter()
                    .enumerate()
                    .map(|(t, &w)| {
                        let c = tdm.count(t, d);
                        if c == 0 {
                            0.0
                        } else {
                            tf(c, total) * w
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

pub fn write_tfidf_csv<W: Write>(
    out: W,
    tdm: &TermDocumentMatrix,
    vectors: &[DocumentVector],
) -> csv::Result<()> {
    write_matrix_csv(out, &tdm.vocabulary, &tdm.doc_ids, |t, d| {
        format!("{:.6}", vectors[d].0[t])
    })
}

fn write_matrix_csv<W: Write>(
    out: W,
    vocab: &Vocabulary,
    doc_ids: &[String],
    cell: impl Fn(usize, usize) -> String,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(std::iter::once("term").chain(doc_ids.iter().map(String::as_str)))?;
    for (t, term) in vocab.terms().enumerate() {
        let mut record = vec![term.to_string()];
        record.extend((0..doc_ids.len()).map(|d| cell(t, d)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn cosine_similarity(a: &DocumentVector, b: &DocumentVector) -> Result<f64> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector {
            context: "cosine similarity operand".into(),
        });
    }
    Ok(a.dot(b) / (na * nb))
}
