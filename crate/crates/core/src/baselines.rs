//! Hard-clustering comparisons that share the frequent-set seeds: Lloyd
//! K-means, and cosine-similarity assignment of the documents left outside
//! every seed set.

use serde::Serialize;

use crate::corpus::{cosine_similarity, DocumentVector};
use crate::error::{Error, Result};
use crate::fcm::ClusterSeeds;

/// One cluster index per document, positionally aligned with the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardClustering {
    assignment: Vec<usize>,
    n_clusters: usize,
}

impl HardClustering {
    pub fn new(assignment: Vec<usize>, n_clusters: usize) -> Result<Self> {
        if let Some(&bad) = assignment.iter().find(|&&c| c >= n_clusters) {
            return Err(Error::Config(format!(
                "cluster index {bad} out of range for {n_clusters} clusters"
            )));
        }
        Ok(HardClustering {
            assignment,
            n_clusters,
        })
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    pub fn n_docs(&self) -> usize {
        self.assignment.len()
    }

    /// Document indices of each cluster, ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_clusters];
        for (doc, &c) in self.assignment.iter().enumerate() {
            out[c].push(doc);
        }
        out
    }
}

fn nearest(x: &DocumentVector, means: &[DocumentVector]) -> usize {
    let mut best = (0, f64::INFINITY);
    for (j, c) in means.iter().enumerate() {
        let d = x.squared_distance(c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansResult {
    pub clustering: HardClustering,
    pub centroids: Vec<DocumentVector>,
    pub iterations: usize,
    pub converged: bool,
    /// Within-cluster sum of squared distances after each assignment step.
    pub sse_trace: Vec<f64>,
    /// Clusters that lost every member at some point and kept their mean.
    pub empty_clusters: Vec<usize>,
}

/// Lloyd iteration from the seed centroids. Stops when an assignment step
/// reproduces the previous one.
pub fn kmeans_run(
    vectors: &[DocumentVector],
    seeds: &ClusterSeeds,
    max_iter: usize,
) -> Result<KMeansResult> {
    if seeds.is_empty() {
        return Err(Error::NoSeeds(None));
    }
    if max_iter == 0 {
        return Err(Error::Config("max_iter must be at least 1".into()));
    }
    let k = seeds.len();
    let mut means = seeds.centroids.clone();
    let mut previous: Option<Vec<usize>> = None;
    let mut sse_trace = Vec::new();
    let mut empty = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    for it in 1..=max_iter {
        iterations = it;
        let assignment: Vec<usize> = vectors.iter().map(|x| nearest(x, &means)).collect();
        sse_trace.push(
            vectors
                .iter()
                .zip(&assignment)
                .map(|(x, &c)| x.squared_distance(&means[c]))
                .sum(),
        );
        if previous.as_ref() == Some(&assignment) {
            converged = true;
            break;
        }
        for (j, mean) in means.iter_mut().enumerate() {
            let members: Vec<&DocumentVector> = vectors
                .iter()
                .zip(&assignment)
                .filter(|(_, &c)| c == j)
                .map(|(x, _)| x)
                .collect();
            if members.is_empty() {
                if !empty.contains(&j) {
                    empty.push(j);
                }
            } else {
                *mean = DocumentVector::mean(members);
            }
        }
        previous = Some(assignment);
    }

    Ok(KMeansResult {
        clustering: HardClustering::new(previous.expect("max_iter >= 1"), k)?,
        centroids: means,
        iterations,
        converged,
        sse_trace,
        empty_clusters: empty,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CosineOptions {
    /// Re-average a cluster's center each time a document joins it, instead
    /// of holding every center at its seed value.
    pub recompute_centers: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CosineResult {
    pub clustering: HardClustering,
    /// Documents that were in no seed set, in corpus order.
    pub unclustered: Vec<usize>,
    /// Similarity of each unclustered document to every center at the time
    /// it was placed.
    pub similarities: Vec<Vec<f64>>,
}

/// Keep each seed-set document in its set's cluster (the lowest-index one if
/// it appears in several) and place every other document in the cluster
/// whose center is most cosine-similar, ties to the lowest index.
pub fn cosine_assign(
    vectors: &[DocumentVector],
    seeds: &ClusterSeeds,
    opts: CosineOptions,
) -> Result<CosineResult> {
    if seeds.is_empty() {
        return Err(Error::NoSeeds(None));
    }
    let mut assignment: Vec<Option<usize>> = vec![None; vectors.len()];
    for (j, set) in seeds.sources.iter().enumerate() {
        for &d in &set.items {
            let slot = assignment
                .get_mut(d)
                .ok_or_else(|| Error::Config(format!("seed set references document index {d}")))?;
            if slot.is_none() {
                *slot = Some(j);
            }
        }
    }
    let unclustered: Vec<usize> = (0..vectors.len())
        .filter(|&d| assignment[d].is_none())
        .collect();

    let mut centers = seeds.centroids.clone();
    let mut similarities = Vec::with_capacity(unclustered.len());
    for &d in &unclustered {
        let sims = centers
            .iter()
            .map(|c| cosine_similarity(&vectors[d], c))
            .collect::<Result<Vec<f64>>>()
            .map_err(|_| Error::ZeroVector {
                context: format!("document index {d} or a cluster center"),
            })?;
        let mut best = 0;
        for (j, &s) in sims.iter().enumerate() {
            if s > sims[best] {
                best = j;
            }
        }
        assignment[d] = Some(best);
        similarities.push(sims);
        if opts.recompute_centers {
            centers[best] = DocumentVector::mean(
                vectors
                    .iter()
                    .zip(&assignment)
                    .filter(|(_, a)| **a == Some(best))
                    .map(|(x, _)| x),
            );
        }
    }

    Ok(CosineResult {
        clustering: HardClustering::new(
            assignment
                .into_iter()
                .map(|a| a.expect("assigned"))
                .collect(),
            seeds.len(),
        )?,
        unclustered,
        similarities,
    })
}
