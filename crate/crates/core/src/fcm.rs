//! Fuzzy C-Means seeded from frequent document-sets.
//!
//! Iteration order is fixed: memberships are computed from the current
//! centroids, then centroids from those memberships. Iteration `k` therefore
//! produces `U(k)` from `C(k-1)` and `C(k)` from `U(k)`, with `C(0)` the
//! seed centroids. Distances are plain Euclidean over the TF-IDF weights.

use serde::{Deserialize, Serialize};

use crate::baselines::HardClustering;
use crate::corpus::DocumentVector;
use crate::error::{Error, Result};
use crate::fpgrowth::FrequentItemset;

/// Initial centroids, one per seed document-set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSeeds {
    pub centroids: Vec<DocumentVector>,
    /// The document set each centroid was averaged from.
    pub sources: Vec<FrequentItemset>,
}

impl ClusterSeeds {
    pub fn len(&self) -> usize {
        self.centroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centroids.is_empty()
    }
}

/// Average the vectors of each set's member documents.
pub fn compute_seeds(
    maximal_sets: &[FrequentItemset],
    vectors: &[DocumentVector],
) -> Result<ClusterSeeds> {
    if maximal_sets.is_empty() {
        return Err(Error::NoSeeds(None));
    }
    let mut centroids = Vec::with_capacity(maximal_sets.len());
    for set in maximal_sets {
        if set.is_empty() {
            return Err(Error::Config("seed set with no documents".into()));
        }
        if let Some(&bad) = set.items.iter().find(|&&d| d >= vectors.len()) {
            return Err(Error::Config(format!(
                "seed set references document index {bad} of {}",
                vectors.len()
            )));
        }
        centroids.push(DocumentVector::mean(set.items.iter().map(|&d| &vectors[d])));
    }
    Ok(ClusterSeeds {
        centroids,
        sources: maximal_sets.to_vec(),
    })
}

/// `N x C` fuzzy memberships; each row sums to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MembershipMatrix {
    rows: Vec<Vec<f64>>,
}

impl MembershipMatrix {
    /// Wrap explicit rows. Rows must be equally long and sum to one within
    /// `1e-9`, with entries in `[0, 1]`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            if row.len() != width
                || (sum - 1.0).abs() > 1e-9
                || row.iter().any(|u| !(0.0..=1.0).contains(u))
            {
                return Err(Error::Config(format!(
                    "membership row {i} is not stochastic"
                )));
            }
        }
        Ok(MembershipMatrix { rows })
    }

    pub fn n_docs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_clusters(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, doc: usize, cluster: usize) -> f64 {
        self.rows[doc][cluster]
    }

    pub fn row(&self, doc: usize) -> &[f64] {
        &self.rows[doc]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &MembershipMatrix) -> f64 {
        self.rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// Membership of every document in every cluster for fuzziness `m`.
///
/// A document sitting exactly on `z` centroids gets `1/z` in each of them
/// and zero elsewhere.
pub fn update_memberships(
    vectors: &[DocumentVector],
    centroids: &[DocumentVector],
    m: f64,
) -> MembershipMatrix {
    let exponent = 1.0 / (m - 1.0);
    let rows = vectors
        .iter()
        .map(|x| {
            let d2: Vec<f64> = centroids.iter().map(|c| x.squared_distance(c)).collect();
            let zeros = d2.iter().filter(|&&d| d == 0.0).count();
            if zeros > 0 {
                let share = 1.0 / zeros as f64;
                return d2
                    .iter()
                    .map(|&d| if d == 0.0 { share } else { 0.0 })
                    .collect();
            }
            // (|x-c_j| / |x-c_k|)^(2/(m-1)) == (d2_j / d2_k)^(1/(m-1))
            d2.iter()
                .map(|&dj| 1.0 / d2.iter().map(|&dk| (dj / dk).powf(exponent)).sum::<f64>())
                .collect()
        })
        .collect();
    MembershipMatrix { rows }
}

/// Centroid `j` as the `u^m`-weighted mean of the documents; `None` where the
/// total weight is zero.
fn weighted_centroids(
    vectors: &[DocumentVector],
    memberships: &MembershipMatrix,
    m: f64,
) -> Vec<Option<DocumentVector>> {
    let dim = vectors.first().map_or(0, DocumentVector::dim);
    (0..memberships.n_clusters())
        .map(|j| {
            let mut sum = vec![0.0; dim];
            let mut total = 0.0;
            for (x, row) in vectors.iter().zip(memberships.rows()) {
                let w = row[j].powf(m);
                total += w;
                for (s, v) in sum.iter_mut().zip(x.as_slice()) {
                    *s += w * v;
                }
            }
            (total > 0.0).then(|| DocumentVector(sum.into_iter().map(|s| s / total).collect()))
        })
        .collect()
}

pub fn update_centroids(
    vectors: &[DocumentVector],
    memberships: &MembershipMatrix,
    m: f64,
) -> Result<Vec<DocumentVector>> {
    weighted_centroids(vectors, memberships, m)
        .into_iter()
        .enumerate()
        .map(|(j, c)| c.ok_or(Error::DegenerateCluster { cluster: j }))
        .collect()
}

/// `J_m = sum_i sum_j u_ij^m |x_i - c_j|^2`.
pub fn objective(
    vectors: &[DocumentVector],
    memberships: &MembershipMatrix,
    centroids: &[DocumentVector],
    m: f64,
) -> f64 {
    vectors
        .iter()
        .zip(memberships.rows())
        .map(|(x, row)| {
            row.iter()
                .zip(centroids)
                .map(|(u, c)| u.powf(m) * x.squared_distance(c))
                .sum::<f64>()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FcmParams {
    /// Fuzziness, strictly greater than one.
    pub m: f64,
    /// Stop once the largest membership change drops below this.
    pub epsilon: f64,
    pub max_iter: usize,
}

impl Default for FcmParams {
    fn default() -> Self {
        FcmParams {
            m: 2.0,
            epsilon: 1e-5,
            max_iter: 100,
        }
    }
}

impl FcmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.m > 1.0 && self.m.is_finite()) {
            return Err(Error::Config(format!(
                "fuzziness m must be > 1, got {}",
                self.m
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Config(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FcmResult {
    /// Memberships from the last iteration.
    pub memberships: MembershipMatrix,
    /// Centroids computed from those memberships.
    pub centroids: Vec<DocumentVector>,
    pub iterations: usize,
    /// `J_m` after each iteration's centroid update.
    pub objective_trace: Vec<f64>,
    pub converged: bool,
}

/// State after one iteration, handed to the observer of [`fcm_run_observed`].
#[derive(Debug)]
pub struct FcmStep<'a> {
    pub iteration: usize,
    pub memberships: &'a MembershipMatrix,
    pub centroids: &'a [DocumentVector],
    pub objective: f64,
    /// Largest membership change from the previous iteration.
    pub delta: Option<f64>,
}

pub fn fcm_run(
    vectors: &[DocumentVector],
    seeds: &ClusterSeeds,
    params: FcmParams,
) -> Result<FcmResult> {
    fcm_run_observed(vectors, seeds, params, |_| {})
}

/// Like [`fcm_run`] but calls `observe` after every iteration.
///
/// A cluster whose membership weight vanishes keeps its previous centroid.
pub fn fcm_run_observed(
    vectors: &[DocumentVector],
    seeds: &ClusterSeeds,
    params: FcmParams,
    mut observe: impl FnMut(&FcmStep<'_>),
) -> Result<FcmResult> {
    params.validate()?;
    if seeds.is_empty() {
        return Err(Error::NoSeeds(None));
    }
    let m = params.m;
    let mut centroids = seeds.centroids.clone();
    let mut previous: Option<MembershipMatrix> = None;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    for k in 1..=params.max_iter {
        iterations = k;
        let u = update_memberships(vectors, &centroids, m);
        for (slot, fresh) in centroids.iter_mut().zip(weighted_centroids(vectors, &u, m)) {
            if let Some(c) = fresh {
                *slot = c;
            }
        }
        let j = objective(vectors, &u, &centroids, m);
        trace.push(j);
        let delta = previous.as_ref().map(|p| p.max_abs_diff(&u));
        observe(&FcmStep {
            iteration: k,
            memberships: &u,
            centroids: &centroids,
            objective: j,
            delta,
        });
        previous = Some(u);
        if delta.is_some_and(|d| d < params.epsilon) {
            converged = true;
            break;
        }
    }

    Ok(FcmResult {
        memberships: previous.expect("max_iter >= 1"),
        centroids,
        iterations,
        objective_trace: trace,
        converged,
    })
}

/// Assign each document to its highest-membership cluster; ties go to the
/// lowest cluster index.
pub fn harden(memberships: &MembershipMatrix) -> HardClustering {
    let assignment = memberships
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (j, &u)| {
                    if u > best.1 {
                        (j, u)
                    } else {
                        best
                    }
                })
                .0
        })
        .collect();
    HardClustering::new(assignment, memberships.n_clusters()).expect("argmax is always in range")
}
