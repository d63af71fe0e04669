//! K-means and cosine-similarity assignment from the same frequent-set seeds.
//!
//!     cargo run --example baselines

use fpcluster::baselines::{cosine_assign, kmeans_run, CosineOptions};
use fpcluster::fixture;
use fpcluster::pipeline::{mine_seeds, prepare, Algorithm};

fn main() -> fpcluster::Result<()> {
    let cfg = fixture::config(Algorithm::KMeans, 2.0);
    let prepared = prepare(&fixture::keyword_corpus(), &cfg)?;
    let seeds = mine_seeds(&prepared, fixture::MIN_SUP, cfg.min_set_size)?;
    let ids = prepared.tdm.doc_ids();
    let names = |members: &[usize]| {
        members
            .iter()
            .map(|&d| ids[d].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };

    let km = kmeans_run(&prepared.vectors, &seeds, 100)?;
    println!(
        "k-means: {} iterations, converged {}",
        km.iterations, km.converged
    );
    for (i, sse) in km.sse_trace.iter().enumerate() {
        println!("  iteration {}: sse {sse:.6}", i + 1);
    }
    for (c, members) in km.clustering.clusters().iter().enumerate() {
        println!("  cluster {c}: {}", names(members));
    }

    for recompute_centers in [false, true] {
        let cos = cosine_assign(
            &prepared.vectors,
            &seeds,
            CosineOptions { recompute_centers },
        )?;
        println!("cosine (recompute centers: {recompute_centers}):");
        for (d, sims) in cos.unclustered.iter().zip(&cos.similarities) {
            let s: Vec<String> = sims.iter().map(|x| format!("{x:.4}")).collect();
            println!("  {:<4} similarities {}", ids[*d], s.join("  "));
        }
        for (c, members) in cos.clustering.clusters().iter().enumerate() {
            println!("  cluster {c}: {}", names(members));
        }
    }
    Ok(())
}
