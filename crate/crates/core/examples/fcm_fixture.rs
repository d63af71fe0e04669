//! Fuzzy C-Means on the sample corpus, printing the membership matrix after
//! each iteration.
//!
//!     cargo run --example fcm_fixture -- [M] [MAX_ITER]

use fpcluster::fcm::{fcm_run_observed, harden, FcmParams};
use fpcluster::fixture;
use fpcluster::pipeline::{mine_seeds, prepare, Algorithm};

fn main() -> fpcluster::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: f64 = args
        .next()
        .map_or(2.0, |s| s.parse().expect("M must be a number"));
    let max_iter: usize = args
        .next()
        .map_or(5, |s| s.parse().expect("MAX_ITER must be an integer"));

    let cfg = fixture::config(Algorithm::Fcm, m);
    let prepared = prepare(&fixture::keyword_corpus(), &cfg)?;
    let seeds = mine_seeds(&prepared, fixture::MIN_SUP, cfg.min_set_size)?;
    let ids = prepared.tdm.doc_ids();

    let params = FcmParams {
        m,
        max_iter,
        ..FcmParams::default()
    };
    let result = fcm_run_observed(&prepared.vectors, &seeds, params, |step| {
        println!(
            "iteration {}  J = {:.6}  max change = {}",
            step.iteration,
            step.objective,
            step.delta.map_or("-".to_string(), |d| format!("{d:.2e}"))
        );
        for (id, row) in ids.iter().zip(step.memberships.rows()) {
            let cells: Vec<String> = row.iter().map(|u| format!("{u:.4}")).collect();
            println!("  {id:<4} {}", cells.join("  "));
        }
    })?;

    let hard = harden(&result.memberships);
    for (c, members) in hard.clusters().iter().enumerate() {
        let names: Vec<&str> = members.iter().map(|&d| ids[d].as_str()).collect();
        println!("cluster {c}: {}", names.join(", "));
    }
    println!("converged: {}", result.converged);
    Ok(())
}
