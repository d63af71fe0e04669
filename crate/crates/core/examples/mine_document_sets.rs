//! Mine frequent document sets from the sample corpus: every term becomes a
//! transaction over the documents it occurs in.
//!
//!     cargo run --example mine_document_sets -- [MIN_SUP]

use fpcluster::fixture;
use fpcluster::fpgrowth::{
    fp_growth, max_feasible_support, maximal_filter, support_spectrum, FpTree,
};
use fpcluster::pipeline::{prepare, Algorithm};

fn main() -> fpcluster::Result<()> {
    let min_sup: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("MIN_SUP must be a positive integer"))
        .unwrap_or(fixture::MIN_SUP);
    let prepared = prepare(
        &fixture::keyword_corpus(),
        &fixture::config(Algorithm::Fcm, 2.0),
    )?;
    let db = &prepared.transactions;
    let name = |d: usize| db.item_name(d).to_string();

    let tree = FpTree::build(db, min_sup);
    println!(
        "{} transactions, FP-tree with {} nodes at min_sup {min_sup}",
        db.len(),
        tree.node_count()
    );
    let all = fp_growth(&tree);
    println!("{} frequent document sets", all.len());

    for min_size in [1, 2] {
        println!("maximal sets with at least {min_size} documents:");
        for set in maximal_filter(&all, min_size) {
            let ids: Vec<String> = set.items.iter().map(|&d| name(d)).collect();
            println!("  {{{}}}  support {}", ids.join(", "), set.support);
        }
    }

    let top = max_feasible_support(db, 2);
    println!("highest support with a set of two or more documents: {top}");
    for (s, n) in support_spectrum(db, 2, (1..=top).rev()) {
        println!("  min_sup {s}: {n} seed sets");
    }
    Ok(())
}
