//! Score each method's clustering of the sample corpus against its labels.
//!
//!     cargo run --example evaluate

use fpcluster::fixture;
use fpcluster::pipeline::{run_pipeline, Algorithm};

fn main() -> fpcluster::Result<()> {
    let corpus = fixture::keyword_corpus();
    for algorithm in Algorithm::ALL {
        let report = run_pipeline(&corpus, &fixture::config(algorithm, 2.0))?;
        let eval = report.evaluation.expect("sample corpus is labelled");
        println!(
            "{algorithm}  (classes: {})",
            eval.confusion.classes.join(", ")
        );
        print!("{}", eval.render_table());
        println!();
    }
    Ok(())
}
