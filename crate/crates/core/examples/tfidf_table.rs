//! Print the term-document counts and TF-IDF weights of the sample corpus as
//! CSV.
//!
//!     cargo run --example tfidf_table

use fpcluster::corpus::{build_tdm, build_vocabulary, tfidf_vectors, write_tfidf_csv};
use fpcluster::fixture;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let docs = fixture::keyword_corpus().process(&fixture::preprocess_config())?;
    let vocab = build_vocabulary(&docs);
    let tdm = build_tdm(&docs, &vocab)?;

    println!(
        "# counts ({} terms x {} documents)",
        tdm.num_terms(),
        tdm.num_docs()
    );
    tdm.write_csv(std::io::stdout())?;

    println!("\n# tf-idf");
    write_tfidf_csv(std::io::stdout(), &tdm, &tfidf_vectors(&tdm))?;
    Ok(())
}
