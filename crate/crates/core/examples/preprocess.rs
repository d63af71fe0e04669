//! Reduce the raw sample documents to keyword lists and compare them with the
//! curated lists shipped alongside.
//!
//!     cargo run --example preprocess

use fpcluster::fixture;

fn main() -> fpcluster::Result<()> {
    let cfg = fixture::preprocess_config();
    let derived = fixture::raw_corpus().process(&cfg)?;
    let curated = fixture::keyword_corpus().process(&cfg)?;
    for (d, c) in derived.iter().zip(&curated) {
        let mark = if d.keywords == c.keywords {
            "same"
        } else {
            "DIFF"
        };
        println!("{:<4} {mark}  {}", d.id, d.keywords.join(" "));
        if d.keywords != c.keywords {
            println!("{:<4}       {}", "", c.keywords.join(" "));
        }
    }
    Ok(())
}
