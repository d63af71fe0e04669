//! Stem words with the Porter algorithm, showing each step's output.
//!
//!     cargo run --example stem -- generalizations oscillators communities

use fpcluster::porter::{apply_step, porter_stem, Step};

fn main() {
    let words: Vec<String> = std::env::args().skip(1).collect();
    let words = if words.is_empty() {
        [
            "caresses",
            "relational",
            "generalizations",
            "communities",
            "hopping",
        ]
        .map(String::from)
        .to_vec()
    } else {
        words
    };
    for word in words {
        let mut trail = vec![word.to_lowercase()];
        let mut current = trail[0].clone();
        if current.len() > 2 {
            for step in Step::ALL {
                let next = apply_step(step, &current);
                if next != current {
                    trail.push(format!("{step:?}:{next}"));
                    current = next;
                }
            }
        }
        println!(
            "{:<18} -> {:<12} {}",
            word,
            porter_stem(&word.to_lowercase()),
            trail[1..].join(" ")
        );
    }
}
