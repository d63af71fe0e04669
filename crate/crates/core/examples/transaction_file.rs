//! Mine maximal frequent itemsets from a plain transaction file: one
//! transaction per line, items separated by whitespace.
//!
//!     cargo run --example transaction_file -- FILE MIN_SUP
//!
//! Without arguments a small built-in database is used.

use std::fs::File;
use std::io::BufReader;

use fpcluster::fpgrowth::{fp_growth, maximal_filter, FpTree, TransactionDb};

const BUILTIN: &str = "bread milk
bread diapers beer eggs
milk diapers beer cola
bread milk diapers beer
bread milk diapers cola
";

fn main() -> fpcluster::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (db, min_sup) = match args.as_slice() {
        [path, sup] => {
            let file = File::open(path)
                .map_err(|e| fpcluster::Error::Config(format!("cannot open {path}: {e}")))?;
            let sup = sup
                .parse()
                .map_err(|_| fpcluster::Error::Config(format!("bad MIN_SUP `{sup}`")))?;
            (TransactionDb::read(BufReader::new(file), path)?, sup)
        }
        [] => (TransactionDb::read(BUILTIN.as_bytes(), "builtin")?, 3),
        _ => {
            eprintln!("usage: transaction_file [FILE MIN_SUP]");
            std::process::exit(2);
        }
    };

    let all = fp_growth(&FpTree::build(&db, min_sup));
    println!("{} frequent itemsets at min_sup {min_sup}", all.len());
    for set in &all {
        let names: Vec<&str> = set.items.iter().map(|&i| db.item_name(i)).collect();
        println!("  {:<30} {}", names.join(" "), set.support);
    }
    println!("maximal:");
    for set in maximal_filter(&all, 1) {
        let names: Vec<&str> = set.items.iter().map(|&i| db.item_name(i)).collect();
        println!("  {:<30} {}", names.join(" "), set.support);
    }
    Ok(())
}
