//! Cluster a corpus of your own from the library, without the command-line
//! front end. Each line of the JSONL file is {"id", "text", "label"?}.
//!
//!     cargo run --example cluster_corpus -- corpus.jsonl OUT_DIR [MIN_SUP]

use std::path::Path;

use fpcluster::pipeline::{emit_report, ingest_corpus, run_pipeline, CorpusFormat, PipelineConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 2 {
        eprintln!("usage: cluster_corpus CORPUS.jsonl OUT_DIR [MIN_SUP]");
        std::process::exit(2);
    }
    let run = || -> fpcluster::Result<()> {
        let corpus = ingest_corpus(Path::new(&args[0]), CorpusFormat::Jsonl)?;
        let mut cfg = PipelineConfig::default();
        if let Some(s) = args.get(2) {
            cfg.min_sup = s.parse()?;
        }
        let report = run_pipeline(&corpus, &cfg)?;
        for path in emit_report(&report, Path::new(&args[1]))? {
            println!("wrote {}", path.display());
        }
        for (c, members) in report.clusters.iter().enumerate() {
            println!("cluster {c}: {}", members.join(", "));
        }
        Ok(())
    };
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
