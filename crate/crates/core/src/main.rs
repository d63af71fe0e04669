use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fpcluster::baselines::CosineOptions;
use fpcluster::fcm::FcmParams;
use fpcluster::pipeline::{
    emit_report, ingest_corpus, prepare, run_pipeline, seed_diagnostic, Algorithm, CorpusFormat,
    MinSupport, PipelineConfig,
};
use fpcluster::text::{load_canonical_forms, load_word_list, PreprocessConfig};
use fpcluster::{fixture, Error, Result};

/// Cluster text documents with FP-growth seeded fuzzy c-means.
#[derive(Debug, Parser)]
#[command(name = "fpcluster", version)]
struct Cli {
    /// Corpus file or directory.
    #[arg(long, required_unless_present = "reproduce_paper")]
    input: Option<PathBuf>,

    /// jsonl, directory or keywords-jsonl.
    #[arg(long, default_value = "jsonl", value_parser = parse_with::<CorpusFormat>)]
    format: CorpusFormat,

    /// Absolute term count, or a fraction of the vocabulary such as 0.1.
    #[arg(long, default_value = "3", value_parser = parse_with::<MinSupport>)]
    min_sup: MinSupport,

    /// Smallest document set allowed to seed a cluster.
    #[arg(long, default_value_t = 2)]
    min_set_size: usize,

    /// fcm, kmeans or cosine.
    #[arg(long, default_value = "fcm", value_parser = parse_with::<Algorithm>)]
    algorithm: Algorithm,

    /// Fuzziness, greater than 1.
    #[arg(long, default_value_t = 2.0)]
    m: f64,

    #[arg(long, default_value_t = 1e-5)]
    epsilon: f64,

    #[arg(long, default_value_t = 100)]
    max_iter: usize,

    /// Stopword list, one word per line.
    #[arg(long)]
    stopwords: Option<PathBuf>,

    /// Keep only these tokens, one per line.
    #[arg(long)]
    allowlist: Option<PathBuf>,

    /// Lines of `<token or stem> <keyword>` applied after stemming.
    #[arg(long)]
    canonical_forms: Option<PathBuf>,

    #[arg(long)]
    no_stemming: bool,

    /// Let cosine assignment move a center as documents join it.
    #[arg(long)]
    recompute_centers: bool,

    /// Output directory.
    #[arg(long, required_unless_present = "reproduce_paper")]
    out: Option<PathBuf>,

    /// Run every method on the bundled sample corpus and print the
    /// comparison table; results go under --out (default ./sample-results).
    #[arg(long)]
    reproduce_paper: bool,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn config(cli: &Cli) -> Result<PipelineConfig> {
    let mut preprocess = PreprocessConfig::new().with_stemming(!cli.no_stemming);
    if let Some(p) = &cli.stopwords {
        preprocess = preprocess.with_stopwords(load_word_list(p)?);
    }
    if let Some(p) = &cli.allowlist {
        preprocess = preprocess.with_allowlist(load_word_list(p)?);
    }
    if let Some(p) = &cli.canonical_forms {
        preprocess = preprocess.with_canonical_forms(load_canonical_forms(p)?);
    }
    let cfg = PipelineConfig {
        min_sup: cli.min_sup,
        min_set_size: cli.min_set_size,
        fcm: FcmParams {
            m: cli.m,
            epsilon: cli.epsilon,
            max_iter: cli.max_iter,
        },
        algorithm: cli.algorithm,
        cosine: CosineOptions {
            recompute_centers: cli.recompute_centers,
        },
        preprocess,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<()> {
    if cli.reproduce_paper {
        let out = cli
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from("sample-results"));
        print!("{}", fixture::reproduce(&out)?);
        return Ok(());
    }
    let cfg = config(cli)?;
    let input = cli.input.as_ref().expect("required by clap");
    let out = cli.out.as_ref().expect("required by clap");
    let corpus = ingest_corpus(input, cli.format)?;
    let report = match run_pipeline(&corpus, &cfg) {
        Err(e @ Error::NoSeeds(_)) => {
            if let Ok(prepared) = prepare(&corpus, &cfg) {
                let spectrum = seed_diagnostic(&prepared, cfg.min_set_size);
                if !spectrum.is_empty() {
                    eprintln!("seed sets available per min_sup:");
                    for (s, n) in spectrum {
                        eprintln!("  {s:>6}  {n}");
                    }
                }
            }
            return Err(e);
        }
        other => other?,
    };
    emit_report(&report, out)?;
    for (c, members) in report.clusters.iter().enumerate() {
        println!("cluster {c}: {}", members.join(", "));
    }
    if let Some(eval) = &report.evaluation {
        println!("entropy {:.6}  purity {:.6}", eval.entropy, eval.purity);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
