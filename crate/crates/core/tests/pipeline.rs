use std::fs;

use fpcluster::baselines::kmeans_run;
use fpcluster::fcm::{fcm_run, fcm_run_observed, harden, FcmParams};
use fpcluster::fixture;
use fpcluster::pipeline::{
    emit_report, ingest_corpus, mine_seeds, prepare, run_pipeline, Algorithm, Corpus, CorpusFormat,
    MinSupport, PipelineConfig,
};
use fpcluster::Error;

const TERMS: [&str; 30] = [
    "website",
    "application",
    "people",
    "information",
    "profile",
    "community",
    "interest",
    "network",
    "service",
    "platform",
    "relation",
    "commonality",
    "internet",
    "group",
    "contact",
    "experience",
    "purpose",
    "prospect",
    "support",
    "computer",
    "device",
    "channel",
    "communication",
    "user",
    "resource",
    "data",
    "server",
    "cable",
    "signal",
    "protocol",
];

const CENTROID_1: [f64; 30] = [
    0.0432, 0.0314, 0.0333, 0.0382, 0.0384, 0.0454, 0.0454, 0.0194, 0.0258, 0.0129, 0.0129, 0.0256,
    0.0256, 0.0116, 0.0227, 0.0190, 0.0190, 0.0227, 0.0227, 0.0151, 0.0027, 0.0027, 0.0027, 0.0054,
    0.0027, 0.0032, 0.0116, 0.0056, 0.0056, 0.0056,
];
const CENTROID_2: [f64; 30] = [
    0.0157, 0.0156, 0.0122, 0.0192, 0.0042, 0.0060, 0.0060, 0.0310, 0.0203, 0.0102, 0.0102, 0.0039,
    0.0039, 0.0361, 0.0033, 0.0178, 0.0178, 0.0033, 0.0033, 0.0762, 0.0158, 0.0158, 0.0158, 0.0315,
    0.0158, 0.0317, 0.0366, 0.0276, 0.0276, 0.0276,
];

const MEMBERSHIP_M2: [f64; 10] = [
    0.5411, 0.6035, 0.5139, 0.5832, 0.5050, 0.5884, 0.4187, 0.4323, 0.4337, 0.3431,
];
const MEMBERSHIP_M15: [f64; 10] = [
    0.6116, 0.8114, 0.5366, 0.7758, 0.5078, 0.7828, 0.2325, 0.3142, 0.2552, 0.1365,
];

fn fixture_run(algorithm: Algorithm) -> fpcluster::pipeline::RunReport {
    run_pipeline(&fixture::keyword_corpus(), &fixture::config(algorithm, 2.0)).unwrap()
}

/// Memberships of cluster 1 at the given iteration.
fn memberships_at(m: f64, iteration: usize) -> Vec<f64> {
    let cfg = fixture::config(Algorithm::Fcm, m);
    let p = prepare(&fixture::keyword_corpus(), &cfg).unwrap();
    let seeds = mine_seeds(&p, fixture::MIN_SUP, 2).unwrap();
    let mut out = Vec::new();
    let params = FcmParams {
        m,
        epsilon: 1e-12,
        max_iter: iteration,
    };
    fcm_run_observed(&p.vectors, &seeds, params, |step| {
        if step.iteration == iteration {
            out = step.memberships.rows().iter().map(|r| r[0]).collect();
        }
    })
    .unwrap();
    out
}

fn worst(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn printed_memberships_match_later_iterations() {
    assert!(worst(&memberships_at(2.0, 3), &MEMBERSHIP_M2) < 5e-4);
    assert!(worst(&memberships_at(1.5, 2), &MEMBERSHIP_M15) < 1e-4);
    // the first update from the seeds is far off at either fuzziness
    assert!(worst(&memberships_at(2.0, 1), &MEMBERSHIP_M2) > 0.1);
    assert!(worst(&memberships_at(1.5, 1), &MEMBERSHIP_M15) > 0.1);
}

#[test]
fn printed_centroids_match_second_iteration_at_m_1_5() {
    let cfg = fixture::config(Algorithm::Fcm, 1.5);
    let p = prepare(&fixture::keyword_corpus(), &cfg).unwrap();
    let seeds = mine_seeds(&p, fixture::MIN_SUP, 2).unwrap();
    let r = fcm_run(
        &p.vectors,
        &seeds,
        FcmParams {
            m: 1.5,
            epsilon: 1e-12,
            max_iter: 2,
        },
    )
    .unwrap();
    for (c, printed) in [CENTROID_1, CENTROID_2].iter().enumerate() {
        for (name, expected) in TERMS.iter().zip(printed) {
            let t = p.tdm.vocabulary().id(name).unwrap();
            let got = r.centroids[c].0[t];
            assert!(
                (got - expected).abs() < 1e-4,
                "{c} {name}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn fcm_at_m_2_drifts_toward_even_memberships() {
    let r = fixture_run(Algorithm::Fcm);
    assert!(r.converged);
    let u = r.memberships.unwrap();
    for row in u.rows() {
        assert!((row[0] - 0.5).abs() < 1e-3);
    }
    assert_eq!(r.clusters[0], ["D1", "D2", "D3", "D4", "D5", "D6"]);
}

#[test]
fn pipeline_equals_manual_composition() {
    let report = fixture_run(Algorithm::KMeans);
    let cfg = fixture::config(Algorithm::KMeans, 2.0);
    let p = prepare(&fixture::keyword_corpus(), &cfg).unwrap();
    let seeds = mine_seeds(&p, fixture::MIN_SUP, 2).unwrap();
    let km = kmeans_run(&p.vectors, &seeds, cfg.fcm.max_iter).unwrap();
    assert_eq!(report.clustering, km.clustering);
    assert_eq!(report.centroids, km.centroids);
    assert_eq!(report.seed_centroids, seeds.centroids);

    let report = fixture_run(Algorithm::Fcm);
    let fcm = fcm_run(&p.vectors, &seeds, cfg.fcm).unwrap();
    assert_eq!(report.memberships.as_ref(), Some(&fcm.memberships));
    assert_eq!(report.clustering, harden(&fcm.memberships));
    assert_eq!(report.objective_trace, fcm.objective_trace);
}

#[test]
fn seeds_file_is_shared_by_all_algorithms() {
    let tmp = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for algorithm in Algorithm::ALL {
        let dir = tmp.path().join(algorithm.as_str());
        let written = emit_report(&fixture_run(algorithm), &dir).unwrap();
        let names: Vec<String> = written
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(
            names.contains(&"memberships.csv".to_string()),
            algorithm == Algorithm::Fcm
        );
        assert!(names.contains(&"metrics.json".to_string()));
        files.push(fs::read_to_string(dir.join("seeds.json")).unwrap());
    }
    assert!(files.iter().all(|f| f == &files[0]));
    let seeds: serde_json::Value = serde_json::from_str(&files[0]).unwrap();
    assert_eq!(
        seeds,
        serde_json::json!([
            {"items": ["D2", "D4", "D6"], "support": 3},
            {"items": ["D7", "D9", "D10"], "support": 3}
        ])
    );
}

#[test]
fn clusters_csv_layout() {
    let tmp = tempfile::tempdir().unwrap();
    emit_report(&fixture_run(Algorithm::Cosine), tmp.path()).unwrap();
    let text = fs::read_to_string(tmp.path().join("clusters.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,cluster,membership");
    assert_eq!(lines[5], "D5,1,1.000000");
    assert_eq!(lines.len(), 11);
    let centroids = fs::read_to_string(tmp.path().join("centroids.csv")).unwrap();
    assert!(centroids.starts_with("cluster,website,application,people,"));
}

#[test]
fn unlabelled_run_has_no_metrics_file() {
    let corpus = match fixture::keyword_corpus() {
        Corpus::Keywords(mut docs) => {
            docs.iter_mut().for_each(|d| d.label = None);
            Corpus::Keywords(docs)
        }
        Corpus::Raw(_) => unreachable!(),
    };
    let report = run_pipeline(&corpus, &fixture::config(Algorithm::Fcm, 2.0)).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    emit_report(&report, tmp.path()).unwrap();
    assert!(!tmp.path().join("metrics.json").exists());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
    assert!(json["evaluation_note"].is_string());
    assert!(json.get("evaluation").is_none());
}

#[test]
fn too_high_support_names_the_feasible_one() {
    let cfg = PipelineConfig {
        min_sup: MinSupport::Count(11),
        ..fixture::config(Algorithm::Fcm, 2.0)
    };
    match run_pipeline(&fixture::keyword_corpus(), &cfg) {
        Err(Error::NoSeeds(Some(hint))) => {
            assert_eq!(hint.min_sup, 11);
            assert_eq!(hint.max_feasible, 4);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn fractional_support_rounds_up_over_terms() {
    // 30 terms, so 0.1 means 3
    let cfg = PipelineConfig {
        min_sup: "0.1".parse().unwrap(),
        ..fixture::config(Algorithm::Fcm, 2.0)
    };
    let r = run_pipeline(&fixture::keyword_corpus(), &cfg).unwrap();
    assert_eq!(r.settings.min_sup, 3);
    assert_eq!(r.seeds.len(), 2);
}

#[test]
fn directory_corpus_with_labels() {
    let tmp = tempfile::tempdir().unwrap();
    let corpus = fixture::raw_corpus();
    let Corpus::Raw(docs) = &corpus else {
        unreachable!()
    };
    let mut labels = String::from("id,label\n");
    for d in docs {
        fs::write(tmp.path().join(format!("{}.txt", d.id)), &d.text).unwrap();
        labels.push_str(&format!("{},{}\n", d.id, d.label.as_deref().unwrap()));
    }
    fs::write(tmp.path().join("labels.csv"), labels).unwrap();
    fs::write(tmp.path().join("notes.md"), "ignored").unwrap();

    let loaded = ingest_corpus(tmp.path(), CorpusFormat::Directory).unwrap();
    assert_eq!(loaded.len(), 10);
    // file names sort lexicographically
    assert_eq!(loaded.ids()[..3], ["D1", "D10", "D2"]);
    let social = loaded
        .labels()
        .iter()
        .filter(|l| l.as_deref() == Some("social"))
        .count();
    assert_eq!(social, 6);
}

#[test]
fn ingest_errors() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(matches!(
        ingest_corpus(tmp.path(), CorpusFormat::Directory),
        Err(Error::CorpusEmpty { .. })
    ));

    let dup = tmp.path().join("dup.jsonl");
    fs::write(
        &dup,
        "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n",
    )
    .unwrap();
    let err = ingest_corpus(&dup, CorpusFormat::Jsonl).unwrap_err();
    assert!(matches!(err, Error::DuplicateId { .. }));
    assert_eq!(err.exit_code(), 3);

    let empty = tmp.path().join("empty.jsonl");
    fs::write(&empty, "\n").unwrap();
    assert!(matches!(
        ingest_corpus(&empty, CorpusFormat::KeywordsJsonl),
        Err(Error::CorpusEmpty { .. })
    ));

    let err = ingest_corpus(&tmp.path().join("missing.jsonl"), CorpusFormat::Jsonl).unwrap_err();
    assert_eq!(err.exit_code(), 4);
}

#[test]
fn raw_text_matches_curated_lists_except_two() {
    let cfg = fixture::preprocess_config();
    let derived = fixture::raw_corpus().process(&cfg).unwrap();
    let curated = fixture::keyword_corpus().process(&cfg).unwrap();
    let differing: Vec<&str> = derived
        .iter()
        .zip(&curated)
        .filter(|(a, b)| a.keywords != b.keywords)
        .map(|(a, _)| a.id.as_str())
        .collect();
    assert_eq!(differing, ["D6", "D7"]);
    // same keywords, different order or multiplicity
    for id in differing {
        let d = derived.iter().find(|x| x.id == id).unwrap();
        let c = curated.iter().find(|x| x.id == id).unwrap();
        let mut a = d.keywords.clone();
        let mut b = c.keywords.clone();
        a.sort();
        a.dedup();
        b.sort();
        b.dedup();
        assert_eq!(a, b, "{id}");
    }
}
