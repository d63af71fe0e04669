use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the clustering pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("document `{id}` has no keywords left after preprocessing")]
    EmptyDocument { id: String },

    #[error("term `{term}` is not in the vocabulary")]
    UnknownTerm { term: String },

    #[error("zero-length vector: {context}")]
    ZeroVector { context: String },

    #[error("no frequent document-sets to seed clusters from{}", describe_hint(.0))]
    NoSeeds(Option<SeedHint>),

    #[error("cluster {cluster} has zero total membership weight")]
    DegenerateCluster { cluster: usize },

    #[error("document `{id}` has no class label")]
    MissingLabel { id: String },

    #[error("duplicate document id `{id}`")]
    DuplicateId { id: String },

    #[error("corpus at {path} contains no documents")]
    CorpusEmpty { path: PathBuf },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end.
    ///
    /// 2 is a configuration problem, 3 a bad input corpus, 4 an I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoSeeds(_) | Error::Config(_) => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }
}

/// Context attached to [`Error::NoSeeds`] by the pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedHint {
    pub min_sup: u64,
    pub min_set_size: usize,
    /// Highest support at which a set of `min_set_size` documents is frequent.
    pub max_feasible: u64,
}

fn describe_hint(hint: &Option<SeedHint>) -> String {
    match hint {
        None => String::new(),
        Some(h) => format!(
            " (min_sup {} with sets of >= {} documents; highest feasible min_sup is {})",
            h.min_sup, h.min_set_size, h.max_feasible
        ),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
