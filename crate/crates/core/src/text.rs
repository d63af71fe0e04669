//! Raw text to keyword lists: tokenizing, stopword removal, keyword
//! selection, stemming and canonical-form mapping.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::porter::porter_stem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A document reduced to its ordered keyword list. Duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessedDocument {
    pub id: String,
    pub keywords: Vec<String>,
}

impl ProcessedDocument {
    /// Build a document from an already-processed keyword list, checking it
    /// is nonempty and drawn from the tokenizer alphabet.
    pub fn new(id: impl Into<String>, keywords: Vec<String>) -> Result<Self> {
        let id = id.into();
        if keywords.is_empty() {
            return Err(Error::EmptyDocument { id });
        }
        if let Some(bad) = keywords.iter().find(|k| !is_token(k)) {
            return Err(Error::parse(
                format!("document `{id}`"),
                format!("keyword `{bad}` is not lowercase alphanumeric"),
            ));
        }
        Ok(ProcessedDocument { id, keywords })
    }
}

fn is_token(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PreprocessConfig {
    pub stopwords: BTreeSet<String>,
    /// When present, only these (unstemmed) tokens survive.
    pub keyword_allowlist: Option<BTreeSet<String>>,
    pub stemming_enabled: bool,
    /// Maps a surface token or a stem to the form that is emitted. The
    /// surface token is looked up first, then its stem.
    pub canonical_forms: BTreeMap<String, String>,
}

impl PreprocessConfig {
    pub fn new() -> Self {
        PreprocessConfig {
            stemming_enabled: true,
            ..Default::default()
        }
    }

    pub fn with_stopwords(mut self, stopwords: BTreeSet<String>) -> Self {
        self.stopwords = stopwords;
        self
    }

    pub fn with_allowlist(mut self, allowlist: BTreeSet<String>) -> Self {
        self.keyword_allowlist = Some(allowlist);
        self
    }

    pub fn with_canonical_forms(mut self, forms: BTreeMap<String, String>) -> Self {
        self.canonical_forms = forms;
        self
    }

    pub fn with_stemming(mut self, enabled: bool) -> Self {
        self.stemming_enabled = enabled;
        self
    }

    fn canonical(&self, surface: &str) -> String {
        if let Some(form) = self.canonical_forms.get(surface) {
            return form.clone();
        }
        let stem = if self.stemming_enabled {
            porter_stem(surface)
        } else {
            surface.to_string()
        };
        match self.canonical_forms.get(&stem) {
            Some(form) => form.clone(),
            None => stem,
        }
    }
}

/// Lowercased maximal runs of ASCII alphanumerics. Everything else,
/// including non-ASCII characters, separates tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_ascii_lowercase())
        .collect()
}

pub fn remove_stopwords(tokens: Vec<String>, stopwords: &BTreeSet<String>) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stopwords.contains(t))
        .collect()
}

pub fn apply_allowlist(tokens: Vec<String>, allowlist: Option<&BTreeSet<String>>) -> Vec<String> {
    match allowlist {
        None => tokens,
        Some(allow) => tokens.into_iter().filter(|t| allow.contains(t)).collect(),
    }
}

pub fn preprocess_document(doc: &RawDocument, cfg: &PreprocessConfig) -> Result<ProcessedDocument> {
    let tokens = remove_stopwords(tokenize(&doc.text), &cfg.stopwords);
    let keywords: Vec<String> = apply_allowlist(tokens, cfg.keyword_allowlist.as_ref())
        .iter()
        .map(|t| cfg.canonical(t))
        .collect();
    if keywords.is_empty() {
        return Err(Error::EmptyDocument { id: doc.id.clone() });
    }
    Ok(ProcessedDocument {
        id: doc.id.clone(),
        keywords,
    })
}

/// Parse a word list: one token per line, `#` starts a comment, blank lines
/// are skipped. Entries must be lowercase and free of whitespace.
pub fn parse_word_list(source: &str, origin: &str) -> Result<BTreeSet<String>> {
    let mut words = BTreeSet::new();
    for (lineno, line) in source.lines().enumerate() {
        let entry = strip_comment(line);
        if entry.is_empty() {
            continue;
        }
        if entry.split_whitespace().count() != 1 || entry.chars().any(|c| c.is_uppercase()) {
            return Err(Error::parse(
                format!("{origin}:{}", lineno + 1),
                format!("`{entry}` is not a single lowercase token"),
            ));
        }
        words.insert(entry.to_string());
    }
    Ok(words)
}

/// Parse a canonical-form table: `<form> <canonical>` per line, `#` comments.
pub fn parse_canonical_forms(source: &str, origin: &str) -> Result<BTreeMap<String, String>> {
    let mut forms = BTreeMap::new();
    for (lineno, line) in source.lines().enumerate() {
        let entry = strip_comment(line);
        if entry.is_empty() {
            continue;
        }
        let fields: Vec<&str> = entry.split_whitespace().collect();
        let [from, to] = fields[..] else {
            return Err(Error::parse(
                format!("{origin}:{}", lineno + 1),
                "expected `<form> <canonical>`",
            ));
        };
        forms.insert(from.to_string(), to.to_string());
    }
    Ok(forms)
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn load_word_list(path: &Path) -> Result<BTreeSet<String>> {
    let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_word_list(&source, &path.display().to_string())
}

pub fn load_canonical_forms(path: &Path) -> Result<BTreeMap<String, String>> {
    let source = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_canonical_forms(&source, &path.display().to_string())
}
