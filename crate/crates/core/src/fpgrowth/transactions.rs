use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use indexmap::IndexSet;

use crate::corpus::TermDocumentMatrix;
use crate::error::{Error, Result};

/// A list of item sets. Items are dense indices into `items`, which holds
/// their external names (document ids when built from a term-document
/// matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDb {
    items: Vec<String>,
    transactions: Vec<Vec<usize>>,
}

impl TransactionDb {
    /// Build from named items and index transactions. Each transaction is
    /// sorted and deduplicated.
    pub fn new(items: Vec<String>, transactions: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(transactions.len());
        for (i, t) in transactions.into_iter().enumerate() {
            let set: BTreeSet<usize> = t.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&it| it >= items.len()) {
                return Err(Error::parse(
                    format!("transaction {i}"),
                    format!("item index {bad} out of range"),
                ));
            }
            clean.push(set.into_iter().collect());
        }
        Ok(TransactionDb {
            items,
            transactions: clean,
        })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn item_name(&self, item: usize) -> &str {
        &self.items[item]
    }

    pub fn transactions(&self) -> &[Vec<usize>] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Number of transactions containing every item of `itemset`.
    pub fn support(&self, itemset: &[usize]) -> u64 {
        self.transactions
            .iter()
            .filter(|t| itemset.iter().all(|i| t.binary_search(i).is_ok()))
            .count() as u64
    }

    /// Read the line format: one transaction per line, items separated by
    /// whitespace. Item names are interned in order of first appearance.
    /// Blank lines are empty transactions.
    pub fn read<R: BufRead>(reader: R, origin: &str) -> Result<Self> {
        let mut names: IndexSet<String> = IndexSet::new();
        let mut transactions = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line =
                line.map_err(|e| Error::parse(format!("{origin}:{}", lineno + 1), e.to_string()))?;
            let t = line
                .split_whitespace()
                .map(|tok| names.insert_full(tok.to_string()).0)
                .collect();
            transactions.push(t);
        }
        TransactionDb::new(names.into_iter().collect(), transactions)
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for t in &self.transactions {
            let line: Vec<&str> = t.iter().map(|&i| self.items[i].as_str()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Terms become transactions and documents become items: document `d` is in
/// the transaction for term `t` iff `t` occurs in `d` at least once.
pub fn transpose_to_transactions(tdm: &TermDocumentMatrix) -> TransactionDb {
    let transactions = (0..tdm.num_terms())
        .map(|t| {
            tdm.row(t)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c >= 1)
                .map(|(d, _)| d)
                .collect()
        })
        .collect();
    TransactionDb {
        items: tdm.doc_ids().to_vec(),
        transactions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format_round_trip() {
        let src = "a b\nb c a\n\nc\n";
        let db = TransactionDb::read(src.as_bytes(), "mem").unwrap();
        assert_eq!(db.items(), ["a", "b", "c"]);
        assert_eq!(db.len(), 4);
        assert_eq!(db.support(&[0, 1]), 2);
        let mut out = Vec::new();
        db.write(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a b\na b c\n\nc\n");
    }

    #[test]
    fn duplicates_collapse() {
        let db = TransactionDb::new(vec!["x".into()], vec![vec![0, 0]]).unwrap();
        assert_eq!(db.transactions()[0], vec![0]);
        assert!(TransactionDb::new(vec!["x".into()], vec![vec![1]]).is_err());
    }
}
