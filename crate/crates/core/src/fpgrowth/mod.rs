//! Frequent document-set mining.
//!
//! The term-document matrix is transposed so that each term is a
//! transaction over the documents it occurs in. FP-growth then finds every
//! document set that shares at least `min_sup` terms, and the maximal ones
//! become cluster seeds.

mod mine;
mod transactions;
mod tree;

pub use mine::{fp_growth, fp_growth_with, maximal_filter, FpGrowthOptions, FrequentItemset};
pub use transactions::{transpose_to_transactions, TransactionDb};
pub use tree::{FpTree, HeaderEntry};

/// The highest `min_sup` at which at least one itemset of `min_size` or
/// more items is frequent. Zero when no transaction is that large.
pub fn max_feasible_support(db: &TransactionDb, min_size: usize) -> u64 {
    let min_size = min_size.max(1);
    if min_size == 1 {
        let mut counts = vec![0u64; db.items().len()];
        for t in db.transactions() {
            for &i in t {
                counts[i] += 1;
            }
        }
        return counts.into_iter().max().unwrap_or(0);
    }
    if min_size == 2 {
        let n = db.items().len();
        let mut pairs = vec![0u64; n * n];
        for t in db.transactions() {
            for (k, &a) in t.iter().enumerate() {
                for &b in &t[k + 1..] {
                    pairs[a * n + b] += 1;
                }
            }
        }
        return pairs.into_iter().max().unwrap_or(0);
    }
    // Larger sets: the pair bound caps the answer; walk down from it.
    let upper = max_feasible_support(db, 2);
    (1..=upper)
        .rev()
        .find(|&s| {
            fp_growth(&FpTree::build(db, s))
                .iter()
                .any(|set| set.len() >= min_size)
        })
        .unwrap_or(0)
}

/// For each `min_sup` in `supports`, the number of maximal sets with at
/// least `min_size` items. Mining cost grows quickly as support drops, so
/// callers should keep the range near the feasible maximum.
pub fn support_spectrum(
    db: &TransactionDb,
    min_size: usize,
    supports: impl IntoIterator<Item = u64>,
) -> Vec<(u64, usize)> {
    supports
        .into_iter()
        .map(|s| {
            let all = fp_growth(&FpTree::build(db, s));
            (s, maximal_filter(&all, min_size).len())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasible_support() {
        let db = TransactionDb::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![0, 1, 2], vec![0, 1], vec![0, 1, 3], vec![2]],
        )
        .unwrap();
        assert_eq!(max_feasible_support(&db, 1), 3);
        assert_eq!(max_feasible_support(&db, 2), 3);
        assert_eq!(max_feasible_support(&db, 3), 1);
        assert_eq!(max_feasible_support(&db, 4), 0);
        assert_eq!(
            support_spectrum(&db, 2, [3, 2, 1]),
            vec![(3, 1), (2, 1), (1, 2)]
        );
    }

    /// Enumerate all nonempty item subsets and count supports directly.
    fn brute_force(db: &TransactionDb, min_sup: u64) -> Vec<FrequentItemset> {
        let n = db.items().len();
        let mut out: Vec<FrequentItemset> = (1u32..(1 << n))
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
            .map(|items| {
                let support = db.support(&items);
                FrequentItemset { items, support }
            })
            .filter(|s| s.support >= min_sup.max(1))
            .collect();
        mine::sort_itemsets(&mut out);
        out
    }

    fn arb_db() -> impl proptest::strategy::Strategy<Value = TransactionDb> {
        use proptest::prelude::*;
        (1usize..=8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0..n, 0..=n), 0..=12).prop_map(
                move |txns| {
                    TransactionDb::new((0..n).map(|i| format!("i{i}")).collect(), txns).unwrap()
                },
            )
        })
    }

    proptest::proptest! {
        #[test]
        fn matches_brute_force(db in arb_db(), min_sup in 1u64..5) {
            let expected = brute_force(&db, min_sup);
            let tree = FpTree::build(&db, min_sup);
            tree.check_invariants().map_err(proptest::test_runner::TestCaseError::fail)?;
            for shortcut in [true, false] {
                let got = fp_growth_with(&tree, FpGrowthOptions { single_path_shortcut: shortcut });
                proptest::prop_assert_eq!(&got, &expected);
            }
        }

        #[test]
        fn subsets_of_frequent_sets_are_frequent(db in arb_db(), min_sup in 1u64..4) {
            let all = fp_growth(&FpTree::build(&db, min_sup));
            for set in &all {
                for drop in 0..set.len() {
                    let mut sub = set.items.clone();
                    sub.remove(drop);
                    if sub.is_empty() { continue; }
                    let found = all.iter().find(|s| s.items == sub);
                    proptest::prop_assert!(found.is_some_and(|s| s.support >= set.support));
                }
            }
        }

        #[test]
        fn tree_expands_to_frequent_projections(db in arb_db(), min_sup in 1u64..4) {
            let tree = FpTree::build(&db, min_sup);
            let frequent: Vec<usize> = tree.header().iter().map(|h| h.item).collect();
            let mut expected: std::collections::BTreeMap<Vec<usize>, u64> = Default::default();
            for t in db.transactions() {
                let mut proj: Vec<usize> = t.iter().copied().filter(|i| frequent.contains(i)).collect();
                if proj.is_empty() { continue; }
                proj.sort_by_key(|i| frequent.iter().position(|f| f == i));
                *expected.entry(proj).or_default() += 1;
            }
            let got: std::collections::BTreeMap<Vec<usize>, u64> = tree.expand_paths().into_iter().collect();
            proptest::prop_assert_eq!(got, expected);
        }

        #[test]
        fn maximal_sets_form_an_antichain(db in arb_db(), min_sup in 1u64..4, min_size in 1usize..3) {
            let all = fp_growth(&FpTree::build(&db, min_sup));
            let max = maximal_filter(&all, min_size);
            for a in &max {
                proptest::prop_assert!(a.len() >= min_size);
                for b in &max {
                    proptest::prop_assert!(a == b || !a.is_subset_of(b));
                }
            }
            // every frequent set of sufficient size sits under some maximal set
            for s in all.iter().filter(|s| s.len() >= min_size) {
                proptest::prop_assert!(max.iter().any(|m| s.is_subset_of(m)));
            }
        }
    }
}
