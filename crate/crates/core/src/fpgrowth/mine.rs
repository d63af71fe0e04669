use serde::{Deserialize, Serialize};

use super::tree::FpTree;

/// A set of items (ascending indices) with its absolute support count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrequentItemset {
    pub items: Vec<usize>,
    pub support: u64,
}

impl FrequentItemset {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Both item lists are sorted, so this is a merge walk.
    pub fn is_subset_of(&self, other: &FrequentItemset) -> bool {
        let mut it = other.items.iter();
        self.items.iter().all(|x| it.any(|y| y == x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpGrowthOptions {
    /// Enumerate a single prefix path's combinations directly instead of
    /// recursing through it. The result is identical either way.
    pub single_path_shortcut: bool,
}

impl Default for FpGrowthOptions {
    fn default() -> Self {
        FpGrowthOptions {
            single_path_shortcut: true,
        }
    }
}

/// Every itemset whose support reaches the tree's `min_sup`, with exact
/// supports, sorted by size descending then lexicographically by items.
pub fn fp_growth(tree: &FpTree) -> Vec<FrequentItemset> {
    fp_growth_with(tree, FpGrowthOptions::default())
}

pub fn fp_growth_with(tree: &FpTree, opts: FpGrowthOptions) -> Vec<FrequentItemset> {
    let mut out = Vec::new();
    grow(tree, &[], opts, &mut out);
    for set in &mut out {
        set.items.sort_unstable();
    }
    sort_itemsets(&mut out);
    debug_assert!(out.windows(2).all(|w| w[0].items != w[1].items));
    out
}

pub(crate) fn sort_itemsets(sets: &mut [FrequentItemset]) {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.items.cmp(&b.items)));
}

fn grow(tree: &FpTree, suffix: &[usize], opts: FpGrowthOptions, out: &mut Vec<FrequentItemset>) {
    if tree.is_empty() {
        return;
    }
    if opts.single_path_shortcut {
        if let Some((prefix, rest)) = tree.split_single_prefix() {
            let from_prefix = prefix_combinations(&prefix);
            let mut from_rest = Vec::new();
            grow_each_item(&rest, suffix, opts, &mut from_rest);
            for (combo, support) in &from_prefix {
                out.push(with_suffix(combo, suffix, *support));
                for q in &from_rest {
                    let mut items = combo.clone();
                    items.extend_from_slice(&q.items);
                    out.push(FrequentItemset {
                        items,
                        support: q.support,
                    });
                }
            }
            out.extend(from_rest);
            return;
        }
    }
    grow_each_item(tree, suffix, opts, out);
}

fn grow_each_item(
    tree: &FpTree,
    suffix: &[usize],
    opts: FpGrowthOptions,
    out: &mut Vec<FrequentItemset>,
) {
    // least frequent first, as in the classic presentation
    for entry in tree.header().iter().rev() {
        let beta: Vec<usize> = std::iter::once(entry.item)
            .chain(suffix.iter().copied())
            .collect();
        out.push(FrequentItemset {
            items: beta.clone(),
            support: entry.support,
        });
        let base = tree.conditional_pattern_base(entry.item);
        let conditional = FpTree::build_weighted(&base, tree.min_sup());
        if !conditional.is_empty() {
            grow(&conditional, &beta, opts, out);
        }
    }
}

/// Every nonempty combination of the prefix nodes. Counts never increase
/// going down a path, so a combination's support is the count of its
/// deepest node.
fn prefix_combinations(prefix: &[(usize, u64)]) -> Vec<(Vec<usize>, u64)> {
    let n = prefix.len();
    (1u64..(1 << n))
        .map(|mask| {
            let mut items = Vec::new();
            let mut support = u64::MAX;
            for (i, &(item, count)) in prefix.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    items.push(item);
                    support = support.min(count);
                }
            }
            (items, support)
        })
        .collect()
}

fn with_suffix(items: &[usize], suffix: &[usize], support: u64) -> FrequentItemset {
    FrequentItemset {
        items: items.iter().chain(suffix).copied().collect(),
        support,
    }
}

/// Keep the itemsets with at least `min_size` items that have no proper
/// superset in `patterns`. With `min_size = 1` this is the usual set of
/// maximal frequent itemsets. Because supersets are never smaller, raising
/// `min_size` only drops short maximal sets; it never promotes a
/// non-maximal one.
pub fn maximal_filter(patterns: &[FrequentItemset], min_size: usize) -> Vec<FrequentItemset> {
    let mut sorted = patterns.to_vec();
    sort_itemsets(&mut sorted);
    let mut kept: Vec<FrequentItemset> = Vec::new();
    for (i, p) in sorted.iter().enumerate() {
        if p.len() < min_size.max(1) {
            continue;
        }
        let dominated = sorted[..i]
            .iter()
            .any(|q| q.len() > p.len() && p.is_subset_of(q));
        if !dominated {
            kept.push(p.clone());
        }
    }
    kept
}
