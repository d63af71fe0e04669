use std::collections::{BTreeMap, HashMap};

use super::TransactionDb;

#[derive(Debug, Clone)]
struct Node {
    /// `None` only for the root.
    item: Option<usize>,
    count: u64,
    parent: Option<usize>,
    children: BTreeMap<usize, usize>,
    /// Next node carrying the same item.
    next: Option<usize>,
}

/// One row of the header table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeaderEntry {
    pub item: usize,
    pub support: u64,
    head: Option<usize>,
    tail: Option<usize>,
}

/// Prefix tree over the frequent-item projections of a transaction
/// database. Header order is descending support with ties broken by
/// ascending item index; every root-to-node path follows that order.
#[derive(Debug, Clone)]
pub struct FpTree {
    nodes: Vec<Node>,
    header: Vec<HeaderEntry>,
    rank: HashMap<usize, usize>,
    min_sup: u64,
}

const ROOT: usize = 0;

impl FpTree {
    /// Two-scan construction: count supports, then insert each transaction's
    /// frequent items in header order.
    pub fn build(db: &TransactionDb, min_sup: u64) -> FpTree {
        let weighted: Vec<(&[usize], u64)> = db
            .transactions()
            .iter()
            .map(|t| (t.as_slice(), 1))
            .collect();
        FpTree::build_weighted(&weighted, min_sup)
    }

    pub(crate) fn build_weighted<T: AsRef<[usize]>>(
        transactions: &[(T, u64)],
        min_sup: u64,
    ) -> FpTree {
        let min_sup = min_sup.max(1);
        let mut support: BTreeMap<usize, u64> = BTreeMap::new();
        for (t, w) in transactions {
            for &item in t.as_ref() {
                *support.entry(item).or_default() += w;
            }
        }
        let mut frequent: Vec<(usize, u64)> =
            support.into_iter().filter(|&(_, s)| s >= min_sup).collect();
        frequent.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

        let rank = frequent
            .iter()
            .enumerate()
            .map(|(r, &(item, _))| (item, r))
            .collect();
        let header = frequent
            .iter()
            .map(|&(item, support)| HeaderEntry {
                item,
                support,
                head: None,
                tail: None,
            })
            .collect();
        let mut tree = FpTree {
            nodes: vec![Node {
                item: None,
                count: 0,
                parent: None,
                children: BTreeMap::new(),
                next: None,
            }],
            header,
            rank,
            min_sup,
        };

        let mut path = Vec::new();
        for (t, w) in transactions {
            path.clear();
            path.extend(
                t.as_ref()
                    .iter()
                    .copied()
                    .filter(|i| tree.rank.contains_key(i)),
            );
            path.sort_by_key(|i| tree.rank[i]);
            path.dedup();
            if !path.is_empty() {
                tree.insert(&path, *w);
            }
        }
        tree
    }

    fn insert(&mut self, path: &[usize], weight: u64) {
        let mut cur = ROOT;
        for &item in path {
            cur = match self.nodes[cur].children.get(&item) {
                Some(&child) => {
                    self.nodes[child].count += weight;
                    child
                }
                None => {
                    let idx = self.nodes.len();
                    self.nodes.push(Node {
                        item: Some(item),
                        count: weight,
                        parent: Some(cur),
                        children: BTreeMap::new(),
                        next: None,
                    });
                    self.nodes[cur].children.insert(item, idx);
                    let entry = &mut self.header[self.rank[&item]];
                    match entry.tail {
                        Some(tail) => self.nodes[tail].next = Some(idx),
                        None => entry.head = Some(idx),
                    }
                    entry.tail = Some(idx);
                    idx
                }
            };
        }
    }

    pub fn min_sup(&self) -> u64 {
        self.min_sup
    }

    /// Header table in frequency order.
    pub fn header(&self) -> &[HeaderEntry] {
        &self.header
    }

    /// True when the tree holds nothing but the root.
    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Counts of every node reachable through `item`'s node-link chain.
    pub fn chain_counts(&self, item: usize) -> Vec<u64> {
        self.chain(item).map(|n| self.nodes[n].count).collect()
    }

    fn chain(&self, item: usize) -> impl Iterator<Item = usize> + '_ {
        let head = self.rank.get(&item).and_then(|&r| self.header[r].head);
        std::iter::successors(head, move |&n| self.nodes[n].next)
    }

    /// Items on the path from the root down to (excluding) `node`, in
    /// header order.
    fn prefix(&self, node: usize) -> Vec<usize> {
        let mut items = Vec::new();
        let mut cur = self.nodes[node].parent;
        while let Some(n) = cur {
            if let Some(item) = self.nodes[n].item {
                items.push(item);
            }
            cur = self.nodes[n].parent;
        }
        items.reverse();
        items
    }

    /// The conditional pattern base of `item`: each prefix path leading to
    /// an `item` node, weighted by that node's count.
    pub fn conditional_pattern_base(&self, item: usize) -> Vec<(Vec<usize>, u64)> {
        self.chain(item)
            .map(|n| (self.prefix(n), self.nodes[n].count))
            .filter(|(p, _)| !p.is_empty())
            .collect()
    }

    /// Expand the tree back into weighted transactions: each node
    /// contributes its path with weight equal to its count minus the counts
    /// of its children.
    pub fn expand_paths(&self) -> Vec<(Vec<usize>, u64)> {
        self.expand_below(ROOT)
    }

    fn expand_below(&self, top: usize) -> Vec<(Vec<usize>, u64)> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = self.nodes[top]
            .children
            .values()
            .map(|&c| (c, Vec::new()))
            .collect();
        while let Some((n, mut path)) = stack.pop() {
            let node = &self.nodes[n];
            path.push(node.item.expect("non-root"));
            let below: u64 = node.children.values().map(|&c| self.nodes[c].count).sum();
            if node.count > below {
                out.push((path.clone(), node.count - below));
            }
            for &c in node.children.values() {
                stack.push((c, path.clone()));
            }
        }
        out.sort();
        out
    }

    /// If the root starts a single prefix path, return its `(item, count)`
    /// nodes down to and including the first branching node, plus the
    /// multipath part below it rebuilt as its own tree (empty when the
    /// whole tree is one path).
    pub(crate) fn split_single_prefix(&self) -> Option<(Vec<(usize, u64)>, FpTree)> {
        if self.nodes[ROOT].children.len() != 1 {
            return None;
        }
        let mut prefix = Vec::new();
        let mut cur = ROOT;
        loop {
            let children = &self.nodes[cur].children;
            if children.len() != 1 {
                break;
            }
            cur = *children.values().next().expect("one child");
            let node = &self.nodes[cur];
            prefix.push((node.item.expect("non-root"), node.count));
        }
        let rest = FpTree::build_weighted(&self.expand_below(cur), self.min_sup);
        Some((prefix, rest))
    }

    /// Structural invariants, used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, node) in self.nodes.iter().enumerate().skip(1) {
            let below: u64 = node.children.values().map(|&c| self.nodes[c].count).sum();
            if node.count < below {
                return Err(format!("node {i} count {} < children {below}", node.count));
            }
            let item = node.item.ok_or("non-root without item")?;
            if let Some(p) = node.parent.and_then(|p| self.nodes[p].item) {
                if self.rank[&p] >= self.rank[&item] {
                    return Err(format!("path order violated at node {i}"));
                }
            }
        }
        for entry in &self.header {
            let sum: u64 = self.chain_counts(entry.item).iter().sum();
            if sum != entry.support {
                return Err(format!(
                    "item {} chain sum {sum} != support {}",
                    entry.item, entry.support
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(txns: &[&[usize]], n_items: usize) -> TransactionDb {
        TransactionDb::new(
            (0..n_items).map(|i| i.to_string()).collect(),
            txns.iter().map(|t| t.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_db_gives_root_only() {
        let tree = FpTree::build(&db(&[], 0), 1);
        assert!(tree.is_empty());
        assert!(tree.header().is_empty());
    }

    #[test]
    fn single_transaction_is_one_path() {
        let tree = FpTree::build(&db(&[&[0, 1]], 2), 1);
        assert_eq!(tree.node_count(), 2);
        // equal support: ascending item order
        assert_eq!(tree.header()[0].item, 0);
        assert_eq!(tree.expand_paths(), vec![(vec![0, 1], 1)]);
    }

    #[test]
    fn shared_prefixes_are_merged() {
        let tree = FpTree::build(&db(&[&[0, 1], &[0, 1, 2], &[0, 2], &[1]], 3), 1);
        tree.check_invariants().unwrap();
        // supports: 0:3, 1:3, 2:2
        let supports: Vec<_> = tree.header().iter().map(|h| (h.item, h.support)).collect();
        assert_eq!(supports, vec![(0, 3), (1, 3), (2, 2)]);
        assert_eq!(tree.chain_counts(0), vec![3]);
        assert_eq!(tree.chain_counts(1), vec![2, 1]);
        assert_eq!(
            tree.conditional_pattern_base(2),
            vec![(vec![0, 1], 1), (vec![0], 1)]
        );
    }

    #[test]
    fn infrequent_items_are_dropped() {
        let tree = FpTree::build(&db(&[&[0, 1], &[0]], 2), 2);
        assert_eq!(tree.header().len(), 1);
        assert_eq!(tree.node_count(), 1);
    }

    #[test]
    fn single_prefix_split() {
        // 0:3 -> 1:3 -> {2:2, 3:1}
        let tree = FpTree::build(&db(&[&[0, 1, 2], &[0, 1, 2], &[0, 1, 3]], 4), 1);
        let (prefix, rest) = tree.split_single_prefix().unwrap();
        assert_eq!(prefix, vec![(0, 3), (1, 3)]);
        assert_eq!(rest.expand_paths(), vec![(vec![2], 2), (vec![3], 1)]);

        let branching = FpTree::build(&db(&[&[0], &[1]], 2), 1);
        assert!(branching.split_single_prefix().is_none());
    }
}
