//! Immutable undirected simple graph in compressed adjacency form.
//!
//! Nodes are dense ids `0..n`. Every node keeps the label it was loaded
//! with so results can be reported against the original input.

use std::collections::VecDeque;

use crate::error::{BcError, Result};

/// Undirected simple graph stored as sorted adjacency lists.
///
/// Construction drops self-loops and collapses parallel edges, so the
/// adjacency is always symmetric and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<String>,
}

impl Graph {
    /// Empty graph with no nodes.
    pub fn empty() -> Self {
        Graph {
            offsets: vec![0],
            targets: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Builds a graph on `n` nodes labelled `"0".."n-1"`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose node `i` carries `labels[i]`.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n {
                return Err(BcError::NodeOutOfRange { node: u, n });
            }
            if v >= n {
                return Err(BcError::NodeOutOfRange { node: v, n });
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Ok(Graph {
            offsets,
            targets,
            labels,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_node(&self, u: usize) -> Result<()> {
        if u < self.n() {
            Ok(())
        } else {
            Err(BcError::NodeOutOfRange { node: u, n: self.n() })
        }
    }

    /// Subgraph induced by the nodes with `keep[u] == true`.
    ///
    /// Returns the subgraph together with the map from its ids back to ids
    /// of `self`. Kept nodes retain their relative order, so when nothing
    /// is dropped the result is identical to `self`.
    pub fn induced_subgraph(&self, keep: &[bool]) -> (Graph, Vec<usize>) {
        assert_eq!(keep.len(), self.n(), "mask length must equal node count");
        let old_ids: Vec<usize> = (0..self.n()).filter(|&u| keep[u]).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &u) in old_ids.iter().enumerate() {
            new_id[u] = i;
        }
        let mut offsets = Vec::with_capacity(old_ids.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &u in &old_ids {
            // Neighbor lists stay sorted because the id map is monotone.
            targets.extend(
                self.neighbors(u)
                    .iter()
                    .filter(|&&v| keep[v])
                    .map(|&v| new_id[v]),
            );
            offsets.push(targets.len());
        }
        let labels = old_ids.iter().map(|&u| self.labels[u].clone()).collect();
        (
            Graph {
                offsets,
                targets,
                labels,
            },
            old_ids,
        )
    }

    /// Size of the connected component containing each node.
    pub fn component_sizes(&self) -> Vec<usize> {
        let (comp, sizes) = self.components();
        comp.into_iter().map(|c| sizes[c]).collect()
    }

    /// Component id of each node (ids in order of smallest member) and the
    /// size of each component.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            comp[root] = id;
            queue.push_back(root);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            sizes.push(size);
        }
        (comp, sizes)
    }

    /// Order in which results are reported: numeric when every label parses
    /// as an integer, lexicographic otherwise.
    pub fn label_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        let numeric: Option<Vec<i64>> = self.labels.iter().map(|l| l.parse().ok()).collect();
        match numeric {
            Some(keys) => order.sort_by_key(|&u| keys[u]),
            None => order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b])),
        }
        order
    }
}
