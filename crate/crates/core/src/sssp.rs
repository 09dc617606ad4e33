//! Breadth-first shortest-path DAGs.

use crate::error::Result;
use crate::graph::Graph;

/// Distance marker for nodes not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Shortest-path DAG rooted at one source.
///
/// Predecessors are not stored: `v` precedes `w` exactly when they are
/// adjacent and `dist[v] + 1 == dist[w]`, which [`SsspTree::preds`]
/// evaluates against the graph's adjacency.
///
/// A tree can be recomputed for another source in place; only the entries
/// touched by the previous search are reset.
#[derive(Debug, Clone)]
pub struct SsspTree<'g> {
    graph: &'g Graph,
    source: usize,
    dist: Vec<u32>,
    sigma: Vec<f64>,
    order: Vec<usize>,
}

/// Single-source BFS from `s`, counting shortest paths.
pub fn sssp_bfs(g: &Graph, s: usize) -> Result<SsspTree<'_>> {
    g.check_node(s)?;
    let mut tree = SsspTree::new(g);
    tree.compute(s);
    Ok(tree)
}

impl<'g> SsspTree<'g> {
    /// Unrooted tree with buffers sized for `graph`; call [`compute`] next.
    ///
    /// [`compute`]: SsspTree::compute
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        SsspTree {
            graph,
            source: usize::MAX,
            dist: vec![UNREACHABLE; n],
            sigma: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Runs BFS from `s`, replacing the previous contents.
    ///
    /// # Panics
    /// If `s` is not a node of the graph.
    pub fn compute(&mut self, s: usize) {
        for &u in &self.order {
            self.dist[u] = UNREACHABLE;
            self.sigma[u] = 0.0;
        }
        self.order.clear();
        self.source = s;
        self.dist[s] = 0;
        self.sigma[s] = 1.0;
        self.order.push(s);

        // `order` doubles as the FIFO queue.
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let next = self.dist[v] + 1;
            let sigma_v = self.sigma[v];
            for &w in self.graph.neighbors(v) {
                if self.dist[w] == UNREACHABLE {
                    self.dist[w] = next;
                    self.order.push(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += sigma_v;
                }
            }
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn source(&self) -> usize {
        self.source
    }

    /// Hop distance from the source, `None` when unreachable.
    pub fn dist(&self, v: usize) -> Option<u32> {
        (self.dist[v] != UNREACHABLE).then_some(self.dist[v])
    }

    /// Number of shortest paths from the source to `v` (0 if unreachable).
    pub fn sigma(&self, v: usize) -> f64 {
        self.sigma[v]
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigma
    }

    /// Reached nodes in BFS order. Popping from the back yields nodes in
    /// nonincreasing distance.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Predecessors of `w` on shortest paths from the source.
    pub fn preds(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        let dw = self.dist[w];
        self.graph
            .neighbors(w)
            .iter()
            .copied()
            .filter(move |&v| dw != UNREACHABLE && dw > 0 && self.dist[v] + 1 == dw)
    }
}
