//! Immutable simple undirected graph with indexed edges, plus connectivity
//! queries used by the attack simulations.
//!
//! Invariants:
//! - No self-loops, no duplicate edges (unordered comparison).
//! - Edge indices are stable: `edges()[i]` never changes after construction.
//! - The edgeless remainder of a graph has a giant component of exactly one
//!   node, so the giant component is never empty.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("node id {node} out of range (node count {node_count})")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node count must be at least 1")]
    EmptyGraph,
    #[error("edge removal order is not a permutation of all edge indices")]
    NotAPermutation,
}

/// Simple undirected graph over dense node ids `0..node_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    /// Per-node list of (neighbor, edge index).
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Snapshot of the component structure of a (partially attacked) graph.
///
/// The giant component is the component with the most nodes; ties are broken
/// by the larger edge count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentSummary {
    pub gcc_node_count: usize,
    pub gcc_edge_count: usize,
    pub component_count: usize,
}

impl Graph {
    /// Builds a graph from `node_count` and a list of undirected edges.
    /// Edge indices follow input order.
    pub fn from_edges(
        node_count: usize,
        edge_pairs: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        if node_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut seen = HashSet::with_capacity(edge_pairs.len());
        let mut adjacency = vec![Vec::new(); node_count];
        for (idx, &(u, v)) in edge_pairs.iter().enumerate() {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for node in [u, v] {
                if node >= node_count {
                    return Err(GraphError::NodeOutOfRange { node, node_count });
                }
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u].push((v, idx));
            adjacency[v].push((u, idx));
        }
        Ok(Graph {
            node_count,
            edges: edge_pairs.to_vec(),
            adjacency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Neighbors of `node` as (neighbor, edge index) pairs.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Largest connected component of the graph with the given edges deleted,
    /// computed by BFS from scratch.
    ///
    /// Panics if `removed` contains an out-of-range edge index.
    pub fn giant_component(&self, removed: &HashSet<usize>) -> ComponentSummary {
        for &idx in removed {
            assert!(idx < self.edges.len(), "edge index {idx} out of range");
        }
        let mut visited = vec![false; self.node_count];
        let mut queue = Vec::new();
        let mut best = (0usize, 0usize);
        let mut component_count = 0usize;
        for start in 0..self.node_count {
            if visited[start] {
                continue;
            }
            component_count += 1;
            visited[start] = true;
            queue.clear();
            queue.push(start);
            let mut nodes = 0usize;
            let mut endpoint_sum = 0usize;
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                nodes += 1;
                for &(w, edge) in &self.adjacency[v] {
                    if removed.contains(&edge) {
                        continue;
                    }
                    endpoint_sum += 1;
                    if !visited[w] {
                        visited[w] = true;
                        queue.push(w);
                    }
                }
            }
            // Both endpoints of every surviving edge lie inside the component.
            let candidate = (nodes, endpoint_sum / 2);
            if candidate > best {
                best = candidate;
            }
        }
        ComponentSummary {
            gcc_node_count: best.0,
            gcc_edge_count: best.1,
            component_count,
        }
    }

    /// Giant-component summaries after each removal of `order`, which must be
    /// a permutation of all edge indices. Entry `k - 1` describes the graph
    /// with the first `k` edges of `order` removed.
    ///
    /// Computed offline: the order is processed in reverse with an incremental
    /// union-find, inserting edges back and merging components, then the
    /// result is reversed. Output-equivalent to per-step BFS recomputation.
    pub fn gcc_trajectory(&self, order: &[usize]) -> Result<Vec<ComponentSummary>, GraphError> {
        let m = self.edges.len();
        if order.len() != m {
            return Err(GraphError::NotAPermutation);
        }
        if m == 0 {
            return Ok(Vec::new());
        }
        let mut present = vec![false; m];
        for &idx in order {
            if idx >= m || present[idx] {
                return Err(GraphError::NotAPermutation);
            }
            present[idx] = true;
        }

        let mut dsu = DisjointSet::new(self.node_count);
        let mut component_count = self.node_count;
        // Component stats only grow while edges are inserted, so a running
        // lexicographic max over (nodes, edges) stays valid.
        let mut best = (1usize, 0usize);
        let mut out = Vec::with_capacity(m);
        out.push(ComponentSummary {
            gcc_node_count: best.0,
            gcc_edge_count: best.1,
            component_count,
        });
        for &edge in order[1..].iter().rev() {
            let (u, v) = self.edges[edge];
            let root = dsu.insert_edge(u, v);
            if dsu.merged_last {
                component_count -= 1;
            }
            let candidate = (dsu.size[root], dsu.edge_count[root]);
            if candidate > best {
                best = candidate;
            }
            out.push(ComponentSummary {
                gcc_node_count: best.0,
                gcc_edge_count: best.1,
                component_count,
            });
        }
        out.reverse();
        Ok(out)
    }
}

/// Union-find with per-root node and edge counts.
struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
    edge_count: Vec<usize>,
    merged_last: bool,
}

impl DisjointSet {
    fn new(n: usize) -> DisjointSet {
        DisjointSet {
            parent: (0..n).collect(),
            size: vec![1; n],
            edge_count: vec![0; n],
            merged_last: false,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Adds the edge (u, v), merging components if needed. Returns the root
    /// of the resulting component and records whether a merge happened.
    fn insert_edge(&mut self, u: usize, v: usize) -> usize {
        let ru = self.find(u);
        let rv = self.find(v);
        if ru == rv {
            self.merged_last = false;
            self.edge_count[ru] += 1;
            return ru;
        }
        self.merged_last = true;
        let (big, small) = if self.size[ru] >= self.size[rv] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.edge_count[big] += self.edge_count[small] + 1;
        big
    }
}
