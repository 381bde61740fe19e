//! Seeded random-graph generators: uniform G(n, m) controls and an
//! exact-edge-count preferential-attachment generator for scale-free
//! stand-ins.
//!
//! Every generator is a pure function of (parameters, seed), so experiments
//! reproduce bit-for-bit.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{m} edges requested but a simple graph on {n} nodes has at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("{m} edges cannot keep a preferential-attachment graph on {n} nodes connected (need at least {min})")]
    TooFewEdges { n: usize, m: usize, min: usize },
    #[error("preferential attachment needs at least {0} nodes")]
    TooFewNodes(usize),
}

/// Which generator to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Gnm,
    BarabasiAlbert,
}

/// A generator request: kind, node count, edge count, seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match self.kind {
            GenKind::Gnm => gnm(self.n, self.m, self.seed),
            GenKind::BarabasiAlbert => barabasi_albert(self.n, self.m, self.seed),
        }
    }
}

fn max_edges(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Uniform random simple graph with exactly `n` nodes and `m` distinct
/// edges, via Floyd's algorithm for sampling without replacement.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let max = if n == 0 { 0 } else { max_edges(n) };
    if m > max {
        return Err(GenError::TooManyEdges { n, m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: HashSet<usize> = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for j in (max - m)..max {
        let t = rng.gen_range(0..=j);
        let pick = if chosen.contains(&t) { j } else { t };
        chosen.insert(pick);
        edges.push(decode_pair(pick, n));
    }
    Ok(Graph::from_edges(n.max(1), &edges).expect("sampled edges are simple by construction"))
}

/// Maps a linear index in `0..n(n-1)/2` to the pair (u, v), u < v, in
/// lexicographic order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
fn decode_pair(index: usize, n: usize) -> (usize, usize) {
    // offset(u) = number of pairs with first element < u.
    let offset = |u: usize| u * (n - 1) - u * (u.saturating_sub(1)) / 2;
    let mut lo = 0usize;
    let mut hi = n - 1;
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if offset(mid) <= index {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let u = lo;
    let v = u + 1 + (index - offset(u));
    (u, v)
}

const SEED_CLIQUE: usize = 3;

/// Connected preferential-attachment graph with exactly `n` nodes and
/// `m_total` edges: a 3-node seed clique, then one node per step attaching
/// to distinct existing nodes with probability proportional to degree. The
/// per-step attachment counts are spread evenly (base count or base + 1)
/// so the final edge count lands exactly on `m_total`; steps whose count
/// exceeds the number of existing nodes attach to all of them and carry the
/// surplus forward.
pub fn barabasi_albert(n: usize, m_total: usize, seed: u64) -> Result<Graph, GenError> {
    if n < SEED_CLIQUE {
        return Err(GenError::TooFewNodes(SEED_CLIQUE));
    }
    let max = max_edges(n);
    if m_total > max {
        return Err(GenError::TooManyEdges { n, m: m_total, max });
    }
    // One edge per new node plus the 3 clique edges is the connectivity floor.
    let min = n - SEED_CLIQUE + 3;
    if m_total < min {
        return Err(GenError::TooFewEdges { n, m: m_total, min });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    // Degree-weighted endpoint pool: each edge contributes both endpoints.
    let mut pool: Vec<usize> = vec![0, 1, 0, 2, 1, 2];

    let steps = n - SEED_CLIQUE;
    if steps == 0 {
        return Ok(Graph::from_edges(n, &edges).expect("seed clique is simple"));
    }
    let new_edges = m_total - 3;
    let base = new_edges / steps;
    let extra = new_edges % steps;

    let mut carry = 0usize;
    let mut targets: Vec<usize> = Vec::new();
    for step in 0..steps {
        let node = SEED_CLIQUE + step;
        // Bresenham-style spread of the `extra` heavier steps.
        let want = base + usize::from((step + 1) * extra / steps > step * extra / steps) + carry;
        let count = want.min(node);
        carry = want - count;

        targets.clear();
        if count == node {
            targets.extend(0..node);
        } else {
            while targets.len() < count {
                let candidate = pool[rng.gen_range(0..pool.len())];
                if !targets.contains(&candidate) {
                    targets.push(candidate);
                }
            }
        }
        for &t in &targets {
            edges.push((node, t));
            pool.push(node);
            pool.push(t);
        }
    }
    debug_assert_eq!(carry, 0, "edge budget must be exhausted");
    debug_assert_eq!(edges.len(), m_total);
    Ok(Graph::from_edges(n, &edges).expect("attachment edges are simple by construction"))
}
