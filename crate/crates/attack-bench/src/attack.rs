//! Attack planning and execution: the three edge-attack strategies (random,
//! initial-degree-based, initial-betweenness-based) and the performance
//! curves they produce.
//!
//! All strategies are initial-graph strategies: ranking scores are computed
//! once on the intact network and never recomputed during removal. Ties are
//! broken by ascending edge index, so plans are stable under the input edge
//! order.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AttackError {
    #[error("plan has {plan} edges but the graph has {graph}")]
    PlanMismatch { plan: usize, graph: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Random edge attack: edges removed in uniformly random order.
    Rne,
    /// Initial-graph degree-based attack: highest edge degree first.
    Ide,
    /// Initial-graph betweenness-based attack: highest edge betweenness first.
    Ibe,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Rne, Strategy::Ide, Strategy::Ibe];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::Rne => "rne",
            Strategy::Ide => "ide",
            Strategy::Ibe => "ibe",
        };
        f.write_str(name)
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rne" => Ok(Strategy::Rne),
            "ide" => Ok(Strategy::Ide),
            "ibe" => Ok(Strategy::Ibe),
            other => Err(format!("unknown strategy {other:?} (expected rne, ide or ibe)")),
        }
    }
}

/// Which normalized performance the curve reports: giant-component node
/// count over N, or giant-component edge count over M.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    NodeFraction,
    EdgeFraction,
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::NodeFraction => "node",
            Measure::EdgeFraction => "edge",
        })
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "node" | "node_fraction" => Ok(Measure::NodeFraction),
            "edge" | "edge_fraction" => Ok(Measure::EdgeFraction),
            other => Err(format!("unknown measure {other:?} (expected node or edge)")),
        }
    }
}

/// A total removal order over all edge indices for one strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackPlan {
    pub strategy: Strategy,
    /// Permutation of edge indices, first removed first.
    pub order: Vec<usize>,
    /// Ranking scores along `order` (non-increasing for IDE/IBE).
    pub scores: Option<Vec<f64>>,
}

/// Performance curve: point k is (k/M, s after removing the first k edges).
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceCurve {
    pub points: Vec<(f64, f64)>,
    pub measure: Measure,
    pub m_total: usize,
}

/// Edge degree of the edge `edge_index`: (x_i * x_j)^varpi over the degrees
/// of its endpoints in the initial graph.
pub fn edge_degree(graph: &Graph, edge_index: usize, varpi: f64) -> f64 {
    let (u, v) = graph.edges()[edge_index];
    let product = (graph.degree(u) * graph.degree(v)) as f64;
    product.powf(varpi)
}

/// Shortest-path edge betweenness for every edge (Brandes accumulation with
/// one BFS per source). Each unordered node pair is counted once, with its
/// weight split equally over all shortest paths between the pair.
/// Disconnected graphs are fine: unreachable pairs contribute nothing.
pub fn edge_betweenness(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let m = graph.edge_count();
    let mut scores = vec![0.0f64; m];

    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = VecDeque::with_capacity(n);
    for source in 0..n {
        let mut dist: Vec<i64> = vec![-1; n];
        let mut sigma: Vec<f64> = vec![0.0; n];
        let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut delta: Vec<f64> = vec![0.0; n];
        stack.clear();
        queue.clear();

        dist[source] = 0;
        sigma[source] = 1.0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &(w, edge) in graph.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push((v, edge));
                }
            }
        }
        for &w in stack.iter().rev() {
            for &(v, edge) in &preds[w] {
                let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                scores[edge] += credit;
                delta[v] += credit;
            }
        }
    }
    // Each unordered pair was visited from both endpoints.
    for score in &mut scores {
        *score *= 0.5;
    }
    scores
}

/// Uniformly random permutation of all edge indices, deterministic per seed.
pub fn plan_rne(graph: &Graph, seed: u64) -> AttackPlan {
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    AttackPlan {
        strategy: Strategy::Rne,
        order,
        scores: None,
    }
}

fn rank_by_scores(strategy: Strategy, scores: Vec<f64>) -> AttackPlan {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .expect("ranking scores are finite")
            .then(a.cmp(&b))
    });
    let ordered_scores = order.iter().map(|&e| scores[e]).collect();
    AttackPlan {
        strategy,
        order,
        scores: Some(ordered_scores),
    }
}

/// Edges sorted by initial edge degree, highest first, ties by edge index.
pub fn plan_ide(graph: &Graph, varpi: f64) -> AttackPlan {
    let scores: Vec<f64> = (0..graph.edge_count())
        .map(|e| edge_degree(graph, e, varpi))
        .collect();
    rank_by_scores(Strategy::Ide, scores)
}

/// Edges sorted by initial edge betweenness, highest first, ties by edge index.
pub fn plan_ibe(graph: &Graph) -> AttackPlan {
    rank_by_scores(Strategy::Ibe, edge_betweenness(graph))
}

pub fn plan(graph: &Graph, strategy: Strategy, varpi: f64, seed: u64) -> AttackPlan {
    match strategy {
        Strategy::Rne => plan_rne(graph, seed),
        Strategy::Ide => plan_ide(graph, varpi),
        Strategy::Ibe => plan_ibe(graph),
    }
}

/// Runs a plan to completion and reports the performance curve.
pub fn run_attack(
    graph: &Graph,
    plan: &AttackPlan,
    measure: Measure,
) -> Result<PerformanceCurve, AttackError> {
    if plan.order.len() != graph.edge_count() {
        return Err(AttackError::PlanMismatch {
            plan: plan.order.len(),
            graph: graph.edge_count(),
        });
    }
    let trajectory = graph.gcc_trajectory(&plan.order)?;
    let n = graph.node_count() as f64;
    let m = graph.edge_count() as f64;
    let points = trajectory
        .iter()
        .enumerate()
        .map(|(i, summary)| {
            let r = (i + 1) as f64 / m;
            let s = match measure {
                Measure::NodeFraction => summary.gcc_node_count as f64 / n,
                Measure::EdgeFraction => summary.gcc_edge_count as f64 / m,
            };
            (r, s)
        })
        .collect();
    Ok(PerformanceCurve {
        points,
        measure,
        m_total: graph.edge_count(),
    })
}
