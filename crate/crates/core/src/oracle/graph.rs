//! Reduction graphs: BFS closure of a term under a stepper, with
//! deterministic node ordering, α-canonical node identity, and caps.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::bang::{bang_redexes, BangError};
use crate::lsc::{lsc_redexes, Calculus};
use crate::sharing::sharing_redexes;
use crate::syntax::bang_term::BangTerm;
use crate::syntax::lsc_term::LscTerm;
use crate::syntax::sharing_term::SharingTerm;

/// Exploration caps for [`reachable_set`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_nodes: 10_000,
            max_depth: usize::MAX,
        }
    }
}

impl Caps {
    pub fn nodes(max_nodes: usize) -> Caps {
        Caps {
            max_nodes,
            ..Caps::default()
        }
    }
}

/// The BFS closure of a start term under a stepper. Nodes are α-canonical
/// representatives in discovery order; edges are deduplicated.
#[derive(Debug, Clone)]
pub struct ReductionGraph<T> {
    pub nodes: Vec<T>,
    /// (rule label, from index, to index)
    pub edges: Vec<(String, usize, usize)>,
    /// True when a cap stopped the exploration before closure.
    pub truncated: bool,
}

impl<T> ReductionGraph<T> {
    /// Indices of nodes with no outgoing edge (normal forms when the graph
    /// is not truncated).
    pub fn maximal_nodes(&self) -> Vec<usize> {
        let with_out: HashSet<usize> = self.edges.iter().map(|(_, f, _)| *f).collect();
        (0..self.nodes.len())
            .filter(|i| !with_out.contains(i))
            .collect()
    }
}

/// BFS closure of `t` under `stepper`, identifying nodes by the canonical
/// form computed by `canon` (printed form as the key).
pub fn reachable_set<T, F, C>(t: &T, stepper: F, canon: C, caps: &Caps) -> ReductionGraph<T>
where
    T: Clone + fmt::Display,
    F: Fn(&T) -> Vec<(String, T)>,
    C: Fn(&T) -> T,
{
    let mut nodes: Vec<T> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut edge_seen: HashSet<(String, usize, usize)> = HashSet::new();
    let mut truncated = false;

    let root = canon(t);
    index.insert(root.to_string(), 0);
    nodes.push(root);
    let mut queue: VecDeque<(usize, usize)> = [(0usize, 0usize)].into();

    while let Some((i, depth)) = queue.pop_front() {
        if depth >= caps.max_depth {
            truncated = true;
            continue;
        }
        for (label, next) in stepper(&nodes[i].clone()) {
            let cn = canon(&next);
            let key = cn.to_string();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if nodes.len() >= caps.max_nodes {
                        truncated = true;
                        continue;
                    }
                    let j = nodes.len();
                    index.insert(key, j);
                    nodes.push(cn);
                    queue.push_back((j, depth + 1));
                    j
                }
            };
            let e = (label, i, j);
            if edge_seen.insert(e.clone()) {
                edges.push(e);
            }
        }
    }
    ReductionGraph {
        nodes,
        edges,
        truncated,
    }
}

/// Reduction graph of an LSC term under one of the four calculi.
pub fn lsc_graph(t: &LscTerm, calc: Calculus, caps: &Caps) -> ReductionGraph<LscTerm> {
    reachable_set(
        t,
        |u| {
            lsc_redexes(u, calc)
                .into_iter()
                .map(|(r, v)| (r.to_string(), v))
                .collect()
        },
        |u| u.canon(),
        caps,
    )
}

/// Reduction graph of a sharing term under the full reduction →!.
pub fn sharing_graph(t: &SharingTerm, caps: &Caps) -> ReductionGraph<SharingTerm> {
    reachable_set(
        t,
        |u| {
            sharing_redexes(u)
                .into_iter()
                .map(|(r, v)| (r.to_string(), v))
                .collect()
        },
        |u| u.canon(),
        caps,
    )
}

/// Reduction graph of a Bang term (full or simplified reduction).
pub fn bang_graph(
    t: &BangTerm,
    simplified: bool,
    caps: &Caps,
) -> Result<ReductionGraph<BangTerm>, BangError> {
    // surface the simplified-mode error on the start term up front
    bang_redexes(t, simplified)?;
    Ok(reachable_set(
        t,
        |u| {
            bang_redexes(u, simplified)
                .map(|rs| {
                    rs.into_iter()
                        .map(|(r, v)| (r.to_string(), v))
                        .collect()
                })
                .unwrap_or_default()
        },
        |u| u.canon(),
        caps,
    ))
}
