//! Exhaustive generators for small trees, chains and graphs.
//!
//! Trees are generated from non-decreasing parent arrays (`parent[i] < i`),
//! which are exactly the breadth-first numberings of ordered trees, so every
//! unordered rooted tree appears at least once. Node `n0` is always the root.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    LabeledTree,
    UnlabeledTree,
    LabeledChain,
    UnlabeledChain,
    LabeledGraph,
    UnlabeledGraph,
}

impl GraphClass {
    pub const ALL: [GraphClass; 6] = [
        GraphClass::LabeledTree,
        GraphClass::UnlabeledTree,
        GraphClass::LabeledChain,
        GraphClass::UnlabeledChain,
        GraphClass::LabeledGraph,
        GraphClass::UnlabeledGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::LabeledTree => "labeled-tree",
            GraphClass::UnlabeledTree => "unlabeled-tree",
            GraphClass::LabeledChain => "labeled-chain",
            GraphClass::UnlabeledChain => "unlabeled-chain",
            GraphClass::LabeledGraph => "labeled-graph",
            GraphClass::UnlabeledGraph => "unlabeled-graph",
        }
    }

    pub fn is_unlabeled(self) -> bool {
        matches!(
            self,
            GraphClass::UnlabeledTree | GraphClass::UnlabeledChain | GraphClass::UnlabeledGraph
        )
    }

    pub fn is_chain(self) -> bool {
        matches!(self, GraphClass::LabeledChain | GraphClass::UnlabeledChain)
    }

    pub fn is_tree(self) -> bool {
        matches!(self, GraphClass::LabeledTree | GraphClass::UnlabeledTree) || self.is_chain()
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<GraphClass, String> {
        GraphClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown graph class `{s}`"))
    }
}

/// Enumeration bound. `max_edges` only limits general graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub max_nodes: usize,
    pub labels: usize,
    pub max_edges: usize,
}

impl Bound {
    pub fn new(max_nodes: usize, labels: usize) -> Bound {
        Bound {
            max_nodes,
            labels,
            max_edges: 5,
        }
    }

    pub fn with_max_edges(mut self, max_edges: usize) -> Bound {
        self.max_edges = max_edges;
        self
    }
}

/// `a`, `b`, … for small alphabets.
pub fn standard_alphabet(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("l{i}")
            }
        })
        .collect()
}

fn node_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("n{i}")).collect()
}

fn blank(n: usize, alphabet: &[String]) -> Graph {
    let mut g = Graph::new(alphabet);
    for name in node_names(n) {
        g.ensure_node(&name);
    }
    g
}

/// All non-decreasing parent arrays for trees with `n` nodes.
fn parent_arrays(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len() + 1;
        if i == n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for p in lo..i {
            cur.push(p);
            go(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        go(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every word of length `len` over `0..base`, lexicographically.
fn words(len: usize, base: usize) -> Box<dyn Iterator<Item = Vec<usize>>> {
    product((0..len).map(|_| 0..base).collect())
}

fn product(ranges: Vec<std::ops::Range<usize>>) -> Box<dyn Iterator<Item = Vec<usize>>> {
    if ranges.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(ranges.into_iter().multi_cartesian_product())
    }
}

/// Every single-labeled rooted tree with at most `max_nodes` nodes over `alphabet`.
pub fn enumerate_trees(max_nodes: usize, alphabet: &[String]) -> impl Iterator<Item = Graph> {
    let alphabet = alphabet.to_vec();
    (1..=max_nodes).flat_map(move |n| {
        let alphabet = alphabet.clone();
        parent_arrays(n).into_iter().flat_map(move |parents| {
            let alphabet = alphabet.clone();
            words(n - 1, alphabet.len()).map(move |labels| {
                let mut g = blank(n, &alphabet);
                for (i, (&p, &l)) in parents.iter().zip(&labels).enumerate() {
                    g.add_edge_ix(p, l, i + 1);
                }
                g
            })
        })
    })
}

/// Every labeled chain with at most `max_nodes` nodes over `alphabet`.
pub fn enumerate_chains(max_nodes: usize, alphabet: &[String]) -> impl Iterator<Item = Graph> {
    let alphabet = alphabet.to_vec();
    (1..=max_nodes).flat_map(move |n| {
        let alphabet = alphabet.clone();
        words(n - 1, alphabet.len()).map(move |labels| {
            let mut g = blank(n, &alphabet);
            for (i, &l) in labels.iter().enumerate() {
                g.add_edge_ix(i, l, i + 1);
            }
            g
        })
    })
}

/// Every graph with at most `max_nodes` nodes and at most `max_edges` labeled
/// edges (self-loops and parallel labels allowed).
pub fn enumerate_graphs(
    max_nodes: usize,
    alphabet: &[String],
    max_edges: usize,
) -> impl Iterator<Item = Graph> {
    let alphabet = alphabet.to_vec();
    (1..=max_nodes).flat_map(move |n| {
        let alphabet = alphabet.clone();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|f| (0..alphabet.len()).flat_map(move |l| (0..n).map(move |t| (f, l, t))))
            .collect();
        let top = max_edges.min(triples.len());
        (0..=top).flat_map(move |k| {
            let alphabet = alphabet.clone();
            triples.clone().into_iter().combinations(k).map(move |edges| {
                let mut g = blank(n, &alphabet);
                for (f, l, t) in edges {
                    g.add_edge_ix(f, l, t);
                }
                g
            })
        })
    })
}

/// Instances of `class` under `bound` over `alphabet`.
pub fn enumerate(class: GraphClass, alphabet: &[String], bound: Bound) -> Box<dyn Iterator<Item = Graph>> {
    match class {
        GraphClass::LabeledTree | GraphClass::UnlabeledTree => {
            Box::new(enumerate_trees(bound.max_nodes, alphabet))
        }
        GraphClass::LabeledChain | GraphClass::UnlabeledChain => {
            Box::new(enumerate_chains(bound.max_nodes, alphabet))
        }
        GraphClass::LabeledGraph | GraphClass::UnlabeledGraph => {
            Box::new(enumerate_graphs(bound.max_nodes, alphabet, bound.max_edges))
        }
    }
}

fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of instances `enumerate` yields, saturating at `u128::MAX`.
pub fn instance_count(class: GraphClass, labels: usize, bound: Bound) -> u128 {
    let l = labels as u128;
    let pow = |e: usize| l.checked_pow(e as u32).unwrap_or(u128::MAX);
    let mut total: u128 = 0;
    for n in 1..=bound.max_nodes {
        let c = match class {
            GraphClass::LabeledTree | GraphClass::UnlabeledTree => catalan(n - 1).saturating_mul(pow(n - 1)),
            GraphClass::LabeledChain | GraphClass::UnlabeledChain => pow(n - 1),
            GraphClass::LabeledGraph | GraphClass::UnlabeledGraph => {
                let m = (n * n) as u128 * l;
                (0..=(bound.max_edges as u128).min(m)).map(|k| binomial(m, k)).fold(0u128, u128::saturating_add)
            }
        };
        total = total.saturating_add(c);
    }
    total
}
