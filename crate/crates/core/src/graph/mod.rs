//! Edge-labeled graphs, tree/chain classification, enumeration and homomorphisms.

mod classify;
mod enumerate;
pub mod fixtures;
mod homomorphism;

pub use classify::{classify, GraphKind, TreeCertificate};
pub use enumerate::{
    enumerate, enumerate_chains, enumerate_graphs, enumerate_trees, instance_count,
    standard_alphabet, Bound, GraphClass,
};
pub use homomorphism::find_homomorphism;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// A finite graph with nodes `0..n` (named by strings) and one edge relation
/// per label.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<String>,
    edges: BTreeSet<(usize, usize, usize)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Graph {
        let mut labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        labels.sort();
        labels.dedup();
        Graph {
            nodes: Vec::new(),
            index: HashMap::new(),
            labels,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a graph from `(from, label, to)` triples; nodes are numbered in
    /// order of first appearance and the alphabet is the set of labels used.
    pub fn from_triples(triples: &[(&str, &str, &str)]) -> Graph {
        let labels: Vec<&str> = triples.iter().map(|t| t.1).collect();
        let mut g = Graph::new(&labels);
        for &(from, label, to) in triples {
            g.ensure_node(from);
            g.ensure_node(to);
            g.add_edge(from, label, to).expect("label is in the alphabet");
        }
        g
    }

    pub fn add_node(&mut self, name: &str) -> Result<usize, GraphError> {
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateNode(name.to_string()));
        }
        Ok(self.ensure_node(name))
    }

    pub fn ensure_node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn add_edge(&mut self, from: &str, label: &str, to: &str) -> Result<(), GraphError> {
        let f = self.node(from).ok_or_else(|| GraphError::UnknownNode(from.into()))?;
        let t = self.node(to).ok_or_else(|| GraphError::UnknownNode(to.into()))?;
        let l = self
            .label_index(label)
            .ok_or_else(|| GraphError::UnknownLabel(label.into()))?;
        self.edges.insert((f, l, t));
        Ok(())
    }

    pub(crate) fn add_edge_ix(&mut self, from: usize, label: usize, to: usize) {
        self.edges.insert((from, label, to));
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn node_names(&self) -> &[String] {
        &self.nodes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Edges as `(from, label index, to)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label_relation(&self, label: &str) -> Option<Relation> {
        let l = self.label_index(label)?;
        Some(Relation::from_pairs(
            self.node_count(),
            self.edges.iter().filter(|e| e.1 == l).map(|e| (e.0, e.2)),
        ))
    }

    /// One relation per label, in alphabet order.
    pub fn label_relations(&self) -> Vec<Relation> {
        let n = self.node_count();
        let mut rels = vec![Relation::empty(n); self.labels.len()];
        for &(f, l, t) in &self.edges {
            rels[l].insert(f, t);
        }
        rels
    }

    /// The union `E` of all edge relations.
    pub fn edge_union(&self) -> Relation {
        Relation::from_pairs(self.node_count(), self.edges.iter().map(|e| (e.0, e.2)))
    }

    /// True iff no ordered node pair carries two labels.
    pub fn validate_single_labeled(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(f, _, t)| seen.insert((f, t)))
    }

    /// Renders a relation over this graph as sorted node-name pairs.
    pub fn pairs_named(&self, r: &Relation) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = r
            .pairs()
            .map(|(i, j)| (self.nodes[i].clone(), self.nodes[j].clone()))
            .collect();
        v.sort();
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut g = Graph::new(&file.labels);
        for n in &file.nodes {
            g.add_node(n)?;
        }
        for e in &file.edges {
            g.add_edge(&e.from, &e.label, &e.to)?;
        }
        Ok(g)
    }

    fn to_file(&self) -> GraphFile {
        let mut nodes = self.nodes.clone();
        nodes.sort();
        let mut edges: Vec<EdgeFile> = self
            .edges
            .iter()
            .map(|&(f, l, t)| EdgeFile {
                from: self.nodes[f].clone(),
                to: self.nodes[t].clone(),
                label: self.labels[l].clone(),
            })
            .collect();
        edges.sort_by(|a, b| (&a.from, &a.to, &a.label).cmp(&(&b.from, &b.to, &b.label)));
        GraphFile {
            nodes,
            labels: self.labels.clone(),
            edges,
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    nodes: Vec<String>,
    labels: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    from: String,
    to: String,
    label: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_sorted() {
        let g = Graph::from_triples(&[("n1", "b", "n0"), ("n0", "a", "n1")]);
        let json = g.to_json();
        assert_eq!(
            json,
            r#"{"nodes":["n0","n1"],"labels":["a","b"],"edges":[{"from":"n0","to":"n1","label":"a"},{"from":"n1","to":"n0","label":"b"}]}"#
        );
        let back = Graph::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn json_rejects_unknown_label() {
        let text = r#"{"nodes":["x"],"labels":["a"],"edges":[{"from":"x","to":"x","label":"b"}]}"#;
        assert_eq!(Graph::from_json(text), Err(GraphError::UnknownLabel("b".into())));
    }

    #[test]
    fn single_labeled_check() {
        assert!(fixtures::class_tree().validate_single_labeled());
        assert!(fixtures::run_tree().validate_single_labeled());
        let g = Graph::from_triples(&[("m", "a", "n"), ("m", "b", "n")]);
        assert!(!g.validate_single_labeled());
    }
}
