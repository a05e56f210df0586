use serde::Serialize;

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Chain,
    Tree,
    Forest,
    General,
}

/// Shape of a graph computed on the union of its edge relations.
///
/// For chains, trees and forests `node_depth[i]` is the distance from the
/// root of the component containing `i`; it is empty for general graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCertificate {
    pub kind: GraphKind,
    pub root: Option<usize>,
    pub depth: usize,
    pub node_depth: Vec<usize>,
}

impl TreeCertificate {
    /// Chains count as trees.
    pub fn is_tree(&self) -> bool {
        matches!(self.kind, GraphKind::Tree | GraphKind::Chain)
    }
}

pub fn classify(g: &Graph) -> TreeCertificate {
    let n = g.node_count();
    let union = g.edge_union();
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for (i, j) in union.pairs() {
        indeg[j] += 1;
        outdeg[i] += 1;
    }
    let general = TreeCertificate {
        kind: GraphKind::General,
        root: None,
        depth: 0,
        node_depth: Vec::new(),
    };
    if indeg.iter().any(|&d| d > 1) {
        return general;
    }
    // With in-degree ≤ 1 every node has a unique parent chain; a BFS from the
    // roots reaches every node iff there is no cycle.
    let roots: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut node_depth = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &r in &roots {
        node_depth[r] = 0;
        queue.push_back(r);
    }
    while let Some(x) = queue.pop_front() {
        for y in union.successors(x) {
            node_depth[y] = node_depth[x] + 1;
            queue.push_back(y);
        }
    }
    if node_depth.iter().any(|&d| d == usize::MAX) {
        return general;
    }
    let depth = node_depth.iter().copied().max().unwrap_or(0);
    let kind = if roots.len() != 1 {
        GraphKind::Forest
    } else if outdeg.iter().all(|&d| d <= 1) {
        GraphKind::Chain
    } else {
        GraphKind::Tree
    };
    TreeCertificate {
        kind,
        root: if roots.len() == 1 { Some(roots[0]) } else { None },
        depth,
        node_depth,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_graphs, fixtures, standard_alphabet};
    use super::*;

    #[test]
    fn three_node_path_is_a_chain_of_depth_two() {
        let c = classify(&fixtures::unlabeled_chain(3, "a"));
        assert_eq!((c.kind, c.depth), (GraphKind::Chain, 2));
    }

    #[test]
    fn power_dag_is_general() {
        assert_eq!(classify(&fixtures::power_dag()).kind, GraphKind::General);
    }

    #[test]
    fn class_tree_is_rooted_at_object() {
        let g = fixtures::class_tree();
        let c = classify(&g);
        assert_eq!(c.kind, GraphKind::Tree);
        assert_eq!(c.root, g.node("Object"));
        assert_eq!(c.depth, 3);
    }

    fn brute_kind(g: &Graph) -> GraphKind {
        let n = g.node_count();
        let tc = g.edge_union().transitive_closure();
        let cyclic = (0..n).any(|i| tc.contains(i, i));
        let union = g.edge_union();
        let indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| union.contains(i, j)).count()).collect();
        if cyclic || indeg.iter().any(|&d| d > 1) {
            return GraphKind::General;
        }
        let roots = indeg.iter().filter(|&&d| d == 0).count();
        if roots != 1 {
            return GraphKind::Forest;
        }
        let chain = (0..n).all(|i| union.successors(i).count() <= 1);
        if chain {
            GraphKind::Chain
        } else {
            GraphKind::Tree
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        let alphabet = standard_alphabet(1);
        for g in enumerate_graphs(3, &alphabet, 9) {
            assert_eq!(classify(&g).kind, brute_kind(&g), "{g:?}");
        }
    }
}
