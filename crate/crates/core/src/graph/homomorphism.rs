use std::collections::HashSet;

use super::Graph;

/// Backtracking search for a label-preserving map `h` from the nodes of `g1`
/// to the nodes of `g2`. Labels are matched by name.
///
/// Returns `h` as a vector indexed by `g1` nodes.
pub fn find_homomorphism(g1: &Graph, g2: &Graph, injective: bool) -> Option<Vec<usize>> {
    let mut label_map = Vec::with_capacity(g1.labels().len());
    for l in g1.labels() {
        label_map.push(g2.label_index(l));
    }
    let mut constraints: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); g1.node_count()];
    for (f, l, t) in g1.edges() {
        let l2 = label_map[l]?;
        // Check each edge once, when the later of its endpoints is assigned.
        if f >= t {
            constraints[f].push((t, l2, true));
        } else {
            constraints[t].push((f, l2, false));
        }
    }
    let target: HashSet<(usize, usize, usize)> = g2.edges().collect();
    let mut search = Search {
        n2: g2.node_count(),
        constraints,
        target,
        injective,
        map: Vec::new(),
        used: vec![false; g2.node_count()],
    };
    if search.extend() {
        Some(search.map)
    } else {
        None
    }
}

struct Search {
    n2: usize,
    /// For node `x`: `(other, label, x_is_source)` with `other <= x`.
    constraints: Vec<Vec<(usize, usize, bool)>>,
    target: HashSet<(usize, usize, usize)>,
    injective: bool,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search {
    fn extend(&mut self) -> bool {
        let x = self.map.len();
        if x == self.constraints.len() {
            return true;
        }
        for y in 0..self.n2 {
            if self.injective && self.used[y] {
                continue;
            }
            if !self.consistent(x, y) {
                continue;
            }
            self.map.push(y);
            self.used[y] = true;
            if self.extend() {
                return true;
            }
            self.map.pop();
            self.used[y] = false;
        }
        false
    }

    fn consistent(&self, x: usize, y: usize) -> bool {
        self.constraints[x].iter().all(|&(other, l, x_is_source)| {
            let o = if other == x { y } else { self.map[other] };
            let edge = if x_is_source { (y, l, o) } else { (o, l, y) };
            self.target.contains(&edge)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::unlabeled_chain;
    use super::*;

    fn check(g1: &Graph, g2: &Graph, h: &[usize]) {
        let edges: HashSet<_> = g2.edges().collect();
        for (f, l, t) in g1.edges() {
            let l2 = g2.label_index(&g1.labels()[l]).unwrap();
            assert!(edges.contains(&(h[f], l2, h[t])));
        }
    }

    #[test]
    fn short_chain_into_long_chain_injectively() {
        let (c3, c5) = (unlabeled_chain(3, "a"), unlabeled_chain(5, "a"));
        let h = find_homomorphism(&c3, &c5, true).unwrap();
        check(&c3, &c5, &h);
    }

    #[test]
    fn depth_two_tree_onto_three_node_chain() {
        let t = Graph::from_triples(&[("r", "a", "x"), ("r", "a", "y"), ("x", "a", "z")]);
        let c = unlabeled_chain(3, "a");
        let h = find_homomorphism(&t, &c, false).unwrap();
        check(&t, &c, &h);
        assert!(find_homomorphism(&t, &c, true).is_none());
    }

    #[test]
    fn long_chain_does_not_map_into_short_chain() {
        let (c5, c3) = (unlabeled_chain(5, "a"), unlabeled_chain(3, "a"));
        assert!(find_homomorphism(&c5, &c3, false).is_none());
        assert!(find_homomorphism(&c5, &c3, true).is_none());
    }

    #[test]
    fn self_loops_and_label_mismatch() {
        let loop_ = Graph::from_triples(&[("x", "a", "x")]);
        let c = unlabeled_chain(4, "a");
        assert!(find_homomorphism(&c, &loop_, false).is_some());
        assert!(find_homomorphism(&loop_, &c, false).is_none());
        let b = Graph::from_triples(&[("x", "b", "y")]);
        assert!(find_homomorphism(&b, &c, false).is_none());
    }
}
