//! Small named graphs used by tests, examples and the CLI.

use super::Graph;

/// A class hierarchy with `subclass` and `method` edges.
pub fn class_tree() -> Graph {
    Graph::from_triples(&[
        ("Object", "subclass", "AbstractList"),
        ("Object", "method", "toString()"),
        ("AbstractList", "method", "size()"),
        ("AbstractList", "subclass", "ArrayList"),
        ("AbstractList", "subclass", "LinkedList"),
        ("LinkedList", "method", "addFront(element)"),
    ])
}

/// Two `a`-paths of lengths 3 and 7 from `src` to `tgt`.
pub fn power_dag() -> Graph {
    let short = ["src", "n1", "n2", "tgt"];
    let long = ["src", "m1", "m2", "m3", "m4", "m5", "m6", "tgt"];
    let mut triples = Vec::new();
    for path in [&short[..], &long[..]] {
        for w in path.windows(2) {
            triples.push((w[0], "a", w[1]));
        }
    }
    Graph::from_triples(&triples)
}

/// The labeled tree over `l1`, `l2`, `l3` with nodes `r`, `n1`..`n4`, `m`, `m21`.. and `m41`..
pub fn run_tree() -> Graph {
    Graph::from_triples(&[
        ("r", "l1", "n1"),
        ("n1", "l1", "n2"),
        ("n2", "l1", "n3"),
        ("n3", "l2", "n4"),
        ("n2", "l2", "m21"),
        ("m21", "l2", "m22"),
        ("m22", "l2", "m23"),
        ("n4", "l2", "m41"),
        ("m41", "l2", "m42"),
        ("r", "l3", "m"),
    ])
}

/// A chain `n0 → n1 → …` whose edges carry `labels` in order.
pub fn chain<S: AsRef<str>>(labels: &[S], alphabet: &[S]) -> Graph {
    let mut g = Graph::new(alphabet);
    g.ensure_node("n0");
    for (i, l) in labels.iter().enumerate() {
        g.ensure_node(&format!("n{}", i + 1));
        g.add_edge(&format!("n{i}"), l.as_ref(), &format!("n{}", i + 1))
            .expect("chain label is in the alphabet");
    }
    g
}

/// A single-label chain with `nodes` nodes.
pub fn unlabeled_chain(nodes: usize, label: &str) -> Graph {
    let labels = vec![label; nodes.saturating_sub(1)];
    chain(&labels, &[label])
}
