use std::collections::HashMap;

use super::{ConditionAutomaton, Step};
use crate::eval::{EvalError, Evaluator};
use crate::graph::{enumerate_trees, Graph};
use crate::relation::{NodeSet, Relation};

/// Per-graph evaluation context: label relations and lazily computed
/// satisfaction sets for each state.
pub struct RunCounter<'a, 'g> {
    automaton: &'a ConditionAutomaton,
    ev: Evaluator<'g>,
    sat: Vec<Option<NodeSet>>,
    /// For each state: `(label relation index or None for ID, target)`.
    out: Vec<Vec<(Option<usize>, usize)>>,
    rels: Vec<Relation>,
}

impl<'a, 'g> RunCounter<'a, 'g> {
    pub fn new(automaton: &'a ConditionAutomaton, graph: &'g Graph) -> RunCounter<'a, 'g> {
        let ev = Evaluator::new(graph);
        let n = graph.node_count();
        let mut rels = Vec::new();
        let mut rel_index: HashMap<&str, usize> = HashMap::new();
        let mut out = vec![Vec::new(); automaton.state_count()];
        for (p, step, q) in automaton.transitions() {
            let idx = match step {
                Step::Id => None,
                Step::Label(l) => Some(*rel_index.entry(l.as_str()).or_insert_with(|| {
                    rels.push(ev.label(l).cloned().unwrap_or_else(|| Relation::empty(n)));
                    rels.len() - 1
                })),
            };
            out[*p].push((idx, *q));
        }
        RunCounter {
            automaton,
            ev,
            sat: vec![None; automaton.state_count()],
            out,
            rels,
        }
    }

    /// Nodes satisfying `ĉ(q)`.
    pub fn sat(&mut self, q: usize) -> Result<&NodeSet, EvalError> {
        if self.sat[q].is_none() {
            let mut s = NodeSet::full(self.ev.graph().node_count());
            for c in self.automaton.gamma(q) {
                s.intersect_with(&self.ev.holds_at(c)?);
            }
            self.sat[q] = Some(s);
        }
        Ok(self.sat[q].as_ref().expect("just filled"))
    }

    fn sat_contains(&mut self, q: usize, node: usize) -> Result<bool, EvalError> {
        Ok(self.sat(q)?.contains(node))
    }

    /// `⟦A⟧(G)` by reachability over `states × nodes` from each start node.
    pub fn evaluate(&mut self) -> Result<Relation, EvalError> {
        let n = self.ev.graph().node_count();
        let s = self.automaton.state_count();
        let mut result = Relation::empty(n);
        for m in 0..n {
            let mut seen = vec![false; s * n];
            let mut stack = Vec::new();
            for &q in self.automaton.initials() {
                if self.sat_contains(q, m)? {
                    seen[q * n + m] = true;
                    stack.push((q, m));
                }
            }
            while let Some((q, x)) = stack.pop() {
                if self.automaton.is_final(q) {
                    result.insert(m, x);
                }
                for k in 0..self.out[q].len() {
                    let (rel, p) = self.out[q][k];
                    let targets: Vec<usize> = match rel {
                        None => vec![x],
                        Some(r) => self.rels[r].successors(x).collect(),
                    };
                    for y in targets {
                        if !seen[p * n + y] && self.sat_contains(p, y)? {
                            seen[p * n + y] = true;
                            stack.push((p, y));
                        }
                    }
                }
            }
        }
        Ok(result)
    }
}

/// Whether `node` satisfies the conditions of state `q`.
pub fn satisfies(g: &Graph, node: usize, q: usize, a: &ConditionAutomaton) -> Result<bool, EvalError> {
    RunCounter::new(a, g).sat_contains(q, node)
}

/// `⟦A⟧(G)`: pairs `(m, n)` joined by an accepting run.
pub fn eval_automaton(a: &ConditionAutomaton, g: &Graph) -> Result<Relation, EvalError> {
    RunCounter::new(a, g).evaluate()
}

/// Number of runs of an identity-free automaton from an initial state at `m`
/// down to every descendant-or-self of `m` in a tree, indexed by node.
/// Counts saturate; nodes outside the subtree of `m` get `None`.
pub fn count_runs_on_tree(a: &ConditionAutomaton, tree: &Graph, m: usize) -> Result<Vec<Option<u64>>, EvalError> {
    let mut rc = RunCounter::new(a, tree);
    let n = tree.node_count();
    let s = a.state_count();
    let mut totals = vec![None; n];
    let mut counts: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut start = vec![0u64; s];
    for &q in a.initials() {
        if rc.sat_contains(q, m)? {
            start[q] = 1;
        }
    }
    counts[m] = Some(start);
    let children: Vec<Vec<(usize, usize)>> = {
        let mut ch = vec![Vec::new(); n];
        for (f, l, t) in tree.edges() {
            ch[f].push((l, t));
        }
        ch
    };
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        let cx = counts[x].take().expect("visited once on a tree");
        totals[x] = Some(cx.iter().fold(0u64, |a, b| a.saturating_add(*b)));
        for &(l, y) in &children[x] {
            let label = Step::Label(tree.labels()[l].clone());
            let mut cy = vec![0u64; s];
            for (p, step, q) in a.transitions() {
                if *step == label && cx[*p] > 0 && rc.sat_contains(*q, y)? {
                    cy[*q] = cy[*q].saturating_add(cx[*p]);
                }
            }
            counts[y] = Some(cy);
            stack.push(y);
        }
    }
    Ok(totals)
}

/// Exactly one run from an initial state over every ancestor-or-self path, on
/// every tree with at most `max_nodes` nodes over the automaton's alphabet.
pub fn check_deterministic(a: &ConditionAutomaton, max_nodes: usize) -> Result<bool, EvalError> {
    if !a.is_identity_free() {
        return Ok(false);
    }
    let alphabet: Vec<String> = a.alphabet().iter().cloned().collect();
    for tree in enumerate_trees(max_nodes, &alphabet) {
        for m in 0..tree.node_count() {
            let totals = count_runs_on_tree(a, &tree, m)?;
            if totals.iter().flatten().any(|&t| t != 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::examples;
    use super::*;
    use crate::expr::parse;
    use crate::graph::fixtures;

    #[test]
    fn looping_state_on_the_run_tree() {
        let (g, a) = (fixtures::run_tree(), examples::looping());
        let q2 = a.state_by_name("q2").unwrap();
        assert!(satisfies(&g, g.node("n2").unwrap(), q2, &a).unwrap());
        assert!(!satisfies(&g, g.node("n1").unwrap(), q2, &a).unwrap());
    }

    #[test]
    fn state_without_conditions_holds_everywhere() {
        let g = fixtures::run_tree();
        let a = examples::looping();
        let q3 = a.state_by_name("q3").unwrap();
        assert!((0..g.node_count()).all(|n| satisfies(&g, n, q3, &a).unwrap()));
    }

    #[test]
    fn looping_accepts_the_worked_runs() {
        let (g, a) = (fixtures::run_tree(), examples::looping());
        let pairs = g.pairs_named(&eval_automaton(&a, &g).unwrap());
        assert!(pairs.contains(&("r".into(), "m".into())));
        assert!(pairs.contains(&("n1".into(), "n4".into())));
        assert!(!pairs.contains(&("n1".into(), "n2".into())));
    }

    #[test]
    fn initial_final_state_accepts_empty_run() {
        let mut a = ConditionAutomaton::new();
        let v = a.add_state("v");
        a.add_initial(v);
        a.add_final(v);
        let g = fixtures::unlabeled_chain(1, "a");
        assert_eq!(g.pairs_named(&eval_automaton(&a, &g).unwrap()), vec![("n0".into(), "n0".into())]);
    }

    #[test]
    fn determinism_of_the_worked_automata() {
        assert!(check_deterministic(&examples::five_state_deterministic(), 5).unwrap());
        assert!(!check_deterministic(&examples::looping(), 4).unwrap());
    }

    #[test]
    fn single_label_automaton_is_not_deterministic_over_two_labels() {
        let mut a = ConditionAutomaton::new();
        let v = a.add_state("v");
        let w = a.add_state("w");
        a.add_initial(v);
        a.add_final(w);
        a.add_transition(v, Step::label("l"), w);
        a.add_label("l2");
        assert!(!check_deterministic(&a, 2).unwrap());
    }

    #[test]
    fn conditions_are_evaluated_recursively() {
        let mut a = ConditionAutomaton::new();
        let v = a.add_state("v");
        a.add_initial(v);
        a.add_final(v);
        a.add_condition(v, parse("pi1(a . pi1(b))").unwrap());
        let g = Graph::from_triples(&[("x", "a", "y"), ("y", "b", "z"), ("z", "a", "w")]);
        let pairs = g.pairs_named(&eval_automaton(&a, &g).unwrap());
        assert_eq!(pairs, vec![("x".into(), "x".into())]);
    }
}
