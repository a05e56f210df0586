//! Evaluation of expressions on graphs, and bounded equivalence oracles.

mod oracle;

pub use oracle::{
    boolean_equivalent, check_equivalence, find_counterexample, instances, oracle_alphabet,
    path_equivalent, EquivVerdict, OracleConfig, OracleError, Semantics, VerdictStatus,
    DEFAULT_CEILING,
};

use std::collections::HashMap;

use crate::expr::Expr;
use crate::graph::Graph;
use crate::relation::{NodeSet, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("label `{0}` is not in the graph's alphabet")]
    UnknownLabel(String),
}

/// `⟦e⟧(g)`.
pub fn evaluate(e: &Expr, g: &Graph) -> Result<Relation, EvalError> {
    Evaluator::new(g).eval(e)
}

/// Evaluates many expressions over one graph, sharing the per-label relations
/// and memoizing results of `eval_cached`.
pub struct Evaluator<'g> {
    graph: &'g Graph,
    labels: Vec<Relation>,
    memo: HashMap<Expr, Relation>,
}

impl<'g> Evaluator<'g> {
    pub fn new(graph: &'g Graph) -> Evaluator<'g> {
        Evaluator {
            graph,
            labels: graph.label_relations(),
            memo: HashMap::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn label(&self, name: &str) -> Option<&Relation> {
        self.graph.label_index(name).map(|i| &self.labels[i])
    }

    /// Like `eval`, but remembers the result for `e`.
    pub fn eval_cached(&mut self, e: &Expr) -> Result<Relation, EvalError> {
        if let Some(r) = self.memo.get(e) {
            return Ok(r.clone());
        }
        let r = self.eval(e)?;
        self.memo.insert(e.clone(), r.clone());
        Ok(r)
    }

    /// Nodes `n` with `(n, n)` in `⟦c⟧`, memoized.
    pub fn holds_at(&mut self, c: &Expr) -> Result<NodeSet, EvalError> {
        let r = self.eval_cached(c)?;
        let n = self.graph.node_count();
        let mut s = NodeSet::empty(n);
        for i in 0..n {
            if r.contains(i, i) {
                s.insert(i);
            }
        }
        Ok(s)
    }

    pub fn eval(&self, e: &Expr) -> Result<Relation, EvalError> {
        let n = self.graph.node_count();
        Ok(match e {
            Expr::Empty => Relation::empty(n),
            Expr::Identity => Relation::identity(n),
            Expr::Diversity => Relation::diversity(n),
            Expr::Label(l) => self
                .label(l)
                .cloned()
                .ok_or_else(|| EvalError::UnknownLabel(l.clone()))?,
            Expr::Converse(a) => self.eval(a)?.converse(),
            Expr::TransClosure(a) => self.eval(a)?.transitive_closure(),
            Expr::Proj1(a) => Relation::diagonal(n, &self.eval(a)?.domain()),
            Expr::Proj2(a) => Relation::diagonal(n, &self.eval(a)?.range()),
            Expr::Coproj1(a) => Relation::identity(n).difference(&Relation::diagonal(n, &self.eval(a)?.domain())),
            Expr::Coproj2(a) => Relation::identity(n).difference(&Relation::diagonal(n, &self.eval(a)?.range())),
            Expr::Compose(a, b) => self.eval(a)?.compose(&self.eval(b)?),
            Expr::Union(a, b) => self.eval(a)?.union(&self.eval(b)?),
            Expr::Intersect(a, b) => self.eval(a)?.intersect(&self.eval(b)?),
            Expr::Difference(a, b) => self.eval(a)?.difference(&self.eval(b)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::graph::fixtures;

    fn named(e: &str, g: &Graph) -> Vec<(String, String)> {
        g.pairs_named(&evaluate(&parse(e).unwrap(), g).unwrap())
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        let mut out: Vec<_> = v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        out.sort();
        out
    }

    #[test]
    fn identity_on_a_chain() {
        let g = fixtures::unlabeled_chain(3, "a");
        assert_eq!(named("id", &g), pairs(&[("n0", "n0"), ("n1", "n1"), ("n2", "n2")]));
    }

    #[test]
    fn projections_and_coprojections() {
        let g = fixtures::unlabeled_chain(3, "a");
        assert_eq!(named("pi1(a)", &g), pairs(&[("n0", "n0"), ("n1", "n1")]));
        assert_eq!(named("pi2(a)", &g), pairs(&[("n1", "n1"), ("n2", "n2")]));
        assert_eq!(named("copi1(a)", &g), pairs(&[("n2", "n2")]));
        assert_eq!(named("copi2(a)", &g), pairs(&[("n0", "n0")]));
        assert_eq!(named("conv(a)", &g), pairs(&[("n1", "n0"), ("n2", "n1")]));
        assert_eq!(named("a+ \\ a", &g), pairs(&[("n0", "n2")]));
        assert_eq!(named("di & a*", &g), pairs(&[("n0", "n1"), ("n0", "n2"), ("n1", "n2")]));
    }

    #[test]
    fn unknown_label_is_reported() {
        let g = fixtures::unlabeled_chain(2, "a");
        assert_eq!(
            evaluate(&parse("b").unwrap(), &g),
            Err(EvalError::UnknownLabel("b".into()))
        );
    }
}
