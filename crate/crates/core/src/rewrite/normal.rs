use serde::Serialize;

use super::RewriteError;
use crate::automata::ConditionAutomaton;
use crate::constructions::{
    compose_automata, expr_to_automaton, intersect_automata, plus_automaton, remove_identity_transitions, union_automata,
};
use crate::eval::evaluate;
use crate::expr::{Expr, Fragment, Op};
use crate::graph::fixtures;

/// Chains shorter than this many nodes are always searched.
pub const MIN_SEARCH_NODES: usize = 8;

/// Boolean normal form on unlabeled trees: never nonempty, or as `E^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "form", content = "k", rename_all = "kebab-case")]
pub enum NormalForm {
    Empty,
    PowerForm(usize),
}

impl NormalForm {
    /// The normal form as an expression over `label`.
    pub fn to_expr(self, label: &str) -> Expr {
        match self {
            NormalForm::Empty => Expr::Empty,
            NormalForm::PowerForm(k) => Expr::power(Expr::label(label), k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub form: NormalForm,
    /// Largest chain (in nodes) that was searched.
    pub search_bound: usize,
}

/// `k` with `e` nonempty on an unlabeled tree exactly when the tree has a
/// path of `k` edges, found as one less than the node count of the shortest
/// chain where `e` is nonempty.
///
/// Chains are searched up to the state count of an identity-free automaton
/// for a downward over-approximation of `e`, plus the bounds of its
/// conditions, and never fewer than [`MIN_SEARCH_NODES`] nodes.
pub fn normalize_unlabeled_boolean(e: &Expr) -> Result<NormalFormReport, RewriteError> {
    let allowed = Fragment::from_ops(&[Op::Di, Op::Conv, Op::Tc, Op::Pi1, Op::Pi2, Op::Cap]);
    let used = e.operators_used();
    if !used.is_subset(allowed) {
        return Err(RewriteError::Fragment {
            pipeline: "unlabeled-normalform",
            used,
            allowed,
        });
    }
    let labels = e.labels();
    if labels.len() > 1 {
        return Err(RewriteError::Precondition(format!("{} labels on an unlabeled class", labels.len())));
    }
    let label = labels.into_iter().next().unwrap_or_else(|| "a".to_string());
    let search_bound = chain_bound(e, &label)?.max(MIN_SEARCH_NODES);
    for n in 1..=search_bound {
        let chain = fixtures::unlabeled_chain(n, &label);
        if !evaluate(e, &chain)?.is_empty() {
            return Ok(NormalFormReport {
                form: NormalForm::PowerForm(n - 1),
                search_bound,
            });
        }
    }
    Ok(NormalFormReport {
        form: NormalForm::Empty,
        search_bound,
    })
}

fn chain_bound(e: &Expr, label: &str) -> Result<usize, RewriteError> {
    let a = remove_identity_transitions(&over_approximation(e, label)?);
    let mut inner = 0;
    for c in a.conditions() {
        if let Expr::Proj1(x) | Expr::Proj2(x) = c {
            inner = inner.max(chain_bound(x, label)?);
        }
    }
    Ok(a.state_count() + inner + 1)
}

/// An automaton whose length profile on chains covers `e`: converses are
/// read forwards and `di` as `E⁺`.
fn over_approximation(e: &Expr, label: &str) -> Result<ConditionAutomaton, RewriteError> {
    let go = |x: &Expr| over_approximation(x, label);
    Ok(match e {
        Expr::Converse(x) => go(x)?,
        Expr::Intersect(x, y) => intersect_automata(&go(x)?, &go(y)?),
        Expr::Compose(x, y) => compose_automata(&go(x)?, &go(y)?),
        Expr::Union(x, y) => union_automata(&go(x)?, &go(y)?),
        Expr::TransClosure(x) => plus_automaton(&go(x)?),
        Expr::Diversity => expr_to_automaton(&Expr::plus(Expr::label(label)))?,
        _ => expr_to_automaton(e)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_in;

    fn nf(s: &str) -> NormalForm {
        normalize_unlabeled_boolean(&parse_in(s, &["a"]).unwrap()).unwrap().form
    }

    #[test]
    fn examples() {
        assert_eq!(nf("E+ . E . E"), NormalForm::PowerForm(3));
        assert_eq!(nf("pi1(E) . pi1(E)"), NormalForm::PowerForm(1));
        assert_eq!(nf("0"), NormalForm::Empty);
        assert_eq!(nf("id"), NormalForm::PowerForm(0));
        assert_eq!(nf("(a^3)+ & (a^7)+"), NormalForm::PowerForm(21));
        assert_eq!(nf("a^3 & a^7"), NormalForm::Empty);
    }

    #[test]
    fn converse_and_diversity_on_chains() {
        assert_eq!(nf("conv(a . a) . a^3"), NormalForm::PowerForm(3));
        assert_eq!(nf("di"), NormalForm::PowerForm(1));
    }

    #[test]
    fn fragment_is_checked() {
        assert!(normalize_unlabeled_boolean(&parse_in("copi1(a)", &["a"]).unwrap()).is_err());
        assert!(normalize_unlabeled_boolean(&parse_in("a . b", &["a", "b"]).unwrap()).is_err());
    }
}
