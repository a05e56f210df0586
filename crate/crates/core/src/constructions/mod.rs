//! Automaton constructions: translations between expressions and automata,
//! closure under composition, union and transitive closure, identity-transition
//! removal, product, determinization, downward complement and difference.

mod determinize;
mod identity;
mod product;
mod translate;

pub use determinize::{condition_complement, determinize, difference_automata, downward_complement_automaton};
pub use identity::{identity_pairs, remove_identity_transitions, IdentityPair};
pub use product::intersect_automata;
pub use translate::{
    automaton_to_expr, compose_automata, condition_automaton, empty_automaton, expr_to_automaton,
    identity_automaton, label_automaton, plus_automaton, union_automata,
};

use crate::automata::ConditionAutomaton;
use crate::expr::Expr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("operator `{op}` is not supported by this construction (in `{expr}`)")]
    Unsupported { op: &'static str, expr: Expr },
    #[error("`{0}` is not one of the six atomic condition forms")]
    NotACondition(Expr),
}

/// Copies every state, transition and condition of `a` into `out` and returns
/// the index map.
fn embed(out: &mut ConditionAutomaton, a: &ConditionAutomaton) -> Vec<usize> {
    let map: Vec<usize> = a.states().map(|q| out.add_state(a.name(q).to_string())).collect();
    for l in a.alphabet() {
        out.add_label(l.clone());
    }
    for c in a.conditions() {
        out.declare_condition(c.clone());
    }
    for q in a.states() {
        for c in a.gamma(q) {
            out.add_condition(map[q], c.clone());
        }
    }
    for (p, s, q) in a.transitions() {
        out.add_transition(map[*p], s.clone(), map[*q]);
    }
    map
}
