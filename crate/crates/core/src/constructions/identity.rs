use std::collections::{BTreeSet, HashSet};

use crate::automata::{ConditionAutomaton, Step};

/// A state `head` together with the exact set of states visited by some path
/// of ID transitions starting at `head` (including `head`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityPair {
    pub head: usize,
    pub reachset: BTreeSet<usize>,
}

/// All identity pairs of `a`, sorted by head and then by set.
pub fn identity_pairs(a: &ConditionAutomaton) -> Vec<IdentityPair> {
    let mut id_succ: Vec<Vec<usize>> = vec![Vec::new(); a.state_count()];
    for (p, s, q) in a.transitions() {
        if *s == Step::Id {
            id_succ[*p].push(*q);
        }
    }
    let mut out = BTreeSet::new();
    for head in a.states() {
        let start = (head, BTreeSet::from([head]));
        let mut seen: HashSet<(usize, BTreeSet<usize>)> = HashSet::from([start.clone()]);
        let mut stack = vec![start];
        while let Some((cur, set)) = stack.pop() {
            out.insert(IdentityPair {
                head,
                reachset: set.clone(),
            });
            for &next in &id_succ[cur] {
                let mut s = set.clone();
                s.insert(next);
                if seen.insert((next, s.clone())) {
                    stack.push((next, s));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Equivalent automaton without ID transitions, whose states are the identity
/// pairs of `a`. A pair is final when its set meets `F`, and leaves on `ℓ`
/// from any member of its set; its conditions are those of the whole set.
pub fn remove_identity_transitions(a: &ConditionAutomaton) -> ConditionAutomaton {
    let pairs = identity_pairs(a);
    let mut out = ConditionAutomaton::new();
    for l in a.alphabet() {
        out.add_label(l.clone());
    }
    for c in a.conditions() {
        out.declare_condition(c.clone());
    }
    let mut by_head: Vec<Vec<usize>> = vec![Vec::new(); a.state_count()];
    for pair in &pairs {
        let members: Vec<&str> = pair.reachset.iter().map(|&q| a.name(q)).collect();
        let s = out.add_state(format!("({},{{{}}})", a.name(pair.head), members.join(",")));
        by_head[pair.head].push(s);
        if a.is_initial(pair.head) {
            out.add_initial(s);
        }
        if pair.reachset.iter().any(|q| a.is_final(*q)) {
            out.add_final(s);
        }
        for &q in &pair.reachset {
            for c in a.gamma(q) {
                out.add_condition(s, c.clone());
            }
        }
    }
    let mut label_out: Vec<Vec<(&Step, usize)>> = vec![Vec::new(); a.state_count()];
    for (p, step, q) in a.transitions() {
        if *step != Step::Id {
            label_out[*p].push((step, *q));
        }
    }
    for (i, pair) in pairs.iter().enumerate() {
        for &member in &pair.reachset {
            for &(step, q) in &label_out[member] {
                for &target in &by_head[q] {
                    out.add_transition(i, step.clone(), target);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{eval_automaton, examples};
    use crate::constructions::identity_automaton;
    use crate::expr::parse;
    use crate::graph::{enumerate_graphs, standard_alphabet};

    #[test]
    fn identity_pairs_of_the_chain() {
        let a = examples::identity_chain(parse("pi1(l)").unwrap());
        let names: Vec<String> = identity_pairs(&a)
            .into_iter()
            .map(|p| {
                let set: Vec<&str> = p.reachset.iter().map(|&q| a.name(q)).collect();
                format!("({},{{{}}})", a.name(p.head), set.join(","))
            })
            .collect();
        assert_eq!(
            names,
            ["(u,{u})", "(u,{u,v})", "(u,{u,v,w})", "(v,{v})", "(v,{v,w})", "(w,{w})"]
        );
        let b = remove_identity_transitions(&a);
        assert!(b.is_identity_free());
        assert_eq!(b.state_count(), 6);
    }

    #[test]
    fn identity_automaton_becomes_an_initial_final_pair() {
        let b = remove_identity_transitions(&identity_automaton());
        assert!(b.is_identity_free());
        assert!(b.states().any(|q| b.is_initial(q) && b.is_final(q)));
        let alphabet = standard_alphabet(1);
        for g in enumerate_graphs(3, &alphabet, 3) {
            assert_eq!(eval_automaton(&b, &g).unwrap(), eval_automaton(&identity_automaton(), &g).unwrap());
        }
    }

    #[test]
    fn identity_free_input_keeps_its_shape() {
        let a = examples::looping();
        let b = remove_identity_transitions(&a);
        assert_eq!(b.state_count(), a.state_count());
        assert_eq!(b.transitions().len(), a.transitions().len());
        assert_eq!(b.name(0), "(q1,{q1})");
    }
}
