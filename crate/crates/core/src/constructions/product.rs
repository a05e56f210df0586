use std::collections::HashMap;

use super::remove_identity_transitions;
use crate::automata::{ConditionAutomaton, Step};

/// Synchronized product of the identity-free forms of `a1` and `a2`, built
/// from `I₁ × I₂` over reachable pairs. Correct on single-labeled trees only:
/// there, two runs between the same nodes read the same label sequence.
pub fn intersect_automata(a1: &ConditionAutomaton, a2: &ConditionAutomaton) -> ConditionAutomaton {
    let a1 = if a1.is_identity_free() { a1.clone() } else { remove_identity_transitions(a1) };
    let a2 = if a2.is_identity_free() { a2.clone() } else { remove_identity_transitions(a2) };
    let mut out = ConditionAutomaton::new();
    for l in a1.alphabet().iter().chain(a2.alphabet()) {
        out.add_label(l.clone());
    }
    for c in a1.conditions().iter().chain(a2.conditions()) {
        out.declare_condition(c.clone());
    }
    let out_edges = |a: &ConditionAutomaton| {
        let mut v: Vec<Vec<(Step, usize)>> = vec![Vec::new(); a.state_count()];
        for (p, s, q) in a.transitions() {
            v[*p].push((s.clone(), *q));
        }
        v
    };
    let (o1, o2) = (out_edges(&a1), out_edges(&a2));
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = Vec::new();
    let mut intern = |out: &mut ConditionAutomaton, p: (usize, usize), queue: &mut Vec<(usize, usize)>| {
        *index.entry(p).or_insert_with(|| {
            let s = out.add_state(format!("q{}", out.state_count()));
            for c in a1.gamma(p.0).iter().chain(a2.gamma(p.1)) {
                out.add_condition(s, c.clone());
            }
            if a1.is_final(p.0) && a2.is_final(p.1) {
                out.add_final(s);
            }
            queue.push(p);
            s
        })
    };
    for &i1 in a1.initials() {
        for &i2 in a2.initials() {
            let s = intern(&mut out, (i1, i2), &mut queue);
            out.add_initial(s);
        }
    }
    let mut next = 0;
    while next < queue.len() {
        let (p1, p2) = queue[next];
        next += 1;
        let from = intern(&mut out, (p1, p2), &mut queue);
        for (s1, q1) in &o1[p1] {
            for (s2, q2) in &o2[p2] {
                if s1 == s2 {
                    let to = intern(&mut out, (*q1, *q2), &mut queue);
                    out.add_transition(from, s1.clone(), to);
                }
            }
        }
    }
    out
}
