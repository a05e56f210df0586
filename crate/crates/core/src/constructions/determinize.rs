use std::collections::{BTreeSet, HashMap};

use super::{intersect_automata, remove_identity_transitions, ConstructionError};
use crate::automata::{ConditionAutomaton, Step};
use crate::expr::Expr;

/// Swaps `id` with `∅` and each projection with the matching coprojection.
pub fn condition_complement(c: &Expr) -> Result<Expr, ConstructionError> {
    Ok(match c {
        Expr::Identity => Expr::Empty,
        Expr::Empty => Expr::Identity,
        Expr::Proj1(e) => Expr::Coproj1(e.clone()),
        Expr::Proj2(e) => Expr::Coproj2(e.clone()),
        Expr::Coproj1(e) => Expr::Proj1(e.clone()),
        Expr::Coproj2(e) => Expr::Proj2(e.clone()),
        _ => return Err(ConstructionError::NotACondition(c.clone())),
    })
}

/// Subset construction over `(Q, V)`, built lazily from the initial seeds.
///
/// Each state only decides the conditions of the states it was reached
/// towards (its scope): `V` is the subset of the scope assumed to hold and
/// `γ_D = V ∪ cc(scope − V)`. Every node matches exactly one `V` per scope,
/// so runs stay unique. An empty successor set goes to a shared sink with an
/// empty scope. Choices of `V` that can never be satisfied (`∅ ∈ V`, `id ∉ V`,
/// or a condition and its complement on the same side) are skipped.
///
/// The input is made identity-free first. Fails if some condition is not one
/// of the six atomic forms.
pub fn determinize(a: &ConditionAutomaton) -> Result<ConditionAutomaton, ConstructionError> {
    let a = if a.is_identity_free() { a.clone() } else { remove_identity_transitions(a) };
    let conds: Vec<Expr> = a.conditions().iter().cloned().collect();
    let cond_ix: HashMap<&Expr, usize> = conds.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let complements: Vec<Expr> = conds.iter().map(condition_complement).collect::<Result<_, _>>()?;
    let partner: Vec<Option<usize>> = complements.iter().map(|c| cond_ix.get(c).copied()).collect();
    let gamma: Vec<Vec<usize>> = a.states().map(|q| a.gamma(q).iter().map(|c| cond_ix[c]).collect()).collect();
    let labels: Vec<Step> = a.alphabet().iter().map(|l| Step::label(l.clone())).collect();
    let mut label_out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); a.state_count()];
    for (p, s, q) in a.transitions() {
        if let Step::Label(l) = s {
            let li = a.alphabet().iter().position(|x| x == l).expect("label in alphabet");
            label_out[*p].push((li, *q));
        }
    }

    let mut out = ConditionAutomaton::new();
    for l in a.alphabet() {
        out.add_label(l.clone());
    }
    for (c, cc) in conds.iter().zip(&complements) {
        out.declare_condition(c.clone());
        out.declare_condition(cc.clone());
    }

    type Key = (Vec<usize>, Vec<usize>, Vec<usize>);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut intern = |out: &mut ConditionAutomaton, sets: &mut Vec<Vec<usize>>, key: Key| -> usize {
        if let Some(&s) = index.get(&key) {
            return s;
        }
        let s = out.add_state(format!("d{}", out.state_count()));
        let (q, v, scope) = &key;
        for &c in scope {
            if v.binary_search(&c).is_ok() {
                out.add_condition(s, conds[c].clone());
            } else {
                out.add_condition(s, complements[c].clone());
            }
        }
        if q.iter().any(|&x| a.is_final(x)) {
            out.add_final(s);
        }
        sets.push(key.0.clone());
        index.insert(key, s);
        s
    };
    // All `(Q', W, scope)` for a candidate set `P`.
    let split = |p: &BTreeSet<usize>| -> Vec<Key> {
        if p.is_empty() {
            return vec![(Vec::new(), Vec::new(), Vec::new())];
        }
        let scope: Vec<usize> = p.iter().flat_map(|&q| gamma[q].iter().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        assert!(scope.len() < 32, "determinization scope of {} conditions is too large", scope.len());
        let mut keys = Vec::new();
        for mask in 0u64..(1u64 << scope.len()) {
            let holds = |i: usize| mask >> i & 1 == 1;
            let consistent = scope.iter().enumerate().all(|(i, &c)| {
                let ok_fixed = match conds[c] {
                    Expr::Empty => !holds(i),
                    Expr::Identity => holds(i),
                    _ => true,
                };
                let ok_pair = match partner[c].and_then(|pc| scope.iter().position(|&x| x == pc)) {
                    Some(j) => holds(i) != holds(j),
                    None => true,
                };
                ok_fixed && ok_pair
            });
            if !consistent {
                continue;
            }
            let w: Vec<usize> = scope.iter().enumerate().filter(|&(i, _)| holds(i)).map(|(_, &c)| c).collect();
            let q: Vec<usize> = p.iter().copied().filter(|&x| gamma[x].iter().all(|c| w.binary_search(c).is_ok())).collect();
            keys.push((q, w, scope.clone()));
        }
        keys
    };

    for key in split(a.initials()) {
        let s = intern(&mut out, &mut sets, key);
        out.add_initial(s);
    }
    let mut next = 0;
    while next < sets.len() {
        let q = sets[next].clone();
        let from = next;
        next += 1;
        for (li, step) in labels.iter().enumerate() {
            let p: BTreeSet<usize> = q
                .iter()
                .flat_map(|&x| label_out[x].iter().filter(|t| t.0 == li).map(|t| t.1))
                .collect();
            for key in split(&p) {
                let to = intern(&mut out, &mut sets, key);
                out.add_transition(from, step.clone(), to);
            }
        }
    }
    Ok(out)
}

/// Deterministic form of `a` with finals flipped. On a tree whose labels are
/// in the alphabet of `a` it accepts the ancestor-or-self pairs `a` rejects.
pub fn downward_complement_automaton(a: &ConditionAutomaton) -> Result<ConditionAutomaton, ConstructionError> {
    let d = determinize(a)?;
    let finals: Vec<usize> = d.states().filter(|&q| !d.is_final(q)).collect();
    Ok(d.with_finals(finals))
}

/// `a1 ∩ dcompl(a2)`, with `a2` read over the union of both alphabets.
pub fn difference_automata(a1: &ConditionAutomaton, a2: &ConditionAutomaton) -> Result<ConditionAutomaton, ConstructionError> {
    let mut wide = a2.clone();
    let labels: Vec<&String> = a1.alphabet().iter().collect();
    wide.extend_alphabet(&labels);
    Ok(intersect_automata(a1, &downward_complement_automaton(&wide)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{check_deterministic, eval_automaton, examples};
    use crate::constructions::{empty_automaton, expr_to_automaton, identity_automaton};
    use crate::eval::evaluate;
    use crate::expr::parse;
    use crate::graph::{enumerate_chains, enumerate_trees, standard_alphabet, Graph};

    fn auto(s: &str) -> ConditionAutomaton {
        expr_to_automaton(&parse(s).unwrap()).unwrap()
    }

    fn trees(n: usize, k: usize) -> Vec<Graph> {
        enumerate_trees(n, &standard_alphabet(k)).collect()
    }

    #[test]
    fn condition_complement_table() {
        let e = parse("a . b").unwrap();
        assert_eq!(condition_complement(&Expr::pi1(e.clone())).unwrap(), Expr::copi1(e.clone()));
        assert_eq!(condition_complement(&Expr::Identity).unwrap(), Expr::Empty);
        assert_eq!(condition_complement(&Expr::Empty).unwrap(), Expr::Identity);
        let p2 = Expr::pi2(e.clone());
        assert_eq!(condition_complement(&condition_complement(&p2).unwrap()).unwrap(), p2);
        assert!(condition_complement(&e).is_err());
    }

    #[test]
    fn label_automaton_determinizes() {
        let mut a = auto("a");
        a.add_label("b");
        let d = determinize(&a).unwrap();
        assert!(check_deterministic(&d, 5).unwrap());
    }

    #[test]
    fn determinize_preserves_evaluation_and_is_deterministic() {
        let ts = trees(5, 2);
        for src in ["a . b*", "pi1(a) . b | a+", "copi2(b . a) . (a | b)+ . pi1(b)", "id | a . a"] {
            let mut a = auto(src);
            a.extend_alphabet(&["a", "b"]);
            let d = determinize(&a).unwrap();
            assert!(d.is_identity_free());
            assert!(check_deterministic(&d, 5).unwrap(), "{src}");
            for t in &ts {
                assert_eq!(eval_automaton(&d, t).unwrap(), eval_automaton(&a, t).unwrap(), "{src}");
            }
        }
    }

    #[test]
    fn deterministic_example_stays_deterministic() {
        let a = examples::five_state_deterministic();
        let d = determinize(&a).unwrap();
        assert!(check_deterministic(&d, 5).unwrap());
        let labels: Vec<String> = a.alphabet().iter().cloned().collect();
        for t in enumerate_trees(5, &labels) {
            assert_eq!(eval_automaton(&d, &t).unwrap(), eval_automaton(&a, &t).unwrap());
        }
    }

    #[test]
    fn tc_free_input_gives_acyclic_free_of_new_operators() {
        let d = determinize(&auto("a . pi1(b)")).unwrap();
        let f = d.flags();
        assert!(f.f_free.contains(crate::expr::Op::Tc));
        assert!(f.f_free.contains(crate::expr::Op::Pi2));
    }

    #[test]
    fn downward_complement_basics() {
        let ts = trees(5, 1);
        let star = parse("a*").unwrap();
        let plus = parse("a+").unwrap();
        let mut empty = empty_automaton();
        empty.add_label("a");
        let mut id = identity_automaton();
        id.add_label("a");
        let de = downward_complement_automaton(&empty).unwrap();
        let di = downward_complement_automaton(&id).unwrap();
        for t in &ts {
            assert_eq!(eval_automaton(&de, t).unwrap(), evaluate(&star, t).unwrap());
            assert_eq!(eval_automaton(&di, t).unwrap(), evaluate(&plus, t).unwrap());
        }
    }

    #[test]
    fn downward_complement_is_an_involution() {
        let ts = trees(5, 2);
        for src in ["a . pi2(b)", "(a | copi1(b . b))+"] {
            let mut a = auto(src);
            a.extend_alphabet(&["a", "b"]);
            let dd = downward_complement_automaton(&downward_complement_automaton(&a).unwrap()).unwrap();
            for t in &ts {
                assert_eq!(eval_automaton(&dd, t).unwrap(), eval_automaton(&a, t).unwrap(), "{src}");
            }
        }
    }

    #[test]
    fn power_difference_on_chains() {
        let d = difference_automata(&auto("(a^3)+"), &auto("(a^7)+")).unwrap();
        let target = parse("(a^3 | a^6 | a^9 | a^12 | a^15 | a^18) . (a^21)*").unwrap();
        for g in enumerate_chains(46, &standard_alphabet(1)) {
            assert_eq!(eval_automaton(&d, &g).unwrap(), evaluate(&target, &g).unwrap());
        }
    }

    #[test]
    fn trivial_differences() {
        let ts = trees(5, 2);
        let a = auto("a . b* | pi1(b)");
        let self_diff = difference_automata(&a, &a).unwrap();
        let minus_empty = difference_automata(&a, &empty_automaton()).unwrap();
        for t in &ts {
            assert!(eval_automaton(&self_diff, t).unwrap().is_empty());
            assert_eq!(eval_automaton(&minus_empty, t).unwrap(), eval_automaton(&a, t).unwrap());
        }
    }

    #[test]
    fn difference_matches_set_difference_on_trees() {
        let ts = trees(5, 2);
        for (x, y) in [("a+", "a . a"), ("(a | b)+", "pi2(b) . a+"), ("a . copi1(b)", "a")] {
            let d = difference_automata(&auto(x), &auto(y)).unwrap();
            let e = parse(&format!("({x}) \\ ({y})")).unwrap();
            for t in &ts {
                assert_eq!(eval_automaton(&d, t).unwrap(), evaluate(&e, t).unwrap(), "{x} - {y}");
            }
        }
    }
}
