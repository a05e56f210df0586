use std::collections::{BTreeSet, HashMap};

use super::RewriteError;
use crate::automata::{ConditionAutomaton, Step};
use crate::constructions::{expr_to_automaton, remove_identity_transitions};
use crate::expr::Expr;

/// Largest candidate set whose subsets are enumerated in one transition.
const MAX_CANDIDATES: usize = 16;

/// The condition a removal step targets: maximal depth, then smallest text.
pub fn select_condition(a: &ConditionAutomaton) -> Option<Expr> {
    let dc = a.condition_depth()?;
    a.conditions()
        .iter()
        .filter(|c| c.condition_depth() == Some(dc) && dc > 0)
        .min_by_key(|c| c.to_string())
        .cloned()
}

/// Replaces one projection condition `π_i(e′)` of maximal depth by a
/// simulation of an automaton for `e′` running alongside `a`.
///
/// States are pairs `(r, R)`: `r` is a state of `a`, or `⊥` once the run of
/// `a` has ended (`i = 1`) or before it has started (`i = 2`), and `R` is the
/// set of states of the inner automaton currently tracked. For `i = 1` every
/// tracked non-final state must move on, and a state carrying the condition
/// must hold an inner initial state. For `i = 2` a tracked state may stop only
/// when it is final at a state carrying the condition, and such a state must
/// hold an inner final state.
///
/// The result is nonempty on exactly the labeled chains where `a` is.
pub fn remove_projection_step(a: &ConditionAutomaton) -> Result<ConditionAutomaton, RewriteError> {
    if !a.is_identity_free() {
        return Err(RewriteError::Precondition("automaton has ID transitions".into()));
    }
    for c in a.conditions() {
        if !matches!(c, Expr::Proj1(_) | Expr::Proj2(_)) || c.condition_depth().is_none() {
            return Err(RewriteError::Precondition(format!("condition `{c}` is not a projection over tc")));
        }
    }
    let cond = select_condition(a).ok_or_else(|| RewriteError::Precondition("condition depth is 0".into()))?;
    let (first, inner) = match &cond {
        Expr::Proj1(e) => (true, e.as_ref()),
        Expr::Proj2(e) => (false, e.as_ref()),
        _ => unreachable!("checked above"),
    };
    let b = remove_identity_transitions(&expr_to_automaton(inner)?).trim();
    Ok(Simulation::new(a, &b, &cond, first).build())
}

type PState = (Option<usize>, Vec<usize>);

struct Simulation<'a> {
    a: &'a ConditionAutomaton,
    b: &'a ConditionAutomaton,
    cond: &'a Expr,
    first: bool,
    labels: Vec<String>,
    /// `succ_a[q][l]`, `succ_b[s][l]`: successors per label index.
    succ_a: Vec<Vec<Vec<usize>>>,
    succ_b: Vec<Vec<Vec<usize>>>,
    in_cond: Vec<bool>,
}

impl<'a> Simulation<'a> {
    fn new(a: &'a ConditionAutomaton, b: &'a ConditionAutomaton, cond: &'a Expr, first: bool) -> Simulation<'a> {
        let labels: Vec<String> = a.alphabet().union(b.alphabet()).cloned().collect();
        let table = |x: &ConditionAutomaton| {
            let mut t = vec![vec![Vec::new(); labels.len()]; x.state_count()];
            for (p, s, q) in x.transitions() {
                if let Step::Label(l) = s {
                    let li = labels.binary_search(l).expect("label in the joint alphabet");
                    t[*p][li].push(*q);
                }
            }
            t
        };
        Simulation {
            succ_a: table(a),
            succ_b: table(b),
            in_cond: a.states().map(|q| a.gamma(q).contains(cond)).collect(),
            a,
            b,
            cond,
            first,
            labels,
        }
    }

    fn valid(&self, s: &PState) -> bool {
        match s.0 {
            None => !s.1.is_empty(),
            Some(q) if self.in_cond[q] => {
                if self.first {
                    s.1.iter().any(|x| self.b.is_initial(*x))
                } else {
                    s.1.iter().any(|x| self.b.is_final(*x))
                }
            }
            Some(_) => true,
        }
    }

    fn is_final(&self, s: &PState) -> bool {
        if self.first {
            s.0.map_or(true, |q| self.a.is_final(q)) && s.1.iter().all(|x| self.b.is_final(*x))
        } else {
            s.0.is_some_and(|q| self.a.is_final(q))
        }
    }

    fn initials(&self) -> Vec<PState> {
        let ib: Vec<usize> = self.b.initials().iter().copied().collect();
        let mut out = Vec::new();
        for &q in self.a.initials() {
            if self.first {
                if self.in_cond[q] {
                    out.extend(ib.iter().map(|&s| (Some(q), vec![s])));
                } else {
                    out.push((Some(q), Vec::new()));
                }
            } else {
                out.extend(subsets(&ib).map(|r| (Some(q), r)));
            }
        }
        if !self.first {
            out.extend(subsets(&ib).map(|r| (None, r)));
        }
        out.retain(|s| self.valid(s));
        out
    }

    fn successors(&self, s: &PState, li: usize) -> Vec<PState> {
        let (r, set) = s;
        let mut bases: Vec<Option<usize>> = Vec::new();
        match r {
            Some(q) => {
                bases.extend(self.succ_a[*q][li].iter().map(|&p| Some(p)));
                if self.first && self.a.is_final(*q) {
                    bases.push(None);
                }
            }
            None => {
                bases.push(None);
                if !self.first {
                    bases.extend(self.a.initials().iter().map(|&p| Some(p)));
                }
            }
        }
        let may_stop = |x: usize| {
            if self.first {
                self.b.is_final(x)
            } else {
                self.b.is_final(x) && r.is_some_and(|q| self.in_cond[q])
            }
        };
        let moved: BTreeSet<usize> = set.iter().flat_map(|&x| self.succ_b[x][li].iter().copied()).collect();
        let mut out = Vec::new();
        for base in bases {
            let spawn = !self.first || base.is_some_and(|q| self.in_cond[q]);
            let mut cands = moved.clone();
            if spawn {
                cands.extend(self.b.initials().iter().copied());
            }
            let cands: Vec<usize> = cands.into_iter().collect();
            for next in subsets(&cands) {
                let kept = set.iter().all(|&x| {
                    may_stop(x) || self.succ_b[x][li].iter().any(|y| next.binary_search(y).is_ok())
                });
                let candidate = (base, next);
                if kept && self.valid(&candidate) {
                    out.push(candidate);
                }
            }
        }
        out
    }

    fn build(&self) -> ConditionAutomaton {
        let mut out = ConditionAutomaton::new();
        for l in &self.labels {
            out.add_label(l.clone());
        }
        for c in self.a.conditions().iter().filter(|c| *c != self.cond).chain(self.b.conditions()) {
            out.declare_condition(c.clone());
        }
        let mut index: HashMap<PState, usize> = HashMap::new();
        let mut queue: Vec<PState> = Vec::new();
        let intern = |out: &mut ConditionAutomaton, index: &mut HashMap<PState, usize>, queue: &mut Vec<PState>, s: PState| {
            if let Some(&i) = index.get(&s) {
                return i;
            }
            let i = out.add_state(format!("q{}", out.state_count()));
            if let Some(q) = s.0 {
                for c in self.a.gamma(q).iter().filter(|c| *c != self.cond) {
                    out.add_condition(i, c.clone());
                }
            }
            for &x in &s.1 {
                for c in self.b.gamma(x) {
                    out.add_condition(i, c.clone());
                }
            }
            if self.is_final(&s) {
                out.add_final(i);
            }
            index.insert(s.clone(), i);
            queue.push(s);
            i
        };
        for s in self.initials() {
            let i = intern(&mut out, &mut index, &mut queue, s);
            out.add_initial(i);
        }
        let mut next = 0;
        while next < queue.len() {
            let s = queue[next].clone();
            let from = next;
            next += 1;
            for li in 0..self.labels.len() {
                for t in self.successors(&s, li) {
                    let to = intern(&mut out, &mut index, &mut queue, t);
                    out.add_transition(from, Step::label(self.labels[li].clone()), to);
                }
            }
        }
        out.trim().without_unused_conditions().renumbered("q")
    }
}

fn subsets(items: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    assert!(items.len() <= MAX_CANDIDATES, "{} candidate states exceed the subset limit", items.len());
    (0u32..(1 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}
