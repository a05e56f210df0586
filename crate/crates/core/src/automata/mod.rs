//! Condition automata: finite automata over edge labels and `ID`, whose states
//! carry sets of node conditions.

mod dot;
mod json;
mod run;

pub use json::AutomatonJsonError;
pub use run::{check_deterministic, count_runs_on_tree, eval_automaton, satisfies, RunCounter};

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::expr::{Expr, Fragment, Op};

/// Transition label: an edge label or the identity pseudo-label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Id,
    Label(String),
}

impl Step {
    pub fn label(name: impl Into<String>) -> Step {
        Step::Label(name.into())
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Id => f.write_str("id"),
            Step::Label(l) => f.write_str(l),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AutomatonFlags {
    /// Operators among `{tc, pi1, pi2, copi1, copi2, cap, minus, di, conv}`
    /// absent from every condition.
    pub f_free: Fragment,
    pub acyclic: bool,
    pub identity_free: bool,
}

/// `(S, Σ, C, I, F, δ, γ)` with states numbered `0..S` and named for display.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConditionAutomaton {
    names: Vec<String>,
    alphabet: BTreeSet<String>,
    conditions: BTreeSet<Expr>,
    initials: BTreeSet<usize>,
    finals: BTreeSet<usize>,
    transitions: BTreeSet<(usize, Step, usize)>,
    gamma: Vec<BTreeSet<Expr>>,
}

impl ConditionAutomaton {
    pub fn new() -> ConditionAutomaton {
        ConditionAutomaton::default()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.gamma.push(BTreeSet::new());
        self.names.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        self.initials.insert(q);
    }

    pub fn add_final(&mut self, q: usize) {
        self.finals.insert(q);
    }

    pub fn add_transition(&mut self, from: usize, step: Step, to: usize) {
        if let Step::Label(l) = &step {
            self.alphabet.insert(l.clone());
        }
        self.transitions.insert((from, step, to));
    }

    pub fn add_label(&mut self, label: impl Into<String>) {
        self.alphabet.insert(label.into());
    }

    pub fn extend_alphabet<S: AsRef<str>>(&mut self, labels: &[S]) {
        for l in labels {
            self.alphabet.insert(l.as_ref().to_string());
        }
    }

    /// Adds `c` to `γ(q)` and to `C`.
    pub fn add_condition(&mut self, q: usize, c: Expr) {
        self.conditions.insert(c.clone());
        self.gamma[q].insert(c);
    }

    /// Adds `c` to `C` without assigning it to a state.
    pub fn declare_condition(&mut self, c: Expr) {
        self.conditions.insert(c);
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<usize> {
        0..self.names.len()
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn alphabet(&self) -> &BTreeSet<String> {
        &self.alphabet
    }

    pub fn conditions(&self) -> &BTreeSet<Expr> {
        &self.conditions
    }

    pub fn initials(&self) -> &BTreeSet<usize> {
        &self.initials
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initials.contains(&q)
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, Step, usize)> {
        &self.transitions
    }

    /// `γ(q)`.
    pub fn gamma(&self, q: usize) -> &BTreeSet<Expr> {
        &self.gamma[q]
    }

    /// `ĉ(q)`: the composition of `γ(q)` in set order, or `id` when empty.
    pub fn c_hat(&self, q: usize) -> Expr {
        Expr::compose_all(self.gamma[q].iter().cloned())
    }

    pub fn is_identity_free(&self) -> bool {
        !self.transitions.iter().any(|t| t.1 == Step::Id)
    }

    /// True if the transition graph (all steps, self-loops included) has no cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.state_count();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut edges = BTreeSet::new();
        for (p, _, q) in &self.transitions {
            if edges.insert((*p, *q)) {
                indeg[*q] += 1;
                out[*p].push(*q);
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| indeg[q] == 0).collect();
        let mut seen = 0;
        while let Some(p) = stack.pop() {
            seen += 1;
            for &q in &out[p] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    stack.push(q);
                }
            }
        }
        seen == n
    }

    pub fn flags(&self) -> AutomatonFlags {
        let mut used = Fragment::empty();
        for c in &self.conditions {
            used = used.union(c.operators_used());
        }
        let mut f_free = Fragment::empty();
        for op in Op::ALL {
            if !used.contains(op) {
                f_free.insert(op);
            }
        }
        AutomatonFlags {
            f_free,
            acyclic: self.is_acyclic(),
            identity_free: self.is_identity_free(),
        }
    }

    /// `dc(A)`: the maximal condition depth over `C` (0 when `C` is empty).
    ///
    /// Returns `None` if some condition lies outside `L(tc, π)`.
    pub fn condition_depth(&self) -> Option<usize> {
        self.conditions
            .iter()
            .map(Expr::condition_depth)
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// `wc(A)`: how many conditions in `C` reach the maximal depth.
    pub fn condition_weight(&self) -> Option<usize> {
        let dc = self.condition_depth()?;
        if dc == 0 {
            return Some(0);
        }
        Some(
            self.conditions
                .iter()
                .filter(|c| c.condition_depth() == Some(dc))
                .count(),
        )
    }

    /// Successors of `q` on `step`.
    pub fn successors<'a>(&'a self, q: usize, step: &'a Step) -> impl Iterator<Item = usize> + 'a {
        self.transitions
            .range((q, Step::Id, 0)..)
            .take_while(move |t| t.0 == q)
            .filter(move |t| &t.1 == step)
            .map(|t| t.2)
    }

    /// Removes states that are not reachable from an initial state or cannot
    /// reach a final one. Keeps at least the empty automaton shape.
    pub fn trim(&self) -> ConditionAutomaton {
        let n = self.state_count();
        let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut bwd: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, _, q) in &self.transitions {
            fwd[*p].push(*q);
            bwd[*q].push(*p);
        }
        let reach = |starts: &BTreeSet<usize>, adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            let mut stack: Vec<usize> = starts.iter().copied().collect();
            while let Some(x) = stack.pop() {
                if !std::mem::replace(&mut seen[x], true) {
                    stack.extend(adj[x].iter().copied());
                }
            }
            seen
        };
        let (f, b) = (reach(&self.initials, &fwd), reach(&self.finals, &bwd));
        let keep: Vec<usize> = (0..n).filter(|&q| f[q] && b[q]).collect();
        self.restrict(&keep)
    }

    /// The sub-automaton on `keep` (in that order); `C` and `Σ` are kept whole.
    pub fn restrict(&self, keep: &[usize]) -> ConditionAutomaton {
        let mut map = vec![usize::MAX; self.state_count()];
        let mut out = ConditionAutomaton {
            alphabet: self.alphabet.clone(),
            conditions: self.conditions.clone(),
            ..ConditionAutomaton::default()
        };
        for &q in keep {
            map[q] = out.add_state(self.names[q].clone());
            out.gamma[map[q]] = self.gamma[q].clone();
        }
        for &q in keep {
            if self.is_initial(q) {
                out.add_initial(map[q]);
            }
            if self.is_final(q) {
                out.add_final(map[q]);
            }
        }
        for (p, s, q) in &self.transitions {
            if map[*p] != usize::MAX && map[*q] != usize::MAX {
                out.transitions.insert((map[*p], s.clone(), map[*q]));
            }
        }
        out
    }

    /// Renames states to `{prefix}0`, `{prefix}1`, … in index order.
    pub fn renumbered(&self, prefix: &str) -> ConditionAutomaton {
        let mut out = self.clone();
        for (i, n) in out.names.iter_mut().enumerate() {
            *n = format!("{prefix}{i}");
        }
        out
    }

    /// Drops declared conditions that no state uses.
    pub fn without_unused_conditions(&self) -> ConditionAutomaton {
        let mut out = self.clone();
        out.conditions = self.gamma.iter().flatten().cloned().collect();
        out
    }

    pub fn with_finals(&self, finals: impl IntoIterator<Item = usize>) -> ConditionAutomaton {
        let mut out = self.clone();
        out.finals = finals.into_iter().collect();
        out
    }

    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<ConditionAutomaton, AutomatonJsonError> {
        json::from_json(text)
    }

    /// Size summary `(states, |C|, dc, wc)`; depth and weight are `None`
    /// when a condition lies outside `L(tc, π)`.
    pub fn size_summary(&self) -> SizeSummary {
        SizeSummary {
            states: self.state_count(),
            conditions: self.conditions.len(),
            condition_depth: self.condition_depth(),
            condition_weight: self.condition_weight(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub states: usize,
    pub conditions: usize,
    pub condition_depth: Option<usize>,
    pub condition_weight: Option<usize>,
}

pub mod examples {
    //! Automata drawn in the worked examples, rebuilt state by state.

    use super::{ConditionAutomaton, Step};
    use crate::expr::{parse, Expr};

    fn l(name: &str) -> Step {
        Step::label(name)
    }

    /// Four states over `l1, l2, l3` with an `l1` self-loop on `q2`.
    pub fn looping() -> ConditionAutomaton {
        let mut a = ConditionAutomaton::new();
        let q: Vec<usize> = (1..=4).map(|i| a.add_state(format!("q{i}"))).collect();
        a.add_label("l1");
        a.add_label("l2");
        a.add_label("l3");
        a.add_initial(q[0]);
        a.add_initial(q[3]);
        a.add_final(q[2]);
        a.add_final(q[3]);
        a.add_transition(q[0], l("l1"), q[1]);
        a.add_transition(q[0], l("l3"), q[3]);
        a.add_transition(q[1], l("l1"), q[1]);
        a.add_transition(q[1], l("l2"), q[2]);
        a.add_condition(q[0], Expr::Identity);
        a.add_condition(q[1], parse("pi2(l1^2)").unwrap());
        a.add_condition(q[1], parse("pi1(l2^3)").unwrap());
        a
    }

    /// `u -id-> v -id-> w`, `v -l-> v`, `u -l2-> w`, with `γ(v) = {c}`.
    pub fn identity_chain(c: Expr) -> ConditionAutomaton {
        let mut a = ConditionAutomaton::new();
        let u = a.add_state("u");
        let v = a.add_state("v");
        let w = a.add_state("w");
        a.add_initial(u);
        a.add_final(w);
        a.add_transition(u, Step::Id, v);
        a.add_transition(v, Step::Id, w);
        a.add_transition(v, l("l"), v);
        a.add_transition(u, l("l2"), w);
        a.add_condition(v, c);
        a
    }

    /// The deterministic automaton over `l1, l2` with five states.
    pub fn five_state_deterministic() -> ConditionAutomaton {
        let mut a = ConditionAutomaton::new();
        let q: Vec<usize> = (1..=5).map(|i| a.add_state(format!("q{i}"))).collect();
        a.add_initial(q[0]);
        a.add_initial(q[3]);
        a.add_final(q[2]);
        a.add_final(q[3]);
        a.add_condition(q[0], parse("pi2(l1^3)").unwrap());
        a.add_condition(q[3], parse("copi2(l1^3)").unwrap());
        a.add_transition(q[0], l("l1"), q[1]);
        a.add_transition(q[0], l("l2"), q[4]);
        a.add_transition(q[1], l("l2"), q[1]);
        a.add_transition(q[1], l("l1"), q[2]);
        for from in [q[2], q[3], q[4]] {
            a.add_transition(from, l("l1"), q[4]);
            a.add_transition(from, l("l2"), q[4]);
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn looping_flags() {
        let f = examples::looping().flags();
        assert!(!f.acyclic);
        assert!(f.identity_free);
        assert!(f.f_free.contains(Op::Copi1) && f.f_free.contains(Op::Copi2) && f.f_free.contains(Op::Tc));
        assert!(!f.f_free.contains(Op::Pi1));
    }

    #[test]
    fn id_transition_breaks_identity_freeness() {
        let mut a = ConditionAutomaton::new();
        let v = a.add_state("v");
        let w = a.add_state("w");
        a.add_transition(v, Step::Id, w);
        assert!(!a.flags().identity_free);
        assert!(a.flags().acyclic);
    }

    #[test]
    fn depth_and_weight() {
        let a = examples::looping();
        assert_eq!(a.condition_depth(), Some(1));
        assert_eq!(a.condition_weight(), Some(2));
        assert_eq!(examples::five_state_deterministic().condition_depth(), None);
    }

    #[test]
    fn trim_drops_dead_states() {
        let mut a = examples::five_state_deterministic();
        // q5 is a sink that never reaches a final state.
        a = a.trim();
        assert_eq!(a.state_count(), 4);
        assert!(a.state_by_name("q5").is_none());
    }

    #[test]
    fn successors_filter_by_step() {
        let a = examples::looping();
        let q2 = a.state_by_name("q2").unwrap();
        let succ: Vec<usize> = a.successors(q2, &Step::label("l1")).collect();
        assert_eq!(succ, vec![q2]);
    }
}
