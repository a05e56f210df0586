use super::{embed, ConstructionError};
use crate::automata::{ConditionAutomaton, Step};
use crate::expr::Expr;

fn two_states() -> (ConditionAutomaton, usize, usize) {
    let mut a = ConditionAutomaton::new();
    let v = a.add_state("v");
    let w = a.add_state("w");
    a.add_initial(v);
    a.add_final(w);
    (a, v, w)
}

/// Accepts nothing.
pub fn empty_automaton() -> ConditionAutomaton {
    two_states().0
}

/// `v -ID-> w`.
pub fn identity_automaton() -> ConditionAutomaton {
    let (mut a, v, w) = two_states();
    a.add_transition(v, Step::Id, w);
    a
}

/// `v -ℓ-> w`.
pub fn label_automaton(label: &str) -> ConditionAutomaton {
    let (mut a, v, w) = two_states();
    a.add_transition(v, Step::label(label), w);
    a
}

/// One state, initial and final, carrying `cond`.
pub fn condition_automaton(cond: Expr) -> ConditionAutomaton {
    let mut a = ConditionAutomaton::new();
    let v = a.add_state("v");
    a.add_initial(v);
    a.add_final(v);
    a.add_condition(v, cond);
    a
}

/// Runs of `a1` followed, through an ID step, by runs of `a2`.
pub fn compose_automata(a1: &ConditionAutomaton, a2: &ConditionAutomaton) -> ConditionAutomaton {
    let mut out = ConditionAutomaton::new();
    let m1 = embed(&mut out, a1);
    let m2 = embed(&mut out, a2);
    for &q in a1.initials() {
        out.add_initial(m1[q]);
    }
    for &q in a2.finals() {
        out.add_final(m2[q]);
    }
    for &f in a1.finals() {
        for &i in a2.initials() {
            out.add_transition(m1[f], Step::Id, m2[i]);
        }
    }
    out.renumbered("q")
}

pub fn union_automata(a1: &ConditionAutomaton, a2: &ConditionAutomaton) -> ConditionAutomaton {
    let mut out = ConditionAutomaton::new();
    for a in [a1, a2] {
        let m = embed(&mut out, a);
        for &q in a.initials() {
            out.add_initial(m[q]);
        }
        for &q in a.finals() {
            out.add_final(m[q]);
        }
    }
    out.renumbered("q")
}

/// Fresh `v`, `w` with `v -ID-> I₁`, `F₁ -ID-> w` and `w -ID-> v`.
pub fn plus_automaton(a1: &ConditionAutomaton) -> ConditionAutomaton {
    let mut out = ConditionAutomaton::new();
    let m = embed(&mut out, a1);
    let v = out.add_state("v");
    let w = out.add_state("w");
    out.add_initial(v);
    out.add_final(w);
    for &q in a1.initials() {
        out.add_transition(v, Step::Id, m[q]);
    }
    for &q in a1.finals() {
        out.add_transition(m[q], Step::Id, w);
    }
    out.add_transition(w, Step::Id, v);
    out.renumbered("q")
}

/// Compositional translation. Projections and coprojections become single
/// condition states holding the untranslated subexpression.
pub fn expr_to_automaton(e: &Expr) -> Result<ConditionAutomaton, ConstructionError> {
    let unsupported = |op| ConstructionError::Unsupported { op, expr: e.clone() };
    Ok(match e {
        Expr::Empty => empty_automaton(),
        Expr::Identity => identity_automaton(),
        Expr::Label(l) => label_automaton(l),
        Expr::Proj1(_) | Expr::Proj2(_) | Expr::Coproj1(_) | Expr::Coproj2(_) => condition_automaton(e.clone()),
        Expr::TransClosure(a) => plus_automaton(&expr_to_automaton(a)?),
        Expr::Compose(a, b) => compose_automata(&expr_to_automaton(a)?, &expr_to_automaton(b)?),
        Expr::Union(a, b) => union_automata(&expr_to_automaton(a)?, &expr_to_automaton(b)?),
        Expr::Diversity => return Err(unsupported("di")),
        Expr::Converse(_) => return Err(unsupported("conv")),
        Expr::Intersect(..) => return Err(unsupported("cap")),
        Expr::Difference(..) => return Err(unsupported("minus")),
    })
}

fn add_unique(slot: &mut Expr, e: Expr) {
    if e == Expr::Empty {
        return;
    }
    if *slot == Expr::Empty {
        *slot = e;
        return;
    }
    let mut members = Vec::new();
    flatten_union(slot, &mut members);
    if !members.contains(&&e) {
        *slot = Expr::union(std::mem::replace(slot, Expr::Empty), e);
    }
}

fn flatten_union<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Union(a, b) => {
            flatten_union(a, out);
            flatten_union(b, out);
        }
        _ => out.push(e),
    }
}

/// State elimination: a fresh initial `v` and final `w` are bridged by ID
/// steps, each edge `q -s-> r` starts as `ĉ(q) ∘ s ∘ ĉ(r)`, and states are
/// removed in ascending order of current degree (ties by index).
///
/// `ĉ` factors of condition-free states and the `id` of an ID step next to a
/// condition are left out. A star is only introduced for a nonempty loop.
pub fn automaton_to_expr(a: &ConditionAutomaton) -> Expr {
    let n = a.state_count();
    let (v, w) = (n, n + 1);
    let total = n + 2;
    let mut e = vec![vec![Expr::Empty; total]; total];
    let hat = |q: usize| (!a.gamma(q).is_empty()).then(|| a.c_hat(q));
    for (p, s, q) in a.transitions() {
        let mut factors: Vec<Expr> = Vec::new();
        factors.extend(hat(*p));
        if let Step::Label(l) = s {
            factors.push(Expr::label(l.clone()));
        }
        factors.extend(hat(*q));
        add_unique(&mut e[*p][*q], Expr::compose_all(factors));
    }
    for &q in a.initials() {
        add_unique(&mut e[v][q], hat(q).unwrap_or(Expr::Identity));
    }
    for &q in a.finals() {
        add_unique(&mut e[q][w], hat(q).unwrap_or(Expr::Identity));
    }
    let mut alive: Vec<bool> = vec![true; total];
    for _ in 0..n {
        let degree = |q: usize| {
            (0..total)
                .filter(|&r| r != q && alive[r])
                .filter(|&r| e[q][r] != Expr::Empty || e[r][q] != Expr::Empty)
                .count()
        };
        let q = (0..n)
            .filter(|&q| alive[q])
            .min_by_key(|&q| (degree(q), q))
            .expect("a live state remains");
        alive[q] = false;
        let ins: Vec<usize> = (0..total).filter(|&p| alive[p] && e[p][q] != Expr::Empty).collect();
        let outs: Vec<usize> = (0..total).filter(|&p| alive[p] && e[q][p] != Expr::Empty).collect();
        let lp = e[q][q].clone();
        for &p1 in &ins {
            for &p2 in &outs {
                let mut parts = vec![e[p1][q].clone()];
                if lp != Expr::Empty {
                    parts.push(Expr::star(lp.clone()));
                }
                parts.push(e[q][p2].clone());
                let path = Expr::compose_all(parts).simplify_empty();
                add_unique(&mut e[p1][p2], path);
            }
        }
        for r in 0..total {
            e[q][r] = Expr::Empty;
            e[r][q] = Expr::Empty;
        }
    }
    std::mem::replace(&mut e[v][w], Expr::Empty).simplify_empty()
}
