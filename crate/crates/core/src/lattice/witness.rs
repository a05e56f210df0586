use serde::Serialize;

use crate::eval::evaluate;
use crate::expr::{enumerate_exprs, parse_in, Expr, Fragment, Op};
use crate::graph::{enumerate_chains, fixtures, standard_alphabet, Graph};
use crate::relation::Relation;

/// The desk-scale behaviors the canned witnesses are checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCheck {
    /// `pi1(l1).pi1(l2)`: a node with two differently labeled children.
    Branching,
    /// `copi2(E).E.copi1(E)`: a chain of exactly one edge.
    ChainOfOneEdge,
    /// `copi2(E).(E.E)+.copi1(E)`: a chain of even positive depth.
    EvenDepth,
    /// `l1.(l2.l2)+.l1`: an even, nonzero run of `l2` between two `l1`.
    EvenGap,
    /// `pi1(E)`: neither empty nor all of `id` on a two-node chain.
    PartialIdentity,
    /// `E+`: reaches every distance along a chain.
    Unbounded,
}

impl WitnessCheck {
    pub const ALL: [WitnessCheck; 6] = [
        WitnessCheck::Branching,
        WitnessCheck::ChainOfOneEdge,
        WitnessCheck::EvenDepth,
        WitnessCheck::EvenGap,
        WitnessCheck::PartialIdentity,
        WitnessCheck::Unbounded,
    ];

    fn source(self) -> (&'static str, &'static [&'static str]) {
        match self {
            WitnessCheck::Branching => ("pi1(l1) . pi1(l2)", &["l1", "l2"]),
            WitnessCheck::ChainOfOneEdge => ("copi2(E) . E . copi1(E)", &["a"]),
            WitnessCheck::EvenDepth => ("copi2(E) . (E . E)+ . copi1(E)", &["a"]),
            WitnessCheck::EvenGap => ("l1 . (l2 . l2)+ . l1", &["l1", "l2"]),
            WitnessCheck::PartialIdentity => ("pi1(E)", &["a"]),
            WitnessCheck::Unbounded => ("E+", &["a"]),
        }
    }

    fn claim(self) -> &'static str {
        match self {
            WitnessCheck::Branching => "nonempty on the two-child tree with labels l1, l2; empty on every labeled chain",
            WitnessCheck::ChainOfOneEdge => "among unlabeled chains of depth 0..10, nonempty only on the chain with one edge",
            WitnessCheck::EvenDepth => "among unlabeled chains of depth 0..10, nonempty exactly at even depth >= 2",
            WitnessCheck::EvenGap => "on chains l1 l2^m l1 (m = 0..10), nonempty exactly when m is even and >= 2",
            WitnessCheck::PartialIdentity => {
                "strictly between 0 and id on the two-node chain, while every tc/cap/minus query up to height 3 \
                 contains id or misses it on each unlabeled chain up to 6 nodes"
            }
            WitnessCheck::Unbounded => "relates every node to every strict descendant on unlabeled chains up to 11 nodes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub expr: Expr,
    pub claim: &'static str,
    pub check: WitnessCheck,
}

impl Witness {
    pub fn new(check: WitnessCheck) -> Witness {
        let (text, alphabet) = check.source();
        Witness {
            expr: parse_in(text, alphabet).expect("witness expressions parse"),
            claim: check.claim(),
            check,
        }
    }

    /// Runs the behavior check on enumerated instances.
    pub fn run_check(&self) -> WitnessOutcome {
        let e = &self.expr;
        let nonempty = |g: &Graph| !evaluate(e, g).expect("witness evaluates").is_empty();
        let depths_where = |ok: &dyn Fn(usize) -> bool| -> Result<(), String> {
            for depth in 0..=10 {
                let got = nonempty(&fixtures::unlabeled_chain(depth + 1, "a"));
                if got != ok(depth) {
                    return Err(format!("depth {depth}: nonempty = {got}"));
                }
            }
            Ok(())
        };
        let result: Result<(), String> = match self.check {
            WitnessCheck::Branching => {
                let t = Graph::from_triples(&[("r", "l1", "x"), ("r", "l2", "y")]);
                if !nonempty(&t) {
                    Err("empty on the branching tree".into())
                } else {
                    let ab = ["l1".to_string(), "l2".to_string()];
                    match enumerate_chains(8, &ab).find(|c| nonempty(c)) {
                        Some(c) => Err(format!("nonempty on chain {c:?}")),
                        None => Ok(()),
                    }
                }
            }
            WitnessCheck::ChainOfOneEdge => depths_where(&|d| d == 1),
            WitnessCheck::EvenDepth => depths_where(&|d| d >= 2 && d % 2 == 0),
            WitnessCheck::EvenGap => (0..=10)
                .find_map(|m| {
                    let mut labels = vec!["l1"];
                    labels.extend(std::iter::repeat("l2").take(m));
                    labels.push("l1");
                    let got = nonempty(&fixtures::chain(&labels, &["l1", "l2"]));
                    (got != (m >= 2 && m % 2 == 0)).then(|| format!("m = {m}: nonempty = {got}"))
                })
                .map_or(Ok(()), Err),
            WitnessCheck::PartialIdentity => partial_identity(e),
            WitnessCheck::Unbounded => (1..=11)
                .find_map(|n| {
                    let g = fixtures::unlabeled_chain(n, "a");
                    let r = evaluate(e, &g).expect("witness evaluates");
                    let want = Relation::from_pairs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
                    (r != want).then(|| format!("{n} nodes: {} pairs", r.len()))
                })
                .map_or(Ok(()), Err),
        };
        match result {
            Ok(()) => WitnessOutcome {
                passed: true,
                detail: self.claim.to_string(),
            },
            Err(detail) => WitnessOutcome { passed: false, detail },
        }
    }
}

fn partial_identity(e: &Expr) -> Result<(), String> {
    let two = fixtures::unlabeled_chain(2, "a");
    let id = Relation::identity(2);
    let r = evaluate(e, &two).map_err(|x| x.to_string())?;
    if r.is_empty() || r == id || r.intersect(&id) != r {
        return Err(format!("not a partial identity on the two-node chain: {} pairs", r.len()));
    }
    let fragment = Fragment::from_ops(&[Op::Tc, Op::Cap, Op::Minus]);
    let chains: Vec<Graph> = enumerate_chains(6, &standard_alphabet(1)).collect();
    for x in enumerate_exprs(fragment, &standard_alphabet(1), 3) {
        for g in &chains {
            let n = g.node_count();
            let id = Relation::identity(n);
            let on_id = evaluate(&x, g).map_err(|e| e.to_string())?.intersect(&id);
            if !on_id.is_empty() && on_id != id {
                return Err(format!("`{x}` splits id on a {n}-node chain"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_witness_passes() {
        for c in WitnessCheck::ALL {
            let w = Witness::new(c);
            let out = w.run_check();
            assert!(out.passed, "{c:?}: {}", out.detail);
        }
    }

    #[test]
    fn a_wrong_claim_fails() {
        let mut w = Witness::new(WitnessCheck::EvenDepth);
        w.expr = parse_in("copi2(E) . E . copi1(E)", &["a"]).unwrap();
        assert!(!w.run_check().passed);
    }
}
