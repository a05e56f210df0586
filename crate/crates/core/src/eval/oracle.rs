//! Bounded path- and boolean-equivalence oracles over enumerated graph classes.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{evaluate, EvalError};
use crate::expr::Expr;
use crate::graph::{enumerate, instance_count, standard_alphabet, Bound, Graph, GraphClass};

/// Default cap on the number of instances an oracle run may visit.
pub const DEFAULT_CEILING: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("resource ceiling exceeded: {count} instances requested, ceiling is {ceiling}")]
    Ceiling { count: u128, ceiling: u128 },
    #[error("queries use {used} labels but the bound allows {allowed}")]
    LabelBudget { used: usize, allowed: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Path,
    Boolean,
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Semantics, String> {
        match s {
            "path" => Ok(Semantics::Path),
            "boolean" | "bool" => Ok(Semantics::Boolean),
            _ => Err(format!("unknown semantics `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    EquivalentUpToBound,
    Counterexample,
}

/// Outcome of a bounded equivalence check. Never an unbounded claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivVerdict {
    pub status: VerdictStatus,
    pub semantics: Semantics,
    pub class: GraphClass,
    pub bound: Bound,
    pub alphabet: Vec<String>,
    pub random_instances: usize,
    pub seed: u64,
    pub instances_checked: u64,
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Graph>,
}

fn serialize_witness<S: serde::Serializer>(g: &Option<Graph>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        None => s.serialize_none(),
        Some(g) => {
            let v: serde_json::Value = serde_json::from_str(&g.to_json()).map_err(serde::ser::Error::custom)?;
            v.serialize(s)
        }
    }
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.status == VerdictStatus::EquivalentUpToBound
    }
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub class: GraphClass,
    pub bound: Bound,
    /// Random instances drawn beyond the exhaustive bound.
    pub random_instances: usize,
    pub seed: u64,
    /// Hand-picked graphs checked before the enumeration.
    pub extra: Vec<Graph>,
    pub ceiling: u128,
}

impl OracleConfig {
    pub fn new(class: GraphClass, bound: Bound) -> OracleConfig {
        OracleConfig {
            class,
            bound,
            random_instances: 0,
            seed: 0,
            extra: Vec::new(),
            ceiling: DEFAULT_CEILING,
        }
    }
}

/// Alphabet for checking queries that mention `used`: the used labels,
/// padded with fresh names up to `labels` (exactly one label for unlabeled classes).
pub fn oracle_alphabet(used: &BTreeSet<String>, class: GraphClass, labels: usize) -> Result<Vec<String>, OracleError> {
    let allowed = if class.is_unlabeled() { 1 } else { labels.max(1) };
    if used.len() > allowed {
        return Err(OracleError::LabelBudget {
            used: used.len(),
            allowed,
        });
    }
    let mut out: Vec<String> = used.iter().cloned().collect();
    let mut fresh = standard_alphabet(allowed + used.len()).into_iter();
    while out.len() < allowed {
        let l = fresh.next().expect("enough fresh names");
        if !used.contains(&l) {
            out.push(l);
        }
    }
    out.sort();
    Ok(out)
}

/// Extra graphs, then the exhaustive enumeration, then seeded random instances.
pub fn instances(alphabet: &[String], config: &OracleConfig) -> Result<Box<dyn Iterator<Item = Graph>>, OracleError> {
    let count = instance_count(config.class, alphabet.len(), config.bound);
    if count > config.ceiling {
        return Err(OracleError::Ceiling {
            count,
            ceiling: config.ceiling,
        });
    }
    let extra = config.extra.clone().into_iter();
    let exhaustive = enumerate(config.class, alphabet, config.bound);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (class, bound, alphabet) = (config.class, config.bound, alphabet.to_vec());
    let random = (0..config.random_instances).map(move |_| random_instance(class, bound, &alphabet, &mut rng));
    Ok(Box::new(extra.chain(exhaustive).chain(random)))
}

fn random_instance(class: GraphClass, bound: Bound, alphabet: &[String], rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(bound.max_nodes + 1..=2 * bound.max_nodes + 1);
    let mut g = Graph::new(alphabet);
    for i in 0..n {
        g.ensure_node(&format!("n{i}"));
    }
    let label = |rng: &mut ChaCha8Rng| rng.gen_range(0..alphabet.len());
    if class.is_tree() {
        for i in 1..n {
            let parent = if class.is_chain() { i - 1 } else { rng.gen_range(0..i) };
            let l = label(rng);
            g.add_edge_ix(parent, l, i);
        }
    } else {
        let edges = rng.gen_range(0..=2 * n);
        for _ in 0..edges {
            let (f, t, l) = (rng.gen_range(0..n), rng.gen_range(0..n), label(rng));
            g.add_edge_ix(f, l, t);
        }
    }
    g
}

/// Runs `differs` on every instance; returns the first graph it flags and the
/// number of instances visited.
pub fn find_counterexample<E>(
    graphs: impl Iterator<Item = Graph>,
    mut differs: impl FnMut(&Graph) -> Result<bool, E>,
) -> Result<(Option<Graph>, u64), E> {
    let mut checked = 0;
    for g in graphs {
        checked += 1;
        if differs(&g)? {
            return Ok((Some(g), checked));
        }
    }
    Ok((None, checked))
}

pub fn check_equivalence(e1: &Expr, e2: &Expr, semantics: Semantics, config: &OracleConfig) -> Result<EquivVerdict, OracleError> {
    let mut used = e1.labels();
    used.extend(e2.labels());
    let alphabet = oracle_alphabet(&used, config.class, config.bound.labels)?;
    let graphs = instances(&alphabet, config)?;
    let (witness, checked) = find_counterexample(graphs, |g| -> Result<bool, OracleError> {
        let (r1, r2) = (evaluate(e1, g)?, evaluate(e2, g)?);
        Ok(match semantics {
            Semantics::Path => r1 != r2,
            Semantics::Boolean => r1.is_empty() != r2.is_empty(),
        })
    })?;
    Ok(EquivVerdict {
        status: if witness.is_some() {
            VerdictStatus::Counterexample
        } else {
            VerdictStatus::EquivalentUpToBound
        },
        semantics,
        class: config.class,
        bound: config.bound,
        alphabet,
        random_instances: config.random_instances,
        seed: config.seed,
        instances_checked: checked,
        witness,
    })
}

pub fn path_equivalent(e1: &Expr, e2: &Expr, class: GraphClass, bound: Bound) -> Result<EquivVerdict, OracleError> {
    check_equivalence(e1, e2, Semantics::Path, &OracleConfig::new(class, bound))
}

pub fn boolean_equivalent(e1: &Expr, e2: &Expr, class: GraphClass, bound: Bound) -> Result<EquivVerdict, OracleError> {
    check_equivalence(e1, e2, Semantics::Boolean, &OracleConfig::new(class, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, parse_in};
    use crate::graph::{classify, fixtures};

    #[test]
    fn reflexive_and_empty() {
        let e = parse("a . pi1(b+)").unwrap();
        assert!(path_equivalent(&e, &e, GraphClass::LabeledTree, Bound::new(4, 2)).unwrap().is_equivalent());
        let z = Expr::Empty;
        assert!(boolean_equivalent(&z, &z, GraphClass::LabeledChain, Bound::new(4, 2)).unwrap().is_equivalent());
    }

    #[test]
    fn projection_then_label_on_chains() {
        let v = boolean_equivalent(
            &parse("pi2(a) . b").unwrap(),
            &parse("a . b").unwrap(),
            GraphClass::LabeledChain,
            Bound::new(9, 2),
        )
        .unwrap();
        assert!(v.is_equivalent());
    }

    #[test]
    fn depth_two_witness_separates_from_two_steps() {
        let one = ["a"];
        let v = boolean_equivalent(
            &parse_in("copi2(E) . E . copi1(E)", &one).unwrap(),
            &parse_in("E . E", &one).unwrap(),
            GraphClass::UnlabeledChain,
            Bound::new(10, 1),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::Counterexample);
        let w = v.witness.unwrap();
        assert_eq!(classify(&w).depth, 1);
    }

    #[test]
    fn power_dag_separates_power_intersection() {
        let mut config = OracleConfig::new(GraphClass::LabeledGraph, Bound::new(2, 1).with_max_edges(2));
        config.extra.push(fixtures::power_dag());
        let v = check_equivalence(&parse("a^3 & a^7").unwrap(), &Expr::Empty, Semantics::Path, &config).unwrap();
        assert_eq!(v.witness, Some(fixtures::power_dag()));
    }

    #[test]
    fn ceiling_is_enforced() {
        let mut config = OracleConfig::new(GraphClass::LabeledTree, Bound::new(9, 3));
        config.ceiling = 1000;
        let e = parse("a").unwrap();
        assert!(matches!(
            check_equivalence(&e, &e, Semantics::Path, &config),
            Err(OracleError::Ceiling { .. })
        ));
    }

    #[test]
    fn random_instances_are_seeded() {
        let mut config = OracleConfig::new(GraphClass::LabeledTree, Bound::new(3, 2));
        config.random_instances = 20;
        config.seed = 7;
        let alphabet = standard_alphabet(2);
        let a: Vec<String> = instances(&alphabet, &config).unwrap().map(|g| g.to_json()).collect();
        let b: Vec<String> = instances(&alphabet, &config).unwrap().map(|g| g.to_json()).collect();
        assert_eq!(a, b);
        let randoms = &a[a.len() - 20..];
        for json in randoms {
            let g = Graph::from_json(json).unwrap();
            assert!(classify(&g).is_tree());
            assert!(g.node_count() > 3);
        }
    }
}
