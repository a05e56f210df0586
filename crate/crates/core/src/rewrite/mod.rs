//! Rewriting pipelines that remove intersection, difference and projections
//! from queries on trees and chains, each with an optional bounded certificate.

mod normal;
mod projection;

pub use normal::{normalize_unlabeled_boolean, NormalForm, NormalFormReport, MIN_SEARCH_NODES};
pub use projection::{remove_projection_step, select_condition};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automata::{ConditionAutomaton, SizeSummary};
use crate::constructions::{
    automaton_to_expr, compose_automata, condition_automaton, difference_automata, empty_automaton, expr_to_automaton,
    identity_automaton, intersect_automata, label_automaton, plus_automaton, remove_identity_transitions,
    union_automata, ConstructionError,
};
use crate::eval::{check_equivalence, EquivVerdict, EvalError, OracleConfig, OracleError, Semantics};
use crate::expr::{Expr, Fragment, Op};
use crate::graph::{Bound, GraphClass};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RewriteError {
    #[error("pipeline `{pipeline}` accepts operators {allowed}, the input uses {used}")]
    Fragment {
        pipeline: &'static str,
        used: Fragment,
        allowed: Fragment,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    NoIntersectDiff,
    BooleanChainNoproj,
    TreeNopi2,
    UnlabeledNormalform,
}

impl Pipeline {
    pub const ALL: [Pipeline; 4] = [
        Pipeline::NoIntersectDiff,
        Pipeline::BooleanChainNoproj,
        Pipeline::TreeNopi2,
        Pipeline::UnlabeledNormalform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::NoIntersectDiff => "no-intersect-diff",
            Pipeline::BooleanChainNoproj => "boolean-chain-noproj",
            Pipeline::TreeNopi2 => "tree-nopi2",
            Pipeline::UnlabeledNormalform => "unlabeled-normalform",
        }
    }

    /// Semantics and class the pipeline's output is equivalent under.
    pub fn target(self) -> (Semantics, GraphClass) {
        match self {
            Pipeline::NoIntersectDiff => (Semantics::Path, GraphClass::LabeledTree),
            Pipeline::BooleanChainNoproj => (Semantics::Boolean, GraphClass::LabeledChain),
            Pipeline::TreeNopi2 => (Semantics::Boolean, GraphClass::LabeledTree),
            Pipeline::UnlabeledNormalform => (Semantics::Boolean, GraphClass::UnlabeledTree),
        }
    }

    /// Default certificate bound: trees up to 5 nodes, chains up to 8 edges,
    /// unlabeled trees up to 6 nodes.
    pub fn default_bound(self) -> Bound {
        match self {
            Pipeline::NoIntersectDiff | Pipeline::TreeNopi2 => Bound::new(5, 2),
            Pipeline::BooleanChainNoproj => Bound::new(9, 2),
            Pipeline::UnlabeledNormalform => Bound::new(6, 1),
        }
    }

    pub fn run(self, e: &Expr) -> Result<(Expr, Vec<SizeSummary>), RewriteError> {
        match self {
            Pipeline::NoIntersectDiff => eliminate_with_trace(e),
            Pipeline::BooleanChainNoproj => remove_projections_with_trace(e, false),
            Pipeline::TreeNopi2 => remove_projections_with_trace(e, true),
            Pipeline::UnlabeledNormalform => {
                let report = normalize_unlabeled_boolean(e)?;
                let label = e.labels().into_iter().next().unwrap_or_else(|| "a".to_string());
                Ok((report.form.to_expr(&label), Vec::new()))
            }
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Pipeline, String> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown pipeline `{s}`"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RewriteReport {
    #[serde(serialize_with = "as_text")]
    pub input: Expr,
    #[serde(serialize_with = "as_text")]
    pub output: Expr,
    pub pipeline: Pipeline,
    pub sizes: Vec<SizeSummary>,
    pub certificate: Option<EquivVerdict>,
}

fn as_text<S: serde::Serializer>(e: &Expr, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

impl RewriteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `pipeline` on `e` and, when `certify` is given, checks the output
/// against the input under the pipeline's semantics and class.
pub fn rewrite(e: &Expr, pipeline: Pipeline, certify: Option<OracleConfig>) -> Result<RewriteReport, RewriteError> {
    let (output, sizes) = pipeline.run(e)?;
    let certificate = match certify {
        None => None,
        Some(config) => {
            let (semantics, _) = pipeline.target();
            Some(check_equivalence(e, &output, semantics, &config)?)
        }
    };
    Ok(RewriteReport {
        input: e.clone(),
        output,
        pipeline,
        sizes,
        certificate,
    })
}

/// Oracle configuration for the default certificate of `pipeline`.
pub fn default_certificate_config(pipeline: Pipeline) -> OracleConfig {
    let (_, class) = pipeline.target();
    OracleConfig::new(class, pipeline.default_bound())
}

/// A `∩`/`−`-free expression path-equivalent to `e` on single-labeled trees.
pub fn eliminate_intersect_difference(e: &Expr) -> Result<Expr, RewriteError> {
    Ok(eliminate_with_trace(e)?.0)
}

fn eliminate_with_trace(e: &Expr) -> Result<(Expr, Vec<SizeSummary>), RewriteError> {
    if !e.is_downward() {
        let used = e.operators_used();
        return Err(RewriteError::Fragment {
            pipeline: Pipeline::NoIntersectDiff.name(),
            used,
            allowed: used.without(Op::Di).without(Op::Conv),
        });
    }
    if e.is_boolean_free() {
        return Ok((e.clone(), Vec::new()));
    }
    let a = boolean_free_automaton(e)?;
    Ok((automaton_to_expr(&a), vec![a.size_summary()]))
}

/// Bottom-up automaton for a downward expression, with `∩` and `−` built as
/// products and projection arguments translated back to expressions.
fn boolean_free_automaton(e: &Expr) -> Result<ConditionAutomaton, RewriteError> {
    if e.is_boolean_free() {
        return Ok(remove_identity_transitions(&expr_to_automaton(e)?).trim());
    }
    let a = match e {
        Expr::Empty => empty_automaton(),
        Expr::Identity => identity_automaton(),
        Expr::Label(l) => label_automaton(l),
        Expr::TransClosure(x) => plus_automaton(&boolean_free_automaton(x)?),
        Expr::Compose(x, y) => compose_automata(&boolean_free_automaton(x)?, &boolean_free_automaton(y)?),
        Expr::Union(x, y) => union_automata(&boolean_free_automaton(x)?, &boolean_free_automaton(y)?),
        Expr::Intersect(x, y) => intersect_automata(&boolean_free_automaton(x)?, &boolean_free_automaton(y)?),
        Expr::Difference(x, y) => difference_automata(&boolean_free_automaton(x)?, &boolean_free_automaton(y)?)?,
        Expr::Proj1(x) | Expr::Proj2(x) | Expr::Coproj1(x) | Expr::Coproj2(x) => {
            let inner = automaton_to_expr(&boolean_free_automaton(x)?);
            let wrapped = match e {
                Expr::Proj1(_) => Expr::pi1(inner),
                Expr::Proj2(_) => Expr::pi2(inner),
                Expr::Coproj1(_) => Expr::copi1(inner),
                _ => Expr::copi2(inner),
            };
            condition_automaton(wrapped.simplify_empty())
        }
        Expr::Diversity | Expr::Converse(_) => unreachable!("downward input"),
    };
    Ok(remove_identity_transitions(&a).trim())
}

/// A `π`-free expression boolean-equivalent to `e ∈ L(tc, π)` on labeled chains.
pub fn remove_projections_boolean_chain(e: &Expr) -> Result<Expr, RewriteError> {
    Ok(remove_projections_with_trace(e, false)?.0)
}

/// A `π₂`-free expression boolean-equivalent to `e ∈ L(tc, π₂)` on labeled trees.
pub fn remove_pi2_boolean_tree(e: &Expr) -> Result<Expr, RewriteError> {
    Ok(remove_projections_with_trace(e, true)?.0)
}

fn remove_projections_with_trace(e: &Expr, pi2_only: bool) -> Result<(Expr, Vec<SizeSummary>), RewriteError> {
    let (pipeline, allowed) = if pi2_only {
        (Pipeline::TreeNopi2, Fragment::from_ops(&[Op::Tc, Op::Pi2]))
    } else {
        (Pipeline::BooleanChainNoproj, Fragment::from_ops(&[Op::Tc, Op::Pi1, Op::Pi2]))
    };
    let used = e.operators_used();
    if !used.is_subset(allowed) {
        return Err(RewriteError::Fragment {
            pipeline: pipeline.name(),
            used,
            allowed,
        });
    }
    let mut a = remove_identity_transitions(&expr_to_automaton(e)?).trim();
    let mut sizes = vec![a.size_summary()];
    while a.condition_depth().unwrap_or(0) > 0 {
        a = remove_projection_step(&a)?;
        sizes.push(a.size_summary());
    }
    Ok((automaton_to_expr(&a), sizes))
}

/// True when the `(depth, weight)` pairs of `sizes` strictly decrease
/// lexicographically.
pub fn trace_decreases(sizes: &[SizeSummary]) -> bool {
    sizes.windows(2).all(|w| {
        let m = |s: &SizeSummary| (s.condition_depth.unwrap_or(usize::MAX), s.condition_weight.unwrap_or(usize::MAX));
        m(&w[1]) < m(&w[0])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{boolean_equivalent, evaluate, path_equivalent};
    use crate::expr::parse;
    use crate::graph::{enumerate_chains, standard_alphabet};

    #[test]
    fn power_intersection_on_chains_and_trees() {
        let e = parse("(a^3)+ & (a^7)+").unwrap();
        let out = eliminate_intersect_difference(&e).unwrap();
        assert!(out.is_boolean_free());
        let target = parse("(a^21)+").unwrap();
        for g in enumerate_chains(46, &standard_alphabet(1)) {
            assert_eq!(evaluate(&out, &g).unwrap(), evaluate(&target, &g).unwrap());
        }
        assert!(path_equivalent(&e, &out, GraphClass::LabeledTree, Bound::new(6, 2)).unwrap().is_equivalent());
    }

    #[test]
    fn boolean_free_input_is_unchanged() {
        let e = parse("a | b").unwrap();
        assert_eq!(eliminate_intersect_difference(&e).unwrap(), e);
    }

    #[test]
    fn projection_of_label_intersection_is_empty() {
        let e = parse("pi1(a & b)").unwrap();
        let out = eliminate_intersect_difference(&e).unwrap();
        assert!(out.is_boolean_free());
        assert!(path_equivalent(&out, &Expr::Empty, GraphClass::LabeledTree, Bound::new(6, 2)).unwrap().is_equivalent());
    }

    #[test]
    fn difference_introduces_coprojections_only_under_base() {
        let e = parse("a . b* \\ pi1(b) . a").unwrap();
        let out = eliminate_intersect_difference(&e).unwrap();
        let allowed = e.operators_used().base().without(Op::Cap).without(Op::Minus);
        assert!(out.operators_used().is_subset(allowed), "{out}");
        assert!(path_equivalent(&e, &out, GraphClass::LabeledTree, Bound::new(6, 2)).unwrap().is_equivalent());
    }

    #[test]
    fn non_downward_input_is_rejected() {
        assert!(eliminate_intersect_difference(&parse("conv(a) & a").unwrap()).is_err());
    }

    #[test]
    fn chain_projection_examples() {
        for src in ["pi2(a) . b", "pi1(a . b)", "a+", "pi1(pi2(a) . b) . a"] {
            let e = parse(src).unwrap();
            let (out, sizes) = remove_projections_with_trace(&e, false).unwrap();
            assert!(!out.operators_used().contains(Op::Pi1) && !out.operators_used().contains(Op::Pi2), "{out}");
            assert!(trace_decreases(&sizes));
            let v = boolean_equivalent(&e, &out, GraphClass::LabeledChain, Bound::new(9, 2)).unwrap();
            assert!(v.is_equivalent(), "{src} vs {out}");
        }
    }

    #[test]
    fn tree_pi2_examples() {
        for src in ["pi2(a) . b", "a . pi2(b+) . c"] {
            let e = parse(src).unwrap();
            let out = remove_pi2_boolean_tree(&e).unwrap();
            assert!(!out.operators_used().contains(Op::Pi2));
            let v = boolean_equivalent(&e, &out, GraphClass::LabeledTree, Bound::new(6, 3)).unwrap();
            assert!(v.is_equivalent(), "{src} vs {out}");
        }
        assert!(matches!(
            remove_pi2_boolean_tree(&parse("pi1(a) . pi1(b)").unwrap()),
            Err(RewriteError::Fragment { .. })
        ));
    }

    #[test]
    fn report_serializes_with_certificate() {
        let e = parse("pi2(a) . b").unwrap();
        let p = Pipeline::BooleanChainNoproj;
        let r = rewrite(&e, p, Some(default_certificate_config(p))).unwrap();
        assert!(r.certificate.as_ref().unwrap().is_equivalent());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["pipeline"], "boolean-chain-noproj");
        assert_eq!(v["input"], "pi2(a) . b");
        assert_eq!(v["certificate"]["status"], "equivalent-up-to-bound");
    }

    #[test]
    fn pipeline_names_round_trip() {
        for p in Pipeline::ALL {
            assert_eq!(p.name().parse::<Pipeline>().unwrap(), p);
        }
    }
}
