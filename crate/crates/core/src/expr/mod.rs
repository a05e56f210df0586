//! Navigational expressions over edge-labeled graphs.

mod fragment;
mod generate;
mod parse;
mod render;
mod simplify;

pub use fragment::{base_closure, Fragment, Op};
pub use generate::enumerate_exprs;
pub use parse::{parse, parse_in, ParseError};

use std::collections::BTreeSet;

/// Abstract syntax of a navigational expression.
///
/// Shorthands (`e*`, `e^k`, `E`, `A`) never appear here; the parser expands them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Empty,
    Identity,
    Diversity,
    Label(String),
    Converse(Box<Expr>),
    TransClosure(Box<Expr>),
    Proj1(Box<Expr>),
    Proj2(Box<Expr>),
    Coproj1(Box<Expr>),
    Coproj2(Box<Expr>),
    Compose(Box<Expr>, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Difference(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn label(name: impl Into<String>) -> Expr {
        Expr::Label(name.into())
    }

    pub fn converse(e: Expr) -> Expr {
        Expr::Converse(Box::new(e))
    }

    pub fn plus(e: Expr) -> Expr {
        Expr::TransClosure(Box::new(e))
    }

    /// `e*`, i.e. `id ∪ e⁺`.
    pub fn star(e: Expr) -> Expr {
        Expr::union(Expr::Identity, Expr::plus(e))
    }

    pub fn pi1(e: Expr) -> Expr {
        Expr::Proj1(Box::new(e))
    }

    pub fn pi2(e: Expr) -> Expr {
        Expr::Proj2(Box::new(e))
    }

    pub fn copi1(e: Expr) -> Expr {
        Expr::Coproj1(Box::new(e))
    }

    pub fn copi2(e: Expr) -> Expr {
        Expr::Coproj2(Box::new(e))
    }

    pub fn compose(a: Expr, b: Expr) -> Expr {
        Expr::Compose(Box::new(a), Box::new(b))
    }

    pub fn union(a: Expr, b: Expr) -> Expr {
        Expr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersect(a: Expr, b: Expr) -> Expr {
        Expr::Intersect(Box::new(a), Box::new(b))
    }

    pub fn difference(a: Expr, b: Expr) -> Expr {
        Expr::Difference(Box::new(a), Box::new(b))
    }

    /// `e^k`: `id` for `k = 0`, otherwise `e ∘ e^(k-1)`.
    pub fn power(e: Expr, k: usize) -> Expr {
        let mut out = Expr::Identity;
        for _ in 0..k {
            out = Expr::compose(e.clone(), out);
        }
        out
    }

    /// Left-nested union of all labels, in order; `∅` for an empty alphabet.
    pub fn any_label<S: AsRef<str>>(alphabet: &[S]) -> Expr {
        Expr::union_all(alphabet.iter().map(|l| Expr::label(l.as_ref())))
    }

    /// Left-nested union of the given expressions; `∅` if there are none.
    pub fn union_all(items: impl IntoIterator<Item = Expr>) -> Expr {
        let mut it = items.into_iter();
        match it.next() {
            None => Expr::Empty,
            Some(first) => it.fold(first, Expr::union),
        }
    }

    /// Left-nested composition; `id` if there are none.
    pub fn compose_all(items: impl IntoIterator<Item = Expr>) -> Expr {
        let mut it = items.into_iter();
        match it.next() {
            None => Expr::Identity,
            Some(first) => it.fold(first, Expr::compose),
        }
    }

    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Empty | Expr::Identity | Expr::Diversity | Expr::Label(_) => vec![],
            Expr::Converse(a)
            | Expr::TransClosure(a)
            | Expr::Proj1(a)
            | Expr::Proj2(a)
            | Expr::Coproj1(a)
            | Expr::Coproj2(a) => vec![a],
            Expr::Compose(a, b)
            | Expr::Union(a, b)
            | Expr::Intersect(a, b)
            | Expr::Difference(a, b) => vec![a, b],
        }
    }

    /// Number of operator applications; atoms have size 0.
    pub fn size(&self) -> usize {
        match self {
            Expr::Empty | Expr::Identity | Expr::Diversity | Expr::Label(_) => 0,
            _ => 1 + self.children().into_iter().map(Expr::size).sum::<usize>(),
        }
    }

    /// Non-atomic operators occurring in the expression.
    pub fn operators_used(&self) -> Fragment {
        let mut f = Fragment::empty();
        self.collect_ops(&mut f);
        f
    }

    fn collect_ops(&self, f: &mut Fragment) {
        let op = match self {
            Expr::Diversity => Some(Op::Di),
            Expr::Converse(_) => Some(Op::Conv),
            Expr::TransClosure(_) => Some(Op::Tc),
            Expr::Proj1(_) => Some(Op::Pi1),
            Expr::Proj2(_) => Some(Op::Pi2),
            Expr::Coproj1(_) => Some(Op::Copi1),
            Expr::Coproj2(_) => Some(Op::Copi2),
            Expr::Intersect(..) => Some(Op::Cap),
            Expr::Difference(..) => Some(Op::Minus),
            _ => None,
        };
        if let Some(op) = op {
            f.insert(op);
        }
        for c in self.children() {
            c.collect_ops(f);
        }
    }

    /// Edge labels occurring in the expression.
    pub fn labels(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<String>) {
        if let Expr::Label(l) = self {
            out.insert(l.clone());
        }
        for c in self.children() {
            c.collect_labels(out);
        }
    }

    /// Free of `di` and converse, so only downward navigation is expressible.
    pub fn is_downward(&self) -> bool {
        let ops = self.operators_used();
        !ops.contains(Op::Di) && !ops.contains(Op::Conv)
    }

    /// True if the expression contains no intersection or difference.
    pub fn is_boolean_free(&self) -> bool {
        let ops = self.operators_used();
        !ops.contains(Op::Cap) && !ops.contains(Op::Minus)
    }

    /// Nesting depth of projections, defined on `L(⁺, π)` only.
    ///
    /// Returns `None` outside that fragment.
    pub fn condition_depth(&self) -> Option<usize> {
        match self {
            Expr::Empty | Expr::Identity | Expr::Label(_) => Some(0),
            Expr::TransClosure(a) => a.condition_depth(),
            Expr::Proj1(a) | Expr::Proj2(a) => a.condition_depth().map(|d| d + 1),
            Expr::Compose(a, b) | Expr::Union(a, b) => {
                Some(a.condition_depth()?.max(b.condition_depth()?))
            }
            _ => None,
        }
    }

    /// Syntactic condition test: `∅`, `id`, projections, coprojections, and
    /// compositions or unions of conditions. Sound but not complete.
    pub fn is_condition(&self) -> bool {
        match self {
            Expr::Identity
            | Expr::Empty
            | Expr::Proj1(_)
            | Expr::Proj2(_)
            | Expr::Coproj1(_)
            | Expr::Coproj2(_) => true,
            Expr::Compose(a, b) | Expr::Union(a, b) => a.is_condition() && b.is_condition(),
            _ => false,
        }
    }

    /// One of the six atomic condition forms an automaton state may carry.
    pub fn is_atomic_condition(&self) -> bool {
        matches!(
            self,
            Expr::Identity
                | Expr::Empty
                | Expr::Proj1(_)
                | Expr::Proj2(_)
                | Expr::Coproj1(_)
                | Expr::Coproj2(_)
        )
    }

    pub fn simplify_empty(&self) -> Expr {
        simplify::simplify_empty(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_counts_operators() {
        assert_eq!(Expr::Identity.size(), 0);
        assert_eq!(parse("a . b").unwrap().size(), 1);
        assert_eq!(parse("pi1(a) & b+").unwrap().size(), 3);
    }

    #[test]
    fn power_nests_to_the_right() {
        let a = Expr::label("a");
        assert_eq!(
            Expr::power(a.clone(), 2),
            Expr::compose(a.clone(), Expr::compose(a, Expr::Identity))
        );
        assert_eq!(Expr::power(Expr::label("x"), 0), Expr::Identity);
    }

    #[test]
    fn depth_of_nested_projections() {
        let e = parse("pi1(a . pi2(b+)) | c").unwrap();
        assert_eq!(e.condition_depth(), Some(2));
        assert_eq!(parse("copi1(a)").unwrap().condition_depth(), None);
        assert_eq!(parse("a & b").unwrap().condition_depth(), None);
    }

    #[test]
    fn downward_rejects_di_and_conv() {
        assert!(parse("a+ . pi1(b)").unwrap().is_downward());
        assert!(!parse("conv(a)").unwrap().is_downward());
        assert!(!parse("di").unwrap().is_downward());
    }
}
