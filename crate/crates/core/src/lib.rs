//! Navigational expressions on edge-labeled trees.
//!
//! The crate evaluates expressions of the relational calculus with transitive
//! closure, compiles them to condition automata, and removes intersection,
//! difference and projections where trees or chains allow it. Every rewrite
//! can be checked against an exhaustive bounded oracle.

pub mod expr;
pub mod graph;
pub mod relation;
pub mod eval;
pub mod automata;
pub mod constructions;
pub mod rewrite;
pub mod lattice;

pub use expr::{parse, parse_in, Expr, Fragment, Op};
pub use graph::{Graph, GraphClass};
pub use relation::Relation;
