//! Relative expressiveness of the downward fragments, as Hasse diagrams.
//!
//! Each diagram groups fragments whose `BASE` closures are equally
//! expressive into one node; an edge `n → m` means every query of `n` is
//! expressible in `m`. Subsumption is reachability.

mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::eval::Semantics;
use crate::expr::{base_closure, Fragment, Op};
use crate::graph::GraphClass;

pub use witness::{Witness, WitnessCheck, WitnessOutcome};

const RESOURCE: &str = include_str!("../../resources/lattice.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("{fragment} (BASE {base}) is not encoded in the {diagram} diagram")]
    NotEncoded {
        fragment: Fragment,
        base: Fragment,
        diagram: &'static str,
    },
    #[error("no diagram covers {0} graphs")]
    UnsupportedClass(GraphClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeQuery {
    pub f1: Fragment,
    pub f2: Fragment,
    pub semantics: Semantics,
    pub class: GraphClass,
}

impl LatticeQuery {
    pub fn new(f1: Fragment, f2: Fragment, semantics: Semantics, class: GraphClass) -> LatticeQuery {
        LatticeQuery {
            f1,
            f2,
            semantics,
            class,
        }
    }
}

/// A (non-)subsumption statement: `L(f1) ⊑ L(f2)` when `holds`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Claim {
    pub f1: Fragment,
    pub f2: Fragment,
    pub semantics: SemanticsKey,
    pub class: ClassKey,
    pub holds: bool,
}

/// Orderable mirrors of [`Semantics`] and [`GraphClass`] for claim sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKey {
    Path,
    Boolean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKey {
    UnlabeledChain,
    LabeledChain,
    UnlabeledTree,
    LabeledTree,
    UnlabeledGraph,
    LabeledGraph,
}

impl From<Semantics> for SemanticsKey {
    fn from(s: Semantics) -> SemanticsKey {
        match s {
            Semantics::Path => SemanticsKey::Path,
            Semantics::Boolean => SemanticsKey::Boolean,
        }
    }
}

impl From<SemanticsKey> for Semantics {
    fn from(s: SemanticsKey) -> Semantics {
        match s {
            SemanticsKey::Path => Semantics::Path,
            SemanticsKey::Boolean => Semantics::Boolean,
        }
    }
}

impl From<GraphClass> for ClassKey {
    fn from(c: GraphClass) -> ClassKey {
        match c {
            GraphClass::UnlabeledChain => ClassKey::UnlabeledChain,
            GraphClass::LabeledChain => ClassKey::LabeledChain,
            GraphClass::UnlabeledTree => ClassKey::UnlabeledTree,
            GraphClass::LabeledTree => ClassKey::LabeledTree,
            GraphClass::UnlabeledGraph => ClassKey::UnlabeledGraph,
            GraphClass::LabeledGraph => ClassKey::LabeledGraph,
        }
    }
}

impl From<ClassKey> for GraphClass {
    fn from(c: ClassKey) -> GraphClass {
        match c {
            ClassKey::UnlabeledChain => GraphClass::UnlabeledChain,
            ClassKey::LabeledChain => GraphClass::LabeledChain,
            ClassKey::UnlabeledTree => GraphClass::UnlabeledTree,
            ClassKey::LabeledTree => GraphClass::LabeledTree,
            ClassKey::UnlabeledGraph => GraphClass::UnlabeledGraph,
            ClassKey::LabeledGraph => GraphClass::LabeledGraph,
        }
    }
}

impl ClassKey {
    pub const ALL: [ClassKey; 6] = [
        ClassKey::UnlabeledChain,
        ClassKey::LabeledChain,
        ClassKey::UnlabeledTree,
        ClassKey::LabeledTree,
        ClassKey::UnlabeledGraph,
        ClassKey::LabeledGraph,
    ];

    /// Direct is-a edges of the class lattice.
    fn parents(self) -> &'static [ClassKey] {
        match self {
            ClassKey::UnlabeledChain => &[ClassKey::LabeledChain, ClassKey::UnlabeledTree],
            ClassKey::LabeledChain => &[ClassKey::LabeledTree],
            ClassKey::UnlabeledTree => &[ClassKey::LabeledTree, ClassKey::UnlabeledGraph],
            ClassKey::LabeledTree => &[ClassKey::LabeledGraph],
            ClassKey::UnlabeledGraph => &[ClassKey::LabeledGraph],
            ClassKey::LabeledGraph => &[],
        }
    }

    /// Reflexive-transitive subclass test.
    pub fn is_subclass_of(self, other: ClassKey) -> bool {
        self == other || self.parents().iter().any(|p| p.is_subclass_of(other))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.holds { "⊑" } else { "⋢" };
        let sem = match self.semantics {
            SemanticsKey::Path => "path",
            SemanticsKey::Boolean => "boolean",
        };
        write!(
            f,
            "L{} {rel}{sem} L{} on {}",
            self.f1,
            self.f2,
            GraphClass::from(self.class)
        )
    }
}

/// Claims implied by `claim`: path subsumption gives boolean subsumption,
/// boolean non-subsumption gives path non-subsumption, subsumption holds on
/// every subclass and non-subsumption on every superclass. The input claim
/// itself is not included.
pub fn carry_over(claim: &Claim) -> BTreeSet<Claim> {
    let mut sems = vec![claim.semantics];
    match (claim.holds, claim.semantics) {
        (true, SemanticsKey::Path) => sems.push(SemanticsKey::Boolean),
        (false, SemanticsKey::Boolean) => sems.push(SemanticsKey::Path),
        _ => {}
    }
    let classes = ClassKey::ALL.into_iter().filter(|&c| {
        if claim.holds {
            c.is_subclass_of(claim.class)
        } else {
            claim.class.is_subclass_of(c)
        }
    });
    let mut out = BTreeSet::new();
    for c in classes {
        for &s in &sems {
            let d = Claim {
                semantics: s,
                class: c,
                ..*claim
            };
            if d != *claim {
                out.insert(d);
            }
        }
    }
    out
}

#[derive(Deserialize)]
struct RawLattice {
    version: u32,
    diagrams: Vec<RawDiagram>,
}

#[derive(Deserialize)]
struct RawDiagram {
    name: String,
    semantics: String,
    classes: Vec<String>,
    nodes: Vec<RawNode>,
    edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct RawNode {
    id: String,
    members: Vec<RawMember>,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawMemberKind {
    BaseOf(Vec<String>),
    SubsetsOf(Vec<String>),
}

#[derive(Deserialize)]
struct RawMember {
    #[serde(flatten)]
    kind: RawMemberKind,
    #[serde(default)]
    #[allow(dead_code)]
    note: Option<String>,
}

/// One encoded Hasse diagram.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub name: &'static str,
    pub semantics: Semantics,
    pub classes: Vec<GraphClass>,
    pub node_ids: Vec<String>,
    /// `BASE`-closed fragment → node index.
    members: BTreeMap<Fragment, usize>,
    /// `reach[i][j]`: node `j` is reachable from node `i`.
    reach: Vec<Vec<bool>>,
    pub edges: Vec<(usize, usize)>,
}

impl Diagram {
    /// The node holding `BASE(f)`.
    pub fn node_of(&self, f: Fragment) -> Result<usize, LatticeError> {
        let base = base_closure(f);
        self.members.get(&base).copied().ok_or(LatticeError::NotEncoded {
            fragment: f,
            base,
            diagram: self.name,
        })
    }

    pub fn reachable(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    pub fn members(&self) -> impl Iterator<Item = (Fragment, usize)> + '_ {
        self.members.iter().map(|(f, n)| (*f, *n))
    }
}

fn parse_ops(names: &[String]) -> Fragment {
    Fragment::parse(&names.join(",")).expect("lattice resource names known operators")
}

fn all_subsets(f: Fragment) -> Vec<Fragment> {
    let ops: Vec<Op> = f.ops().collect();
    (0u32..1 << ops.len())
        .map(|mask| {
            let picked: Vec<Op> = ops
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, op)| *op)
                .collect();
            Fragment::from_ops(&picked)
        })
        .collect()
}

fn load() -> Vec<Diagram> {
    let raw: RawLattice = serde_json::from_str(RESOURCE).expect("lattice resource is valid JSON");
    assert_eq!(raw.version, 1, "unsupported lattice resource version");
    raw.diagrams
        .into_iter()
        .map(|d| {
            let index: BTreeMap<&str, usize> = d.nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
            let mut members = BTreeMap::new();
            for (i, node) in d.nodes.iter().enumerate() {
                for m in &node.members {
                    let frags = match &m.kind {
                        RawMemberKind::BaseOf(ops) => vec![parse_ops(ops)],
                        RawMemberKind::SubsetsOf(ops) => all_subsets(parse_ops(ops)),
                    };
                    for f in frags {
                        let prev = members.insert(base_closure(f), i);
                        assert!(
                            prev.is_none_or(|p| p == i),
                            "{}: BASE{} placed in two nodes",
                            d.name,
                            base_closure(f)
                        );
                    }
                }
            }
            let edges: Vec<(usize, usize)> = d.edges.iter().map(|(a, b)| (index[a.as_str()], index[b.as_str()])).collect();
            let n = d.nodes.len();
            let mut reach = vec![vec![false; n]; n];
            for (i, row) in reach.iter_mut().enumerate() {
                row[i] = true;
            }
            for &(a, b) in &edges {
                reach[a][b] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
            Diagram {
                name: Box::leak(d.name.into_boxed_str()),
                semantics: d.semantics.parse().expect("diagram semantics"),
                classes: d.classes.iter().map(|c| c.parse().expect("diagram class")).collect(),
                node_ids: d.nodes.into_iter().map(|n| n.id).collect(),
                members,
                reach,
                edges,
            }
        })
        .collect()
}

/// All encoded diagrams.
pub fn diagrams() -> &'static [Diagram] {
    static CELL: OnceLock<Vec<Diagram>> = OnceLock::new();
    CELL.get_or_init(load)
}

/// The diagram answering queries under `semantics` on `class`.
pub fn diagram_for(semantics: Semantics, class: GraphClass) -> Result<&'static Diagram, LatticeError> {
    diagrams()
        .iter()
        .find(|d| d.semantics == semantics && d.classes.contains(&class))
        .ok_or(LatticeError::UnsupportedClass(class))
}

/// Whether `L(f1) ⊑ L(f2)` under the query's semantics and class.
pub fn subsumes(q: &LatticeQuery) -> Result<bool, LatticeError> {
    let d = diagram_for(q.semantics, q.class)?;
    Ok(d.reachable(d.node_of(q.f1)?, d.node_of(q.f2)?))
}

/// A canned query separating `L(f1)` from `L(f2)`, when subsumption fails.
/// `None` when it holds or the query is outside the encoded diagrams.
pub fn separation_witness(f1: Fragment, f2: Fragment, semantics: Semantics, class: GraphClass) -> Option<Witness> {
    if subsumes(&LatticeQuery::new(f1, f2, semantics, class)).unwrap_or(true) {
        return None;
    }
    let (b1, b2) = (base_closure(f1), base_closure(f2));
    let tc = |b: Fragment| b.contains(Op::Tc);
    let copi = |b: Fragment| b.contains(Op::Copi1) || b.contains(Op::Copi2);
    let check = if class.is_unlabeled() && semantics == Semantics::Boolean {
        if copi(b1) && !copi(b2) {
            WitnessCheck::ChainOfOneEdge
        } else {
            WitnessCheck::EvenDepth
        }
    } else if tc(b1) && !tc(b2) {
        match semantics {
            Semantics::Boolean => WitnessCheck::EvenGap,
            Semantics::Path => WitnessCheck::Unbounded,
        }
    } else if copi(b1) && !copi(b2) {
        WitnessCheck::ChainOfOneEdge
    } else {
        match semantics {
            Semantics::Boolean => WitnessCheck::Branching,
            Semantics::Path => WitnessCheck::PartialIdentity,
        }
    };
    Some(Witness::new(check))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frag(s: &str) -> Fragment {
        Fragment::parse(s).unwrap()
    }

    fn q(f1: &str, f2: &str, s: Semantics, c: GraphClass) -> Result<bool, LatticeError> {
        subsumes(&LatticeQuery::new(frag(f1), frag(f2), s, c))
    }

    #[test]
    fn examples() {
        use GraphClass::*;
        assert_eq!(q("pi", "", Semantics::Boolean, LabeledChain), Ok(true));
        assert_eq!(q("copi", "tc pi cap", Semantics::Boolean, UnlabeledTree), Ok(false));
        assert_eq!(q("tc, copi", "tc, copi", Semantics::Path, LabeledTree), Ok(true));
    }

    #[test]
    fn di_and_conv_only_where_drawn() {
        use GraphClass::*;
        assert_eq!(q("di conv tc", "", Semantics::Boolean, UnlabeledChain), Ok(true));
        assert!(matches!(
            q("di", "", Semantics::Boolean, UnlabeledTree),
            Err(LatticeError::NotEncoded { .. })
        ));
        assert!(q("di minus", "", Semantics::Boolean, UnlabeledChain).is_err());
        assert!(q("conv", "", Semantics::Path, LabeledTree).is_err());
        assert!(q("pi1", "", Semantics::Boolean, LabeledTree).is_err());
        assert_eq!(
            q("", "", Semantics::Path, LabeledGraph),
            Err(LatticeError::UnsupportedClass(LabeledGraph))
        );
    }

    #[test]
    fn carry_over_examples() {
        let c = Claim {
            f1: frag("tc"),
            f2: frag(""),
            semantics: SemanticsKey::Path,
            class: ClassKey::LabeledTree,
            holds: true,
        };
        let d = carry_over(&c);
        assert!(d.contains(&Claim {
            semantics: SemanticsKey::Boolean,
            ..c
        }));
        assert!(d.contains(&Claim {
            class: ClassKey::UnlabeledChain,
            ..c
        }));
        assert!(!d.iter().any(|x| x.class == ClassKey::LabeledGraph));

        let b = Claim {
            semantics: SemanticsKey::Boolean,
            ..c
        };
        assert!(carry_over(&b).iter().all(|x| x.semantics == SemanticsKey::Boolean));

        let n = Claim {
            class: ClassKey::UnlabeledChain,
            holds: false,
            ..b
        };
        let up = carry_over(&n);
        assert!(up.contains(&Claim {
            class: ClassKey::LabeledTree,
            ..n
        }));
        assert!(up.contains(&Claim {
            class: ClassKey::LabeledGraph,
            semantics: SemanticsKey::Path,
            ..n
        }));
    }

    #[test]
    fn class_lattice() {
        use ClassKey::*;
        assert!(UnlabeledChain.is_subclass_of(LabeledGraph));
        assert!(LabeledChain.is_subclass_of(LabeledTree));
        assert!(!LabeledChain.is_subclass_of(UnlabeledTree));
        assert!(!UnlabeledGraph.is_subclass_of(LabeledTree));
    }

    #[test]
    fn every_five_op_fragment_is_placed() {
        for d in diagrams() {
            for f in all_subsets(frag("tc pi copi cap minus")) {
                let paired = |a, b| f.contains(a) == f.contains(b);
                if paired(Op::Pi1, Op::Pi2) && paired(Op::Copi1, Op::Copi2) {
                    d.node_of(f).unwrap_or_else(|e| panic!("{e}"));
                }
            }
        }
    }

    #[test]
    fn witnesses_pick_the_right_separation() {
        use GraphClass::*;
        let w = |a: &str, b: &str, s, c| separation_witness(frag(a), frag(b), s, c).map(|w| w.check);
        assert_eq!(w("pi", "tc", Semantics::Boolean, LabeledTree), Some(WitnessCheck::Branching));
        assert_eq!(
            w("copi", "tc pi cap", Semantics::Boolean, UnlabeledChain),
            Some(WitnessCheck::ChainOfOneEdge)
        );
        assert_eq!(w("tc", "pi copi cap minus", Semantics::Boolean, LabeledChain), Some(WitnessCheck::EvenGap));
        assert_eq!(w("tc copi", "copi", Semantics::Boolean, UnlabeledChain), Some(WitnessCheck::EvenDepth));
        assert_eq!(w("pi", "tc cap minus", Semantics::Path, UnlabeledChain), Some(WitnessCheck::PartialIdentity));
        assert_eq!(w("tc", "pi", Semantics::Path, UnlabeledTree), Some(WitnessCheck::Unbounded));
        assert_eq!(w("", "tc", Semantics::Path, LabeledTree), None);
    }
}
