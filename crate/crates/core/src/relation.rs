//! Binary relations over `0..n`, stored as one bitset row per node.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

/// A set of nodes over `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    bits: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl NodeSet {
    pub fn empty(n: usize) -> NodeSet {
        NodeSet {
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> NodeSet {
        let mut s = NodeSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.bits[w] & b == 0;
        self.bits[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + t)
        })
    })
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        let words = words_for(n);
        Relation {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn diversity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    r.insert(i, j);
                }
            }
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    /// The identity restricted to `set`.
    pub fn diagonal(n: usize, set: &NodeSet) -> Relation {
        Relation::from_pairs(n, set.iter().map(|i| (i, i)))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        let w = self.words;
        self.bits[i * w + j / 64] |= 1u64 << (j % 64);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] & (1u64 << (j % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(i))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.successors(i).map(move |j| (i, j)))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Relation) -> Relation {
        self.zip(other, |a, b| a & !b)
    }

    fn zip(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Relation {
        assert_eq!(self.n, other.n, "relations over different node counts");
        Relation {
            n: self.n,
            words: self.words,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n, "relations over different node counts");
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            let mut acc = vec![0u64; self.words];
            for k in self.successors(i) {
                for (a, b) in acc.iter_mut().zip(other.row(k)) {
                    *a |= b;
                }
            }
            out.row_mut(i).copy_from_slice(&acc);
        }
        out
    }

    pub fn converse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(i, j)| (j, i)))
    }

    /// `R⁺`, by repeated squaring until nothing changes.
    pub fn transitive_closure(&self) -> Relation {
        let mut r = self.clone();
        loop {
            let next = r.union(&r.compose(&r));
            if next == r {
                return r;
            }
            r = next;
        }
    }

    /// Nodes with at least one successor.
    pub fn domain(&self) -> NodeSet {
        let mut s = NodeSet::empty(self.n);
        for i in 0..self.n {
            if self.row(i).iter().any(|w| *w != 0) {
                s.insert(i);
            }
        }
        s
    }

    /// Nodes with at least one predecessor.
    pub fn range(&self) -> NodeSet {
        let mut s = NodeSet::empty(self.n);
        for i in 0..self.n {
            for (a, b) in s.bits.iter_mut().zip(self.row(i)) {
                *a |= b;
            }
        }
        s
    }

    /// Successors of every node in `set`.
    pub fn image(&self, set: &NodeSet) -> NodeSet {
        let mut s = NodeSet::empty(self.n);
        for i in set.iter() {
            for (a, b) in s.bits.iter_mut().zip(self.row(i)) {
                *a |= b;
            }
        }
        s
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rel(n: usize) -> impl Strategy<Value = Relation> {
        proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |p| Relation::from_pairs(n, p))
    }

    fn naive_closure(r: &Relation) -> Relation {
        let n = r.node_count();
        let mut reach = Relation::empty(n);
        for s in 0..n {
            let mut stack: Vec<usize> = r.successors(s).collect();
            while let Some(x) = stack.pop() {
                if !reach.contains(s, x) {
                    reach.insert(s, x);
                    stack.extend(r.successors(x));
                }
            }
        }
        reach
    }

    #[test]
    fn wide_relations_span_words() {
        let n = 130;
        let chain = Relation::from_pairs(n, (0..n - 1).map(|i| (i, i + 1)));
        let tc = chain.transitive_closure();
        assert!(tc.contains(0, 129));
        assert!(!tc.contains(129, 0));
        assert_eq!(tc.len(), n * (n - 1) / 2);
    }

    proptest! {
        #[test]
        fn closure_matches_search(r in arb_rel(9)) {
            prop_assert_eq!(r.transitive_closure(), naive_closure(&r));
        }

        #[test]
        fn compose_matches_definition(a in arb_rel(7), b in arb_rel(7)) {
            let c = a.compose(&b);
            for i in 0..7 {
                for j in 0..7 {
                    let expect = (0..7).any(|k| a.contains(i, k) && b.contains(k, j));
                    prop_assert_eq!(c.contains(i, j), expect);
                }
            }
        }

        #[test]
        fn converse_is_involutive(a in arb_rel(8)) {
            prop_assert_eq!(a.converse().converse(), a);
        }
    }
}
