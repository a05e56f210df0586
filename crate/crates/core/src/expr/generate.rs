use super::{Expr, Fragment, Op};

/// Every expression over `fragment` (plus `∘` and `∪`) with height at most
/// `depth`, where an atom has height 1. Atoms are the labels, and `di` when
/// the fragment has it. Output is sorted by height, then by construction order.
pub fn enumerate_exprs<S: AsRef<str>>(fragment: Fragment, labels: &[S], depth: usize) -> Vec<Expr> {
    if depth == 0 {
        return Vec::new();
    }
    let mut atoms: Vec<Expr> = labels.iter().map(|l| Expr::label(l.as_ref())).collect();
    if fragment.contains(Op::Di) {
        atoms.push(Expr::Diversity);
    }
    let unary: Vec<fn(Expr) -> Expr> = [
        (Op::Conv, Expr::converse as fn(Expr) -> Expr),
        (Op::Tc, Expr::plus),
        (Op::Pi1, Expr::pi1),
        (Op::Pi2, Expr::pi2),
        (Op::Copi1, Expr::copi1),
        (Op::Copi2, Expr::copi2),
    ]
    .into_iter()
    .filter(|(op, _)| fragment.contains(*op))
    .map(|(_, f)| f)
    .collect();
    let mut binary: Vec<fn(Expr, Expr) -> Expr> = vec![Expr::compose, Expr::union];
    if fragment.contains(Op::Cap) {
        binary.push(Expr::intersect);
    }
    if fragment.contains(Op::Minus) {
        binary.push(Expr::difference);
    }

    // levels[h] holds the expressions of height exactly h + 1.
    let mut levels: Vec<Vec<Expr>> = vec![atoms];
    for h in 1..depth {
        let newest = &levels[h - 1];
        let below: Vec<&Expr> = levels.iter().flatten().collect();
        let older = below.len() - newest.len();
        let mut next = Vec::new();
        for f in &unary {
            next.extend(newest.iter().map(|e| f(e.clone())));
        }
        for f in &binary {
            for (i, x) in below.iter().enumerate() {
                for (j, y) in below.iter().enumerate() {
                    if i >= older || j >= older {
                        next.push(f((*x).clone(), (*y).clone()));
                    }
                }
            }
        }
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let ab = ["a", "b"];
        let f = Fragment::parse("tc, pi1, pi2").unwrap();
        assert_eq!(enumerate_exprs(f, &ab, 1).len(), 2);
        assert_eq!(enumerate_exprs(f, &ab, 2).len(), 2 + 3 * 2 + 2 * 4);
        assert_eq!(enumerate_exprs(f, &ab, 3).len(), 16 + 3 * 14 + 2 * (16 * 16 - 4));
        let g = Fragment::parse("tc, pi1, pi2, copi1, copi2, cap, minus").unwrap();
        assert_eq!(enumerate_exprs(g, &ab, 3).len(), 3278);
    }

    #[test]
    fn no_duplicates_and_fragment_respected() {
        let f = Fragment::parse("tc, pi1, cap").unwrap();
        let all = enumerate_exprs(f, &["a"], 3);
        let set: std::collections::BTreeSet<&Expr> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        let allowed = f.union(Fragment::empty());
        assert!(all.iter().all(|e| e.operators_used().is_subset(allowed)));
    }
}
