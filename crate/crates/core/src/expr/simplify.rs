use super::Expr;

/// Bottom-up removal of `∅` using its absorbing and neutral laws.
pub(super) fn simplify_empty(e: &Expr) -> Expr {
    use Expr::*;
    let bx = Box::new;
    match e {
        Empty | Identity | Diversity | Label(_) => e.clone(),
        Converse(a) => match simplify_empty(a) {
            Empty => Empty,
            a => Converse(bx(a)),
        },
        TransClosure(a) => match simplify_empty(a) {
            Empty => Empty,
            a => TransClosure(bx(a)),
        },
        Proj1(a) => match simplify_empty(a) {
            Empty => Empty,
            a => Proj1(bx(a)),
        },
        Proj2(a) => match simplify_empty(a) {
            Empty => Empty,
            a => Proj2(bx(a)),
        },
        Coproj1(a) => match simplify_empty(a) {
            Empty => Identity,
            a => Coproj1(bx(a)),
        },
        Coproj2(a) => match simplify_empty(a) {
            Empty => Identity,
            a => Coproj2(bx(a)),
        },
        Compose(a, b) => match (simplify_empty(a), simplify_empty(b)) {
            (Empty, _) | (_, Empty) => Empty,
            (a, b) => Compose(bx(a), bx(b)),
        },
        Intersect(a, b) => match (simplify_empty(a), simplify_empty(b)) {
            (Empty, _) | (_, Empty) => Empty,
            (a, b) => Intersect(bx(a), bx(b)),
        },
        Union(a, b) => match (simplify_empty(a), simplify_empty(b)) {
            (Empty, x) | (x, Empty) => x,
            (a, b) => Union(bx(a), bx(b)),
        },
        Difference(a, b) => match (simplify_empty(a), simplify_empty(b)) {
            (Empty, _) => Empty,
            (x, Empty) => x,
            (a, b) => Difference(bx(a), bx(b)),
        },
    }
}
