//! Concrete syntax printer. Output re-parses to the identical tree.

use std::fmt;

use super::Expr;

const UNION: u8 = 1;
const DIFF: u8 = 2;
const INTER: u8 = 3;
const COMP: u8 = 4;
const POST: u8 = 5;

fn as_power(e: &Expr) -> Option<(&Expr, usize)> {
    let mut cur = e;
    let mut base: Option<&Expr> = None;
    let mut k = 0;
    while let Expr::Compose(a, b) = cur {
        match base {
            None => base = Some(a),
            Some(x) if x == &**a => {}
            Some(_) => return None,
        }
        k += 1;
        cur = b;
    }
    match (base, cur) {
        (Some(x), Expr::Identity) if k >= 2 => Some((x, k)),
        _ => None,
    }
}

fn as_star(e: &Expr) -> Option<&Expr> {
    match e {
        Expr::Union(a, b) => match (&**a, &**b) {
            (Expr::Identity, Expr::TransClosure(x)) => Some(x),
            _ => None,
        },
        _ => None,
    }
}

fn prec(e: &Expr) -> u8 {
    if as_power(e).is_some() || as_star(e).is_some() {
        return POST;
    }
    match e {
        Expr::Union(a, b) if **a == Expr::Identity && **b == Expr::Diversity => u8::MAX,
        Expr::Union(..) => UNION,
        Expr::Difference(..) => DIFF,
        Expr::Intersect(..) => INTER,
        Expr::Compose(..) => COMP,
        Expr::TransClosure(_) => POST,
        _ => u8::MAX,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        f.write_str("(")?;
        write_expr(f, e)?;
        f.write_str(")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    if let Some((x, k)) = as_power(e) {
        write_at(f, x, POST)?;
        return write!(f, "^{k}");
    }
    if let Some(x) = as_star(e) {
        write_at(f, x, POST)?;
        return f.write_str("*");
    }
    let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, b: &Expr, op: &str, p: u8| {
        write_at(f, a, p)?;
        write!(f, " {op} ")?;
        write_at(f, b, p + 1)
    };
    let unary = |f: &mut fmt::Formatter<'_>, name: &str, a: &Expr| {
        write!(f, "{name}(")?;
        write_expr(f, a)?;
        f.write_str(")")
    };
    match e {
        Expr::Empty => f.write_str("0"),
        Expr::Identity => f.write_str("id"),
        Expr::Diversity => f.write_str("di"),
        Expr::Label(l) => f.write_str(l),
        Expr::Converse(a) => unary(f, "conv", a),
        Expr::Proj1(a) => unary(f, "pi1", a),
        Expr::Proj2(a) => unary(f, "pi2", a),
        Expr::Coproj1(a) => unary(f, "copi1", a),
        Expr::Coproj2(a) => unary(f, "copi2", a),
        Expr::TransClosure(a) => {
            write_at(f, a, POST)?;
            f.write_str("+")
        }
        Expr::Union(a, b) if **a == Expr::Identity && **b == Expr::Diversity => f.write_str("A"),
        Expr::Union(a, b) => binary(f, a, b, "|", UNION),
        Expr::Difference(a, b) => binary(f, a, b, "\\", DIFF),
        Expr::Intersect(a, b) => binary(f, a, b, "&", INTER),
        Expr::Compose(a, b) => binary(f, a, b, ".", COMP),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Expr, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn minimal_parentheses() {
        for (src, out) in [
            ("a . b . c", "a . b . c"),
            ("a . (b . c)", "a . (b . c)"),
            ("(a | b) . c", "(a | b) . c"),
            ("a | b & c", "a | b & c"),
            ("(a . b)+", "(a . b)+"),
            ("a^3 & a^7", "a^3 & a^7"),
            ("a*", "a*"),
            ("pi1(a) \\ pi1(b+ . c)", "pi1(a) \\ pi1(b+ . c)"),
            ("0 | id | di", "0 | id | di"),
            ("A", "A"),
        ] {
            assert_eq!(parse(src).unwrap().to_string(), out, "{src}");
        }
    }

    #[test]
    fn power_pattern_needs_identical_factors() {
        let e = Expr::compose(Expr::label("a"), Expr::compose(Expr::label("b"), Expr::Identity));
        assert_eq!(e.to_string(), "a . (b . id)");
        assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}
