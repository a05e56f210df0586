use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Non-basic operators that select a fragment of the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Di,
    Conv,
    Tc,
    Pi1,
    Pi2,
    Copi1,
    Copi2,
    Cap,
    Minus,
}

impl Op {
    pub const ALL: [Op; 9] = [
        Op::Di,
        Op::Conv,
        Op::Tc,
        Op::Pi1,
        Op::Pi2,
        Op::Copi1,
        Op::Copi2,
        Op::Cap,
        Op::Minus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Di => "di",
            Op::Conv => "conv",
            Op::Tc => "tc",
            Op::Pi1 => "pi1",
            Op::Pi2 => "pi2",
            Op::Copi1 => "copi1",
            Op::Copi2 => "copi2",
            Op::Cap => "cap",
            Op::Minus => "minus",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Op, String> {
        let s = s.trim();
        Op::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

/// A set of operators. The fragment `L(F)` allows the basic operators plus `F`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fragment(u16);

impl Fragment {
    pub fn empty() -> Fragment {
        Fragment(0)
    }

    pub fn from_ops(ops: &[Op]) -> Fragment {
        let mut f = Fragment::empty();
        for &op in ops {
            f.insert(op);
        }
        f
    }

    pub fn insert(&mut self, op: Op) {
        self.0 |= op.bit();
    }

    pub fn remove(&mut self, op: Op) {
        self.0 &= !op.bit();
    }

    pub fn contains(self, op: Op) -> bool {
        self.0 & op.bit() != 0
    }

    pub fn with(mut self, op: Op) -> Fragment {
        self.insert(op);
        self
    }

    pub fn without(mut self, op: Op) -> Fragment {
        self.remove(op);
        self
    }

    pub fn union(self, other: Fragment) -> Fragment {
        Fragment(self.0 | other.0)
    }

    pub fn is_subset(self, other: Fragment) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn ops(self) -> impl Iterator<Item = Op> {
        Op::ALL.into_iter().filter(move |op| self.contains(*op))
    }

    pub fn base(self) -> Fragment {
        base_closure(self)
    }

    /// Parses a comma- or space-separated operator list, optionally in braces.
    /// `pi` and `copi` stand for both projections or both coprojections.
    pub fn parse(s: &str) -> Result<Fragment, String> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut f = Fragment::empty();
        for tok in inner.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "pi" => f = f.with(Op::Pi1).with(Op::Pi2),
                "copi" => f = f.with(Op::Copi1).with(Op::Copi2),
                _ => f.insert(tok.parse()?),
            }
        }
        Ok(f)
    }
}

impl fmt::Debug for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.ops().map(Op::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

impl FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Fragment, String> {
        Fragment::parse(s)
    }
}

impl Serialize for Fragment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.ops().map(Op::name).collect();
        names.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fragment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Fragment, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        let mut f = Fragment::empty();
        for n in names {
            f.insert(n.parse().map_err(serde::de::Error::custom)?);
        }
        Ok(f)
    }
}

/// Smallest superset of `f` closed under the derivability rules between operators.
pub fn base_closure(f: Fragment) -> Fragment {
    let mut out = f;
    loop {
        let has = |op| out.contains(op);
        let mut next = out;
        if has(Op::Minus) {
            next.insert(Op::Cap);
        }
        let pi_from_shared = (has(Op::Conv) || has(Op::Di)) && has(Op::Cap);
        if has(Op::Copi1) || pi_from_shared || (has(Op::Pi2) && has(Op::Conv)) {
            next.insert(Op::Pi1);
        }
        if has(Op::Copi2) || pi_from_shared || (has(Op::Pi1) && has(Op::Conv)) {
            next.insert(Op::Pi2);
        }
        if (has(Op::Minus) && has(Op::Pi1)) || (has(Op::Copi2) && has(Op::Conv)) {
            next.insert(Op::Copi1);
        }
        if (has(Op::Minus) && has(Op::Pi2)) || (has(Op::Copi1) && has(Op::Conv)) {
            next.insert(Op::Copi2);
        }
        if next == out {
            return out;
        }
        out = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frag(s: &str) -> Fragment {
        Fragment::parse(s).unwrap()
    }

    #[test]
    fn closure_of_conv_and_minus_gains_all_projections() {
        assert_eq!(
            base_closure(frag("conv, minus")),
            frag("conv, pi1, pi2, copi1, copi2, cap, minus")
        );
    }

    #[test]
    fn minus_brings_intersection() {
        assert_eq!(base_closure(frag("minus")), frag("cap, minus"));
    }

    #[test]
    fn coprojection_brings_its_projection() {
        assert_eq!(base_closure(frag("copi2")), frag("pi2, copi2"));
        assert_eq!(base_closure(frag("pi1, minus")), frag("pi1, copi1, cap, minus"));
    }

    #[test]
    fn closure_is_idempotent_and_extensive() {
        for bits in 0u16..(1 << 9) {
            let f = Fragment(bits);
            let b = base_closure(f);
            assert!(f.is_subset(b));
            assert_eq!(base_closure(b), b);
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = frag("{tc, pi1, cap}");
        assert_eq!(f.to_string(), "{tc, pi1, cap}");
        assert_eq!(frag(&f.to_string()), f);
        assert!(Fragment::parse("tc, bogus").is_err());
        assert_eq!(frag("pi copi"), frag("pi1, pi2, copi1, copi2"));
    }
}
