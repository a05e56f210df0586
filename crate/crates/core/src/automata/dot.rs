use std::collections::BTreeMap;
use std::fmt::Write;

use super::ConditionAutomaton;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz rendering: finals are double circles, initials get a dangling
/// arrow, and each state's conditions appear under its name.
pub(super) fn to_dot(a: &ConditionAutomaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    for q in a.states() {
        let mut label = a.name(q).to_string();
        if !a.gamma(q).is_empty() {
            let conds: Vec<String> = a.gamma(q).iter().map(|c| c.to_string()).collect();
            label.push_str(&format!("\n{{{}}}", conds.join(", ")));
        }
        let shape = if a.is_final(q) { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  s{q} [label={}{shape}];", quote(&label));
    }
    for &q in a.initials() {
        let _ = writeln!(out, "  init{q} [shape=point, label=\"\"];\n  init{q} -> s{q};");
    }
    // Parallel transitions share one arrow with a comma-separated label.
    let mut grouped: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (p, s, q) in a.transitions() {
        grouped.entry((*p, *q)).or_default().push(s.to_string());
    }
    for ((p, q), labels) in grouped {
        let _ = writeln!(out, "  s{p} -> s{q} [label={}];", quote(&labels.join(", ")));
    }
    out.push_str("}\n");
    out
}
