use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ConditionAutomaton, Step};
use crate::expr::{parse, ParseError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AutomatonJsonError {
    #[error("invalid automaton JSON: {0}")]
    Json(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("label `{0}` is not in the alphabet")]
    UnknownLabel(String),
    #[error("condition `{text}` of state `{state}`: {source}")]
    Condition {
        state: String,
        text: String,
        source: ParseError,
    },
    #[error("`{0}` is not a condition")]
    NotACondition(String),
}

#[derive(Serialize, Deserialize)]
struct AutomatonFile {
    states: Vec<String>,
    alphabet: Vec<String>,
    initials: Vec<String>,
    finals: Vec<String>,
    transitions: Vec<TransitionFile>,
    #[serde(default)]
    conditions: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct TransitionFile {
    from: String,
    label: String,
    to: String,
}

pub(super) fn to_json(a: &ConditionAutomaton) -> String {
    let names = |set: &std::collections::BTreeSet<usize>| set.iter().map(|&q| a.name(q).to_string()).collect();
    let file = AutomatonFile {
        states: a.states().map(|q| a.name(q).to_string()).collect(),
        alphabet: a.alphabet().iter().cloned().collect(),
        initials: names(a.initials()),
        finals: names(a.finals()),
        transitions: a
            .transitions()
            .iter()
            .map(|(p, s, q)| TransitionFile {
                from: a.name(*p).to_string(),
                label: s.to_string(),
                to: a.name(*q).to_string(),
            })
            .collect(),
        conditions: a
            .states()
            .filter(|&q| !a.gamma(q).is_empty())
            .map(|q| (a.name(q).to_string(), a.gamma(q).iter().map(|c| c.to_string()).collect()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("automaton serializes")
}

pub(super) fn from_json(text: &str) -> Result<ConditionAutomaton, AutomatonJsonError> {
    let file: AutomatonFile = serde_json::from_str(text).map_err(|e| AutomatonJsonError::Json(e.to_string()))?;
    let mut a = ConditionAutomaton::new();
    let mut index = BTreeMap::new();
    for s in &file.states {
        if index.insert(s.clone(), a.add_state(s.clone())).is_some() {
            return Err(AutomatonJsonError::DuplicateState(s.clone()));
        }
    }
    let lookup = |s: &String| index.get(s).copied().ok_or_else(|| AutomatonJsonError::UnknownState(s.clone()));
    a.extend_alphabet(&file.alphabet);
    for s in &file.initials {
        a.add_initial(lookup(s)?);
    }
    for s in &file.finals {
        a.add_final(lookup(s)?);
    }
    for t in &file.transitions {
        let step = if t.label == "id" {
            Step::Id
        } else if file.alphabet.contains(&t.label) {
            Step::Label(t.label.clone())
        } else {
            return Err(AutomatonJsonError::UnknownLabel(t.label.clone()));
        };
        a.add_transition(lookup(&t.from)?, step, lookup(&t.to)?);
    }
    for (state, conds) in &file.conditions {
        let q = lookup(state)?;
        for text in conds {
            let c = parse(text).map_err(|source| AutomatonJsonError::Condition {
                state: state.clone(),
                text: text.clone(),
                source,
            })?;
            if !c.is_atomic_condition() {
                return Err(AutomatonJsonError::NotACondition(text.clone()));
            }
            a.add_condition(q, c);
        }
    }
    Ok(a)
}
