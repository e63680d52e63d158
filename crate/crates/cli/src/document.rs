//! JSON interchange format for automata.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thuemult::automata::{Dfa, Letter, State};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub format_version: String,
    pub alphabet_size: usize,
    pub state_count: usize,
    pub initial: State,
    pub finals: Vec<State>,
    pub transitions: Vec<(State, Letter, State)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl AutomatonDocument {
    pub fn from_dfa(a: &Dfa, metadata: BTreeMap<String, Value>) -> Self {
        AutomatonDocument {
            format_version: FORMAT_VERSION.to_string(),
            alphabet_size: a.alphabet_size(),
            state_count: a.state_count(),
            initial: a.initial(),
            finals: a.finals().collect(),
            transitions: a.transitions().collect(),
            labels: a.labels().map(<[String]>::to_vec),
            metadata,
        }
    }

    /// Checks every structural invariant and builds the automaton.
    pub fn to_dfa(&self) -> Result<Dfa> {
        ensure!(
            self.format_version == FORMAT_VERSION,
            "unsupported format_version {:?}, expected {FORMAT_VERSION:?}",
            self.format_version
        );
        ensure!(self.state_count > 0, "state_count must be positive");
        ensure!(self.alphabet_size > 0, "alphabet_size must be positive");
        ensure!(
            self.initial < self.state_count,
            "initial state {} is out of range for {} states",
            self.initial,
            self.state_count
        );
        let mut seen = BTreeSet::new();
        for &q in &self.finals {
            ensure!(q < self.state_count, "final state {q} is out of range for {} states", self.state_count);
            ensure!(seen.insert(q), "final state {q} is listed twice");
        }
        let mut sources = BTreeSet::new();
        for &(s, a, t) in &self.transitions {
            ensure!(s < self.state_count && t < self.state_count, "transition ({s}, {a}, {t}) uses an unknown state");
            ensure!((a as usize) < self.alphabet_size, "transition ({s}, {a}, {t}) uses an unknown letter");
            ensure!(sources.insert((s, a)), "duplicate transition from state {s} on letter {a}");
        }
        let dfa = Dfa::from_parts(
            self.state_count,
            self.alphabet_size,
            self.initial,
            self.finals.iter().copied(),
            self.transitions.iter().copied(),
        )?;
        match &self.labels {
            Some(labels) => {
                ensure!(
                    labels.len() == self.state_count,
                    "{} labels given for {} states",
                    labels.len(),
                    self.state_count
                );
                Ok(dfa.with_labels(labels.clone())?)
            }
            None => Ok(dfa),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AutomatonDocument = serde_json::from_str(text).context("malformed automaton document")?;
        doc.to_dfa()?;
        Ok(doc)
    }

    pub fn metadata_u64(&self, key: &str) -> Result<Option<u64>> {
        match self.metadata.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => match n.as_u64() {
                Some(v) => Ok(Some(v)),
                None => bail!("metadata {key:?} is not a non-negative integer"),
            },
            Some(Value::String(s)) => Ok(Some(s.parse().with_context(|| format!("metadata {key:?}"))?)),
            Some(other) => bail!("metadata {key:?} has unexpected value {other}"),
        }
    }
}

/// A metadata value for a possibly huge integer: a JSON number when it fits
/// in 64 bits, a decimal string otherwise.
pub fn integer_value(text: String) -> Value {
    match text.parse::<u64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(text),
    }
}
