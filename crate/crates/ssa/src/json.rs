//! The JSON automaton document.
//!
//! ```json
//! {"alphabet_size": 2, "states": ["ε", "τ"], "identity": "ε",
//!  "sigma": [[0, 1], [1, 0]], "tau": [["ε", "ε"], ["ε", "τ"]]}
//! ```
//!
//! Rows are indexed by letter and columns by state. An optional `letters` array
//! names the letters when they are not `0, 1, …`.

use serde::{Deserialize, Serialize};
use ssa_core::{Automaton, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub alphabet_size: usize,
    pub states: Vec<String>,
    pub identity: Option<String>,
    pub sigma: Vec<Vec<usize>>,
    pub tau: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters: Option<Vec<String>>,
}

impl AutomatonDoc {
    pub fn from_automaton(a: &Automaton) -> Self {
        let default_letters = a
            .letter_names()
            .iter()
            .enumerate()
            .all(|(i, name)| *name == i.to_string());
        AutomatonDoc {
            alphabet_size: a.alphabet_size(),
            states: a.state_names().to_vec(),
            identity: a.identity().map(|e| a.state_name(e).to_string()),
            sigma: a.output_rows(),
            tau: a
                .transition_rows()
                .into_iter()
                .map(|row| row.into_iter().map(|q| a.state_name(q).to_string()).collect())
                .collect(),
            letters: (!default_letters).then(|| a.letter_names().to_vec()),
        }
    }

    pub fn to_automaton(&self) -> Result<Automaton> {
        let index = |name: &str| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::UnknownState(name.to_string()))
        };
        let identity = self.identity.as_deref().map(index).transpose()?;
        let tau = self
            .tau
            .iter()
            .map(|row| row.iter().map(|name| index(name)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = self.states.iter().find(|s| !seen.insert(*s)) {
            return Err(Error::InvalidAutomaton(format!("duplicate state name {dup}")));
        }
        let automaton = Automaton::new(
            self.alphabet_size,
            self.states.clone(),
            identity,
            self.sigma.clone(),
            tau,
        )?;
        match &self.letters {
            Some(names) => automaton.with_letter_names(names.clone()),
            None => Ok(automaton),
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let doc: AutomatonDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("automaton JSON: {e}")))?;
    doc.to_automaton()
}

/// Pretty-printed document with a trailing newline.
pub fn automaton_to_string(a: &Automaton) -> String {
    let mut s = serde_json::to_string_pretty(&AutomatonDoc::from_automaton(a))
        .expect("automaton documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use ssa_core::examples;

    #[test]
    fn documented_example_parses() {
        let text = r#"{"alphabet_size": 2, "states": ["ε", "τ"], "identity": "ε",
            "sigma": [[0, 1], [1, 0]], "tau": [["ε", "ε"], ["ε", "τ"]]}"#;
        let a = parse_automaton(text).unwrap();
        assert_eq!(a, examples::build("odometer").unwrap().automaton);
    }

    #[test]
    fn round_trip_all_examples() {
        for name in examples::list() {
            let entry = examples::build(name).unwrap();
            for a in [Some(entry.automaton), entry.nucleus_automaton].into_iter().flatten() {
                assert_eq!(parse_automaton(&automaton_to_string(&a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn dual_keeps_letter_names() {
        let dual = examples::build("basilica").unwrap().automaton.dual();
        let text = automaton_to_string(&dual);
        assert!(text.contains("\"letters\""));
        assert_eq!(parse_automaton(&text).unwrap(), dual);
    }

    #[test]
    fn bad_documents() {
        assert_eq!(parse_automaton("{").unwrap_err().code(), "parse");
        let unknown = r#"{"alphabet_size": 1, "states": ["x"], "identity": null,
            "sigma": [[0]], "tau": [["y"]]}"#;
        assert_eq!(parse_automaton(unknown).unwrap_err(), Error::UnknownState("y".into()));
        let ragged = r#"{"alphabet_size": 2, "states": ["x"], "identity": null,
            "sigma": [[0]], "tau": [["x"]]}"#;
        assert_eq!(parse_automaton(ragged).unwrap_err().code(), "invalid_automaton");
    }
}
