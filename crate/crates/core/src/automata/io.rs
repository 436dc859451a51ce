use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Dfa};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct FsaJson {
    alphabet: Vec<String>,
    states: usize,
    start: usize,
    accepting: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

impl Dfa {
    /// `{"alphabet", "states", "start", "accepting", "transitions"}` with one
    /// `[from, symbol, to]` triple per transition of the complete automaton.
    pub fn to_json(&self) -> serde_json::Value {
        let doc = FsaJson {
            alphabet: self.alphabet().labels().to_vec(),
            states: self.states(),
            start: self.start(),
            accepting: self.accepting_states(),
            transitions: self
                .transitions()
                .map(|(q, a, r)| (q, self.alphabet().label(a).to_string(), r))
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    /// Accepts partial transition lists; missing moves go to a sink.
    pub fn from_json(value: &serde_json::Value) -> Result<Dfa> {
        let doc: FsaJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidAutomaton(format!("automaton JSON: {e}")))?;
        let alphabet = Alphabet::new(doc.alphabet)?;
        let transitions = doc
            .transitions
            .iter()
            .map(|(q, label, r)| {
                alphabet
                    .index_of(label)
                    .map(|a| (*q, a, *r))
                    .ok_or_else(|| Error::InvalidAutomaton(format!("unknown symbol {label:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::from_transitions(alphabet, doc.states, doc.start, &doc.accepting, &transitions)
    }

    /// Graphviz rendering; transitions into rejecting sinks are omitted and
    /// parallel edges are merged into one comma-separated label.
    pub fn to_dot(&self, name: &str) -> String {
        let live = self.live();
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  __start [shape=point];");
        for q in 0..self.states() {
            if live[q] {
                let shape = if self.is_accepting(q) { "doublecircle" } else { "circle" };
                let _ = writeln!(out, "  {q} [shape={shape}];");
            }
        }
        let _ = writeln!(out, "  __start -> {};", self.start());
        let mut edges: Vec<((usize, usize), Vec<&str>)> = Vec::new();
        for (q, a, r) in self.transitions() {
            if !live[q] || !live[r] {
                continue;
            }
            match edges.last_mut() {
                Some((key, labels)) if *key == (q, r) => labels.push(self.alphabet().label(a)),
                _ => match edges.iter_mut().find(|(key, _)| *key == (q, r)) {
                    Some((_, labels)) => labels.push(self.alphabet().label(a)),
                    None => edges.push(((q, r), vec![self.alphabet().label(a)])),
                },
            }
        }
        for ((q, r), labels) in edges {
            let _ = writeln!(out, "  {q} -> {r} [label=\"{}\"];", labels.join(","));
        }
        out.push_str("}\n");
        out
    }
}
