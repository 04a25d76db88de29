//! JSON and Graphviz renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Alphabet, Automaton, AutomatonError, PairAlphabet, PairLetter};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsJson {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub letters: Vec<(Option<usize>, Option<usize>)>,
}

/// Serialized form. `pairs` is present for automata over pair alphabets and
/// records the component structure that the flat `alphabet` names encode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub alphabet: Vec<String>,
    pub states: Vec<StateJson>,
    pub initials: Vec<usize>,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairsJson>,
}

impl Automaton {
    pub fn to_json_value(&self) -> AutomatonJson {
        AutomatonJson {
            alphabet: self.alphabet.names(),
            states: self.labels.iter().map(|l| StateJson { label: l.clone() }).collect(),
            initials: self.initials.clone(),
            finals: self.finals(),
            transitions: self.transitions().collect(),
            pairs: self.alphabet.pairs().map(|p| PairsJson {
                left: p.left.clone(),
                right: p.right.clone(),
                letters: p.letters.iter().map(|l| (l.left, l.right)).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("automaton serializes")
    }

    pub fn from_json(text: &str) -> Result<Automaton, AutomatonError> {
        let doc: AutomatonJson = serde_json::from_str(text)?;
        Automaton::from_json_value(&doc)
    }

    pub fn from_json_value(doc: &AutomatonJson) -> Result<Automaton, AutomatonError> {
        let invalid = |m: String| AutomatonError::Invalid(m);
        let alphabet = match &doc.pairs {
            None => Alphabet::Symbols(doc.alphabet.clone()),
            Some(p) => {
                if p.letters.len() != doc.alphabet.len() {
                    return Err(invalid("pair letters do not match the alphabet".into()));
                }
                let mut letters = Vec::with_capacity(p.letters.len());
                for &(l, r) in &p.letters {
                    if l.is_none() && r.is_none() {
                        return Err(invalid("pair letter with two padding components".into()));
                    }
                    if l.is_some_and(|i| i >= p.left.len()) || r.is_some_and(|i| i >= p.right.len()) {
                        return Err(invalid("pair component out of range".into()));
                    }
                    letters.push(PairLetter { left: l, right: r });
                }
                Alphabet::Pairs(PairAlphabet { left: p.left.clone(), right: p.right.clone(), letters })
            }
        };
        let n = doc.states.len();
        let mut a = Automaton::new(alphabet);
        for s in &doc.states {
            a.add_state(s.label.clone());
        }
        for &s in doc.initials.iter().chain(&doc.finals) {
            if s >= n {
                return Err(invalid(format!("state {s} out of range")));
            }
        }
        for &(s, l, t) in &doc.transitions {
            if s >= n || t >= n {
                return Err(invalid(format!("transition ({s},{l},{t}) refers to a missing state")));
            }
            if l >= a.alphabet.len() {
                return Err(invalid(format!("transition ({s},{l},{t}) uses a missing letter")));
            }
            a.add_edge(s, l, t);
        }
        for &s in &doc.initials {
            a.set_initial(s);
        }
        for &s in &doc.finals {
            a.set_final(s, true);
        }
        Ok(a)
    }

    /// Graphviz rendering: initial states bold, final states doubled, one
    /// edge per ordered pair of states carrying all its letters.
    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
        for s in 0..self.state_count() {
            let mut attrs = vec![format!("label=\"{}\"", esc(&self.labels[s]))];
            if self.initials.binary_search(&s).is_ok() {
                attrs.push("style=bold".into());
            }
            if self.finals[s] {
                attrs.push("shape=doublecircle".into());
            }
            let _ = writeln!(out, "  {s} [{}];", attrs.join(", "));
        }
        let mut grouped: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for (s, l, t) in self.transitions() {
            grouped.entry((s, t)).or_default().push(self.alphabet.name(l));
        }
        for ((s, t), letters) in grouped {
            let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", esc(&letters.join(",")));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Automaton {
        let names: Vec<String> = vec!["0".into(), "1".into()];
        let mut a = Automaton::new(Alphabet::full_pairs(&names, &names));
        let s = a.add_state("0");
        let t = a.add_state("β-1");
        a.add_edge(s, 0, s);
        a.add_edge(s, 3, s);
        a.add_edge(s, 1, t);
        a.add_edge(t, 2, s);
        a.set_initial(s);
        a.set_final(s, true);
        a
    }

    #[test]
    fn json_round_trip() {
        let a = sample();
        let b = Automaton::from_json(&a.to_json()).unwrap();
        assert!(a.same_shape(&b));
        assert_eq!(a.labels(), b.labels());
        let plain = Automaton::universal(Alphabet::symbols(["x"]));
        assert!(!plain.to_json().contains("pairs"));
        assert!(Automaton::from_json(&plain.to_json()).unwrap().same_shape(&plain));
    }

    #[test]
    fn json_rejects_bad_indices() {
        let bad = r#"{"alphabet":["a"],"states":[{"label":"0"}],"initials":[0],"finals":[1],"transitions":[]}"#;
        assert!(matches!(Automaton::from_json(bad), Err(AutomatonError::Invalid(_))));
        let bad = r#"{"alphabet":["a"],"states":[{"label":"0"}],"initials":[0],"finals":[],"transitions":[[0,1,0]]}"#;
        assert!(matches!(Automaton::from_json(bad), Err(AutomatonError::Invalid(_))));
        assert!(matches!(Automaton::from_json("[]"), Err(AutomatonError::Json(_))));
    }

    #[test]
    fn dot_conventions() {
        let dot = sample().to_dot();
        assert!(dot.contains("0 [label=\"0\", style=bold, shape=doublecircle];"));
        assert!(dot.contains("0 -> 0 [label=\"(0,0),(1,1)\"];"));
        assert!(dot.contains("1 -> 0 [label=\"(1,0)\"];"));
    }
}
