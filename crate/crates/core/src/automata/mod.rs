//! Finite automata over arbitrary finite alphabets.
//!
//! States are plain indices; labels are display metadata only. Letters are
//! indices into an [`Alphabet`], which is either a list of symbols or a set of
//! pairs of symbols (optionally with a padding component).

mod count;
mod io;
mod ops;

use std::collections::BTreeSet;

pub use count::{char_poly, dominant_eigenvalue, DEFAULT_EIGEN_TOL};
pub use io::AutomatonJson;
pub use ops::lex_pair_automaton;

#[derive(Debug, thiserror::Error)]
pub enum AutomatonError {
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("operation needs a pair alphabet")]
    NotPairAlphabet,
    #[error("malformed automaton JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid automaton: {0}")]
    Invalid(String),
}

/// Letter of a pair alphabet; `None` stands for the padding symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairLetter {
    pub left: Option<usize>,
    pub right: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlphabet {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub letters: Vec<PairLetter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Symbols(Vec<String>),
    Pairs(PairAlphabet),
}

impl Alphabet {
    pub fn symbols<S: ToString>(names: impl IntoIterator<Item = S>) -> Self {
        Alphabet::Symbols(names.into_iter().map(|s| s.to_string()).collect())
    }

    /// All pairs `(l, r)` without padding, letter index `l * |right| + r`.
    pub fn full_pairs(left: &[String], right: &[String]) -> Self {
        let letters = (0..left.len())
            .flat_map(|l| (0..right.len()).map(move |r| PairLetter { left: Some(l), right: Some(r) }))
            .collect();
        Alphabet::Pairs(PairAlphabet { left: left.to_vec(), right: right.to_vec(), letters })
    }

    pub fn len(&self) -> usize {
        match self {
            Alphabet::Symbols(s) => s.len(),
            Alphabet::Pairs(p) => p.letters.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self, letter: usize) -> String {
        match self {
            Alphabet::Symbols(s) => s[letter].clone(),
            Alphabet::Pairs(p) => {
                let l = p.letters[letter];
                let side = |names: &[String], c: Option<usize>| c.map_or("e".to_string(), |i| names[i].clone());
                format!("({},{})", side(&p.left, l.left), side(&p.right, l.right))
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.name(i)).collect()
    }

    pub fn pairs(&self) -> Option<&PairAlphabet> {
        match self {
            Alphabet::Pairs(p) => Some(p),
            Alphabet::Symbols(_) => None,
        }
    }

    /// Index of the pair `(l, r)`, if it is a letter.
    pub fn pair_index(&self, l: Option<usize>, r: Option<usize>) -> Option<usize> {
        let p = self.pairs()?;
        let target = PairLetter { left: l, right: r };
        p.letters.iter().position(|x| *x == target)
    }
}

#[derive(Clone, Debug)]
pub struct Automaton {
    alphabet: Alphabet,
    labels: Vec<String>,
    edges: Vec<Vec<(usize, usize)>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
}

impl Automaton {
    pub fn new(alphabet: Alphabet) -> Self {
        Automaton { alphabet, labels: Vec::new(), edges: Vec::new(), initials: Vec::new(), finals: Vec::new() }
    }

    /// The one-state automaton accepting every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut a = Automaton::new(alphabet);
        let s = a.add_state("0");
        for l in 0..a.alphabet.len() {
            a.add_edge(s, l, s);
        }
        a.set_initial(s);
        a.set_final(s, true);
        a
    }

    pub fn add_state(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.edges.push(Vec::new());
        self.finals.push(false);
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, letter: usize, to: usize) {
        assert!(letter < self.alphabet.len() && to < self.labels.len());
        let row = &mut self.edges[from];
        if let Err(pos) = row.binary_search(&(letter, to)) {
            row.insert(pos, (letter, to));
        }
    }

    pub fn set_initial(&mut self, s: usize) {
        if let Err(pos) = self.initials.binary_search(&s) {
            self.initials.insert(pos, s);
        }
    }

    pub fn set_final(&mut self, s: usize, value: bool) {
        self.finals[s] = value;
    }

    pub fn set_label(&mut self, s: usize, label: impl Into<String>) {
        self.labels[s] = label.into();
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Outgoing `(letter, target)` pairs, sorted.
    pub fn edges(&self, s: usize) -> &[(usize, usize)] {
        &self.edges[s]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(s, row)| row.iter().map(move |&(l, t)| (s, l, t)))
    }

    pub fn transition_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&s| self.finals[s]).collect()
    }

    /// Targets of `letter` from `s`.
    pub fn successors(&self, s: usize, letter: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.edges[s];
        let start = row.partition_point(|&(l, _)| l < letter);
        row[start..].iter().take_while(move |&&(l, _)| l == letter).map(|&(_, t)| t)
    }

    /// Single target of `letter` from `s` in a deterministic automaton.
    pub fn step(&self, s: usize, letter: usize) -> Option<usize> {
        self.successors(s, letter).next()
    }

    pub fn is_deterministic(&self) -> bool {
        self.initials.len() <= 1 && self.edges.iter().all(|row| row.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// The transpose is deterministic.
    pub fn is_codeterministic(&self) -> bool {
        self.transpose().is_deterministic()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current: BTreeSet<usize> = self.initials.iter().copied().collect();
        for &letter in word {
            if letter >= self.alphabet.len() {
                return false;
            }
            current = current.iter().flat_map(|&s| self.successors(s, letter)).collect();
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&s| self.finals[s])
    }

    /// Same alphabet, transitions, initial and final states (labels ignored).
    pub fn same_shape(&self, other: &Automaton) -> bool {
        self.alphabet == other.alphabet
            && self.edges == other.edges
            && self.initials == other.initials
            && self.finals == other.finals
    }

    /// Same language once letter names are forgotten (letter indices kept).
    pub fn isomorphic(&self, other: &Automaton) -> bool {
        let (a, b) = (self.minimize(), other.minimize());
        self.alphabet.len() == other.alphabet.len()
            && a.edges == b.edges
            && a.initials == b.initials
            && a.finals == b.finals
    }

    /// Language equality, decided on canonical minimal forms.
    pub fn equivalent(&self, other: &Automaton) -> bool {
        self.alphabet == other.alphabet && self.minimize().same_shape(&other.minimize())
    }
}
