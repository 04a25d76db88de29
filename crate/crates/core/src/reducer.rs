//! Linear-time reduction of words to their reduced representatives.
//!
//! The base automaton reads pairs `(u_i, v_i)` and accepts when `v` is reduced
//! and equivalent to `u`. Reading only `u`, the set of states reachable under
//! some choice of `v` evolves deterministically; those subsets are cached as
//! they appear. A backward pass from a final state then recovers `v`.

use std::collections::HashMap;

use crate::automata::{Alphabet, Automaton};
use crate::relations::RelAutomaton;
use crate::structure::AutomaticStructure;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("letter {0} is not in the alphabet")]
    LetterOutOfRange(usize),
    #[error("no reduced word accepted; the structure is inconsistent")]
    InternalError,
}

pub struct ReducerTable {
    base: Automaton,
    k: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    cache: HashMap<(usize, usize), usize>,
}

impl ReducerTable {
    pub fn new(rel: &RelAutomaton, structure: &AutomaticStructure) -> Self {
        let names = rel.automaton().alphabet().pairs().expect("pair alphabet").left.clone();
        let k = names.len();
        let all = Automaton::universal(Alphabet::Symbols(names));
        let base = all.product(&structure.reduced).intersect(rel.automaton()).expect("shared pair alphabet").minimize();
        let mut table = ReducerTable { base, k, subsets: Vec::new(), index: HashMap::new(), cache: HashMap::new() };
        let start = table.base.initials().to_vec();
        table.intern(start);
        table
    }

    pub fn base(&self) -> &Automaton {
        &self.base
    }

    /// Number of distinct subsets built so far.
    pub fn cached_subsets(&self) -> usize {
        self.subsets.len()
    }

    fn intern(&mut self, set: Vec<usize>) -> usize {
        if let Some(&i) = self.index.get(&set) {
            return i;
        }
        self.subsets.push(set.clone());
        self.index.insert(set, self.subsets.len() - 1);
        self.subsets.len() - 1
    }

    fn advance(&mut self, subset: usize, a: usize) -> usize {
        if let Some(&next) = self.cache.get(&(subset, a)) {
            return next;
        }
        let mut set: Vec<usize> = Vec::new();
        for &q in &self.subsets[subset] {
            for b in 0..self.k {
                if let Some(t) = self.base.step(q, a * self.k + b) {
                    set.push(t);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
        let next = self.intern(set);
        self.cache.insert((subset, a), next);
        next
    }

    pub fn reduce(&mut self, u: &[usize]) -> Result<Vec<usize>, ReduceError> {
        if let Some(&c) = u.iter().find(|&&c| c >= self.k) {
            return Err(ReduceError::LetterOutOfRange(c));
        }
        let mut path = Vec::with_capacity(u.len() + 1);
        path.push(0usize);
        for &a in u {
            let next = self.advance(*path.last().unwrap(), a);
            path.push(next);
        }
        let last = &self.subsets[*path.last().unwrap()];
        let mut q = *last.iter().find(|&&q| self.base.is_final(q)).ok_or(ReduceError::InternalError)?;
        let mut v = vec![0; u.len()];
        for i in (0..u.len()).rev() {
            let a = u[i];
            let (b, p) = (0..self.k)
                .flat_map(|b| self.subsets[path[i]].iter().map(move |&p| (b, p)))
                .find(|&(b, p)| self.base.step(p, a * self.k + b) == Some(q))
                .ok_or(ReduceError::InternalError)?;
            v[i] = b;
            q = p;
        }
        Ok(v)
    }
}

/// Single pass of `zip(u, v)` through the relation automaton.
pub fn words_equivalent(rel: &RelAutomaton, u: &[usize], v: &[usize]) -> bool {
    rel.accepts_pair(u, v)
}
