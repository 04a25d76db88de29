use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Alphabet, Automaton, AutomatonError};

fn subset_label(a: &Automaton, set: &[usize]) -> String {
    let parts: Vec<&str> = set.iter().map(|&s| a.label(s)).collect();
    format!("{{{}}}", parts.join(","))
}

fn reach(n: usize, starts: impl IntoIterator<Item = usize>, next: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = starts.into_iter().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(s) = stack.pop() {
        for t in next(s) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

impl Automaton {
    /// Keep the states selected by `keep`, preserving their relative order.
    pub fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut index = vec![usize::MAX; self.state_count()];
        let mut out = Automaton::new(self.alphabet.clone());
        for s in 0..self.state_count() {
            if keep[s] {
                index[s] = out.add_state(self.labels[s].clone());
                out.set_final(index[s], self.finals[s]);
            }
        }
        for s in 0..self.state_count() {
            if keep[s] {
                out.edges[index[s]] =
                    self.edges[s].iter().filter(|&&(_, t)| keep[t]).map(|&(l, t)| (l, index[t])).collect();
            }
        }
        out.initials = self.initials.iter().filter(|&&s| keep[s]).map(|&s| index[s]).collect();
        out
    }

    /// States reachable from an initial state.
    pub fn accessible(&self) -> Vec<bool> {
        reach(self.state_count(), self.initials.iter().copied(), |s| self.edges[s].iter().map(|&(_, t)| t).collect())
    }

    /// States from which a final state is reachable.
    pub fn coaccessible(&self) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.state_count()];
        for (s, _, t) in self.transitions() {
            rev[t].push(s);
        }
        reach(self.state_count(), self.finals(), |s| rev[s].clone())
    }

    pub fn trim(&self) -> Automaton {
        let acc = self.accessible();
        let co = self.coaccessible();
        let keep: Vec<bool> = acc.iter().zip(&co).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep)
    }

    pub fn transpose(&self) -> Automaton {
        let mut out = Automaton::new(self.alphabet.clone());
        for s in 0..self.state_count() {
            out.add_state(self.labels[s].clone());
        }
        for (s, l, t) in self.transitions() {
            out.edges[t].push((l, s));
        }
        for row in &mut out.edges {
            row.sort_unstable();
        }
        out.initials = self.finals();
        for &s in &self.initials {
            out.finals[s] = true;
        }
        out
    }

    /// Subset construction over reachable subsets, explored breadth first in
    /// letter order.
    pub fn determinize(&self) -> Automaton {
        let mut out = Automaton::new(self.alphabet.clone());
        let start: Vec<usize> = self.initials.clone();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let s0 = out.add_state(subset_label(self, &start));
        out.set_final(s0, start.iter().any(|&s| self.finals[s]));
        out.set_initial(s0);
        index.insert(start.clone(), s0);
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let from = index[&set];
            let mut by_letter: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for &s in &set {
                for &(l, t) in &self.edges[s] {
                    by_letter.entry(l).or_default().insert(t);
                }
            }
            for (l, targets) in by_letter {
                let key: Vec<usize> = targets.into_iter().collect();
                let to = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = out.add_state(subset_label(self, &key));
                        out.set_final(i, key.iter().any(|&s| self.finals[s]));
                        index.insert(key.clone(), i);
                        queue.push_back(key);
                        i
                    }
                };
                out.edges[from].push((l, to));
            }
        }
        out
    }

    /// Canonical minimal DFA: determinize, trim, Moore refinement, then
    /// renumber breadth first from the initial state in letter order. Two
    /// automata with the same language produce identical results up to labels.
    pub fn minimize(&self) -> Automaton {
        let d = self.determinize().trim();
        let n = d.state_count();
        if n == 0 {
            return Automaton::new(self.alphabet.clone());
        }
        let k = d.alphabet.len();
        let mut class: Vec<usize> = d.finals.iter().map(|&f| usize::from(f)).collect();
        let mut count = 0;
        loop {
            let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for s in 0..n {
                let row: Vec<usize> = (0..k).map(|l| d.step(s, l).map_or(usize::MAX, |t| class[t])).collect();
                let len = sigs.len();
                next[s] = *sigs.entry((class[s], row)).or_insert(len);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // canonical numbering
        let mut order = vec![usize::MAX; count];
        let mut reps = Vec::new();
        let start = class[d.initials[0]];
        order[start] = 0;
        let mut rep_of = vec![usize::MAX; count];
        for s in 0..n {
            if rep_of[class[s]] == usize::MAX {
                rep_of[class[s]] = s;
            }
        }
        reps.push(start);
        let mut head = 0;
        while head < reps.len() {
            let c = reps[head];
            head += 1;
            for &(_, t) in &d.edges[rep_of[c]] {
                let tc = class[t];
                if order[tc] == usize::MAX {
                    order[tc] = reps.len();
                    reps.push(tc);
                }
            }
        }
        let mut out = Automaton::new(self.alphabet.clone());
        for (i, &c) in reps.iter().enumerate() {
            out.add_state(i.to_string());
            out.set_final(i, d.finals[rep_of[c]]);
        }
        for (i, &c) in reps.iter().enumerate() {
            out.edges[i] = d.edges[rep_of[c]].iter().map(|&(l, t)| (l, order[class[t]])).collect();
        }
        out.initials = vec![0];
        out
    }

    /// Complete deterministic automaton for the complementary language.
    pub fn complement(&self) -> Automaton {
        let mut d = self.determinize();
        let k = d.alphabet.len();
        let sink = d.add_state("sink");
        for s in 0..d.state_count() {
            let present: BTreeSet<usize> = d.edges[s].iter().map(|&(l, _)| l).collect();
            for l in 0..k {
                if !present.contains(&l) {
                    d.edges[s].push((l, sink));
                }
            }
            d.edges[s].sort_unstable();
        }
        for f in d.finals.iter_mut() {
            *f = !*f;
        }
        d
    }

    fn pair_walk(
        a: &Automaton,
        b: &Automaton,
        alphabet: Alphabet,
        letters: impl Fn(usize, usize) -> Option<usize>,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Automaton {
        let mut out = Automaton::new(alphabet);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut visit = |out: &mut Automaton, queue: &mut VecDeque<(usize, usize)>, p: (usize, usize)| {
            *index.entry(p).or_insert_with(|| {
                let i = out.add_state(format!("({},{})", a.label(p.0), b.label(p.1)));
                out.set_final(i, accept(a.finals[p.0], b.finals[p.1]));
                queue.push_back(p);
                i
            })
        };
        for &s in &a.initials {
            for &t in &b.initials {
                let i = visit(&mut out, &mut queue, (s, t));
                out.set_initial(i);
            }
        }
        let mut edges = Vec::new();
        // states are created and dequeued in the same order
        let mut cursor = 0;
        while let Some(p) = queue.pop_front() {
            for &(la, ta) in &a.edges[p.0] {
                for &(lb, tb) in &b.edges[p.1] {
                    if let Some(l) = letters(la, lb) {
                        let j = visit(&mut out, &mut queue, (ta, tb));
                        edges.push((cursor, l, j));
                    }
                }
            }
            cursor += 1;
        }
        for (s, l, t) in edges {
            out.edges[s].push((l, t));
        }
        for row in &mut out.edges {
            row.sort_unstable();
            row.dedup();
        }
        out
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        Ok(Automaton::pair_walk(self, other, self.alphabet.clone(), |x, y| (x == y).then_some(x), |f, g| f && g))
    }

    /// Disjoint union of the two automata.
    pub fn union(&self, other: &Automaton) -> Result<Automaton, AutomatonError> {
        if self.alphabet != other.alphabet {
            return Err(AutomatonError::AlphabetMismatch);
        }
        let mut out = self.clone();
        let off = out.state_count();
        for s in 0..other.state_count() {
            let i = out.add_state(other.labels[s].clone());
            out.set_final(i, other.finals[s]);
        }
        for (s, l, t) in other.transitions() {
            out.edges[s + off].push((l, t + off));
        }
        for &s in &other.initials {
            out.set_initial(s + off);
        }
        Ok(out)
    }

    /// Synchronous product over `Σ_a × Σ_b`.
    pub fn product(&self, other: &Automaton) -> Automaton {
        let left = self.alphabet.names();
        let right = other.alphabet.names();
        let k = right.len();
        Automaton::pair_walk(self, other, Alphabet::full_pairs(&left, &right), |x, y| Some(x * k + y), |f, g| f && g)
    }

    /// Automaton for `L · letter`.
    pub fn append_letter(&self, letter: usize) -> Automaton {
        let mut out = self.clone();
        let end = out.add_state("end");
        for s in 0..self.state_count() {
            if self.finals[s] {
                out.add_edge(s, letter, end);
                out.set_final(s, false);
            }
        }
        out.set_final(end, true);
        out
    }

    /// Projection onto one component of a pair alphabet (`side` 1 or 2);
    /// padding components become empty moves, which are then eliminated.
    pub fn project(&self, side: usize) -> Result<Automaton, AutomatonError> {
        let pairs = self.alphabet.pairs().ok_or(AutomatonError::NotPairAlphabet)?;
        if side != 1 && side != 2 {
            return Err(AutomatonError::Invalid(format!("projection side {side}")));
        }
        let names = if side == 1 { &pairs.left } else { &pairs.right };
        let comp = |l: usize| if side == 1 { pairs.letters[l].left } else { pairs.letters[l].right };
        let n = self.state_count();
        let closure: Vec<Vec<bool>> = (0..n)
            .map(|s| {
                reach(n, [s], |q| self.edges[q].iter().filter(|&&(l, _)| comp(l).is_none()).map(|&(_, t)| t).collect())
            })
            .collect();
        let mut out = Automaton::new(Alphabet::Symbols(names.clone()));
        for label in &self.labels {
            out.add_state(label.clone());
        }
        for (s, reach_s) in closure.iter().enumerate() {
            for q in (0..n).filter(|&q| reach_s[q]) {
                if self.finals[q] {
                    out.finals[s] = true;
                }
                for &(l, t) in &self.edges[q] {
                    if let Some(c) = comp(l) {
                        out.edges[s].push((c, t));
                    }
                }
            }
            out.edges[s].sort_unstable();
            out.edges[s].dedup();
        }
        out.initials = self.initials.clone();
        Ok(out)
    }
}

/// Pairs `(u, v)` of equal-length words with `u` strictly before `v` in
/// lexicographic order. `ranks[i]` is the position of symbol `i` in the
/// order. State 0 reads the common prefix, 1 has seen `u < v`, 2 `u > v`.
pub fn lex_pair_automaton(names: &[String], ranks: &[usize]) -> Automaton {
    let k = names.len();
    let mut a = Automaton::new(Alphabet::full_pairs(names, names));
    let eq = a.add_state("=");
    let lt = a.add_state("<");
    let gt = a.add_state(">");
    for l in 0..k {
        for r in 0..k {
            let letter = l * k + r;
            let to = match ranks[l].cmp(&ranks[r]) {
                std::cmp::Ordering::Equal => eq,
                std::cmp::Ordering::Less => lt,
                std::cmp::Ordering::Greater => gt,
            };
            a.add_edge(eq, letter, to);
            a.add_edge(lt, letter, lt);
        }
    }
    a.set_initial(eq);
    a.set_final(lt, true);
    a
}
