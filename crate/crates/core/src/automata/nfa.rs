use std::collections::HashMap;

use super::{Alphabet, Dfa};
use crate::error::{Error, Result};

/// A nondeterministic automaton with ε-moves and any number of start states.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    starts: Vec<usize>,
    accepting: Vec<bool>,
    moves: Vec<Vec<(usize, usize)>>,
    epsilon: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            starts: Vec::new(),
            accepting: Vec::new(),
            moves: Vec::new(),
            epsilon: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.moves.push(Vec::new());
        self.epsilon.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn add_start(&mut self, q: usize) {
        if !self.starts.contains(&q) {
            self.starts.push(q);
        }
    }

    pub fn clear_starts(&mut self) {
        self.starts.clear();
    }

    pub fn add_move(&mut self, from: usize, symbol: usize, to: usize) {
        self.moves[from].push((symbol, to));
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        self.epsilon[from].push(to);
    }

    /// Sorted ε-closure of a set of states; `mark` is scratch space of size
    /// `states()`, returned cleared.
    fn closure(&self, seed: impl IntoIterator<Item = usize>, mark: &mut [bool]) -> Vec<usize> {
        let mut set: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for q in seed {
            if !mark[q] {
                mark[q] = true;
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            set.push(q);
            for &r in &self.epsilon[q] {
                if !mark[r] {
                    mark[r] = true;
                    stack.push(r);
                }
            }
        }
        for &q in &set {
            mark[q] = false;
        }
        set.sort_unstable();
        set
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut mark = vec![false; self.states()];
        let mut cur = self.closure(self.starts.iter().copied(), &mut mark);
        for &a in word {
            let targets: Vec<usize> = cur
                .iter()
                .flat_map(|&q| self.moves[q].iter().filter(|m| m.0 == a).map(|m| m.1))
                .collect();
            cur = self.closure(targets, &mut mark);
        }
        cur.iter().any(|&q| self.accepting[q])
    }

    /// Subset construction over reachable subsets; the empty subset becomes
    /// the sink. Fails once more than `budget` subsets are created.
    pub fn determinize(&self, budget: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let mut mark = vec![false; self.states()];
        let start = self.closure(self.starts.iter().copied(), &mut mark);
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut subsets = vec![start];
        let mut table = Vec::new();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut i = 0;
        while i < subsets.len() {
            for &q in &subsets[i] {
                for &(a, r) in &self.moves[q] {
                    buckets[a].push(r);
                }
            }
            for bucket in buckets.iter_mut() {
                let target = self.closure(bucket.drain(..), &mut mark);
                let fresh = subsets.len();
                let id = *ids.entry(target.clone()).or_insert(fresh);
                if id == fresh {
                    if fresh >= budget {
                        return Err(Error::budget("subset construction", budget));
                    }
                    subsets.push(target);
                }
                table.push(id);
            }
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa::new(self.alphabet.clone(), 0, accepting, table)
    }
}
