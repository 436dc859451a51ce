use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Nfa};
use crate::error::{Error, Result};

/// A complete deterministic automaton. State `q` on symbol `a` goes to
/// `table[q * k + a]` where `k` is the alphabet size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    accepting: Vec<bool>,
    table: Vec<usize>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, start: usize, accepting: Vec<bool>, table: Vec<usize>) -> Result<Self> {
        let n = accepting.len();
        if n == 0 || start >= n {
            return Err(Error::InvalidAutomaton(format!("start state {start} out of 0..{n}")));
        }
        if table.len() != n * alphabet.len() {
            return Err(Error::InvalidAutomaton(format!(
                "transition table has {} entries, expected {}",
                table.len(),
                n * alphabet.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!("transition target {bad} out of 0..{n}")));
        }
        Ok(Dfa {
            alphabet,
            start,
            accepting,
            table,
        })
    }

    /// Builds from a partial transition list; missing transitions go to a
    /// fresh rejecting sink, added only when needed.
    pub fn from_transitions(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: &[usize],
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut table = vec![usize::MAX; states * k];
        for &(q, a, r) in transitions {
            if q >= states || r >= states || a >= k {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({q}, {a}, {r}) outside {states} states and {k} symbols"
                )));
            }
            let slot = &mut table[q * k + a];
            if *slot != usize::MAX && *slot != r {
                return Err(Error::InvalidAutomaton(format!(
                    "two transitions from state {q} on {:?}",
                    alphabet.label(a)
                )));
            }
            *slot = r;
        }
        let mut acc = vec![false; states];
        for &q in accepting {
            if q >= states {
                return Err(Error::InvalidAutomaton(format!("accepting state {q} out of range")));
            }
            acc[q] = true;
        }
        if table.contains(&usize::MAX) {
            let sink = states;
            for t in table.iter_mut().filter(|t| **t == usize::MAX) {
                *t = sink;
            }
            table.extend(std::iter::repeat_n(sink, k));
            acc.push(false);
        }
        Dfa::new(alphabet, start, acc, table)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa {
            alphabet,
            start: 0,
            accepting: vec![false],
            table: vec![0; k],
        }
    }

    /// `A*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut d = Dfa::empty(alphabet);
        d.accepting[0] = true;
        d
    }

    /// The finite language given by a list of words, minimized.
    pub fn from_words(alphabet: Alphabet, words: &[Vec<usize>]) -> Result<Self> {
        let k = alphabet.len();
        let mut accepting = vec![false];
        let mut trans: Vec<(usize, usize, usize)> = Vec::new();
        let mut children: HashMap<(usize, usize), usize> = HashMap::new();
        for w in words {
            let mut q = 0;
            for &a in w {
                if a >= k {
                    return Err(Error::InvalidAutomaton(format!("symbol {a} out of range")));
                }
                q = *children.entry((q, a)).or_insert_with(|| {
                    accepting.push(false);
                    let r = accepting.len() - 1;
                    trans.push((q, a, r));
                    r
                });
            }
            accepting[q] = true;
        }
        let acc: Vec<usize> = (0..accepting.len()).filter(|&q| accepting[q]).collect();
        Ok(Dfa::from_transitions(alphabet, accepting.len(), 0, &acc, &trans)?.minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.table[q * self.alphabet.len() + symbol]
    }

    pub fn run_from(&self, mut q: usize, word: &[usize]) -> usize {
        for &a in word {
            q = self.next(q, a);
        }
        q
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run_from(self.start, word)]
    }

    pub fn accepts_labels<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.encode(word)?))
    }

    /// Transitions as `(from, symbol, to)` in state-then-symbol order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.alphabet.len();
        self.table.iter().enumerate().map(move |(i, &r)| (i / k.max(1), i % k.max(1), r))
    }

    /// States that can still reach an accepting state.
    pub fn live(&self) -> Vec<bool> {
        let n = self.states();
        let k = self.alphabet.len();
        let mut preds = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                preds[self.next(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = self.accepting_states();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        !self.live()[self.start]
    }

    /// Minimal equivalent automaton with states numbered in breadth-first
    /// order from the start, symbols explored in alphabet order.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let order = self.bfs_order(self.start);
        let mut compact = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            compact[q] = i;
        }
        let n = order.len();
        let succ = |i: usize, a: usize| compact[self.next(order[i], a)];

        let mut class: Vec<usize> = order.iter().map(|&q| self.accepting[q] as usize).collect();
        let mut classes = {
            let mut seen = [false; 2];
            class.iter().for_each(|&c| seen[c] = true);
            seen.iter().filter(|&&s| s).count()
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = Vec::with_capacity(n);
            for i in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                sig.extend((0..k).map(|a| class[succ(i, a)]));
                let fresh = ids.len();
                next_class.push(*ids.entry(sig).or_insert(fresh));
            }
            let stable = ids.len() == classes;
            classes = ids.len();
            class = next_class;
            if stable {
                break;
            }
        }

        let mut representative = vec![usize::MAX; classes];
        for i in (0..n).rev() {
            representative[class[i]] = i;
        }
        let quotient = Dfa {
            alphabet: self.alphabet.clone(),
            start: class[0],
            accepting: (0..classes).map(|c| self.accepting[order[representative[c]]]).collect(),
            table: (0..classes)
                .flat_map(|c| (0..k).map(move |a| (c, a)))
                .map(|(c, a)| class[succ(representative[c], a)])
                .collect(),
        };
        quotient.renumber()
    }

    fn bfs_order(&self, from: usize) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        seen[from] = true;
        let mut order = vec![from];
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in 0..self.alphabet.len() {
                let r = self.next(q, a);
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Drops unreachable states and renumbers in breadth-first order.
    fn renumber(&self) -> Dfa {
        let order = self.bfs_order(self.start);
        let mut new_id = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let k = self.alphabet.len();
        Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
            table: order
                .iter()
                .flat_map(|&q| (0..k).map(move |a| (q, a)))
                .map(|(q, a)| new_id[self.next(q, a)])
                .collect(),
        }
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.accepting.iter_mut().for_each(|b| *b = !*b);
        d
    }

    /// Reachable part of the synchronous product, accepting by `keep`.
    pub fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.alphabet.require_same(&other.alphabet, "product")?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        ids.insert(pairs[0], 0);
        let mut table = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let t = (self.next(p, a), other.next(q, a));
                let fresh = pairs.len();
                let id = *ids.entry(t).or_insert(fresh);
                if id == fresh {
                    pairs.push(t);
                }
                table.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| keep(self.accepting[p], other.accepting[q]))
            .collect();
        Dfa::new(self.alphabet.clone(), 0, accepting, table)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    pub fn is_equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |a, b| a != b)?.is_empty())
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.states() {
            nfa.add_state(self.accepting[q]);
        }
        nfa.add_start(self.start);
        for (q, a, r) in self.transitions() {
            nfa.add_move(q, a, r);
        }
        nfa
    }

    pub fn concat(&self, other: &Dfa, budget: usize) -> Result<Dfa> {
        self.alphabet.require_same(&other.alphabet, "concatenation")?;
        let mut nfa = self.to_nfa();
        let shift = nfa.states();
        for q in 0..other.states() {
            nfa.add_state(other.accepting[q]);
        }
        for (q, a, r) in other.transitions() {
            nfa.add_move(q + shift, a, r + shift);
        }
        for q in self.accepting_states() {
            nfa.set_accepting(q, false);
            nfa.add_epsilon(q, other.start + shift);
        }
        Ok(nfa.determinize(budget)?.minimize())
    }

    /// Kleene star; always accepts the empty word.
    pub fn star(&self, budget: usize) -> Result<Dfa> {
        let mut nfa = self.to_nfa();
        let hub = nfa.add_state(true);
        nfa.clear_starts();
        nfa.add_start(hub);
        nfa.add_epsilon(hub, self.start);
        for q in self.accepting_states() {
            nfa.add_epsilon(q, hub);
        }
        Ok(nfa.determinize(budget)?.minimize())
    }

    pub fn reverse(&self, budget: usize) -> Result<Dfa> {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.states() {
            nfa.add_state(q == self.start);
        }
        for q in self.accepting_states() {
            nfa.add_start(q);
        }
        for (q, a, r) in self.transitions() {
            nfa.add_move(r, a, q);
        }
        Ok(nfa.determinize(budget)?.minimize())
    }

    /// The language with the empty word removed.
    pub fn without_empty_word(&self) -> Result<Dfa> {
        if !self.accepting[self.start] {
            return Ok(self.clone());
        }
        let eps = Dfa::from_words(self.alphabet.clone(), &[Vec::new()])?;
        Ok(self.difference(&eps)?.minimize())
    }

    /// All accepted words of length `<= max_len`, in length-lex order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Vec<usize>> {
        let live = self.live();
        let mut out = Vec::new();
        if !live[self.start] {
            return out;
        }
        let mut layer = VecDeque::from([(Vec::new(), self.start)]);
        for len in 0..=max_len {
            let mut next = VecDeque::new();
            for (w, q) in layer {
                if self.accepting[q] {
                    out.push(w.clone());
                }
                if len == max_len {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    let r = self.next(q, a);
                    if live[r] {
                        let mut v = w.clone();
                        v.push(a);
                        next.push_back((v, r));
                    }
                }
            }
            layer = next;
        }
        out
    }

    pub fn enumerate_labels(&self, max_len: usize) -> Vec<Vec<String>> {
        self.enumerate(max_len)
            .iter()
            .map(|w| w.iter().map(|&a| self.alphabet.label(a).to_string()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::all_words;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn lang(words: &[&str]) -> Dfa {
        let a = ab();
        let ws: Vec<Vec<usize>> = words
            .iter()
            .map(|w| w.chars().map(|c| a.index_of(&c.to_string()).unwrap()).collect())
            .collect();
        Dfa::from_words(a, &ws).unwrap()
    }

    /// Words over {a,b} whose number of b's is divisible by 3.
    fn mod3() -> Dfa {
        Dfa::from_transitions(
            ab(),
            3,
            0,
            &[0],
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2), (2, 0, 2), (2, 1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn empty_language_has_one_state() {
        let e = Dfa::empty(ab()).minimize();
        assert_eq!(e.states(), 1);
        assert!(e.accepting_states().is_empty());
        assert!(e.is_empty());
        assert!(e.enumerate(4).is_empty());
    }

    #[test]
    fn complement_is_disjoint() {
        let l = mod3();
        assert!(l.intersection(&l.complement()).unwrap().is_empty());
        assert!(l.union(&l.complement()).unwrap().is_equivalent(&Dfa::universal(ab())).unwrap());
    }

    #[test]
    fn star_of_letters() {
        let s = lang(&["a", "b"]).star(1000).unwrap();
        for w in ["", "a", "ba", "abba"] {
            assert!(s.accepts_labels(&w.chars().map(String::from).collect::<Vec<_>>()).unwrap());
        }
        let plus = lang(&["a"]).star(1000).unwrap().without_empty_word().unwrap();
        assert_eq!(plus.enumerate(2), vec![vec![0], vec![0, 0]]);
    }

    #[test]
    fn concat_and_difference() {
        let l = lang(&["a", "ab"]).concat(&lang(&["b", ""]), 1000).unwrap();
        let expect = lang(&["a", "ab", "abb"]);
        assert!(l.is_equivalent(&expect).unwrap());
        assert_eq!(l.minimize(), expect);
        let d = expect.difference(&lang(&["ab"])).unwrap().minimize();
        assert_eq!(d, lang(&["a", "abb"]));
    }

    #[test]
    fn minimize_is_canonical_and_idempotent() {
        let l = mod3();
        let m = l.minimize();
        assert_eq!(m.states(), 3);
        assert_eq!(m.minimize(), m);
        // The same language built redundantly minimizes to the same automaton.
        let doubled = l.union(&l).unwrap().intersection(&l).unwrap();
        assert_eq!(doubled.minimize(), m);
    }

    #[test]
    fn enumerate_is_length_lex_and_sound() {
        let l = mod3();
        let words = l.enumerate(6);
        let expected: Vec<Vec<usize>> = all_words(2, 6)
            .into_iter()
            .filter(|w| w.iter().filter(|&&a| a == 1).count() % 3 == 0)
            .collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn reverse_matches_word_reversal() {
        let l = lang(&["ab", "aab", "b"]);
        let r = l.reverse(1000).unwrap();
        for w in all_words(2, 5) {
            let mut rev = w.clone();
            rev.reverse();
            assert_eq!(r.accepts(&w), l.accepts(&rev));
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(Dfa::new(ab(), 0, vec![false], vec![0]).is_err());
        assert!(Dfa::new(ab(), 1, vec![false], vec![0, 0]).is_err());
        assert!(Dfa::new(ab(), 0, vec![false], vec![0, 3]).is_err());
        assert!(Dfa::from_transitions(ab(), 2, 0, &[], &[(0, 0, 0), (0, 0, 1)]).is_err());
        let other = Alphabet::new(["a"]).unwrap();
        assert!(matches!(
            mod3().intersection(&Dfa::empty(other)),
            Err(Error::AlphabetMismatch(_))
        ));
    }
}
