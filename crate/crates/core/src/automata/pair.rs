//! Right-padded convolution of word pairs and automata over pair alphabets.
//!
//! For a base alphabet `A` of size `k` the pair alphabet `A(2,$)` has
//! `(k+1)^2 - 1` symbols: component index `k` stands for `$`, and the pair
//! `(l, r)` is symbol `l * (k+1) + r`. The excluded `($,$)` would be the last
//! index, so the encoding stays dense.

use std::collections::HashMap;

use super::{Alphabet, Dfa, Nfa};
use crate::error::{Error, Result};

pub const PAD: &str = "$";

/// One position of a convolved pair; `None` is the padding symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairedSymbol<T> {
    pub left: Option<T>,
    pub right: Option<T>,
}

/// Pairs `u` and `v` position by position, padding the shorter one on the right.
pub fn convolve<T: Clone>(u: &[T], v: &[T]) -> Vec<PairedSymbol<T>> {
    (0..u.len().max(v.len()))
        .map(|i| PairedSymbol {
            left: u.get(i).cloned(),
            right: v.get(i).cloned(),
        })
        .collect()
}

/// Inverse of [`convolve`]; rejects `($,$)` and padding followed by a letter.
pub fn deconvolve<T: Clone>(w: &[PairedSymbol<T>]) -> Result<(Vec<T>, Vec<T>)> {
    let (mut u, mut v) = (Vec::new(), Vec::new());
    let (mut left_done, mut right_done) = (false, false);
    for (i, s) in w.iter().enumerate() {
        match (&s.left, &s.right) {
            (None, None) => return Err(Error::MalformedPair(format!("($,$) at position {i}"))),
            _ => {
                for (side, done, out) in [(&s.left, &mut left_done, &mut u), (&s.right, &mut right_done, &mut v)] {
                    match side {
                        Some(_) if *done => {
                            return Err(Error::MalformedPair(format!("letter after padding at position {i}")));
                        }
                        Some(a) => out.push(a.clone()),
                        None => *done = true,
                    }
                }
            }
        }
    }
    Ok((u, v))
}

/// The pair alphabet `A(2,$)` over a base alphabet, with labels `"a|b"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlphabet {
    base: Alphabet,
    pairs: Alphabet,
}

impl PairAlphabet {
    pub fn new(base: &Alphabet) -> Result<Self> {
        for l in base.labels() {
            if l == PAD || l.contains('|') {
                return Err(Error::Parse(format!(
                    "base label {l:?} clashes with pair notation"
                )));
            }
        }
        let comp = |i: usize| if i == base.len() { PAD } else { base.label(i) };
        let width = base.len() + 1;
        let labels = (0..width * width - 1).map(|s| format!("{}|{}", comp(s / width), comp(s % width)));
        Ok(PairAlphabet {
            base: base.clone(),
            pairs: Alphabet::new(labels)?,
        })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.pairs
    }

    pub fn encode(&self, left: Option<usize>, right: Option<usize>) -> usize {
        let k = self.base.len();
        debug_assert!(left.is_some() || right.is_some());
        left.unwrap_or(k) * (k + 1) + right.unwrap_or(k)
    }

    pub fn decode(&self, symbol: usize) -> PairedSymbol<usize> {
        let k = self.base.len();
        let part = |i: usize| (i < k).then_some(i);
        PairedSymbol {
            left: part(symbol / (k + 1)),
            right: part(symbol % (k + 1)),
        }
    }

    pub fn convolve(&self, u: &[usize], v: &[usize]) -> Vec<usize> {
        convolve(u, v)
            .into_iter()
            .map(|s| self.encode(s.left, s.right))
            .collect()
    }

    pub fn deconvolve(&self, w: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
        let symbols: Vec<PairedSymbol<usize>> = w.iter().map(|&s| self.decode(s)).collect();
        deconvolve(&symbols)
    }

    /// Minimal automaton for a finite relation given as word pairs.
    pub fn relation(&self, pairs: &[(Vec<usize>, Vec<usize>)]) -> Result<Dfa> {
        let words: Vec<Vec<usize>> = pairs.iter().map(|(u, v)| self.convolve(u, v)).collect();
        Dfa::from_words(self.pairs.clone(), &words)
    }

    fn require_over_pairs(&self, d: &Dfa, op: &str) -> Result<()> {
        self.pairs.require_same(d.alphabet(), op)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Track {
    Start,
    Both(usize, usize),
    LeftOnly(usize),
    RightOnly(usize),
    Sink,
}

/// `{ convolve(u, v) : u ∈ l1, v ∈ l2 }` minus the empty pair word.
pub fn pair_language(l1: &Dfa, l2: &Dfa) -> Result<Dfa> {
    l1.alphabet().require_same(l2.alphabet(), "pair language")?;
    let pa = PairAlphabet::new(l1.alphabet())?;
    let k = l1.alphabet().len();
    let step = |t: Track, s: PairedSymbol<usize>| -> Track {
        let both = match t {
            Track::Start => Some((l1.start(), l2.start())),
            Track::Both(p, q) => Some((p, q)),
            _ => None,
        };
        match (t, s.left, s.right) {
            (_, Some(a), Some(b)) => match both {
                Some((p, q)) => Track::Both(l1.next(p, a), l2.next(q, b)),
                None => Track::Sink,
            },
            (Track::LeftOnly(p), Some(a), None) => Track::LeftOnly(l1.next(p, a)),
            (Track::RightOnly(q), None, Some(b)) => Track::RightOnly(l2.next(q, b)),
            (_, Some(a), None) => match both {
                Some((p, q)) if l2.is_accepting(q) => Track::LeftOnly(l1.next(p, a)),
                _ => Track::Sink,
            },
            (_, None, Some(b)) => match both {
                Some((p, q)) if l1.is_accepting(p) => Track::RightOnly(l2.next(q, b)),
                _ => Track::Sink,
            },
            (_, None, None) => Track::Sink,
        }
    };
    let accepting = |t: Track| match t {
        Track::Both(p, q) => l1.is_accepting(p) && l2.is_accepting(q),
        Track::LeftOnly(p) => l1.is_accepting(p),
        Track::RightOnly(q) => l2.is_accepting(q),
        Track::Start | Track::Sink => false,
    };
    let n_sym = (k + 1) * (k + 1) - 1;
    let mut ids: HashMap<Track, usize> = HashMap::from([(Track::Start, 0)]);
    let mut tracks = vec![Track::Start];
    let mut table = Vec::new();
    let mut i = 0;
    while i < tracks.len() {
        for s in 0..n_sym {
            let t = step(tracks[i], pa.decode(s));
            let fresh = tracks.len();
            let id = *ids.entry(t).or_insert(fresh);
            if id == fresh {
                tracks.push(t);
            }
            table.push(id);
        }
        i += 1;
    }
    let acc = tracks.iter().map(|&t| accepting(t)).collect();
    Ok(Dfa::new(pa.alphabet().clone(), 0, acc, table)?.minimize())
}

/// Flags for tracks whose padding has begun.
const U_PAD: u8 = 1;
const V_PAD: u8 = 2;
const W_PAD: u8 = 4;

/// `{ (u,v) : ∃w, (u,w) ∈ U and (v,w) ∈ V }`, minus the empty pair word.
///
/// The witness `w` is guessed one letter at a time alongside the output
/// pair; positions where both output components are padding are ε-moves.
pub fn compose(pa: &PairAlphabet, u: &Dfa, v: &Dfa, budget: usize) -> Result<Dfa> {
    pa.require_over_pairs(u, "compose")?;
    pa.require_over_pairs(v, "compose")?;
    let k = pa.base().len();
    let (u_live, v_live) = (u.live(), v.live());
    let letters: Vec<Option<usize>> = (0..k).map(Some).chain([None]).collect();

    let mut nfa = Nfa::new(pa.alphabet().clone());
    let mut ids: HashMap<(usize, usize, u8), usize> = HashMap::new();
    let mut queue: Vec<(usize, usize, u8)> = Vec::new();
    let accepts = |(qu, qv, flags): (usize, usize, u8)| {
        let u_ok = flags & (U_PAD | W_PAD) == U_PAD | W_PAD || u.is_accepting(qu);
        let v_ok = flags & (V_PAD | W_PAD) == V_PAD | W_PAD || v.is_accepting(qv);
        u_ok && v_ok
    };
    let start = (u.start(), v.start(), 0u8);
    ids.insert(start, nfa.add_state(accepts(start)));
    nfa.add_start(0);
    queue.push(start);

    while let Some(state) = queue.pop() {
        let (qu, qv, flags) = state;
        let from = ids[&state];
        let choices = |pad: u8| -> &[Option<usize>] {
            if flags & pad != 0 {
                &letters[k..]
            } else {
                &letters[..]
            }
        };
        for &x in choices(U_PAD) {
            for &y in choices(V_PAD) {
                for &c in choices(W_PAD) {
                    if x.is_none() && y.is_none() && c.is_none() {
                        continue;
                    }
                    let next_flags = flags
                        | if x.is_none() { U_PAD } else { 0 }
                        | if y.is_none() { V_PAD } else { 0 }
                        | if c.is_none() { W_PAD } else { 0 };
                    let Some(nu) = advance(u, qu, x, c, flags, U_PAD, pa) else { continue };
                    let Some(nv) = advance(v, qv, y, c, flags, V_PAD, pa) else { continue };
                    let u_done = next_flags & (U_PAD | W_PAD) == U_PAD | W_PAD;
                    let v_done = next_flags & (V_PAD | W_PAD) == V_PAD | W_PAD;
                    if (!u_done && !u_live[nu]) || (!v_done && !v_live[nv]) {
                        continue;
                    }
                    let target = (nu, nv, next_flags);
                    let to = match ids.get(&target) {
                        Some(&id) => id,
                        None => {
                            if ids.len() >= budget {
                                return Err(Error::budget("composition", budget));
                            }
                            let id = nfa.add_state(accepts(target));
                            ids.insert(target, id);
                            queue.push(target);
                            id
                        }
                    };
                    if x.is_none() && y.is_none() {
                        nfa.add_epsilon(from, to);
                    } else {
                        nfa.add_move(from, pa.encode(x, y), to);
                    }
                }
            }
        }
    }
    nfa.determinize(budget)?.minimize().without_empty_word()
}

/// Steps one factor of a composition on the pair `(out, witness)`. Reading
/// `($,$)` finishes the factor, which must then be accepting.
fn advance(
    d: &Dfa,
    q: usize,
    out: Option<usize>,
    witness: Option<usize>,
    flags: u8,
    pad: u8,
    pa: &PairAlphabet,
) -> Option<usize> {
    if out.is_none() && witness.is_none() {
        let already_done = flags & (pad | W_PAD) == pad | W_PAD;
        return (already_done || d.is_accepting(q)).then_some(q);
    }
    Some(d.next(q, pa.encode(out, witness)))
}
