use std::collections::HashMap;

use super::alphabet::DecoratedAlphabet;
use crate::automata::{Alphabet, Dfa, Nfa};
use crate::error::{Error, Result};

/// `K` is listed explicitly only up to this many words.
const K_MATERIALIZE: u64 = 4096;
/// Longest padded block or representative that will be built.
const MAX_WORD: u64 = 1 << 20;

/// The pieces of the representative language `L = J*(K')* - {ε} ∪ {1}`.
#[derive(Clone, Debug)]
pub struct LanguageParts {
    /// `k`, the longest word of `K` (0 when `A''` is empty).
    pub k: usize,
    /// `K` listed explicitly when small enough.
    pub k_words: Option<Vec<Vec<usize>>>,
    pub k_prime: Dfa,
    pub j: Dfa,
    pub language: Dfa,
}

fn m_pow(m: u32, beta: usize) -> Result<u64> {
    u32::try_from(beta)
        .ok()
        .and_then(|b| (m as u64).checked_pow(b))
        .filter(|&v| v <= MAX_WORD)
        .ok_or_else(|| Error::budget(format!("exponent bound {m}^{beta}"), MAX_WORD as usize))
}

/// `k = max_b 1 + |A'|(m^β_b - 1)`.
fn max_k_length(d: &DecoratedAlphabet) -> Result<usize> {
    let l = d.a_prime().len() as u64;
    let mut k = 0u64;
    for b in d.a_double_prime() {
        let bound = m_pow(d.params().m(), d.letters()[b].beta)?;
        k = k.max(1 + l * (bound - 1));
    }
    if k > MAX_WORD {
        return Err(Error::budget("length of K words", MAX_WORD as usize));
    }
    Ok(k as usize)
}

pub(crate) fn padded_length(beta: usize, k: usize) -> Result<usize> {
    let t = (beta as u64) * (k as u64 + 1);
    if t > MAX_WORD {
        return Err(Error::budget("length of K' words", MAX_WORD as usize));
    }
    Ok(t as usize)
}

/// Builds `K'` as an automaton: `b`, then `a_1^α_1 ... a_l^α_l` with
/// `α_i < m^β_b` in input order, then `1`s up to length `β_b(k+1)`.
fn k_prime_automaton(d: &DecoratedAlphabet, symbols: &Alphabet, k: usize, budget: usize) -> Result<Dfa> {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum St {
        Start,
        Counting { b: usize, i: usize, c: u64, len: usize },
        Padding { b: usize, len: usize },
    }
    let a_prime = d.a_prime();
    let one = d.identity_symbol();
    let mut nfa = Nfa::new(symbols.clone());
    let mut ids: HashMap<St, usize> = HashMap::new();
    let mut queue = vec![St::Start];
    let start = nfa.add_state(false);
    nfa.add_start(start);
    ids.insert(St::Start, start);
    let mut targets = HashMap::new();
    for b in d.a_double_prime() {
        targets.insert(b, (m_pow(d.params().m(), d.letters()[b].beta)?, padded_length(d.letters()[b].beta, k)?));
    }
    while let Some(st) = queue.pop() {
        let mut moves: Vec<(usize, St)> = Vec::new();
        match st {
            St::Start => {
                for &b in targets.keys() {
                    moves.push((b, St::Counting { b, i: 0, c: 0, len: 1 }));
                }
            }
            St::Counting { b, i, c, len } => {
                let (bound, total) = targets[&b];
                for (j, &letter) in a_prime.iter().enumerate().skip(i) {
                    let next_c = if j == i { c + 1 } else { 1 };
                    if next_c < bound {
                        moves.push((letter, St::Counting { b, i: j, c: next_c, len: len + 1 }));
                    }
                }
                if len < total {
                    moves.push((one, St::Padding { b, len: len + 1 }));
                }
            }
            St::Padding { b, len } => {
                if len < targets[&b].1 {
                    moves.push((one, St::Padding { b, len: len + 1 }));
                }
            }
        }
        let from = ids[&st];
        for (sym, to) in moves {
            let id = match ids.get(&to) {
                Some(&id) => id,
                None => {
                    if ids.len() >= budget {
                        return Err(Error::budget("K' automaton", budget));
                    }
                    let accepting = matches!(to, St::Padding { b, len } if len == targets[&b].1);
                    let id = nfa.add_state(accepting);
                    ids.insert(to, id);
                    queue.push(to);
                    id
                }
            };
            nfa.add_move(from, sym, id);
        }
    }
    Ok(nfa.determinize(budget)?.minimize())
}

/// Every `α` vector with entries below `bound`, for `l` letters.
fn exponent_vectors(l: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..bound).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn build_parts(d: &DecoratedAlphabet, budget: usize) -> Result<LanguageParts> {
    d.params().require_m_gt_n("building the representative language")?;
    let symbols = d.symbols();
    let one = d.identity_symbol();
    let a_prime = d.a_prime();
    let k = max_k_length(d)?;

    let mut k_size: u64 = 0;
    for b in d.a_double_prime() {
        let bound = m_pow(d.params().m(), d.letters()[b].beta)?;
        k_size = k_size.saturating_add(bound.saturating_pow(a_prime.len() as u32));
    }
    let k_words = (k_size <= K_MATERIALIZE).then(|| {
        let mut words = Vec::new();
        for b in d.a_double_prime() {
            let bound = m_pow(d.params().m(), d.letters()[b].beta).expect("checked above");
            for alpha in exponent_vectors(a_prime.len(), bound) {
                let mut w = vec![b];
                for (&a, &e) in a_prime.iter().zip(&alpha) {
                    w.extend(std::iter::repeat_n(a, e as usize));
                }
                words.push(w);
            }
        }
        words
    });

    let k_prime = k_prime_automaton(d, &symbols, k, budget)?;
    let j_words: Vec<Vec<usize>> = a_prime
        .iter()
        .map(|&a| {
            let mut w = vec![a];
            w.extend(std::iter::repeat_n(one, d.letters()[a].gamma - 1));
            w
        })
        .collect();
    let j = Dfa::from_words(symbols.clone(), &j_words)?;
    let language = j
        .star(budget)?
        .concat(&k_prime.star(budget)?, budget)?
        .without_empty_word()?
        .union(&Dfa::from_words(symbols.clone(), &[vec![one]])?)?
        .minimize();
    Ok(LanguageParts {
        k,
        k_words,
        k_prime,
        j,
        language,
    })
}

/// A word of `L` representing the same element as `w`, a word over the
/// generator letters (identity letters are skipped).
///
/// `x`-power letters are collected to the left of each `A''` letter, then
/// pushed further left with `b a^(m^β) = a^(n^β) b` from the last block to
/// the first.
pub fn build_rep(w: &[usize], d: &DecoratedAlphabet) -> Result<Vec<usize>> {
    d.params().require_m_gt_n("building representatives")?;
    let one = d.identity_symbol();
    let a_prime = d.a_prime();
    let slot: HashMap<usize, usize> = a_prime.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let overflow = || Error::budget("representative length", MAX_WORD as usize);

    let mut prefix = vec![0u64; a_prime.len()];
    let mut blocks: Vec<(usize, Vec<u64>)> = Vec::new();
    for &letter in w {
        if letter == one {
            continue;
        }
        if letter > one {
            return Err(Error::Parse(format!("symbol {letter} is not a generator")));
        }
        match slot.get(&letter) {
            Some(&i) => {
                let counts = blocks.last_mut().map_or(&mut prefix, |b| &mut b.1);
                counts[i] = counts[i].checked_add(1).ok_or_else(overflow)?;
            }
            None => blocks.push((letter, vec![0; a_prime.len()])),
        }
    }
    if w.iter().all(|&l| l == one) {
        return Ok(vec![one]);
    }

    let (m, n) = (d.params().m(), d.params().n());
    for bi in (0..blocks.len()).rev() {
        let beta = d.letters()[blocks[bi].0].beta;
        let up = m_pow(m, beta)?;
        let down = u32::try_from(beta).ok().and_then(|b| (n as u64).checked_pow(b)).ok_or_else(overflow)?;
        for i in 0..a_prime.len() {
            let q = blocks[bi].1[i] / up;
            blocks[bi].1[i] %= up;
            let carried = q.checked_mul(down).ok_or_else(overflow)?;
            let target = if bi == 0 { &mut prefix[i] } else { &mut blocks[bi - 1].1[i] };
            *target = target.checked_add(carried).ok_or_else(overflow)?;
        }
    }

    let k = max_k_length(d)?;
    let mut total: u64 = 0;
    for (i, &a) in a_prime.iter().enumerate() {
        total = total.saturating_add(prefix[i].saturating_mul(d.letters()[a].gamma as u64));
    }
    for (b, _) in &blocks {
        total = total.saturating_add(padded_length(d.letters()[*b].beta, k)? as u64);
    }
    if total > MAX_WORD {
        return Err(overflow());
    }

    let mut out = Vec::with_capacity(total as usize);
    for (i, &a) in a_prime.iter().enumerate() {
        for _ in 0..prefix[i] {
            out.push(a);
            out.extend(std::iter::repeat_n(one, d.letters()[a].gamma - 1));
        }
    }
    for (b, counts) in &blocks {
        let start = out.len();
        out.push(*b);
        for (i, &a) in a_prime.iter().enumerate() {
            out.extend(std::iter::repeat_n(a, counts[i] as usize));
        }
        let target = padded_length(d.letters()[*b].beta, k)?;
        out.extend(std::iter::repeat_n(one, target - (out.len() - start)));
    }
    Ok(out)
}
