//! Elements of the Baumslag-Solitar semigroup `S(m,n) = Sg<x,y | yx^m = x^n y>`.
//!
//! Words are rewritten with `x^n y -> y x^m` until no redex remains. The
//! resulting normal form is `x^k0 y x^k1 y ... y x^l` with every `k_i < n`,
//! stored run-length encoded because the tail `l` grows geometrically.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(m, n)` of exponents in the defining relation `yx^m = x^n y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BsParams {
    m: u32,
    n: u32,
}

impl BsParams {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Parameter(format!(
                "m and n must be positive, got m={m}, n={n}"
            )));
        }
        Ok(BsParams { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Parameters of the reversed presentation: `S(m,n)^rev = S(n,m)`.
    pub fn reversed(&self) -> Self {
        BsParams {
            m: self.n,
            n: self.m,
        }
    }

    pub(crate) fn require_m_gt_n(&self, context: &str) -> Result<()> {
        if self.m > self.n {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "{context} requires m > n, got m={}, n={}",
                self.m, self.n
            )))
        }
    }
}

impl fmt::Display for BsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.m, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A nonempty word over `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SgWord(Vec<Letter>);

impl SgWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Parse("semigroup words must be nonempty".into()));
        }
        Ok(SgWord(letters))
    }

    pub fn x_power(k: usize) -> Result<Self> {
        SgWord::new(vec![Letter::X; k])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::Y).count()
    }

    /// Lengths of the maximal `x`-runs around the `y`s; always `y_count + 1` entries.
    pub fn x_runs(&self) -> Vec<BigUint> {
        x_runs(&self.0)
    }

    pub fn concat(&self, other: &SgWord) -> SgWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        SgWord(letters)
    }

    /// Every nonempty word over `{x,y}` of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> Vec<SgWord> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            for bits in 0u64..(1u64 << len) {
                let letters = (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Letter::X
                        } else {
                            Letter::Y
                        }
                    })
                    .collect();
                out.push(SgWord(letters));
            }
        }
        out
    }
}

pub(crate) fn x_runs(letters: &[Letter]) -> Vec<BigUint> {
    let mut runs = vec![0u64];
    for &l in letters {
        match l {
            Letter::X => *runs.last_mut().unwrap() += 1,
            Letter::Y => runs.push(0),
        }
    }
    runs.into_iter().map(BigUint::from).collect()
}

impl fmt::Display for SgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.0)
    }
}

/// Writes a letter sequence with caret powers for runs longer than two.
pub(crate) fn write_runs(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let run = j - i;
        if run > 2 {
            write!(f, "{}^{}", l.as_char(), run)?;
        } else {
            for _ in 0..run {
                write!(f, "{}", l.as_char())?;
            }
        }
        i = j;
    }
    Ok(())
}

impl FromStr for SgWord {
    type Err = Error;

    /// Parses `x`, `y` with optional caret powers, e.g. `x^5y` or `xyx^2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (c, power) in parse_powers(s, |c| matches!(c, 'x' | 'y'))? {
            if power < 0 {
                return Err(Error::Parse(format!(
                    "negative power in semigroup word {s:?}"
                )));
            }
            let l = if c == 'x' { Letter::X } else { Letter::Y };
            letters.extend(std::iter::repeat_n(l, power as usize));
        }
        SgWord::new(letters).map_err(|_| Error::Parse(format!("empty word {s:?}")))
    }
}

/// Splits `x^3yX^-2` style input into `(letter, power)` pairs.
pub(crate) fn parse_powers(s: &str, allowed: impl Fn(char) -> bool) -> Result<Vec<(char, i64)>> {
    const MAX_POWER: i64 = 1 << 24;
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !allowed(c) {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
        i += 1;
        let mut power = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            power = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent after {c}^ in {s:?}")))?;
            if power.abs() > MAX_POWER {
                return Err(Error::Parse(format!("exponent {power} too large in {s:?}")));
            }
        }
        out.push((c, power));
    }
    Ok(out)
}

/// Prefix `u(t)` and suffix `u[t]` of a word; `t` past the end yields `(u, ε)`.
pub fn split<T: Clone>(u: &[T], t: usize) -> (Vec<T>, Vec<T>) {
    let t = t.min(u.len());
    (u[..t].to_vec(), u[t..].to_vec())
}

pub fn reverse(w: &SgWord) -> SgWord {
    let mut letters = w.0.clone();
    letters.reverse();
    SgWord(letters)
}

/// Canonical form `x^k0 y x^k1 ... y x^l` of an element of `S(m,n)^1`.
///
/// `blocks` holds `k_0..k_j` (one per `y`), each below `n`; `tail` is `l`.
/// The adjoined identity is the unique form with no blocks and a zero tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    blocks: Vec<u64>,
    tail: BigUint,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm {
            blocks: Vec::new(),
            tail: BigUint::zero(),
        }
    }

    pub fn from_parts(blocks: Vec<u64>, tail: BigUint, p: BsParams) -> Result<Self> {
        if let Some(&k) = blocks.iter().find(|&&k| k >= p.n as u64) {
            return Err(Error::Domain(format!(
                "block {k} is not below n={} in a normal form",
                p.n
            )));
        }
        Ok(NormalForm { blocks, tail })
    }

    /// Sweeps `x`-runs left to right, pushing every multiple of `n` through the
    /// next `y` where it becomes the same multiple of `m`.
    pub(crate) fn from_runs(runs: &[BigUint], p: BsParams) -> Self {
        let (first, rest) = runs.split_first().expect("runs are never empty");
        let mut blocks = Vec::with_capacity(rest.len());
        let mut carry = first.clone();
        extend_sweep(&mut blocks, &mut carry, rest, p);
        NormalForm {
            blocks,
            tail: carry,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.is_empty() && self.tail.is_zero()
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn tail(&self) -> &BigUint {
        &self.tail
    }

    pub fn y_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn x_count(&self) -> BigUint {
        self.blocks.iter().fold(self.tail.clone(), |acc, &k| acc + k)
    }

    /// `x`-runs of the represented normal-form word.
    pub fn runs(&self) -> Vec<BigUint> {
        let mut runs: Vec<BigUint> = self.blocks.iter().map(|&k| BigUint::from(k)).collect();
        runs.push(self.tail.clone());
        runs
    }

    /// Materializes the normal-form word. Returns `None` for the identity or
    /// when the word would be longer than `max_len`.
    pub fn to_word(&self, max_len: usize) -> Option<SgWord> {
        if self.is_identity() {
            return None;
        }
        let total = self.x_count() + self.blocks.len();
        if total > BigUint::from(max_len) {
            return None;
        }
        let mut letters = Vec::new();
        for &k in &self.blocks {
            letters.extend(std::iter::repeat_n(Letter::X, k as usize));
            letters.push(Letter::Y);
        }
        letters.extend(std::iter::repeat_n(Letter::X, self.tail.to_usize()?));
        Some(SgWord(letters))
    }
}

fn extend_sweep(blocks: &mut Vec<u64>, carry: &mut BigUint, runs: &[BigUint], p: BsParams) {
    let m = BigUint::from(p.m);
    let n = BigUint::from(p.n);
    for run in runs {
        let (q, r) = carry.div_rem(&n);
        blocks.push(r.to_u64().expect("remainder below n"));
        *carry = q * &m + run;
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for &k in &self.blocks {
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            write!(f, "y")?;
        }
        if self.tail == BigUint::from(1u32) {
            write!(f, "x")?;
        } else if !self.tail.is_zero() {
            write!(f, "x^{}", self.tail)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    blocks: Vec<u64>,
    tail: serde_json::Value,
}

impl NormalForm {
    /// `{"blocks":[...],"tail":N}`; a tail beyond `u64` is written as a decimal string.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "blocks": self.blocks,
            "tail": big_to_json(&self.tail),
        })
    }

    pub fn from_json(v: &serde_json::Value, p: BsParams) -> Result<Self> {
        let raw: NormalFormJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("normal form JSON: {e}")))?;
        let tail = match &raw.tail {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| Error::Parse("tail must be a nonnegative integer".into()))?,
            serde_json::Value::String(s) => s
                .parse()
                .map_err(|_| Error::Parse(format!("bad tail {s:?}")))?,
            _ => return Err(Error::Parse("tail must be a number or string".into())),
        };
        NormalForm::from_parts(raw.blocks, tail, p)
    }
}

pub(crate) fn big_to_json(b: &BigUint) -> serde_json::Value {
    match b.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(b.to_string()),
    }
}

pub fn normalize(w: &SgWord, p: BsParams) -> NormalForm {
    NormalForm::from_runs(&w.x_runs(), p)
}

/// Product in `S(m,n)^1`. Only the part of `t` to the right of the seam is swept.
pub fn multiply(s: &NormalForm, t: &NormalForm, p: BsParams) -> NormalForm {
    if s.is_identity() {
        return t.clone();
    }
    if t.is_identity() {
        return s.clone();
    }
    let t_runs = t.runs();
    let mut blocks = s.blocks.clone();
    let mut carry = &s.tail + &t_runs[0];
    extend_sweep(&mut blocks, &mut carry, &t_runs[1..], p);
    NormalForm {
        blocks,
        tail: carry,
    }
}

pub fn equal(u: &SgWord, v: &SgWord, p: BsParams) -> bool {
    u.y_count() == v.y_count() && normalize(u, p) == normalize(v, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementStats {
    /// Number of `y`s, the same in every representative.
    pub beta: usize,
    /// Number of `x`s in the normal form.
    pub gamma: BigUint,
    pub is_x_power: bool,
}

pub fn element_stats(w: &SgWord, p: BsParams) -> ElementStats {
    let nf = normalize(w, p);
    ElementStats {
        beta: nf.y_count(),
        gamma: nf.x_count(),
        is_x_power: nf.y_count() == 0,
    }
}
