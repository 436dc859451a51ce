//! The `m = n` case: `{p_1,...,p_m}* × ℕ₀ - {(ε,0)}` embeds in `S(m,m)`
//! via `p_i ↦ x^{i-1}y` and counter `↦ x^m`. The subsemigroup generated by
//! the eight elements below is neither right- nor left-automatic; this
//! module checks the concrete identities, uniqueness claims and pumping
//! mismatches that argument relies on. It does not decide automaticity.
//!
//! | letter | element        |
//! |--------|----------------|
//! | a      | `(x²p, 0)`     |
//! | b      | `(qrp, 1)`     |
//! | c      | `(qr, 0)`      |
//! | d      | `(pqr, 2)`     |
//! | e      | `(py², 0)`     |
//! | f      | `(x²pq, 0)`    |
//! | g      | `(rpqrpq, 3)`  |
//! | h      | `(rpy², 0)`    |
//!
//! The letters `x, y, p, q, r` are free-monoid letters, unrelated to the
//! generators of `S(m,n)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{BsParams, Letter, SgWord};

/// A letter of the rank-5 free monoid `{x,y,p,q,r}*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeLetter {
    X,
    Y,
    P,
    Q,
    R,
}

impl FreeLetter {
    pub const ALL: [FreeLetter; 5] = [FreeLetter::X, FreeLetter::Y, FreeLetter::P, FreeLetter::Q, FreeLetter::R];

    pub fn as_char(self) -> char {
        match self {
            FreeLetter::X => 'x',
            FreeLetter::Y => 'y',
            FreeLetter::P => 'p',
            FreeLetter::Q => 'q',
            FreeLetter::R => 'r',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        FreeLetter::ALL.into_iter().find(|l| l.as_char() == c)
    }

    /// Position `1..=5`, used by the rank-2 encoding.
    fn rank(self) -> usize {
        self as usize + 1
    }
}

/// An element `(word, count)` of `{x,y,p,q,r}* × ℕ₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FmElement {
    pub word: Vec<FreeLetter>,
    pub count: u64,
}

impl FmElement {
    /// Parses the free component from `x^2pq`-style notation.
    pub fn parse(word: &str, count: u64) -> Result<Self> {
        let powers = crate::semigroup::parse_powers(word, |c| FreeLetter::from_char(c).is_some())?;
        let mut letters = Vec::new();
        for (c, k) in powers {
            let k = usize::try_from(k).map_err(|_| Error::Parse(format!("negative exponent in {word:?}")))?;
            letters.extend(std::iter::repeat_n(FreeLetter::from_char(c).expect("filtered by parse_powers"), k));
        }
        Ok(FmElement { word: letters, count })
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(|l| l.as_char()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty() && self.count == 0
    }
}

impl fmt::Display for FmElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word_string();
        write!(f, "({}, {})", if w.is_empty() { "ε" } else { &w }, self.count)
    }
}

impl Serialize for FmElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FmElement", 2)?;
        st.serialize_field("word", &self.word_string())?;
        st.serialize_field("count", &self.count)?;
        st.end()
    }
}

/// Concatenation of words, sum of counts.
pub fn fm_mul(s: &FmElement, t: &FmElement) -> FmElement {
    let mut word = s.word.clone();
    word.extend_from_slice(&t.word);
    FmElement { word, count: s.count + t.count }
}

pub const GENERATOR_LETTERS: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

pub fn generator(letter: char) -> Option<FmElement> {
    let (w, c) = match letter {
        'a' => ("x^2p", 0),
        'b' => ("qrp", 1),
        'c' => ("qr", 0),
        'd' => ("pqr", 2),
        'e' => ("py^2", 0),
        'f' => ("x^2pq", 0),
        'g' => ("rpqrpq", 3),
        'h' => ("rpy^2", 0),
        _ => return None,
    };
    Some(FmElement::parse(w, c).expect("generator table parses"))
}

pub fn generators() -> Vec<(char, FmElement)> {
    GENERATOR_LETTERS.iter().map(|&c| (c, generator(c).expect("table letter"))).collect()
}

/// Element of a nonempty word over `a..h`.
pub fn evaluate(word: &str) -> Result<FmElement> {
    if word.is_empty() {
        return Err(Error::Parse("empty generator word".into()));
    }
    word.chars().try_fold(FmElement { word: Vec::new(), count: 0 }, |acc, c| {
        let g = generator(c).ok_or_else(|| Error::Parse(format!("{c:?} is not one of a..h")))?;
        Ok(fm_mul(&acc, &g))
    })
}

/// An element of `{p_1,...,p_k}* × ℕ₀`; `word` holds 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankedFm {
    pub word: Vec<usize>,
    pub count: u64,
}

/// Rank-5 to rank-2 encoding: the `i`-th free letter maps to `p_1 p_2^i`.
pub fn encode_rank2(s: &FmElement) -> RankedFm {
    let mut word = Vec::new();
    for l in &s.word {
        word.push(1);
        word.extend(std::iter::repeat_n(2, l.rank()));
    }
    RankedFm { word, count: s.count }
}

/// `p_i ↦ x^{i-1}y`, one `x^m` per unit of count, in `S(m,m)`.
pub fn embed_ranked(s: &RankedFm, m: u32) -> Result<SgWord> {
    if m < 2 {
        return Err(Error::Parameter(format!("the embedding needs m >= 2, got {m}")));
    }
    if s.word.is_empty() && s.count == 0 {
        return Err(Error::Domain("(ε, 0) is not a semigroup element".into()));
    }
    let mut letters = Vec::new();
    for &i in &s.word {
        if i == 0 || i > m as usize {
            return Err(Error::Domain(format!("p_{i} is not a generator of rank {m}")));
        }
        letters.extend(std::iter::repeat_n(Letter::X, i - 1));
        letters.push(Letter::Y);
    }
    let x = usize::try_from(s.count)
        .ok()
        .and_then(|c| c.checked_mul(m as usize))
        .ok_or_else(|| Error::Domain("count too large to spell out".into()))?;
    letters.extend(std::iter::repeat_n(Letter::X, x));
    SgWord::new(letters)
}

/// The element `(x,y,p,q,r)-word, count` as a word in `S(m,m)`.
pub fn embed_fm(s: &FmElement, m: u32) -> Result<SgWord> {
    embed_ranked(&encode_rank2(s), m)
}

/// `S(m,m)` parameters for the embedding.
pub fn embedding_params(m: u32) -> Result<BsParams> {
    if m < 2 {
        return Err(Error::Parameter(format!("the embedding needs m >= 2, got {m}")));
    }
    BsParams::new(m, m)
}

/// `(x²(pqr)^{2α+1}py², 3α)`.
pub fn identity_family_target(alpha: u64) -> FmElement {
    let mut s = String::from("x^2");
    for _ in 0..2 * alpha + 1 {
        s.push_str("pqr");
    }
    s.push_str("py^2");
    FmElement::parse(&s, 3 * alpha).expect("well-formed")
}

fn power_word(parts: &[(char, u64)]) -> String {
    parts.iter().flat_map(|&(c, k)| std::iter::repeat_n(c, k as usize)).collect()
}

/// `ab^α cd^α`.
pub fn u_word(alpha: u64) -> String {
    power_word(&[('a', 1), ('b', alpha), ('c', 1), ('d', alpha)])
}

/// `fg^α`.
pub fn v_word(alpha: u64) -> String {
    power_word(&[('f', 1), ('g', alpha)])
}

/// `⟨ab^α cd^α e⟩`, `⟨fg^α h⟩` and the closed form all agree.
pub fn check_identity_family(alpha: u64) -> bool {
    let target = identity_family_target(alpha);
    let left = evaluate(&format!("{}e", u_word(alpha))).expect("generator word");
    let right = evaluate(&format!("{}h", v_word(alpha))).expect("generator word");
    left == target && right == target
}

/// Every word over `a..h` of length at most `max_len` whose element is
/// `target`, sorted. Prefixes whose free component is not a prefix of the
/// target's, or whose count already exceeds it, are cut.
pub fn unique_rep_search(target: &FmElement, max_len: usize, budget: usize) -> Result<Vec<String>> {
    let gens = generators();
    let mut found = Vec::new();
    let mut visited = 0usize;
    let mut stack: Vec<(String, usize, u64)> = vec![(String::new(), 0, 0)];
    while let Some((word, pos, count)) = stack.pop() {
        visited += 1;
        if visited > budget {
            return Err(Error::budget("representative search", budget));
        }
        if !word.is_empty() && pos == target.word.len() && count == target.count {
            found.push(word.clone());
        }
        if word.len() == max_len {
            continue;
        }
        for (c, g) in &gens {
            let end = pos + g.word.len();
            if count + g.count > target.count || end > target.word.len() || target.word[pos..end] != g.word[..] {
                continue;
            }
            let mut next = word.clone();
            next.push(*c);
            stack.push((next, end, count + g.count));
        }
    }
    found.sort();
    Ok(found)
}

/// The two shapes of the pumped right-hand word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpCase {
    /// `z = fg^η fg^α`.
    Interleaved,
    /// `z = fg^{α+η}`.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpingReport {
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub eta: u64,
    pub case: PumpCase,
    pub left: FmElement,
    pub right: FmElement,
    pub free_match: bool,
    pub count_match: bool,
}

impl PumpingReport {
    pub fn consistent(&self) -> bool {
        self.free_match && self.count_match
    }
}

/// Compares `⟨we⟩` with `⟨zh⟩` for `w = ab^β b^{2(γ-β)} b^{α-γ} cd^α` in
/// both cases. `w` is evaluated as `ab^{α+γ-β}cd^α`, which is the same
/// element and stays defined when `γ > α`.
pub fn pumping_demo(alpha: u64, beta: u64, gamma: u64, eta: u64) -> Result<[PumpingReport; 2]> {
    if gamma <= beta {
        return Err(Error::Domain(format!("pumping needs gamma > beta, got beta {beta}, gamma {gamma}")));
    }
    let w = power_word(&[('a', 1), ('b', alpha + gamma - beta), ('c', 1), ('d', alpha), ('e', 1)]);
    let left = evaluate(&w)?;
    let report = |case, z: String| -> Result<PumpingReport> {
        let right = evaluate(&z)?;
        Ok(PumpingReport {
            alpha,
            beta,
            gamma,
            eta,
            case,
            free_match: left.word == right.word,
            count_match: left.count == right.count,
            left: left.clone(),
            right,
        })
    };
    Ok([
        report(PumpCase::Interleaved, format!("{}{}h", v_word(eta), v_word(alpha)))?,
        report(PumpCase::Extended, format!("{}h", v_word(alpha + eta)))?,
    ])
}

#[derive(Clone, Debug)]
pub struct CounterexampleConfig {
    /// Identity family checked for `α = 0..=alpha_max`.
    pub alpha_max: u64,
    /// Longest word searched; uniqueness rows cover every `α` whose
    /// expected representative fits.
    pub search_bound: usize,
    /// Pumping grid: `α ≤ grid`, `β ≤ grid`, `1 ≤ γ-β ≤ grid`, `η ≤ grid`.
    pub grid: u64,
    pub budget: usize,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        CounterexampleConfig {
            alpha_max: 6,
            search_bound: 6,
            grid: 4,
            budget: crate::DEFAULT_STATE_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub alpha: u64,
    pub element: FmElement,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessRow {
    pub alpha: u64,
    pub expected: String,
    pub search_bound: usize,
    pub found: Vec<String>,
    pub unique: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub scope: &'static str,
    pub identity_family: Vec<IdentityRow>,
    pub uniqueness: Vec<UniquenessRow>,
    pub pumping_grid: Vec<PumpingReport>,
    pub passed: bool,
}

pub fn run(config: &CounterexampleConfig) -> Result<CounterexampleReport> {
    let identity_family: Vec<IdentityRow> = (0..=config.alpha_max)
        .map(|alpha| IdentityRow { alpha, element: identity_family_target(alpha), holds: check_identity_family(alpha) })
        .collect();

    let mut uniqueness = Vec::new();
    for family in [u_word as fn(u64) -> String, v_word] {
        for alpha in 0..=config.alpha_max {
            let expected = family(alpha);
            if expected.len() > config.search_bound {
                break;
            }
            let found = unique_rep_search(&evaluate(&expected)?, config.search_bound, config.budget)?;
            let unique = found == [expected.clone()];
            uniqueness.push(UniquenessRow { alpha, expected, search_bound: config.search_bound, found, unique });
        }
    }

    let g = config.grid;
    let mut pumping_grid = Vec::new();
    for alpha in 0..=g {
        for beta in 0..=g {
            for gamma in beta + 1..=beta + g {
                for eta in 0..=g {
                    pumping_grid.extend(pumping_demo(alpha, beta, gamma, eta)?);
                }
            }
        }
    }

    let passed = identity_family.iter().all(|r| r.holds)
        && uniqueness.iter().all(|r| r.unique)
        && pumping_grid.iter().all(|r| !r.consistent());
    Ok(CounterexampleReport {
        scope: "checks the identities, unique representatives and pumping mismatches used to show the \
                eight-generator subsemigroup of S(m,m) is not automatic; automaticity itself is not decided",
        identity_family,
        uniqueness,
        pumping_grid,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::normalize;
    use std::collections::HashMap;

    fn fm(w: &str, c: u64) -> FmElement {
        FmElement::parse(w, c).unwrap()
    }

    #[test]
    fn multiplication() {
        assert_eq!(fm_mul(&fm("qr", 0), &fm("p", 1)), fm("qrp", 1));
        assert_eq!(fm_mul(&fm("", 1), &fm("", 2)), fm("", 3));
        assert_eq!(evaluate("ab").unwrap(), fm("x^2pqrp", 1));
        assert!(evaluate("").is_err());
        assert!(evaluate("ai").is_err());
    }

    #[test]
    fn embedding_examples() {
        let y = embed_ranked(&RankedFm { word: vec![1], count: 0 }, 2).unwrap();
        let r = embed_ranked(&RankedFm { word: vec![], count: 1 }, 2).unwrap();
        let p = embedding_params(2).unwrap();
        assert_eq!(y.to_string(), "y");
        assert_eq!(r.to_string(), "xx");
        assert_eq!(normalize(&y.concat(&r), p), normalize(&r.concat(&y), p));
        assert_eq!(embed_ranked(&RankedFm { word: vec![1], count: 1 }, 2).unwrap().to_string(), "yxx");
        assert!(matches!(embed_ranked(&RankedFm { word: vec![1], count: 0 }, 1), Err(Error::Parameter(_))));
        assert!(embed_ranked(&RankedFm { word: vec![3], count: 0 }, 2).is_err());
        assert!(embed_ranked(&RankedFm { word: vec![], count: 0 }, 2).is_err());
    }

    fn small_elements(max_len: usize, max_count: u64) -> Vec<FmElement> {
        let mut words: Vec<Vec<FreeLetter>> = vec![Vec::new()];
        let mut frontier = words.clone();
        for _ in 0..max_len {
            frontier = frontier
                .iter()
                .flat_map(|w| FreeLetter::ALL.iter().map(move |&l| [w.as_slice(), &[l]].concat()))
                .collect();
            words.extend(frontier.iter().cloned());
        }
        words
            .into_iter()
            .flat_map(|word| (0..=max_count).map(move |count| FmElement { word: word.clone(), count }))
            .filter(|s| !s.is_empty())
            .collect()
    }

    #[test]
    fn embedding_is_injective() {
        for m in [2, 3] {
            let p = embedding_params(m).unwrap();
            let mut seen = HashMap::new();
            for s in small_elements(4, 4) {
                let nf = normalize(&embed_fm(&s, m).unwrap(), p);
                if let Some(prev) = seen.insert(nf, s.clone()) {
                    panic!("{prev} and {s} collide in S({m},{m})");
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let elements = small_elements(3, 3);
        for m in [2, 3] {
            let p = embedding_params(m).unwrap();
            for s in elements.iter().step_by(7) {
                for t in elements.iter().step_by(5) {
                    let lhs = normalize(&embed_fm(&fm_mul(s, t), m).unwrap(), p);
                    let rhs = normalize(&embed_fm(s, m).unwrap().concat(&embed_fm(t, m).unwrap()), p);
                    assert_eq!(lhs, rhs, "{s} * {t} in S({m},{m})");
                }
            }
        }
    }

    /// Words over `p_1..p_m, r` up to length 5 each equal exactly one word of
    /// `{p_i}* r* - {ε}`.
    #[test]
    fn ranked_normal_forms() {
        for m in [2usize, 3] {
            let p = embedding_params(m as u32).unwrap();
            let r = m + 1;
            let mut by_nf: HashMap<_, Vec<Vec<usize>>> = HashMap::new();
            for w in crate::automata::all_words(m + 1, 5).into_iter().filter(|w| !w.is_empty()) {
                let word: Vec<usize> = w.iter().filter(|&&s| s + 1 != r).map(|&s| s + 1).collect();
                let count = w.iter().filter(|&&s| s + 1 == r).count() as u64;
                let nf = normalize(&embed_ranked(&RankedFm { word, count }, m as u32).unwrap(), p);
                by_nf.entry(nf).or_default().push(w.iter().map(|&s| s + 1).collect());
            }
            for words in by_nf.values() {
                let normal: Vec<_> = words.iter().filter(|w| w.iter().skip_while(|&&s| s != r).all(|&s| s == r)).collect();
                assert_eq!(normal.len(), 1, "{words:?}");
            }
        }
    }

    #[test]
    fn identity_family() {
        assert_eq!(evaluate("ace").unwrap(), fm("x^2pqrpy^2", 0));
        assert_eq!(evaluate("fh").unwrap(), fm("x^2pqrpy^2", 0));
        assert_eq!(evaluate("abcde").unwrap(), fm("x^2pqrpqrpqrpy^2", 3));
        for alpha in 0..=6 {
            assert!(check_identity_family(alpha), "alpha {alpha}");
        }
        // Also equal after embedding.
        let p = embedding_params(2).unwrap();
        let u = embed_fm(&evaluate("abbcdde").unwrap(), 2).unwrap();
        let v = embed_fm(&evaluate("fggh").unwrap(), 2).unwrap();
        assert_eq!(normalize(&u, p), normalize(&v, p));
    }

    #[test]
    fn unique_representatives() {
        let search = |w: &str, bound| unique_rep_search(&evaluate(w).unwrap(), bound, 1_000_000).unwrap();
        assert_eq!(search("abcd", 6), ["abcd"]);
        assert_eq!(search("abbcdd", 6), ["abbcdd"]);
        assert_eq!(search("fg", 4), ["fg"]);
        assert_eq!(search("fgg", 4), ["fgg"]);
        assert_eq!(search("b", 3), ["b"]);
        // The full element has two representatives.
        assert_eq!(search("abcde", 5), ["abcde", "fgh"]);
        assert!(matches!(unique_rep_search(&evaluate("abcd").unwrap(), 6, 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn pumping_examples() {
        let [_, extended] = pumping_demo(3, 1, 2, 5).unwrap();
        assert!(!extended.free_match);
        let [interleaved, extended] = pumping_demo(3, 1, 3, 1).unwrap();
        assert!(!interleaved.free_match);
        assert!(extended.free_match && !extended.count_match);
        assert_eq!((extended.left.count, extended.right.count), (11, 12));
        assert!(pumping_demo(3, 2, 2, 0).is_err());
    }

    #[test]
    fn default_report_passes() {
        let report = run(&CounterexampleConfig::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.identity_family.len(), 7);
        assert_eq!(report.pumping_grid.len(), 5 * 5 * 4 * 5 * 2);
        assert!(report.uniqueness.iter().any(|r| r.expected == "abbcdd"));
    }
}
