use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::automata::Alphabet;
use crate::error::{Error, Result};
use crate::group::{reduce, CanonicalGroupForm, GroupWord};
use crate::semigroup::{element_stats, BsParams, SgWord};

/// Label of the adjoined identity.
pub const IDENTITY_LETTER: &str = "1";

/// Longest `x`-power a generator may stand for; its `J` word has that length.
const MAX_GAMMA: u64 = 1 << 16;

/// A generator letter and the statistics of the element it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenLetter {
    pub name: String,
    pub word: SgWord,
    /// Number of `y`s in the element.
    pub beta: usize,
    /// Number of `x`s in the element's normal form.
    pub gamma: usize,
}

impl GenLetter {
    pub fn is_x_power(&self) -> bool {
        self.beta == 0
    }
}

/// Generators split into `x`-powers (`A'`) and the rest (`A''`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedAlphabet {
    params: BsParams,
    letters: Vec<GenLetter>,
}

impl DecoratedAlphabet {
    pub fn params(&self) -> BsParams {
        self.params
    }

    pub fn letters(&self) -> &[GenLetter] {
        &self.letters
    }

    /// Indices of the `x`-power letters, in input order.
    pub fn a_prime(&self) -> Vec<usize> {
        (0..self.letters.len()).filter(|&i| self.letters[i].is_x_power()).collect()
    }

    pub fn a_double_prime(&self) -> Vec<usize> {
        (0..self.letters.len()).filter(|&i| !self.letters[i].is_x_power()).collect()
    }

    /// `max γ`, at least 1.
    pub fn g(&self) -> usize {
        self.letters.iter().map(|l| l.gamma).max().unwrap_or(0).max(1)
    }

    pub fn max_beta(&self) -> usize {
        self.letters.iter().map(|l| l.beta).max().unwrap_or(0)
    }

    /// Longest `J` word, 0 when there are no `x`-power letters.
    pub fn max_j_length(&self) -> usize {
        self.a_prime().iter().map(|&i| self.letters[i].gamma).max().unwrap_or(0)
    }

    /// The alphabet `C`: generator letters followed by the identity letter.
    pub fn symbols(&self) -> Alphabet {
        Alphabet::new(
            self.letters
                .iter()
                .map(|l| l.name.clone())
                .chain([IDENTITY_LETTER.to_string()]),
        )
        .expect("letter names are validated on construction")
    }

    pub fn identity_symbol(&self) -> usize {
        self.letters.len()
    }

    /// Group elements of the symbols of `C`, the identity last.
    pub fn images(&self) -> Vec<CanonicalGroupForm> {
        self.letters
            .iter()
            .map(|l| reduce(&GroupWord::from(&l.word), self.params))
            .chain([CanonicalGroupForm::identity()])
            .collect()
    }

    /// Same letter names, every defining word reversed, over `S(n,m)`.
    pub fn reversed(&self) -> Result<DecoratedAlphabet> {
        let named: Vec<(String, SgWord)> = self
            .letters
            .iter()
            .map(|l| (l.name.clone(), crate::semigroup::reverse(&l.word)))
            .collect();
        decorate(&named, self.params.reversed())
    }
}

fn check_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name == IDENTITY_LETTER
        || name == "$"
        || name == "ε"
        || name.contains(['|', '=', '#'])
        || name.chars().any(char::is_whitespace);
    if bad {
        return Err(Error::Parse(format!("invalid letter name {name:?}")));
    }
    Ok(())
}

/// Computes `β` and `γ` for each named generator of a subsemigroup of
/// `S(m,n)`, `m > n`.
pub fn classify_alphabet(gens: &[(String, SgWord)], p: BsParams) -> Result<DecoratedAlphabet> {
    p.require_m_gt_n("classifying generators")?;
    decorate(gens, p)
}

/// As [`classify_alphabet`] without the parameter restriction.
pub fn decorate(gens: &[(String, SgWord)], p: BsParams) -> Result<DecoratedAlphabet> {
    if gens.is_empty() {
        return Err(Error::Parameter("at least one generator is required".into()));
    }
    let mut seen = HashSet::new();
    let mut letters = Vec::with_capacity(gens.len());
    for (name, word) in gens {
        check_name(name)?;
        if !seen.insert(name.as_str()) {
            return Err(Error::Parse(format!("duplicate letter name {name:?}")));
        }
        let stats = element_stats(word, p);
        let gamma = stats
            .gamma
            .to_u64()
            .filter(|&g| g <= MAX_GAMMA)
            .ok_or_else(|| Error::Domain(format!("{word} has more than {MAX_GAMMA} letters x in {p}")))?;
        letters.push(GenLetter {
            name: name.clone(),
            word: word.clone(),
            beta: stats.beta,
            gamma: gamma as usize,
        });
    }
    Ok(DecoratedAlphabet { params: p, letters })
}

/// Default letter names `a`, `b`, ... (then `g26`, `g27`, ...).
pub fn default_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| match i {
            0..26 => ((b'a' + i as u8) as char).to_string(),
            _ => format!("g{i}"),
        })
        .collect()
}

/// Reads a generator list: one word per line, optionally `name = word`;
/// `#` starts a comment. Unnamed generators get default names by position.
pub fn parse_generators(text: &str) -> Result<Vec<(String, SgWord)>> {
    let mut entries: Vec<(Option<String>, SgWord)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, word) = match line.split_once('=') {
            Some((n, w)) => (Some(n.trim().to_string()), w.trim()),
            None => (None, line),
        };
        let word: SgWord = word
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        entries.push((name, word));
    }
    let defaults = default_names(entries.len());
    Ok(entries
        .into_iter()
        .zip(defaults)
        .map(|((name, word), d)| (name.unwrap_or(d), word))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32, n: u32) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn gens(words: &[&str]) -> Vec<(String, SgWord)> {
        default_names(words.len())
            .into_iter()
            .zip(words.iter().map(|w| w.parse().unwrap()))
            .collect()
    }

    #[test]
    fn classify_examples() {
        let d = classify_alphabet(&gens(&["x", "y"]), p(3, 2)).unwrap();
        assert_eq!((d.a_prime(), d.a_double_prime()), (vec![0], vec![1]));
        assert_eq!((d.letters()[1].beta, d.letters()[0].gamma, d.letters()[1].gamma), (1, 1, 0));
        assert_eq!(d.g(), 1);

        let d = classify_alphabet(&gens(&["x^2", "xy"]), p(3, 2)).unwrap();
        assert_eq!(d.a_prime(), vec![0]);
        assert_eq!((d.letters()[0].gamma, d.letters()[1].beta, d.letters()[1].gamma), (2, 1, 1));
        assert_eq!(d.g(), 2);

        let d = classify_alphabet(&gens(&["x", "x^3"]), p(3, 2)).unwrap();
        assert!(d.a_double_prime().is_empty());

        // gamma counts the normal form, not the input word.
        let d = classify_alphabet(&gens(&["x^2y"]), p(3, 2)).unwrap();
        assert_eq!((d.letters()[0].beta, d.letters()[0].gamma), (1, 3));
    }

    #[test]
    fn g_is_at_least_one() {
        let d = classify_alphabet(&gens(&["y", "yy"]), p(3, 2)).unwrap();
        assert_eq!(d.g(), 1);
        assert_eq!(d.max_j_length(), 0);
    }

    #[test]
    fn symbols_end_with_identity() {
        let d = classify_alphabet(&gens(&["x", "y"]), p(3, 2)).unwrap();
        assert_eq!(d.symbols().labels(), &["a", "b", "1"]);
        assert!(d.images()[2].is_identity());
    }

    #[test]
    fn parse_generator_files() {
        let g = parse_generators("# gens\nx^2\n\np = xy  # named\ny\n").unwrap();
        let names: Vec<&str> = g.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["a", "p", "c"]);
        assert_eq!(g[1].1.to_string(), "xy");
        assert!(parse_generators("z\n").is_err());
        assert!(classify_alphabet(&parse_generators("1 = x").unwrap(), p(3, 2)).is_err());
        assert!(classify_alphabet(&parse_generators("a = x\na = y").unwrap(), p(3, 2)).is_err());
        assert!(classify_alphabet(&[], p(3, 2)).is_err());
        assert!(classify_alphabet(&gens(&["x"]), p(2, 3)).is_err());
    }
}
