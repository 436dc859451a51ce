//! Automatic structures for finitely generated subsemigroups of `S(m,n)`.
//!
//! For `m > n` the representatives are `L = J*(K')* - {ε} ∪ {1}` over
//! `C = A ∪ {1}`: `x`-power letters first, each padded to its number of
//! `x`s, then blocks `b a_1^α_1 ... a_l^α_l` with `α_i < m^β_b` padded with
//! `1`s to length `β_b(k+1)`. Multipliers are the pairs of `L`-words whose
//! word difference, tracked inside a ball of radius `λ` in `G(m,n)`, ends at
//! the right element. `λ` is found by iterative deepening and every
//! structure returned has passed [`verify`].
//!
//! For `m < n` the language is built for the reversed generators in
//! `S(n,m)` and reversed; left multipliers `⟨au⟩ = ⟨v⟩` are then built
//! directly over right-padded pairs.

mod alphabet;
mod machine;
mod parts;
mod structure;
mod verify;

pub use alphabet::{classify_alphabet, decorate, default_names, parse_generators, DecoratedAlphabet, GenLetter, IDENTITY_LETTER};
pub use machine::{multiplier, multipliers, DifferenceMachine, Handedness, FAIL};
pub use parts::{build_parts, build_rep, LanguageParts};
pub use structure::{AutomaticStructure, EPSILON_KEY};
pub use verify::{verify, PairFailure, VerificationReport};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::semigroup::{BsParams, SgWord};

#[derive(Clone, Debug)]
pub struct SynthConfig {
    /// Largest `λ` tried.
    pub lambda_max: usize,
    /// First `λ` tried; defaults to `2(max γ + max β)`.
    pub lambda_start: Option<usize>,
    /// Verification bound `N` on `L`-word length.
    pub bound: usize,
    pub budget: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            lambda_max: 12,
            lambda_start: None,
            bound: 8,
            budget: crate::DEFAULT_STATE_BUDGET,
        }
    }
}

/// Builds the structure for a fixed `λ` without verifying it.
///
/// `alphabet` carries the original generators; for a left structure the
/// language comes from their reversals in `S(n,m)`.
pub fn construct(
    alphabet: &DecoratedAlphabet,
    lambda: usize,
    handedness: Handedness,
    budget: usize,
) -> Result<AutomaticStructure> {
    let language = match handedness {
        Handedness::Right => build_parts(alphabet, budget)?.language,
        Handedness::Left => build_parts(&alphabet.reversed()?, budget)?.language.reverse(budget)?,
    };
    let dm = DifferenceMachine::new(&alphabet.images(), alphabet.params(), lambda, budget)?;
    let symbols = alphabet.symbols();
    let multipliers: BTreeMap<String, _> = multipliers(&language, &dm, handedness, budget)?
        .into_iter()
        .map(|(a, d)| (a.map_or(EPSILON_KEY.to_string(), |a| symbols.label(a).to_string()), d))
        .collect();
    Ok(AutomaticStructure {
        alphabet: alphabet.clone(),
        lambda,
        handedness,
        language,
        multipliers,
    })
}

fn deepen(
    alphabet: &DecoratedAlphabet,
    stats: &DecoratedAlphabet,
    handedness: Handedness,
    config: &SynthConfig,
) -> Result<(AutomaticStructure, VerificationReport)> {
    let default_start = 2 * (stats.letters().iter().map(|l| l.gamma).max().unwrap_or(0) + stats.max_beta());
    let start = config.lambda_start.unwrap_or(default_start).clamp(1, config.lambda_max.max(1));
    let mut last: Option<VerificationReport> = None;
    for lambda in start..=config.lambda_max {
        let s = construct(alphabet, lambda, handedness, config.budget)?;
        let report = verify(&s, config.bound, config.budget)?;
        if report.holds() {
            return Ok((s, report));
        }
        last = Some(report);
    }
    Err(Error::Unverified(format!(
        "lambda_max {} exhausted; last attempt: {}",
        config.lambda_max,
        last.map_or_else(|| "none (start above lambda_max)".to_string(), |r| r.summary())
    )))
}

fn not_automatic_case(p: BsParams) -> Error {
    Error::Parameter(format!(
        "{p} has m = n; S(m,m) contains finitely generated subsemigroups that are neither right- nor left-automatic"
    ))
}

/// A verified right-automatic structure for `S^1`, `S` generated by `gens` in `S(m,n)`, `m > n`.
pub fn synthesize(gens: &[(String, SgWord)], p: BsParams, config: &SynthConfig) -> Result<(AutomaticStructure, VerificationReport)> {
    if p.m() == p.n() {
        return Err(not_automatic_case(p));
    }
    let alphabet = classify_alphabet(gens, p)?;
    deepen(&alphabet, &alphabet, Handedness::Right, config)
}

/// A verified left-automatic structure for `S^1`, `S` generated by `gens` in `S(m,n)`, `m < n`.
pub fn left_synthesize(
    gens: &[(String, SgWord)],
    p: BsParams,
    config: &SynthConfig,
) -> Result<(AutomaticStructure, VerificationReport)> {
    if p.m() == p.n() {
        return Err(not_automatic_case(p));
    }
    if p.m() > p.n() {
        return Err(Error::Parameter(format!("left structures are built for m < n, got {p}")));
    }
    let alphabet = alphabet::decorate(gens, p)?;
    let reversed = alphabet.reversed()?;
    deepen(&alphabet, &reversed, Handedness::Left, config)
}

/// Right structure for `m > n`, left structure for `m < n`.
pub fn synthesize_auto(
    gens: &[(String, SgWord)],
    p: BsParams,
    config: &SynthConfig,
) -> Result<(AutomaticStructure, VerificationReport)> {
    if p.m() < p.n() {
        left_synthesize(gens, p, config)
    } else {
        synthesize(gens, p, config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(words: &[&str]) -> Vec<(String, SgWord)> {
        default_names(words.len())
            .into_iter()
            .zip(words.iter().map(|w| w.parse().unwrap()))
            .collect()
    }

    fn p(m: u32, n: u32) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    #[test]
    fn parameter_checks() {
        let c = SynthConfig::default();
        assert!(matches!(synthesize(&gens(&["x", "y"]), p(2, 3), &c), Err(Error::Parameter(_))));
        assert!(matches!(synthesize(&gens(&["x", "y"]), p(2, 2), &c), Err(Error::Parameter(_))));
        assert!(matches!(left_synthesize(&gens(&["x", "y"]), p(3, 2), &c), Err(Error::Parameter(_))));
    }

    #[test]
    fn small_full_semigroup() {
        let config = SynthConfig { bound: 6, ..SynthConfig::default() };
        let (s, report) = synthesize(&gens(&["x", "y"]), p(2, 1), &config).unwrap();
        assert!(report.holds(), "{}", report.summary());
        assert!(report.max_ft_distance <= s.lambda);
        let json = s.to_json();
        let back = AutomaticStructure::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert!(verify(&back, 6, 100_000).unwrap().holds());
    }

    #[test]
    fn zero_lambda_is_incomplete() {
        let d = classify_alphabet(&gens(&["x", "y"]), p(3, 2)).unwrap();
        let s = construct(&d, 0, Handedness::Right, 100_000).unwrap();
        let report = verify(&s, 5, 100_000).unwrap();
        assert_eq!(report.soundness_failure_count, 0);
        assert!(report.completeness_failure_count > 0);
        assert!(!report.verified);
    }
}
