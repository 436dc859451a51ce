use std::collections::HashMap;

use serde::Serialize;

use super::machine::Handedness;
use super::parts::build_rep;
use super::structure::{AutomaticStructure, EPSILON_KEY};
use crate::automata::{all_words, PairAlphabet};
use crate::error::Result;
use crate::geometry::CayleyGraph;
use crate::group::CanonicalGroupForm;

/// Failure samples kept per list.
const SAMPLES: usize = 20;
/// Most generator words enumerated by the surjectivity check.
const SURJECTIVITY_WORDS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub letter: String,
    pub u: String,
    pub v: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub bound: usize,
    pub lambda: usize,
    pub handedness: Handedness,
    pub language_words: usize,
    pub pairs_checked: u64,
    pub accepted_pairs: u64,
    pub soundness_failure_count: u64,
    pub completeness_failure_count: u64,
    pub soundness_failures: Vec<PairFailure>,
    pub completeness_failures: Vec<PairFailure>,
    /// Longest generator words checked for an `L`-representative.
    pub surjectivity_bound: usize,
    pub surjectivity_failures: Vec<String>,
    /// Largest Cayley-graph distance seen between synchronized prefixes.
    pub max_ft_distance: usize,
    /// Prefix pairs whose distance exceeded the search radius `2λ + 2`.
    pub ft_unresolved: u64,
    pub ft_exceeded: bool,
    /// No soundness and no completeness failures.
    pub verified: bool,
}

impl VerificationReport {
    /// Verified, surjective at the bound and fellow-travelling within `λ`.
    pub fn holds(&self) -> bool {
        self.verified && self.surjectivity_failures.is_empty() && !self.ft_exceeded
    }

    pub fn summary(&self) -> String {
        format!(
            "lambda {}, N {}: {} L-words, {} pairs checked, {} soundness / {} completeness failures, \
             {} surjectivity failures, max fellow-traveller distance {}{}",
            self.lambda,
            self.bound,
            self.language_words,
            self.pairs_checked,
            self.soundness_failure_count,
            self.completeness_failure_count,
            self.surjectivity_failures.len(),
            self.max_ft_distance,
            if self.ft_unresolved > 0 { format!(" ({} beyond search radius)", self.ft_unresolved) } else { String::new() },
        )
    }
}

/// Checks every multiplier against the group oracle on all pairs of
/// `L`-words of length at most `bound`, measures synchronized prefix
/// distances on accepted pairs and checks that every product of at most
/// `bound` generators has a representative.
///
/// For a left structure the prefixes compared are `⟨a u(t)⟩` and `⟨v(t)⟩`.
pub fn verify(s: &AutomaticStructure, bound: usize, budget: usize) -> Result<VerificationReport> {
    let p = s.params();
    let symbols = s.language.alphabet().clone();
    let pa = PairAlphabet::new(&symbols)?;
    let images = s.alphabet.images();
    let words = s.language.enumerate(bound);
    let elements: Vec<CanonicalGroupForm> = words.iter().map(|w| s.element(w)).collect();
    let mut by_element: HashMap<&CanonicalGroupForm, Vec<usize>> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        by_element.entry(e).or_default().push(i);
    }
    let show = |w: &[usize]| symbols.decode(w).concat();

    let mut report = VerificationReport {
        bound,
        lambda: s.lambda,
        handedness: s.handedness,
        language_words: words.len(),
        pairs_checked: 0,
        accepted_pairs: 0,
        soundness_failure_count: 0,
        completeness_failure_count: 0,
        soundness_failures: Vec::new(),
        completeness_failures: Vec::new(),
        surjectivity_bound: 0,
        surjectivity_failures: Vec::new(),
        max_ft_distance: 0,
        ft_unresolved: 0,
        ft_exceeded: false,
        verified: false,
    };

    let mut graph = CayleyGraph::new(p, &images, budget);
    let mut distances: HashMap<(CanonicalGroupForm, CanonicalGroupForm), Option<usize>> = HashMap::new();
    let radius = 2 * s.lambda + 2;
    let letters: Vec<Option<usize>> = (0..symbols.len()).map(Some).chain([None]).collect();
    for a in letters {
        let label = a.map_or(EPSILON_KEY.to_string(), |a| symbols.label(a).to_string());
        let m = s.multiplier(a);
        let image = a.map_or_else(CanonicalGroupForm::identity, |a| images[a].clone());
        for (ui, u) in words.iter().enumerate() {
            let target = match s.handedness {
                Handedness::Right => elements[ui].mul(&image, p),
                Handedness::Left => image.mul(&elements[ui], p),
            };
            let equal_to: &[usize] = by_element.get(&target).map_or(&[], Vec::as_slice);
            for (vi, v) in words.iter().enumerate() {
                report.pairs_checked += 1;
                let accepted = m.accepts(&pa.convolve(u, v));
                let truth = equal_to.contains(&vi);
                report.accepted_pairs += accepted as u64;
                let failure = || PairFailure { letter: label.clone(), u: show(u), v: show(v) };
                if accepted && !truth {
                    report.soundness_failure_count += 1;
                    if report.soundness_failures.len() < SAMPLES {
                        report.soundness_failures.push(failure());
                    }
                } else if truth && !accepted {
                    report.completeness_failure_count += 1;
                    if report.completeness_failures.len() < SAMPLES {
                        report.completeness_failures.push(failure());
                    }
                }
                if !truth {
                    continue;
                }
                let (mut left, mut right) = match s.handedness {
                    Handedness::Right => (CanonicalGroupForm::identity(), CanonicalGroupForm::identity()),
                    Handedness::Left => (image.clone(), CanonicalGroupForm::identity()),
                };
                for t in 0..=u.len().max(v.len()) {
                    if t > 0 {
                        if let Some(&x) = u.get(t - 1) {
                            left.mul_assign(&images[x], p);
                        }
                        if let Some(&y) = v.get(t - 1) {
                            right.mul_assign(&images[y], p);
                        }
                    }
                    let key = (left.clone(), right.clone());
                    let d = match distances.get(&key) {
                        Some(&d) => d,
                        None => {
                            let d = graph.distance(&left, &right, radius)?;
                            distances.insert(key, d);
                            d
                        }
                    };
                    match d {
                        Some(d) => report.max_ft_distance = report.max_ft_distance.max(d),
                        None => report.ft_unresolved += 1,
                    }
                }
            }
        }
    }
    report.ft_exceeded = report.max_ft_distance > s.lambda || report.ft_unresolved > 0;
    report.verified = report.soundness_failure_count == 0 && report.completeness_failure_count == 0;

    let generators = s.alphabet.letters().len();
    let mut surj_bound = bound;
    while surj_bound > 0 && (0..=surj_bound).map(|i| generators.saturating_pow(i as u32)).sum::<usize>() > SURJECTIVITY_WORDS {
        surj_bound -= 1;
    }
    report.surjectivity_bound = surj_bound;
    let reversed = match s.handedness {
        Handedness::Right => None,
        Handedness::Left => Some(s.alphabet.reversed()?),
    };
    for w in all_words(generators, surj_bound) {
        let rep = match &reversed {
            None => build_rep(&w, &s.alphabet)?,
            Some(rev) => {
                let mut r: Vec<usize> = w.iter().rev().copied().collect();
                r = build_rep(&r, rev)?;
                r.reverse();
                r
            }
        };
        let bad = !s.language.accepts(&rep) || s.element(&rep) != s.element(&w);
        if bad && report.surjectivity_failures.len() < SAMPLES {
            report.surjectivity_failures.push(format!("{} -> {}", show(&w), show(&rep)));
        }
    }
    Ok(report)
}
