use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::automata::{pair_language, Dfa, PairAlphabet, PairedSymbol};
use crate::error::{Error, Result};
use crate::group::{ball, Ball, CanonicalGroupForm};
use crate::semigroup::BsParams;

/// Which side the multiplied letter sits on: `⟨ua⟩ = ⟨v⟩` or `⟨au⟩ = ⟨v⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Right,
    Left,
}

impl std::fmt::Display for Handedness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Handedness::Right => "right",
            Handedness::Left => "left",
        })
    }
}

/// Absorbing state for differences outside the ball.
pub const FAIL: usize = usize::MAX;

/// Word differences `d` restricted to the ball of radius `λ` in `G(m,n)`.
/// Reading the pair `(x, y)` sends `d` to `⟨x⟩⁻¹ d ⟨y⟩`, with `$` read as
/// the identity.
#[derive(Clone, Debug)]
pub struct DifferenceMachine {
    params: BsParams,
    ball: Ball,
    images: Vec<CanonicalGroupForm>,
    inverses: Vec<CanonicalGroupForm>,
}

impl DifferenceMachine {
    /// `images` are the elements of the symbols of `C`.
    pub fn new(images: &[CanonicalGroupForm], p: BsParams, lambda: usize, budget: usize) -> Result<Self> {
        Ok(DifferenceMachine {
            params: p,
            ball: ball(lambda, images, p, budget)?,
            images: images.to_vec(),
            inverses: images.iter().map(|g| g.inv(p)).collect(),
        })
    }

    pub fn lambda(&self) -> usize {
        self.ball.radius()
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn state_of(&self, g: &CanonicalGroupForm) -> usize {
        self.ball.index_of(g).unwrap_or(FAIL)
    }

    pub fn element(&self, state: usize) -> Option<&CanonicalGroupForm> {
        (state != FAIL).then(|| self.ball.element(state))
    }

    pub fn step(&self, state: usize, symbol: PairedSymbol<usize>) -> usize {
        let Some(d) = self.element(state) else { return FAIL };
        let mut next = match symbol.left {
            Some(x) => self.inverses[x].mul(d, self.params),
            None => d.clone(),
        };
        if let Some(y) = symbol.right {
            next.mul_assign(&self.images[y], self.params);
        }
        self.state_of(&next)
    }
}

/// Reachable part of `pair_language(L, L) × DM` from one start difference.
struct Product {
    nodes: Vec<(usize, usize)>,
    transitions: Vec<(usize, usize, usize)>,
}

fn product(pairs: &Dfa, pa: &PairAlphabet, dm: &DifferenceMachine, start: usize, budget: usize) -> Result<Product> {
    let live = pairs.live();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut transitions = Vec::new();
    let mut steps: HashMap<(usize, usize), usize> = HashMap::new();
    if start != FAIL && live[pairs.start()] {
        ids.insert((pairs.start(), start), 0);
        nodes.push((pairs.start(), start));
    }
    let mut i = 0;
    while i < nodes.len() {
        let (p, d) = nodes[i];
        for sym in 0..pa.alphabet().len() {
            let q = pairs.next(p, sym);
            if !live[q] {
                continue;
            }
            let e = *steps.entry((d, sym)).or_insert_with(|| dm.step(d, pa.decode(sym)));
            if e == FAIL {
                continue;
            }
            let fresh = nodes.len();
            let id = *ids.entry((q, e)).or_insert(fresh);
            if id == fresh {
                if fresh >= budget {
                    return Err(Error::budget("multiplier product", budget));
                }
                nodes.push((q, e));
            }
            transitions.push((i, sym, id));
        }
        i += 1;
    }
    Ok(Product { nodes, transitions })
}

impl Product {
    fn accepting_at(&self, pairs: &Dfa, pa: &PairAlphabet, target: usize) -> Result<Dfa> {
        if self.nodes.is_empty() {
            return Ok(Dfa::empty(pa.alphabet().clone()));
        }
        let accepting: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| {
                let (p, d) = self.nodes[i];
                d == target && pairs.is_accepting(p)
            })
            .collect();
        Ok(Dfa::from_transitions(pa.alphabet().clone(), self.nodes.len(), 0, &accepting, &self.transitions)?.minimize())
    }
}

/// Multipliers for every symbol of `C` (by index) and for ε (`None`).
///
/// Right: start at the identity, accept at `⟨a⟩`. Left: start at `⟨a⟩⁻¹`,
/// accept at the identity.
pub fn multipliers(
    language: &Dfa,
    dm: &DifferenceMachine,
    handedness: Handedness,
    budget: usize,
) -> Result<Vec<(Option<usize>, Dfa)>> {
    let pa = PairAlphabet::new(language.alphabet())?;
    let pairs = pair_language(language, language)?;
    let identity = dm.state_of(&CanonicalGroupForm::identity());
    let letters: Vec<Option<usize>> = (0..language.alphabet().len()).map(Some).chain([None]).collect();
    let image = |a: Option<usize>| a.map_or_else(CanonicalGroupForm::identity, |a| dm.images[a].clone());
    let mut out = Vec::with_capacity(letters.len());
    match handedness {
        Handedness::Right => {
            let prod = product(&pairs, &pa, dm, identity, budget)?;
            for a in letters {
                let target = dm.state_of(&image(a));
                out.push((a, prod.accepting_at(&pairs, &pa, target)?));
            }
        }
        Handedness::Left => {
            for a in letters {
                let start = dm.state_of(&image(a).inv(dm.params));
                let prod = product(&pairs, &pa, dm, start, budget)?;
                out.push((a, prod.accepting_at(&pairs, &pa, identity)?));
            }
        }
    }
    Ok(out)
}

/// The single multiplier for `a` (`None` for ε).
pub fn multiplier(
    a: Option<usize>,
    language: &Dfa,
    dm: &DifferenceMachine,
    handedness: Handedness,
    budget: usize,
) -> Result<Dfa> {
    let pa = PairAlphabet::new(language.alphabet())?;
    let pairs = pair_language(language, language)?;
    let image = a.map_or_else(CanonicalGroupForm::identity, |a| dm.images[a].clone());
    let identity = dm.state_of(&CanonicalGroupForm::identity());
    let (start, target) = match handedness {
        Handedness::Right => (identity, dm.state_of(&image)),
        Handedness::Left => (dm.state_of(&image.inv(dm.params)), identity),
    };
    product(&pairs, &pa, dm, start, budget)?.accepting_at(&pairs, &pa, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{reduce, GroupWord};
    use crate::synth::alphabet::{classify_alphabet, default_names};
    use crate::synth::parts::build_parts;
    use crate::SgWord;

    fn setup(lambda: usize) -> (crate::synth::alphabet::DecoratedAlphabet, Dfa, DifferenceMachine) {
        let p = BsParams::new(3, 2).unwrap();
        let gens: Vec<(String, SgWord)> =
            default_names(2).into_iter().zip(["x", "y"].iter().map(|w| w.parse().unwrap())).collect();
        let d = classify_alphabet(&gens, p).unwrap();
        let l = build_parts(&d, 10_000).unwrap().language;
        let dm = DifferenceMachine::new(&d.images(), p, lambda, 100_000).unwrap();
        (d, l, dm)
    }

    fn sym(left: Option<usize>, right: Option<usize>) -> PairedSymbol<usize> {
        PairedSymbol { left, right }
    }

    #[test]
    fn difference_steps() {
        let (_, _, dm) = setup(3);
        let p = BsParams::new(3, 2).unwrap();
        let id = dm.state_of(&CanonicalGroupForm::identity());
        assert_eq!(dm.step(id, sym(Some(0), Some(0))), id);
        let expect = reduce(&"Xy".parse::<GroupWord>().unwrap(), p);
        assert_eq!(dm.element(dm.step(id, sym(Some(0), Some(1)))), Some(&expect));
        assert_eq!(dm.step(id, sym(Some(2), None)), id);
        // Four letters away leaves the radius-3 ball, and failure absorbs.
        let mut s = id;
        for _ in 0..4 {
            s = dm.step(s, sym(None, Some(1)));
        }
        assert_eq!(s, FAIL);
        assert_eq!(dm.step(FAIL, sym(Some(0), Some(0))), FAIL);
    }

    #[test]
    fn multiplier_examples() {
        let (d, l, dm) = setup(4);
        let symbols = d.symbols();
        let pa = PairAlphabet::new(&symbols).unwrap();
        let enc = |s: &str| symbols.encode(&s.chars().map(String::from).collect::<Vec<_>>()).unwrap();
        let all = multipliers(&l, &dm, Handedness::Right, 1_000_000).unwrap();
        let get = |a: Option<usize>| &all.iter().find(|(b, _)| *b == a).unwrap().1;
        for u in l.enumerate(6) {
            assert!(get(None).accepts(&pa.convolve(&u, &u)));
        }
        assert!(get(Some(0)).accepts(&pa.convolve(&enc("a"), &enc("aa"))));
        assert!(get(Some(1)).accepts(&pa.convolve(&enc("aa"), &enc("aab111"))));
        assert!(!get(Some(1)).accepts(&pa.convolve(&enc("aa"), &enc("aa"))));
        assert_eq!(get(Some(1)), &multiplier(Some(1), &l, &dm, Handedness::Right, 1_000_000).unwrap());
    }
}
