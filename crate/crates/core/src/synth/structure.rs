use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::alphabet::{decorate, DecoratedAlphabet, IDENTITY_LETTER};
use super::machine::Handedness;
use crate::automata::{Dfa, PairAlphabet};
use crate::error::{Error, Result};
use crate::group::CanonicalGroupForm;
use crate::semigroup::{BsParams, SgWord};

/// Key of the multiplier for the empty word.
pub const EPSILON_KEY: &str = "ε";

/// An automatic structure for `S^1` over `C = A ∪ {1}`.
#[derive(Clone, Debug)]
pub struct AutomaticStructure {
    pub alphabet: DecoratedAlphabet,
    pub lambda: usize,
    pub handedness: Handedness,
    pub language: Dfa,
    /// Keyed by letter name, `"1"` and [`EPSILON_KEY`].
    pub multipliers: BTreeMap<String, Dfa>,
}

impl AutomaticStructure {
    pub fn params(&self) -> BsParams {
        self.alphabet.params()
    }

    /// Multiplier for symbol `a` of `C`, or ε.
    pub fn multiplier(&self, a: Option<usize>) -> &Dfa {
        let key = a.map_or(EPSILON_KEY, |a| self.language.alphabet().label(a));
        &self.multipliers[key]
    }

    /// Element of a word over `C`.
    pub fn element(&self, w: &[usize]) -> CanonicalGroupForm {
        let images = self.alphabet.images();
        let mut g = CanonicalGroupForm::identity();
        for &s in w {
            g.mul_assign(&images[s], self.params());
        }
        g
    }

    pub fn to_json(&self) -> Value {
        let p = self.params();
        let letters: Vec<Value> = self
            .alphabet
            .letters()
            .iter()
            .map(|l| json!({"letter": l.name, "word": l.word.to_string()}))
            .collect();
        let multipliers: serde_json::Map<String, Value> =
            self.multipliers.iter().map(|(k, d)| (k.clone(), d.to_json())).collect();
        json!({
            "m": p.m(),
            "n": p.n(),
            "alphabet": letters,
            "identity_letter": IDENTITY_LETTER,
            "lambda": self.lambda,
            "handedness": self.handedness,
            "language": self.language.to_json(),
            "multipliers": multipliers,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidStructure(what.to_string());
        let num = |key: &str| v.get(key).and_then(Value::as_u64).ok_or_else(|| bad(&format!("missing integer {key:?}")));
        let p = BsParams::new(
            u32::try_from(num("m")?).map_err(|_| bad("m out of range"))?,
            u32::try_from(num("n")?).map_err(|_| bad("n out of range"))?,
        )?;
        if v.get("identity_letter").and_then(Value::as_str) != Some(IDENTITY_LETTER) {
            return Err(bad("identity_letter must be \"1\""));
        }
        let gens = v
            .get("alphabet")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing alphabet"))?
            .iter()
            .map(|entry| {
                let letter = entry.get("letter").and_then(Value::as_str).ok_or_else(|| bad("alphabet entry without letter"))?;
                let word: SgWord = entry
                    .get("word")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("alphabet entry without word"))?
                    .parse()?;
                Ok((letter.to_string(), word))
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = decorate(&gens, p)?;
        let handedness: Handedness = serde_json::from_value(v.get("handedness").cloned().unwrap_or(Value::Null))
            .map_err(|_| bad("handedness must be \"right\" or \"left\""))?;
        let lambda = num("lambda")? as usize;
        let language = Dfa::from_json(v.get("language").ok_or_else(|| bad("missing language"))?)?;
        let symbols = alphabet.symbols();
        if language.alphabet() != &symbols {
            return Err(bad("language alphabet differs from the letters plus \"1\""));
        }
        let pairs = PairAlphabet::new(&symbols)?;
        let raw = v.get("multipliers").and_then(Value::as_object).ok_or_else(|| bad("missing multipliers"))?;
        let mut multipliers = BTreeMap::new();
        for key in symbols.labels().iter().map(String::as_str).chain([EPSILON_KEY]) {
            let d = Dfa::from_json(raw.get(key).ok_or_else(|| bad(&format!("missing multiplier {key:?}")))?)?;
            if d.alphabet() != pairs.alphabet() {
                return Err(bad(&format!("multiplier {key:?} is not over the pair alphabet")));
            }
            multipliers.insert(key.to_string(), d);
        }
        Ok(AutomaticStructure {
            alphabet,
            lambda,
            handedness,
            language,
            multipliers,
        })
    }

    /// `(file stem, DOT source)` for the language and each multiplier.
    pub fn to_dot(&self) -> Vec<(String, String)> {
        let mut out = vec![("language".to_string(), self.language.to_dot("L"))];
        for (key, d) in &self.multipliers {
            let stem = if key == EPSILON_KEY { "epsilon".to_string() } else { key.clone() };
            out.push((format!("multiplier_{stem}"), d.to_dot(&format!("L_{key}"))));
        }
        out
    }
}
