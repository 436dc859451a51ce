//! The Baumslag-Solitar group `G(m,n) = Gp<x,y | yx^m = x^n y>` as an HNN
//! extension of the infinite cyclic group `<x>`.
//!
//! Elements are kept in the reduced form
//! `x^a0 y^e1 x^a1 ... y^ek x^ak` where every `a_i` with `i >= 1` is a coset
//! representative (`0 <= a_i < m` after `y`, `0 <= a_i < n` after `y^-1`) and
//! no pinch `y x^0 y^-1` or `y^-1 x^0 y` occurs. Britton's lemma makes this
//! form unique, so equality of group elements is equality of forms.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::semigroup::{parse_powers, BsParams, Letter, NormalForm, SgWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupLetter {
    X,
    XInv,
    Y,
    YInv,
}

impl GroupLetter {
    pub fn inverse(self) -> Self {
        match self {
            GroupLetter::X => GroupLetter::XInv,
            GroupLetter::XInv => GroupLetter::X,
            GroupLetter::Y => GroupLetter::YInv,
            GroupLetter::YInv => GroupLetter::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            GroupLetter::X => 'x',
            GroupLetter::XInv => 'X',
            GroupLetter::Y => 'y',
            GroupLetter::YInv => 'Y',
        }
    }
}

impl From<Letter> for GroupLetter {
    fn from(l: Letter) -> Self {
        match l {
            Letter::X => GroupLetter::X,
            Letter::Y => GroupLetter::Y,
        }
    }
}

/// A possibly empty word over `x, X = x^-1, y, Y = y^-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(Vec<GroupLetter>);

impl GroupWord {
    pub fn new(letters: Vec<GroupLetter>) -> Self {
        GroupWord(letters)
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn y_exponent_sum(&self) -> i64 {
        self.0
            .iter()
            .map(|l| match l {
                GroupLetter::Y => 1,
                GroupLetter::YInv => -1,
                _ => 0,
            })
            .sum()
    }
}

impl From<&SgWord> for GroupWord {
    fn from(w: &SgWord) -> Self {
        GroupWord(w.letters().iter().map(|&l| l.into()).collect())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// `x`, `y`, `X`, `Y` with caret powers; `x^-2` is the same as `X^2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (c, power) in parse_powers(s, |c| matches!(c, 'x' | 'y' | 'X' | 'Y'))? {
            let base = match c {
                'x' => GroupLetter::X,
                'X' => GroupLetter::XInv,
                'y' => GroupLetter::Y,
                _ => GroupLetter::YInv,
            };
            let l = if power < 0 { base.inverse() } else { base };
            letters.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
        }
        Ok(GroupWord(letters))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// One `y^e x^a` factor of a reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    /// `+1` for `y`, `-1` for `y^-1`.
    pub sign: i8,
    pub exp: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalGroupForm {
    a0: BigInt,
    syllables: Vec<Syllable>,
}

impl Default for CanonicalGroupForm {
    fn default() -> Self {
        Self::identity()
    }
}

impl CanonicalGroupForm {
    pub fn identity() -> Self {
        CanonicalGroupForm {
            a0: BigInt::zero(),
            syllables: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a0.is_zero() && self.syllables.is_empty()
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Builds a form from raw data, checking the coset and pinch constraints.
    pub fn from_parts(a0: BigInt, syllables: Vec<Syllable>, p: BsParams) -> Result<Self> {
        let g = CanonicalGroupForm { a0, syllables };
        g.check_shape(p)?;
        Ok(g)
    }

    pub fn check_shape(&self, p: BsParams) -> Result<()> {
        for (i, s) in self.syllables.iter().enumerate() {
            let modulus = match s.sign {
                1 => p.m(),
                -1 => p.n(),
                e => return Err(Error::Domain(format!("syllable sign {e} is not ±1"))),
            };
            if s.exp.is_negative() || s.exp >= BigInt::from(modulus) {
                return Err(Error::Domain(format!(
                    "exponent {} after y^{} is not in [0,{modulus})",
                    s.exp, s.sign
                )));
            }
            if let Some(next) = self.syllables.get(i + 1) {
                if s.exp.is_zero() && next.sign == -s.sign {
                    return Err(Error::Domain(format!("pinch at syllable {}", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn y_exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|s| s.sign as i64).sum()
    }

    pub fn x_power(k: impl Into<BigInt>) -> Self {
        CanonicalGroupForm {
            a0: k.into(),
            syllables: Vec::new(),
        }
    }

    /// Right multiplication by `x^k`: add to the last exponent and push
    /// multiples of the coset modulus leftward through the `y`s.
    pub fn mul_x_pow(&mut self, k: &BigInt, p: BsParams) {
        if k.is_zero() {
            return;
        }
        let m = BigInt::from(p.m());
        let n = BigInt::from(p.n());
        let mut carry = k.clone();
        for s in self.syllables.iter_mut().rev() {
            let (modulus, image) = if s.sign > 0 { (&m, &n) } else { (&n, &m) };
            let (q, r) = (&s.exp + &carry).div_mod_floor(modulus);
            s.exp = r;
            if q.is_zero() {
                return;
            }
            carry = q * image;
        }
        self.a0 += carry;
    }

    /// Right multiplication by `y^sign`, cancelling a pinch if one forms.
    pub fn mul_y(&mut self, sign: i8) {
        if let Some(last) = self.syllables.last() {
            if last.sign == -sign && last.exp.is_zero() {
                self.syllables.pop();
                return;
            }
        }
        self.syllables.push(Syllable {
            sign,
            exp: BigInt::zero(),
        });
    }

    pub fn mul_letter(&mut self, l: GroupLetter, p: BsParams) {
        match l {
            GroupLetter::X => self.mul_x_pow(&BigInt::one(), p),
            GroupLetter::XInv => self.mul_x_pow(&-BigInt::one(), p),
            GroupLetter::Y => self.mul_y(1),
            GroupLetter::YInv => self.mul_y(-1),
        }
    }

    pub fn mul(&self, other: &CanonicalGroupForm, p: BsParams) -> CanonicalGroupForm {
        let mut out = self.clone();
        out.mul_assign(other, p);
        out
    }

    pub fn mul_assign(&mut self, other: &CanonicalGroupForm, p: BsParams) {
        self.mul_x_pow(&other.a0, p);
        for s in &other.syllables {
            self.mul_y(s.sign);
            self.mul_x_pow(&s.exp, p);
        }
    }

    pub fn inv(&self, p: BsParams) -> CanonicalGroupForm {
        let mut out = CanonicalGroupForm::identity();
        for s in self.syllables.iter().rev() {
            out.mul_x_pow(&-&s.exp, p);
            out.mul_y(-s.sign);
        }
        out.mul_x_pow(&-&self.a0, p);
        out
    }

    /// A word spelling this form, with `x`-powers expanded.
    pub fn to_word(&self) -> Option<GroupWord> {
        let mut letters = Vec::new();
        let push_x = |letters: &mut Vec<GroupLetter>, k: &BigInt| -> Option<()> {
            let count = k.abs().to_usize()?;
            let l = if k.is_negative() {
                GroupLetter::XInv
            } else {
                GroupLetter::X
            };
            letters.extend(std::iter::repeat_n(l, count));
            Some(())
        };
        push_x(&mut letters, &self.a0)?;
        for s in &self.syllables {
            letters.push(if s.sign > 0 {
                GroupLetter::Y
            } else {
                GroupLetter::YInv
            });
            push_x(&mut letters, &s.exp)?;
        }
        Some(GroupWord(letters))
    }

    /// The image of a semigroup normal form `x^k0 y ... y x^l`.
    pub fn from_normal_form(f: &NormalForm, p: BsParams) -> Self {
        let mut g = CanonicalGroupForm::identity();
        for &k in f.blocks() {
            g.mul_x_pow(&BigInt::from(k), p);
            g.mul_y(1);
        }
        g.mul_x_pow(&BigInt::from(f.tail().clone()), p);
        g
    }

    /// Inverse of [`CanonicalGroupForm::from_normal_form`] for elements of
    /// `S(m,n)^1`; `None` if the element is not positive.
    pub fn to_normal_form(&self, p: BsParams) -> Option<NormalForm> {
        if !self.syllables.iter().all(|s| s.sign > 0) || self.a0.is_negative() {
            return None;
        }
        let mut runs: Vec<BigUint> = vec![self.a0.to_biguint()?];
        for s in &self.syllables {
            runs.push(s.exp.to_biguint()?);
        }
        Some(NormalForm::from_runs(&runs, p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let syl: Vec<serde_json::Value> = self
            .syllables
            .iter()
            .map(|s| serde_json::json!([s.sign, bigint_to_json(&s.exp)]))
            .collect();
        serde_json::json!({ "a0": bigint_to_json(&self.a0), "syllables": syl })
    }

    pub fn from_json(v: &serde_json::Value, p: BsParams) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            a0: serde_json::Value,
            syllables: Vec<(i8, serde_json::Value)>,
        }
        let raw: Raw = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("group form JSON: {e}")))?;
        let syllables = raw
            .syllables
            .iter()
            .map(|(sign, exp)| {
                Ok(Syllable {
                    sign: *sign,
                    exp: bigint_from_json(exp)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CanonicalGroupForm::from_parts(bigint_from_json(&raw.a0)?, syllables, p)
    }
}

fn bigint_to_json(b: &BigInt) -> serde_json::Value {
    match b.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(b.to_string()),
    }
}

fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        serde_json::Value::String(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

impl fmt::Display for CanonicalGroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let x = |f: &mut fmt::Formatter<'_>, k: &BigInt| -> fmt::Result {
            if k.is_zero() {
                Ok(())
            } else if k.is_one() {
                write!(f, "x")
            } else {
                write!(f, "x^{k}")
            }
        };
        x(f, &self.a0)?;
        for s in &self.syllables {
            write!(f, "{}", if s.sign > 0 { "y" } else { "Y" })?;
            x(f, &s.exp)?;
        }
        Ok(())
    }
}

pub fn reduce(w: &GroupWord, p: BsParams) -> CanonicalGroupForm {
    let mut g = CanonicalGroupForm::identity();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        match letters[i] {
            GroupLetter::X | GroupLetter::XInv => {
                let mut k = BigInt::zero();
                while i < letters.len() && matches!(letters[i], GroupLetter::X | GroupLetter::XInv) {
                    if letters[i] == GroupLetter::X {
                        k += 1;
                    } else {
                        k -= 1;
                    }
                    i += 1;
                }
                g.mul_x_pow(&k, p);
            }
            l => {
                g.mul_letter(l, p);
                i += 1;
            }
        }
    }
    g
}

pub fn group_equal(u: &GroupWord, v: &GroupWord, p: BsParams) -> bool {
    u.y_exponent_sum() == v.y_exponent_sum() && reduce(u, p) == reduce(v, p)
}

/// Membership of a group element in the embedded copy of `S(m,n)`.
pub fn s_membership(g: &CanonicalGroupForm) -> bool {
    !g.is_identity() && !g.a0.is_negative() && g.syllables.iter().all(|s| s.sign > 0)
}

/// An affine map `z -> scale * z + shift` of the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale: BigRational::one(),
            shift: BigRational::zero(),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            scale: &self.scale * &other.scale,
            shift: &self.scale * &other.shift + &self.shift,
        }
    }
}

/// Homomorphic image under `x -> (z -> z+1)`, `y -> (z -> (n/m) z)`, which
/// respects `yx^m = x^n y`.
pub fn affine_image(w: &GroupWord, p: BsParams) -> AffineMap {
    let ratio = BigRational::new(BigInt::from(p.n()), BigInt::from(p.m()));
    let one = BigRational::one();
    let zero = BigRational::zero();
    let gen = |l: GroupLetter| match l {
        GroupLetter::X => AffineMap {
            scale: one.clone(),
            shift: one.clone(),
        },
        GroupLetter::XInv => AffineMap {
            scale: one.clone(),
            shift: -one.clone(),
        },
        GroupLetter::Y => AffineMap {
            scale: ratio.clone(),
            shift: zero.clone(),
        },
        GroupLetter::YInv => AffineMap {
            scale: ratio.recip(),
            shift: zero.clone(),
        },
    };
    w.letters()
        .iter()
        .fold(AffineMap::identity(), |acc, &l| acc.compose(&gen(l)))
}

/// All elements of word length at most `radius` over `images` and their inverses.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    elements: Vec<CanonicalGroupForm>,
    index: HashMap<CanonicalGroupForm, usize>,
    /// `layer_ends[r]` is the number of elements at distance `<= r`.
    layer_ends: Vec<usize>,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CanonicalGroupForm] {
        &self.elements
    }

    pub fn index_of(&self, g: &CanonicalGroupForm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &CanonicalGroupForm) -> bool {
        self.index.contains_key(g)
    }

    pub fn element(&self, i: usize) -> &CanonicalGroupForm {
        &self.elements[i]
    }

    /// Word length of the element at index `i` with respect to the generators.
    pub fn distance_of(&self, i: usize) -> usize {
        self.layer_ends.partition_point(|&end| end <= i)
    }
}

pub fn ball(
    radius: usize,
    images: &[CanonicalGroupForm],
    p: BsParams,
    budget: usize,
) -> Result<Ball> {
    let mut steps: Vec<CanonicalGroupForm> = Vec::new();
    for g in images {
        for h in [g.clone(), g.inv(p)] {
            if !h.is_identity() && !steps.contains(&h) {
                steps.push(h);
            }
        }
    }
    let id = CanonicalGroupForm::identity();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut layer_ends = vec![1usize];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = elements.len();
        for i in frontier.clone() {
            for s in &steps {
                let next = elements[i].mul(s, p);
                if !index.contains_key(&next) {
                    if elements.len() >= budget {
                        return Err(Error::budget(format!("ball of radius {radius}"), budget));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                }
            }
        }
        layer_ends.push(elements.len());
        frontier = start..elements.len();
    }
    Ok(Ball {
        radius,
        elements,
        index,
        layer_ends,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{equal, normalize};
    use std::collections::HashSet;

    fn p(m: u32, n: u32) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn gw(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn red(s: &str, params: BsParams) -> CanonicalGroupForm {
        reduce(&gw(s), params)
    }

    fn random_word(rng: &mut impl rand::Rng, len: usize) -> GroupWord {
        use GroupLetter::*;
        GroupWord::new(
            (0..len)
                .map(|_| [X, XInv, Y, YInv][rng.gen_range(0..4)])
                .collect(),
        )
    }

    #[test]
    fn reduce_examples() {
        let params = p(3, 2);
        assert_eq!(red("yx^3Y", params), CanonicalGroupForm::x_power(2));
        assert!(red("", params).is_identity());
        assert!(red("X^2yx^3Y", params).is_identity());
    }

    #[test]
    fn group_equal_examples() {
        let params = p(3, 2);
        assert!(group_equal(&gw("yx^3"), &gw("x^2y"), params));
        assert!(group_equal(&gw("xyXY"), &gw("xyXY"), params));
        assert!(!group_equal(&gw("x"), &gw("y"), params));
    }

    #[test]
    fn mul_inv_examples() {
        let params = p(3, 2);
        let g = red("xyXyy", params);
        assert_eq!(g.mul(&CanonicalGroupForm::identity(), params), g);
        assert_eq!(red("xy", params).inv(params), red("YX", params));
        let yx3 = red("y", params).mul(&red("x^3", params), params);
        assert_eq!(yx3, red("yx^3", params));
        assert_eq!(yx3.to_string(), "x^2y");
        assert!(g.mul(&g.inv(params), params).is_identity());
    }

    #[test]
    fn ball_examples() {
        let params = p(3, 2);
        let gens = [red("x", params), red("y", params)];
        assert_eq!(ball(0, &gens, params, 100).unwrap().len(), 1);
        let b1 = ball(1, &gens, params, 100).unwrap();
        assert_eq!(b1.len(), 5);
        // Enumeration oracle: reduce every word of length <= 2 over x, X, y, Y.
        let letters = ["x", "X", "y", "Y"];
        let mut seen = HashSet::new();
        seen.insert(CanonicalGroupForm::identity());
        for a in letters {
            seen.insert(red(a, params));
            for b in letters {
                seen.insert(red(&format!("{a}{b}"), params));
            }
        }
        let b2 = ball(2, &gens, params, 100).unwrap();
        assert_eq!(b2.len(), seen.len());
        assert_eq!(b2.len(), 17);
        assert!(ball(6, &gens, params, 50).is_err());
    }

    #[test]
    fn ball_is_monotone_and_layered() {
        let params = p(3, 2);
        let gens = [red("x", params), red("y", params)];
        let b3 = ball(3, &gens, params, 10_000).unwrap();
        let b4 = ball(4, &gens, params, 10_000).unwrap();
        for g in b3.elements() {
            assert!(b4.contains(g));
        }
        let i = b4.index_of(&red("yxY", params)).unwrap();
        assert_eq!(b4.distance_of(i), 3);
        assert_eq!(b4.distance_of(0), 0);
    }

    #[test]
    fn s_membership_examples() {
        let params = p(3, 2);
        assert!(s_membership(&red("x^2", params)));
        assert!(!s_membership(&red("X", params)));
        assert!(s_membership(&red("yx^3Y", params)));
        assert!(!s_membership(&CanonicalGroupForm::identity()));
    }

    #[test]
    fn positive_words_are_members() {
        let params = p(3, 2);
        for w in SgWord::all_up_to(8) {
            assert!(s_membership(&reduce(&GroupWord::from(&w), params)), "{w}");
        }
    }

    #[test]
    fn members_of_small_ball_have_short_positive_words() {
        // Bounded search oracle: every positive element in ball(4) is spelled
        // by a positive word of length <= 12.
        let params = p(3, 2);
        let gens = [red("x", params), red("y", params)];
        let b = ball(4, &gens, params, 100_000).unwrap();
        let mut positive = HashSet::new();
        for w in SgWord::all_up_to(12) {
            positive.insert(reduce(&GroupWord::from(&w), params));
        }
        for g in b.elements() {
            if s_membership(g) {
                assert!(positive.contains(g), "{g} has no short positive word");
            } else {
                assert!(!positive.contains(g));
            }
        }
    }

    #[test]
    fn affine_examples() {
        let params = p(3, 2);
        let x = affine_image(&gw("x"), params);
        assert_eq!((x.scale, x.shift), (BigRational::one(), BigRational::one()));
        let conj = affine_image(&gw("yx^3Y"), params);
        assert_eq!(conj, affine_image(&gw("x^2"), params));
        assert_eq!(conj.shift, BigRational::from_integer(2.into()));
        assert_eq!(affine_image(&gw(""), params), AffineMap::identity());
    }

    #[test]
    fn agrees_with_semigroup_equality() {
        let params = p(3, 2);
        let words = SgWord::all_up_to(7);
        let forms: Vec<_> = words.iter().map(|w| reduce(&w.into(), params)).collect();
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                assert_eq!(forms[i] == forms[j], equal(u, v, params), "{u} {v}");
            }
        }
    }

    #[test]
    fn normal_form_conversion_roundtrips() {
        let params = p(5, 3);
        for w in SgWord::all_up_to(7) {
            let f = normalize(&w, params);
            let g = CanonicalGroupForm::from_normal_form(&f, params);
            assert_eq!(g, reduce(&(&w).into(), params));
            assert_eq!(g.to_normal_form(params).unwrap(), f);
        }
    }

    #[test]
    fn relator_insertion_leaves_form_unchanged() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for params in [p(3, 2), p(2, 3), p(5, 3), p(2, 2)] {
            let relator = format!("yx^{}Yx^-{}", params.m(), params.n());
            let relator = gw(&relator);
            // Cyclic rotations of the relator and of its inverse.
            let mut insertions = Vec::new();
            for r in [relator.clone(), relator.inverse()] {
                for k in 0..r.len() {
                    let mut l = r.letters()[k..].to_vec();
                    l.extend_from_slice(&r.letters()[..k]);
                    insertions.push(GroupWord::new(l));
                }
            }
            for l in [GroupLetter::X, GroupLetter::Y] {
                insertions.push(GroupWord::new(vec![l, l.inverse()]));
                insertions.push(GroupWord::new(vec![l.inverse(), l]));
            }
            for _ in 0..400 {
                let len = rng.gen_range(0..=8);
                let w = random_word(&mut rng, len);
                let pos = rng.gen_range(0..=w.len());
                let ins = &insertions[rng.gen_range(0..insertions.len())];
                let mut l = w.letters()[..pos].to_vec();
                l.extend_from_slice(ins.letters());
                l.extend_from_slice(&w.letters()[pos..]);
                let g = reduce(&w, params);
                g.check_shape(params).unwrap();
                assert_eq!(reduce(&GroupWord::new(l), params), g);
                let back = g.to_word().unwrap();
                assert_eq!(affine_image(&w, params), affine_image(&back, params));
                assert_eq!(reduce(&back, params), g);
            }
        }
    }

    #[test]
    fn shape_violations_are_rejected() {
        let params = p(3, 2);
        let pinch = vec![
            Syllable { sign: 1, exp: BigInt::zero() },
            Syllable { sign: -1, exp: BigInt::zero() },
        ];
        assert!(CanonicalGroupForm::from_parts(BigInt::zero(), pinch, params).is_err());
        let big = vec![Syllable { sign: -1, exp: BigInt::from(2) }];
        assert!(CanonicalGroupForm::from_parts(BigInt::zero(), big, params).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let params = p(3, 2);
        let g = red("XyyXYx", params);
        let v = g.to_json();
        assert_eq!(CanonicalGroupForm::from_json(&v, params).unwrap(), g);
        assert_eq!(red("x^2y", params).to_json().to_string(), r#"{"a0":2,"syllables":[[1,0]]}"#);
    }
}
