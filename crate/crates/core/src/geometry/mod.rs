//! Exact plane embedding of a branch of the Cayley graph of `S(m,n)`, `m > n`.
//!
//! Row `l` of `x`-edges sits at height `sum_{i<l} (n/m)^i`; an `x`-edge on
//! row `l` has length `(n/m)^l` and a `y`-edge leaving row `l` rises by the
//! same amount, so every relation cell is a square similar to the one below.

mod cayley;
mod svg;

pub use cayley::{graph_distance, CayleyGraph};
pub use svg::{emit_svg, SvgOptions};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::semigroup::{BsParams, Letter, NormalForm, SgWord};

/// A vertex of the embedded branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub row: usize,
    pub ex: BigRational,
    pub ey: BigRational,
}

impl PlanePoint {
    pub fn origin() -> Self {
        PlanePoint {
            row: 0,
            ex: BigRational::zero(),
            ey: BigRational::zero(),
        }
    }

    /// `[row, ex_num, ex_den, ey_num, ey_den]`.
    pub fn to_json(&self) -> serde_json::Value {
        let int = |b: &BigInt| -> serde_json::Value {
            match i64::try_from(b) {
                Ok(v) => v.into(),
                Err(_) => b.to_string().into(),
            }
        };
        serde_json::json!([
            self.row,
            int(self.ex.numer()),
            int(self.ex.denom()),
            int(self.ey.numer()),
            int(self.ey.denom()),
        ])
    }
}

pub(crate) fn ratio(p: BsParams) -> BigRational {
    BigRational::new(BigInt::from(p.n()), BigInt::from(p.m()))
}

/// `(n/m)^row`, the edge length on a given row.
pub fn edge_length(row: usize, p: BsParams) -> BigRational {
    num_traits::pow(ratio(p), row)
}

/// The walk of `w` from the basepoint, one point per letter plus the start.
pub fn embed_path(w: &SgWord, p: BsParams) -> Result<Vec<PlanePoint>> {
    p.require_m_gt_n("embedding a branch")?;
    let r = ratio(p);
    let mut cur = PlanePoint::origin();
    let mut step = BigRational::one();
    let mut out = vec![cur.clone()];
    for &l in w.letters() {
        match l {
            Letter::X => cur.ex += &step,
            Letter::Y => {
                cur.ey += &step;
                cur.row += 1;
                step *= &r;
            }
        }
        out.push(cur.clone());
    }
    Ok(out)
}

/// Endpoint of any path spelling the element, computed from run lengths so
/// that huge tails are never materialized.
pub fn embed_normal_form(f: &NormalForm, p: BsParams) -> Result<PlanePoint> {
    p.require_m_gt_n("embedding a branch")?;
    let r = ratio(p);
    let mut cur = PlanePoint::origin();
    let mut step = BigRational::one();
    let runs = f.runs();
    for (i, run) in runs.iter().enumerate() {
        cur.ex += &step * BigRational::from_integer(BigInt::from(run.clone()));
        if i + 1 < runs.len() {
            cur.ey += &step;
            cur.row += 1;
            step *= &r;
        }
    }
    Ok(cur)
}

/// Horizontal and vertical displacement of the straight edge labelled `w`,
/// drawn from a vertex on `start_row`.
pub fn displacement(w: &SgWord, start_row: usize, p: BsParams) -> Result<(BigRational, BigRational)> {
    let path = embed_path(w, p)?;
    let end = path.last().expect("paths are nonempty");
    let scale = edge_length(start_row, p);
    Ok((&end.ex * &scale, &end.ey * &scale))
}

/// Slope data of the edge labelled by a word containing `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotAngle {
    pub dx: BigRational,
    pub dy: BigRational,
    pub cot: BigRational,
}

pub fn cot_angle(w: &SgWord, p: BsParams) -> Result<CotAngle> {
    let (dx, dy) = displacement(w, 0, p)?;
    if dy.is_zero() {
        return Err(Error::Domain(format!(
            "{w} is a power of x: its edge is horizontal"
        )));
    }
    let cot = &dx / &dy;
    Ok(CotAngle { dx, dy, cot })
}

/// Horizontal distance, in graph units of the next row up, between two
/// climbing edges that are `d` apart on the row below.
pub fn hordist_step(d: &BigRational, cw: &CotAngle, cz: &CotAngle, p: BsParams) -> Result<BigRational> {
    p.require_m_gt_n("the horizontal-distance recurrence")?;
    let factor = BigRational::new(BigInt::from(p.m()), BigInt::from(p.n()));
    Ok(factor * (d - &cw.cot + &cz.cot).abs())
}

/// A horizontal distance `alpha > h` beyond which edges labelled from `words`
/// only move further apart as they climb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValue {
    pub h: u64,
    pub words: Vec<SgWord>,
    pub alpha: BigRational,
}

/// `alpha = max({h} ∪ {cot w - cot z}) · m / (m - n)`.
///
/// The maximum ranges over signed differences; since `w = z` contributes 0
/// and the set is closed under swapping, this equals the maximum absolute
/// difference.
pub fn critical_value(h: u64, words: &[SgWord], p: BsParams) -> Result<CriticalValue> {
    p.require_m_gt_n("the critical value")?;
    if h == 0 {
        return Err(Error::Parameter("h must be positive".into()));
    }
    if words.is_empty() {
        return Err(Error::Parameter("the word set must be nonempty".into()));
    }
    let cots = words
        .iter()
        .map(|w| cot_angle(w, p).map(|c| c.cot))
        .collect::<Result<Vec<_>>>()?;
    let mut best = BigRational::from_integer(BigInt::from(h));
    for cw in &cots {
        for cz in &cots {
            let diff = cw - cz;
            if diff > best {
                best = diff;
            }
        }
    }
    let alpha = best * BigRational::new(BigInt::from(p.m()), BigInt::from(p.m() - p.n()));
    Ok(CriticalValue {
        h,
        words: words.to_vec(),
        alpha,
    })
}
