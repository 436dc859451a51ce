use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{edge_length, embed_path, ratio, PlanePoint};
use crate::error::Result;
use crate::semigroup::{normalize, BsParams, SgWord};

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Number of `x`-rows to draw; `None` fits the paths.
    pub rows: Option<usize>,
    /// Width of the bottom row in graph units; `None` fits the paths.
    pub width: Option<usize>,
    /// Pixels per bottom-row unit.
    pub scale: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            rows: None,
            width: None,
            scale: 60.0,
        }
    }
}

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const MARGIN: f64 = 24.0;

fn f(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Draws the branch selected by the first path (its normal-form offsets pick
/// the sheet at each row) with every path overlaid as a polyline.
pub fn emit_svg(paths: &[SgWord], p: BsParams, options: &SvgOptions) -> Result<String> {
    p.require_m_gt_n("drawing a branch")?;
    let walks = paths
        .iter()
        .map(|w| embed_path(w, p))
        .collect::<Result<Vec<Vec<PlanePoint>>>>()?;
    let max_row = walks.iter().flatten().map(|pt| pt.row).max().unwrap_or(0);
    let rows = options.rows.unwrap_or(max_row + 2).max(1);
    let max_ex = walks.iter().flatten().map(|pt| f(&pt.ex)).fold(0.0, f64::max);
    let width = options.width.unwrap_or(max_ex.ceil() as usize + 2).max(1) as f64;
    let offsets: Vec<u64> = paths
        .first()
        .map(|w| normalize(w, p).blocks().to_vec())
        .unwrap_or_default();

    let r = f(&ratio(p));
    let heights: Vec<f64> = (0..=rows).map(|l| (0..l).map(|i| r.powi(i as i32)).sum()).collect();
    let top = heights[rows - 1];
    let s = options.scale;
    let px = |x: f64| MARGIN + x * s;
    let py = |y: f64| MARGIN + (top - y) * s;
    let (w_px, h_px) = (px(width) + MARGIN, py(0.0) + MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w_px:.1}" height="{h_px:.1}" viewBox="0 0 {w_px:.1} {h_px:.1}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<g id="branch" stroke="#999999" stroke-width="1" fill="#999999">"##
    );
    let mut origin = 0.0f64;
    for row in 0..rows {
        let unit = f(&edge_length(row, p));
        let y = py(heights[row]);
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/>"#,
            px(origin),
            px(width)
        );
        let count = (((width - origin) / unit).floor() as usize).min(2000);
        let offset = offsets.get(row).copied().unwrap_or(0) as usize;
        for k in 0..=count {
            let x = origin + k as f64 * unit;
            let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{y:.3}" r="1.5"/>"#, px(x));
            if row + 1 < rows && k % p.n() as usize == offset {
                let _ = writeln!(
                    out,
                    r#"<line x1="{0:.3}" y1="{y:.3}" x2="{0:.3}" y2="{1:.3}"/>"#,
                    px(x),
                    py(heights[row + 1])
                );
            }
        }
        origin += offset as f64 * unit;
    }
    let _ = writeln!(out, "</g>");

    for (i, (walk, word)) in walks.iter().zip(paths).enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = walk
            .iter()
            .map(|pt| format!("{:.3},{:.3}", px(f(&pt.ex)), py(f(&pt.ey))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="path" data-word="{word}" fill="none" stroke="{colour}" stroke-width="2.5" points="{}"/>"#,
            points.join(" ")
        );
        if let Some(end) = walk.last() {
            let _ = writeln!(
                out,
                r#"<circle class="endpoint" cx="{:.3}" cy="{:.3}" r="4" fill="{colour}"/>"#,
                px(f(&end.ex)),
                py(f(&end.ey))
            );
        }
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
