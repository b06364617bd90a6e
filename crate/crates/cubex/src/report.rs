//! JSON and CSV document builders. All maps are `serde_json` objects with
//! sorted keys, so identical inputs always serialize to identical bytes.

use serde_json::{json, Value};

use cubex_core::cubespan::CubeSpanReport;
use cubex_core::enumerate::SurveyRow;
use cubex_core::expansion::CutCertificate;
use cubex_core::graph::Graph;
use cubex_core::polytope::ZeroOnePolytope;
use cubex_core::rat::{format_rat, to_f64};
use cubex_core::spectral::SpectralReport;
use cubex_core::walls::{fractional_matching, wall_bipartite, Wall};

pub fn spectral_json(r: &SpectralReport) -> Value {
    json!({
        "n": r.n,
        "delta_max": r.delta_max,
        "lambda2": r.lambda2,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "tol": r.tol,
    })
}

pub fn certificate_json(c: &CutCertificate) -> Value {
    json!({
        "subset": c.subset,
        "cut_size": c.cut_size,
        "ratio": format_rat(&c.ratio),
    })
}

/// One wall report entry: pattern, size, split direction, shore sizes, and
/// whether its bipartite graph has a fractional matching (single-vertex
/// walls are vacuously satisfied). Coordinate indices are 0-based.
pub fn wall_json(p: &ZeroOnePolytope, g: &Graph, wall: &Wall) -> Value {
    match wall_bipartite(p, g, wall) {
        Some(b) => json!({
            "sigma": wall.sigma.render(),
            "size": wall.len(),
            "mu": b.mu,
            "shores": [b.left.len(), b.right.len()],
            "has_fractional_matching": fractional_matching(&b).is_some(),
        }),
        None => json!({
            "sigma": wall.sigma.render(),
            "size": wall.len(),
            "mu": Value::Null,
            "shores": Value::Null,
            "has_fractional_matching": true,
        }),
    }
}

/// Cube-span coverage: per ordered pair the antipodal service multiplicity.
pub fn coverage_json(n: usize, r: &CubeSpanReport) -> Value {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1));
    for s in 0..n as u32 {
        for t in 0..n as u32 {
            if s == t {
                continue;
            }
            let mult = r.coverage.get(&(s, t)).copied().unwrap_or(0);
            pairs.push(json!([s, t, mult]));
        }
    }
    json!({
        "phi_max": format_rat(&r.phi_max),
        "bound": r.bound.as_ref().map(format_rat),
        "complete": r.complete,
        "walls_used": r.walls_used,
        "pairs": pairs,
    })
}

pub fn class_json(row: &SurveyRow) -> Value {
    json!({
        "signature": row.signature.render(row.dim),
        "dim": row.dim,
        "n": row.n,
        "delta_max": row.delta_max,
        "lambda2": row.lambda2,
        "eigen_lower": row.eigen_lower,
        "expansion": format_rat(&row.expansion),
        "certificate": certificate_json(&row.certificate),
    })
}

pub fn summary_json(d: usize, rows: &[SurveyRow], bin_width: f64, tol: f64) -> Value {
    let bounds: Vec<f64> = rows.iter().map(|r| r.eigen_lower).collect();
    let min = bounds.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = bounds.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = if bounds.is_empty() {
        f64::NAN
    } else {
        bounds.iter().sum::<f64>() / bounds.len() as f64
    };
    let min_expansion = rows
        .iter()
        .map(|r| &r.expansion)
        .min()
        .map(format_rat)
        .unwrap_or_default();
    let min_expansion_f = rows
        .iter()
        .map(|r| to_f64(&r.expansion))
        .fold(f64::INFINITY, f64::min);
    json!({
        "d": d,
        "classes": rows.len(),
        "bin_width": bin_width,
        "tol": tol,
        "eigen_lower_min": min,
        "eigen_lower_max": max,
        "eigen_lower_mean": mean,
        "expansion_min": min_expansion,
        "expansion_min_float": min_expansion_f,
    })
}

/// Histogram CSV: a bin-width comment, a header row, one row per bin.
pub fn histogram_csv(bins: &[(f64, f64, usize)], bin_width: f64) -> String {
    let mut out = format!("# bin_width={}\nbin_lo,bin_hi,count\n", bin_width);
    for &(lo, hi, count) in bins {
        out.push_str(&format!("{:.6},{:.6},{}\n", lo, hi, count));
    }
    out
}
