//! The `verify` pipeline: skeleton, eigenvalue bounds, exact expansion,
//! fractional wall-matchings, cube-span coverage, and a verdict on whether
//! the edge expansion is at least one.

use cubex_core::cubespan::cswalls_total_flow;
use cubex_core::error::Error;
use cubex_core::expansion::{
    certified_bound, cut_size, edge_expansion_exact_with_limit, validate_target_flow,
};
use cubex_core::polytope::ZeroOnePolytope;
use cubex_core::rat::{format_rat, rat_int, to_f64, Rat};
use cubex_core::spectral::spectral_report;
use cubex_core::walls::{build_wall_flow, has_fractional_wall_matchings, total_wall_flow};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    UnknownByCertificates,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::UnknownByCertificates => write!(f, "unknown-by-certificates"),
        }
    }
}

pub struct VerifyOutcome {
    pub lines: Vec<String>,
    pub violations: Vec<String>,
    pub verdict: Verdict,
    pub exact: Option<Rat>,
}

pub fn verify_polytope(
    p: &ZeroOnePolytope,
    tol: f64,
    max_n: usize,
) -> Result<VerifyOutcome, Error> {
    let mut lines = Vec::new();
    let mut violations = Vec::new();
    let n = p.n_vertices();
    let g = p.skeleton()?;
    lines.push(format!(
        "polytope: d={} n={} skeleton_edges={} dim={}",
        p.ambient_dim(),
        n,
        g.m(),
        p.dimension()?
    ));
    if n < 2 {
        lines.push("verdict: expansion >= 1: unknown-by-certificates (single vertex)".into());
        return Ok(VerifyOutcome {
            lines,
            violations,
            verdict: Verdict::UnknownByCertificates,
            exact: None,
        });
    }

    // Spectral bounds.
    let spectral = if n >= 2 && g.m() >= 1 {
        let r = spectral_report(&g, tol)?;
        lines.push(format!(
            "lambda2={:.9} delta_max={} eigen_lower={:.9} eigen_upper={:.9}",
            r.lambda2, r.delta_max, r.lower_bound, r.upper_bound
        ));
        Some(r)
    } else {
        lines.push("spectral: skipped (walk undefined)".into());
        None
    };

    // Exact expansion by brute force, when in range.
    let exact = if (2..=max_n.min(64)).contains(&n) {
        let (h, cert) = edge_expansion_exact_with_limit(&g, max_n.min(64))?;
        if cut_size(&g, &cert.subset).unwrap_or(u64::MAX) != cert.cut_size {
            violations.push("certificate cut size does not recount".into());
        }
        lines.push(format!(
            "exact_expansion={} witness_size={} cut={}",
            format_rat(&h),
            cert.subset.len(),
            cert.cut_size
        ));
        if let Some(r) = &spectral {
            let hf = to_f64(&h);
            if hf < r.lower_bound - tol || hf > r.upper_bound + tol {
                violations.push(format!(
                    "eigenvalue sandwich violated: {} not in [{:.9}, {:.9}]",
                    format_rat(&h),
                    r.lower_bound,
                    r.upper_bound
                ));
            }
        }
        Some(h)
    } else {
        lines.push(format!(
            "exact_expansion: skipped (n={} outside 2..={})",
            n,
            max_n.min(64)
        ));
        None
    };

    // Fractional wall-matching certificate.
    let mut fwm_yes = false;
    match has_fractional_wall_matchings(p, &g) {
        Ok(report) => {
            if report.holds {
                fwm_yes = true;
                let (_, phi_max) = total_wall_flow(p, &g)?;
                let half_n = rat_int(n as i64) / rat_int(2);
                if phi_max > half_n {
                    violations.push(format!(
                        "wall flow exceeds n/2: phi_max={}",
                        format_rat(&phi_max)
                    ));
                }
                let bound = certified_bound(n, &phi_max)?;
                if bound < rat_int(1) {
                    violations.push(format!("wall-flow bound below one: {}", format_rat(&bound)));
                }
                if n <= 64 {
                    for t in 0..n {
                        let f = build_wall_flow(p, &g, t)?;
                        if !validate_target_flow(&g, &f, t) {
                            violations.push(format!("wall flow for target {} invalid", t));
                        }
                    }
                }
                lines.push(format!(
                    "fwm=yes phi_max={} certified_bound={}",
                    format_rat(&phi_max),
                    format_rat(&bound)
                ));
            } else {
                let failing: Vec<String> =
                    report.failing.iter().map(|w| w.sigma.render()).collect();
                lines.push(format!("fwm=no failing_walls={}", failing.join(",")));
            }
        }
        Err(Error::LimitExceeded(_)) => {
            lines.push("fwm: skipped (wall enumeration limit)".into());
        }
        Err(e) => return Err(e),
    }

    // Cube-span certificate.
    let mut cubespan_yes = false;
    match cswalls_total_flow(p, &g) {
        Ok(report) => {
            let bound_str = report
                .bound
                .as_ref()
                .map(format_rat)
                .unwrap_or_else(|| "-".into());
            lines.push(format!(
                "cubespan: complete={} walls_used={} phi_max={} bound={}",
                report.complete,
                report.walls_used,
                format_rat(&report.phi_max),
                bound_str
            ));
            if report.complete && n >= 2 {
                match &report.bound {
                    Some(b) if *b >= rat_int(1) => cubespan_yes = true,
                    Some(b) => violations.push(format!(
                        "cube-span coverage complete but bound {} below one",
                        format_rat(b)
                    )),
                    None => violations.push("cube-span coverage complete without flow".into()),
                }
            }
        }
        Err(Error::LimitExceeded(_)) => {
            lines.push("cubespan: skipped (enumeration limit)".into());
        }
        Err(e) => return Err(e),
    }

    let verdict = match &exact {
        Some(h) if *h >= rat_int(1) => Verdict::Yes,
        Some(_) => Verdict::No,
        None if fwm_yes || cubespan_yes => Verdict::Yes,
        None => Verdict::UnknownByCertificates,
    };
    if let (Some(h), true) = (&exact, fwm_yes) {
        if *h < rat_int(1) {
            violations
                .push("fractional wall-matchings hold but exact expansion is below one".into());
        }
    }
    match &exact {
        Some(h) => lines.push(format!(
            "verdict: expansion >= 1: {} (exact value {})",
            verdict,
            format_rat(h)
        )),
        None => lines.push(format!("verdict: expansion >= 1: {}", verdict)),
    }
    Ok(VerifyOutcome {
        lines,
        violations,
        verdict,
        exact,
    })
}
