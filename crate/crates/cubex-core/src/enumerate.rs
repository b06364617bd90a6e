//! Classification of full-dimensional 0/1-polytopes up to cube isometry,
//! and the per-class spectral/expansion survey rows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::expansion::{edge_expansion_exact_with_limit, CutCertificate};
use crate::polytope::{CanonicalContext, CanonicalSignature, ZeroOnePolytope};
use crate::rat::Rat;
use crate::spectral::{build_walk_matrix, expansion_bounds, second_eigenvalue};

/// One isometry class of full-dimensional 0/1-polytopes.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub signature: CanonicalSignature,
    pub n_vertices: usize,
    pub dim: usize,
    /// The canonical representative (vertex set of the signature).
    pub representative: ZeroOnePolytope,
}

/// Dimension of the polytope spanned by a cube-point subset mask.
pub fn subset_dimension(d: usize, mask: u64) -> usize {
    mask_dimension(d, mask)
}

fn mask_dimension(d: usize, mask: u64) -> usize {
    let mut points = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        points.push(rest.trailing_zeros() as u64);
        rest &= rest - 1;
    }
    if points.is_empty() {
        return 0;
    }
    let p = ZeroOnePolytope::new(
        d,
        points.into_iter().map(crate::polytope::Vertex01).collect(),
    )
    .unwrap();
    p.dimension().unwrap()
}

/// One record per isometry class of `d`-dimensional 0/1-polytopes: scan
/// all vertex subsets of the cube with dimension exactly `d` and keep the
/// distinct canonical signatures. Records are sorted by signature.
pub fn classify(d: usize) -> Result<Vec<ClassRecord>> {
    if d > 4 {
        return Err(Error::LimitExceeded(String::from(
            "direct classification is limited to d <= 4",
        )));
    }
    let ctx = CanonicalContext::new(d);
    let npoints = 1usize << d;
    let mut classes: BTreeSet<CanonicalSignature> = BTreeSet::new();
    let top = if npoints == 64 {
        u64::MAX
    } else {
        (1u64 << npoints) - 1
    };
    let mut mask = 1u64;
    loop {
        if mask.count_ones() as usize > d && mask_dimension(d, mask) == d {
            classes.insert(ctx.canonical_of_mask(mask));
        }
        if mask == top {
            break;
        }
        mask += 1;
    }
    Ok(classes
        .into_iter()
        .map(|signature| {
            let representative = signature.to_polytope(d);
            ClassRecord {
                signature,
                n_vertices: representative.n_vertices(),
                dim: d,
                representative,
            }
        })
        .collect())
}

/// Count of full-dimensional subsets (before canonicalization); the
/// exhaustive census backing the classification.
pub fn full_dimensional_subset_count(d: usize) -> Result<u64> {
    if d > 4 {
        return Err(Error::LimitExceeded(String::from(
            "census limited to d <= 4",
        )));
    }
    let npoints = 1usize << d;
    let top = if npoints == 64 {
        u64::MAX
    } else {
        (1u64 << npoints) - 1
    };
    let mut count = 0;
    for mask in 1..=top {
        if mask.count_ones() as usize > d && mask_dimension(d, mask) == d {
            count += 1;
        }
    }
    Ok(count)
}

/// Augments one BFS level of subset classes: for each canonical mask, adds
/// every missing point and canonicalizes. Pure and shardable; callers
/// merge the returned sets.
pub fn augment_level(ctx: &CanonicalContext, masks: &[u64]) -> BTreeSet<u64> {
    let npoints = 1u64 << ctx.d();
    let mut next = BTreeSet::new();
    for &mask in masks {
        for p in 0..npoints {
            if mask >> p & 1 == 0 {
                let sig = ctx.canonical_of_mask(mask | 1 << p);
                next.insert(sig.0.reverse_bits());
            }
        }
    }
    next
}

/// Classification by levelwise canonical augmentation instead of a raw
/// subset scan; same classes, usable as a cross-check and as the engine
/// for larger dimensions.
pub fn classify_bfs(d: usize) -> Result<Vec<ClassRecord>> {
    if d > 5 {
        return Err(Error::LimitExceeded(String::from(
            "classification limited to d <= 5",
        )));
    }
    let ctx = CanonicalContext::new(d);
    let npoints = 1usize << d;
    let mut level: Vec<u64> = alloc::vec![0];
    let mut full_dim: BTreeSet<u64> = BTreeSet::new();
    for _size in 1..=npoints {
        let next = augment_level(&ctx, &level);
        level = next.into_iter().collect();
        for &mask in &level {
            if mask.count_ones() as usize > d && mask_dimension(d, mask) == d {
                full_dim.insert(mask);
            }
        }
    }
    let signatures: BTreeSet<CanonicalSignature> = full_dim
        .into_iter()
        .map(|mask| CanonicalSignature(mask.reverse_bits()))
        .collect();
    Ok(signatures
        .into_iter()
        .map(|signature| {
            let representative = signature.to_polytope(d);
            ClassRecord {
                signature,
                n_vertices: representative.n_vertices(),
                dim: d,
                representative,
            }
        })
        .collect())
}

/// Survey row for one class: spectral data next to the exact expansion.
#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub signature: CanonicalSignature,
    pub dim: usize,
    pub n: usize,
    pub delta_max: usize,
    pub lambda2: f64,
    pub eigen_lower: f64,
    pub expansion: Rat,
    pub certificate: CutCertificate,
}

/// Builds the survey row for one polytope: skeleton via the LP oracle,
/// second eigenvalue, the eigenvalue lower bound, and the exact expansion
/// with its certificate.
pub fn analyze_polytope(
    signature: CanonicalSignature,
    dim: usize,
    p: &ZeroOnePolytope,
    tol: f64,
) -> Result<SurveyRow> {
    let g = p.skeleton()?;
    let m = build_walk_matrix(&g)?;
    let lambda2 = second_eigenvalue(&m, tol)?;
    let bounds = expansion_bounds(lambda2, m.delta_max())?;
    let (expansion, certificate) = edge_expansion_exact_with_limit(&g, 64)?;
    Ok(SurveyRow {
        signature,
        dim,
        n: p.n_vertices(),
        delta_max: m.delta_max(),
        lambda2,
        eigen_lower: bounds.lower,
        expansion,
        certificate,
    })
}

/// Fixed-width histogram with automatic range, as `(lo, hi, count)` rows.
pub fn histogram(values: &[f64], bin_width: f64) -> Vec<(f64, f64, usize)> {
    assert!(bin_width > 0.0);
    if values.is_empty() {
        return Vec::new();
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let first = libm::floor(min / bin_width) as i64;
    let last = libm::floor(max / bin_width) as i64;
    let mut bins: BTreeMap<i64, usize> = (first..=last).map(|b| (b, 0)).collect();
    for &v in values {
        let b = (libm::floor(v / bin_width) as i64).clamp(first, last);
        *bins.get_mut(&b).unwrap() += 1;
    }
    bins.into_iter()
        .map(|(b, count)| (b as f64 * bin_width, (b + 1) as f64 * bin_width, count))
        .collect()
}
