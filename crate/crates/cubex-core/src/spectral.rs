//! The canonical lazy random walk on a graph: exact transition matrix,
//! second-largest eigenvalue, the eigenvalue sandwich on the edge
//! expansion, and exact distribution iteration.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rat::{rat, rat_int, to_f64, Rat};

/// Iteration cap for the deflated power method.
pub const POWER_ITERATION_CAP: usize = 1_000_000;

/// Dense size threshold below which a full Jacobi eigensolve is used.
pub const JACOBI_LIMIT: usize = 64;

/// Default tolerance for eigenvalue computations.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Symmetric doubly-stochastic walk matrix: off-diagonal `1/(2 Dmax)` on
/// edges, diagonal `1/2 + (Dmax - deg(v))/(2 Dmax)`; all eigenvalues lie
/// in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    n: usize,
    delta_max: usize,
    entries: Vec<Vec<Rat>>,
}

impl TransitionMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_max(&self) -> usize {
        self.delta_max
    }

    pub fn entry(&self, v: usize, w: usize) -> &Rat {
        &self.entries[v][w]
    }

    pub fn row(&self, v: usize) -> &[Rat] {
        &self.entries[v]
    }

    fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(to_f64).collect())
            .collect()
    }
}

/// Builds the walk matrix; requires at least two nodes and one edge.
pub fn build_walk_matrix(g: &Graph) -> Result<TransitionMatrix> {
    let n = g.n();
    if n < 2 || g.m() == 0 {
        return Err(Error::WalkUndefined);
    }
    let delta_max = g.max_degree();
    let tau = rat(1, 2 * delta_max as i64);
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for &(u, v) in g.edges() {
        entries[u as usize][v as usize] = tau.clone();
        entries[v as usize][u as usize] = tau.clone();
    }
    for (v, row) in entries.iter_mut().enumerate() {
        let deg = g.degree(v) as i64;
        row[v] = rat(1, 2) + rat(delta_max as i64 - deg, 1) * &tau;
    }
    Ok(TransitionMatrix {
        n,
        delta_max,
        entries,
    })
}

/// Second-largest eigenvalue of the walk matrix, within `tol`.
///
/// The matrix entries are exact; they are converted to floating point once.
/// Up to [`JACOBI_LIMIT`] nodes a full cyclic Jacobi eigensolve is used;
/// beyond that, power iteration on the complement of the known top
/// eigenpair (eigenvalue 1, the uniform vector).
pub fn second_eigenvalue(m: &TransitionMatrix, tol: f64) -> Result<f64> {
    assert!(tol > 0.0, "tolerance must be positive");
    let a = m.to_f64();
    if m.n <= JACOBI_LIMIT {
        let mut eig = jacobi_eigenvalues(a, tol);
        eig.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
        Ok(eig[1])
    } else {
        deflated_power_iteration(&a, tol)
    }
}

/// Full symmetric eigensolve by cyclic Jacobi sweeps; returns the
/// (unsorted) eigenvalues.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>, tol: f64) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let threshold = (tol * tol).max(1e-30);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if libm::fabs(apq) < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    1.0 / (theta - libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

fn project_out_uniform(x: &mut [f64]) {
    let mean: f64 = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

fn deflated_power_iteration(a: &[Vec<f64>], tol: f64) -> Result<f64> {
    let n = a.len();
    // Deterministic pseudo-random start vector.
    let mut state = 0x243f6a8885a308d3u64;
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    project_out_uniform(&mut x);
    let norm = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
    for v in x.iter_mut() {
        *v /= norm;
    }
    let mut prev = f64::MAX;
    let mut best = 0.0;
    for _ in 0..POWER_ITERATION_CAP {
        let mut y: Vec<f64> = (0..n)
            .map(|i| a[i].iter().zip(&x).map(|(aij, xj)| aij * xj).sum())
            .collect();
        project_out_uniform(&mut y);
        let lambda: f64 = x.iter().zip(&y).map(|(xi, yi)| xi * yi).sum();
        let norm = libm::sqrt(y.iter().map(|v| v * v).sum::<f64>());
        if norm < 1e-300 {
            // The walk annihilates everything orthogonal to uniform.
            return Ok(0.0);
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        best = lambda;
        if libm::fabs(lambda - prev) < tol {
            return Ok(lambda.max(0.0));
        }
        prev = lambda;
    }
    Err(Error::NoConvergence(best))
}

/// The eigenvalue sandwich: `lower = (1 - lambda2) Dmax`,
/// `upper = sqrt(8 (1 - lambda2)) Dmax`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ExpansionBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn expansion_bounds(lambda2: f64, delta_max: usize) -> Result<ExpansionBounds> {
    let lambda2 = if lambda2 < 0.0 && lambda2 > -1e-9 {
        0.0
    } else {
        lambda2
    };
    if !(0.0..1.0).contains(&lambda2) {
        return Err(Error::DegenerateSpectrum);
    }
    let gap = 1.0 - lambda2;
    Ok(ExpansionBounds {
        lower: gap * delta_max as f64,
        upper: libm::sqrt(8.0 * gap) * delta_max as f64,
    })
}

/// Spectral summary of one graph, as serialized by the reporting layer.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub n: usize,
    pub delta_max: usize,
    pub lambda2: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub tol: f64,
}

/// Builds the full report. Disconnected graphs are reported with
/// `lambda2 = 1` and both bounds zero instead of an error.
pub fn spectral_report(g: &Graph, tol: f64) -> Result<SpectralReport> {
    let m = build_walk_matrix(g)?;
    if !g.is_connected() {
        return Ok(SpectralReport {
            n: g.n(),
            delta_max: m.delta_max(),
            lambda2: 1.0,
            lower_bound: 0.0,
            upper_bound: 0.0,
            tol,
        });
    }
    let lambda2 = second_eigenvalue(&m, tol)?;
    let bounds = expansion_bounds(lambda2, m.delta_max())?;
    Ok(SpectralReport {
        n: g.n(),
        delta_max: m.delta_max(),
        lambda2,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        tol,
    })
}

/// `pi0 * P^steps` by exact rational iteration.
pub fn walk_distribution(m: &TransitionMatrix, pi0: &[Rat], steps: usize) -> Vec<Rat> {
    assert_eq!(pi0.len(), m.n, "distribution length must match node count");
    let total: Rat = pi0.iter().sum();
    assert!(
        total == rat_int(1) && pi0.iter().all(|x| !x.is_negative()),
        "pi0 must be a probability distribution"
    );
    let mut cur: Vec<Rat> = pi0.to_vec();
    for _ in 0..steps {
        let mut next = vec![Rat::zero(); m.n];
        for (v, weight) in cur.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            for (w, p) in m.entries[v].iter().enumerate() {
                if !p.is_zero() {
                    next[w] += weight * p;
                }
            }
        }
        cur = next;
    }
    cur
}

/// Exact total-variation style L1 distance to the uniform distribution.
pub fn l1_distance_to_uniform(dist: &[Rat]) -> Rat {
    let n = dist.len() as i64;
    let u = rat(1, n);
    dist.iter().map(|x| (x - &u).abs()).sum()
}
