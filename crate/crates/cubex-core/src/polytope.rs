//! 0/1-polytopes: vertex sets in `{0,1}^d`, the exact LP adjacency oracle,
//! skeleton construction, dimension, and cube-isometry canonical forms.
//!
//! Every point of a 0/1 point set is a vertex of its convex hull, so no
//! redundancy removal is ever needed; vertex order is preserved and all
//! indices refer to input order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{self, EqForm, LpOutcome};
use crate::rat::{rat, Rat};

/// Largest ambient dimension representable (coordinates live in a `u64`).
pub const MAX_DIMENSION: usize = 64;

/// Default cap on `d` for canonical forms (group size `2^d * d!`).
pub const DEFAULT_CANONICAL_LIMIT: usize = 6;

/// A point of `{0,1}^d`; coordinate `i` is bit `i`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Vertex01(pub u64);

impl Vertex01 {
    pub fn coord(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Number of one-coordinates.
    pub fn weight(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Parses a row of `d` characters from `{0,1}`, coordinate 0 first.
    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > MAX_DIMENSION {
            return None;
        }
        let mut bits = 0u64;
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => bits |= 1 << i,
                _ => return None,
            }
        }
        Some(Vertex01(bits))
    }

    /// Renders the `d` coordinates as a 0/1 string, coordinate 0 first.
    pub fn render(self, d: usize) -> String {
        (0..d)
            .map(|i| if self.coord(i) { '1' } else { '0' })
            .collect()
    }
}

/// A finite set of distinct points of `{0,1}^d`; all of them are vertices
/// of the convex hull.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroOnePolytope {
    d: usize,
    vertices: Vec<Vertex01>,
}

impl ZeroOnePolytope {
    pub fn new(d: usize, vertices: Vec<Vertex01>) -> Result<Self> {
        if d > MAX_DIMENSION {
            return Err(Error::LimitExceeded(alloc::format!(
                "ambient dimension {} exceeds supported maximum {}",
                d,
                MAX_DIMENSION
            )));
        }
        let mask = if d == 64 { !0u64 } else { (1u64 << d) - 1 };
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if v.0 & !mask != 0 {
                return Err(Error::BadFamilyArgument(alloc::format!(
                    "vertex has a coordinate beyond dimension {}",
                    d
                )));
            }
            if !seen.insert(v.0) {
                return Err(Error::BadFamilyArgument(String::from("duplicate vertex")));
            }
        }
        Ok(ZeroOnePolytope { d, vertices })
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex01] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Result<Vertex01> {
        self.vertices.get(i).copied().ok_or(Error::BadIndex(i))
    }

    /// Map from vertex bits to index, for callers that resolve points often.
    pub fn index_map(&self) -> BTreeMap<u64, u32> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.0, i as u32))
            .collect()
    }

    pub fn index_of(&self, bits: u64) -> Option<u32> {
        self.vertices
            .iter()
            .position(|v| v.0 == bits)
            .map(|i| i as u32)
    }

    /// Rank over the rationals of `{v - v0}`, by exact elimination.
    pub fn dimension(&self) -> Result<usize> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let v0 = self.vertices[0];
        let rows: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| {
                (0..self.d)
                    .map(|i| v.coord(i) as i64 - v0.coord(i) as i64)
                    .collect()
            })
            .collect();
        Ok(rank_fraction_free(rows, self.d))
    }

    /// `Some(rho)` iff every vertex has exactly `rho` ones.
    pub fn is_uniform(&self) -> Option<usize> {
        let first = self.vertices.first()?.weight();
        if self.vertices.iter().all(|v| v.weight() == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Adjacency of vertices `u` and `v`: the segment is a 1-face iff, over
    /// exact rationals, the maximum of `sum_{w not in {u,v}} lambda_w`
    /// subject to `sum lambda_w w = (u+v)/2, sum lambda_w = 1, lambda >= 0`
    /// is zero.
    pub fn adjacent(&self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::IdenticalVertices);
        }
        let n = self.vertices.len();
        if u >= n {
            return Err(Error::BadIndex(u));
        }
        if v >= n {
            return Err(Error::BadIndex(v));
        }
        let vu = self.vertices[u];
        let vv = self.vertices[v];

        // Rows: one per coordinate (scaled by 2 to keep integers), plus the
        // convex-combination row.
        let mut a = Vec::with_capacity(self.d + 1);
        let mut b = Vec::with_capacity(self.d + 1);
        for i in 0..self.d {
            let row: Vec<Rat> = self
                .vertices
                .iter()
                .map(|w| rat(2 * w.coord(i) as i64, 1))
                .collect();
            a.push(row);
            b.push(rat(vu.coord(i) as i64 + vv.coord(i) as i64, 1));
        }
        a.push(vec![Rat::one(); n]);
        b.push(Rat::one());

        // Maximize third-vertex mass = minimize its negation; any strictly
        // negative objective already decides the answer.
        let c: Vec<Rat> = (0..n)
            .map(|w| {
                if w == u || w == v {
                    Rat::zero()
                } else {
                    -Rat::one()
                }
            })
            .collect();
        let zero = Rat::zero();
        match lp::solve(&EqForm { a, b, c }, Some(&zero)) {
            LpOutcome::Optimal(z) => Ok(z.is_zero()),
            LpOutcome::BelowCutoff => Ok(false),
            // (u+v)/2 is always a feasible point and mass is bounded by 1.
            LpOutcome::Infeasible | LpOutcome::Unbounded => unreachable!(),
        }
    }

    /// The 1-skeleton via the LP oracle; edges in sorted index order.
    pub fn skeleton(&self) -> Result<Graph> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        let n = self.vertices.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v)? {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        Graph::new(n, &edges)
    }

    /// Lexicographically smallest characteristic vector over the `2^d` cube
    /// points among all coordinate permutations composed with flips.
    pub fn canonical_form(&self) -> Result<CanonicalSignature> {
        self.canonical_form_with_limit(DEFAULT_CANONICAL_LIMIT)
    }

    pub fn canonical_form_with_limit(&self, limit: usize) -> Result<CanonicalSignature> {
        if self.d > limit {
            return Err(Error::LimitExceeded(String::from(
                "canonicalization limit exceeded",
            )));
        }
        let ctx = CanonicalContext::new(self.d);
        Ok(ctx.canonical_of_mask(self.point_mask()))
    }

    /// Characteristic bit mask over cube points (point index = vertex bits).
    pub fn point_mask(&self) -> u64 {
        debug_assert!(self.d <= 6);
        let mut mask = 0u64;
        for v in &self.vertices {
            mask |= 1u64 << v.0;
        }
        mask
    }

    /// `true` iff the skeleton is `k`-regular with `k = dimension`.
    pub fn is_simple(&self) -> Result<bool> {
        let g = self.skeleton()?;
        self.is_simple_with_skeleton(&g)
    }

    pub fn is_simple_with_skeleton(&self, skeleton: &Graph) -> Result<bool> {
        let dim = self.dimension()?;
        Ok(skeleton.regular_degree() == Some(dim))
    }

    /// Applies a cube isometry (permute coordinates, then flip) to every
    /// vertex; preserves vertex order.
    pub fn apply_isometry(&self, perm: &[usize], flips: u64) -> Result<ZeroOnePolytope> {
        debug_assert_eq!(perm.len(), self.d);
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let mut out = 0u64;
                for (i, &src) in perm.iter().enumerate() {
                    if v.coord(src) {
                        out |= 1 << i;
                    }
                }
                Vertex01(out ^ flips)
            })
            .collect();
        ZeroOnePolytope::new(self.d, vertices)
    }
}

/// Builds a polytope from 0/1 strings, coordinate 0 first.
pub fn polytope_from_strs(d: usize, rows: &[&str]) -> Result<ZeroOnePolytope> {
    let mut vertices = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != d {
            return Err(Error::BadFamilyArgument(alloc::format!(
                "vertex string `{}` does not have {} coordinates",
                row,
                d
            )));
        }
        let v = Vertex01::parse(row).ok_or_else(|| {
            Error::BadFamilyArgument(alloc::format!("bad vertex string `{}`", row))
        })?;
        vertices.push(v);
    }
    ZeroOnePolytope::new(d, vertices)
}

fn rank_fraction_free(rows: Vec<Vec<i64>>, cols: usize) -> usize {
    // Division-free cross-multiplication elimination over i128. Entries
    // grow at most by squaring per pivot step; with 0/1 differences and
    // the dimensions supported here that stays far inside range. Falls
    // back to BigInt arithmetic if a product would overflow.
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let piv = m[rank][col];
        for r in rank + 1..m.len() {
            if m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col];
            for c in col + 1..cols {
                let prod1 = piv.checked_mul(m[r][c]);
                let prod2 = factor.checked_mul(m[rank][c]);
                match (prod1, prod2) {
                    (Some(p1), Some(p2)) => match p1.checked_sub(p2) {
                        Some(v) => m[r][c] = v,
                        None => return rank_bigint(rows, cols),
                    },
                    _ => return rank_bigint(rows, cols),
                }
            }
            m[r][col] = 0;
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn rank_bigint(rows: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let piv = m[rank][col].clone();
            for c in col + 1..cols {
                let val = &piv * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = val;
            }
            m[r][col] = BigInt::zero();
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Canonical signature: the lexicographically smallest characteristic
/// vector `b_0 .. b_{2^d - 1}` over cube points, stored with `b_p` at bit
/// `63 - p` so that numeric order equals lexicographic order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CanonicalSignature(pub u64);

impl CanonicalSignature {
    pub fn bit(self, p: usize) -> bool {
        self.0 >> (63 - p) & 1 == 1
    }

    /// 0/1 string of length `2^d`, point 0 first.
    pub fn render(self, d: usize) -> String {
        (0..1usize << d)
            .map(|p| if self.bit(p) { '1' } else { '0' })
            .collect()
    }

    /// The canonical representative as a vertex set (points in index order).
    pub fn to_polytope(self, d: usize) -> ZeroOnePolytope {
        let vertices: Vec<Vertex01> = (0..1u64 << d)
            .filter(|&p| self.bit(p as usize))
            .map(Vertex01)
            .collect();
        ZeroOnePolytope::new(d, vertices).unwrap()
    }
}

/// Precomputed point-mapping tables for the full isometry group of the
/// `d`-cube (`2^d * d!` elements). Reused across many canonicalizations.
pub struct CanonicalContext {
    d: usize,
    /// One table per group element: `table[p]` = image of cube point `p`.
    tables: Vec<Vec<u8>>,
}

impl CanonicalContext {
    pub fn new(d: usize) -> Self {
        debug_assert!(d <= 6);
        let npoints = 1usize << d;
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..d).collect();
        permutations(&mut cur, 0, &mut perms);
        let mut tables = Vec::with_capacity(perms.len() << d);
        for perm in &perms {
            for flips in 0..npoints as u64 {
                let mut table = vec![0u8; npoints];
                for (p, slot) in table.iter_mut().enumerate() {
                    let mut q = 0u64;
                    for (i, &src) in perm.iter().enumerate() {
                        if p as u64 >> src & 1 == 1 {
                            q |= 1 << i;
                        }
                    }
                    *slot = (q ^ flips) as u8;
                }
                tables.push(table);
            }
        }
        CanonicalContext { d, tables }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn group_size(&self) -> usize {
        self.tables.len()
    }

    /// Point-mapping table of group element `g`.
    pub fn table(&self, g: usize) -> &[u8] {
        &self.tables[g]
    }

    /// Canonical signature of a characteristic point mask.
    pub fn canonical_of_mask(&self, mask: u64) -> CanonicalSignature {
        let mut best = u64::MAX;
        for table in &self.tables {
            let mut img = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                img |= 1u64 << table[p];
            }
            let key = img.reverse_bits();
            if key < best {
                best = key;
            }
        }
        CanonicalSignature(best)
    }

    /// Image of a point mask under group element `g` (by table index).
    pub fn apply(&self, g: usize, mask: u64) -> u64 {
        let table = &self.tables[g];
        let mut img = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            img |= 1u64 << table[p];
        }
        img
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}
