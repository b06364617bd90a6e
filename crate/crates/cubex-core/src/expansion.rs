//! Exact edge expansion with cut certificates, diameter, brute-force max
//! cut, the complement-doubling reduction from max cut, and the generic
//! all-pairs-flow lower bound.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rat::{rat, rat_int, Rat};

/// Default cap for subset brute force.
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

/// A witnessed cut: `ratio = cut_size / min(|S|, n - |S|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCertificate {
    /// Sorted node indices of the witness side.
    pub subset: Vec<u32>,
    pub cut_size: u64,
    pub ratio: Rat,
}

/// Exact-rational flow values on directed arcs; arcs are ordered node
/// pairs lying on skeleton edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowField {
    arcs: BTreeMap<(u32, u32), Rat>,
}

impl FlowField {
    pub fn new() -> Self {
        FlowField {
            arcs: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, from: u32, to: u32, amount: Rat) {
        if amount.is_zero() {
            return;
        }
        *self.arcs.entry((from, to)).or_insert_with(Rat::zero) += amount;
    }

    pub fn value(&self, from: u32, to: u32) -> Rat {
        self.arcs
            .get(&(from, to))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.arcs.iter()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Largest arc value, if any arc carries flow.
    pub fn max_value(&self) -> Option<Rat> {
        self.arcs.values().max().cloned()
    }

    pub fn merge(&mut self, other: &FlowField) {
        for (&(u, v), amount) in other.iter() {
            self.add(u, v, amount.clone());
        }
    }
}

/// `|delta(S)|`: the number of edges with exactly one end in `S`.
pub fn cut_size(g: &Graph, s: &[u32]) -> Result<u64> {
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s {
        if v as usize >= n {
            return Err(Error::BadIndex(v as usize));
        }
        in_s[v as usize] = true;
    }
    let count = in_s.iter().filter(|&&b| b).count();
    if count == 0 || count == n {
        return Err(Error::ImproperCut);
    }
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v)| in_s[u as usize] != in_s[v as usize])
        .count() as u64)
}

fn single_word_adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.adjacency_row(v).words()[0]).collect()
}

fn mask_to_indices(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    out
}

/// `(size, lexicographic)` order on witness sets, used for deterministic
/// tie-breaking among optimal cuts.
fn witness_less(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return a.len() < b.len();
    }
    a < b
}

struct BestCut {
    cut: u64,
    den: u64,
    witness: Vec<u32>,
}

impl BestCut {
    fn offer(&mut self, cut: u64, den: u64, witness_mask: u64, full: u64) {
        // Compare cut/den against the stored ratio.
        if cut as u128 * self.den as u128 > self.cut as u128 * den as u128 {
            return;
        }
        let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(2);
        let size = witness_mask.count_ones() as u64;
        let other = full & !witness_mask;
        if size <= other.count_ones() as u64 {
            candidates.push(mask_to_indices(witness_mask));
        }
        if other.count_ones() as u64 <= size {
            candidates.push(mask_to_indices(other));
        }
        for cand in candidates {
            let lhs = cut as u128 * self.den as u128;
            let rhs = self.cut as u128 * den as u128;
            if lhs < rhs || (lhs == rhs && witness_less(&cand, &self.witness)) {
                self.cut = cut;
                self.den = den;
                self.witness = cand;
            }
        }
    }
}

/// Minimum of `|delta(S)| / min(|S|, n - |S|)` over proper nonempty `S`,
/// with a deterministic witness (smallest ratio, then smallest `|S|`, then
/// lexicographically smallest set).
pub fn edge_expansion_exact(g: &Graph) -> Result<(Rat, CutCertificate)> {
    edge_expansion_exact_with_limit(g, DEFAULT_BRUTE_FORCE_LIMIT)
}

pub fn edge_expansion_exact_with_limit(g: &Graph, limit: usize) -> Result<(Rat, CutCertificate)> {
    let n = g.n();
    if n <= 1 {
        return Err(Error::ExpansionUndefined);
    }
    if n > limit || n > 64 {
        return Err(Error::LimitExceeded(alloc::format!(
            "instance too large: {} nodes exceeds brute-force limit {}",
            n,
            limit.min(64)
        )));
    }

    if !g.is_connected() {
        // Expansion 0; the certificate is a connected component (or its
        // complement when the component is the larger side).
        let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
        let mut best: Option<Vec<u32>> = None;
        for comp in g.components() {
            let mask = comp.iter().fold(0u64, |acc, &v| acc | 1 << v);
            for cand_mask in [mask, full & !mask] {
                let cand = mask_to_indices(cand_mask);
                if cand.len() > n - cand.len() {
                    continue;
                }
                if best.as_ref().is_none_or(|b| witness_less(&cand, b)) {
                    best = Some(cand);
                }
            }
        }
        let witness = best.unwrap();
        let cert = CutCertificate {
            subset: witness,
            cut_size: 0,
            ratio: Rat::zero(),
        };
        return Ok((Rat::zero(), cert));
    }

    let adj = single_word_adjacency(g);
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    // Every unordered cut has exactly one side avoiding node n-1; Gray-code
    // enumeration over those sides updates the cut size in O(deg) per step.
    let mut s_mask = 0u64;
    let mut size = 0i64;
    let mut cut = 0i64;
    let mut best = BestCut {
        cut: u64::MAX,
        den: 1,
        witness: Vec::new(),
    };
    let steps = 1u64 << (n - 1);
    for m in 1..steps {
        let v = m.trailing_zeros() as usize;
        let vm = 1u64 << v;
        let inter = (adj[v] & s_mask).count_ones() as i64;
        let delta = g.degree(v) as i64 - 2 * inter;
        if s_mask & vm == 0 {
            s_mask |= vm;
            size += 1;
            cut += delta;
        } else {
            s_mask &= !vm;
            size -= 1;
            cut -= delta;
        }
        let min_side = size.min(n as i64 - size) as u64;
        best.offer(cut as u64, min_side, s_mask, full);
    }

    let ratio = rat(best.cut as i64, best.den as i64);
    let cert = CutCertificate {
        subset: best.witness,
        cut_size: best.cut,
        ratio: ratio.clone(),
    };
    Ok((ratio, cert))
}

/// Maximum over pairs of the shortest-path distance.
pub fn diameter(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::InfiniteDiameter);
    }
    let mut best = 0;
    for src in 0..g.n() {
        for &d in &g.bfs_distances(src) {
            if d == u32::MAX {
                return Err(Error::InfiniteDiameter);
            }
            best = best.max(d as usize);
        }
    }
    Ok(best)
}

/// Maximum unweighted cut with a witness; deterministic tie-breaking as in
/// [`edge_expansion_exact`].
pub fn maxcut_bruteforce(g: &Graph) -> Result<(u64, Vec<u32>)> {
    maxcut_bruteforce_with_limit(g, DEFAULT_BRUTE_FORCE_LIMIT)
}

pub fn maxcut_bruteforce_with_limit(g: &Graph, limit: usize) -> Result<(u64, Vec<u32>)> {
    let n = g.n();
    if n > limit || n > 64 {
        return Err(Error::LimitExceeded(alloc::format!(
            "instance too large: {} nodes exceeds brute-force limit {}",
            n,
            limit.min(64)
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = single_word_adjacency(g);
    let mut s_mask = 0u64;
    let mut cut = 0i64;
    let mut best_cut = 0u64;
    let mut best_witness: Vec<u32> = Vec::new();
    let steps = if n == 1 { 1u64 } else { 1u64 << (n - 1) };
    for m in 1..steps {
        let v = m.trailing_zeros() as usize;
        let vm = 1u64 << v;
        let inter = (adj[v] & s_mask).count_ones() as i64;
        let delta = g.degree(v) as i64 - 2 * inter;
        if s_mask & vm == 0 {
            s_mask |= vm;
            cut += delta;
        } else {
            s_mask &= !vm;
            cut -= delta;
        }
        if cut as u64 > best_cut {
            best_cut = cut as u64;
            best_witness = mask_to_indices(s_mask);
        } else if cut as u64 == best_cut && best_cut > 0 {
            let cand = mask_to_indices(s_mask);
            if witness_less(&cand, &best_witness) {
                best_witness = cand;
            }
        }
    }
    Ok((best_cut, best_witness))
}

/// Output of the complement-doubling construction.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    /// Graph on `V (original) + W (padding)`, containing every possible
    /// edge except those of the input.
    pub g_prime: Graph,
    pub original_n: usize,
}

/// Builds, for `G` on `n` nodes, the graph on `2n` nodes whose edge set is
/// all pairs minus `E(G)`. Its edge expansion equals `n - maxcut(G)/n`.
pub fn np_reduction(g: &Graph) -> ReductionOutput {
    let n = g.n();
    let total = 2 * n;
    let mut edges = Vec::new();
    for u in 0..total as u32 {
        for v in u + 1..total as u32 {
            let both_original = (u as usize) < n && (v as usize) < n;
            if both_original && g.has_edge(u as usize, v as usize) {
                continue;
            }
            edges.push((u, v));
        }
    }
    ReductionOutput {
        g_prime: Graph::new(total, &edges).unwrap(),
        original_n: n,
    }
}

/// The all-pairs-flow lower bound `n / (2 phi_max)`, valid whenever the
/// supplied flow family routes one unit between every ordered node pair.
pub fn certified_bound(n: usize, phi_max: &Rat) -> Result<Rat> {
    if !phi_max.is_positive() {
        return Err(Error::NonpositiveFlow);
    }
    Ok(rat_int(n as i64) / (rat_int(2) * phi_max))
}

/// Checks that `f` moves one unit from every other node to `t`: divergence
/// (inflow minus outflow) is `n - 1` at `t` and `-1` elsewhere, with all
/// arc values nonnegative and all arcs on edges of `g`.
pub fn validate_target_flow(g: &Graph, f: &FlowField, t: usize) -> bool {
    let n = g.n();
    if t >= n {
        return false;
    }
    let mut div = vec![Rat::zero(); n];
    for (&(u, v), amount) in f.iter() {
        if amount.is_negative() {
            return false;
        }
        if !g.has_edge(u as usize, v as usize) {
            return false;
        }
        div[v as usize] += amount;
        div[u as usize] -= amount;
    }
    for (x, d) in div.iter().enumerate() {
        let want = if x == t {
            rat_int(n as i64 - 1)
        } else {
            rat_int(-1)
        };
        if *d != want {
            return false;
        }
    }
    true
}
