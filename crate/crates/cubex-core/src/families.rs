//! Generators for the polytope families used throughout: cubes, cubes with
//! a vertex removed, hypersimplices, stable set / matching / perfect
//! matching polytopes, spanning tree polytopes, and knapsack polytopes.
//!
//! Graph nodes (or edges) in input order define the polytope coordinates,
//! so wall patterns are reproducible. Vertex lists are emitted in
//! lexicographic order of the characteristic vector (coordinate 0 first).

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::polytope::{Vertex01, ZeroOnePolytope};

/// Hard cap on generated vertex counts.
pub const MAX_GENERATED_VERTICES: usize = 1 << 16;

fn sorted_polytope(d: usize, mut bits: Vec<u64>) -> Result<ZeroOnePolytope> {
    if bits.len() > MAX_GENERATED_VERTICES {
        return Err(Error::LimitExceeded(alloc::format!(
            "family would have {} vertices (limit {})",
            bits.len(),
            MAX_GENERATED_VERTICES
        )));
    }
    // Lexicographic by characteristic vector = ascending bit-reversed value.
    bits.sort_unstable_by_key(|b| b.reverse_bits());
    ZeroOnePolytope::new(d, bits.into_iter().map(Vertex01).collect())
}

/// All `2^d` points of the cube.
pub fn cube(d: usize) -> Result<ZeroOnePolytope> {
    if d > 16 {
        return Err(Error::LimitExceeded(String::from(
            "cube generator limited to d <= 16",
        )));
    }
    sorted_polytope(d, (0..1u64 << d).collect())
}

/// The cube with the all-ones vertex removed.
pub fn cube_minus_vertex(d: usize) -> Result<ZeroOnePolytope> {
    if d < 2 {
        return Err(Error::BadFamilyArgument(String::from(
            "cube_minus_vertex requires d >= 2",
        )));
    }
    if d > 16 {
        return Err(Error::LimitExceeded(String::from(
            "cube generator limited to d <= 16",
        )));
    }
    let all_ones = (1u64 << d) - 1;
    sorted_polytope(d, (0..1u64 << d).filter(|&p| p != all_ones).collect())
}

/// All points with exactly `rho` ones.
pub fn hypersimplex(d: usize, rho: usize) -> Result<ZeroOnePolytope> {
    if rho > d {
        return Err(Error::BadFamilyArgument(alloc::format!(
            "hypersimplex needs 0 <= rho <= d, got rho = {} with d = {}",
            rho,
            d
        )));
    }
    if d > 20 {
        return Err(Error::LimitExceeded(String::from(
            "hypersimplex generator limited to d <= 20",
        )));
    }
    let bits: Vec<u64> = (0..1u64 << d)
        .filter(|p| p.count_ones() as usize == rho)
        .collect();
    sorted_polytope(d, bits)
}

/// Characteristic vectors of all stable sets of `g` (including the empty
/// set); coordinates are the nodes of `g` in input order.
pub fn stable_set_polytope(g: &Graph) -> Result<ZeroOnePolytope> {
    let n = g.n();
    if n > 64 {
        return Err(Error::LimitExceeded(String::from(
            "stable set polytope limited to 64 nodes",
        )));
    }
    let mut out: Vec<u64> = Vec::new();
    let mut stack: Vec<(usize, u64)> = alloc::vec![(0, 0)];
    while let Some((next, set)) = stack.pop() {
        if next == n {
            out.push(set);
            if out.len() > MAX_GENERATED_VERTICES {
                return Err(Error::LimitExceeded(String::from(
                    "stable set enumeration exceeds 65536 vertices",
                )));
            }
            continue;
        }
        // Exclude `next`, or include it when no chosen neighbor exists.
        stack.push((next + 1, set));
        let conflict = g.neighbors(next).any(|v| set >> v & 1 == 1);
        if !conflict {
            stack.push((next + 1, set | 1 << next));
        }
    }
    sorted_polytope(n, out)
}

/// Line graph: one node per edge of `g`, in edge order; nodes adjacent iff
/// the underlying edges share an end.
pub fn line_graph(g: &Graph) -> Graph {
    let m = g.m();
    let mut edges = Vec::new();
    for i in 0..m {
        let (a, b) = g.edges()[i];
        for j in i + 1..m {
            let (c, d) = g.edges()[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i as u32, j as u32));
            }
        }
    }
    Graph::new(m, &edges).unwrap()
}

/// Characteristic vectors of all matchings of `g`; coordinates indexed by
/// the edges of `g` in input order.
pub fn matching_polytope(g: &Graph) -> Result<ZeroOnePolytope> {
    stable_set_polytope(&line_graph(g))
}

/// Characteristic vectors of the perfect matchings of `g`.
pub fn perfect_matching_polytope(g: &Graph) -> Result<ZeroOnePolytope> {
    let all = matching_polytope(g)?;
    let want = g.n() / 2;
    let bits: Vec<u64> = all
        .vertices()
        .iter()
        .filter(|v| g.n().is_multiple_of(2) && v.weight() == want)
        .map(|v| v.0)
        .collect();
    if bits.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    sorted_polytope(g.m(), bits)
}

/// Characteristic vectors of the spanning trees of a connected graph;
/// coordinates indexed by the edges of `g` in input order.
pub fn spanning_tree_polytope(g: &Graph) -> Result<ZeroOnePolytope> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::DisconnectedInput);
    }
    let n = g.n();
    let m = g.m();
    if m > 64 {
        return Err(Error::LimitExceeded(String::from(
            "spanning tree polytope limited to 64 edges",
        )));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    enumerate_trees(g, 0, n - 1, &mut chosen, &mut out)?;
    sorted_polytope(m, out)
}

fn enumerate_trees(
    g: &Graph,
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<u64>,
) -> Result<()> {
    if need == 0 {
        // n-1 acyclic edges on n nodes form a spanning tree.
        out.push(chosen.iter().fold(0u64, |acc, &e| acc | 1 << e));
        if out.len() > MAX_GENERATED_VERTICES {
            return Err(Error::LimitExceeded(String::from(
                "spanning tree enumeration exceeds 65536 vertices",
            )));
        }
        return Ok(());
    }
    if g.m() - start < need {
        return Ok(());
    }
    for e in start..g.m() {
        if acyclic_with(g, chosen, e) {
            chosen.push(e);
            enumerate_trees(g, e + 1, need - 1, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

fn acyclic_with(g: &Graph, chosen: &[usize], extra: usize) -> bool {
    // Union-find over the chosen edges plus the candidate.
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &e in chosen.iter().chain(core::iter::once(&extra)) {
        let (u, v) = g.edges()[e];
        let ru = find(&mut parent, u as usize);
        let rv = find(&mut parent, v as usize);
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// All 0/1 points `v` with `sum w_i v_i <= capacity`.
pub fn knapsack_polytope(weights: &[u64], capacity: u64) -> Result<ZeroOnePolytope> {
    let d = weights.len();
    if d > 16 {
        return Err(Error::LimitExceeded(String::from(
            "knapsack generator limited to d <= 16",
        )));
    }
    let bits: Vec<u64> = (0..1u64 << d)
        .filter(|&p| {
            let total: u64 = (0..d)
                .filter(|&i| p >> i & 1 == 1)
                .map(|i| weights[i])
                .sum();
            total <= capacity
        })
        .collect();
    sorted_polytope(d, bits)
}

/// Combinatorial adjacency fast paths, each valid for specific families and
/// cross-checked against the LP oracle in the test suite.
#[derive(Clone, Debug)]
pub enum AdjacencyRule {
    /// Cube: neighbors differ in exactly one coordinate.
    HammingOne,
    /// Matroid basis exchange (hypersimplices, spanning tree polytopes):
    /// symmetric difference of size two.
    SymDiffTwo,
    /// Stable set polytopes: the symmetric difference induces a connected
    /// subgraph of the carried graph. Matching polytopes use this rule on
    /// the line graph.
    ChvatalStableSet(Graph),
}

impl AdjacencyRule {
    pub fn adjacent(&self, a: Vertex01, b: Vertex01) -> bool {
        let diff = a.0 ^ b.0;
        if diff == 0 {
            return false;
        }
        match self {
            AdjacencyRule::HammingOne => diff.count_ones() == 1,
            AdjacencyRule::SymDiffTwo => diff.count_ones() == 2,
            AdjacencyRule::ChvatalStableSet(g) => induced_connected(g, diff),
        }
    }
}

fn induced_connected(g: &Graph, node_mask: u64) -> bool {
    let start = node_mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = alloc::vec![start];
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            let bit = 1u64 << v;
            if node_mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(v);
            }
        }
    }
    seen == node_mask
}

/// Skeleton built from a combinatorial rule instead of the LP oracle.
pub fn skeleton_with_rule(p: &ZeroOnePolytope, rule: &AdjacencyRule) -> Result<Graph> {
    if p.n_vertices() == 0 {
        return Err(Error::EmptyPolytope);
    }
    let n = p.n_vertices();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rule.adjacent(p.vertices()[u], p.vertices()[v]) {
                edges.push((u as u32, v as u32));
            }
        }
    }
    Graph::new(n, &edges)
}
