//! Affine edge-cubes, spanned walls, mirror images, the mirror-wall
//! counting bound, the exact antipodal cube flow, and the certificate that
//! sums cube flows over uniquely edge-cube spanned walls.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expansion::FlowField;
use crate::graph::Graph;
use crate::polytope::ZeroOnePolytope;
use crate::rat::Rat;
use crate::walls::{enumerate_walls, Sigma, Wall};

/// Cap on the XOR-support size searched for antipodal cubes.
pub const DEFAULT_CUBE_SEARCH_LIMIT: usize = 16;

/// Cap on wall size for exhaustive unique-spanning verification.
pub const DEFAULT_UNIQUE_SPAN_LIMIT: usize = 32;

/// A set of `2^k` vertices `base xor (eps_1 z_1) xor ... xor (eps_k z_k)`
/// with pairwise orthogonal 0/1 generators, on which the skeleton induces
/// exactly the cube graph `Q_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEdgeCube {
    /// Vertex index of the base point.
    pub base: u32,
    /// Pairwise disjoint nonzero generator bit vectors, sorted.
    pub generators: Vec<u64>,
}

impl AffineEdgeCube {
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// The `2^k` point bit patterns, indexed by the epsilon counter.
    fn points_from(&self, base_bits: u64) -> Vec<u64> {
        let k = self.generators.len();
        (0..1u64 << k)
            .map(|eps| {
                let mut x = base_bits;
                for (i, z) in self.generators.iter().enumerate() {
                    if eps >> i & 1 == 1 {
                        x ^= z;
                    }
                }
                x
            })
            .collect()
    }

    /// Sorted vertex indices of the cube points; `None` if a point is not
    /// a vertex of `p`.
    pub fn point_indices(&self, p: &ZeroOnePolytope) -> Option<Vec<u32>> {
        let index = p.index_map();
        let base_bits = p.vertices().get(self.base as usize)?.0;
        let mut out: Vec<u32> = self
            .points_from(base_bits)
            .into_iter()
            .map(|bits| index.get(&bits).copied())
            .collect::<Option<Vec<u32>>>()?;
        out.sort_unstable();
        Some(out)
    }
}

/// `x xor t(W)` where `t(W)` has ones at the free coordinates of the wall;
/// the result need not be a vertex.
pub fn mirror_image(wall: &Wall, x: u64) -> u64 {
    x ^ wall.sigma.stars()
}

/// The wall of the minimal cube face containing the given vertices: fixed
/// where all agree, free elsewhere; equals the intersection of all walls
/// containing the set.
pub fn spanned_wall(p: &ZeroOnePolytope, a: &[u32]) -> Result<Wall> {
    if a.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    let mut bits = Vec::with_capacity(a.len());
    for &i in a {
        bits.push(p.vertex(i as usize)?.0);
    }
    let sigma = Sigma::from_member_bits(p.ambient_dim(), bits.into_iter());
    Ok(crate::walls::wall_from_sigma(p, &sigma).expect("the spanning set itself matches"))
}

/// Verifies the three edge-cube invariants against the skeleton.
pub fn is_edge_cube(p: &ZeroOnePolytope, g: &Graph, c: &AffineEdgeCube) -> bool {
    let k = c.generators.len();
    assert!(k <= 16, "edge-cube check limited to k <= 16");
    if c.base as usize >= p.n_vertices() {
        return false;
    }
    // Pairwise orthogonal, nonzero generators.
    for (i, zi) in c.generators.iter().enumerate() {
        if *zi == 0 {
            return false;
        }
        for zj in &c.generators[i + 1..] {
            if zi & zj != 0 {
                return false;
            }
        }
    }
    // All 2^k points are vertices.
    let index = p.index_map();
    let base_bits = p.vertices()[c.base as usize].0;
    let points = c.points_from(base_bits);
    let mut ids = Vec::with_capacity(points.len());
    for bits in &points {
        match index.get(bits) {
            Some(&i) => ids.push(i as usize),
            None => return false,
        }
    }
    // Induced skeleton equals Q_k: adjacency iff epsilon vectors differ in
    // exactly one position, with no extra chords.
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            let want = ((a ^ b) as u64).count_ones() == 1;
            if g.has_edge(ids[a], ids[b]) != want {
                return false;
            }
        }
    }
    true
}

/// Generator candidates at `x`: differences to skeleton neighbors that
/// stay inside `support`.
fn candidate_blocks(p: &ZeroOnePolytope, g: &Graph, x: usize, support: u64) -> Vec<u64> {
    let xb = p.vertices()[x].0;
    let mut blocks: Vec<u64> = g
        .neighbors(x)
        .map(|w| xb ^ p.vertices()[w].0)
        .filter(|z| *z != 0 && z & !support == 0)
        .collect();
    blocks.sort_unstable();
    blocks.dedup();
    blocks
}

/// All exact covers of `support` by pairwise disjoint candidate blocks.
fn exact_covers(blocks: &[u64], support: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn recurse(blocks: &[u64], remaining: u64, chosen: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        let low = remaining & remaining.wrapping_neg();
        for &b in blocks {
            if b & low != 0 && b & !remaining == 0 {
                chosen.push(b);
                recurse(blocks, remaining & !b, chosen, out);
                chosen.pop();
            }
        }
    }
    recurse(blocks, support, &mut chosen, &mut out);
    out
}

/// Searches for an affine edge-cube in which `s` and `t` are antipodal:
/// generator blocks are differences to skeleton neighbors of `s`, combined
/// by exact cover of the XOR support. Returns the first passing cube in
/// deterministic block order.
pub fn find_antipodal_edge_cube(
    p: &ZeroOnePolytope,
    g: &Graph,
    s: usize,
    t: usize,
) -> Result<Option<AffineEdgeCube>> {
    find_antipodal_edge_cube_with_limit(p, g, s, t, DEFAULT_CUBE_SEARCH_LIMIT)
}

pub fn find_antipodal_edge_cube_with_limit(
    p: &ZeroOnePolytope,
    g: &Graph,
    s: usize,
    t: usize,
    limit: usize,
) -> Result<Option<AffineEdgeCube>> {
    if s == t {
        return Err(Error::IdenticalVertices);
    }
    let support = p.vertex(s)?.0 ^ p.vertex(t)?.0;
    if support.count_ones() as usize > limit {
        return Err(Error::LimitExceeded(String::from(
            "antipodal cube search limit exceeded",
        )));
    }
    let blocks = candidate_blocks(p, g, s, support);
    for cover in exact_covers(&blocks, support) {
        let mut generators = cover;
        generators.sort_unstable();
        let cube = AffineEdgeCube {
            base: s as u32,
            generators,
        };
        if is_edge_cube(p, g, &cube) {
            return Ok(Some(cube));
        }
    }
    Ok(None)
}

/// All affine edge-cubes inside the wall's member set whose spanned wall
/// is the wall itself, deduplicated by vertex set.
pub fn edge_cubes_spanning(
    p: &ZeroOnePolytope,
    g: &Graph,
    wall: &Wall,
) -> Result<Vec<AffineEdgeCube>> {
    edge_cubes_spanning_with_limit(p, g, wall, DEFAULT_UNIQUE_SPAN_LIMIT)
}

pub fn edge_cubes_spanning_with_limit(
    p: &ZeroOnePolytope,
    g: &Graph,
    wall: &Wall,
    limit: usize,
) -> Result<Vec<AffineEdgeCube>> {
    if wall.len() > limit {
        return Err(Error::LimitExceeded(String::from(
            "unique-spanning enumeration limit exceeded",
        )));
    }
    let t_w = wall.sigma.stars();
    if t_w == 0 {
        // A single-vertex wall is spanned exactly by its k = 0 cube.
        return Ok(alloc::vec![AffineEdgeCube {
            base: wall.members[0],
            generators: Vec::new(),
        }]);
    }
    let member_bits: BTreeMap<u64, u32> = wall
        .members
        .iter()
        .map(|&i| (p.vertices()[i as usize].0, i))
        .collect();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut out = Vec::new();
    // Every spanning cube contains, with any point x, its mirror x ^ t(W)
    // as the antipode, so mirror pairs inside the wall find every cube.
    for &x_idx in &wall.members {
        let xb = p.vertices()[x_idx as usize].0;
        let partner = xb ^ t_w;
        if partner < xb || !member_bits.contains_key(&partner) {
            continue;
        }
        for cover in exact_covers(&candidate_blocks(p, g, x_idx as usize, t_w), t_w) {
            let mut generators = cover;
            generators.sort_unstable();
            let cube = AffineEdgeCube {
                base: x_idx,
                generators,
            };
            if !is_edge_cube(p, g, &cube) {
                continue;
            }
            let pts = cube
                .point_indices(p)
                .expect("edge-cube points are vertices");
            if seen.insert(pts) {
                out.push(cube);
            }
        }
    }
    Ok(out)
}

/// True iff the given cube is the only affine edge-cube (as a vertex set)
/// spanning the wall.
pub fn is_uniquely_spanned(
    p: &ZeroOnePolytope,
    g: &Graph,
    wall: &Wall,
    cube: &AffineEdgeCube,
) -> Result<bool> {
    let pts = cube
        .point_indices(p)
        .ok_or_else(|| Error::BadFamilyArgument(String::from("cube points not vertices")))?;
    let spanned = spanned_wall(p, &pts)?;
    assert_eq!(
        spanned.members, wall.members,
        "cube must span the queried wall"
    );
    let all = edge_cubes_spanning(p, g, wall)?;
    Ok(all.len() == 1 && all[0].point_indices(p).as_deref() == Some(&pts[..]))
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}

/// The summed antipodal flow on the cube graph `Q_k`: one unit per ordered
/// antipodal pair, split uniformly over all coordinate-flip orders. The
/// per-arc load is the exact sum over start offsets `A` not containing the
/// flipped direction of `|A|! (k-1-|A|)! / k!`, which telescopes to one
/// unit on every arc.
pub fn cube_antipodal_flow(k: usize) -> Result<FlowField> {
    if k == 0 || k > 16 {
        return Err(Error::LimitExceeded(String::from(
            "cube flow requires 1 <= k <= 16",
        )));
    }
    let kfact = factorial(k);
    let mut per_arc = Rat::zero();
    for i in 0..k {
        let binom = &factorial(k - 1) / (&factorial(i) * &factorial(k - 1 - i));
        per_arc += Rat::new(binom * factorial(i) * factorial(k - 1 - i), kfact.clone());
    }
    let mut flow = FlowField::new();
    for u in 0..1u64 << k {
        for j in 0..k {
            flow.add(u as u32, (u ^ (1 << j)) as u32, per_arc.clone());
        }
    }
    Ok(flow)
}

/// Number of walls containing `u`, `v`, and both of their mirror images;
/// at most `n/2` of them exist.
pub fn count_mirror_walls(p: &ZeroOnePolytope, u: usize, v: usize) -> Result<usize> {
    if u == v {
        return Err(Error::IdenticalVertices);
    }
    let bu = p.vertex(u)?.0;
    let bv = p.vertex(v)?.0;
    let index = p.index_map();
    let mut count = 0;
    for wall in enumerate_walls(p)? {
        if !(wall.contains(u as u32) && wall.contains(v as u32)) {
            continue;
        }
        let mu = mirror_image(&wall, bu);
        let mv = mirror_image(&wall, bv);
        let both = [mu, mv]
            .iter()
            .all(|m| index.get(m).is_some_and(|&i| wall.contains(i)));
        if both {
            count += 1;
        }
    }
    Ok(count)
}

/// Result of the cube-spanned-walls flow construction.
#[derive(Clone, Debug)]
pub struct CubeSpanReport {
    pub flow: FlowField,
    pub phi_max: Rat,
    /// `n / (2 phi_max)`; absent when no flow was routed.
    pub bound: Option<Rat>,
    /// Service multiplicity per ordered vertex pair `(s, t)`, `s != t`.
    pub coverage: BTreeMap<(u32, u32), u32>,
    /// True iff every ordered pair was served at least once.
    pub complete: bool,
    /// Number of uniquely edge-cube spanned walls that contributed flow.
    pub walls_used: usize,
}

/// Enumerates uniquely edge-cube spanned walls (each arises as the wall
/// spanned by one of its cube's antipodal pairs), maps the antipodal cube
/// flow of each onto skeleton arcs, and reports both the maximal arc load
/// and which ordered pairs were served.
pub fn cswalls_total_flow(p: &ZeroOnePolytope, g: &Graph) -> Result<CubeSpanReport> {
    let n = p.n_vertices();
    let mut candidates: BTreeMap<(u64, u64), Wall> = BTreeMap::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            let w = spanned_wall(p, &[u, v])?;
            candidates
                .entry((w.sigma.stars(), w.sigma.values()))
                .or_insert(w);
        }
    }

    let mut flow = FlowField::new();
    let mut coverage: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut walls_used = 0usize;
    for wall in candidates.values() {
        let cubes = edge_cubes_spanning(p, g, wall)?;
        if cubes.len() != 1 {
            continue;
        }
        let cube = &cubes[0];
        if cube.k() == 0 {
            continue;
        }
        walls_used += 1;
        let base_bits = p.vertices()[cube.base as usize].0;
        let points = cube.points_from(base_bits);
        let index = p.index_map();
        let ids: Vec<u32> = points.iter().map(|b| index[b]).collect();
        let cube_flow = cube_antipodal_flow(cube.k())?;
        for (&(a, b), amount) in cube_flow.iter() {
            flow.add(ids[a as usize], ids[b as usize], amount.clone());
        }
        let t_w = wall.sigma.stars();
        for (bits, &id) in points.iter().zip(&ids) {
            let partner = index[&(bits ^ t_w)];
            *coverage.entry((id, partner)).or_insert(0) += 1;
        }
    }

    let complete = (0..n as u32).all(|s| {
        (0..n as u32)
            .filter(|&t| t != s)
            .all(|t| coverage.contains_key(&(s, t)))
    });
    let phi_max = flow.max_value().unwrap_or_else(Rat::zero);
    let bound = if phi_max.is_zero() {
        None
    } else {
        Some(crate::expansion::certified_bound(n, &phi_max)?)
    };
    Ok(CubeSpanReport {
        flow,
        phi_max,
        bound,
        coverage,
        complete,
        walls_used,
    })
}

/// The cube of stable sets between `s` and `t`: one generator per
/// connected component of the subgraph induced by the symmetric
/// difference; `s` and `t` are antipodal in it.
pub fn stable_set_cube(
    p: &ZeroOnePolytope,
    g: &Graph,
    s: &[u32],
    t: &[u32],
) -> Result<AffineEdgeCube> {
    for set in [s, t] {
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                if g.has_edge(a as usize, b as usize) {
                    return Err(Error::NotStable);
                }
            }
        }
    }
    let s_mask = s.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let t_mask = t.iter().fold(0u64, |acc, &v| acc | 1 << v);
    let base = p
        .index_of(s_mask)
        .ok_or_else(|| Error::BadFamilyArgument(String::from("s is not a vertex")))?;
    let diff = s_mask ^ t_mask;
    // Components of the induced subgraph on the difference nodes.
    let mut generators = Vec::new();
    let mut remaining = diff;
    while remaining != 0 {
        let start = remaining.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut stack = alloc::vec![start];
        while let Some(x) = stack.pop() {
            for y in g.neighbors(x) {
                let bit = 1u64 << y;
                if diff & bit != 0 && comp & bit == 0 {
                    comp |= bit;
                    stack.push(y);
                }
            }
        }
        generators.push(comp);
        remaining &= !comp;
    }
    generators.sort_unstable();
    Ok(AffineEdgeCube { base, generators })
}
