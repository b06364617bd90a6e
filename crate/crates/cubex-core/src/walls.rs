//! Walls (intersections of the polytope with cube faces), their bipartite
//! graphs, fractional matchings via exact max-flow, and the flag-based
//! all-pairs flow construction that certifies edge expansion at least one
//! for polytopes with fractional wall-matchings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expansion::FlowField;
use crate::graph::{Graph, NodeSet};
use crate::maxflow::Dinic;
use crate::polytope::ZeroOnePolytope;
use crate::rat::{rat_int, Rat};

/// Default cap on the ambient dimension for full wall enumeration.
pub const DEFAULT_WALL_DIM_LIMIT: usize = 12;

/// A face pattern over `{0, 1, *}^d`: `stars` marks free coordinates,
/// `values` the fixed ones (bits outside `stars`).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Sigma {
    d: usize,
    stars: u64,
    values: u64,
}

impl Sigma {
    pub fn new(d: usize, stars: u64, values: u64) -> Self {
        let dmask = if d == 64 { !0u64 } else { (1u64 << d) - 1 };
        Sigma {
            d,
            stars: stars & dmask,
            values: values & dmask & !stars,
        }
    }

    /// Parses a string over `0`, `1`, `*` (coordinate 0 first).
    pub fn parse(s: &str) -> Option<Self> {
        if s.len() > 64 {
            return None;
        }
        let mut stars = 0u64;
        let mut values = 0u64;
        for (i, ch) in s.bytes().enumerate() {
            match ch {
                b'*' => stars |= 1 << i,
                b'1' => values |= 1 << i,
                b'0' => {}
                _ => return None,
            }
        }
        Some(Sigma::new(s.len(), stars, values))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn stars(&self) -> u64 {
        self.stars
    }

    pub fn values(&self) -> u64 {
        self.values
    }

    pub fn star_count(&self) -> usize {
        self.stars.count_ones() as usize
    }

    /// Smallest free coordinate: the wall direction `mu`.
    pub fn smallest_star(&self) -> Option<usize> {
        if self.stars == 0 {
            None
        } else {
            Some(self.stars.trailing_zeros() as usize)
        }
    }

    pub fn matches(&self, bits: u64) -> bool {
        let dmask = if self.d == 64 {
            !0u64
        } else {
            (1u64 << self.d) - 1
        };
        (bits ^ self.values) & dmask & !self.stars == 0
    }

    /// The minimal pattern of a nonempty vertex set.
    pub fn from_member_bits(d: usize, members: impl Iterator<Item = u64>) -> Self {
        let mut and_all = !0u64;
        let mut or_all = 0u64;
        for bits in members {
            and_all &= bits;
            or_all |= bits;
        }
        Sigma::new(d, and_all ^ or_all, and_all)
    }

    pub fn render(&self) -> String {
        (0..self.d)
            .map(|i| {
                if self.stars >> i & 1 == 1 {
                    '*'
                } else if self.values >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }
}

/// A wall: the polytope's vertices lying in a cube face, stored with the
/// minimal (canonical) pattern, so each wall has exactly one `Sigma`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Wall {
    pub sigma: Sigma,
    /// Sorted vertex indices.
    pub members: Vec<u32>,
}

impl Wall {
    fn from_member_indices(p: &ZeroOnePolytope, mut members: Vec<u32>) -> Wall {
        members.sort_unstable();
        let sigma = Sigma::from_member_bits(
            p.ambient_dim(),
            members.iter().map(|&i| p.vertices()[i as usize].0),
        );
        Wall { sigma, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn member_set(&self, n: usize) -> NodeSet {
        NodeSet::from_indices(n, &self.members)
    }
}

/// Members of `sigma_raw` re-canonicalized to the minimal face pattern;
/// `None` when no vertex matches.
pub fn wall_from_sigma(p: &ZeroOnePolytope, sigma_raw: &Sigma) -> Option<Wall> {
    let members: Vec<u32> = p
        .vertices()
        .iter()
        .enumerate()
        .filter(|(_, v)| sigma_raw.matches(v.0))
        .map(|(i, _)| i as u32)
        .collect();
    if members.is_empty() {
        None
    } else {
        Some(Wall::from_member_indices(p, members))
    }
}

/// All distinct nonempty walls, deduplicated by member set, each with its
/// canonical pattern; sorted by pattern for deterministic output.
pub fn enumerate_walls(p: &ZeroOnePolytope) -> Result<Vec<Wall>> {
    enumerate_walls_with_limit(p, DEFAULT_WALL_DIM_LIMIT)
}

pub fn enumerate_walls_with_limit(p: &ZeroOnePolytope, limit: usize) -> Result<Vec<Wall>> {
    if p.ambient_dim() > limit {
        return Err(Error::LimitExceeded(String::from(
            "wall enumeration limit exceeded",
        )));
    }
    if p.n_vertices() == 0 {
        return Ok(Vec::new());
    }
    let n = p.n_vertices();
    let d = p.ambient_dim();

    // Every wall is an intersection of elementary half-walls {x_i = a} with
    // the whole set, so closure search over member sets finds each one.
    let mut elementary = Vec::with_capacity(d);
    for i in 0..d {
        let mut zero = NodeSet::empty(n);
        let mut one = NodeSet::empty(n);
        for (idx, v) in p.vertices().iter().enumerate() {
            if v.coord(i) {
                one.insert(idx);
            } else {
                zero.insert(idx);
            }
        }
        elementary.push([zero, one]);
    }

    let full = NodeSet::full(n);
    let mut seen: BTreeSet<NodeSet> = BTreeSet::new();
    seen.insert(full.clone());
    let mut queue = alloc::vec![full];
    while let Some(cur) = queue.pop() {
        for elem in &elementary {
            for side in elem {
                let mut next = cur.clone();
                next.intersect_assign(side);
                if next.is_empty() || seen.contains(&next) {
                    continue;
                }
                seen.insert(next.clone());
                queue.push(next);
            }
        }
    }

    let mut walls: Vec<Wall> = seen
        .into_iter()
        .map(|s| Wall::from_member_indices(p, s.to_indices()))
        .collect();
    walls.sort_by_key(|w| (w.sigma.stars, w.sigma.values));
    Ok(walls)
}

/// The distinct walls cut out by faces fixing a coordinate prefix. Every
/// skeleton edge belongs to exactly one of their bipartite graphs.
pub fn initial_walls(p: &ZeroOnePolytope) -> Vec<Wall> {
    let d = p.ambient_dim();
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for i in 0..=d {
        let prefix_mask = if i == 64 { !0u64 } else { (1u64 << i) - 1 };
        let mut groups: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (idx, v) in p.vertices().iter().enumerate() {
            groups
                .entry(v.0 & prefix_mask)
                .or_default()
                .push(idx as u32);
        }
        for members in groups.into_values() {
            seen.insert(members);
        }
    }
    let mut walls: Vec<Wall> = seen
        .into_iter()
        .map(|m| Wall::from_member_indices(p, m))
        .collect();
    walls.sort_by_key(|w| (w.sigma.stars, w.sigma.values));
    walls
}

/// The unique initial wall whose bipartite graph contains the skeleton
/// edge `{u, v}`: fix every coordinate before the first differing one.
pub fn initial_wall_of_edge(p: &ZeroOnePolytope, g: &Graph, u: usize, v: usize) -> Result<Wall> {
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let bu = p.vertex(u)?.0;
    let bv = p.vertex(v)?.0;
    let first_diff = (bu ^ bv).trailing_zeros() as usize;
    let prefix_mask = (1u64 << first_diff) - 1;
    let raw = Sigma::new(p.ambient_dim(), !prefix_mask, bu & prefix_mask);
    Ok(wall_from_sigma(p, &raw).expect("edge endpoints always match their prefix pattern"))
}

/// A wall split along its smallest free direction `mu`, with the skeleton
/// edges crossing between the shores.
#[derive(Clone, Debug)]
pub struct WallBipartite {
    pub wall: Wall,
    pub mu: usize,
    /// Members with coordinate `mu` equal to 0 (sorted global indices).
    pub left: Vec<u32>,
    /// Members with coordinate `mu` equal to 1.
    pub right: Vec<u32>,
    /// Crossing skeleton edges as `(left, right)` pairs.
    pub edges: Vec<(u32, u32)>,
}

/// `None` iff the wall has no free coordinate (a single vertex).
pub fn wall_bipartite(p: &ZeroOnePolytope, g: &Graph, wall: &Wall) -> Option<WallBipartite> {
    let mu = wall.sigma.smallest_star()?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &idx in &wall.members {
        if p.vertices()[idx as usize].coord(mu) {
            right.push(idx);
        } else {
            left.push(idx);
        }
    }
    debug_assert!(!left.is_empty() && !right.is_empty());
    let mut edges = Vec::new();
    for &l in &left {
        for &r in &right {
            if g.has_edge(l as usize, r as usize) {
                edges.push((l, r));
            }
        }
    }
    Some(WallBipartite {
        wall: wall.clone(),
        mu,
        left,
        right,
        edges,
    })
}

/// Nonnegative edge weights with constant weighted degree on each shore,
/// normalized so left degrees equal `|right|` and right degrees `|left|`
/// (total weight `|left| * |right|`, hence strictly positive degrees).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalMatching {
    pub weights: BTreeMap<(u32, u32), Rat>,
    pub left_degree: Rat,
    pub right_degree: Rat,
}

/// Computes a fractional matching via the saturating-flow formulation:
/// source to each left node with capacity `|right|`, crossing arcs
/// unbounded, each right node to the sink with capacity `|left|`. A
/// matching exists iff the max-flow reaches `|left| * |right|`.
pub fn fractional_matching(b: &WallBipartite) -> Option<FractionalMatching> {
    let nl = b.left.len();
    let nr = b.right.len();
    if b.edges.is_empty() {
        return None;
    }

    // Shore-regular walls always carry the uniform matching.
    let mut ldeg: BTreeMap<u32, usize> = b.left.iter().map(|&l| (l, 0)).collect();
    let mut rdeg: BTreeMap<u32, usize> = b.right.iter().map(|&r| (r, 0)).collect();
    for &(l, r) in &b.edges {
        *ldeg.get_mut(&l).unwrap() += 1;
        *rdeg.get_mut(&r).unwrap() += 1;
    }
    let l0 = *ldeg.values().next().unwrap();
    let r0 = *rdeg.values().next().unwrap();
    if l0 > 0 && ldeg.values().all(|&x| x == l0) && rdeg.values().all(|&x| x == r0) {
        let w = rat_int(nr as i64) / rat_int(l0 as i64);
        let weights = b.edges.iter().map(|&e| (e, w.clone())).collect();
        return Some(FractionalMatching {
            weights,
            left_degree: rat_int(nr as i64),
            right_degree: rat_int(nl as i64),
        });
    }

    let demand = (nl * nr) as i64;
    let src = 0usize;
    let sink = nl + nr + 1;
    let mut net = Dinic::new(nl + nr + 2);
    let lpos: BTreeMap<u32, usize> = b.left.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let rpos: BTreeMap<u32, usize> = b.right.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    for i in 0..nl {
        net.add_edge(src, 1 + i, nr as i64);
    }
    let mut mid = Vec::with_capacity(b.edges.len());
    for &(l, r) in &b.edges {
        // Total flow is capped by demand, so demand acts as infinity.
        mid.push(net.add_edge(1 + lpos[&l], 1 + nl + rpos[&r], demand));
    }
    for j in 0..nr {
        net.add_edge(1 + nl + j, sink, nl as i64);
    }
    if net.max_flow(src, sink) != demand {
        return None;
    }
    let mut weights = BTreeMap::new();
    for (&(l, r), &id) in b.edges.iter().zip(&mid) {
        let f = net.flow_on(id);
        if f > 0 {
            weights.insert((l, r), rat_int(f));
        }
    }
    Some(FractionalMatching {
        weights,
        left_degree: rat_int(nr as i64),
        right_degree: rat_int(nl as i64),
    })
}

/// Outcome of checking every wall for a fractional matching.
#[derive(Clone, Debug)]
pub struct FwmReport {
    pub holds: bool,
    /// Walls whose bipartite graph has no fractional matching.
    pub failing: Vec<Wall>,
}

/// True iff every wall with at least one free coordinate has a fractional
/// matching; single-vertex walls are vacuously satisfied.
pub fn has_fractional_wall_matchings(p: &ZeroOnePolytope, g: &Graph) -> Result<FwmReport> {
    let walls = enumerate_walls(p)?;
    let mut failing = Vec::new();
    for wall in walls {
        let Some(b) = wall_bipartite(p, g, &wall) else {
            continue;
        };
        if fractional_matching(&b).is_none() {
            failing.push(wall);
        }
    }
    Ok(FwmReport {
        holds: failing.is_empty(),
        failing,
    })
}

/// The flag of walls of a target vertex: `W^i = {w : w_1 = t_1, ..., w_i
/// = t_i}` for `i = 0..d`, repeats included; starts at the whole polytope
/// and ends at `{t}`.
pub fn flag(p: &ZeroOnePolytope, t: usize) -> Result<Vec<Wall>> {
    let tb = p.vertex(t)?.0;
    let d = p.ambient_dim();
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let prefix_mask = if i == 64 { !0u64 } else { (1u64 << i) - 1 };
        let members: Vec<u32> = p
            .vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| (v.0 ^ tb) & prefix_mask == 0)
            .map(|(idx, _)| idx as u32)
            .collect();
        out.push(Wall::from_member_indices(p, members));
    }
    Ok(out)
}

/// Memoizes fractional matchings by wall member set across flow builds.
#[derive(Default)]
pub struct MatchingCache {
    map: BTreeMap<Vec<u32>, Option<FractionalMatching>>,
}

impl MatchingCache {
    pub fn new() -> Self {
        MatchingCache {
            map: BTreeMap::new(),
        }
    }
}

/// One unit from every node to `t`, routed through the flag of `t`: at
/// step `i`, the commodity held on the shore disagreeing with `t` at
/// coordinate `i` moves through the wall's fractional matching so that
/// each receiving node ends up with the same amount.
pub fn build_wall_flow(p: &ZeroOnePolytope, g: &Graph, t: usize) -> Result<FlowField> {
    let mut cache = MatchingCache::new();
    build_wall_flow_cached(p, g, t, &mut cache)
}

pub fn build_wall_flow_cached(
    p: &ZeroOnePolytope,
    g: &Graph,
    t: usize,
    cache: &mut MatchingCache,
) -> Result<FlowField> {
    let tb = p.vertex(t)?.0;
    let n = p.n_vertices();
    let d = p.ambient_dim();
    let mut flow = FlowField::new();
    let mut current: Vec<u32> = (0..n as u32).collect();
    for i in 0..d {
        let t_i = tb >> i & 1 == 1;
        let (receivers, senders): (Vec<u32>, Vec<u32>) = current
            .iter()
            .partition(|&&idx| p.vertices()[idx as usize].coord(i) == t_i);
        if senders.is_empty() {
            continue;
        }
        let wall = Wall::from_member_indices(p, current.clone());
        debug_assert_eq!(wall.sigma.smallest_star(), Some(i));
        let matching = match cache.map.get(&wall.members) {
            Some(m) => m.clone(),
            None => {
                let b = wall_bipartite(p, g, &wall).expect("wall splits at coordinate i");
                let m = fractional_matching(&b);
                cache.map.insert(wall.members.clone(), m.clone());
                m
            }
        };
        let Some(matching) = matching else {
            return Err(Error::NoWallMatching(wall.sigma.render()));
        };

        // Uniform load before the step; every sender ships all of it.
        let amount = rat_int(n as i64) / rat_int(current.len() as i64);
        let sender_degree = if t_i {
            // Senders are the 0-shore (matching "left").
            &matching.left_degree
        } else {
            &matching.right_degree
        };
        for (&(l, r), w) in &matching.weights {
            let (from, to) = if t_i { (l, r) } else { (r, l) };
            flow.add(from, to, &amount * w / sender_degree);
        }
        current = receivers;
    }
    debug_assert_eq!(current, alloc::vec![t as u32]);
    Ok(flow)
}

/// Sum of the per-target flows and its maximal arc load; the certified
/// expansion bound is `n / (2 phi_max)`.
pub fn total_wall_flow(p: &ZeroOnePolytope, g: &Graph) -> Result<(FlowField, Rat)> {
    let mut cache = MatchingCache::new();
    let mut total = FlowField::new();
    for t in 0..p.n_vertices() {
        let f = build_wall_flow_cached(p, g, t, &mut cache)?;
        total.merge(&f);
    }
    let phi_max = total.max_value().unwrap_or_else(Rat::zero);
    Ok((total, phi_max))
}

/// True iff the skeleton restricted to every wall's members is regular.
pub fn regular_walls(p: &ZeroOnePolytope, g: &Graph) -> Result<bool> {
    for wall in enumerate_walls(p)? {
        let set = wall.member_set(p.n_vertices());
        let mut degrees = wall
            .members
            .iter()
            .map(|&v| g.degree_within(v as usize, &set));
        let Some(first) = degrees.next() else {
            continue;
        };
        if degrees.any(|x| x != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First violation of the balance counting inequality, if any.
#[derive(Clone, Debug)]
pub struct BalanceViolation {
    pub wall: Wall,
    pub i: usize,
    pub j: usize,
}

/// True iff for every wall `W` and free coordinates `i != j`:
/// `|W_00| * |W_11| <= |W_10| * |W_01|`, where `W_ab` restricts
/// coordinates `i` and `j`.
pub fn is_balanced(p: &ZeroOnePolytope) -> Result<(bool, Option<BalanceViolation>)> {
    for wall in enumerate_walls(p)? {
        let stars: Vec<usize> = (0..p.ambient_dim())
            .filter(|&i| wall.sigma.stars() >> i & 1 == 1)
            .collect();
        for (a, &i) in stars.iter().enumerate() {
            for &j in &stars[a + 1..] {
                let mut count = [[0u64; 2]; 2];
                for &m in &wall.members {
                    let v = p.vertices()[m as usize];
                    count[v.coord(i) as usize][v.coord(j) as usize] += 1;
                }
                if count[0][0] * count[1][1] > count[1][0] * count[0][1] {
                    return Ok((false, Some(BalanceViolation { wall, i, j })));
                }
            }
        }
    }
    Ok((true, None))
}
