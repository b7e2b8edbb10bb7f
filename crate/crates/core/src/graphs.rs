//! Graph families and the ideals attached to their neighborhood structure.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exponent, Monomial};
use crate::prime::PrimeSupport;

/// Undirected simple graph on vertices `0..n`; vertex `v` corresponds to variable `x_{v+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from 0-indexed edges, rejecting loops and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Graph("graph must have at least one vertex".into()));
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge ({}, {}) out of range for {} vertices",
                    u + 1,
                    v + 1,
                    n
                )));
            }
            if u == v {
                return Err(Error::Graph(format!("loop at vertex {}", u + 1)));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(SimpleGraph { n, adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(&v)
    }

    /// Open neighborhood of `v`.
    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Closed neighborhood `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: usize) -> BTreeSet<usize> {
        let mut set = self.adj[v].clone();
        set.insert(v);
        set
    }

    /// Edge list with endpoints ordered `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

}

/// On-disk graph description; vertices are 1-indexed in the file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if u == 0 || v == 0 {
                return Err(Error::Graph("graph file vertices are 1-indexed".into()));
            }
            edges.push((u - 1, v - 1));
        }
        SimpleGraph::new(self.n, &edges)
    }

    pub fn from_graph(g: &SimpleGraph) -> Self {
        GraphFile {
            n: g.num_vertices(),
            edges: g.edges().into_iter().map(|(u, v)| (u + 1, v + 1)).collect(),
        }
    }
}

/// Complete bipartite graph: part one on vertices `0..r`, part two on `r..r+s`.
pub fn complete_bipartite(r: usize, s: usize) -> Result<SimpleGraph> {
    if r == 0 || s == 0 {
        return Err(Error::Graph("both parts must be nonempty".into()));
    }
    let edges: Vec<(usize, usize)> = (0..r).cartesian_product(r..r + s).collect();
    SimpleGraph::new(r + s, &edges)
}

/// Cycle on `n ≥ 3` vertices in rim order `0, 1, …, n−1, 0`.
pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::Graph(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    SimpleGraph::new(n, &edges)
}

/// Wheel description: an odd rim cycle, `h` mutually adjacent centers, and the
/// 1-indexed rim positions every center attaches to.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HWheelSpec {
    pub h: usize,
    pub rim_length: usize,
    pub radial: BTreeSet<usize>,
}

impl HWheelSpec {
    /// Cyclic rim distances between consecutive radial positions; sums to the rim length.
    pub fn radial_lengths(&self) -> Vec<usize> {
        let pos: Vec<usize> = self.radial.iter().copied().collect();
        let k = pos.len();
        (0..k)
            .map(|j| {
                let a = pos[j];
                let b = pos[(j + 1) % k];
                (b + self.rim_length - a - 1) % self.rim_length + 1
            })
            .collect()
    }

    /// Whether some three radial positions are cyclically consecutive on the rim.
    pub fn has_three_cyclically_consecutive(&self) -> bool {
        let lens = self.radial_lengths();
        let k = lens.len();
        if k < 2 {
            return false;
        }
        (0..k).any(|j| lens[j] == 1 && lens[(j + 1) % k] == 1)
    }
}

/// Counts simple cycles of odd length through `y` in the subgraph induced on `verts`.
fn odd_cycles_through(g: &SimpleGraph, y: usize, verts: &BTreeSet<usize>) -> usize {
    let mut visited = BTreeSet::new();
    visited.insert(y);
    let mut count = 0usize;
    let mut stack: Vec<usize> = vec![y];
    fn dfs(
        g: &SimpleGraph,
        y: usize,
        verts: &BTreeSet<usize>,
        stack: &mut Vec<usize>,
        visited: &mut BTreeSet<usize>,
        count: &mut usize,
    ) {
        let current = *stack.last().unwrap();
        for &next in g.neighbors(current) {
            if !verts.contains(&next) {
                continue;
            }
            if next == y && stack.len() >= 3 {
                if stack.len() % 2 == 1 {
                    *count += 1;
                }
                continue;
            }
            if !visited.contains(&next) {
                visited.insert(next);
                stack.push(next);
                dfs(g, y, verts, stack, visited, count);
                stack.pop();
                visited.remove(&next);
            }
        }
    }
    dfs(g, y, verts, &mut stack, &mut visited, &mut count);
    // Each undirected cycle is traversed once per direction.
    count / 2
}

/// Builds the wheel graph and checks the four defining conditions, reporting the
/// first violated one by number: (1) centers induce a complete graph, (2) the rim
/// induces an odd cycle, (3) all centers share one rim neighborhood of size ≥ 3,
/// (4) every center lies on at least two odd cycles inside its closed neighborhood.
pub fn build_h_wheel(spec: &HWheelSpec) -> Result<SimpleGraph> {
    let rim = spec.rim_length;
    if spec.h == 0 {
        return Err(Error::WheelCondition {
            condition: 1,
            detail: "at least one center vertex is required".into(),
        });
    }
    if rim < 3 || rim % 2 == 0 {
        return Err(Error::WheelCondition {
            condition: 2,
            detail: format!("rim length {rim} is not an odd number ≥ 3"),
        });
    }
    if let Some(&p) = spec.radial.iter().find(|&&p| p == 0 || p > rim) {
        return Err(Error::WheelCondition {
            condition: 3,
            detail: format!("radial position {p} outside the rim 1..={rim}"),
        });
    }
    if spec.radial.len() < 3 {
        return Err(Error::WheelCondition {
            condition: 3,
            detail: format!("need at least 3 radial positions, got {}", spec.radial.len()),
        });
    }
    let n = rim + spec.h;
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
    for (a, b) in (rim..n).tuple_combinations() {
        edges.push((a, b));
    }
    for y in rim..n {
        for &p in &spec.radial {
            edges.push((p - 1, y));
        }
    }
    let g = SimpleGraph::new(n, &edges)?;
    for y in rim..n {
        let mut verts = g.closed_neighborhood(y);
        if verts.len() > 20 {
            return Err(Error::Graph(format!(
                "center {} has {} neighbors; cycle enumeration capped at 20 vertices",
                y + 1,
                verts.len() - 1
            )));
        }
        let cycles = odd_cycles_through(&g, y, &verts);
        verts.remove(&y);
        if cycles < 2 {
            return Err(Error::WheelCondition {
                condition: 4,
                detail: format!(
                    "center {} lies on {} odd cycle(s) in its closed neighborhood, need 2",
                    y + 1,
                    cycles
                ),
            });
        }
    }
    Ok(g)
}

/// Closed neighborhood ideal: one squarefree generator `∏_{j ∈ N[i]} x_j` per vertex.
pub fn ni_ideal(g: &SimpleGraph) -> MonomialIdeal {
    let n = g.num_vertices();
    let gens = (0..n)
        .map(|v| {
            let mut exps = vec![0 as Exponent; n];
            for j in g.closed_neighborhood(v) {
                exps[j] = 1;
            }
            Monomial::new(exps)
        })
        .collect();
    MonomialIdeal::new(n, gens).expect("neighborhood generators are valid")
}

/// All inclusion-minimal dominating sets, as sorted vertex sets in a canonical order.
///
/// Computed as the minimal transversals of the closed-neighborhood hypergraph by
/// incremental dualization over one hyperedge at a time, with no reference to ideals.
pub fn minimal_dominating_sets(g: &SimpleGraph) -> Result<Vec<BTreeSet<usize>>> {
    let n = g.num_vertices();
    if n > 128 {
        return Err(Error::Graph(format!(
            "dominating-set enumeration supports up to 128 vertices, got {n}"
        )));
    }
    let mask = |set: &BTreeSet<usize>| -> u128 { set.iter().fold(0u128, |m, &v| m | 1 << v) };
    let hyperedges: Vec<u128> = (0..n).map(|v| mask(&g.closed_neighborhood(v))).collect();
    let mut transversals: Vec<u128> = vec![];
    for (i, &edge) in hyperedges.iter().enumerate() {
        if i == 0 {
            transversals = (0..n).filter(|&v| edge >> v & 1 == 1).map(|v| 1u128 << v).collect();
            continue;
        }
        let mut candidates: Vec<u128> = Vec::new();
        for &t in &transversals {
            if t & edge != 0 {
                candidates.push(t);
            } else {
                candidates.extend((0..n).filter(|&v| edge >> v & 1 == 1).map(|v| t | 1 << v));
            }
        }
        candidates.sort_by_key(|c| (c.count_ones(), *c));
        candidates.dedup();
        let mut kept: Vec<u128> = Vec::new();
        for c in candidates {
            if !kept.iter().any(|&k| k & c == k) {
                kept.push(c);
            }
        }
        transversals = kept;
    }
    let mut sets: Vec<BTreeSet<usize>> = transversals
        .into_iter()
        .map(|t| (0..n).filter(|&v| t >> v & 1 == 1).collect())
        .collect();
    sets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    Ok(sets)
}

/// Dominating ideal: one squarefree generator per minimal dominating set.
///
/// The enumeration result is cross-checked against the Alexander dual of the
/// neighborhood ideal; disagreement is reported as an error rather than ignored.
pub fn di_ideal(g: &SimpleGraph) -> Result<MonomialIdeal> {
    let n = g.num_vertices();
    let gens = minimal_dominating_sets(g)?
        .into_iter()
        .map(|set| {
            let mut exps = vec![0 as Exponent; n];
            for v in set {
                exps[v] = 1;
            }
            Monomial::new(exps)
        })
        .collect();
    let enumerated = MonomialIdeal::new(n, gens).expect("dominating sets are valid");
    let dual = ni_ideal(g).alexander_dual()?;
    if enumerated != dual {
        return Err(Error::DualPathMismatch);
    }
    Ok(enumerated)
}

/// Partial `t`-cover ideal: intersection of the primes `(x, A)` over every vertex
/// `x` and every `t`-subset `A` of its open neighborhood.
pub fn partial_cover_ideal(g: &SimpleGraph, t: usize) -> Result<MonomialIdeal> {
    if t == 0 {
        return Err(Error::Invalid("cover parameter t must be ≥ 1".into()));
    }
    let n = g.num_vertices();
    for v in 0..n {
        if g.degree(v) < t {
            return Err(Error::DegreeTooSmall {
                vertex: v + 1,
                degree: g.degree(v),
                t,
            });
        }
    }
    let mut primes = Vec::new();
    for v in 0..n {
        for subset in g.neighbors(v).iter().copied().combinations(t) {
            let mut vars: BTreeSet<usize> = subset.into_iter().collect();
            vars.insert(v);
            primes.push(PrimeSupport::new(vars)?.expand(n)?);
        }
    }
    Ok(MonomialIdeal::intersect_all(n, primes.into_iter()))
}

/// Intersection of the rim primes `(x_{j−1}, x_j, x_{j+1})` over all cyclic
/// positions `j = 1..n` not listed in `excluded` (1-indexed, wrapping at the ends).
/// Excluding every position leaves the empty intersection, the unit ideal.
pub fn rim_intersection_ideal(n: usize, excluded: &BTreeSet<usize>) -> Result<MonomialIdeal> {
    if n < 3 {
        return Err(Error::Invalid(format!("rim needs at least 3 vertices, got {n}")));
    }
    if let Some(&j) = excluded.iter().find(|&&j| j == 0 || j > n) {
        return Err(Error::VariableOutOfRange { index: j, n });
    }
    let primes = (1..=n).filter(|j| !excluded.contains(j)).map(|j| {
        let vars: BTreeSet<usize> = [(j + n - 2) % n, j - 1, j % n].into_iter().collect();
        PrimeSupport::new(vars)
            .expect("rim prime support is nonempty")
            .expand(n)
            .expect("rim indices are in range")
    });
    Ok(MonomialIdeal::intersect_all(n, primes))
}

/// Linear relation graph of an ideal: an edge `{i, j}` whenever two generators
/// satisfy `x_i·u_k = x_j·u_l`; vertices are the endpoints of those edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearRelationGraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Number of vertices.
    pub r: usize,
    /// Number of connected components on those vertices.
    pub s: usize,
    /// For ideals generated in a single degree with `r > s`: the power range
    /// `t = 1..=r−s` on which `depth(R/I^t) ≤ n − t − 1` is guaranteed.
    pub depth_bound_range: Option<(usize, usize)>,
}

pub fn linear_relation_graph(ideal: &MonomialIdeal) -> Result<LinearRelationGraph> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal {
            op: "linear_relation_graph",
        });
    }
    let gens = ideal.gens();
    let n = ideal.num_vars();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (k, u) in gens.iter().enumerate() {
        for w in &gens[k + 1..] {
            // x_i·u = x_j·w exactly when the exponent vectors differ in two
            // coordinates, by +1 at i (on u's side) and −1 at j.
            let mut up = None;
            let mut down = None;
            let mut extra = false;
            for c in 0..n {
                let a = u.exponents[c] as i64 - w.exponents[c] as i64;
                match a {
                    0 => {}
                    1 => {
                        if down.is_some() {
                            extra = true;
                        }
                        down = Some(c);
                    }
                    -1 => {
                        if up.is_some() {
                            extra = true;
                        }
                        up = Some(c);
                    }
                    _ => extra = true,
                }
                if extra {
                    break;
                }
            }
            if let (Some(i), Some(j), false) = (up, down, extra) {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(i, j)| [i, j]).collect();
    let r = vertices.len();
    let mut s = 0usize;
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &start in &vertices {
        if seen.contains(&start) {
            continue;
        }
        s += 1;
        let mut queue = vec![start];
        seen.insert(start);
        while let Some(v) = queue.pop() {
            for &(a, b) in &edges {
                let next = if a == v { b } else if b == v { a } else { continue };
                if seen.insert(next) {
                    queue.push(next);
                }
            }
        }
    }
    let depth_bound_range = if ideal.single_degree().is_some() && r > s {
        Some((1, r - s))
    } else {
        None
    };
    Ok(LinearRelationGraph {
        vertices,
        edges,
        r,
        s,
        depth_bound_range,
    })
}
