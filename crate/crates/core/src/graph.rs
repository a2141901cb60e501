//! Complete weighted graphs, reported preference rankings, the edge
//! dominance order they induce, and detection of edges that are provably
//! undominated from ordinal information alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::{Error, Rat, Result};

/// An unordered pair of distinct nodes, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        assert!(a != b, "self-loop edge ({a},{b})");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint other than `x`; panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "node {x} not on edge {self}");
            self.u
        }
    }

    pub fn is_adjacent(&self, other: &Edge) -> bool {
        self != other && (self.touches(other.u) || self.touches(other.v))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Edge> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::arg(format!("expected `i-j`, got `{s}`")))?;
        let a: usize = a.trim().parse().map_err(|_| Error::arg(format!("bad node in `{s}`")))?;
        let b: usize = b.trim().parse().map_err(|_| Error::arg(format!("bad node in `{s}`")))?;
        if a == b {
            return Err(Error::arg(format!("self-loop `{s}`")));
        }
        Ok(Edge::new(a, b))
    }
}

/// Index of an edge of the complete graph on `n` nodes in lexicographic
/// order; the inverse of [`all_edges`] position.
pub fn edge_index(n: usize, e: Edge) -> usize {
    let (u, v) = e.endpoints();
    debug_assert!(v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

pub fn edge_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Edges of the complete graph on `n` nodes in lexicographic order.
pub fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(edge_count(n));
    for u in 0..n {
        for v in (u + 1)..n {
            out.push(Edge::new(u, v));
        }
    }
    out
}

/// Deterministic rule for ordering equal-weight alternatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    AscendingIndex,
    DescendingIndex,
}

impl TieBreak {
    fn cmp_nodes(&self, a: usize, b: usize) -> std::cmp::Ordering {
        match self {
            TieBreak::AscendingIndex => a.cmp(&b),
            TieBreak::DescendingIndex => b.cmp(&a),
        }
    }
}

/// A complete symmetric graph with exact non-negative rational edge weights.
///
/// These are the hidden utilities; algorithms in `greedy` never read them,
/// only the [`PreferenceProfile`] derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    n: usize,
    weights: Vec<Rat>,
}

impl WeightedInstance {
    /// All-zero instance on `n >= 1` nodes.
    pub fn zero(n: usize) -> WeightedInstance {
        assert!(n >= 1, "instance needs at least one node");
        WeightedInstance { n, weights: vec![Rat::zero(); edge_count(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, a: usize, b: usize) -> &Rat {
        &self.weights[edge_index(self.n, Edge::new(a, b))]
    }

    pub fn edge_weight(&self, e: Edge) -> &Rat {
        &self.weights[edge_index(self.n, e)]
    }

    pub fn set_weight(&mut self, a: usize, b: usize, w: Rat) -> Result<()> {
        if a == b {
            return Err(Error::arg(format!("self-loop weight ({a},{b})")));
        }
        if a >= self.n || b >= self.n {
            return Err(Error::arg(format!("node out of range in ({a},{b})")));
        }
        if w < Rat::zero() {
            return Err(Error::arg(format!("negative weight {w} on ({a},{b})")));
        }
        self.weights[edge_index(self.n, Edge::new(a, b))] = w;
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, &Rat)> {
        all_edges(self.n).into_iter().map(move |e| (e, &self.weights[edge_index(self.n, e)]))
    }

    pub fn total_weight<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Rat {
        edges.into_iter().map(|e| self.edge_weight(*e)).sum()
    }
}

/// Per-node strict rankings over the other nodes, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    n: usize,
    prefs: Vec<Vec<usize>>,
    /// rank[x][y] = position of y in x's list (usize::MAX on the diagonal).
    rank: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    pub fn from_lists(prefs: Vec<Vec<usize>>) -> Result<PreferenceProfile> {
        let n = prefs.len();
        for (x, list) in prefs.iter().enumerate() {
            if list.len() != n - 1 {
                return Err(Error::arg(format!(
                    "node {x} ranks {} nodes, expected {}",
                    list.len(),
                    n - 1
                )));
            }
            let mut seen = vec![false; n];
            for &y in list {
                if y >= n || y == x || seen[y] {
                    return Err(Error::arg(format!("node {x} has an invalid ranking entry {y}")));
                }
                seen[y] = true;
            }
        }
        let rank = prefs
            .iter()
            .enumerate()
            .map(|(x, list)| {
                let mut r = vec![usize::MAX; n];
                for (i, &y) in list.iter().enumerate() {
                    r[y] = i;
                }
                r[x] = usize::MAX;
                r
            })
            .collect();
        Ok(PreferenceProfile { n, prefs, rank })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranking(&self, x: usize) -> &[usize] {
        &self.prefs[x]
    }

    /// True when `x` ranks `y` strictly above `z`.
    pub fn prefers(&self, x: usize, y: usize, z: usize) -> bool {
        self.rank[x][y] < self.rank[x][z]
    }

    /// `x`'s most preferred neighbor among edges present in `avail`.
    pub fn top_available(&self, x: usize, avail: &EdgeSet) -> Option<usize> {
        self.prefs[x].iter().copied().find(|&y| avail.contains(Edge::new(x, y)))
    }
}

/// Sort each node's neighbors by decreasing hidden weight, breaking exact
/// ties with the given deterministic rule. The result is always consistent
/// with the instance.
pub fn profile_from_weights(inst: &WeightedInstance, tie_break: TieBreak) -> PreferenceProfile {
    let n = inst.n();
    let prefs = (0..n)
        .map(|x| {
            let mut others: Vec<usize> = (0..n).filter(|&y| y != x).collect();
            others.sort_by(|&a, &b| {
                inst.weight(x, b)
                    .cmp(inst.weight(x, a))
                    .then_with(|| tie_break.cmp_nodes(a, b))
            });
            others
        })
        .collect();
    PreferenceProfile::from_lists(prefs).expect("derived profile is well formed")
}

/// True iff every reported comparison is compatible with the weights:
/// whenever `x` ranks `y` above `z`, `w(x,y) >= w(x,z)`.
pub fn check_consistency(inst: &WeightedInstance, prof: &PreferenceProfile) -> Result<bool> {
    if inst.n() != prof.n() {
        return Err(Error::arg(format!(
            "instance has {} nodes but profile has {}",
            inst.n(),
            prof.n()
        )));
    }
    for x in 0..inst.n() {
        let list = prof.ranking(x);
        for w in list.windows(2) {
            if inst.weight(x, w[0]) < inst.weight(x, w[1]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of comparing two edges in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    DominatedBy,
    /// Mutual dominance: every consistent weight function gives the two
    /// edges equal weight. Arises on first-choice cycles (and trivially for
    /// an edge against itself).
    EqualByCycle,
    Incomparable,
}

/// The reflexive-transitive dominance relation over all edges of the
/// complete graph, derived from the profile: whenever `x` ranks `y` above
/// `z`, edge `(x,y)` dominates `(x,z)`, and domination closes transitively.
#[derive(Debug, Clone)]
pub struct PartialOrder {
    n: usize,
    words: usize,
    /// reach[e] = bitset over edge indices f with e >= f.
    reach: Vec<u64>,
}

pub const PARTIAL_ORDER_MAX_NODES: usize = 64;

/// Build the full dominance closure. Quadratically many edges are closed
/// explicitly, so `n` is capped at [`PARTIAL_ORDER_MAX_NODES`].
pub fn build_partial_order(prof: &PreferenceProfile) -> Result<PartialOrder> {
    let n = prof.n();
    if n > PARTIAL_ORDER_MAX_NODES {
        return Err(Error::arg(format!(
            "dominance closure supports up to {PARTIAL_ORDER_MAX_NODES} nodes, got {n}"
        )));
    }
    let m = edge_count(n);
    let words = m.div_ceil(64).max(1);
    let mut reach = vec![0u64; m * words];
    let set = |reach: &mut Vec<u64>, e: usize, f: usize| {
        reach[e * words + f / 64] |= 1u64 << (f % 64);
    };
    for e in 0..m {
        set(&mut reach, e, e);
    }
    // Arcs between consecutively ranked neighbors generate the whole
    // relation; transitive closure fills in the rest.
    for x in 0..n {
        let list = prof.ranking(x);
        for w in list.windows(2) {
            let hi = edge_index(n, Edge::new(x, w[0]));
            let lo = edge_index(n, Edge::new(x, w[1]));
            set(&mut reach, hi, lo);
        }
    }
    // Bitset transitive closure over edge indices.
    for k in 0..m {
        for e in 0..m {
            if reach[e * words + k / 64] >> (k % 64) & 1 == 1 {
                for w in 0..words {
                    let kk = reach[k * words + w];
                    reach[e * words + w] |= kk;
                }
            }
        }
    }
    Ok(PartialOrder { n, words, reach })
}

impl PartialOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Does `e` dominate `f` (is `e` at least as heavy under every weight
    /// function consistent with the profile)? Reflexive.
    pub fn dominates(&self, e: Edge, f: Edge) -> bool {
        let ei = edge_index(self.n, e);
        let fi = edge_index(self.n, f);
        self.reach[ei * self.words + fi / 64] >> (fi % 64) & 1 == 1
    }

    pub fn query(&self, e: Edge, f: Edge) -> Dominance {
        match (self.dominates(e, f), self.dominates(f, e)) {
            (true, true) => Dominance::EqualByCycle,
            (true, false) => Dominance::Dominates,
            (false, true) => Dominance::DominatedBy,
            (false, false) => Dominance::Incomparable,
        }
    }
}

/// A mutable set of edges over a fixed node universe, with per-node degrees
/// and the connected-component partition kept consistent across mutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    n: usize,
    edges: BTreeSet<Edge>,
    degrees: Vec<usize>,
    comp_id: Vec<usize>,
    comp_size: Vec<usize>,
}

impl EdgeSet {
    pub fn new(n: usize) -> EdgeSet {
        EdgeSet {
            n,
            edges: BTreeSet::new(),
            degrees: vec![0; n],
            comp_id: (0..n).collect(),
            comp_size: vec![1; n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> EdgeSet {
        let mut s = EdgeSet::new(n);
        for e in edges {
            s.insert(e);
        }
        s
    }

    /// Every edge of the complete graph on `n` nodes.
    pub fn complete(n: usize) -> EdgeSet {
        EdgeSet::from_edges(n, all_edges(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degrees[x]
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        assert!(e.v() < self.n, "edge {e} out of range for n={}", self.n);
        let added = self.edges.insert(e);
        if added {
            self.degrees[e.u()] += 1;
            self.degrees[e.v()] += 1;
            self.rebuild_components();
        }
        added
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        let removed = self.edges.remove(&e);
        if removed {
            self.degrees[e.u()] -= 1;
            self.degrees[e.v()] -= 1;
            self.rebuild_components();
        }
        removed
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.comp_id[a] == self.comp_id[b]
    }

    /// Number of nodes in the component containing `x` (1 for isolated nodes).
    pub fn component_size_of(&self, x: usize) -> usize {
        self.comp_size[self.comp_id[x]]
    }

    /// Node lists of all components, including singletons.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for x in 0..self.n {
            buckets[self.comp_id[x]].push(x);
        }
        buckets.retain(|b| !b.is_empty());
        buckets
    }

    /// Nodes touched by at least one edge.
    pub fn incident_nodes(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.degrees[x] > 0).collect()
    }

    fn rebuild_components(&mut self) {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in &self.edges {
            let (ru, rv) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut size = vec![0usize; self.n];
        for x in 0..self.n {
            let r = find(&mut parent, x);
            self.comp_id[x] = r;
            size[r] += 1;
        }
        self.comp_size = size;
    }
}

/// The edges of `avail` that are provably undominated from the rankings
/// alone: pairs of mutual first choices, plus every edge lying on a
/// first-choice cycle of the profile restricted to `avail`.
///
/// Each returned edge is at least as heavy as every adjacent available edge
/// under every weight function consistent with the profile. The result is
/// never empty.
pub fn known_undominated(avail: &EdgeSet, prof: &PreferenceProfile) -> Result<Vec<Edge>> {
    if avail.is_empty() {
        return Err(Error::arg("no available edges"));
    }
    if avail.n() != prof.n() {
        return Err(Error::arg("available set and profile disagree on node count"));
    }
    let n = prof.n();
    let top: Vec<Option<usize>> = (0..n).map(|x| prof.top_available(x, avail)).collect();

    // Cycles of the first-choice map x -> top(x); a 2-cycle is a mutual
    // first-choice pair.
    let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
    let mut result = BTreeSet::new();
    for start in 0..n {
        if state[start] != 0 || top[start].is_none() {
            continue;
        }
        let mut path: Vec<usize> = Vec::new();
        let mut x = start;
        loop {
            if state[x] == 1 {
                // Found a cycle: walk it from x around.
                let pos = path.iter().position(|&p| p == x).expect("cycle start on path");
                for &node in &path[pos..] {
                    let t: usize = top[node].expect("cycle node has a top choice");
                    result.insert(Edge::new(node, t));
                }
                break;
            }
            if state[x] == 2 {
                break;
            }
            state[x] = 1;
            path.push(x);
            match top[x] {
                Some(t) => x = t,
                None => break, // top-less node cannot continue the walk
            }
        }
        for &node in &path {
            state[node] = 2;
        }
    }
    debug_assert!(!result.is_empty(), "first-choice walk must close a cycle");
    Ok(result.into_iter().collect())
}
