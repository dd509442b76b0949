//! Brute-force combinatorial oracles: subgraph classification and exhaustive
//! enumeration of forests, pseudoforests, cycles, even circuits, and
//! activity statistics.
//!
//! Nothing here touches linear algebra. These enumerations are the
//! independent side of every cross-check against the algebra engine, so they
//! stay deliberately naive: subsets are scanned, cycles are walked, and the
//! only concession to speed is a union-find with parity bits.

use std::collections::BTreeMap;

use num::One;
use thiserror::Error;

use crate::graphs::{GainAssignment, Multigraph, Orientation};
use crate::rational::Rational;
use crate::subset::EdgeSubset;

/// Default guard for the exponential enumerations.
pub const DEFAULT_EDGE_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("graph has {edges} edges, over the enumeration cap {cap}")]
    EdgeCapExceeded { edges: usize, cap: usize },
    #[error("subset is not a forest")]
    NotAForest,
    #[error("subset is not an odd-circle pseudoforest")]
    NotAnOddCirclePseudoforest,
    #[error("subset is not a simple cycle")]
    NotACycle,
    #[error("ordering must be a permutation of 0..{edges}")]
    BadOrdering { edges: usize },
}

fn check_cap(g: &Multigraph, cap: usize) -> Result<(), EnumerationError> {
    let edges = g.num_edges();
    if edges > cap.min(63) {
        return Err(EnumerationError::EdgeCapExceeded {
            edges,
            cap: cap.min(63),
        });
    }
    Ok(())
}

/// Union-find with parity of the path to the root, plus a per-component
/// count of cycle-closing edges.
struct ParityDsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    size: Vec<u32>,
    closing: Vec<u32>,
}

enum EdgeEffect {
    Merged,
    /// The edge closed a cycle; `odd` is the parity of the fundamental
    /// cycle it closes in the current spanning forest.
    ClosedCycle { odd: bool },
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
            size: vec![1; n],
            closing: vec![0; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, bool) {
        if self.parent[v] == v {
            return (v, false);
        }
        let (root, p) = self.find(self.parent[v]);
        let mine = self.parity[v] ^ p;
        self.parent[v] = root;
        self.parity[v] = mine;
        (root, mine)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> EdgeEffect {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            self.closing[ru] += 1;
            return EdgeEffect::ClosedCycle { odd: pu == pv };
        }
        let (big, small, offset) = if self.size[ru] >= self.size[rv] {
            (ru, rv, pu ^ pv ^ true)
        } else {
            (rv, ru, pu ^ pv ^ true)
        };
        self.parent[small] = big;
        self.parity[small] = offset;
        self.size[big] += self.size[small];
        self.closing[big] += self.closing[small];
        EdgeEffect::Merged
    }
}

/// One-pass structural summary of an edge subset.
struct SubgraphScan {
    is_forest: bool,
    is_pseudoforest: bool,
    /// Meaningful only when `is_pseudoforest`: every per-component cycle
    /// has odd length.
    all_cycles_odd: bool,
}

fn scan_subgraph(g: &Multigraph, s: EdgeSubset) -> SubgraphScan {
    let mut dsu = ParityDsu::new(g.num_vertices());
    let mut closing_total = 0u32;
    let mut all_odd = true;
    for e in s.iter() {
        let (u, v) = g.endpoints(e);
        if let EdgeEffect::ClosedCycle { odd } = dsu.add_edge(u, v) {
            closing_total += 1;
            if !odd {
                all_odd = false;
            }
        }
    }
    // Closing counts live at the roots; components merged after closing a
    // cycle pool their counts there, so check the roots at the end.
    let mut pseudoforest = true;
    if closing_total > 1 {
        for v in 0..g.num_vertices() {
            let (root, _) = dsu.find(v);
            if root == v && dsu.closing[v] >= 2 {
                pseudoforest = false;
                break;
            }
        }
    }
    SubgraphScan {
        is_forest: closing_total == 0,
        is_pseudoforest: pseudoforest,
        all_cycles_odd: all_odd,
    }
}

/// Acyclic edge subset?
pub fn is_forest(g: &Multigraph, s: EdgeSubset) -> bool {
    scan_subgraph(g, s).is_forest
}

/// At most one cycle per connected component?
pub fn is_pseudoforest(g: &Multigraph, s: EdgeSubset) -> bool {
    scan_subgraph(g, s).is_pseudoforest
}

/// Pseudoforest all of whose cycles are odd (a loop counts as an odd cycle
/// of length one)?
pub fn is_odd_circle_pseudoforest(g: &Multigraph, s: EdgeSubset) -> bool {
    let scan = scan_subgraph(g, s);
    scan.is_pseudoforest && scan.all_cycles_odd
}

/// Nonempty, connected, and every incident vertex of degree exactly two.
pub fn is_simple_cycle(g: &Multigraph, s: EdgeSubset) -> bool {
    if s.is_empty() {
        return false;
    }
    let mut degree = vec![0usize; g.num_vertices()];
    let mut dsu = ParityDsu::new(g.num_vertices());
    for e in s.iter() {
        let (u, v) = g.endpoints(e);
        degree[u] += 1;
        degree[v] += 1;
        dsu.add_edge(u, v);
    }
    let mut root = None;
    for v in 0..g.num_vertices() {
        if degree[v] == 0 {
            continue;
        }
        if degree[v] != 2 {
            return false;
        }
        let (r, _) = dsu.find(v);
        if *root.get_or_insert(r) != r {
            return false;
        }
    }
    true
}

/// An even circuit is a minimal non-(odd-circle pseudoforest): an even
/// cycle, an odd figure-eight, or an odd handcuff.
pub fn is_even_circuit(g: &Multigraph, s: EdgeSubset) -> bool {
    if is_odd_circle_pseudoforest(g, s) {
        return false;
    }
    s.iter()
        .all(|e| is_odd_circle_pseudoforest(g, s.without(e)))
}

/// Smallest sub-subset that is not an odd-circle pseudoforest, which is
/// always an even circuit when it exists.
fn minimal_even_circuit_within(g: &Multigraph, s: EdgeSubset) -> Option<EdgeSubset> {
    s.subsets_by_size()
        .into_iter()
        .find(|&t| !is_odd_circle_pseudoforest(g, t))
}

/// Classification of an edge subset, with an even-circuit witness whenever
/// one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgraphClass {
    Forest,
    OddCirclePseudoforest,
    /// Every component has at most one cycle, but some cycle is even. The
    /// witness is that even cycle, which is an even circuit.
    Pseudoforest { even_cycle: EdgeSubset },
    /// Some component has two or more independent cycles; the witness is a
    /// minimal even circuit inside the subset.
    ContainsEvenCircuit { witness: EdgeSubset },
    /// No even-circuit witness was found. Unreachable for multigraphs:
    /// every non-pseudoforest contains an even circuit.
    Other,
}

impl SubgraphClass {
    pub fn is_forest(&self) -> bool {
        matches!(self, SubgraphClass::Forest)
    }

    pub fn is_odd_circle_pseudoforest(&self) -> bool {
        matches!(
            self,
            SubgraphClass::Forest | SubgraphClass::OddCirclePseudoforest
        )
    }

    pub fn is_pseudoforest(&self) -> bool {
        matches!(
            self,
            SubgraphClass::Forest
                | SubgraphClass::OddCirclePseudoforest
                | SubgraphClass::Pseudoforest { .. }
        )
    }

    /// The even-circuit witness, present exactly when the subset is
    /// dependent in the even-circle matroid.
    pub fn even_circuit(&self) -> Option<EdgeSubset> {
        match self {
            SubgraphClass::Pseudoforest { even_cycle } => Some(*even_cycle),
            SubgraphClass::ContainsEvenCircuit { witness } => Some(*witness),
            _ => None,
        }
    }
}

/// Classifies an edge subset by cycle structure.
pub fn classify_subgraph(g: &Multigraph, s: EdgeSubset) -> SubgraphClass {
    let scan = scan_subgraph(g, s);
    if scan.is_forest {
        return SubgraphClass::Forest;
    }
    if scan.is_pseudoforest && scan.all_cycles_odd {
        return SubgraphClass::OddCirclePseudoforest;
    }
    match minimal_even_circuit_within(g, s) {
        Some(c) if scan.is_pseudoforest => SubgraphClass::Pseudoforest { even_cycle: c },
        Some(c) => SubgraphClass::ContainsEvenCircuit { witness: c },
        None => SubgraphClass::Other,
    }
}

/// All acyclic edge subsets, the empty one included.
pub fn enumerate_spanning_forests(
    g: &Multigraph,
    cap: usize,
) -> Result<impl Iterator<Item = EdgeSubset> + '_, EnumerationError> {
    check_cap(g, cap)?;
    Ok(EdgeSubset::all(g.num_edges()).filter(move |&s| is_forest(g, s)))
}

/// All subsets every component of which has at most one cycle, all odd.
pub fn enumerate_odd_circle_pseudoforests(
    g: &Multigraph,
    cap: usize,
) -> Result<impl Iterator<Item = EdgeSubset> + '_, EnumerationError> {
    check_cap(g, cap)?;
    Ok(EdgeSubset::all(g.num_edges()).filter(move |&s| is_odd_circle_pseudoforest(g, s)))
}

/// All subsets every component of which has at most one cycle.
pub fn enumerate_pseudoforests(
    g: &Multigraph,
    cap: usize,
) -> Result<impl Iterator<Item = EdgeSubset> + '_, EnumerationError> {
    check_cap(g, cap)?;
    Ok(EdgeSubset::all(g.num_edges()).filter(move |&s| is_pseudoforest(g, s)))
}

/// All simple cycles, found by depth-first search anchored at each cycle's
/// minimal edge. Loops are length-one cycles; parallel edges give
/// length-two cycles.
pub fn enumerate_cycles(
    g: &Multigraph,
    cap: usize,
) -> Result<Vec<EdgeSubset>, EnumerationError> {
    check_cap(g, cap)?;
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.num_vertices()];
    for (e, (t, h)) in g.edges().enumerate() {
        if t != h {
            adjacency[t].push((e, h));
            adjacency[h].push((e, t));
        }
    }
    let mut cycles = Vec::new();
    for anchor in 0..g.num_edges() {
        let (u, v) = g.endpoints(anchor);
        if u == v {
            cycles.push(EdgeSubset::empty().with(anchor));
            continue;
        }
        let mut visited = vec![false; g.num_vertices()];
        visited[v] = true;
        let mut path = Vec::new();
        extend_paths(
            &adjacency,
            anchor,
            u,
            v,
            &mut visited,
            &mut path,
            &mut cycles,
        );
    }
    Ok(cycles)
}

/// Grows simple paths from `current` toward `target` using edges above the
/// anchor, recording each completed cycle.
fn extend_paths(
    adjacency: &[Vec<(usize, usize)>],
    anchor: usize,
    target: usize,
    current: usize,
    visited: &mut [bool],
    path: &mut Vec<usize>,
    cycles: &mut Vec<EdgeSubset>,
) {
    for &(e, w) in &adjacency[current] {
        if e <= anchor || path.contains(&e) {
            continue;
        }
        if w == target {
            let mut s = EdgeSubset::empty().with(anchor).with(e);
            for &f in path.iter() {
                s = s.with(f);
            }
            cycles.push(s);
            continue;
        }
        if visited[w] {
            continue;
        }
        visited[w] = true;
        path.push(e);
        extend_paths(adjacency, anchor, target, w, visited, path, cycles);
        path.pop();
        visited[w] = false;
    }
}

/// Linear ordering of the edges; position in the permutation is priority.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrdering {
    rank: Vec<usize>,
}

impl EdgeOrdering {
    /// Edge-list order.
    pub fn natural(num_edges: usize) -> Self {
        EdgeOrdering {
            rank: (0..num_edges).collect(),
        }
    }

    /// `perm[i]` is the edge in position `i`, smallest first.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, EnumerationError> {
        let m = perm.len();
        let mut rank = vec![usize::MAX; m];
        for (i, &e) in perm.iter().enumerate() {
            if e >= m || rank[e] != usize::MAX {
                return Err(EnumerationError::BadOrdering { edges: m });
            }
            rank[e] = i;
        }
        Ok(EdgeOrdering { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, e: usize) -> usize {
        self.rank[e]
    }

    /// Minimal edge of the subset under this ordering.
    pub fn min_edge(&self, s: EdgeSubset) -> Option<usize> {
        s.iter().min_by_key(|&e| self.rank[e])
    }
}

/// Edges of the unique path between `u` and `v` inside the forest `f`, or
/// `None` when they are disconnected.
fn forest_path(g: &Multigraph, f: EdgeSubset, u: usize, v: usize) -> Option<Vec<usize>> {
    if u == v {
        return Some(Vec::new());
    }
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.num_vertices()];
    for e in f.iter() {
        let (t, h) = g.endpoints(e);
        adjacency[t].push((e, h));
        adjacency[h].push((e, t));
    }
    let mut stack = vec![u];
    let mut parent_edge: Vec<Option<(usize, usize)>> = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[u] = true;
    while let Some(x) = stack.pop() {
        if x == v {
            let mut path = Vec::new();
            let mut cur = v;
            while cur != u {
                let (e, prev) = parent_edge[cur].expect("walked from u");
                path.push(e);
                cur = prev;
            }
            return Some(path);
        }
        for &(e, w) in &adjacency[x] {
            if !seen[w] {
                seen[w] = true;
                parent_edge[w] = Some((e, x));
                stack.push(w);
            }
        }
    }
    None
}

/// Number of edges outside the forest `f` that are minimal in the unique
/// cycle they close.
pub fn external_activity(
    g: &Multigraph,
    f: EdgeSubset,
    ordering: &EdgeOrdering,
) -> Result<usize, EnumerationError> {
    if !is_forest(g, f) {
        return Err(EnumerationError::NotAForest);
    }
    let mut active = 0;
    for e in 0..g.num_edges() {
        if f.contains(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        if u == v {
            // the loop itself is the cycle, and e is trivially its minimum
            active += 1;
            continue;
        }
        if let Some(path) = forest_path(g, f, u, v) {
            if path.iter().all(|&p| ordering.rank(e) < ordering.rank(p)) {
                active += 1;
            }
        }
    }
    Ok(active)
}

/// Number of edges outside the odd-circle pseudoforest `f` that are minimal
/// in the even circuit they create.
pub fn even_activity(
    g: &Multigraph,
    f: EdgeSubset,
    ordering: &EdgeOrdering,
) -> Result<usize, EnumerationError> {
    if !is_odd_circle_pseudoforest(g, f) {
        return Err(EnumerationError::NotAnOddCirclePseudoforest);
    }
    let mut active = 0;
    for e in 0..g.num_edges() {
        if f.contains(e) {
            continue;
        }
        let s = f.with(e);
        if is_odd_circle_pseudoforest(g, s) {
            continue;
        }
        let circuit =
            minimal_even_circuit_within(g, s).expect("non-pseudoforest has an even circuit");
        if ordering.min_edge(circuit) == Some(e) {
            active += 1;
        }
    }
    Ok(active)
}

/// Histogram of activities plus the re-indexed degree profile
/// `dims[j] = #{F : |E| - |F| - act(F) = j}` that lines up with graded
/// algebra dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityProfile {
    num_edges: usize,
    counts: BTreeMap<usize, u64>,
    dims: Vec<u64>,
    total: u64,
}

impl ActivityProfile {
    pub fn new(num_edges: usize) -> Self {
        ActivityProfile {
            num_edges,
            counts: BTreeMap::new(),
            dims: vec![0; num_edges + 1],
            total: 0,
        }
    }

    pub fn record(&mut self, subset_size: usize, activity: usize) {
        *self.counts.entry(activity).or_insert(0) += 1;
        let degree = self.num_edges - subset_size - activity;
        self.dims[degree] += 1;
        self.total += 1;
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn count(&self, activity: usize) -> u64 {
        self.counts.get(&activity).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Re-indexed profile with trailing zeros trimmed, directly comparable
    /// to [`crate::algebra::HilbertFunction::dims`].
    pub fn hilbert_dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.dims.iter().map(|&d| d as usize).collect();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }
}

/// Activity histogram over all forests.
pub fn forest_activity_profile(
    g: &Multigraph,
    ordering: &EdgeOrdering,
    cap: usize,
) -> Result<ActivityProfile, EnumerationError> {
    check_cap(g, cap)?;
    let mut profile = ActivityProfile::new(g.num_edges());
    for s in EdgeSubset::all(g.num_edges()) {
        if is_forest(g, s) {
            let act = external_activity(g, s, ordering)?;
            profile.record(s.len(), act);
        }
    }
    Ok(profile)
}

/// Even-activity histogram over all odd-circle pseudoforests.
pub fn even_activity_profile(
    g: &Multigraph,
    ordering: &EdgeOrdering,
    cap: usize,
) -> Result<ActivityProfile, EnumerationError> {
    check_cap(g, cap)?;
    let mut profile = ActivityProfile::new(g.num_edges());
    for s in EdgeSubset::all(g.num_edges()) {
        if is_odd_circle_pseudoforest(g, s) {
            let act = even_activity(g, s, ordering)?;
            profile.record(s.len(), act);
        }
    }
    Ok(profile)
}

/// Traversal direction for a cycle gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleDirection {
    Forward,
    Reverse,
}

/// Gain (circulation) along the cycle `s`: the product of edge gains with
/// exponent +1 where the traversal agrees with the orientation and -1 where
/// it does not. The two directions give reciprocal values.
pub fn cycle_gain(
    g: &Multigraph,
    orientation: &Orientation,
    gains: &GainAssignment,
    s: EdgeSubset,
    direction: CycleDirection,
) -> Result<Rational, EnumerationError> {
    if !is_simple_cycle(g, s) {
        return Err(EnumerationError::NotACycle);
    }
    let anchor = s.iter().next().expect("cycle is nonempty");
    let mut product = Rational::one();
    let mut apply = |edge: usize, with_orientation: bool| {
        let sign = match direction {
            CycleDirection::Forward => with_orientation,
            CycleDirection::Reverse => !with_orientation,
        };
        if sign {
            product *= gains.gain(edge);
        } else {
            product *= gains.gain(edge).recip();
        }
    };
    if g.is_loop(anchor) {
        apply(anchor, true);
        return Ok(product);
    }
    let (start, mut current) = orientation.directed_endpoints(g, anchor);
    apply(anchor, true);
    let mut used = EdgeSubset::empty().with(anchor);
    while current != start {
        let e = s
            .iter()
            .find(|&e| {
                if used.contains(e) {
                    return false;
                }
                let (t, h) = g.endpoints(e);
                t == current || h == current
            })
            .expect("degree-two walk continues");
        let (t, h) = orientation.directed_endpoints(g, e);
        let next = if t == current { h } else { t };
        apply(e, t == current);
        used = used.with(e);
        current = next;
    }
    Ok(product)
}

/// Whether the cycle's gain is one; independent of the traversal direction.
pub fn is_gainless(
    g: &Multigraph,
    orientation: &Orientation,
    gains: &GainAssignment,
    s: EdgeSubset,
) -> Result<bool, EnumerationError> {
    Ok(cycle_gain(g, orientation, gains, s, CycleDirection::Forward)?.is_one())
}
