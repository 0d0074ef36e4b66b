//! Exact exponential-time structure oracles.
//!
//! All searches are depth-first with neighbours tried in increasing order, so
//! the witness returned is the lexicographically first one in that order.
//! Hamiltonian-path searches prune on vertices that can no longer receive a
//! predecessor or a successor and on reachability inside the unvisited set;
//! from order 9 up failed `(vertex, unvisited set)` states are memoised.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Cycle, Digraph, Path, VertexSet};
use crate::families::{bypass_pattern, FamilyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {n} is below the minimum {min} for this search")]
    OrderTooSmall { n: usize, min: usize },
    #[error("cycle length {m} outside [2, {n}]")]
    LengthOutOfRange { m: usize, n: usize },
    #[error("pattern parameter k = {k} outside [2, {n}]")]
    PatternOutOfRange { k: usize, n: usize },
    #[error("endpoints must be distinct members of the vertex set")]
    BadEndpoints,
}

/// Vertex order `v1..vn` of a Hamiltonian bypass: the path `v1 -> ... -> vn`
/// plus the arc `v1 -> vn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BypassWitness {
    pub order: Vec<usize>,
}

/// Injective map from the vertices of `D(n, k)` into a digraph that sends
/// pattern arcs to arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternEmbedding {
    pub k: usize,
    /// `map[i]` is the image of pattern vertex `i`.
    pub map: Vec<usize>,
}

const MEMO_FROM_ORDER: usize = 9;

struct HamPathSearch<'a> {
    g: &'a Digraph,
    ends: VertexSet,
    /// End vertices may only occupy the last position.
    exclusive: bool,
    path: Vec<usize>,
    failed: Option<HashSet<(u16, u8)>>,
}

impl<'a> HamPathSearch<'a> {
    /// Path starting at `start`, covering `set` exactly, ending in `ends`.
    fn run(
        g: &'a Digraph,
        start: usize,
        set: VertexSet,
        ends: VertexSet,
        exclusive: bool,
    ) -> Option<Vec<usize>> {
        let mut s = HamPathSearch {
            g,
            ends,
            exclusive,
            path: Vec::with_capacity(set.len()),
            failed: (set.len() >= MEMO_FROM_ORDER).then(HashSet::new),
        };
        s.path.push(start);
        if s.dfs(start, set.without(start)) {
            Some(s.path)
        } else {
            None
        }
    }

    fn dfs(&mut self, cur: usize, remaining: VertexSet) -> bool {
        if remaining.is_empty() {
            return self.ends.contains(cur);
        }
        if !self.feasible(cur, remaining) {
            return false;
        }
        let key = (remaining.bits(), cur as u8);
        if let Some(failed) = &self.failed {
            if failed.contains(&key) {
                return false;
            }
        }
        let mut next = self.g.out_neighbours(cur).intersection(remaining);
        if self.exclusive && remaining.len() > 1 {
            next = next.difference(self.ends);
        }
        for v in next {
            self.path.push(v);
            if self.dfs(v, remaining.without(v)) {
                return true;
            }
            self.path.pop();
        }
        if let Some(failed) = &mut self.failed {
            failed.insert(key);
        }
        false
    }

    fn feasible(&self, cur: usize, remaining: VertexSet) -> bool {
        if remaining.is_disjoint(self.ends) {
            return false;
        }
        let pred_pool = if self.exclusive {
            remaining.difference(self.ends)
        } else {
            remaining
        };
        for v in remaining {
            let preds = self
                .g
                .in_neighbours(v)
                .intersection(pred_pool.without(v).with(cur));
            if preds.is_empty() {
                return false;
            }
            if !self.ends.contains(v)
                && self
                    .g
                    .out_neighbours(v)
                    .is_disjoint(remaining.without(v))
            {
                return false;
            }
        }
        remaining.is_subset(reach_within(self.g, cur, remaining))
    }
}

/// Vertices of `within` reachable from `start` through vertices of `within`.
fn reach_within(g: &Digraph, start: usize, within: VertexSet) -> VertexSet {
    let mut seen = VertexSet::EMPTY;
    let mut frontier = g.out_neighbours(start).intersection(within);
    while !frontier.is_empty() {
        seen = seen.union(frontier);
        let mut next = VertexSet::EMPTY;
        for v in frontier {
            next = next.union(g.out_neighbours(v));
        }
        frontier = next.intersection(within).difference(seen);
    }
    seen
}

/// Some cycle of exactly `m` vertices inside `allowed`, or `None`.
fn cycle_within(g: &Digraph, m: usize, allowed: VertexSet) -> Option<Vec<usize>> {
    if m < 2 || m > allowed.len() {
        return None;
    }
    if m == allowed.len() {
        let start = allowed.first()?;
        let ends = g.in_neighbours(start).intersection(allowed);
        return HamPathSearch::run(g, start, allowed, ends, false);
    }
    for s in allowed {
        let pool = VertexSet::from_bits(allowed.bits() & !((2u32 << s) - 1) as u16);
        let mut path = vec![s];
        if cycle_dfs(g, s, m, pool, &mut path) {
            return Some(path);
        }
    }
    None
}

fn cycle_dfs(g: &Digraph, s: usize, m: usize, pool: VertexSet, path: &mut Vec<usize>) -> bool {
    let cur = *path.last().expect("path starts nonempty");
    if path.len() == m {
        return g.has_arc(cur, s);
    }
    let need = m - path.len();
    if reach_within(g, cur, pool).len() < need {
        return false;
    }
    for v in g.out_neighbours(cur).intersection(pool) {
        path.push(v);
        if cycle_dfs(g, s, m, pool.without(v), path) {
            return true;
        }
        path.pop();
    }
    false
}

fn all_cycles_dfs(
    g: &Digraph,
    s: usize,
    m: usize,
    pool: VertexSet,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let cur = *path.last().expect("path starts nonempty");
    if path.len() == m {
        if g.has_arc(cur, s) {
            out.push(path.clone());
        }
        return;
    }
    for v in g.out_neighbours(cur).intersection(pool) {
        path.push(v);
        all_cycles_dfs(g, s, m, pool.without(v), path, out);
        path.pop();
    }
}

fn wrap_cycle(g: &Digraph, vertices: Vec<usize>) -> Cycle {
    Cycle::new(g, vertices).expect("search produced a valid cycle")
}

/// A cycle of exactly `m` vertices, smallest start vertex first.
pub fn find_cycle_of_length(g: &Digraph, m: usize) -> Result<Option<Cycle>, SearchError> {
    let n = g.order();
    if m < 2 || m > n {
        return Err(SearchError::LengthOutOfRange { m, n });
    }
    Ok(cycle_within(g, m, g.vertices()).map(|c| wrap_cycle(g, c)))
}

/// A cycle of exactly `m` vertices using only vertices of `allowed`.
pub fn find_cycle_within(g: &Digraph, m: usize, allowed: VertexSet) -> Option<Cycle> {
    cycle_within(g, m, allowed.intersection(g.vertices())).map(|c| wrap_cycle(g, c))
}

/// Every cycle of exactly `m` vertices, each listed once starting from its
/// smallest vertex.
pub fn all_cycles_of_length(g: &Digraph, m: usize) -> Result<Vec<Cycle>, SearchError> {
    let n = g.order();
    if m < 2 || m > n {
        return Err(SearchError::LengthOutOfRange { m, n });
    }
    let mut out = Vec::new();
    for s in 0..n {
        let pool = VertexSet::from_bits(g.vertices().bits() & !((2u32 << s) - 1) as u16);
        let mut path = vec![s];
        all_cycles_dfs(g, s, m, pool, &mut path, &mut out);
    }
    Ok(out.into_iter().map(|c| wrap_cycle(g, c)).collect())
}

pub fn find_hamiltonian_cycle(g: &Digraph) -> Option<Cycle> {
    if g.order() < 2 {
        return None;
    }
    cycle_within(g, g.order(), g.vertices()).map(|c| wrap_cycle(g, c))
}

/// A cycle through all vertices but one.
pub fn find_pre_hamiltonian_cycle(g: &Digraph) -> Result<Option<Cycle>, SearchError> {
    let n = g.order();
    if n < 3 {
        return Err(SearchError::OrderTooSmall { n, min: 3 });
    }
    find_cycle_of_length(g, n - 1)
}

/// A path from `u` to `v` visiting every vertex of `set` exactly once.
pub fn find_hamiltonian_path_between(
    g: &Digraph,
    u: usize,
    v: usize,
    set: VertexSet,
) -> Result<Option<Path>, SearchError> {
    if u == v || !set.contains(u) || !set.contains(v) || !set.is_subset(g.vertices()) {
        return Err(SearchError::BadEndpoints);
    }
    Ok(HamPathSearch::run(g, u, set, VertexSet::singleton(v), true)
        .map(|p| Path::new(g, p).expect("search produced a valid path")))
}

/// The lexicographically smallest bypass order, if any.
pub fn find_hamiltonian_bypass(g: &Digraph) -> Result<Option<BypassWitness>, SearchError> {
    let n = g.order();
    if n < 3 {
        return Err(SearchError::OrderTooSmall { n, min: 3 });
    }
    for u in 0..n {
        if g.out_degree(u) < 2 {
            continue;
        }
        if let Some(order) = HamPathSearch::run(g, u, g.vertices(), g.out_neighbours(u), false) {
            return Ok(Some(BypassWitness { order }));
        }
    }
    Ok(None)
}

pub fn has_hamiltonian_bypass(g: &Digraph) -> bool {
    g.order() >= 3 && matches!(find_hamiltonian_bypass(g), Ok(Some(_)))
}

pub fn validate_bypass(g: &Digraph, w: &BypassWitness) -> bool {
    let o = &w.order;
    o.len() == g.order()
        && o.len() >= 3
        && Path::new(g, o.clone()).is_ok()
        && g.has_arc(o[0], o[o.len() - 1])
}

/// Spanning subgraph embedding of `pattern` into `g` (same order, arcs need
/// not be induced). Pattern vertices are placed in index order.
pub fn find_spanning_embedding(pattern: &Digraph, g: &Digraph) -> Option<Vec<usize>> {
    if pattern.order() != g.order() || pattern.arc_count() > g.arc_count() {
        return None;
    }
    let mut map = Vec::with_capacity(g.order());
    if embed(pattern, g, VertexSet::EMPTY, &mut map) {
        Some(map)
    } else {
        None
    }
}

fn embed(pattern: &Digraph, g: &Digraph, used: VertexSet, map: &mut Vec<usize>) -> bool {
    let i = map.len();
    if i == pattern.order() {
        return true;
    }
    let (need_out, need_in) = (pattern.out_degree(i), pattern.in_degree(i));
    for c in g.vertices().difference(used) {
        if g.out_degree(c) < need_out || g.in_degree(c) < need_in {
            continue;
        }
        let consistent = map.iter().enumerate().all(|(j, &img)| {
            (!pattern.has_arc(i, j) || g.has_arc(c, img)) && (!pattern.has_arc(j, i) || g.has_arc(img, c))
        });
        if !consistent {
            continue;
        }
        map.push(c);
        if embed(pattern, g, used.with(c), map) {
            return true;
        }
        map.pop();
    }
    false
}

/// A spanning copy of `D(n, k)` in `g`.
pub fn find_bypass_pattern(g: &Digraph, k: usize) -> Result<Option<PatternEmbedding>, SearchError> {
    let n = g.order();
    if n < 3 {
        return Err(SearchError::OrderTooSmall { n, min: 3 });
    }
    let pattern = bypass_pattern(n, k).map_err(|e| match e {
        FamilyError::BadParameter { .. } | FamilyError::Digraph(_) => {
            SearchError::PatternOutOfRange { k, n }
        }
    })?;
    Ok(find_spanning_embedding(&pattern, g).map(|map| PatternEmbedding { k, map }))
}

/// An `(n-1)`-cycle whose missing vertex has degree at least `n`.
pub fn find_good_cycle(g: &Digraph) -> Result<Option<Cycle>, SearchError> {
    let n = g.order();
    if n < 3 {
        return Err(SearchError::OrderTooSmall { n, min: 3 });
    }
    for y in (0..n).filter(|&y| g.degree(y) >= n) {
        if let Some(c) = cycle_within(g, n - 1, g.vertices().without(y)) {
            return Ok(Some(wrap_cycle(g, c)));
        }
    }
    Ok(None)
}
