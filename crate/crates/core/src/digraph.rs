//! Dense digraph value type.
//!
//! A [`Digraph`] stores one `u16` bitset row per vertex for out-neighbours and
//! a transposed copy for in-neighbours, so every degree query (including
//! degrees restricted to a vertex set) is a popcount. Orders are capped at
//! [`MAX_ORDER`].

use std::fmt;

use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 16;

const _: () = assert!(MAX_ORDER <= u16::BITS as usize);

/// A set of vertices of a digraph of order at most [`MAX_ORDER`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u16::MAX)
        } else {
            VertexSet((1u16 << n) - 1)
        }
    }

    pub fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1 << v))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in increasing order.
    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

pub struct VertexSetIter(u16);

impl Iterator for VertexSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Out-, in- and total degree of a vertex, possibly restricted to a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degrees {
    pub out: usize,
    pub inn: usize,
    pub total: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("digraph order must be at least 1")]
    EmptyOrder,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("arc ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("vertex set contains a vertex outside 0..{0}")]
    VertexSetOutOfRange(usize),
}

/// A loop-free digraph on vertices `0..n` without multiple arcs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: u8,
    out: [u16; MAX_ORDER],
    inn: [u16; MAX_ORDER],
}

impl Digraph {
    /// Builds a digraph with exactly the given arcs.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            if g.has_arc(u, v) {
                return Err(DigraphError::DuplicateArc(u, v));
            }
            g.add_arc_unchecked(u, v);
        }
        Ok(g)
    }

    /// The arcless digraph of order `n`.
    pub fn empty(n: usize) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::EmptyOrder);
        }
        if n > MAX_ORDER {
            return Err(DigraphError::OrderTooLarge(n));
        }
        Ok(Digraph {
            n: n as u8,
            out: [0; MAX_ORDER],
            inn: [0; MAX_ORDER],
        })
    }

    /// Decodes an arc subset of the `n(n-1)` off-diagonal pairs, listed in
    /// row-major order (`(0,1), (0,2), ..., (1,0), (1,2), ...`); bit `j` of
    /// `mask` selects pair `j`.
    ///
    /// # Panics
    /// Panics unless `1 <= n <= 8`.
    pub fn from_arc_mask(n: usize, mask: u64) -> Self {
        assert!((1..=8).contains(&n), "arc masks cover orders 1..=8");
        let mut g = Digraph {
            n: n as u8,
            out: [0; MAX_ORDER],
            inn: [0; MAX_ORDER],
        };
        let mut bit = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if mask >> bit & 1 == 1 {
                    g.add_arc_unchecked(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    /// Inverse of [`Digraph::from_arc_mask`].
    pub fn arc_mask(&self) -> u64 {
        let n = self.order();
        assert!(n <= 8, "arc masks cover orders 1..=8");
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if self.has_arc(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    fn add_arc_unchecked(&mut self, u: usize, v: usize) {
        self.out[u] |= 1 << v;
        self.inn[v] |= 1 << u;
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    pub fn arc_count(&self) -> usize {
        self.out[..self.order()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.out[u] & (1 << v) != 0
    }

    /// `u` and `v` are distinct and joined by an arc in at least one direction.
    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (self.has_arc(u, v) || self.has_arc(v, u))
    }

    pub fn out_neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.out[v])
    }

    pub fn in_neighbours(&self, v: usize) -> VertexSet {
        VertexSet(self.inn[v])
    }

    /// Vertices other than `v` not adjacent to `v`.
    pub fn non_neighbours(&self, v: usize) -> VertexSet {
        VertexSet(!(self.out[v] | self.inn[v]) & self.vertices().0 & !(1 << v))
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones() as usize
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn degrees(&self, v: usize) -> Degrees {
        let out = self.out_degree(v);
        let inn = self.in_degree(v);
        Degrees {
            out,
            inn,
            total: out + inn,
        }
    }

    /// Degrees of `v` counting only arcs whose other endpoint lies in `set`.
    pub fn degrees_toward(&self, v: usize, set: VertexSet) -> Degrees {
        let out = (self.out[v] & set.0).count_ones() as usize;
        let inn = (self.inn[v] & set.0).count_ones() as usize;
        Degrees {
            out,
            inn,
            total: out + inn,
        }
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.order()).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    pub fn min_in_degree(&self) -> usize {
        (0..self.order()).map(|v| self.in_degree(v)).min().unwrap_or(0)
    }

    /// Every arc reversed.
    pub fn converse(&self) -> Self {
        Digraph {
            n: self.n,
            out: self.inn,
            inn: self.out,
        }
    }

    /// Vertices reachable from `v` by directed paths (including `v`).
    pub fn reachable_from(&self, v: usize) -> VertexSet {
        closure(&self.out, v, self.vertices().0)
    }

    /// Every ordered pair is joined by a directed path. Order 1 counts as strong.
    pub fn is_strong(&self) -> bool {
        let all = self.vertices().0;
        closure(&self.out, 0, all) == VertexSet(all) && closure(&self.inn, 0, all) == VertexSet(all)
    }

    /// Unordered non-adjacent pairs `(u, v)`, `u < v`, lexicographically.
    pub fn non_adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in 0..self.order() {
            for v in self.non_neighbours(u).iter().filter(|&v| v > u) {
                pairs.push((u, v));
            }
        }
        pairs
    }

    /// No two distinct vertices are non-adjacent.
    pub fn is_semicomplete(&self) -> bool {
        (0..self.order()).all(|v| self.non_neighbours(v).is_empty())
    }

    /// Exactly one arc between every pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        (0..self.order()).all(|v| {
            self.non_neighbours(v).is_empty() && self.out[v] & self.inn[v] == 0
        })
    }

    /// The subdigraph induced by `set`, relabelled to `0..|set|` in increasing
    /// vertex order. The second component maps new labels to old ones.
    pub fn induced_subdigraph(&self, set: VertexSet) -> Result<(Digraph, Vec<usize>), DigraphError> {
        if set.is_empty() {
            return Err(DigraphError::EmptyVertexSet);
        }
        if !set.is_subset(self.vertices()) {
            return Err(DigraphError::VertexSetOutOfRange(self.order()));
        }
        let map: Vec<usize> = set.iter().collect();
        let mut sub = Digraph::empty(map.len())?;
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if self.has_arc(u, v) {
                    sub.add_arc_unchecked(i, j);
                }
            }
        }
        Ok((sub, map))
    }

    /// Relabels vertex `v` as `perm[v]`.
    ///
    /// # Panics
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal the order");
        assert_eq!(
            perm.iter().copied().collect::<VertexSet>(),
            self.vertices(),
            "not a permutation"
        );
        let mut g = Digraph::empty(n).expect("order already validated");
        for (u, v) in self.arcs() {
            g.add_arc_unchecked(perm[u], perm[v]);
        }
        g
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.out_neighbours(u).iter().map(move |v| (u, v)))
    }

    /// Renders the text format: `n m` header then one `u v` line per arc.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.order(), self.arc_count());
        for (u, v) in self.arcs() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the text format. Lines starting with `#` and blank lines are
    /// skipped.
    pub fn parse_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let (n, m) = parse_pair(header, line_no)?;
        let mut arcs = Vec::with_capacity(m);
        for (line_no, line) in lines {
            if arcs.len() == m {
                return Err(ParseError::ArcCountMismatch {
                    declared: m,
                    found: arcs.len() + 1,
                });
            }
            arcs.push(parse_pair(line, line_no)?);
        }
        if arcs.len() != m {
            return Err(ParseError::ArcCountMismatch {
                declared: m,
                found: arcs.len(),
            });
        }
        Ok(Digraph::new(n, &arcs)?)
    }
}

fn closure(rows: &[u16; MAX_ORDER], start: usize, all: u16) -> VertexSet {
    let mut seen = 1u16 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u16;
        for v in VertexSet(frontier) {
            next |= rows[v];
        }
        frontier = next & all & !seen;
        seen |= frontier;
    }
    VertexSet(seen)
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let bad = || ParseError::Malformed {
        line: line_no,
        content: line.to_string(),
    };
    let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if it.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error("line {line}: expected two non-negative integers, got `{content}`")]
    Malformed { line: usize, content: String },
    #[error("header declares {declared} arcs but {found} arc lines were found")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs().collect::<Vec<_>>())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("a path needs at least 1 vertex and a cycle at least 2")]
    TooShort,
    #[error("vertex {0} is outside the digraph")]
    OutOfRange(usize),
    #[error("vertex {0} repeats")]
    Repeated(usize),
    #[error("missing arc ({0}, {1})")]
    MissingArc(usize, usize),
}

fn check_walk(g: &Digraph, vertices: &[usize], closed: bool) -> Result<(), WalkError> {
    let mut seen = VertexSet::EMPTY;
    for &v in vertices {
        if v >= g.order() {
            return Err(WalkError::OutOfRange(v));
        }
        if seen.contains(v) {
            return Err(WalkError::Repeated(v));
        }
        seen.insert(v);
    }
    for w in vertices.windows(2) {
        if !g.has_arc(w[0], w[1]) {
            return Err(WalkError::MissingArc(w[0], w[1]));
        }
    }
    if closed {
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if !g.has_arc(last, first) {
            return Err(WalkError::MissingArc(last, first));
        }
    }
    Ok(())
}

/// A directed path: distinct vertices with an arc between consecutive ones,
/// validated against the digraph it was built from.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(g: &Digraph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::TooShort);
        }
        check_walk(g, &vertices, false)?;
        Ok(Path(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    /// Re-checks the path invariant against `g`.
    pub fn is_valid_in(&self, g: &Digraph) -> bool {
        !self.0.is_empty() && check_walk(g, &self.0, false).is_ok()
    }
}

/// A directed cycle `v0 v1 ... v(k-1) v0` with `k >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(g: &Digraph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        if vertices.len() < 2 {
            return Err(WalkError::TooShort);
        }
        check_walk(g, &vertices, true)?;
        Ok(Cycle(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertex at position `i` taken modulo the length.
    pub fn at(&self, i: usize) -> usize {
        self.0[i % self.0.len()]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.0.iter().copied().collect()
    }

    pub fn is_valid_in(&self, g: &Digraph) -> bool {
        self.0.len() >= 2 && check_walk(g, &self.0, true).is_ok()
    }
}
