//! Partner insertion machinery.
//!
//! A path `Q` has a *partner* on a host path `P` when some arc `P[i] -> P[i+1]`
//! of `P` satisfies `P[i] -> Q.first` and `Q.last -> P[i+1]`; then `Q` can be
//! spliced in between. Partner indices are 1-based: index `i` names the `i`-th
//! arc of the host path.
//!
//! Choices are deterministic throughout: lowest vertex first, smallest partner
//! index first.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Cycle, Digraph, Path, VertexSet};
use crate::search::find_hamiltonian_path_between;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InsertionError {
    #[error("vertex {0} already lies on the host path")]
    VertexOnPath(usize),
    #[error("host path needs at least two vertices")]
    HostTooShort,
    #[error("inserted path shares vertices with the host path")]
    Overlap,
    #[error("arc {0} of the host path is not a partner of the inserted path")]
    InvalidPartner(usize),
    #[error("cycle has {len} vertices but order {n} needs {expected}")]
    CycleLength { len: usize, n: usize, expected: usize },
    #[error("vertex {0} lies on the cycle")]
    VertexOnCycle(usize),
}

/// 1-based index of a host-path arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PartnerIndex(pub usize);

impl PartnerIndex {
    /// 0-based position of the tail of the partner arc.
    pub fn tail_position(self) -> usize {
        self.0 - 1
    }
}

fn partners_between<'a>(
    g: &'a Digraph,
    p: &'a [usize],
    first: usize,
    last: usize,
) -> impl Iterator<Item = PartnerIndex> + 'a {
    p.windows(2)
        .enumerate()
        .filter(move |(_, w)| g.has_arc(w[0], first) && g.has_arc(last, w[1]))
        .map(|(i, _)| PartnerIndex(i + 1))
}

/// Smallest partner of the single vertex `x` on `p`.
pub fn find_partner_for_vertex(
    g: &Digraph,
    p: &Path,
    x: usize,
) -> Result<Option<PartnerIndex>, InsertionError> {
    if p.vertex_set().contains(x) {
        return Err(InsertionError::VertexOnPath(x));
    }
    if p.len() < 2 {
        return Err(InsertionError::HostTooShort);
    }
    Ok(partners_between(g, p.vertices(), x, x).next())
}

/// Smallest partner of the whole path `q` on `p`.
pub fn find_partner_for_path(g: &Digraph, p: &Path, q: &Path) -> Option<PartnerIndex> {
    if p.len() < 2 || !p.vertex_set().is_disjoint(q.vertex_set()) {
        return None;
    }
    partners_between(g, p.vertices(), q.first(), q.last()).next()
}

/// `P[1..i] Q P[i+1..]`.
pub fn insert_at(g: &Digraph, p: &Path, i: PartnerIndex, q: &Path) -> Result<Path, InsertionError> {
    if p.len() < 2 {
        return Err(InsertionError::HostTooShort);
    }
    if !p.vertex_set().is_disjoint(q.vertex_set()) {
        return Err(InsertionError::Overlap);
    }
    let pv = p.vertices();
    if i.0 == 0 || i.0 >= pv.len() {
        return Err(InsertionError::InvalidPartner(i.0));
    }
    let (a, b) = (pv[i.tail_position()], pv[i.0]);
    if !g.has_arc(a, q.first()) || !g.has_arc(q.last(), b) {
        return Err(InsertionError::InvalidPartner(i.0));
    }
    let mut out = Vec::with_capacity(pv.len() + q.len());
    out.extend_from_slice(&pv[..i.0]);
    out.extend_from_slice(q.vertices());
    out.extend_from_slice(&pv[i.0..]);
    Ok(Path::new(g, out).expect("partner insertion preserves the path invariant"))
}

/// Hypothesis cases of the single-vertex insertion lemma, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma2Case {
    I,
    II,
    III,
}

/// How case (ii) reads its second disjunct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Lemma2Reading {
    /// `x -> P[1]` absent or `P[m] -> x` absent.
    #[default]
    Corrected,
    /// `x -> P[1]` absent or `P[m] -> P[1]` absent, as printed.
    Literal,
}

pub fn lemma2_hypothesis(g: &Digraph, p: &Path, x: usize) -> Option<Lemma2Case> {
    lemma2_hypothesis_with(g, p, x, Lemma2Reading::Corrected)
}

pub fn lemma2_hypothesis_with(
    g: &Digraph,
    p: &Path,
    x: usize,
    reading: Lemma2Reading,
) -> Option<Lemma2Case> {
    if p.vertex_set().contains(x) || x >= g.order() {
        return None;
    }
    let m = p.len();
    let d = g.degrees_toward(x, p.vertex_set()).total;
    let (first, last) = (p.first(), p.last());
    let no_x_first = !g.has_arc(x, first);
    let no_last_x = !g.has_arc(last, x);
    if d >= m + 2 {
        return Some(Lemma2Case::I);
    }
    let second = match reading {
        Lemma2Reading::Corrected => no_last_x,
        Lemma2Reading::Literal => !g.has_arc(last, first),
    };
    if d > m && (no_x_first || second) {
        return Some(Lemma2Case::II);
    }
    if d >= m && no_x_first && no_last_x {
        return Some(Lemma2Case::III);
    }
    None
}

/// Which indicator arcs the whole-path insertion bound subtracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Lemma4Reading {
    /// `P.last -> Q.first` and `Q.last -> P.first`: the arcs that cannot
    /// take part in a partner.
    #[default]
    Corrected,
    /// `Q.first -> P.first` and `P.last -> Q.last`, as printed.
    Literal,
}

/// `d-(Q.first, P) + d+(Q.last, P) >= |P| + [P.last -> Q.first] + [Q.last -> P.first]`.
pub fn lemma4_hypothesis(g: &Digraph, p: &Path, q: &Path) -> bool {
    lemma4_hypothesis_with(g, p, q, Lemma4Reading::Corrected)
}

pub fn lemma4_hypothesis_with(g: &Digraph, p: &Path, q: &Path, reading: Lemma4Reading) -> bool {
    if p.len() < 2 || !p.vertex_set().is_disjoint(q.vertex_set()) {
        return false;
    }
    let set = p.vertex_set();
    let lhs = g.degrees_toward(q.first(), set).inn + g.degrees_toward(q.last(), set).out;
    let (a, b) = match reading {
        Lemma4Reading::Corrected => (
            g.has_arc(p.last(), q.first()),
            g.has_arc(q.last(), p.first()),
        ),
        Lemma4Reading::Literal => (
            g.has_arc(q.first(), p.first()),
            g.has_arc(p.last(), q.last()),
        ),
    };
    lhs >= p.len() + a as usize + b as usize
}

/// `d(x, C) >= |C| + 1` for `x` off the cycle.
pub fn lemma1_hypothesis(g: &Digraph, c: &Cycle, x: usize) -> bool {
    !c.vertex_set().contains(x)
        && x < g.order()
        && g.degrees_toward(x, c.vertex_set()).total > c.len()
}

/// `d-(Q.first, C) + d+(Q.last, C) >= |C| + 1` for `Q` disjoint from the cycle.
pub fn lemma3_hypothesis(g: &Digraph, c: &Cycle, q: &Path) -> bool {
    let set = c.vertex_set();
    set.is_disjoint(q.vertex_set())
        && g.degrees_toward(q.first(), set).inn + g.degrees_toward(q.last(), set).out > c.len()
}

/// A split of `Q` into consecutive blocks, each with a partner on `P`, that
/// reassembles into a single path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollectionOfPartners {
    /// 1-based block starts `i_1 = 1 < ... < i_m = |Q| + 1`.
    pub breaks: Vec<usize>,
    /// Partner of block `k`, for `k = 1..m-1`.
    pub partners: Vec<PartnerIndex>,
    /// `P` with every block spliced in at its partner.
    pub path: Path,
}

/// Whether `q` splits into consecutive blocks that each have a partner on
/// `p`, with no requirement that the blocks can be inserted together.
pub fn has_collection_of_partners(g: &Digraph, p: &Path, q: &Path) -> bool {
    if p.len() < 2 || !p.vertex_set().is_disjoint(q.vertex_set()) {
        return false;
    }
    let qv = q.vertices();
    let s = qv.len();
    // reach[j]: the prefix Q[..j] splits into blocks with partners.
    let mut reach = vec![false; s + 1];
    reach[0] = true;
    for start in 0..s {
        if !reach[start] {
            continue;
        }
        for end in start + 1..=s {
            if partners_between(g, p.vertices(), qv[start], qv[end - 1]).next().is_some() {
                reach[end] = true;
            }
        }
    }
    reach[s]
}

/// Backtracks over block splits (longest leading block first) and partner choices
/// (smallest first). Assignments using distinct partner arcs are tried
/// before ones where blocks share an arc. Every candidate is validated by
/// reassembly.
pub fn find_collection_of_partners(g: &Digraph, p: &Path, q: &Path) -> Option<CollectionOfPartners> {
    if p.len() < 2 || !p.vertex_set().is_disjoint(q.vertex_set()) {
        return None;
    }
    for distinct in [true, false] {
        let mut blocks = Vec::new();
        if let Some(c) = collection_dfs(g, p, q, 0, distinct, &mut blocks) {
            return Some(c);
        }
    }
    None
}

fn collection_dfs(
    g: &Digraph,
    p: &Path,
    q: &Path,
    start: usize,
    distinct: bool,
    blocks: &mut Vec<(usize, usize, PartnerIndex)>,
) -> Option<CollectionOfPartners> {
    let qv = q.vertices();
    if start == qv.len() {
        return assemble(g, p, q, blocks);
    }
    for end in (start + 1..=qv.len()).rev() {
        for i in partners_between(g, p.vertices(), qv[start], qv[end - 1]) {
            if distinct && blocks.iter().any(|&(_, _, j)| j == i) {
                continue;
            }
            blocks.push((start, end, i));
            if let Some(c) = collection_dfs(g, p, q, end, distinct, blocks) {
                return Some(c);
            }
            blocks.pop();
        }
    }
    None
}

fn assemble(
    g: &Digraph,
    p: &Path,
    q: &Path,
    blocks: &[(usize, usize, PartnerIndex)],
) -> Option<CollectionOfPartners> {
    let (pv, qv) = (p.vertices(), q.vertices());
    let mut out = Vec::with_capacity(pv.len() + qv.len());
    for (pos, &x) in pv.iter().enumerate() {
        out.push(x);
        for &(s, e, i) in blocks {
            if i.tail_position() == pos {
                out.extend_from_slice(&qv[s..e]);
            }
        }
    }
    let path = Path::new(g, out).ok()?;
    let mut breaks: Vec<usize> = blocks.iter().map(|&(s, _, _)| s + 1).collect();
    breaks.push(qv.len() + 1);
    Some(CollectionOfPartners {
        breaks,
        partners: blocks.iter().map(|&(_, _, i)| i).collect(),
        path,
    })
}

/// A `(P.first, P.last)`-path on `V(P) ∪ V(Q)`.
///
/// Tries a reassembled collection of partners, then a search that keeps the
/// vertices of `P` in their original order, then an unrestricted Hamiltonian
/// path search on the combined vertex set.
pub fn multi_insert(g: &Digraph, p: &Path, q: &Path) -> Option<Path> {
    if p.len() < 2 || !p.vertex_set().is_disjoint(q.vertex_set()) {
        return None;
    }
    if let Some(c) = find_collection_of_partners(g, p, q) {
        return Some(c.path);
    }
    if let Some(path) = order_preserving_path(g, p, q.vertex_set()) {
        return Some(path);
    }
    let set = p.vertex_set().union(q.vertex_set());
    find_hamiltonian_path_between(g, p.first(), p.last(), set)
        .ok()
        .flatten()
}

/// Path from `P.first` to `P.last` through all of `extra`, visiting the
/// vertices of `P` in order.
fn order_preserving_path(g: &Digraph, p: &Path, extra: VertexSet) -> Option<Path> {
    fn dfs(g: &Digraph, pv: &[usize], next_p: usize, extra: VertexSet, out: &mut Vec<usize>) -> bool {
        let cur = *out.last().expect("path starts nonempty");
        if next_p == pv.len() {
            return extra.is_empty();
        }
        for v in g.out_neighbours(cur).intersection(extra) {
            out.push(v);
            if dfs(g, pv, next_p, extra.without(v), out) {
                return true;
            }
            out.pop();
        }
        let target = pv[next_p];
        let last_step = next_p + 1 == pv.len();
        if g.has_arc(cur, target) && (!last_step || extra.is_empty()) {
            out.push(target);
            if dfs(g, pv, next_p + 1, extra, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let pv = p.vertices();
    let mut out = vec![pv[0]];
    if dfs(g, pv, 1, extra, &mut out) {
        Some(Path::new(g, out).expect("search produced a valid path"))
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InsertionStep {
    pub vertex: usize,
    pub partner: PartnerIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertionOutcome {
    pub extended: Path,
    #[serde(serialize_with = "serialize_set")]
    pub leftovers: VertexSet,
    pub steps: Vec<InsertionStep>,
}

fn serialize_set<S: serde::Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

/// Inserts single vertices of `y` one at a time (lowest vertex first, then
/// smallest partner) until no remaining vertex has a partner.
pub fn extend_as_much_as_possible(
    g: &Digraph,
    p0: &Path,
    y: VertexSet,
) -> Result<InsertionOutcome, InsertionError> {
    if p0.len() < 2 {
        return Err(InsertionError::HostTooShort);
    }
    if !p0.vertex_set().is_disjoint(y) {
        return Err(InsertionError::Overlap);
    }
    let mut path = p0.clone();
    let mut left = y.intersection(g.vertices());
    let mut steps = Vec::new();
    'grow: loop {
        for v in left {
            if let Some(i) = find_partner_for_vertex(g, &path, v)? {
                let single = Path::new(g, vec![v]).expect("single vertex is a path");
                path = insert_at(g, &path, i, &single)?;
                left.remove(v);
                steps.push(InsertionStep { vertex: v, partner: i });
                continue 'grow;
            }
        }
        break;
    }
    Ok(InsertionOutcome {
        extended: path,
        leftovers: left,
        steps,
    })
}

/// Outcome of trying to build a bypass by growing a single arc `u -> w`
/// into a spanning `(u, w)`-path with [`extend_as_much_as_possible`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BypassAttempt {
    pub start_arc: (usize, usize),
    pub outcome: InsertionOutcome,
    pub complete: bool,
}

/// First arc (lexicographically) whose extension spans every vertex; if none
/// does, the first attempt with the fewest leftovers.
pub fn insertion_bypass_attempt(g: &Digraph) -> Option<BypassAttempt> {
    let mut best: Option<BypassAttempt> = None;
    for (u, w) in g.arcs() {
        let p0 = Path::new(g, vec![u, w]).expect("arc is a path");
        let rest = g.vertices().without(u).without(w);
        let outcome = extend_as_much_as_possible(g, &p0, rest).expect("disjoint by construction");
        let complete = outcome.leftovers.is_empty();
        let better = best
            .as_ref()
            .is_none_or(|b| outcome.leftovers.len() < b.outcome.leftovers.len());
        if complete || better {
            best = Some(BypassAttempt {
                start_arc: (u, w),
                outcome,
                complete,
            });
        }
        if complete {
            break;
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma7Report {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
}

impl Lemma7Report {
    pub fn all(&self) -> bool {
        self.i && self.ii && self.iii
    }
}

/// Evaluates the three necessary conditions for a bypass-free digraph around
/// an `(n-1)`-cycle `c` and its off-cycle vertex `y`.
pub fn lemma7_consequences(g: &Digraph, c: &Cycle, y: usize) -> Result<Lemma7Report, InsertionError> {
    let n = g.order();
    if c.len() + 1 != n {
        return Err(InsertionError::CycleLength {
            len: c.len(),
            n,
            expected: n.saturating_sub(1),
        });
    }
    if c.vertex_set().contains(y) || y >= n {
        return Err(InsertionError::VertexOnCycle(y));
    }
    let len = c.len();
    let i = (0..len).all(|k| {
        let pair = VertexSet::singleton(c.at(k)).with(c.at(k + 1));
        let d = g.degrees_toward(y, pair);
        d.out <= 1 && d.inn <= 1
    });
    let dy = g.degrees(y);
    let ii = 2 * dy.out < n && 2 * dy.inn < n && dy.total < n;
    let iii = (0..len)
        .filter(|&k| g.has_arc(c.at(k), y) && g.has_arc(y, c.at(k + 1)))
        .all(|k| {
            (0..len)
                .filter(|&j| c.at(j) != c.at(k))
                .all(|j| !g.has_arc(c.at(j + 1), c.at(j)))
        });
    Ok(Lemma7Report { i, ii, iii })
}

/// `c` has `n - 1` vertices and the vertex it misses has degree at least `n`.
pub fn is_good_cycle(g: &Digraph, c: &Cycle) -> bool {
    let n = g.order();
    if c.len() + 1 != n || !c.is_valid_in(g) {
        return false;
    }
    let y = g
        .vertices()
        .difference(c.vertex_set())
        .first()
        .expect("exactly one vertex is off the cycle");
    g.degree(y) >= n
}
