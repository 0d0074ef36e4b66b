//! Generators for the named digraph families.
//!
//! Vertex layouts are fixed so generated digraphs are reproducible:
//!
//! * `d0(n, inner)`: the independent set `A` is `0..(n+1)/2`, the set `B`
//!   carrying the inner subdigraph is the rest.
//! * `d1(n, k)`: `K*_{n-k}` on `0..n-k`, `K*_{k+1}` on `n-k-1..n`, glued at
//!   vertex `n-k-1`.
//! * `t5()`: `x1, x2, x3, x4, y` become `0, 1, 2, 3, 4`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}: {reason}")]
    BadParameter { family: &'static str, reason: String },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

fn bad(family: &'static str, reason: impl Into<String>) -> FamilyError {
    FamilyError::BadParameter {
        family,
        reason: reason.into(),
    }
}

/// The subdigraph placed on the set `B` of a `D_0` digraph. Explicit arcs use
/// indices local to `B` (`0..|B|`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerSpec {
    Empty,
    Complete,
    /// `0 -> 1 -> ... -> |B|-1`.
    Path,
    Explicit(Vec<(usize, usize)>),
    Random(u64),
}

impl InnerSpec {
    /// The four presets swept by tests (random uses seed 0).
    pub fn presets() -> Vec<InnerSpec> {
        vec![
            InnerSpec::Empty,
            InnerSpec::Complete,
            InnerSpec::Path,
            InnerSpec::Random(0),
        ]
    }

    fn arcs(&self, b: usize) -> Result<Vec<(usize, usize)>, FamilyError> {
        Ok(match self {
            InnerSpec::Empty => Vec::new(),
            InnerSpec::Complete => all_pairs(b).collect(),
            InnerSpec::Path => (1..b).map(|i| (i - 1, i)).collect(),
            InnerSpec::Explicit(arcs) => {
                for &(u, v) in arcs {
                    if u >= b || v >= b {
                        return Err(bad("d0", format!("inner arc ({u}, {v}) outside B = 0..{b}")));
                    }
                    if u == v {
                        return Err(bad("d0", format!("inner self-loop at {u}")));
                    }
                }
                arcs.clone()
            }
            InnerSpec::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                all_pairs(b).filter(|_| rng.gen_bool(0.5)).collect()
            }
        })
    }
}

/// `empty`, `complete`, `path`, `random:<seed>` or `arcs:u-v,u-v,...`.
impl FromStr for InnerSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "empty" => return Ok(InnerSpec::Empty),
            "complete" => return Ok(InnerSpec::Complete),
            "path" => return Ok(InnerSpec::Path),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return seed
                .parse()
                .map(InnerSpec::Random)
                .map_err(|_| format!("bad seed `{seed}`"));
        }
        if let Some(list) = s.strip_prefix("arcs:") {
            let arcs = list
                .split(',')
                .filter(|a| !a.is_empty())
                .map(|a| {
                    let (u, v) = a.split_once('-').ok_or_else(|| format!("bad arc `{a}`"))?;
                    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad arc `{a}`"));
                    Ok((parse(u)?, parse(v)?))
                })
                .collect::<Result<Vec<_>, String>>()?;
            return Ok(InnerSpec::Explicit(arcs));
        }
        Err(format!(
            "unknown inner spec `{s}` (expected empty, complete, path, random:<seed> or arcs:u-v,...)"
        ))
    }
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
}

/// `K*_n`: all `n(n-1)` arcs.
pub fn complete_digraph(n: usize) -> Result<Digraph, FamilyError> {
    let arcs: Vec<_> = all_pairs(n).collect();
    Ok(Digraph::new(n, &arcs)?)
}

/// `K*_{p,q}` with parts `0..p` and `p..p+q`.
pub fn complete_bipartite_digraph(p: usize, q: usize) -> Result<Digraph, FamilyError> {
    if p == 0 || q == 0 {
        return Err(bad("kbipartite", "both parts must be nonempty"));
    }
    let mut arcs = Vec::with_capacity(2 * p * q);
    for u in 0..p {
        for v in p..p + q {
            arcs.push((u, v));
            arcs.push((v, u));
        }
    }
    Ok(Digraph::new(p + q, &arcs)?)
}

/// `C_n` with arcs `i -> i+1 (mod n)`.
pub fn directed_cycle(n: usize) -> Result<Digraph, FamilyError> {
    if n < 2 {
        return Err(bad("cycle", "a directed cycle needs n >= 2"));
    }
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Digraph::new(n, &arcs)?)
}

/// `D(n, k)`: the directed cycle `0 -> 1 -> ... -> n-1 -> 0` with its last
/// `k - 1` arcs reversed. `D(n, 2)` is the path `0 -> ... -> n-1` plus the arc
/// `0 -> n-1`.
pub fn bypass_pattern(n: usize, k: usize) -> Result<Digraph, FamilyError> {
    if n < 3 {
        return Err(bad("dnk", "D(n,k) needs n >= 3"));
    }
    if !(2..=n).contains(&k) {
        return Err(bad("dnk", format!("k = {k} outside [2, {n}]")));
    }
    // e_j (1-based) joins j-1 -> j for j < n; e_n joins n-1 -> 0.
    let first_reversed = n - k + 2;
    let mut arcs = Vec::with_capacity(n);
    for j in 1..=n {
        let (u, v) = if j < n { (j - 1, j) } else { (n - 1, 0) };
        if j >= first_reversed {
            arcs.push((v, u));
        } else {
            arcs.push((u, v));
        }
    }
    Ok(Digraph::new(n, &arcs)?)
}

/// Arc list of the 5-vertex tournament `T(5)`.
pub const T5_ARCS: [(usize, usize); 10] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (0, 4),
    (2, 4),
    (4, 1),
    (4, 3),
    (0, 2),
    (1, 3),
];

pub fn t5() -> Digraph {
    Digraph::new(5, &T5_ARCS).expect("T(5) arc list is valid")
}

/// `D_0`: independent `A` of size `(n+1)/2`, `B` of size `(n-1)/2` carrying
/// `inner`, and both arcs between every `A`-`B` pair.
pub fn d0(n: usize, inner: &InnerSpec) -> Result<Digraph, FamilyError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(bad("d0", format!("n = {n} must be odd and at least 5")));
    }
    if n > MAX_ORDER {
        return Err(DigraphError::OrderTooLarge(n).into());
    }
    let a = n.div_ceil(2);
    let b = n - a;
    let mut arcs = Vec::new();
    for u in 0..a {
        for v in a..n {
            arcs.push((u, v));
            arcs.push((v, u));
        }
    }
    arcs.extend(inner.arcs(b)?.into_iter().map(|(u, v)| (u + a, v + a)));
    Ok(Digraph::new(n, &arcs)?)
}

/// Every `D_0` digraph of order `n`, one per labelled inner subdigraph of `B`.
/// Only feasible for small `B`; returns `None` when `|B| > 3`.
pub fn d0_all_inner(n: usize) -> Result<Option<Vec<Digraph>>, FamilyError> {
    let b = n.saturating_sub(n.div_ceil(2));
    d0(n, &InnerSpec::Empty)?;
    if b > 3 {
        return Ok(None);
    }
    let pairs: Vec<_> = all_pairs(b).collect();
    let mut out = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..1 << pairs.len() {
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        out.push(d0(n, &InnerSpec::Explicit(arcs))?);
    }
    Ok(Some(out))
}

/// `D_1`: `K*_{n-k}` and `K*_{k+1}` sharing one vertex.
pub fn d1(n: usize, k: usize) -> Result<Digraph, FamilyError> {
    if n < 4 {
        return Err(bad("d1", format!("n = {n} must be at least 4")));
    }
    if !(1..=n - 2).contains(&k) {
        return Err(bad("d1", format!("k = {k} outside [1, {}]", n - 2)));
    }
    let glue = n - k - 1;
    let mut arcs: Vec<_> = all_pairs(n - k).collect();
    arcs.extend(all_pairs(k + 1).map(|(u, v)| (u + glue, v + glue)));
    Ok(Digraph::new(n, &arcs)?)
}
