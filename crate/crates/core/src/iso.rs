//! Isomorphism testing and canonical forms for digraphs of order at most 8.
//!
//! The canonical form is the smallest off-diagonal adjacency bitstring over
//! all relabellings that list vertices in increasing `(d+, d-)` order. That
//! set of relabellings is closed under isomorphism, so the minimum is an
//! isomorphism invariant that separates non-isomorphic digraphs.

use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{Digraph, VertexSet};
use crate::families::t5;

pub const MAX_CANONICAL_ORDER: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("canonical forms are limited to order {MAX_CANONICAL_ORDER}, got {0}")]
    OrderTooLarge(usize),
}

/// Canonical adjacency bitstring. Entries `(u, v)`, `u != v`, are read
/// row-major with the first entry as the most significant bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: u64,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Fixed-width lowercase hex of the bitstring.
    pub fn to_hex(&self) -> String {
        let n = self.order();
        let width = (n * (n - 1)).div_ceil(4).max(1);
        format!("{:0width$x}", self.bits, width = width)
    }

    /// Rebuilds the canonical representative.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.order();
        let total = n * (n - 1);
        let mut arcs = Vec::new();
        let mut idx = 0;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if self.bits >> (total - 1 - idx) & 1 == 1 {
                    arcs.push((u, v));
                }
                idx += 1;
            }
        }
        Digraph::new(n, &arcs).expect("canonical bits describe a digraph")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Bitstring of `g` relabelled so that old vertex `order[i]` becomes `i`.
fn bits_in_order(g: &Digraph, order: &[usize]) -> u64 {
    let mut bits = 0u64;
    for &u in order {
        for &v in order {
            if u != v {
                bits = bits << 1 | g.has_arc(u, v) as u64;
            }
        }
    }
    bits
}

pub fn canonical_form(g: &Digraph) -> Result<CanonicalForm, IsoError> {
    let n = g.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(IsoError::OrderTooLarge(n));
    }
    let mut classes: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for v in 0..n {
        let key = (g.out_degree(v), g.in_degree(v));
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(v),
            None => classes.push((key, vec![v])),
        }
    }
    classes.sort();
    let classes: Vec<Vec<usize>> = classes.into_iter().map(|(_, m)| m).collect();

    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    visit_orders(&classes, 0, VertexSet::EMPTY, &mut order, &mut |o| {
        best = best.min(bits_in_order(g, o));
    });
    Ok(CanonicalForm { n: n as u8, bits: best })
}

/// Every vertex order that lists the classes in sequence.
fn visit_orders(
    classes: &[Vec<usize>],
    class: usize,
    used: VertexSet,
    order: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    let Some(members) = classes.get(class) else {
        f(order);
        return;
    };
    let placed = members.iter().filter(|&&v| used.contains(v)).count();
    if placed == members.len() {
        visit_orders(classes, class + 1, used, order, f);
        return;
    }
    for &v in members {
        if used.contains(v) {
            continue;
        }
        order.push(v);
        visit_orders(classes, class, used.with(v), order, f);
        order.pop();
    }
}

pub fn are_isomorphic(g: &Digraph, h: &Digraph) -> Result<bool, IsoError> {
    for x in [g, h] {
        if x.order() > MAX_CANONICAL_ORDER {
            return Err(IsoError::OrderTooLarge(x.order()));
        }
    }
    if g.order() != h.order() || g.arc_count() != h.arc_count() {
        return Ok(false);
    }
    let profile = |x: &Digraph| {
        let mut p: Vec<_> = (0..x.order()).map(|v| (x.out_degree(v), x.in_degree(v))).collect();
        p.sort_unstable();
        p
    };
    if profile(g) != profile(h) {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

pub fn t5_canonical_form() -> CanonicalForm {
    static FORM: OnceLock<CanonicalForm> = OnceLock::new();
    *FORM.get_or_init(|| canonical_form(&t5()).expect("order 5"))
}

/// Tournament and score-sequence checks first, canonical comparison last.
pub fn is_isomorphic_to_t5(g: &Digraph) -> bool {
    if g.order() != 5 || g.arc_count() != 10 || !g.is_tournament() {
        return false;
    }
    let mut scores: Vec<_> = (0..5).map(|v| g.out_degree(v)).collect();
    scores.sort_unstable();
    if scores != [1, 2, 2, 2, 3] {
        return false;
    }
    canonical_form(g).expect("order 5") == t5_canonical_form()
}

/// `n` even and `g` equals `K*_{n/2,n/2}` under some bipartition: the
/// underlying graph is 2-coloured and the colour classes checked directly.
pub fn is_balanced_complete_bipartite(g: &Digraph) -> bool {
    let n = g.order();
    if !n.is_multiple_of(2) || n == 0 {
        return false;
    }
    let mut colour = [u8::MAX; 16];
    colour[0] = 0;
    let mut stack = vec![0usize];
    while let Some(u) = stack.pop() {
        for v in g.out_neighbours(u).union(g.in_neighbours(u)) {
            if colour[v] == u8::MAX {
                colour[v] = 1 - colour[u];
                stack.push(v);
            } else if colour[v] == colour[u] {
                return false;
            }
        }
    }
    if colour[..n].contains(&u8::MAX) {
        return false;
    }
    let side: VertexSet = (0..n).filter(|&v| colour[v] == 0).collect();
    if side.len() != n / 2 {
        return false;
    }
    (0..n).all(|u| {
        let other = if side.contains(u) {
            g.vertices().difference(side)
        } else {
            side
        };
        g.out_neighbours(u) == other && g.in_neighbours(u) == other
    })
}
