//! Degree-condition predicates.
//!
//! Every predicate reports the lexicographically first violation it finds, so
//! reports are identical across runs. Half-integer bounds are compared in
//! doubled integers.

use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::digraph::Digraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConditionError {
    #[error("unknown condition id `{0}`")]
    UnknownId(String),
    #[error("condition {id} requires order at least {min}, got {n}")]
    OrderTooSmall { id: String, min: usize, n: usize },
}

/// A degree condition, identified on the command line and in JSON by the
/// strings produced by its `Display` impl.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `A_k`. With `inclusive` set, triples `(x, y, y)` are also checked.
    AK { k: i64, inclusive: bool },
    Meyniel,
    /// `d(x) + d(y) >= 2n + offset` for non-adjacent pairs.
    DegreeSum(i64),
    GhouilaHouri,
    Woodall,
    NashWilliams,
    Thm13,
    Thm14,
    Thm15,
    /// Theorem 13 condition, `n >= 6`, `min d+ >= 2` and `min d- >= min_in`.
    Thm16 { min_in: usize },
    Lemma5,
}

impl Condition {
    /// Smallest order the predicate is defined for.
    pub fn min_order(&self) -> usize {
        match self {
            Condition::AK { .. } => 3,
            _ => 1,
        }
    }

    pub fn validate_order(&self, n: usize) -> Result<(), ConditionError> {
        if n < self.min_order() {
            return Err(ConditionError::OrderTooSmall {
                id: self.to_string(),
                min: self.min_order(),
                n,
            });
        }
        Ok(())
    }

    pub fn check(&self, g: &Digraph) -> Result<ConditionReport, ConditionError> {
        self.validate_order(g.order())?;
        let witness = self.first_violation(g);
        Ok(ConditionReport {
            holds: witness.is_none(),
            witness,
        })
    }

    /// Fast verdict for hot loops. The caller must have validated the order.
    pub fn holds(&self, g: &Digraph) -> bool {
        self.first_violation(g).is_none()
    }

    /// First violation in lexicographic tuple order.
    pub fn first_violation(&self, g: &Digraph) -> Option<Witness> {
        match *self {
            Condition::AK { k, inclusive } => a_k_violation(g, k, inclusive),
            Condition::Meyniel => degree_sum_violation(g, -1),
            Condition::DegreeSum(offset) => degree_sum_violation(g, offset),
            Condition::GhouilaHouri => ghouila_houri_violation(g),
            Condition::Woodall => woodall_violation(g),
            Condition::NashWilliams => nash_williams_violation(g),
            Condition::Thm13 => thm13_violation(g),
            Condition::Thm14 => thm14_15_violation(g, false),
            Condition::Thm15 => thm14_15_violation(g, true),
            Condition::Thm16 { min_in } => thm16_violation(g, min_in),
            Condition::Lemma5 => lemma5_violation(g),
        }
    }

    /// Re-evaluates the inequality named by `w` at its tuple and confirms it
    /// is genuinely violated in `g`.
    pub fn recheck(&self, g: &Digraph, w: &Witness) -> bool {
        let n = g.order() as i64;
        let vs = w.vertices();
        if vs.iter().any(|&v| v >= g.order()) {
            return false;
        }
        let d = |v: usize| g.degree(v) as i64;
        let dout = |v: usize| g.out_degree(v) as i64;
        let din = |v: usize| g.in_degree(v) as i64;
        let non_adj = |x: usize, y: usize| x != y && !g.are_adjacent(x, y);
        let common_in = |x: usize, y: usize| {
            !g.in_neighbours(x).intersection(g.in_neighbours(y)).is_empty()
        };
        let common_out = |x: usize, y: usize| {
            !g.out_neighbours(x).intersection(g.out_neighbours(y)).is_empty()
        };
        let expected: Option<(i64, i64)> = match (*self, w.clause) {
            (Condition::AK { k, inclusive }, Clause::NoArcXToZ | Clause::NoArcZToX) => {
                let (x, y, z) = (vs[0], vs[1], vs[2]);
                let z_ok = z != x && (z != y || inclusive);
                if !non_adj(x, y) || !z_ok {
                    None
                } else if w.clause == Clause::NoArcXToZ && !g.has_arc(x, z) {
                    Some((d(x) + d(y) + dout(x) + din(z), 3 * n - 2 + k))
                } else if w.clause == Clause::NoArcZToX && !g.has_arc(z, x) {
                    Some((d(x) + d(y) + din(x) + dout(z), 3 * n - 2 + k))
                } else {
                    None
                }
            }
            (Condition::Meyniel, Clause::DegreeSum) => {
                non_adj(vs[0], vs[1]).then(|| (d(vs[0]) + d(vs[1]), 2 * n - 1))
            }
            (Condition::DegreeSum(off), Clause::DegreeSum) => {
                non_adj(vs[0], vs[1]).then(|| (d(vs[0]) + d(vs[1]), 2 * n + off))
            }
            (Condition::GhouilaHouri, Clause::Degree) => Some((d(vs[0]), n)),
            (Condition::Woodall, Clause::NoArcXToY) => {
                let (x, y) = (vs[0], vs[1]);
                (x != y && !g.has_arc(x, y)).then(|| (dout(x) + din(y), n))
            }
            (Condition::NashWilliams, Clause::OutDegree) => Some((2 * dout(vs[0]), n)),
            (Condition::NashWilliams, Clause::InDegree) => Some((2 * din(vs[0]), n)),
            (Condition::Thm13 | Condition::Thm16 { .. }, Clause::MinDegree) => {
                let (x, y) = (vs[0], vs[1]);
                (non_adj(x, y) && common_in(x, y)).then(|| (d(x).min(d(y)), n - 1))
            }
            (Condition::Thm13 | Condition::Thm16 { .. }, Clause::DegreeSum) => {
                let (x, y) = (vs[0], vs[1]);
                (non_adj(x, y) && common_in(x, y)).then(|| (d(x) + d(y), 2 * n - 1))
            }
            (Condition::Thm14 | Condition::Thm15, _) => {
                let (x, y) = (vs[0], vs[1]);
                if !(non_adj(x, y) && (common_in(x, y) || common_out(x, y))) {
                    None
                } else {
                    let semi = (dout(x) + din(y)).min(din(x) + dout(y));
                    match (*self, w.clause) {
                        (Condition::Thm14, Clause::SemiDegreeSum) => Some((semi, n)),
                        (Condition::Thm15, Clause::SemiDegreeSum) => Some((semi, n - 1)),
                        (Condition::Thm15, Clause::DegreeSum) => Some((d(x) + d(y), 2 * n - 1)),
                        _ => None,
                    }
                }
            }
            (Condition::Thm16 { .. }, Clause::Order) => Some((n, 6)),
            (Condition::Thm16 { .. }, Clause::MinOutDegree) => Some((dout(vs[0]), 2)),
            (Condition::Thm16 { min_in }, Clause::MinInDegree) => {
                Some((din(vs[0]), min_in as i64))
            }
            (Condition::Lemma5, Clause::Lemma5) => {
                let (x, y, z) = (vs[0], vs[1], vs[2]);
                let a = 2 * n - d(x) - d(y);
                (y != z && non_adj(x, y) && non_adj(x, z) && a >= 1)
                    .then(|| (2 * (d(x) + d(z)), 4 * n - 4 + a))
            }
            _ => None,
        };
        matches!(expected, Some((value, bound)) if value < bound && value == w.value && bound == w.bound)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::AK { k, inclusive: false } => write!(f, "a_k:{k}"),
            Condition::AK { k, inclusive: true } => write!(f, "a_k_incl:{k}"),
            Condition::Meyniel => f.write_str("meyniel"),
            Condition::DegreeSum(off) => write!(f, "degree_sum:{off}"),
            Condition::GhouilaHouri => f.write_str("ghouila_houri"),
            Condition::Woodall => f.write_str("woodall"),
            Condition::NashWilliams => f.write_str("nash_williams"),
            Condition::Thm13 => f.write_str("thm13"),
            Condition::Thm14 => f.write_str("thm14"),
            Condition::Thm15 => f.write_str("thm15"),
            Condition::Thm16 { min_in: 3 } => f.write_str("thm16"),
            Condition::Thm16 { min_in: 2 } => f.write_str("thm16relaxed"),
            Condition::Thm16 { min_in } => write!(f, "thm16:{min_in}"),
            Condition::Lemma5 => f.write_str("lemma5"),
        }
    }
}

impl FromStr for Condition {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConditionError::UnknownId(s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let int_arg = || -> Result<i64, ConditionError> {
            arg.ok_or_else(unknown)?.parse().map_err(|_| unknown())
        };
        Ok(match (head, arg) {
            ("a_k", Some(_)) => Condition::AK {
                k: int_arg()?,
                inclusive: false,
            },
            ("a_k_incl", Some(_)) => Condition::AK {
                k: int_arg()?,
                inclusive: true,
            },
            ("degree_sum", Some(_)) => Condition::DegreeSum(int_arg()?),
            ("thm16", Some(_)) => Condition::Thm16 {
                min_in: usize::try_from(int_arg()?).map_err(|_| unknown())?,
            },
            ("meyniel", None) => Condition::Meyniel,
            ("ghouila_houri", None) => Condition::GhouilaHouri,
            ("woodall", None) => Condition::Woodall,
            ("nash_williams", None) => Condition::NashWilliams,
            ("thm13", None) => Condition::Thm13,
            ("thm14", None) => Condition::Thm14,
            ("thm15", None) => Condition::Thm15,
            ("thm16", None) => Condition::Thm16 { min_in: 3 },
            ("thm16relaxed", None) => Condition::Thm16 { min_in: 2 },
            ("lemma5", None) => Condition::Lemma5,
            _ => return Err(unknown()),
        })
    }
}

/// Which inequality of a condition a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    NoArcXToZ,
    NoArcZToX,
    NoArcXToY,
    DegreeSum,
    Degree,
    OutDegree,
    InDegree,
    MinDegree,
    SemiDegreeSum,
    Order,
    MinOutDegree,
    MinInDegree,
    Lemma5,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::NoArcXToZ => "no_arc_x_to_z",
            Clause::NoArcZToX => "no_arc_z_to_x",
            Clause::NoArcXToY => "no_arc_x_to_y",
            Clause::DegreeSum => "degree_sum",
            Clause::Degree => "degree",
            Clause::OutDegree => "out_degree_doubled",
            Clause::InDegree => "in_degree_doubled",
            Clause::MinDegree => "min_degree",
            Clause::SemiDegreeSum => "semi_degree_sum",
            Clause::Order => "order",
            Clause::MinOutDegree => "min_out_degree",
            Clause::MinInDegree => "min_in_degree",
            Clause::Lemma5 => "lemma5_sum_doubled",
        }
    }

    fn roles(self) -> &'static [&'static str] {
        match self {
            Clause::NoArcXToZ | Clause::NoArcZToX | Clause::Lemma5 => &["x", "y", "z"],
            Clause::NoArcXToY | Clause::DegreeSum | Clause::MinDegree | Clause::SemiDegreeSum => {
                &["x", "y"]
            }
            Clause::Degree | Clause::OutDegree | Clause::InDegree => &["x"],
            Clause::MinOutDegree | Clause::MinInDegree => &["x"],
            Clause::Order => &[],
        }
    }
}

/// A violating tuple: the failed inequality reads `value >= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub clause: Clause,
    vertices: [u8; 3],
    pub value: i64,
    pub bound: i64,
}

impl Witness {
    fn new(clause: Clause, vs: &[usize], value: i64, bound: i64) -> Self {
        let mut vertices = [0u8; 3];
        for (slot, &v) in vertices.iter_mut().zip(vs) {
            *slot = v as u8;
        }
        debug_assert_eq!(vs.len(), clause.roles().len());
        Witness {
            clause,
            vertices,
            value,
            bound,
        }
    }

    /// Vertices in role order (see [`Witness::roles`]).
    pub fn vertices(&self) -> Vec<usize> {
        self.vertices[..self.clause.roles().len()]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }

    pub fn roles(&self) -> &'static [&'static str] {
        self.clause.roles()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Roles<'a>(&'a Witness);
        impl Serialize for Roles<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let roles = self.0.roles();
                let mut m = s.serialize_map(Some(roles.len()))?;
                for (r, v) in roles.iter().zip(self.0.vertices()) {
                    m.serialize_entry(r, &v)?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("clause", self.clause.as_str())?;
        m.serialize_entry("vertices", &Roles(self))?;
        m.serialize_entry("value", &self.value)?;
        m.serialize_entry("bound", &self.bound)?;
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

struct DegreeTable {
    n: i64,
    out: [i64; 16],
    inn: [i64; 16],
}

impl DegreeTable {
    fn new(g: &Digraph) -> Self {
        let mut out = [0; 16];
        let mut inn = [0; 16];
        for v in 0..g.order() {
            out[v] = g.out_degree(v) as i64;
            inn[v] = g.in_degree(v) as i64;
        }
        DegreeTable {
            n: g.order() as i64,
            out,
            inn,
        }
    }

    fn d(&self, v: usize) -> i64 {
        self.out[v] + self.inn[v]
    }
}

fn a_k_violation(g: &Digraph, k: i64, inclusive: bool) -> Option<Witness> {
    let t = DegreeTable::new(g);
    let bound = 3 * t.n - 2 + k;
    for x in 0..g.order() {
        for y in g.non_neighbours(x) {
            let base = t.d(x) + t.d(y);
            for z in 0..g.order() {
                if z == x || (z == y && !inclusive) {
                    continue;
                }
                if !g.has_arc(x, z) {
                    let value = base + t.out[x] + t.inn[z];
                    if value < bound {
                        return Some(Witness::new(Clause::NoArcXToZ, &[x, y, z], value, bound));
                    }
                }
                if !g.has_arc(z, x) {
                    let value = base + t.inn[x] + t.out[z];
                    if value < bound {
                        return Some(Witness::new(Clause::NoArcZToX, &[x, y, z], value, bound));
                    }
                }
            }
        }
    }
    None
}

fn degree_sum_violation(g: &Digraph, offset: i64) -> Option<Witness> {
    let t = DegreeTable::new(g);
    let bound = 2 * t.n + offset;
    for x in 0..g.order() {
        for y in g.non_neighbours(x).iter().filter(|&y| y > x) {
            let value = t.d(x) + t.d(y);
            if value < bound {
                return Some(Witness::new(Clause::DegreeSum, &[x, y], value, bound));
            }
        }
    }
    None
}

fn ghouila_houri_violation(g: &Digraph) -> Option<Witness> {
    let n = g.order() as i64;
    (0..g.order())
        .find(|&x| (g.degree(x) as i64) < n)
        .map(|x| Witness::new(Clause::Degree, &[x], g.degree(x) as i64, n))
}

fn woodall_violation(g: &Digraph) -> Option<Witness> {
    let t = DegreeTable::new(g);
    for x in 0..g.order() {
        for y in 0..g.order() {
            if x == y || g.has_arc(x, y) {
                continue;
            }
            let value = t.out[x] + t.inn[y];
            if value < t.n {
                return Some(Witness::new(Clause::NoArcXToY, &[x, y], value, t.n));
            }
        }
    }
    None
}

fn nash_williams_violation(g: &Digraph) -> Option<Witness> {
    let n = g.order() as i64;
    for x in 0..g.order() {
        let out = 2 * g.out_degree(x) as i64;
        if out < n {
            return Some(Witness::new(Clause::OutDegree, &[x], out, n));
        }
        let inn = 2 * g.in_degree(x) as i64;
        if inn < n {
            return Some(Witness::new(Clause::InDegree, &[x], inn, n));
        }
    }
    None
}

fn thm13_violation(g: &Digraph) -> Option<Witness> {
    let t = DegreeTable::new(g);
    for x in 0..g.order() {
        for y in g.non_neighbours(x).iter().filter(|&y| y > x) {
            if g.in_neighbours(x).is_disjoint(g.in_neighbours(y)) {
                continue;
            }
            let min = t.d(x).min(t.d(y));
            if min < t.n - 1 {
                return Some(Witness::new(Clause::MinDegree, &[x, y], min, t.n - 1));
            }
            let sum = t.d(x) + t.d(y);
            if sum < 2 * t.n - 1 {
                return Some(Witness::new(Clause::DegreeSum, &[x, y], sum, 2 * t.n - 1));
            }
        }
    }
    None
}

fn thm14_15_violation(g: &Digraph, thm15: bool) -> Option<Witness> {
    let t = DegreeTable::new(g);
    for x in 0..g.order() {
        for y in g.non_neighbours(x).iter().filter(|&y| y > x) {
            let common_in = !g.in_neighbours(x).is_disjoint(g.in_neighbours(y));
            let common_out = !g.out_neighbours(x).is_disjoint(g.out_neighbours(y));
            if !(common_in || common_out) {
                continue;
            }
            if thm15 {
                let sum = t.d(x) + t.d(y);
                if sum < 2 * t.n - 1 {
                    return Some(Witness::new(Clause::DegreeSum, &[x, y], sum, 2 * t.n - 1));
                }
            }
            let semi = (t.out[x] + t.inn[y]).min(t.inn[x] + t.out[y]);
            let bound = if thm15 { t.n - 1 } else { t.n };
            if semi < bound {
                return Some(Witness::new(Clause::SemiDegreeSum, &[x, y], semi, bound));
            }
        }
    }
    None
}

fn thm16_violation(g: &Digraph, min_in: usize) -> Option<Witness> {
    let n = g.order();
    if n < 6 {
        return Some(Witness::new(Clause::Order, &[], n as i64, 6));
    }
    if let Some(x) = (0..n).find(|&x| g.out_degree(x) < 2) {
        return Some(Witness::new(Clause::MinOutDegree, &[x], g.out_degree(x) as i64, 2));
    }
    if let Some(x) = (0..n).find(|&x| g.in_degree(x) < min_in) {
        return Some(Witness::new(
            Clause::MinInDegree,
            &[x],
            g.in_degree(x) as i64,
            min_in as i64,
        ));
    }
    thm13_violation(g)
}

fn lemma5_violation(g: &Digraph) -> Option<Witness> {
    let t = DegreeTable::new(g);
    for x in 0..g.order() {
        let non = g.non_neighbours(x);
        for y in non {
            let a = 2 * t.n - t.d(x) - t.d(y);
            if a < 1 {
                continue;
            }
            let bound = 4 * t.n - 4 + a;
            for z in non.without(y) {
                let value = 2 * (t.d(x) + t.d(z));
                if value < bound {
                    return Some(Witness::new(Clause::Lemma5, &[x, y, z], value, bound));
                }
            }
        }
    }
    None
}

/// Condition `A_k` over pairwise-distinct triples.
pub fn check_a_k(g: &Digraph, k: i64) -> Result<ConditionReport, ConditionError> {
    Condition::AK {
        k,
        inclusive: false,
    }
    .check(g)
}

fn infallible(c: Condition, g: &Digraph) -> ConditionReport {
    c.check(g).expect("condition is defined for every order")
}

pub fn check_meyniel(g: &Digraph) -> ConditionReport {
    infallible(Condition::Meyniel, g)
}

pub fn check_degree_sum(g: &Digraph, bound_offset: i64) -> ConditionReport {
    infallible(Condition::DegreeSum(bound_offset), g)
}

pub fn check_ghouila_houri(g: &Digraph) -> ConditionReport {
    infallible(Condition::GhouilaHouri, g)
}

pub fn check_woodall(g: &Digraph) -> ConditionReport {
    infallible(Condition::Woodall, g)
}

pub fn check_nash_williams(g: &Digraph) -> ConditionReport {
    infallible(Condition::NashWilliams, g)
}

pub fn check_thm13_condition(g: &Digraph) -> ConditionReport {
    infallible(Condition::Thm13, g)
}

pub fn check_thm14_condition(g: &Digraph) -> ConditionReport {
    infallible(Condition::Thm14, g)
}

pub fn check_thm15_condition(g: &Digraph) -> ConditionReport {
    infallible(Condition::Thm15, g)
}

pub fn check_thm16_hypothesis(g: &Digraph) -> ConditionReport {
    infallible(Condition::Thm16 { min_in: 3 }, g)
}

pub fn lemma5_consequence_holds(g: &Digraph) -> ConditionReport {
    infallible(Condition::Lemma5, g)
}
