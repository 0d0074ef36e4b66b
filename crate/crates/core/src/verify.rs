//! Exhaustive and sampled scans over labelled digraphs.
//!
//! A scan walks arc masks (exhaustive) or seeded random masks (sampled),
//! keeps the digraphs that pass every filter, and hands survivors to a
//! visitor. Work is split into fixed chunks whose partial results are merged
//! in chunk order, so the output never depends on the worker count.
//!
//! Theorem checks are built on top: each names its filters, what counts as an
//! exception, and which exceptions the statement allows.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conditions::{Condition, ConditionError};
use crate::digraph::Digraph;
use crate::families::{d0, d0_all_inner, d1, directed_cycle, t5, InnerSpec};
use crate::insertion::lemma7_consequences;
use crate::iso::{canonical_form, is_balanced_complete_bipartite, is_isomorphic_to_t5, CanonicalForm};
use crate::search::{
    all_cycles_of_length, find_bypass_pattern, find_good_cycle, find_hamiltonian_cycle,
    find_pre_hamiltonian_cycle, has_hamiltonian_bypass,
};

/// Largest order scanned exhaustively (2^30 digraphs, behind `allow_long`).
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;
/// Largest order scanned exhaustively without `allow_long`.
pub const DEFAULT_EXHAUSTIVE_ORDER: usize = 5;
/// Largest order that can be sampled; bounded by the canonical form.
pub const MAX_SAMPLE_ORDER: usize = 8;

const CHUNK_BITS: u32 = 16;
const SAMPLE_CHUNK: u64 = 1 << 14;
const PROGRESS_EVERY: u64 = 1 << 20;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("exhaustive scans support orders 1..={MAX_EXHAUSTIVE_ORDER}, got {0}")]
    ExhaustiveTooLarge(usize),
    #[error("an exhaustive scan at order {0} is long-running; pass the long-run flag")]
    LongRunGated(usize),
    #[error("sampling supports orders 1..={MAX_SAMPLE_ORDER}, got {0}")]
    SampleOrder(usize),
    #[error("{claim} needs order at least {min}, got {n}")]
    OrderTooSmall { claim: String, min: usize, n: usize },
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
    #[error("exception {hex} of {claim} did not re-check")]
    RecheckFailed { claim: String, hex: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleModel {
    /// Each arc independently with probability 1/2.
    Uniform,
    /// Each arc independently with probability 3/4.
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { count: u64, seed: u64, model: SampleModel },
}

impl Mode {
    fn label(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { model: SampleModel::Uniform, .. } => "sample",
            Mode::Sample { model: SampleModel::Dense, .. } => "sample-dense",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Mode::Exhaustive => None,
            Mode::Sample { seed, .. } => Some(*seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Strong,
    Condition(Condition),
}

impl Filter {
    pub fn accepts(&self, g: &Digraph) -> bool {
        match self {
            Filter::Strong => g.is_strong(),
            Filter::Condition(c) => c.holds(g),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Strong => f.write_str("strong"),
            Filter::Condition(c) => c.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub n: usize,
    pub mode: Mode,
    /// Applied in order, stopping at the first rejection.
    pub filters: Vec<Filter>,
}

impl EnumerationTask {
    pub fn accepts(&self, g: &Digraph) -> bool {
        self.filters.iter().all(|f| f.accepts(g))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Permit the order-6 exhaustive scan.
    pub allow_long: bool,
    /// Read `A_k` with `z` allowed to coincide with `y`.
    pub inclusive_triples: bool,
    /// Print the scanned count to stderr every 2^20 digraphs.
    pub progress: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    pub scanned: u64,
    pub passed_filters: u64,
}

impl ScanStats {
    fn add(self, o: ScanStats) -> ScanStats {
        ScanStats {
            scanned: self.scanned + o.scanned,
            passed_filters: self.passed_filters + o.passed_filters,
        }
    }
}

fn validate(task: &EnumerationTask, config: &RunConfig) -> Result<(), VerifyError> {
    let n = task.n;
    match task.mode {
        Mode::Exhaustive => {
            if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
                return Err(VerifyError::ExhaustiveTooLarge(n));
            }
            if n > DEFAULT_EXHAUSTIVE_ORDER && !config.allow_long {
                return Err(VerifyError::LongRunGated(n));
            }
        }
        Mode::Sample { .. } => {
            if n == 0 || n > MAX_SAMPLE_ORDER {
                return Err(VerifyError::SampleOrder(n));
            }
        }
    }
    for f in &task.filters {
        if let Filter::Condition(c) = f {
            c.validate_order(n)?;
        }
    }
    Ok(())
}

/// Runs `visit` on every survivor of `task`.
///
/// Each chunk starts from `init()`; chunk results are combined left to right
/// with `merge`, so `merge` only needs to be associative.
pub fn enumerate<A, I, V, M>(
    task: &EnumerationTask,
    config: &RunConfig,
    init: I,
    visit: V,
    merge: M,
) -> Result<(ScanStats, A), VerifyError>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Digraph) + Sync,
    M: Fn(A, A) -> A,
{
    validate(task, config)?;
    let n = task.n;
    let bits = (n * (n - 1)) as u32;
    let counter = AtomicU64::new(0);
    let tick = |k: u64| {
        if config.progress {
            let before = counter.fetch_add(k, Ordering::Relaxed);
            if (before + k) / PROGRESS_EVERY > before / PROGRESS_EVERY {
                eprintln!("scanned {}", before + k);
            }
        }
    };
    let run_chunk = |masks: &mut dyn Iterator<Item = u64>| {
        let mut acc = init();
        let mut stats = ScanStats::default();
        for mask in masks {
            stats.scanned += 1;
            let g = Digraph::from_arc_mask(n, mask);
            if task.accepts(&g) {
                stats.passed_filters += 1;
                visit(&mut acc, &g);
            }
        }
        tick(stats.scanned);
        (stats, acc)
    };

    let work = || -> Vec<(ScanStats, A)> {
        match task.mode {
            Mode::Exhaustive => {
                let chunk_bits = CHUNK_BITS.min(bits);
                let chunks = 1u64 << (bits - chunk_bits);
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let lo = c << chunk_bits;
                        run_chunk(&mut (lo..lo + (1u64 << chunk_bits)))
                    })
                    .collect()
            }
            Mode::Sample { count, seed, model } => {
                let full = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
                let chunks = count.div_ceil(SAMPLE_CHUNK);
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(c);
                        let len = SAMPLE_CHUNK.min(count - c * SAMPLE_CHUNK);
                        let mut masks = (0..len).map(|_| match model {
                            SampleModel::Uniform => rng.gen::<u64>() & full,
                            SampleModel::Dense => (rng.gen::<u64>() | rng.gen::<u64>()) & full,
                        });
                        run_chunk(&mut masks)
                    })
                    .collect()
            }
        }
    };

    let parts = match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| VerifyError::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut stats = ScanStats::default();
    let mut acc: Option<A> = None;
    for (s, a) in parts {
        stats = stats.add(s);
        acc = Some(match acc {
            None => a,
            Some(prev) => merge(prev, a),
        });
    }
    Ok((stats, acc.unwrap_or_else(init)))
}

/// Exceptions keyed by canonical form, each with its smallest arc mask.
type ExceptionMap = BTreeMap<CanonicalForm, u64>;

fn merge_exceptions(mut a: ExceptionMap, b: ExceptionMap) -> ExceptionMap {
    for (k, v) in b {
        a.entry(k).and_modify(|m| *m = (*m).min(v)).or_insert(v);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigraphJson {
    pub n: usize,
    pub m: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl From<&Digraph> for DigraphJson {
    fn from(g: &Digraph) -> Self {
        DigraphJson {
            n: g.order(),
            m: g.arc_count(),
            arcs: g.arcs().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionEntry {
    pub canonical_hex: String,
    pub witness: DigraphJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    CounterexampleFound,
    ReportOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub n: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub scanned: u64,
    pub passed_filters: u64,
    pub exceptions: Vec<ExceptionEntry>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    /// The report with its timing zeroed; everything else is deterministic.
    pub fn without_timing(&self) -> TheoremReport {
        TheoremReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn witnesses(&self) -> Vec<Digraph> {
        self.exceptions
            .iter()
            .map(|e| Digraph::new(e.witness.n, &e.witness.arcs).expect("witness was a valid digraph"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Expectation {
    /// Every exception must be allowed.
    Confirm,
    ReportOnly,
}

/// A claim checked by scanning: survivors of `filters` for which
/// `is_exception` holds are collected, and the claim is confirmed when each
/// of them satisfies `is_allowed`.
struct Claim<'a> {
    id: String,
    min_order: usize,
    filters: Vec<Filter>,
    is_exception: Box<dyn Fn(&Digraph) -> bool + Sync + 'a>,
    is_allowed: Box<dyn Fn(&Digraph) -> bool + Sync + 'a>,
    expectation: Expectation,
}

fn run_claim(claim: Claim<'_>, n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    if n < claim.min_order {
        return Err(VerifyError::OrderTooSmall {
            claim: claim.id,
            min: claim.min_order,
            n,
        });
    }
    let start = Instant::now();
    let inclusive = claim
        .filters
        .iter()
        .any(|f| matches!(f, Filter::Condition(Condition::AK { inclusive: true, .. })));
    let id = if inclusive { format!("{}:inclusive", claim.id) } else { claim.id.clone() };
    let task = EnumerationTask {
        n,
        mode,
        filters: claim.filters.clone(),
    };
    let (stats, found) = enumerate(
        &task,
        config,
        ExceptionMap::new,
        |acc, g| {
            if (claim.is_exception)(g) {
                let cf = canonical_form(g).expect("scanned orders have canonical forms");
                let mask = g.arc_mask();
                acc.entry(cf).and_modify(|m| *m = (*m).min(mask)).or_insert(mask);
            }
        },
        merge_exceptions,
    )?;

    let mut exceptions = Vec::with_capacity(found.len());
    let mut all_allowed = true;
    for (cf, mask) in &found {
        let g = Digraph::from_arc_mask(n, *mask);
        if !task.accepts(&g) || !(claim.is_exception)(&g) {
            return Err(VerifyError::RecheckFailed {
                claim: claim.id,
                hex: cf.to_hex(),
            });
        }
        all_allowed &= (claim.is_allowed)(&g);
        exceptions.push(ExceptionEntry {
            canonical_hex: cf.to_hex(),
            witness: DigraphJson::from(&g),
        });
    }
    let verdict = match claim.expectation {
        Expectation::ReportOnly => Verdict::ReportOnly,
        Expectation::Confirm if all_allowed => Verdict::Confirmed,
        Expectation::Confirm => Verdict::CounterexampleFound,
    };
    Ok(TheoremReport {
        theorem: id,
        n,
        mode: mode.label().to_string(),
        seed: mode.seed(),
        scanned: stats.scanned,
        passed_filters: stats.passed_filters,
        exceptions,
        verdict,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn a0_filter(inclusive: bool) -> Filter {
    Filter::Condition(Condition::AK { k: 0, inclusive })
}

fn never(_: &Digraph) -> bool {
    false
}

/// Strong digraphs satisfying `A_0` have a Hamiltonian cycle.
pub fn check_theorem6(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "thm6".into(),
            min_order: 3,
            filters: vec![a0_filter(config.inclusive_triples), Filter::Strong],
            is_exception: Box::new(|g| find_hamiltonian_cycle(g).is_none()),
            is_allowed: Box::new(never),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Canonical forms of every digraph the degree-sum `2n - 2` bypass theorem
/// lists as an exception at order `n`.
pub fn theorem8_exception_family(n: usize) -> Vec<CanonicalForm> {
    let mut members = Vec::new();
    if n == 3 {
        members.push(directed_cycle(3).expect("3-cycle"));
    }
    if n >= 4 {
        members.extend((1..=n - 2).map(|k| d1(n, k).expect("k in range")));
    }
    if n == 5 {
        members.push(t5());
    }
    if n >= 5 && n % 2 == 1 {
        match d0_all_inner(n).expect("odd order") {
            Some(all) => members.extend(all),
            None => members.extend(InnerSpec::presets().iter().map(|s| d0(n, s).expect("preset"))),
        }
    }
    let mut forms: Vec<_> = members
        .iter()
        .map(|g| canonical_form(g).expect("small order"))
        .collect();
    forms.sort();
    forms.dedup();
    forms
}

/// Strong digraphs with `d(x) + d(y) >= 2n - 2` for non-adjacent pairs have a
/// bypass unless they belong to the listed families.
pub fn check_theorem8(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    let family = theorem8_exception_family(n.min(MAX_SAMPLE_ORDER));
    run_claim(
        Claim {
            id: "thm8".into(),
            min_order: 3,
            filters: vec![Filter::Condition(Condition::DegreeSum(-2)), Filter::Strong],
            is_exception: Box::new(|g| !has_hamiltonian_bypass(g)),
            is_allowed: Box::new(move |g| {
                canonical_form(g).is_ok_and(|cf| family.binary_search(&cf).is_ok())
            }),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Strong Meyniel digraphs contain a spanning `D(n, 3)`.
pub fn check_theorem9(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "thm9".into(),
            min_order: 4,
            filters: vec![Filter::Condition(Condition::Meyniel), Filter::Strong],
            is_exception: Box::new(|g| matches!(find_bypass_pattern(g, 3), Ok(None))),
            is_allowed: Box::new(never),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Strong `A_0` digraphs have an `(n-1)`-cycle unless balanced complete
/// bipartite.
pub fn check_theorem11(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "thm11".into(),
            min_order: 4,
            filters: vec![a0_filter(config.inclusive_triples), Filter::Strong],
            is_exception: Box::new(|g| matches!(find_pre_hamiltonian_cycle(g), Ok(None))),
            is_allowed: Box::new(is_balanced_complete_bipartite),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Strong `A_0` digraphs have a bypass unless isomorphic to `T(5)`.
pub fn check_theorem12(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "thm12".into(),
            min_order: 4,
            filters: vec![a0_filter(config.inclusive_triples), Filter::Strong],
            is_exception: Box::new(|g| !has_hamiltonian_bypass(g)),
            is_allowed: Box::new(is_isomorphic_to_t5),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Strong bypass-free digraphs satisfying `condition`, as a catalogue.
pub fn explore_no_bypass(
    n: usize,
    condition: Condition,
    mode: Mode,
    config: &RunConfig,
) -> Result<TheoremReport, VerifyError> {
    condition.validate_order(n)?;
    run_claim(
        Claim {
            id: format!("explore:{condition}"),
            min_order: 3,
            filters: vec![Filter::Condition(condition), Filter::Strong],
            is_exception: Box::new(|g| !has_hamiltonian_bypass(g)),
            is_allowed: Box::new(never),
            expectation: Expectation::ReportOnly,
        },
        n,
        mode,
        config,
    )
}

/// The `n >= 6`, `min d+ >= 2`, `min d- >= min_in` bypass claim. With
/// `min_in >= 3` it is a theorem and is confirmed; below that it is an open
/// question and the report makes no claim.
pub fn check_theorem16_conjecture(
    n: usize,
    min_in: usize,
    mode: Mode,
    config: &RunConfig,
) -> Result<TheoremReport, VerifyError> {
    let expectation = if min_in >= 3 {
        Expectation::Confirm
    } else {
        Expectation::ReportOnly
    };
    run_claim(
        Claim {
            id: if min_in == 3 { "thm16".into() } else { format!("thm16:{min_in}") },
            min_order: 6,
            filters: vec![Filter::Condition(Condition::Thm16 { min_in }), Filter::Strong],
            is_exception: Box::new(|g| !has_hamiltonian_bypass(g)),
            is_allowed: Box::new(never),
            expectation,
        },
        n,
        mode,
        config,
    )
}

/// Every strong `A_0` digraph satisfies the paired degree-sum consequence.
pub fn sweep_lemma5(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "lemma5".into(),
            min_order: 3,
            filters: vec![a0_filter(config.inclusive_triples), Filter::Strong],
            is_exception: Box::new(|g| !Condition::Lemma5.holds(g)),
            is_allowed: Box::new(never),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// A digraph breaks the bypass-free structure claims when it has no bypass
/// yet either contains a good cycle or has an `(n-1)`-cycle failing one of
/// the three necessary conditions.
pub fn violates_bypass_free_structure(g: &Digraph) -> bool {
    let n = g.order();
    if n < 3 || has_hamiltonian_bypass(g) {
        return false;
    }
    if matches!(find_good_cycle(g), Ok(Some(_))) {
        return true;
    }
    let cycles = all_cycles_of_length(g, n - 1).expect("length in range");
    cycles.iter().any(|c| {
        let y = g
            .vertices()
            .difference(c.vertex_set())
            .first()
            .expect("one vertex off the cycle");
        !lemma7_consequences(g, c, y).expect("cycle has n - 1 vertices").all()
    })
}

/// Sweeps all digraphs (no filter) for [`violates_bypass_free_structure`].
pub fn sweep_lemma7(n: usize, mode: Mode, config: &RunConfig) -> Result<TheoremReport, VerifyError> {
    run_claim(
        Claim {
            id: "lemma7".into(),
            min_order: 3,
            filters: vec![],
            is_exception: Box::new(violates_bypass_free_structure),
            is_allowed: Box::new(never),
            expectation: Expectation::Confirm,
        },
        n,
        mode,
        config,
    )
}

/// Structural flags of a digraph, evaluated eagerly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    #[serde(serialize_with = "serialize_hex")]
    pub canonical: CanonicalForm,
    pub strong: bool,
    pub a0: bool,
    pub has_hc: bool,
    pub has_pre_hc: bool,
    pub has_bypass: bool,
    pub has_good_cycle: bool,
    pub iso_t5: bool,
    pub iso_balanced_bipartite: bool,
}

fn serialize_hex<S: serde::Serializer>(cf: &CanonicalForm, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&cf.to_hex())
}

impl VerificationRecord {
    /// `None` when the order is outside `3..=8`.
    pub fn evaluate(g: &Digraph) -> Option<VerificationRecord> {
        let n = g.order();
        if !(3..=MAX_SAMPLE_ORDER).contains(&n) {
            return None;
        }
        Some(VerificationRecord {
            canonical: canonical_form(g).ok()?,
            strong: g.is_strong(),
            a0: a0_filter(false).accepts(g),
            has_hc: find_hamiltonian_cycle(g).is_some(),
            has_pre_hc: matches!(find_pre_hamiltonian_cycle(g), Ok(Some(_))),
            has_bypass: has_hamiltonian_bypass(g),
            has_good_cycle: matches!(find_good_cycle(g), Ok(Some(_))),
            iso_t5: is_isomorphic_to_t5(g),
            iso_balanced_bipartite: is_balanced_complete_bipartite(g),
        })
    }
}
