//! Analysis toolkit for Hamiltonian bypasses in small digraphs.
//!
//! * [`digraph`]: dense digraph value type, paths, cycles, text format.
//! * [`families`]: generators for the extremal and named families.
//! * [`conditions`]: degree-condition predicates with violation witnesses.
//! * [`insertion`]: partner insertion, multi-insertion and maximal extension.
//! * [`search`]: exact oracles for cycles, bypasses and `D(n, k)` patterns.
//! * [`iso`]: canonical forms and isomorphism for orders up to 8.
//! * [`verify`]: exhaustive and sampled enumeration with theorem checks.
//! * [`cli`]: the `hambypass` command line.

pub mod cli;
pub mod conditions;
pub mod digraph;
pub mod families;
pub mod insertion;
pub mod iso;
pub mod search;
pub mod verify;

pub use conditions::{Condition, ConditionReport};
pub use digraph::{Cycle, Digraph, Path, VertexSet};
