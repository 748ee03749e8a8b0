//! Finite truncated symmetric simplicial sets.
//!
//! A symmetric simplicial set is a presheaf on the category of finite
//! ordinals `[n] = {0, ..., n}` and *all* functions between them (not just
//! the order-preserving ones). This crate works with truncations of such
//! presheaves to levels `0..=N`, stored as explicit generator tables, and
//! provides:
//!
//! - [`simplexcat`]: the index category — value-table maps, flips, folds,
//!   edge classifiers, and spanning-tree spines;
//! - [`symset`]: truncated symmetric sets, the contravariant action,
//!   validation, quotients, reduction, nerves, and levelwise colimits;
//! - [`spiny`]: edge tuples, matrix forms, spininess checks, and the
//!   promotion of edgy simplicial data to symmetric data;
//! - [`reflect`]: the reflection into spiny objects as a congruence-closure
//!   fixpoint, and colimits of partial groups/groupoids;
//! - [`constructions`]: word classifiers, `B(q, G)`, commuting nerves,
//!   groupoid reductions, and the ladder family;
//! - [`homsearch`]: morphism checking and enumeration;
//! - [`io`]: versioned JSON wire formats.
//!
//! Bulk inner loops run through [`exec::Exec`]; with the default `parallel`
//! feature they fan out over rayon, otherwise they run sequentially. Results
//! are deterministic either way.

pub mod constructions;
pub mod exec;
pub mod group;
pub mod homsearch;
pub mod io;
pub mod reflect;
pub mod simplexcat;
pub mod spiny;
pub mod symset;

pub use exec::Exec;
pub use simplexcat::UMap;
pub use symset::{Congruence, SymMap, TruncSymSet};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("a map between ordinals needs a nonempty value table")]
    EmptyMap,
    #[error("value {value} exceeds codomain level {bound}")]
    ValueOutOfRange { value: usize, bound: usize },
    #[error("level mismatch: expected {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("level {level} exceeds truncation {trunc}")]
    TruncationExceeded { level: usize, trunc: usize },
    #[error("truncation mismatch: {left} vs {right}")]
    TruncMismatch { left: usize, right: usize },
    #[error("not a spanning tree on {{0, ..., {level}}}: {reason}")]
    NotASpanningTree { level: usize, reason: String },
    #[error("invalid Pruefer sequence: {0}")]
    InvalidPruefer(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),
    #[error("invalid group homomorphism: {0}")]
    InvalidHom(String),
    #[error("malformed symmetric set: {0}")]
    MalformedSymSet(String),
    #[error("not a valid map of symmetric sets: {0}")]
    InvalidSymMap(String),
    #[error("congruence is not saturated at level {level}, cell {cell}")]
    UnsaturatedCongruence { level: usize, cell: String },
    #[error("consecutive-edge map is not injective at level {level}: {a} and {b} share an edge tuple")]
    NotEdgy { level: usize, a: String, b: String },
    #[error("invalid edge involution: {0}")]
    BadInvolution(String),
    #[error("no cell realizes the swapped matrix form of {cell} under transposition {swap} at level {level}")]
    MissingGerm { level: usize, cell: String, swap: usize },
    #[error("input is not spiny: {0}")]
    NotSpiny(String),
    #[error("input is not reduced: {0}")]
    NotReduced(String),
    #[error("search cap of {cap} nodes exceeded")]
    SearchCapExceeded { cap: u64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("unrecognized document format {found:?}, expected {expected:?}")]
    UnknownFormat { found: String, expected: &'static str },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
