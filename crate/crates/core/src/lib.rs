//! Measuring, compressing and indexing tries.
//!
//! The crate is organised bottom-up:
//!
//! * [`trie`] holds the trie type, its construction and per-context statistics.
//! * [`combinatorics`] maps tries to degree matrices and counts them.
//! * [`entropy`] evaluates the worst-case, empirical and label entropies.
//! * [`coder`] is an exact arithmetic coder for tries with a container format.
//! * [`succinct`] provides plain and block-compressed bitvectors.
//! * [`xbwt`] builds the co-lexicographic transform and a queryable index.

pub mod bigmath;
pub mod coder;
pub mod combinatorics;
pub mod entropy;
pub mod gen;
pub mod succinct;
pub mod trie;
pub mod xbwt;

pub use coder::{compress, compress_with_interval, decompress, RationalInterval, TrieCode};
pub use combinatorics::{DegreeMatrix, LukasiewiczPath};
pub use entropy::EntropyReport;
pub use trie::{Alphabet, ContextStats, ContextSymbol, Symbol, SymbolDistribution, SymbolMode, Trie};
pub use xbwt::{ColexOrder, RunsProfile, XbwtIndex};
