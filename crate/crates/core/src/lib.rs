//! Partial-sum, rank, select, access and predecessor queries on integer
//! strings, in space bounded by the size of a string attractor.
//!
//! The central structure is [`PsumIndex`]: a leveled set of blocks anchored at
//! attractor positions that answers `psum(v)` with one constant-time step per
//! level. Rank, select, access and predecessor are reductions to it
//! ([`query`]). The [`gadgets`] module builds the encodings that reduce rank
//! and access on a bitstring to select, excess, findclose and range-extremum
//! queries on parentheses, together with grammar rewrites ([`slp`]) bounding
//! the compressed size of those encodings.

pub mod attractor;
#[cfg(feature = "cli")]
pub mod cli;

mod codec;
pub mod container;
pub mod error;
pub mod gadgets;
pub mod index;
pub mod lz77;
pub mod oracles;
pub mod psum;
pub mod query;
pub mod slp;
pub mod text;

pub use attractor::{find_uncovered, gap_attractor, validate_attractor, validate_attractor_capped, Attractor};
pub use error::{Error, Result};
pub use index::{AttractorIndex, Structures};
pub use lz77::{attractor_from_lz77, lz77_attractor, lz77_parse, Lz77Parse, Phrase};
pub use psum::{IndexParams, PsumIndex, SpaceStats};
pub use query::{AccessIndex, PredSet, RankIndex, SelectIndex};
pub use slp::{build_slp, repeat_rules, Slp};
pub use text::{gap_encode, GapString, Text};
