//! Zero-error source and channel coding on probabilistic graphs.
//!
//! The crate computes certified finite-`n` bounds on complementary graph
//! entropy, relative and absolute zero-error capacity, the Witsenhausen rate
//! and Körner graph entropy, and builds working zero-error codes whose
//! decoders are checked by simulation.

pub mod bitset;
pub mod bounds;
pub mod codec;
pub mod combinat;
pub mod budget;
pub mod error;
pub mod graph;
pub mod info;
pub mod numopt;
pub mod rng;
pub mod typicality;
pub mod verifier;

pub use budget::Budget;
pub use error::{Error, Result};
