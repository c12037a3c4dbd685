//! Operational zero-error codes and their simulation.

pub mod bits;
pub mod channel;
pub mod huffman;
pub mod partial;
pub mod shifted;
pub mod si;
pub mod simulate;
pub mod sum;

pub use bits::BitString;
pub use channel::{build_channel_code, channel_roundtrip, CodeTarget, Codebook};
pub use huffman::HuffmanCode;
pub use partial::{build_partial_si_code, PartialSiCode, PartialSideInfoSpec};
pub use shifted::{shift, shifted_codebook, ShiftFilter, ShiftedCodebook};
pub use si::{build_si_code, si_roundtrip, simulate_si, OutputSampler, SiCode};
pub use simulate::{simulate, SimStats};
pub use sum::{build_sum_channel_code, composition_for, SumCode, SumMessage};
