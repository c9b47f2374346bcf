//! Polar codes with LLR-based successive cancellation list decoding.
//!
//! The crate covers the full transmit/receive chain used in error-rate
//! studies: code construction, encoding, BPSK/AWGN transmission with optional
//! LLR quantization, SC and SCL decoding (floating point, min-sum or
//! fixed-point), CRC-aided path selection, the radix-2L metric sorters and
//! a closed-form latency model of the hardware decoder.

pub mod channel;
pub mod codebook;
pub mod crc;
pub mod encoder;
pub mod error;
pub mod mode;
mod path_tree;
pub mod perf_model;
pub mod rng;
pub mod sc_core;
pub mod sc_decoder;
pub mod scl_decoder;
pub mod sorter;

pub use channel::{quantize, AwgnChannel, Quantizer};
pub use codebook::{
    construct_monte_carlo, extend_with_crc, frozen_cluster_count, ConstructionParams, PolarCode,
};
pub use crc::{crc_check, crc_remainder, CrcRegister, CrcScheme};
pub use encoder::{bit_reverse_permutation, encode, polar_transform};
pub use error::{Error, Result};
pub use mode::{build_decoder, Decoded, Decoder, DecoderKind, DecoderMode};
pub use perf_model::{decode_latency, sorting_latency, throughput, LatencyQuery};
pub use sc_core::{Exact, Fixed, LlrArithmetic, MinSum};
pub use sc_decoder::{sc_decode, ScDecoder};
pub use scl_decoder::{scl_decode, select_output, SclConfig, SclDecoder, SclOutput};
pub use sorter::{full_radix_sort, pruned_radix_sort, sort_existing_metrics, Candidate, SortResult, SorterKind};
