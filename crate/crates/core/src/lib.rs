//! Polar codes with a hybrid belief-propagation / successive-cancellation
//! decoder.
//!
//! * [`code`]: frozen-set construction and the `x = uG` transform.
//! * [`channel`]: BPSK over AWGN and channel LLRs.
//! * [`sc`]: bit-serial successive-cancellation decoding.
//! * [`bp`]: min-sum BP with G-matrix early stopping and denoised LLR output.
//! * [`hybrid`]: BP front end with SC fallback and the cycle-latency model.
//! * [`pe`]: unified Type-I/Type-II processing-element model and schedules.
//! * [`sim`]: seeded Monte Carlo FER/BER/latency sweeps with CSV output.

pub mod bp;
pub mod channel;
pub mod code;
pub mod error;
pub mod hybrid;
pub mod pe;
pub mod sc;
pub mod sim;

pub use bp::{bp_decode, BpConfig, BpDecoder, BpOutput, BpState};
pub use code::{construct_frozen_set, encode, extract_info_bits, insert_info_bits, CodeSpec};
pub use error::{Error, Result};
pub use hybrid::{
    hybrid_decode, latency_cycles, DecodeOutcome, DecodeSource, HybridDecoder, LatencyParams,
};
pub use sc::{sc_decode, ScDecoder};
