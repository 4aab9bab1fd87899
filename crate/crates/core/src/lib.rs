//! Protocol engine for objective-hiding federated one-shot learning.
//!
//! Clients hold quantized label vectors for a pool of candidate objectives.
//! The engine runs the three stages of the protocol over a prime field:
//!
//! 1. task assignment ([`assignment`]): a hypergraph telling which `rho`
//!    clients compute each objective;
//! 2. sharing ([`sharing`]): every client ramp-shares its labels among the
//!    other clients of the same objective, and the aggregated shares form a
//!    GRS-coded storage;
//! 3. query ([`protocol`]): the federator retrieves the label sums of one
//!    hidden objective with a graph-based PIR scheme weighted by dual GRS
//!    multipliers, optionally padded by a shared mask so that nothing beyond
//!    the desired aggregate is revealed.
//!
//! Alongside the engine sit exact closed-form cost and rate calculators
//! ([`analysis`]) and an exhaustive-enumeration privacy and correctness
//! auditor ([`audit`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod assignment;
pub mod audit;
pub mod field;
pub mod labels;
pub mod poly;
pub mod protocol;
pub mod randomness;
pub mod sharing;

pub use assignment::{build_symmetric_assignment, OffsetRule, TaskAssignment};
pub use field::{find_generator, FieldElement, PrimeField};
pub use labels::{partition, synth_labels, LabelSet, PartitionedLabels, SynthMode};
pub use poly::{dual_annihilation_check, dual_coefficients, DualCoefficients, VecPolynomial};
pub use protocol::{
    derive_params, run_end_to_end, CostLedger, ProtocolConfig, ProtocolError, SchemeParams,
};
pub use randomness::{CoinId, CoinSource, SeededCoins};
