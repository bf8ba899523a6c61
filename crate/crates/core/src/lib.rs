//! Slack-discounted single-item auctions over heterogeneous-delay networks.
//!
//! Bids are ranked by `value · e^{−λ·slack}`, where slack is how much earlier
//! than the clearing horizon a bid reaches the clearing site. The crate holds
//! the topology generators, the mechanisms (LIA and four waiting-based
//! baselines), evaluation metrics and a paired Monte Carlo harness.

// `!(x >= 0.0)` is how NaN gets rejected along with negatives
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod auction;
pub mod error;
pub mod exec;
pub mod harness;
pub mod mechanisms;
pub mod metrics;
pub mod topology;
pub mod verify;

pub use auction::{
    apply_error_model, choose_horizon, compute_slacks, discount, Bid, BidderId, ClearingHorizon,
    DiscountParams, ErrorKind, ErrorModel, SlackProfile,
};
pub use error::{AuctionError, HarnessError, MetricsError, TopologyError};
pub use mechanisms::{
    batch_vcg, critical_value, fast_vcg, holdback, lia_k_items, lia_single, run_mechanism, sync_vcg,
    utility, MechanismConfig, Outcome,
};
pub use topology::{distances_to_horizon, DelayMap, NodeId, Topology, TopologyKind};
