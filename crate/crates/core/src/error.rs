use thiserror::Error;

use crate::topology::NodeId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopologyError {
    #[error("node id {0} does not exist")]
    UnknownNode(NodeId),
    #[error("node at index {index} carries id {id}")]
    NodeIndex { index: usize, id: NodeId },
    #[error("node {0} has a non-finite position")]
    NonFinitePosition(NodeId),
    #[error("node {node} has region {region}, region_count is {region_count}")]
    Region { node: NodeId, region: u32, region_count: u32 },
    #[error("link {src}->{dst} has non-positive delay {delay_ms} ms")]
    NonPositiveDelay { src: NodeId, dst: NodeId, delay_ms: f64 },
    #[error("link {src}->{dst} delay {delay_ms} ms is below the light bound {bound_ms} ms")]
    FasterThanLight { src: NodeId, dst: NodeId, delay_ms: f64, bound_ms: f64 },
    #[error("topology json: {0}")]
    Json(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AuctionError {
    #[error("bid {bidder}: {reason}")]
    InvalidBid { bidder: u32, reason: &'static str },
    #[error("bid {bidder} sits at unknown node {node}")]
    UnknownNode { bidder: u32, node: NodeId },
    #[error("delay map is for node {map}, horizon is node {horizon}")]
    HorizonMismatch { map: NodeId, horizon: NodeId },
    #[error("target feasible fraction {0} outside (0, 1]")]
    Target(f64),
    #[error("bidder {0} is not a feasible participant")]
    Infeasible(u32),
    #[error("bidder {0} not in the instance")]
    UnknownBidder(u32),
    #[error("need delta' < delta, got delta={delta} delta'={delta_prime}")]
    EmptyInterval { delta: f64, delta_prime: f64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("no samples")]
    Empty,
    #[error("confidence level {0} outside (0, 1)")]
    Level(f64),
    #[error("resample count must be positive")]
    Resamples,
    #[error("delta grid must be positive and strictly increasing")]
    Grid,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("welfare bound violated on instance seed {seed}: {detail}\n{instance}")]
    WelfareBound { seed: u64, detail: String, instance: String },
    #[error(transparent)]
    Auction(#[from] AuctionError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
