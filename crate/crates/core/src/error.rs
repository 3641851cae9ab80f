use thiserror::Error;

use crate::model::{DemandId, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("topology has no nodes")]
    NoNodes,
    #[error("topology has no links")]
    NoLinks,
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("duplicate link {0}-{1}")]
    DuplicateLink(String, String),
    #[error("self-loop on node `{0}`")]
    SelfLoop(String),
    #[error("link references unknown node `{0}`")]
    UnknownNode(String),
    #[error("topology is disconnected: node `{0}` is unreachable")]
    Disconnected(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("demand {0} has identical source and destination")]
    LoopDemand(DemandId),
    #[error("duplicate demand id {0}")]
    DuplicateDemand(DemandId),
    #[error("demand {0} references node {1} outside the topology")]
    UnknownEndpoint(DemandId, NodeId),
    #[error("k_paths must be at least 1")]
    ZeroPaths,
    #[error("wavelength capacity must be at least 1")]
    ZeroCapacity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GainError {
    #[error("relative gain is undefined for a zero bypass cost")]
    ZeroBaseline,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no clash-free assignment fits in {capacity} wavelengths")]
    Infeasible { capacity: u32 },
    #[error("invalid solve limits: {0}")]
    InvalidLimits(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance exceeds oracle caps: {0}")]
    CapsExceeded(String),
}

/// Problems mapping interchange JSON onto the model.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("{0}")]
    Invalid(String),
}
