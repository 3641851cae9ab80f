//! Bundled reference networks.
//!
//! `nsfnet` is the 14-node, 21-link NSF backbone. `india` is a 17-node,
//! 26-link national backbone over major Indian cities. `example` is the
//! four-node network where two demands meet at `X` on their way to `C`.

use std::path::Path;

use rwca_core::io::parse_topology;
use rwca_core::Topology;

use crate::error::BenchError;

pub const NSFNET_JSON: &str = include_str!("../assets/nsfnet.json");
pub const INDIA_JSON: &str = include_str!("../assets/india.json");
pub const EXAMPLE_JSON: &str = include_str!("../assets/example.json");

pub const BUNDLED: [(&str, &str); 3] = [
    ("nsfnet", NSFNET_JSON),
    ("india", INDIA_JSON),
    ("example", EXAMPLE_JSON),
];

pub fn bundled(name: &str) -> Option<Topology> {
    BUNDLED
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, json)| parse_topology(json).expect("bundled topologies are valid"))
}

/// A bundled name, or else a path to a topology JSON file.
pub fn load_topology(name_or_path: &str) -> Result<Topology, BenchError> {
    if let Some(t) = bundled(name_or_path) {
        return Ok(t);
    }
    let path = Path::new(name_or_path);
    let json = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    parse_topology(&json).map_err(|e| BenchError::format(name_or_path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_sizes() {
        let sizes: Vec<_> = ["nsfnet", "INDIA", "example"]
            .iter()
            .map(|n| {
                let t = bundled(n).unwrap();
                (t.node_count(), t.link_count())
            })
            .collect();
        assert_eq!(sizes, [(14, 21), (17, 26), (4, 3)]);
    }

    #[test]
    fn missing_file_is_io() {
        let err = load_topology("/nonexistent/topology.json").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
