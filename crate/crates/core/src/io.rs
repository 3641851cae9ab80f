//! JSON interchange formats.
//!
//! Topology: `{"name": str, "nodes": [str], "links": [[str, str]]}`.
//! Demands: `[{"id": int, "src": str, "dst": str}]`.
//! Instances bundle both with optional `k_paths` and `wavelength_capacity`;
//! solutions list provisions by node name.

use serde::{Deserialize, Serialize};

use crate::error::FormatError;
use crate::model::{
    AggregationCandidate, Demand, DemandId, GroupWavelengths, Instance, Metrics, NodeId, Path,
    Provision, Solution, Topology, Wavelength, DEFAULT_K_PATHS,
};
use crate::search::SolveStatus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyFile {
    pub name: String,
    pub nodes: Vec<String>,
    pub links: Vec<[String; 2]>,
}

impl TopologyFile {
    pub fn to_topology(&self) -> Result<Topology, FormatError> {
        let links: Vec<(&str, &str)> = self
            .links
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Ok(Topology::new(self.name.clone(), &self.nodes, &links)?)
    }
}

impl From<&Topology> for TopologyFile {
    fn from(t: &Topology) -> Self {
        Self {
            name: t.name().to_string(),
            nodes: t.node_names().to_vec(),
            links: t
                .links()
                .iter()
                .map(|l| [t.node_name(l.a).to_string(), t.node_name(l.b).to_string()])
                .collect(),
        }
    }
}

pub fn parse_topology(json: &str) -> Result<Topology, FormatError> {
    serde_json::from_str::<TopologyFile>(json)?.to_topology()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandRecord {
    pub id: u32,
    pub src: String,
    pub dst: String,
}

fn node(topology: &Topology, name: &str) -> Result<NodeId, FormatError> {
    topology
        .node_id(name)
        .ok_or_else(|| FormatError::UnknownNode(name.to_string()))
}

pub fn demands_from_records(
    topology: &Topology,
    records: &[DemandRecord],
) -> Result<Vec<Demand>, FormatError> {
    records
        .iter()
        .map(|r| {
            Ok(Demand::new(
                r.id,
                node(topology, &r.src)?,
                node(topology, &r.dst)?,
            )?)
        })
        .collect()
}

pub fn demand_records(topology: &Topology, demands: &[Demand]) -> Vec<DemandRecord> {
    demands
        .iter()
        .map(|d| DemandRecord {
            id: d.id.0,
            src: topology.node_name(d.source).to_string(),
            dst: topology.node_name(d.destination).to_string(),
        })
        .collect()
}

pub fn parse_demands(topology: &Topology, json: &str) -> Result<Vec<Demand>, FormatError> {
    let records: Vec<DemandRecord> = serde_json::from_str(json)?;
    demands_from_records(topology, &records)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub topology: TopologyFile,
    pub demands: Vec<DemandRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_paths: Option<usize>,
    /// Defaults to one wavelength per demand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wavelength_capacity: Option<u32>,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        let topology = self.topology.to_topology()?;
        let demands = demands_from_records(&topology, &self.demands)?;
        let w = self
            .wavelength_capacity
            .unwrap_or(demands.len().max(1) as u32);
        Ok(Instance::new(
            topology,
            demands,
            self.k_paths.unwrap_or(DEFAULT_K_PATHS),
            w,
        )?)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(i: &Instance) -> Self {
        Self {
            topology: TopologyFile::from(&i.topology),
            demands: demand_records(&i.topology, &i.demands),
            k_paths: Some(i.k_paths),
            wavelength_capacity: Some(i.wavelength_capacity),
        }
    }
}

pub fn parse_instance(json: &str) -> Result<Instance, FormatError> {
    serde_json::from_str::<InstanceFile>(json)?.to_instance()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProvisionRecord {
    Alone {
        demand: u32,
        path: Vec<String>,
        wavelength: Wavelength,
    },
    Grouped {
        demand_a: u32,
        demand_b: u32,
        agg_node: String,
        tributary_a: Vec<String>,
        tributary_b: Vec<String>,
        aggregate_path: Vec<String>,
        /// A single value, or `[tributary_a, tributary_b, aggregate]`.
        wavelength: GroupWavelengthRecord,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupWavelengthRecord {
    Shared(Wavelength),
    PerLightpath([Wavelength; 3]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<SolveStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Metrics>,
    pub provisions: Vec<ProvisionRecord>,
}

fn names(t: &Topology, p: &[NodeId]) -> Vec<String> {
    p.iter().map(|&n| t.node_name(n).to_string()).collect()
}

fn path(t: &Topology, p: &[String]) -> Result<Path, FormatError> {
    p.iter().map(|n| node(t, n)).collect()
}

impl SolutionFile {
    pub fn from_solution(
        topology: &Topology,
        solution: &Solution,
        status: Option<SolveStatus>,
    ) -> Self {
        let provisions = solution
            .provisions
            .iter()
            .map(|p| match p {
                Provision::Alone {
                    demand,
                    path,
                    wavelength,
                } => ProvisionRecord::Alone {
                    demand: demand.0,
                    path: names(topology, path),
                    wavelength: *wavelength,
                },
                Provision::Grouped {
                    candidate: c,
                    wavelengths: w,
                } => ProvisionRecord::Grouped {
                    demand_a: c.demand_a.0,
                    demand_b: c.demand_b.0,
                    agg_node: topology.node_name(c.agg_node).to_string(),
                    tributary_a: names(topology, &c.tributary_a),
                    tributary_b: names(topology, &c.tributary_b),
                    aggregate_path: names(topology, &c.aggregate_path),
                    wavelength: if w.tributary_a == w.aggregate && w.tributary_b == w.aggregate {
                        GroupWavelengthRecord::Shared(w.aggregate)
                    } else {
                        GroupWavelengthRecord::PerLightpath([
                            w.tributary_a,
                            w.tributary_b,
                            w.aggregate,
                        ])
                    },
                },
            })
            .collect();
        Self {
            status,
            lower_bound: solution.meta.lower_bound,
            metrics: Some(crate::model::solution_metrics(solution)),
            provisions,
        }
    }

    pub fn to_solution(&self, topology: &Topology) -> Result<Solution, FormatError> {
        let provisions = self
            .provisions
            .iter()
            .map(|r| {
                Ok(match r {
                    ProvisionRecord::Alone {
                        demand,
                        path: p,
                        wavelength,
                    } => Provision::Alone {
                        demand: DemandId(*demand),
                        path: path(topology, p)?,
                        wavelength: *wavelength,
                    },
                    ProvisionRecord::Grouped {
                        demand_a,
                        demand_b,
                        agg_node,
                        tributary_a,
                        tributary_b,
                        aggregate_path,
                        wavelength,
                    } => Provision::Grouped {
                        candidate: AggregationCandidate {
                            demand_a: DemandId(*demand_a),
                            demand_b: DemandId(*demand_b),
                            agg_node: node(topology, agg_node)?,
                            tributary_a: path(topology, tributary_a)?,
                            tributary_b: path(topology, tributary_b)?,
                            aggregate_path: path(topology, aggregate_path)?,
                        },
                        wavelengths: match *wavelength {
                            GroupWavelengthRecord::Shared(w) => GroupWavelengths::uniform(w),
                            GroupWavelengthRecord::PerLightpath([a, b, g]) => GroupWavelengths {
                                tributary_a: a,
                                tributary_b: b,
                                aggregate: g,
                            },
                        },
                    },
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let mut s = Solution::new(provisions);
        s.meta.lower_bound = self.lower_bound;
        s.meta.optimal = self.status == Some(SolveStatus::Optimal);
        Ok(s)
    }
}

pub fn parse_solution(topology: &Topology, json: &str) -> Result<Solution, FormatError> {
    serde_json::from_str::<SolutionFile>(json)?.to_solution(topology)
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str =
        r#"{"name":"star","nodes":["A","B","X","C"],"links":[["A","X"],["B","X"],["X","C"]]}"#;

    #[test]
    fn topology_round_trip() {
        let t = parse_topology(STAR).unwrap();
        assert_eq!(t.link_count(), 3);
        let back = serde_json::to_string(&TopologyFile::from(&t)).unwrap();
        assert_eq!(back, STAR);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_topology("{"), Err(FormatError::Json(_))));
        let t = parse_topology(STAR).unwrap();
        assert!(matches!(
            parse_demands(&t, r#"[{"id":0,"src":"A","dst":"Q"}]"#),
            Err(FormatError::UnknownNode(n)) if n == "Q"
        ));
        assert!(matches!(
            parse_demands(&t, r#"[{"id":0,"src":"A","dst":"A"}]"#),
            Err(FormatError::Model(_))
        ));
    }

    #[test]
    fn instance_defaults() {
        let json = format!(
            r#"{{"topology":{STAR},"demands":[{{"id":0,"src":"A","dst":"C"}},{{"id":1,"src":"B","dst":"C"}}]}}"#
        );
        let i = parse_instance(&json).unwrap();
        assert_eq!((i.k_paths, i.wavelength_capacity), (3, 2));
    }

    #[test]
    fn group_wavelengths_serialise_compactly() {
        let t = parse_topology(STAR).unwrap();
        let json = r#"{"provisions":[{"type":"grouped","demand_a":0,"demand_b":1,"agg_node":"X",
            "tributary_a":["A","X"],"tributary_b":["B","X"],"aggregate_path":["X","C"],"wavelength":[0,0,1]}]}"#;
        let s = parse_solution(&t, json).unwrap();
        match &s.provisions[0] {
            Provision::Grouped { wavelengths, .. } => assert_eq!(wavelengths.aggregate, 1),
            _ => panic!(),
        }
        let file = SolutionFile::from_solution(&t, &s, None);
        assert_eq!(
            parse_solution(&t, &serde_json::to_string(&file).unwrap())
                .unwrap()
                .provisions,
            s.provisions
        );
    }
}
