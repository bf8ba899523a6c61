//! Delay-weighted site graphs and earliest-arrival distances to a clearing site.

pub mod generators;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::TopologyError;

pub use generators::{
    generate_dsn, generate_internet, generate_starlink, jupiter_light_time_ms,
    mars_light_time_ms, METRO_FLOOR_MS,
};

/// Speed of light in vacuum, km/s.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;

/// One-way light time over `km` kilometres, in milliseconds.
pub fn light_time_ms(km: f64) -> f64 {
    km / SPEED_OF_LIGHT_KM_S * 1000.0
}

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Starlink200,
    Internet100,
    Dsn30,
    Custom,
}

impl TopologyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TopologyKind::Starlink200 => "starlink200",
            TopologyKind::Internet100 => "internet100",
            TopologyKind::Dsn30 => "dsn30",
            TopologyKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "starlink200" | "starlink" => Some(TopologyKind::Starlink200),
            "internet100" | "internet" => Some(TopologyKind::Internet100),
            "dsn30" | "dsn" => Some(TopologyKind::Dsn30),
            "custom" => Some(TopologyKind::Custom),
            _ => None,
        }
    }

    /// Generate a topology of this kind. `Custom` has no generator.
    pub fn generate(self, seed: u64) -> Option<Topology> {
        match self {
            TopologyKind::Starlink200 => Some(generate_starlink(seed)),
            TopologyKind::Internet100 => Some(generate_internet(seed)),
            TopologyKind::Dsn30 => Some(generate_dsn(seed)),
            TopologyKind::Custom => None,
        }
    }
}

impl std::fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: NodeId,
    /// Kilometres.
    pub position: [f64; 3],
    /// Orbital plane, continent or cluster tag.
    pub region: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub src: NodeId,
    pub dst: NodeId,
    pub delay_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Topology {
    pub kind: TopologyKind,
    pub seed: u64,
    pub region_count: u32,
    pub nodes: Vec<Node>,
    pub links: Vec<Link>,
}

/// Min, median and max of the finite off-diagonal shortest delays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DelayStats {
    pub min_ms: f64,
    pub median_ms: f64,
    pub max_ms: f64,
}

fn euclid(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

impl Topology {
    /// Build and validate a topology.
    pub fn new(
        kind: TopologyKind,
        seed: u64,
        region_count: u32,
        nodes: Vec<Node>,
        links: Vec<Link>,
    ) -> Result<Self, TopologyError> {
        let t = Topology {
            kind,
            seed,
            region_count,
            nodes,
            links,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), TopologyError> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(TopologyError::NodeIndex { index: i, id: node.id });
            }
            if node.position.iter().any(|c| !c.is_finite()) {
                return Err(TopologyError::NonFinitePosition(i));
            }
            if node.region >= self.region_count {
                return Err(TopologyError::Region {
                    node: i,
                    region: node.region,
                    region_count: self.region_count,
                });
            }
        }
        let n = self.nodes.len();
        for link in &self.links {
            if link.src >= n || link.dst >= n {
                return Err(TopologyError::UnknownNode(link.src.max(link.dst)));
            }
            if !(link.delay_ms > 0.0) || !link.delay_ms.is_finite() {
                return Err(TopologyError::NonPositiveDelay {
                    src: link.src,
                    dst: link.dst,
                    delay_ms: link.delay_ms,
                });
            }
            let bound = self.light_bound_ms(link.src, link.dst);
            if link.delay_ms < bound {
                return Err(TopologyError::FasterThanLight {
                    src: link.src,
                    dst: link.dst,
                    delay_ms: link.delay_ms,
                    bound_ms: bound,
                });
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Straight-line light time between two nodes.
    pub fn light_bound_ms(&self, a: NodeId, b: NodeId) -> f64 {
        light_time_ms(euclid(&self.nodes[a].position, &self.nodes[b].position))
    }

    /// Emission window used by the instance generator for this topology.
    pub fn emission_window_ms(&self) -> f64 {
        match self.kind {
            TopologyKind::Starlink200 => 30.0,
            TopologyKind::Internet100 => 5.0,
            TopologyKind::Dsn30 => 5.0,
            TopologyKind::Custom => {
                let s = self.delay_stats();
                if s.max_ms.is_finite() {
                    s.max_ms - s.min_ms
                } else {
                    0.0
                }
            }
        }
    }

    /// Incoming adjacency: for each node v, the list of (u, delay) with a link u→v.
    fn reverse_adjacency(&self) -> Vec<Vec<(NodeId, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for l in &self.links {
            adj[l.dst].push((l.src, l.delay_ms));
        }
        adj
    }

    fn forward_adjacency(&self) -> Vec<Vec<(NodeId, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for l in &self.links {
            adj[l.src].push((l.dst, l.delay_ms));
        }
        adj
    }

    /// Shortest delays from `src` to every node.
    pub fn distances_from(&self, src: NodeId) -> Result<Vec<f64>, TopologyError> {
        if src >= self.nodes.len() {
            return Err(TopologyError::UnknownNode(src));
        }
        Ok(dijkstra(&self.forward_adjacency(), src))
    }

    /// Shortest-delay statistics over all ordered pairs of distinct nodes.
    pub fn delay_stats(&self) -> DelayStats {
        let adj = self.forward_adjacency();
        let n = self.nodes.len();
        let mut all = Vec::with_capacity(n * n.saturating_sub(1));
        let mut unreachable = false;
        for s in 0..n {
            for (t, d) in dijkstra(&adj, s).into_iter().enumerate() {
                if t == s {
                    continue;
                }
                if d.is_finite() {
                    all.push(d);
                } else {
                    unreachable = true;
                }
            }
        }
        if all.is_empty() {
            return DelayStats {
                min_ms: f64::INFINITY,
                median_ms: f64::INFINITY,
                max_ms: f64::INFINITY,
            };
        }
        all.sort_by(f64::total_cmp);
        DelayStats {
            min_ms: all[0],
            median_ms: all[all.len() / 2],
            max_ms: if unreachable {
                f64::INFINITY
            } else {
                all[all.len() - 1]
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("topology serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, TopologyError> {
        let t: Topology = serde_json::from_str(s).map_err(|e| TopologyError::Json(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }
}

/// Shortest delay from every node to a fixed horizon node.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayMap {
    pub horizon_node: NodeId,
    pub dist: Vec<f64>,
}

impl DelayMap {
    /// Static-snapshot arrival time at the horizon node.
    pub fn earliest_arrival(&self, v: NodeId, emission_ms: f64) -> f64 {
        emission_ms + self.dist[v]
    }
}

/// One single-source run from the horizon node on the reverse graph.
pub fn distances_to_horizon(topology: &Topology, horizon_node: NodeId) -> Result<DelayMap, TopologyError> {
    if horizon_node >= topology.nodes.len() {
        return Err(TopologyError::UnknownNode(horizon_node));
    }
    let dist = dijkstra(&topology.reverse_adjacency(), horizon_node);
    Ok(DelayMap { horizon_node, dist })
}

/// Free-function form of [`DelayMap::earliest_arrival`].
pub fn earliest_arrival(_topology: &Topology, v: NodeId, emission_ms: f64, delay_map: &DelayMap) -> f64 {
    delay_map.earliest_arrival(v, emission_ms)
}

#[derive(Copy, Clone, PartialEq)]
struct State {
    dist: f64,
    node: NodeId,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(NodeId, f64)>], src: NodeId) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(State { dist: 0.0, node: src });
    while let Some(State { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(State { dist: nd, node: v });
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(delays: &[f64]) -> Topology {
        let n = delays.len() + 1;
        let nodes = (0..n)
            .map(|i| Node { id: i, position: [0.0; 3], region: 0 })
            .collect();
        let links = delays
            .iter()
            .enumerate()
            .map(|(i, &d)| Link { src: i + 1, dst: i, delay_ms: d })
            .collect();
        Topology::new(TopologyKind::Custom, 0, 1, nodes, links).unwrap()
    }

    #[test]
    fn horizon_is_zero() {
        let t = line(&[10.0]);
        let m = distances_to_horizon(&t, 0).unwrap();
        assert_eq!(m.dist[0], 0.0);
    }

    #[test]
    fn single_edge() {
        let t = line(&[10.0]);
        let m = distances_to_horizon(&t, 0).unwrap();
        assert_eq!(m.dist[1], 10.0);
    }

    #[test]
    fn direction_matters() {
        // only 1→0 exists, so 0 cannot reach 1
        let t = line(&[10.0]);
        let m = distances_to_horizon(&t, 1).unwrap();
        assert!(m.dist[0].is_infinite());
    }

    #[test]
    fn chained_path() {
        let t = line(&[1.0, 2.0, 3.0]);
        let m = distances_to_horizon(&t, 0).unwrap();
        assert_eq!(m.dist, vec![0.0, 1.0, 3.0, 6.0]);
    }

    #[test]
    fn arrival_is_additive() {
        let t = line(&[10.0]);
        let m = distances_to_horizon(&t, 0).unwrap();
        assert_eq!(earliest_arrival(&t, 1, 5.0, &m), 15.0);
        assert_eq!(m.earliest_arrival(0, 0.0), 0.0);
    }

    #[test]
    fn invalid_horizon() {
        let t = line(&[10.0]);
        assert!(matches!(distances_to_horizon(&t, 7), Err(TopologyError::UnknownNode(7))));
    }

    #[test]
    fn rejects_superluminal_link() {
        let nodes = vec![
            Node { id: 0, position: [0.0, 0.0, 0.0], region: 0 },
            Node { id: 1, position: [3000.0, 0.0, 0.0], region: 0 },
        ];
        let links = vec![Link { src: 0, dst: 1, delay_ms: 1.0 }];
        let err = Topology::new(TopologyKind::Custom, 0, 1, nodes, links).unwrap_err();
        assert!(matches!(err, TopologyError::FasterThanLight { .. }));
    }

    #[test]
    fn rejects_zero_delay() {
        let nodes = vec![
            Node { id: 0, position: [0.0; 3], region: 0 },
            Node { id: 1, position: [0.0; 3], region: 0 },
        ];
        let links = vec![Link { src: 0, dst: 1, delay_ms: 0.0 }];
        assert!(Topology::new(TopologyKind::Custom, 0, 1, nodes, links).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = line(&[1.5, 2.25]);
        let back = Topology::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn kind_names() {
        for k in [
            TopologyKind::Starlink200,
            TopologyKind::Internet100,
            TopologyKind::Dsn30,
            TopologyKind::Custom,
        ] {
            assert_eq!(TopologyKind::parse(k.as_str()), Some(k));
        }
        assert_eq!(TopologyKind::parse("dsn"), Some(TopologyKind::Dsn30));
        assert_eq!(TopologyKind::parse("mesh"), None);
    }
}
