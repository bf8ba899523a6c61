//! Synthetic generators for the three evaluation environments.
//!
//! All three are total functions of the seed. Geometry is synthetic and only
//! calibrated to published end-to-end delay ranges.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{euclid, light_time_ms, Link, Node, Topology, TopologyKind, SPEED_OF_LIGHT_KM_S};

const EARTH_RADIUS_KM: f64 = 6371.0;
const MARS_RADIUS_KM: f64 = 3390.0;

/// Delay floor between co-located metros.
pub const METRO_FLOOR_MS: f64 = 0.3;
const FIBER_SLOWDOWN: f64 = 1.468;

const MARS_CLOSEST_MS: f64 = 498_000.0;
const MARS_FARTHEST_MS: f64 = 1_340_000.0;
const JUPITER_NEAR_MS: f64 = 3_000_000.0;
const JUPITER_FARTHEST_MS: f64 = 4_416_000.0;

/// Earth–Mars light time for an orbital phase in [0, 1] (0 = closest approach).
pub fn mars_light_time_ms(phase: f64) -> f64 {
    MARS_CLOSEST_MS + phase.clamp(0.0, 1.0) * (MARS_FARTHEST_MS - MARS_CLOSEST_MS)
}

/// Earth–Jupiter light time for a phase in [0, 1] (1 = maximum separation).
pub fn jupiter_light_time_ms(phase: f64) -> f64 {
    JUPITER_NEAR_MS + phase.clamp(0.0, 1.0) * (JUPITER_FARTHEST_MS - JUPITER_NEAR_MS)
}

fn km_for_light_time(ms: f64) -> f64 {
    ms / 1000.0 * SPEED_OF_LIGHT_KM_S
}

fn latlon_to_xyz(lat_deg: f64, lon_deg: f64, radius: f64) -> [f64; 3] {
    let (la, lo) = (lat_deg.to_radians(), lon_deg.to_radians());
    [
        radius * la.cos() * lo.cos(),
        radius * la.cos() * lo.sin(),
        radius * la.sin(),
    ]
}

fn scale(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = dot(v, v).sqrt();
    scale(v, 1.0 / n)
}

/// Two unit vectors completing `axis` to an orthonormal basis.
fn basis(axis: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if axis[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = normalize(cross(axis, helper));
    let w = cross(axis, u);
    (u, w)
}

/// Uniform direction within `half_angle` radians of `axis`.
fn direction_in_cap(rng: &mut ChaCha8Rng, axis: [f64; 3], half_angle: f64) -> [f64; 3] {
    let cos_t = rng.random_range(half_angle.cos()..=1.0);
    let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
    let phi = rng.random_range(0.0..TAU);
    let (u, w) = basis(axis);
    add(
        scale(axis, cos_t),
        add(scale(u, sin_t * phi.cos()), scale(w, sin_t * phi.sin())),
    )
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    direction_in_cap(rng, [0.0, 0.0, 1.0], std::f64::consts::PI)
}

fn nodes_from(positions: &[[f64; 3]], regions: &[u32]) -> Vec<Node> {
    positions
        .iter()
        .zip(regions)
        .enumerate()
        .map(|(id, (&position, &region))| Node { id, position, region })
        .collect()
}

/// Both directions of a link, delay at the straight-line light bound.
fn push_radio(links: &mut Vec<Link>, pos: &[[f64; 3]], a: usize, b: usize) {
    let d = light_time_ms(euclid(&pos[a], &pos[b]));
    links.push(Link { src: a, dst: b, delay_ms: d });
    links.push(Link { src: b, dst: a, delay_ms: d });
}

/// 10 planes of 20 satellites at 550 km, 85° inclination, zero phasing.
///
/// Every satellite pair is linked by a straight-line chord.
pub fn generate_starlink(seed: u64) -> Topology {
    const PLANES: usize = 10;
    const PER_PLANE: usize = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = EARTH_RADIUS_KM + 550.0;
    let inc = 85f64.to_radians();
    // the epoch offset sets how close satellites of different planes come
    // near the plane crossings; this range keeps the closest pair in band
    let epoch_mag = rng.random_range(0.07..0.11);
    let epoch = if rng.random::<bool>() { epoch_mag } else { -epoch_mag };
    let raan0 = rng.random_range(0.0..TAU);

    let mut pos = Vec::with_capacity(PLANES * PER_PLANE);
    let mut regions = Vec::with_capacity(PLANES * PER_PLANE);
    for p in 0..PLANES {
        let raan = raan0 + TAU * p as f64 / PLANES as f64;
        for s in 0..PER_PLANE {
            let u = epoch + TAU * s as f64 / PER_PLANE as f64;
            pos.push([
                r * (raan.cos() * u.cos() - raan.sin() * u.sin() * inc.cos()),
                r * (raan.sin() * u.cos() + raan.cos() * u.sin() * inc.cos()),
                r * u.sin() * inc.sin(),
            ]);
            regions.push(p as u32);
        }
    }
    let mut links = Vec::with_capacity(pos.len() * (pos.len() - 1));
    for a in 0..pos.len() {
        for b in (a + 1)..pos.len() {
            push_radio(&mut links, &pos, a, b);
        }
    }
    Topology::new(
        TopologyKind::Starlink200,
        seed,
        PLANES as u32,
        nodes_from(&pos, &regions),
        links,
    )
    .expect("starlink generator produces a valid topology")
}

struct Cluster {
    lat: f64,
    lon: f64,
    lat_spread: f64,
    lon_spread: f64,
    count: usize,
}

/// 96 North American metros around a Chicago hub plus 4 overseas PoPs.
///
/// Regions: 0 east, 1 central, 2 west, 3 overseas. Fully meshed fiber.
pub fn generate_internet(seed: u64) -> Topology {
    const HUB: (f64, f64) = (41.88, -87.63);
    const CLUSTERS: [Cluster; 3] = [
        Cluster { lat: 40.5, lon: -76.0, lat_spread: 3.5, lon_spread: 5.0, count: 39 },
        Cluster { lat: 37.0, lon: -94.0, lat_spread: 4.0, lon_spread: 7.0, count: 29 },
        Cluster { lat: 38.0, lon: -120.0, lat_spread: 4.0, lon_spread: 3.0, count: 27 },
    ];
    const OVERSEAS: [(f64, f64); 4] = [(51.51, -0.13), (50.11, 8.68), (35.68, 139.69), (-33.87, 151.21)];
    // the last metros of each cluster share a site with an earlier one
    const COLOCATED_PER_CLUSTER: usize = 2;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut latlon = vec![HUB];
    let mut regions = vec![1u32];
    for (k, c) in CLUSTERS.iter().enumerate() {
        let start = latlon.len();
        for j in 0..c.count {
            if j + COLOCATED_PER_CLUSTER >= c.count {
                let twin = rng.random_range(start..start + c.count - COLOCATED_PER_CLUSTER);
                latlon.push(latlon[twin]);
            } else {
                latlon.push((
                    c.lat + rng.random_range(-c.lat_spread..c.lat_spread),
                    c.lon + rng.random_range(-c.lon_spread..c.lon_spread),
                ));
            }
            regions.push(k as u32);
        }
    }
    for o in OVERSEAS {
        latlon.push(o);
        regions.push(3);
    }

    let pos: Vec<[f64; 3]> = latlon
        .iter()
        .map(|&(la, lo)| latlon_to_xyz(la, lo, EARTH_RADIUS_KM))
        .collect();
    let mut links = Vec::with_capacity(pos.len() * (pos.len() - 1));
    for a in 0..pos.len() {
        for b in (a + 1)..pos.len() {
            let d = fiber_delay_ms(&pos[a], &pos[b]);
            links.push(Link { src: a, dst: b, delay_ms: d });
            links.push(Link { src: b, dst: a, delay_ms: d });
        }
    }
    Topology::new(
        TopologyKind::Internet100,
        seed,
        4,
        nodes_from(&pos, &regions),
        links,
    )
    .expect("internet generator produces a valid topology")
}

fn fiber_delay_ms(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let chord = euclid(a, b);
    let arc = 2.0 * EARTH_RADIUS_KM * (chord / (2.0 * EARTH_RADIUS_KM)).min(1.0).asin();
    (light_time_ms(arc) * FIBER_SLOWDOWN).max(METRO_FLOOR_MS)
}

/// 30 nodes: 3 ground stations, 10 near-Earth relays, 7 inner-system probes,
/// a 9-node Mars cluster (5 orbiters, 4 landers) and one Jupiter probe.
///
/// Regions: 0 ground, 1 near-Earth, 2 inner probes, 3 Mars, 4 Jupiter.
/// Node 0 is the Goldstone-like station.
pub fn generate_dsn(seed: u64) -> Topology {
    const STATIONS: [(f64, f64); 3] = [(35.43, -116.89), (40.43, -4.25), (-35.40, 148.98)];
    const INNER_PROBES: usize = 7;
    const MARS_ORBITERS: usize = 5;
    const MARS_LANDERS: usize = 4;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<[f64; 3]> = Vec::with_capacity(30);
    let mut regions = Vec::with_capacity(30);

    for (la, lo) in STATIONS {
        pos.push(latlon_to_xyz(la, lo, EARTH_RADIUS_KM));
        regions.push(0);
    }
    let stations: Vec<usize> = (0..STATIONS.len()).collect();

    let mut near = Vec::new();
    for _ in 0..3 {
        // low orbit above one of the stations
        let s = rng.random_range(0..STATIONS.len());
        let jitter = scale(unit_vector(&mut rng), rng.random_range(0.0..800.0));
        let dir = normalize(add(pos[s], jitter));
        near.push(scale(dir, EARTH_RADIUS_KM + rng.random_range(500.0..1200.0)));
    }
    for _ in 0..3 {
        near.push(scale(unit_vector(&mut rng), 42_164.0));
    }
    for _ in 0..2 {
        near.push(scale(unit_vector(&mut rng), rng.random_range(363_000.0..405_000.0)));
    }
    for _ in 0..2 {
        near.push(scale(unit_vector(&mut rng), rng.random_range(1.45e6..1.55e6)));
    }
    let near_ids: Vec<usize> = (pos.len()..pos.len() + near.len()).collect();
    for p in near {
        pos.push(p);
        regions.push(1);
    }

    // deep-space bodies sit within a cone so that cross links stay shorter
    // than the Jupiter link
    let axis = unit_vector(&mut rng);
    let cone = 30f64.to_radians();
    let mars_ms = mars_light_time_ms(rng.random_range(0.0..=1.0));

    let mut deep = Vec::new();
    for _ in 0..INNER_PROBES {
        let ms = rng.random_range(150_000.0..0.9 * mars_ms);
        deep.push(pos.len());
        pos.push(scale(direction_in_cap(&mut rng, axis, cone), km_for_light_time(ms)));
        regions.push(2);
    }

    let mars_dir = direction_in_cap(&mut rng, axis, cone);
    let mars_center = scale(mars_dir, km_for_light_time(mars_ms));
    let (u, w) = basis(mars_dir);
    let mut orbiter_offsets = Vec::new();
    let mut orbiters = Vec::new();
    for _ in 0..MARS_ORBITERS {
        let radius = MARS_RADIUS_KM + rng.random_range(300.0..1500.0);
        let along = rng.random_range(-2400.0..2400.0);
        let across = (radius * radius - along * along).sqrt();
        let phi = rng.random_range(0.0..TAU);
        let offset = add(
            scale(mars_dir, along),
            add(scale(u, across * phi.cos()), scale(w, across * phi.sin())),
        );
        orbiter_offsets.push(offset);
        orbiters.push(pos.len());
        deep.push(pos.len());
        pos.push(add(mars_center, offset));
        regions.push(3);
    }
    let mut landers = Vec::new();
    for j in 0..MARS_LANDERS {
        let below = normalize(orbiter_offsets[j % MARS_ORBITERS]);
        landers.push(pos.len());
        pos.push(add(mars_center, scale(below, MARS_RADIUS_KM)));
        regions.push(3);
    }

    let jupiter_ms = jupiter_light_time_ms(rng.random_range(0.0..=1.0));
    deep.push(pos.len());
    pos.push(scale(direction_in_cap(&mut rng, axis, cone), km_for_light_time(jupiter_ms)));
    regions.push(4);

    let mut links = Vec::new();
    for a in 0..stations.len() {
        for b in (a + 1)..stations.len() {
            let d = fiber_delay_ms(&pos[a], &pos[b]);
            links.push(Link { src: a, dst: b, delay_ms: d });
            links.push(Link { src: b, dst: a, delay_ms: d });
        }
    }
    for (k, &a) in near_ids.iter().enumerate() {
        for &s in &stations {
            push_radio(&mut links, &pos, a, s);
        }
        for &b in &near_ids[k + 1..] {
            push_radio(&mut links, &pos, a, b);
        }
    }
    for (k, &a) in deep.iter().enumerate() {
        for &s in &stations {
            push_radio(&mut links, &pos, a, s);
        }
        for &b in &deep[k + 1..] {
            push_radio(&mut links, &pos, a, b);
        }
    }
    for &l in &landers {
        for &o in &orbiters {
            push_radio(&mut links, &pos, l, o);
        }
    }

    Topology::new(TopologyKind::Dsn30, seed, 5, nodes_from(&pos, &regions), links)
        .expect("dsn generator produces a valid topology")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_counts() {
        assert_eq!(generate_starlink(1).node_count(), 200);
        assert_eq!(generate_internet(1).node_count(), 100);
        assert_eq!(generate_dsn(1).node_count(), 30);
    }

    #[test]
    fn same_seed_same_topology() {
        assert_eq!(generate_starlink(9), generate_starlink(9));
        assert_eq!(generate_internet(9), generate_internet(9));
        assert_eq!(generate_dsn(9), generate_dsn(9));
        assert_ne!(generate_dsn(9), generate_dsn(10));
    }

    #[test]
    fn starlink_altitude_and_planes() {
        let t = generate_starlink(3);
        for n in &t.nodes {
            let r = dot(n.position, n.position).sqrt();
            assert!((r - 6921.0).abs() < 1e-6);
        }
        for p in 0..10 {
            assert_eq!(t.nodes.iter().filter(|n| n.region == p).count(), 20);
        }
    }

    #[test]
    fn mars_and_jupiter_endpoints() {
        assert_eq!(mars_light_time_ms(0.0), 498_000.0);
        assert_eq!(jupiter_light_time_ms(1.0), 4_416_000.0);
    }

    #[test]
    fn colocated_metros_hit_the_floor() {
        let t = generate_internet(5);
        let twins = t
            .links
            .iter()
            .filter(|l| t.nodes[l.src].position == t.nodes[l.dst].position)
            .collect::<Vec<_>>();
        assert!(!twins.is_empty());
        for l in twins {
            assert_eq!(l.delay_ms, METRO_FLOOR_MS);
        }
    }

    #[test]
    fn dsn_regions() {
        let t = generate_dsn(2);
        let count = |r| t.nodes.iter().filter(|n| n.region == r).count();
        assert_eq!((count(0), count(1), count(2), count(3), count(4)), (3, 10, 7, 9, 1));
    }
}
