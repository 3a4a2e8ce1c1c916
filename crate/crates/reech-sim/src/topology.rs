//! Field geometry: the nine-region partition, node deployment, and region
//! lookup.
//!
//! The field splits into an inner square R1 and an outer ring of eight
//! regions (four rectangles, four squares). R1 routes straight to the sink;
//! R2–R9 each form one cluster. Boundaries are half-open `[min, max)`
//! rectangles, closed on the field's outer edges, so every point belongs to
//! exactly one region. Region membership is fixed at deployment and never
//! changes.

use rand::Rng;

use crate::rng::SimRng;
use crate::SimError;

/// A point in the field, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance to another point.
    pub fn distance_to(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Field dimensions and sink position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub width_m: f64,
    pub height_m: f64,
    pub sink: Point,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            width_m: 100.0,
            height_m: 100.0,
            sink: Point::new(50.0, 50.0),
        }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        let width_valid = self.width_m.is_finite() && self.width_m > 0.0;
        if !width_valid {
            return Err(SimError::config(
                "field_width_m",
                "must be strictly positive",
            ));
        }
        let height_valid = self.height_m.is_finite() && self.height_m > 0.0;
        if !height_valid {
            return Err(SimError::config(
                "field_height_m",
                "must be strictly positive",
            ));
        }
        if !self.contains(self.sink) {
            return Err(SimError::config(
                "sink_x_m/sink_y_m",
                "sink must lie inside the field",
            ));
        }
        Ok(())
    }

    /// Whether a point lies inside the field (edges inclusive).
    pub fn contains(&self, p: Point) -> bool {
        p.x >= 0.0 && p.x <= self.width_m && p.y >= 0.0 && p.y <= self.height_m
    }
}

/// Identifier of one of the nine regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
}

impl RegionId {
    pub const ALL: [RegionId; 9] = [
        RegionId::R1,
        RegionId::R2,
        RegionId::R3,
        RegionId::R4,
        RegionId::R5,
        RegionId::R6,
        RegionId::R7,
        RegionId::R8,
        RegionId::R9,
    ];

    /// Zero-based index in region order.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            RegionId::R1 => "R1",
            RegionId::R2 => "R2",
            RegionId::R3 => "R3",
            RegionId::R4 => "R4",
            RegionId::R5 => "R5",
            RegionId::R6 => "R6",
            RegionId::R7 => "R7",
            RegionId::R8 => "R8",
            RegionId::R9 => "R9",
        }
    }
}

impl std::fmt::Display for RegionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// How a region's nodes reach the sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoutingMode {
    /// Every node transmits straight to the sink (R1).
    Direct,
    /// One elected cluster head relays for the region (R2–R9).
    Clustered,
}

/// One region's rectangle, deployment quota, and routing mode.
///
/// `x_max`/`y_max` are exclusive except where the rectangle ends on the
/// field's outer edge, which is closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub id: RegionId,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub quota: u32,
    pub mode: RoutingMode,
    closed_x_max: bool,
    closed_y_max: bool,
}

impl Region {
    /// Membership test under the half-open boundary convention.
    pub fn contains(&self, p: Point) -> bool {
        let x_ok =
            p.x >= self.x_min && (p.x < self.x_max || (self.closed_x_max && p.x <= self.x_max));
        let y_ok =
            p.y >= self.y_min && (p.y < self.y_max || (self.closed_y_max && p.y <= self.y_max));
        x_ok && y_ok
    }

    pub fn area_m2(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }
}

/// Default per-region deployment quotas: 20 nodes in R1, 10 in each of
/// R2–R9.
pub const DEFAULT_QUOTAS: [u32; 9] = [20, 10, 10, 10, 10, 10, 10, 10, 10];

/// Region boundaries as fractions of the field dimensions, in region order:
/// (x_min, x_max, y_min, y_max).
const REGION_FRACTIONS: [(f64, f64, f64, f64); 9] = [
    (0.25, 0.75, 0.25, 0.75), // R1, inner square
    (0.50, 1.00, 0.75, 1.00), // R2
    (0.00, 0.50, 0.75, 1.00), // R3
    (0.00, 0.25, 0.50, 0.75), // R4
    (0.00, 0.25, 0.25, 0.50), // R5
    (0.00, 0.50, 0.00, 0.25), // R6
    (0.50, 1.00, 0.00, 0.25), // R7
    (0.75, 1.00, 0.25, 0.50), // R8
    (0.75, 1.00, 0.50, 0.75), // R9
];

/// The nine-region partition of a field.
#[derive(Debug, Clone)]
pub struct RegionMap {
    pub field: FieldSpec,
    pub regions: [Region; 9],
}

impl RegionMap {
    /// Build the partition with the default quotas.
    pub fn build(field: FieldSpec) -> Result<Self, SimError> {
        Self::build_with_quotas(field, DEFAULT_QUOTAS)
    }

    /// Build the partition, scaling the boundary fractions to the field and
    /// assigning the given per-region quotas.
    pub fn build_with_quotas(field: FieldSpec, quotas: [u32; 9]) -> Result<Self, SimError> {
        field.validate()?;
        let regions = std::array::from_fn(|i| {
            let (fx0, fx1, fy0, fy1) = REGION_FRACTIONS[i];
            let id = RegionId::ALL[i];
            Region {
                id,
                x_min: fx0 * field.width_m,
                x_max: fx1 * field.width_m,
                y_min: fy0 * field.height_m,
                y_max: fy1 * field.height_m,
                quota: quotas[i],
                mode: if id == RegionId::R1 {
                    RoutingMode::Direct
                } else {
                    RoutingMode::Clustered
                },
                closed_x_max: fx1 == 1.0,
                closed_y_max: fy1 == 1.0,
            }
        });
        Ok(RegionMap { field, regions })
    }

    pub fn region(&self, id: RegionId) -> &Region {
        &self.regions[id.index()]
    }

    /// Total deployment quota across all regions.
    pub fn total_quota(&self) -> u32 {
        self.regions.iter().map(|r| r.quota).sum()
    }

    /// Find the region containing a point. R1 is tested first; the
    /// half-open tiling guarantees a unique match for any in-field point.
    pub fn locate(&self, p: Point) -> Result<RegionId, SimError> {
        if !self.field.contains(p) {
            return Err(SimError::OutOfField {
                x: p.x,
                y: p.y,
                width: self.field.width_m,
                height: self.field.height_m,
            });
        }
        for region in &self.regions {
            if region.contains(p) {
                return Ok(region.id);
            }
        }
        unreachable!("region tiling covers the whole field")
    }
}

/// A node's per-round protocol role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Normal,
    ClusterHead,
    Direct,
}

pub type NodeId = usize;

/// One sensor node's deployment position and live state.
#[derive(Debug, Clone)]
pub struct NodeState {
    pub id: NodeId,
    pub position: Point,
    pub region: RegionId,
    pub residual_energy_j: f64,
    pub alive: bool,
    pub role: Role,
}

/// Deploy quota-many nodes uniformly inside each region's rectangle.
///
/// Node ids are assigned region-major (all of R1, then R2, ...) so RNG
/// consumption and later tie-breaking are deterministic. Every node starts
/// with `initial_energy_j` and role `Normal`.
pub fn deploy_nodes(
    regions: &RegionMap,
    initial_energy_j: f64,
    rng: &mut SimRng,
) -> Vec<NodeState> {
    let mut nodes = Vec::with_capacity(regions.total_quota() as usize);
    for region in &regions.regions {
        for _ in 0..region.quota {
            // rejection keeps the position strictly inside the half-open
            // rectangle even if a draw rounds onto the upper boundary
            let position = loop {
                let x = region.x_min + rng.random::<f64>() * (region.x_max - region.x_min);
                let y = region.y_min + rng.random::<f64>() * (region.y_max - region.y_min);
                let p = Point::new(x, y);
                if p.x < region.x_max && p.y < region.y_max {
                    break p;
                }
            };
            nodes.push(NodeState {
                id: nodes.len(),
                position,
                region: region.id,
                residual_energy_j: initial_energy_j,
                alive: true,
                role: Role::Normal,
            });
        }
    }
    nodes
}

/// Render a node placement as CSV (`node_id,x,y,region_id`, six decimal
/// places on the coordinates).
pub fn placement_csv(nodes: &[NodeState]) -> String {
    let mut out = String::from("node_id,x,y,region_id\n");
    for node in nodes {
        out.push_str(&format!(
            "{},{:.6},{:.6},{}\n",
            node.id, node.position.x, node.position.y, node.region
        ));
    }
    out
}
