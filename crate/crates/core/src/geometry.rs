//! The convex polygonal scatterer and its geometric queries.
//!
//! Sides are numbered so that side `j` runs from corner `P_j` to `P_{j+1}`
//! (indices wrap), with the boundary oriented anti-clockwise. A corner is
//! owned by the side that starts at it, so boundary functions stored per
//! side may be two-valued at corners.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// 2D point / vector with the handful of operations the solver needs.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn normalize(self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    /// Rotation by -90 degrees; maps an anti-clockwise tangent to the
    /// outward normal.
    #[inline]
    pub fn perp_cw(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("side {0} has zero length")]
    DegenerateSide(usize),
    #[error("vertices must be ordered anti-clockwise (signed area {0} <= 0)")]
    NotAntiClockwise(f64),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotConvex(usize),
    #[error("side length must be positive, got {0}")]
    NonPositiveSideLength(f64),
    #[error("vertex coordinates must be finite")]
    NonFiniteVertex,
}

/// A point on the boundary, identified by side index and arclength along
/// that side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub side: usize,
    pub s: f64,
}

impl BoundaryPoint {
    pub fn new(side: usize, s: f64) -> Self {
        BoundaryPoint { side, s }
    }
}

/// Region classification for [`ConvexPolygon::locate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    Exterior,
    Boundary,
}

/// Strictly convex polygon with anti-clockwise vertex order and per-side
/// derived data. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    tangents: Vec<Vec2>,
    normals: Vec<Vec2>,
    lengths: Vec<f64>,
    cumulative: Vec<f64>,
    perimeter: f64,
    centroid: Vec2,
    circumradius: f64,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(GeometryError::NonFiniteVertex);
        }
        let mut area2 = 0.0;
        for j in 0..n {
            let a = vertices[j];
            let b = vertices[(j + 1) % n];
            area2 += a.cross(b);
        }
        if area2 <= 0.0 {
            return Err(GeometryError::NotAntiClockwise(0.5 * area2));
        }
        let mut tangents = Vec::with_capacity(n);
        let mut normals = Vec::with_capacity(n);
        let mut lengths = Vec::with_capacity(n);
        for j in 0..n {
            let e = vertices[(j + 1) % n] - vertices[j];
            let len = e.norm();
            if len <= 0.0 {
                return Err(GeometryError::DegenerateSide(j));
            }
            let t = e * (1.0 / len);
            tangents.push(t);
            normals.push(t.perp_cw());
            lengths.push(len);
        }
        for j in 0..n {
            let e0 = vertices[(j + 1) % n] - vertices[j];
            let e1 = vertices[(j + 2) % n] - vertices[(j + 1) % n];
            if e0.cross(e1) <= 0.0 {
                return Err(GeometryError::NotConvex((j + 1) % n));
            }
        }
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for len in &lengths {
            acc += len;
            cumulative.push(acc);
        }
        let centroid = vertices.iter().fold(Vec2::default(), |a, v| a + *v) * (1.0 / n as f64);
        let circumradius = vertices
            .iter()
            .map(|v| (*v - centroid).norm())
            .fold(0.0f64, f64::max);
        Ok(ConvexPolygon {
            vertices,
            tangents,
            normals,
            lengths,
            perimeter: acc,
            cumulative,
            centroid,
            circumradius,
        })
    }

    /// Regular `n_sides`-gon with the given side length, rotated about and
    /// centred on `center`. With zero rotation the first side of a triangle
    /// is its right-hand side and the polygon has a corner pointing up.
    pub fn regular(
        n_sides: usize,
        side_length: f64,
        rotation: f64,
        center: Vec2,
    ) -> Result<Self, GeometryError> {
        if n_sides < 3 {
            return Err(GeometryError::TooFewVertices(n_sides));
        }
        if !(side_length > 0.0) {
            return Err(GeometryError::NonPositiveSideLength(side_length));
        }
        let r = side_length / (2.0 * (std::f64::consts::PI / n_sides as f64).sin());
        let vertices = (0..n_sides)
            .map(|j| {
                let angle = rotation - std::f64::consts::FRAC_PI_2
                    + (2 * j + 1) as f64 * std::f64::consts::PI / n_sides as f64;
                center + Vec2::new(angle.cos(), angle.sin()) * r
            })
            .collect();
        Self::new(vertices)
    }

    pub fn num_sides(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, j: usize) -> Vec2 {
        self.vertices[j % self.num_sides()]
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn tangent(&self, j: usize) -> Vec2 {
        self.tangents[j % self.num_sides()]
    }

    /// Outward unit normal of side `j`.
    pub fn normal(&self, j: usize) -> Vec2 {
        self.normals[j % self.num_sides()]
    }

    pub fn side_length(&self, j: usize) -> f64 {
        self.lengths[j % self.num_sides()]
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn centroid(&self) -> Vec2 {
        self.centroid
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    /// Cartesian position of a boundary point.
    pub fn position(&self, p: BoundaryPoint) -> Vec2 {
        let j = p.side % self.num_sides();
        self.vertices[j] + self.tangents[j] * p.s
    }

    /// Arclength from `P_1` measured anti-clockwise.
    pub fn global_arclength(&self, p: BoundaryPoint) -> f64 {
        self.cumulative[p.side % self.num_sides()] + p.s
    }

    /// Euclidean distance from boundary point `x` to corner `P_j`.
    pub fn corner_distance(&self, j: usize, x: BoundaryPoint) -> f64 {
        let n = self.num_sides();
        let j = j % n;
        let side = x.side % n;
        // exact linear forms on the two adjacent sides keep the phase smooth
        if side == j {
            return x.s;
        }
        if (side + 1) % n == j {
            return self.lengths[side] - x.s;
        }
        (self.position(x) - self.vertices[j]).norm()
    }

    /// Classify a point against the polygon with boundary tolerance `delta`.
    pub fn locate(&self, x: Vec2, delta: f64) -> Region {
        let n = self.num_sides();
        let mut min_signed = f64::NEG_INFINITY;
        for j in 0..n {
            let d = (x - self.vertices[j]).dot(self.normals[j]);
            min_signed = min_signed.max(d);
        }
        // distance to the boundary also accounts for corner regions
        let mut dist = f64::INFINITY;
        for j in 0..n {
            let v = x - self.vertices[j];
            let t = v.dot(self.tangents[j]).clamp(0.0, self.lengths[j]);
            let p = self.vertices[j] + self.tangents[j] * t;
            dist = dist.min((x - p).norm());
        }
        if dist <= delta {
            Region::Boundary
        } else if min_signed < 0.0 {
            Region::Interior
        } else {
            Region::Exterior
        }
    }

    /// Default boundary tolerance used by the field evaluators.
    pub fn default_locate_tolerance(&self) -> f64 {
        1e-10 * self.circumradius
    }

    /// First intersection of the ray `origin + t dir`, `t > eps`, with the
    /// boundary. Returns the boundary point and the ray parameter.
    pub fn ray_exit(&self, origin: Vec2, dir: Vec2, eps: f64) -> Option<(BoundaryPoint, f64)> {
        let n = self.num_sides();
        let mut best: Option<(BoundaryPoint, f64)> = None;
        for j in 0..n {
            let denom = dir.dot(self.normals[j]);
            if denom.abs() < 1e-14 {
                continue;
            }
            let t = (self.vertices[j] - origin).dot(self.normals[j]) / denom;
            if t <= eps {
                continue;
            }
            let hit = origin + dir * t;
            let s = (hit - self.vertices[j]).dot(self.tangents[j]);
            if s < -1e-12 * self.lengths[j] || s > self.lengths[j] * (1.0 + 1e-12) {
                continue;
            }
            let s = s.clamp(0.0, self.lengths[j]);
            if best.map_or(true, |(_, tb)| t < tb) {
                best = Some((BoundaryPoint::new(j, s), t));
            }
        }
        best
    }
}

/// JSON-facing description of a polygon: either explicit vertices or a
/// regular polygon specification.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PolygonSpec {
    Vertices { vertices: Vec<[f64; 2]> },
    Regular { regular: RegularSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RegularSpec {
    pub n_sides: usize,
    pub side_length: f64,
    #[serde(default)]
    pub rotation: f64,
    #[serde(default)]
    pub center: [f64; 2],
}

impl PolygonSpec {
    pub fn build(&self) -> Result<ConvexPolygon, GeometryError> {
        match self {
            PolygonSpec::Vertices { vertices } => {
                ConvexPolygon::new(vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect())
            }
            PolygonSpec::Regular { regular } => ConvexPolygon::regular(
                regular.n_sides,
                regular.side_length,
                regular.rotation,
                Vec2::new(regular.center[0], regular.center[1]),
            ),
        }
    }
}

impl From<&ConvexPolygon> for PolygonSpec {
    fn from(p: &ConvexPolygon) -> Self {
        PolygonSpec::Vertices {
            vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn regular_triangle_matches_expected_layout() {
        let p = ConvexPolygon::regular(3, 2.0 * PI, 0.0, Vec2::default()).unwrap();
        assert!((p.perimeter() - 6.0 * PI).abs() < 1e-12);
        // corner pointing up, base at the bottom
        let top = p.vertex(1);
        assert!((top.x).abs() < 1e-12 && (top.y - 2.0 * PI / 3.0f64.sqrt()).abs() < 1e-12);
        let p1 = p.vertex(0);
        assert!((p1.x - PI).abs() < 1e-12 && (p1.y + PI / 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn regular_square_normals() {
        let p = ConvexPolygon::regular(4, 1.0, 0.0, Vec2::default()).unwrap();
        for j in 0..4 {
            let a = p.normal(j);
            let b = p.normal((j + 1) % 4);
            assert!(a.dot(b).abs() < 1e-12, "normals {j} not orthogonal");
            assert!((a.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn regular_hexagon_interior_angles() {
        let p = ConvexPolygon::regular(6, 2.0 * PI, 0.3, Vec2::new(1.0, -2.0)).unwrap();
        for j in 0..6 {
            let a = p.tangent(j) * -1.0;
            let b = p.tangent((j + 1) % 6);
            let angle = a.dot(b).acos();
            assert!((angle + PI / 3.0 - PI).abs() < 1e-12 || (angle - 2.0 * PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(matches!(
            ConvexPolygon::regular(2, 1.0, 0.0, Vec2::default()),
            Err(GeometryError::TooFewVertices(2))
        ));
        assert!(matches!(
            ConvexPolygon::regular(3, 0.0, 0.0, Vec2::default()),
            Err(GeometryError::NonPositiveSideLength(_))
        ));
        // clockwise square
        let cw = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 0.0),
        ];
        assert!(matches!(ConvexPolygon::new(cw), Err(GeometryError::NotAntiClockwise(_))));
        // collinear point
        let collinear = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 1.0),
        ];
        assert!(matches!(ConvexPolygon::new(collinear), Err(GeometryError::NotConvex(_))));
    }

    #[test]
    fn tangent_normal_frame() {
        let p = ConvexPolygon::regular(5, 1.3, 0.7, Vec2::new(0.2, 0.1)).unwrap();
        for j in 0..5 {
            let t = p.tangent(j);
            let n = p.normal(j);
            assert!((t.norm() - 1.0).abs() < 1e-14);
            assert!((n.norm() - 1.0).abs() < 1e-14);
            assert!(t.dot(n).abs() < 1e-14);
            assert_eq!(t.perp_cw(), n);
            // outward: points away from the centroid
            let mid = p.position(BoundaryPoint::new(j, 0.5 * p.side_length(j)));
            assert!((mid - p.centroid()).dot(n) > 0.0);
        }
    }

    #[test]
    fn global_arclength_is_monotone_and_totals_perimeter() {
        let p = ConvexPolygon::regular(6, 2.0 * PI, 0.0, Vec2::default()).unwrap();
        let mut prev = -1.0;
        for j in 0..6 {
            for k in 0..10 {
                let s = p.side_length(j) * k as f64 / 10.0;
                let g = p.global_arclength(BoundaryPoint::new(j, s));
                assert!(g > prev);
                prev = g;
            }
        }
        let last = p.global_arclength(BoundaryPoint::new(5, p.side_length(5)));
        assert!((last - p.perimeter()).abs() < 1e-12);
    }

    #[test]
    fn corner_distance_examples() {
        let p = ConvexPolygon::regular(3, 2.0 * PI, 0.0, Vec2::default()).unwrap();
        assert_eq!(p.corner_distance(0, BoundaryPoint::new(0, 0.0)), 0.0);
        let d = p.corner_distance(1, BoundaryPoint::new(0, 0.0));
        assert!((d - 2.0 * PI).abs() < 1e-12);
        let mid = BoundaryPoint::new(0, PI);
        assert!((p.corner_distance(0, mid) - PI).abs() < 1e-12);
        assert!((p.corner_distance(1, mid) - PI).abs() < 1e-12);
    }

    #[test]
    fn locate_examples() {
        let p = ConvexPolygon::regular(5, 2.0, 0.4, Vec2::new(0.3, -0.2)).unwrap();
        assert_eq!(p.locate(p.centroid(), 1e-12), Region::Interior);
        assert_eq!(p.locate(p.vertex(0), 1e-12), Region::Boundary);
        let far = p.centroid() + Vec2::new(10.0 * p.circumradius(), 0.0);
        assert_eq!(p.locate(far, 1e-12), Region::Exterior);
    }

    /// Winding-number oracle on pseudo-random points.
    fn winding_inside(p: &ConvexPolygon, x: Vec2) -> bool {
        let n = p.num_sides();
        let mut total = 0.0;
        for j in 0..n {
            let a = p.vertex(j) - x;
            let b = p.vertex(j + 1) - x;
            total += a.cross(b).atan2(a.dot(b));
        }
        total.abs() > std::f64::consts::PI
    }

    #[test]
    fn locate_agrees_with_winding_oracle() {
        let polys = [
            ConvexPolygon::regular(3, 2.0 * PI, 0.0, Vec2::default()).unwrap(),
            ConvexPolygon::regular(6, 1.0, 0.9, Vec2::new(2.0, 1.0)).unwrap(),
            ConvexPolygon::new(vec![
                Vec2::new(0.0, 0.0),
                Vec2::new(2.0, 0.1),
                Vec2::new(2.5, 1.7),
                Vec2::new(0.8, 2.6),
                Vec2::new(-0.5, 1.2),
            ])
            .unwrap(),
        ];
        let mut state = 0x243f6a8885a308d3u64;
        let mut rand = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for p in &polys {
            let r = 2.5 * p.circumradius();
            let mut checked = 0;
            while checked < 1000 {
                let x = p.centroid() + Vec2::new((rand() - 0.5) * 2.0 * r, (rand() - 0.5) * 2.0 * r);
                match p.locate(x, 1e-9 * p.circumradius()) {
                    Region::Boundary => continue,
                    Region::Interior => assert!(winding_inside(p, x)),
                    Region::Exterior => assert!(!winding_inside(p, x)),
                }
                checked += 1;
            }
        }
    }

    #[test]
    fn ray_exit_crosses_polygon() {
        let p = ConvexPolygon::regular(4, 2.0, 0.0, Vec2::default()).unwrap();
        let (bp, t) = p.ray_exit(p.centroid(), Vec2::new(1.0, 0.0), 1e-12).unwrap();
        assert!(t > 0.0);
        let hit = p.position(bp);
        assert!((hit.y - p.centroid().y).abs() < 1e-12);
    }

    #[test]
    fn polygon_spec_roundtrip() {
        let p = ConvexPolygon::regular(4, 2.0, 0.1, Vec2::new(0.5, 0.0)).unwrap();
        let spec = PolygonSpec::from(&p);
        let q = spec.build().unwrap();
        for j in 0..4 {
            assert!((p.vertex(j) - q.vertex(j)).norm() < 1e-14);
        }
        let json = serde_json::to_string(&PolygonSpec::Regular {
            regular: RegularSpec { n_sides: 6, side_length: 2.0 * PI, rotation: 0.0, center: [0.0, 0.0] },
        })
        .unwrap();
        let back: PolygonSpec = serde_json::from_str(&json).unwrap();
        assert!(back.build().is_ok());
    }
}
