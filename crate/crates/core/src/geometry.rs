//! Planar four-point configurations.
//!
//! Labels follow the convex arrangement studied throughout: bodies 1 and 2
//! sit at opposite vertices (one diagonal), bodies 3 and 4 on the other.

use crate::dziobek::{cayley, heron16, MassVector, SquaredDistances, PLANARITY_TOL};
use crate::error::{Error, Result};
use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Point = Vector2<f64>;

/// Triangles smaller than this fraction of `L²` count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Oriented areas `Δ1..Δ4`; `|Δ_i|` is the area of the triangle without body `i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct OrientedAreas([f64; 4]);

impl OrientedAreas {
    pub fn new(values: [f64; 4]) -> Self {
        Self(values)
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self(self.0.map(|x| x * k))
    }

    pub fn min_abs(&self) -> f64 {
        self.0.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()))
    }
}

impl From<[f64; 4]> for OrientedAreas {
    fn from(v: [f64; 4]) -> Self {
        Self(v)
    }
}

impl From<OrientedAreas> for [f64; 4] {
    fn from(a: OrientedAreas) -> Self {
        a.0
    }
}

/// Four points with the weighted centroid at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarConfig {
    points: [Point; 4],
    masses: MassVector,
}

#[derive(Serialize, Deserialize)]
struct ConfigRecord {
    masses: [f64; 4],
    points: [[f64; 2]; 4],
}

impl Serialize for PlanarConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigRecord {
            masses: self.masses.masses(),
            points: self.points.map(|p| [p.x, p.y]),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanarConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = ConfigRecord::deserialize(d)?;
        let [m1, m2, m3, m4] = rec.masses;
        if m1 != m2 {
            return Err(D::Error::custom(
                "bodies 1 and 2 must carry equal masses",
            ));
        }
        let masses = MassVector::with_delta(m1, m3, m4).map_err(D::Error::custom)?;
        PlanarConfig::new(rec.points.map(|[x, y]| Point::new(x, y)), masses)
            .map_err(D::Error::custom)
    }
}

fn cross(u: Point, v: Point) -> f64 {
    u.x * v.y - u.y * v.x
}

/// Twice the signed area of triangle `pqr`, positive when counter-clockwise.
fn orient(p: Point, q: Point, r: Point) -> f64 {
    cross(q - p, r - p)
}

impl PlanarConfig {
    /// Translate `points` so the weighted centroid is at the origin.
    pub fn new(points: [Point; 4], masses: MassVector) -> Result<Self> {
        let m = masses.masses();
        if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        let centroid = points
            .iter()
            .zip(m)
            .fold(Point::zeros(), |acc, (p, mi)| acc + p * mi)
            / masses.mprime();
        let points = points.map(|p| p - centroid);
        let scale2 = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .map(|(i, j)| (points[i] - points[j]).norm_squared())
            .sum::<f64>()
            / 6.0;
        for i in 0..4 {
            for j in i + 1..4 {
                if (points[i] - points[j]).norm_squared() <= 1e-24 * scale2 || scale2 == 0.0 {
                    return Err(Error::Collision(i + 1, j + 1));
                }
            }
        }
        Ok(Self { points, masses })
    }

    pub fn points(&self) -> &[Point; 4] {
        &self.points
    }

    pub fn masses(&self) -> &MassVector {
        &self.masses
    }

    /// Mean squared mutual distance.
    pub fn scale2(&self) -> f64 {
        squared_distances(self).scale2()
    }

    /// `Σ m_i |q_i|²`, equal to `(1/m') Σ m_i m_j r_ij²` with the centroid at 0.
    pub fn inertia(&self) -> f64 {
        self.points
            .iter()
            .zip(self.masses.masses())
            .map(|(p, m)| m * p.norm_squared())
            .sum()
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::new(self.points.map(f), self.masses)
    }

    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        self.map_points(|p| Point::new(c * p.x - s * p.y, s * p.x + c * p.y))
            .expect("rotation preserves validity")
    }

    pub fn scaled(&self, k: f64) -> Self {
        self.map_points(|p| p * k).expect("dilation preserves validity")
    }

    pub fn reflected(&self) -> Self {
        self.map_points(|p| Point::new(p.x, -p.y))
            .expect("reflection preserves validity")
    }

    /// Whether the diagonals `q1q2` and `q3q4` cross at an interior point of both.
    pub fn is_convex(&self) -> bool {
        let [q1, q2, q3, q4] = self.points;
        let s3 = orient(q1, q2, q3);
        let s4 = orient(q1, q2, q4);
        let s1 = orient(q3, q4, q1);
        let s2 = orient(q3, q4, q2);
        s3 * s4 < 0.0 && s1 * s2 < 0.0
    }
}

/// Signed shoelace areas `(−σ234, σ134, −σ124, σ123)`; they sum to zero for
/// any four points and all flip sign under reflection.
pub fn signed_areas(p: &PlanarConfig) -> [f64; 4] {
    let [q1, q2, q3, q4] = p.points;
    [
        -0.5 * orient(q2, q3, q4),
        0.5 * orient(q1, q3, q4),
        -0.5 * orient(q1, q2, q4),
        0.5 * orient(q1, q2, q3),
    ]
}

/// Oriented areas with `Δ1, Δ2 < 0 < Δ3, Δ4`.
pub fn oriented_areas(p: &PlanarConfig) -> Result<OrientedAreas> {
    let raw = signed_areas(p);
    let threshold = DEGENERACY_TOL * p.scale2();
    let smallest = raw.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    if smallest < threshold {
        return Err(Error::Degenerate {
            area: smallest,
            threshold,
        });
    }
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    // Convexity fixes the sign pattern (s, s, −s, −s); orient it.
    let flip = if raw[0] < 0.0 { 1.0 } else { -1.0 };
    Ok(OrientedAreas::new(raw.map(|x| x * flip)))
}

pub fn squared_distances(p: &PlanarConfig) -> SquaredDistances {
    let q = &p.points;
    let d = |i: usize, j: usize| (q[i] - q[j]).norm_squared();
    SquaredDistances::from_array_unchecked([d(0, 1), d(0, 2), d(0, 3), d(1, 2), d(1, 3), d(2, 3)])
}

/// Place four points with the given squared distances in the plane.
///
/// `q1` at the origin, `q2` on the positive x-axis, `q3` above the axis; `q4`
/// is put on whichever side reproduces `r34²`. The result is reflected, if
/// needed, so convex inputs get the standard area signs, then translated to
/// the weighted centroid.
pub fn realize(sq: &SquaredDistances, m: &MassVector) -> Result<PlanarConfig> {
    let SquaredDistances { a, b, c, d, e, f } = *sq;
    let faces = [
        ([1, 2, 3], heron16(d, e, f)),
        ([0, 2, 3], heron16(b, c, f)),
        ([0, 1, 3], heron16(a, c, e)),
        ([0, 1, 2], heron16(a, b, d)),
    ];
    for (face, h) in faces {
        if h < 0.0 {
            return Err(Error::NotRealizable { face });
        }
    }
    let l2 = sq.scale2();
    let s = cayley(sq);
    let threshold = PLANARITY_TOL * l2.powi(3);
    if s.abs() > threshold {
        return Err(Error::NotPlanar {
            value: s,
            threshold,
        });
    }
    let ra = a.sqrt();
    let x3 = (a + b - d) / (2.0 * ra);
    let y3 = (b - x3 * x3).max(0.0).sqrt();
    let x4 = (a + c - e) / (2.0 * ra);
    let y4 = (c - x4 * x4).max(0.0).sqrt();
    let q3 = Point::new(x3, y3);
    let below = Point::new(x4, -y4);
    let above = Point::new(x4, y4);
    let q4 = if ((q3 - below).norm_squared() - f).abs() <= ((q3 - above).norm_squared() - f).abs() {
        below
    } else {
        above
    };
    let mut cfg = PlanarConfig::new([Point::zeros(), Point::new(ra, 0.0), q3, q4], *m)?;
    if cfg.is_convex() && signed_areas(&cfg)[0] > 0.0 {
        cfg = cfg.reflected();
    }
    Ok(cfg)
}

/// Similarity-invariant description of a convex configuration.
///
/// The diagonal `q1q2` lies on the x-axis with the diagonal crossing at the
/// origin and `q1` on the negative side; `q3 = t (cos θ, sin θ)` sits in the
/// upper half-plane and `q4 = −s (cos θ, sin θ)`. Lengths are scaled so the
/// moment of inertia is one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalFrame {
    pub u: f64,
    pub v: f64,
    pub t: f64,
    pub s: f64,
    pub theta: f64,
}

impl CanonicalFrame {
    /// Frame from raw parameters, rescaled to unit moment of inertia.
    pub fn normalized(u: f64, v: f64, t: f64, s: f64, theta: f64, m: &MassVector) -> Result<Self> {
        if !(u > 0.0 && v > 0.0 && t > 0.0 && s > 0.0 && theta > 0.0 && theta < PI) {
            return Err(Error::NotConvex);
        }
        let raw = Self { u, v, t, s, theta };
        let inertia = raw.points_unscaled(m)?.inertia();
        let k = 1.0 / inertia.sqrt();
        Ok(Self {
            u: u * k,
            v: v * k,
            t: t * k,
            s: s * k,
            theta,
        })
    }

    fn points_unscaled(&self, m: &MassVector) -> Result<PlanarConfig> {
        let dir = Point::new(self.theta.cos(), self.theta.sin());
        PlanarConfig::new(
            [
                Point::new(-self.u, 0.0),
                Point::new(self.v, 0.0),
                dir * self.t,
                -dir * self.s,
            ],
            *m,
        )
    }

    /// The configuration this frame describes, centred at the weighted centroid.
    pub fn reconstruct(&self, m: &MassVector) -> Result<PlanarConfig> {
        self.points_unscaled(m)
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.u, self.v, self.t, self.s, self.theta]
    }

    /// Euclidean distance between parameter vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Largest componentwise difference.
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
    }
}

pub fn canonicalize(p: &PlanarConfig) -> Result<CanonicalFrame> {
    if !p.is_convex() {
        return Err(Error::NotConvex);
    }
    let [q1, q2, q3, q4] = p.points;
    let d12 = q2 - q1;
    let d34 = q4 - q3;
    let denom = cross(d12, d34);
    // q1 + λ d12 = q3 + μ d34
    let lam = cross(q3 - q1, d34) / denom;
    let mu = cross(q3 - q1, d12) / denom;
    let x = q1 + d12 * lam;
    let len12 = d12.norm();
    let len34 = d34.norm();
    let to3 = q3 - x;
    let theta = cross(d12, to3).abs().atan2(d12.dot(&to3));
    CanonicalFrame::normalized(
        lam * len12,
        (1.0 - lam) * len12,
        mu * len34,
        (1.0 - mu) * len34,
        theta,
        &p.masses,
    )
}

/// Same class up to rotation, translation, reflection and dilation.
pub fn congruent(p1: &PlanarConfig, p2: &PlanarConfig, tol: f64) -> bool {
    match (canonicalize(p1), canonicalize(p2)) {
        (Ok(f1), Ok(f2)) => f1.max_difference(&f2) <= tol,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PlanarConfig {
        let h = 0.5_f64.sqrt();
        PlanarConfig::new(
            [
                Point::new(-h, 0.0),
                Point::new(h, 0.0),
                Point::new(0.0, h),
                Point::new(0.0, -h),
            ],
            MassVector::equal(),
        )
        .unwrap()
    }

    fn quad() -> PlanarConfig {
        PlanarConfig::new(
            [
                Point::new(-1.0, 0.1),
                Point::new(1.2, -0.1),
                Point::new(0.1, 0.9),
                Point::new(-0.2, -1.1),
            ],
            MassVector::new(0.5, 0.8).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn square_areas() {
        let a = oriented_areas(&square()).unwrap().values();
        for (x, y) in a.iter().zip([-0.5, -0.5, 0.5, 0.5]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn collinear_is_degenerate() {
        let p = PlanarConfig::new(
            [
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(2.5, 0.0),
                Point::new(4.0, 0.0),
            ],
            MassVector::equal(),
        )
        .unwrap();
        assert!(matches!(oriented_areas(&p), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn interior_point_is_not_convex() {
        let p = PlanarConfig::new(
            [
                Point::new(0.0, 0.0),
                Point::new(4.0, 0.0),
                Point::new(1.0, 3.0),
                Point::new(1.5, 1.0),
            ],
            MassVector::equal(),
        )
        .unwrap();
        assert!(matches!(oriented_areas(&p), Err(Error::NotConvex)));
        assert!(matches!(canonicalize(&p), Err(Error::NotConvex)));
    }

    #[test]
    fn adjacent_labelling_is_rejected() {
        // square with 1,2 adjacent
        let p = PlanarConfig::new(
            [
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            MassVector::equal(),
        )
        .unwrap();
        assert!(matches!(oriented_areas(&p), Err(Error::NotConvex)));
    }

    #[test]
    fn coincident_points_collide() {
        let r = PlanarConfig::new(
            [
                Point::new(0.0, 0.0),
                Point::new(0.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            MassVector::equal(),
        );
        assert!(matches!(r, Err(Error::Collision(1, 2))));
    }

    #[test]
    fn square_distances() {
        let sq = squared_distances(&square()).as_array();
        for (x, y) in sq.iter().zip([2.0, 1.0, 1.0, 1.0, 1.0, 2.0]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn rhombus_distances() {
        let (p, r) = (0.7, 1.3);
        let cfg = PlanarConfig::new(
            [
                Point::new(-p, 0.0),
                Point::new(p, 0.0),
                Point::new(0.0, r),
                Point::new(0.0, -r),
            ],
            MassVector::equal(),
        )
        .unwrap();
        let side = p * p + r * r;
        let expect = [4.0 * p * p, side, side, side, side, 4.0 * r * r];
        for (x, y) in squared_distances(&cfg).as_array().iter().zip(expect) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn distances_scale_quadratically() {
        let p = quad();
        let a = squared_distances(&p).as_array();
        let b = squared_distances(&p.scaled(3.0)).as_array();
        for (x, y) in a.iter().zip(b) {
            assert!((9.0 * x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn realize_square_and_round_trip() {
        let sq = SquaredDistances::new(2.0, 1.0, 1.0, 1.0, 1.0, 2.0).unwrap();
        let p = realize(&sq, &MassVector::equal()).unwrap();
        assert!(congruent(&p, &square(), 1e-12));
        let areas = oriented_areas(&p).unwrap().values();
        assert!(areas[0] < 0.0 && areas[1] < 0.0 && areas[2] > 0.0 && areas[3] > 0.0);
        let back = squared_distances(&quad());
        let again = squared_distances(&realize(&back, quad().masses()).unwrap());
        for (x, y) in back.as_array().iter().zip(again.as_array()) {
            assert!((x - y).abs() < 1e-10 * y);
        }
    }

    #[test]
    fn realize_rejects_tetrahedron_and_broken_triangles() {
        let tetra = SquaredDistances::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            realize(&tetra, &MassVector::equal()),
            Err(Error::NotPlanar { .. })
        ));
        let broken = SquaredDistances::new(1.0, 1.0, 9.0, 1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            realize(&broken, &MassVector::equal()),
            Err(Error::NotRealizable { .. })
        ));
    }

    #[test]
    fn realized_centroid_is_origin() {
        let p = realize(&squared_distances(&quad()), quad().masses()).unwrap();
        let m = p.masses().masses();
        let c = p
            .points()
            .iter()
            .zip(m)
            .fold(Point::zeros(), |acc, (q, mi)| acc + q * mi);
        assert!(c.norm() < 1e-12);
    }

    #[test]
    fn square_frame() {
        let f = canonicalize(&square()).unwrap();
        assert!((f.u - f.v).abs() < 1e-15);
        assert!((f.t - f.s).abs() < 1e-15);
        assert!((f.theta - PI / 2.0).abs() < 1e-15);
        assert!((f.u - 0.5).abs() < 1e-15);
        let back = f.reconstruct(&MassVector::equal()).unwrap();
        assert!((back.inertia() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_is_similarity_invariant() {
        let p = quad();
        let q = p.rotated(1.0).reflected().scaled(7.0);
        let fp = canonicalize(&p).unwrap();
        let fq = canonicalize(&q).unwrap();
        assert!(fp.max_difference(&fq) < 1e-10);
        let r = fp.reconstruct(p.masses()).unwrap();
        assert!((r.inertia() - 1.0).abs() < 1e-12);
        assert!(congruent(&r, &p, 1e-10));
    }

    #[test]
    fn perturbation_changes_frame() {
        let p = quad();
        let mut pts = *p.points();
        pts[2].x += 1e-3;
        let q = PlanarConfig::new(pts, *p.masses()).unwrap();
        let d = canonicalize(&p).unwrap().distance(&canonicalize(&q).unwrap());
        assert!(d > 1e-6, "{d}");
    }

    #[test]
    fn congruence_examples() {
        let p = quad();
        assert!(congruent(&p, &p.rotated(1.0), 1e-10));
        assert!(congruent(&p, &p.scaled(7.0), 1e-10));
        let rhombus = PlanarConfig::new(
            [
                Point::new(-(PI / 6.0).cos(), 0.0),
                Point::new((PI / 6.0).cos(), 0.0),
                Point::new(0.0, (PI / 6.0).sin()),
                Point::new(0.0, -(PI / 6.0).sin()),
            ],
            MassVector::equal(),
        )
        .unwrap();
        assert!(!congruent(&square(), &rhombus, 1e-6));
    }

    #[test]
    fn json_record() {
        let p = square();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.starts_with("{\"masses\":[1.0,1.0,1.0,1.0],\"points\":[["));
        let back: PlanarConfig = serde_json::from_str(&text).unwrap();
        assert!(congruent(&back, &p, 1e-15));
        let bad = r#"{"masses":[1,2,1,1],"points":[[0,0],[1,0],[0,1],[1,1]]}"#;
        assert!(serde_json::from_str::<PlanarConfig>(bad).is_err());
    }
}
