use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// A point (or displacement) in the local east-north-up frame, meters.
///
/// Serialized as a bare `[x, y, z]` array.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    /// Arithmetic mean of a non-empty set of points.
    pub fn centroid(points: &[Point3]) -> Point3 {
        let n = points.len() as f64;
        let sum = points
            .iter()
            .fold(Point3::default(), |acc, &p| acc + p);
        sum * (1.0 / n)
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Axis-aligned box given as closed per-axis intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds3 {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
}

impl Bounds3 {
    pub fn lower(&self) -> Point3 {
        Point3::new(self.x[0], self.y[0], self.z[0])
    }

    pub fn upper(&self) -> Point3 {
        Point3::new(self.x[1], self.y[1], self.z[1])
    }

    pub fn center(&self) -> Point3 {
        (self.lower() + self.upper()) * 0.5
    }

    pub fn contains(&self, p: Point3) -> bool {
        let within = |v: f64, r: [f64; 2]| v >= r[0] && v <= r[1];
        within(p.x, self.x) && within(p.y, self.y) && within(p.z, self.z)
    }

    pub fn clamp(&self, p: Point3) -> Point3 {
        Point3::new(
            p.x.clamp(self.x[0], self.x[1]),
            p.y.clamp(self.y[0], self.y[1]),
            p.z.clamp(self.z[0], self.z[1]),
        )
    }

    /// Axis intervals in x, y, z order.
    pub fn axes(&self) -> [[f64; 2]; 3] {
        [self.x, self.y, self.z]
    }

    pub fn intersects(&self, other: &Bounds3) -> bool {
        self.axes()
            .iter()
            .zip(other.axes().iter())
            .all(|(a, b)| a[0] <= b[1] && b[0] <= a[1])
    }
}
