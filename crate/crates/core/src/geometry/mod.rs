//! Curves built from segments and circular arcs, and the float measurement
//! oracle used to check every closed form: length, sup-distance to a
//! reference segment, and polygon area.

mod exact;

pub use exact::{
    collinear, cross, interior_disjoint, interior_point, point_in_polygon, polygon_simple,
    segments_intersect, shoelace_area_exact, shoelace_signed_area_exact, ExactField, Location,
    PolygonArea,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{sum_compensated, Scalar};

/// Default number of sub-intervals sampled per primitive by the sup-distance oracle.
pub const DEFAULT_SAMPLES_PER_PRIMITIVE: usize = 256;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
}

impl<T: Scalar> Point<T> {
    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point<T>) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn lerp(&self, other: &Point<T>, t: T) -> Point<T> {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }

    /// Distance from `self` to the closed segment `ab`.
    pub fn distance_to_segment(&self, a: &Point<T>, b: &Point<T>) -> T {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len2 = dx * dx + dy * dy;
        let t = ((self.x - a.x) * dx + (self.y - a.y) * dy) / len2;
        let t = t.max(T::zero()).min(T::one());
        self.distance(&Point::new(a.x + t * dx, a.y + t * dy))
    }
}

/// Sweep direction of an arc, or winding of a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Primitive<T> {
    Segment {
        a: Point<T>,
        b: Point<T>,
    },
    /// Circular arc traversed from `start_angle` towards `end_angle` in the
    /// given orientation; angles are taken modulo a full turn unless they
    /// differ by exactly 2π.
    Arc {
        center: Point<T>,
        radius: T,
        start_angle: T,
        end_angle: T,
        orientation: Orientation,
    },
}

impl<T: Scalar> Primitive<T> {
    pub fn segment(a: Point<T>, b: Point<T>) -> Self {
        Primitive::Segment { a, b }
    }

    pub fn arc(center: Point<T>, radius: T, start_angle: T, end_angle: T, orientation: Orientation) -> Self {
        Primitive::Arc {
            center,
            radius,
            start_angle,
            end_angle,
            orientation,
        }
    }

    /// Signed angular sweep of an arc (positive counterclockwise); zero for segments.
    pub fn sweep(&self) -> T {
        match *self {
            Primitive::Segment { .. } => T::zero(),
            Primitive::Arc {
                start_angle,
                end_angle,
                orientation,
                ..
            } => {
                let raw = end_angle - start_angle;
                let turn = T::two() * T::PI();
                match orientation {
                    Orientation::Ccw if raw < T::zero() => raw + turn,
                    Orientation::Cw if raw > T::zero() => raw - turn,
                    _ => raw,
                }
            }
        }
    }

    /// Point at parameter `t ∈ [0, 1]`.
    pub fn point_at(&self, t: T) -> Point<T> {
        match self {
            Primitive::Segment { a, b } => a.lerp(b, t),
            Primitive::Arc {
                center,
                radius,
                start_angle,
                ..
            } => {
                let theta = *start_angle + self.sweep() * t;
                Point::new(center.x + *radius * theta.cos(), center.y + *radius * theta.sin())
            }
        }
    }

    pub fn start(&self) -> Point<T> {
        match self {
            Primitive::Segment { a, .. } => *a,
            Primitive::Arc { .. } => self.point_at(T::zero()),
        }
    }

    pub fn end(&self) -> Point<T> {
        match self {
            Primitive::Segment { b, .. } => *b,
            Primitive::Arc { .. } => self.point_at(T::one()),
        }
    }

    pub fn length(&self) -> T {
        match self {
            Primitive::Segment { a, b } => a.distance(b),
            Primitive::Arc { radius, .. } => *radius * self.sweep().abs(),
        }
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Primitive::Segment { a, b } => Primitive::Segment { a: b, b: a },
            Primitive::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                orientation,
            } => Primitive::Arc {
                center,
                radius,
                start_angle: end_angle,
                end_angle: start_angle,
                orientation: orientation.flip(),
            },
        }
    }

    fn validate(&self, index: usize) -> Result<()> {
        let bad = |reason| Err(Error::DegeneratePrimitive { index, reason });
        match self {
            Primitive::Segment { a, b } => {
                if !(a.is_finite() && b.is_finite()) {
                    return bad("non-finite coordinate");
                }
                if a == b {
                    return bad("segment endpoints coincide");
                }
            }
            Primitive::Arc {
                center,
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                if !(center.is_finite() && start_angle.is_finite() && end_angle.is_finite()) {
                    return bad("non-finite arc parameter");
                }
                if !(*radius > T::zero() && radius.is_finite()) {
                    return bad("arc radius must be positive");
                }
                let turn = T::two() * T::PI();
                if (*end_angle - *start_angle).abs() > turn * (T::one() + T::epsilon()) {
                    return bad("arc spans more than a full turn");
                }
                if self.sweep() == T::zero() {
                    return bad("arc has zero sweep");
                }
            }
        }
        Ok(())
    }
}

/// One iteration of a construction: a chained sequence of primitives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawCurve<T>",
    bound(deserialize = "T: Scalar + Deserialize<'de>")
)]
pub struct CurveIteration<T> {
    n: u32,
    primitives: Vec<Primitive<T>>,
    start: Point<T>,
    end: Point<T>,
}

#[derive(Deserialize)]
struct RawCurve<T> {
    n: u32,
    primitives: Vec<Primitive<T>>,
    start: Point<T>,
    end: Point<T>,
}

impl<T: Scalar> TryFrom<RawCurve<T>> for CurveIteration<T> {
    type Error = Error;

    fn try_from(raw: RawCurve<T>) -> Result<Self> {
        let curve = CurveIteration::new(raw.n, raw.primitives)?;
        let tol = T::lit(T::CHAIN_TOLERANCE);
        if curve.start.distance(&raw.start) > tol {
            return Err(Error::EndpointMismatch { which: "start" });
        }
        if curve.end.distance(&raw.end) > tol {
            return Err(Error::EndpointMismatch { which: "end" });
        }
        Ok(curve)
    }
}

impl<T: Scalar> CurveIteration<T> {
    /// Validates every primitive and the chaining tolerance.
    pub fn new(n: u32, primitives: Vec<Primitive<T>>) -> Result<Self> {
        let (first, last) = match (primitives.first(), primitives.last()) {
            (Some(f), Some(l)) => (f.start(), l.end()),
            _ => return Err(Error::EmptyCurve),
        };
        let tol = T::lit(T::CHAIN_TOLERANCE);
        for (i, p) in primitives.iter().enumerate() {
            p.validate(i)?;
        }
        for (i, pair) in primitives.windows(2).enumerate() {
            let gap = pair[0].end().distance(&pair[1].start());
            if !(gap <= tol) {
                return Err(Error::BrokenChain {
                    index: i,
                    gap: gap.as_f64(),
                });
            }
        }
        Ok(CurveIteration {
            n,
            primitives,
            start: first,
            end: last,
        })
    }

    /// Open polyline through `points`.
    pub fn polyline(n: u32, points: &[Point<T>]) -> Result<Self> {
        let prims = points
            .windows(2)
            .map(|w| Primitive::segment(w[0], w[1]))
            .collect();
        Self::new(n, prims)
    }

    /// Closed polygon through `vertices` (the closing edge is added).
    pub fn closed_polygon(n: u32, vertices: &[Point<T>]) -> Result<Self> {
        let mut prims: Vec<_> = vertices
            .windows(2)
            .map(|w| Primitive::segment(w[0], w[1]))
            .collect();
        if let (Some(&first), Some(&last)) = (vertices.first(), vertices.last()) {
            prims.push(Primitive::segment(last, first));
        }
        Self::new(n, prims)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn primitives(&self) -> &[Primitive<T>] {
        &self.primitives
    }

    pub fn start(&self) -> Point<T> {
        self.start
    }

    pub fn end(&self) -> Point<T> {
        self.end
    }

    pub fn is_closed(&self) -> bool {
        self.start.distance(&self.end) <= T::lit(T::CHAIN_TOLERANCE)
    }

    pub fn reversed(&self) -> Self {
        CurveIteration {
            n: self.n,
            primitives: self.primitives.iter().rev().map(Primitive::reversed).collect(),
            start: self.end,
            end: self.start,
        }
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn concat(&self, other: &CurveIteration<T>) -> Result<Self> {
        let mut prims = self.primitives.clone();
        prims.extend_from_slice(&other.primitives);
        Self::new(self.n.max(other.n), prims)
    }

    /// Axis-aligned bounding box `(min, max)` from endpoints and sampled arc points.
    pub fn bounds(&self) -> (Point<T>, Point<T>) {
        let mut lo = self.start;
        let mut hi = self.start;
        let mut grow = |p: Point<T>| {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        };
        for prim in &self.primitives {
            match prim {
                Primitive::Segment { a, b } => {
                    grow(*a);
                    grow(*b);
                }
                Primitive::Arc { .. } => {
                    for i in 0..=32 {
                        grow(prim.point_at(T::lit(i as f64 / 32.0)));
                    }
                }
            }
        }
        (lo, hi)
    }
}

/// Total length: Euclidean segment lengths plus `radius × |sweep|` for arcs.
pub fn measure_length<T: Scalar>(curve: &CurveIteration<T>) -> T {
    sum_compensated(curve.primitives.iter().map(Primitive::length))
}

/// Maximum distance from sampled curve points to the segment `ab`.
///
/// Each primitive is split into `samples_per_primitive` equal parameter
/// steps and both ends of every step are sampled.
pub fn sup_distance_to_segment<T: Scalar>(
    curve: &CurveIteration<T>,
    a: Point<T>,
    b: Point<T>,
    samples_per_primitive: usize,
) -> Result<T> {
    if samples_per_primitive < 2 {
        return Err(Error::param("samples_per_primitive", ">= 2", samples_per_primitive));
    }
    if a == b {
        return Err(Error::DegenerateReference);
    }
    let steps = T::lit(samples_per_primitive as f64);
    let mut sup = T::zero();
    for prim in &curve.primitives {
        for i in 0..=samples_per_primitive {
            let p = prim.point_at(T::lit(i as f64) / steps);
            sup = sup.max(p.distance_to_segment(&a, &b));
        }
    }
    Ok(sup)
}

/// Absolute shoelace area of a closed, segments-only curve.
pub fn measure_polygon_area_float<T: Scalar>(curve: &CurveIteration<T>) -> Result<T> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    let mut vertices = Vec::with_capacity(curve.primitives.len());
    for prim in &curve.primitives {
        match prim {
            Primitive::Segment { a, .. } => vertices.push(*a),
            Primitive::Arc { .. } => return Err(Error::ArcInPolygon),
        }
    }
    Ok(shoelace_float(&vertices).abs())
}

/// Signed shoelace area (positive counterclockwise) of a float vertex loop.
pub fn shoelace_float<T: Scalar>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    // Cross products relative to the first vertex keep cancellation small.
    let o = match vertices.first() {
        Some(p) => *p,
        None => return T::zero(),
    };
    let twice = sum_compensated((0..n).map(|i| {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        (p.x - o.x) * (q.y - o.y) - (q.x - o.x) * (p.y - o.y)
    }));
    twice / T::two()
}
