//! Exact polygon predicates over any ordered ring/field (rationals, integers).

use num_traits::{Num, Signed};

use super::{Orientation, Point};
use crate::error::{Error, Result};

pub trait ExactField: Clone + Num + Signed + PartialOrd {}

impl<T: Clone + Num + Signed + PartialOrd> ExactField for T {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonArea<T> {
    pub area: T,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// `(a − o) × (b − o)`.
pub fn cross<T: ExactField>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
        - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
}

pub fn collinear<T: ExactField>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> bool {
    cross(p, q, r).is_zero()
}

fn sign<T: ExactField>(v: &T) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn dot<T: ExactField>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x.clone() - o.x.clone()) * (b.x.clone() - o.x.clone())
        + (a.y.clone() - o.y.clone()) * (b.y.clone() - o.y.clone())
}

/// `p` lies on the closed segment `ab`.
fn on_segment<T: ExactField>(p: &Point<T>, a: &Point<T>, b: &Point<T>) -> bool {
    collinear(a, b, p) && !dot(p, a, b).is_positive()
}

/// Closed segments `p1p2` and `q1q2` share at least one point.
pub fn segments_intersect<T: ExactField>(p1: &Point<T>, p2: &Point<T>, q1: &Point<T>, q2: &Point<T>) -> bool {
    let d1 = sign(&cross(q1, q2, p1));
    let d2 = sign(&cross(q1, q2, p2));
    let d3 = sign(&cross(p1, p2, q1));
    let d4 = sign(&cross(p1, p2, q2));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(p1, q1, q2))
        || (d2 == 0 && on_segment(p2, q1, q2))
        || (d3 == 0 && on_segment(q1, p1, p2))
        || (d4 == 0 && on_segment(q2, p1, p2))
}

/// Interiors of the two segments cross at a single point that is not an endpoint.
fn segments_cross_properly<T: ExactField>(p1: &Point<T>, p2: &Point<T>, q1: &Point<T>, q2: &Point<T>) -> bool {
    sign(&cross(q1, q2, p1)) * sign(&cross(q1, q2, p2)) < 0
        && sign(&cross(p1, p2, q1)) * sign(&cross(p1, p2, q2)) < 0
}

/// Pairwise O(V²) simplicity check: non-adjacent edges never meet and
/// adjacent edges only share their common vertex.
pub fn polygon_simple<T: ExactField>(poly: &[Point<T>]) -> Result<()> {
    let n = poly.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let edge = |i: usize| (&poly[i], &poly[(i + 1) % n]);
    for i in 0..n {
        let (a, b) = edge(i);
        if a == b {
            return Err(Error::SelfIntersecting(i, i));
        }
        let (_, c) = edge((i + 1) % n);
        // consecutive edges a→b, b→c must not fold back onto each other
        if collinear(a, b, c) && dot(b, a, c).is_positive() {
            return Err(Error::SelfIntersecting(i, (i + 1) % n));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = edge(j);
            if segments_intersect(a, b, c, d) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    Ok(())
}

/// Exact signed area (positive counterclockwise), without a simplicity check.
pub fn shoelace_signed_area_exact<T: ExactField>(poly: &[Point<T>]) -> T {
    let n = poly.len();
    let mut twice = T::zero();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        twice = twice + p.x.clone() * q.y.clone() - q.x.clone() * p.y.clone();
    }
    twice / (T::one() + T::one())
}

/// Exact absolute area and orientation of a simple polygon.
pub fn shoelace_area_exact<T: ExactField>(poly: &[Point<T>]) -> Result<PolygonArea<T>> {
    polygon_simple(poly)?;
    let signed = shoelace_signed_area_exact(poly);
    let orientation = if signed.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Ccw
    };
    Ok(PolygonArea {
        area: signed.abs(),
        orientation,
    })
}

/// Crossing-number point location with exact boundary detection.
pub fn point_in_polygon<T: ExactField>(p: &Point<T>, poly: &[Point<T>]) -> Location {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the edge at height p.y compared without division
            let lhs = (p.x.clone() - a.x.clone()) * (b.y.clone() - a.y.clone());
            let rhs = (b.x.clone() - a.x.clone()) * (p.y.clone() - a.y.clone());
            let crosses = if b.y > a.y { lhs < rhs } else { lhs > rhs };
            if crosses {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// A point strictly inside a simple polygon (centroid of an empty ear).
pub fn interior_point<T: ExactField>(poly: &[Point<T>]) -> Option<Point<T>> {
    let n = poly.len();
    if n < 3 {
        return None;
    }
    let orient = sign(&shoelace_signed_area_exact(poly));
    if orient == 0 {
        return None;
    }
    let three = T::one() + T::one() + T::one();
    for i in 0..n {
        let a = &poly[(i + n - 1) % n];
        let b = &poly[i];
        let c = &poly[(i + 1) % n];
        if sign(&cross(a, b, c)) != orient {
            continue;
        }
        let ear = [a.clone(), b.clone(), c.clone()];
        let blocked = poly
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && *j != (i + 1) % n && *j != (i + n - 1) % n)
            .any(|(_, q)| point_in_polygon(q, &ear) != Location::Outside);
        if !blocked {
            return Some(Point::new(
                (a.x.clone() + b.x.clone() + c.x.clone()) / three.clone(),
                (a.y.clone() + b.y.clone() + c.y.clone()) / three,
            ));
        }
    }
    None
}

fn midpoint<T: ExactField>(a: &Point<T>, b: &Point<T>) -> Point<T> {
    let two = T::one() + T::one();
    Point::new(
        (a.x.clone() + b.x.clone()) / two.clone(),
        (a.y.clone() + b.y.clone()) / two,
    )
}

fn reaches_into<T: ExactField>(p: &[Point<T>], q: &[Point<T>]) -> bool {
    let n = p.len();
    p.iter().any(|v| point_in_polygon(v, q) == Location::Inside)
        || (0..n).any(|i| point_in_polygon(&midpoint(&p[i], &p[(i + 1) % n]), q) == Location::Inside)
        || interior_point(p).is_some_and(|c| point_in_polygon(&c, q) != Location::Outside)
}

/// Two simple polygons share no interior point. Edge crossings, vertices,
/// edge midpoints and one interior sample of each are tested exactly, which
/// decides the question for small pieces with few vertices.
pub fn interior_disjoint<T: ExactField>(p: &[Point<T>], q: &[Point<T>]) -> bool {
    let (n, m) = (p.len(), q.len());
    for i in 0..n {
        for j in 0..m {
            if segments_cross_properly(&p[i], &p[(i + 1) % n], &q[j], &q[(j + 1) % m]) {
                return false;
            }
        }
    }
    !(reaches_into(p, q) || reaches_into(q, p))
}
