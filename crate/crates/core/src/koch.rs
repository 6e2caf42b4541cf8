//! Koch snowflake: boundary construction plus exact perimeter and area
//! sequences. The perimeter grows like `(4/3)^n` without bound while the
//! area converges to `2√3 a² / 5`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::closedform::{integer, rational, rational_from_f64, ExactValue, Rational};
use crate::error::{Error, Result};
use crate::geometry::{CurveIteration, Point};
use crate::num::Scalar;

/// Largest step for which the boundary polygon is built (3·4⁸ sides).
pub const MAX_KOCH_N: u32 = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct KochState<T> {
    pub a: T,
    pub n: u32,
    pub boundary: CurveIteration<T>,
}

impl<T: Scalar> KochState<T> {
    pub fn side_count(&self) -> usize {
        self.boundary.primitives().len()
    }

    /// Boundary vertices in counterclockwise order.
    pub fn vertices(&self) -> Vec<Point<T>> {
        self.boundary.primitives().iter().map(|p| p.start()).collect()
    }
}

/// Limit behaviour of a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum SequenceLimit {
    Finite(ExactValue),
    Divergent,
}

fn check_side<T: Scalar>(a: T) -> Result<Rational> {
    if !(a > T::zero() && a.is_finite()) {
        return Err(Error::param("a", "a > 0", a));
    }
    rational_from_f64(a.as_f64())
}

/// Replaces the middle third of every edge with an outward equilateral bump.
fn refine<T: Scalar>(vertices: &[Point<T>]) -> Vec<Point<T>> {
    let third = T::one() / T::lit(3.0);
    let (sin60, cos60) = (T::lit(3.0).sqrt() / T::two(), T::one() / T::two());
    let n = vertices.len();
    let mut out = Vec::with_capacity(n * 4);
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let (dx, dy) = ((q.x - p.x) * third, (q.y - p.y) * third);
        let p1 = Point::new(p.x + dx, p.y + dy);
        let p3 = Point::new(p.x + dx + dx, p.y + dy + dy);
        // counterclockwise traversal: outward is to the right, rotate by -60°
        let tip = Point::new(p1.x + dx * cos60 + dy * sin60, p1.y - dx * sin60 + dy * cos60);
        out.extend([p, p1, tip, p3]);
    }
    out
}

/// Snowflake after `n` refinements of the equilateral triangle with side
/// `a`, base on the x-axis from the origin, apex up.
pub fn build_koch<T: Scalar>(a: T, n: u32) -> Result<KochState<T>> {
    check_side(a)?;
    if n > MAX_KOCH_N {
        return Err(Error::param("n", "n <= 8 when building geometry", n));
    }
    let mut vertices = vec![
        Point::new(T::zero(), T::zero()),
        Point::new(a, T::zero()),
        Point::new(a / T::two(), a * T::lit(3.0).sqrt() / T::two()),
    ];
    for _ in 0..n {
        vertices = refine(&vertices);
    }
    Ok(KochState {
        a,
        n,
        boundary: CurveIteration::closed_polygon(n, &vertices)?,
    })
}

/// `3a · (4/3)^n`, exact.
pub fn koch_perimeter<T: Scalar>(a: T, n: u32) -> Result<ExactValue> {
    let a = check_side(a)?;
    let growth = num_traits::pow(rational(4, 3), n as usize);
    Ok(ExactValue::rational(integer(3) * a * growth))
}

pub fn koch_perimeter_limit() -> SequenceLimit {
    SequenceLimit::Divergent
}

/// `A_n = A_0 (1 + Σ_{k=1..n} 3·4^(k-1)/9^k)` with `A_0 = a²√3/4`, summed
/// term by term in rationals.
pub fn koch_area<T: Scalar>(a: T, n: u32) -> Result<ExactValue> {
    let a = check_side(a)?;
    let mut factor = Rational::one();
    let mut added = rational(3, 9);
    for _ in 0..n {
        factor += &added;
        added *= rational(4, 9);
    }
    Ok(ExactValue::sqrt(3, &a * &a * rational(1, 4) * factor))
}

/// `2√3 a² / 5`.
pub fn koch_area_limit<T: Scalar>(a: T) -> Result<ExactValue> {
    let a = check_side(a)?;
    Ok(ExactValue::sqrt(3, &a * &a * rational(2, 5)))
}

/// The boundary length diverges; the enclosed area converges.
pub fn koch_limits<T: Scalar>(a: T) -> Result<(SequenceLimit, SequenceLimit)> {
    Ok((koch_perimeter_limit(), SequenceLimit::Finite(koch_area_limit(a)?)))
}

/// Exact gap `A_limit − A_n`.
pub fn koch_area_tail<T: Scalar>(a: T, n: u32) -> Result<ExactValue> {
    let lim = koch_area_limit(a)?;
    let an = koch_area(a, n)?;
    Ok(&lim - &an)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::IrrationalTag;
    use crate::geometry::{measure_length, measure_polygon_area_float};

    fn sqrt3(q: Rational) -> ExactValue {
        ExactValue::sqrt(3, q)
    }

    // Geometric-series form A_0 (8/5 − (3/5)(4/9)^n), independent of the term-by-term sum.
    fn area_oracle(a2: Rational, n: u32) -> ExactValue {
        let tail = rational(3, 5) * num_traits::pow(rational(4, 9), n as usize);
        sqrt3(a2 * rational(1, 4) * (rational(8, 5) - tail))
    }

    #[test]
    fn build_examples() {
        let k0 = build_koch(1.0, 0).unwrap();
        assert_eq!(k0.side_count(), 3);
        let k1 = build_koch(1.0, 1).unwrap();
        assert_eq!(k1.side_count(), 12);
        for p in k1.boundary.primitives() {
            assert!((p.length() - 1.0f64 / 3.0).abs() < 1e-9);
        }
        let k3 = build_koch(1.0, 3).unwrap();
        assert_eq!(k3.side_count(), 192);
        for p in k3.boundary.primitives() {
            assert!((p.length() - 1.0f64 / 27.0).abs() < 1e-9);
        }
        assert!(build_koch(1.0, 9).is_err());
        assert!(build_koch(0.0, 1).is_err());
    }

    #[test]
    fn bumps_point_outward() {
        let k1 = build_koch(1.0, 1).unwrap();
        let v = k1.vertices();
        // first bump sits on the base edge and must dip below it
        assert!(v[2].y < 0.0);
        let a0 = measure_polygon_area_float(&build_koch(1.0, 0).unwrap().boundary).unwrap();
        let a1 = measure_polygon_area_float(&k1.boundary).unwrap();
        assert!(a1 > a0);
    }

    #[test]
    fn perimeter_examples() {
        assert_eq!(koch_perimeter(1.0, 0).unwrap(), ExactValue::rational(integer(3)));
        assert_eq!(koch_perimeter(1.0, 2).unwrap(), ExactValue::rational(rational(16, 3)));
        let p10 = koch_perimeter(1.0, 10).unwrap();
        assert!((p10.eval_float() - 3.0 * (4.0f64 / 3.0).powi(10)).abs() < 1e-12);
        assert!((p10.eval_float() - 53.2731).abs() < 1e-4);
        assert_eq!(koch_perimeter_limit(), SequenceLimit::Divergent);
    }

    #[test]
    fn perimeter_ratio_is_four_thirds() {
        for n in 0..20 {
            let p = koch_perimeter(1.3, n).unwrap().as_rational().unwrap();
            let q = koch_perimeter(1.3, n + 1).unwrap().as_rational().unwrap();
            assert_eq!(q / p, rational(4, 3));
        }
    }

    #[test]
    fn area_examples() {
        assert_eq!(koch_area(1.0, 0).unwrap(), sqrt3(rational(1, 4)));
        assert_eq!(koch_area(1.0, 1).unwrap(), sqrt3(rational(1, 3)));
        assert_eq!(koch_area_limit(1.0).unwrap(), sqrt3(rational(2, 5)));
        assert_eq!(koch_area_limit(2.0).unwrap(), sqrt3(rational(8, 5)));
        assert!((koch_area_limit(1.0).unwrap().eval_float() - 0.692_820_323_027_550_9).abs() < 1e-15);
        let tag = IrrationalTag::SqrtInt(3);
        for n in 0..12 {
            assert_eq!(koch_area(1.0, n).unwrap().terms().count(), 1);
            assert!(koch_area(1.0, n).unwrap().coeff(&tag).is_some());
        }
    }

    #[test]
    fn area_matches_geometric_series() {
        for a in [1.0, 0.5, 3.25] {
            let a2 = rational_from_f64(a).unwrap().pow(2);
            for n in 0..=25 {
                assert_eq!(koch_area(a, n).unwrap(), area_oracle(a2.clone(), n));
            }
        }
    }

    #[test]
    fn area_is_increasing_and_bounded() {
        let lim = koch_area_limit(1.0).unwrap().coeff(&IrrationalTag::SqrtInt(3)).cloned().unwrap();
        let coeff = |n| koch_area(1.0, n).unwrap().coeff(&IrrationalTag::SqrtInt(3)).cloned().unwrap();
        for n in 0..20 {
            assert!(coeff(n) < coeff(n + 1));
            assert!(coeff(n + 1) < lim);
        }
    }

    #[test]
    fn tail_is_geometric() {
        // A_lim − A_n = A_0 · (3/5) · (4/9)^n exactly
        for n in 0..15 {
            let tail = koch_area_tail(1.0, n).unwrap();
            let a0 = rational(1, 4);
            let bound = sqrt3(a0 * rational(3, 5) * num_traits::pow(rational(4, 9), n as usize));
            assert_eq!(tail, bound);
        }
    }

    #[test]
    fn oracle_agreement() {
        for n in 0..=6 {
            let k = build_koch(1.0, n).unwrap();
            let p = koch_perimeter(1.0, n).unwrap().eval_float();
            assert!((measure_length(&k.boundary) - p).abs() <= 1e-9 * p);
            let a = koch_area(1.0, n).unwrap().eval_float();
            let measured = measure_polygon_area_float(&k.boundary).unwrap();
            assert!((measured - a).abs() <= 1e-9 * a, "n={n}: {measured} vs {a}");
        }
        let k1 = build_koch(1.0, 1).unwrap();
        assert!((measure_polygon_area_float(&k1.boundary).unwrap() - 0.577_350_269_189_625_8f64).abs() < 1e-12);
    }
}
