//! Aristotle's wheel: two rigidly attached concentric circles roll one
//! revolution along the ground, yet both appear to travel `2πR`. The inner
//! circle traces a curtate trochoid, not a cycloid, and its contact point
//! slips by `2π(R − ρ)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::num::Scalar;

pub const MIN_STEPS: usize = 8;
pub const PHASE_SCAN: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WheelConfig<T> {
    /// Outer radius, the circle in contact with the ground.
    #[serde(rename = "R")]
    pub radius: T,
    /// Inner radius, `0 < rho <= R`.
    pub rho: T,
    pub steps: usize,
}

impl<T: Scalar> WheelConfig<T> {
    pub fn new(radius: T, rho: T, steps: usize) -> Result<Self> {
        let c = WheelConfig { radius, rho, steps };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > T::zero() && self.radius.is_finite()) {
            return Err(Error::param("R", "R > 0", self.radius));
        }
        if !(self.rho > T::zero() && self.rho <= self.radius) {
            return Err(Error::param("rho", "0 < rho <= R", self.rho));
        }
        if self.steps < MIN_STEPS {
            return Err(Error::param("steps", "steps >= 8", self.steps));
        }
        Ok(())
    }

    /// Rolling angles `2πi/steps` for `i = 0..=steps`.
    pub fn angles(&self) -> impl Iterator<Item = T> + '_ {
        let tau = T::TAU();
        let steps = T::lit(self.steps as f64);
        (0..=self.steps).map(move |i| tau * T::lit(i as f64) / steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample<T> {
    pub phi: T,
    pub point: Point<T>,
}

/// Point of the outer rim that touches the ground at `φ = 0`: a cycloid.
pub fn trace_outer<T: Scalar>(c: &WheelConfig<T>) -> Result<Vec<TraceSample<T>>> {
    c.validate()?;
    let r = c.radius;
    Ok(c.angles()
        .map(|phi| TraceSample {
            phi,
            point: Point::new(r * (phi - phi.sin()), r * (T::one() - phi.cos())),
        })
        .collect())
}

/// Point of the inner rim directly below the hub at `φ = 0`.
pub fn trace_inner_attached<T: Scalar>(c: &WheelConfig<T>) -> Result<Vec<TraceSample<T>>> {
    c.validate()?;
    let (r, rho) = (c.radius, c.rho);
    Ok(c.angles()
        .map(|phi| TraceSample {
            phi,
            point: Point::new(r * phi - rho * phi.sin(), r - rho * phi.cos()),
        })
        .collect())
}

fn cycloid<T: Scalar>(r: T, phi: T, phase: T) -> Point<T> {
    Point::new(r * (phi - (phi + phase).sin()), r * (T::one() - (phi + phase).cos()))
}

/// Largest distance between each trace sample and the cycloid of radius
/// `r_test` at the same rolling angle.
pub fn cycloid_residual<T: Scalar>(trace: &[TraceSample<T>], r_test: T) -> Result<T> {
    if !(r_test > T::zero() && r_test.is_finite()) {
        return Err(Error::param("r_test", "r_test > 0", r_test));
    }
    Ok(trace
        .iter()
        .map(|s| s.point.distance(&cycloid(r_test, s.phi, T::zero())))
        .fold(T::zero(), T::max))
}

/// [`cycloid_residual`] minimized over `PHASE_SCAN` phase offsets of the
/// test cycloid.
pub fn cycloid_residual_any_phase<T: Scalar>(trace: &[TraceSample<T>], r_test: T) -> Result<T> {
    if !(r_test > T::zero() && r_test.is_finite()) {
        return Err(Error::param("r_test", "r_test > 0", r_test));
    }
    let tau = T::TAU();
    let best = (0..PHASE_SCAN)
        .map(|j| {
            let phase = tau * T::lit(j as f64) / T::lit(PHASE_SCAN as f64);
            trace
                .iter()
                .map(|s| s.point.distance(&cycloid(r_test, s.phi, phase)))
                .fold(T::zero(), T::max)
        })
        .fold(T::infinity(), T::min);
    Ok(best)
}

/// Distance the inner rim slides over its track in one revolution.
pub fn slip_distance<T: Scalar>(c: &WheelConfig<T>) -> Result<T> {
    c.validate()?;
    Ok(T::TAU() * (c.radius - c.rho))
}

/// Speed of the inner rim's lowest point relative to its track, per unit
/// rolling angle.
pub fn contact_slip_speed<T: Scalar>(c: &WheelConfig<T>) -> Result<T> {
    c.validate()?;
    Ok(c.radius - c.rho)
}

/// Distance the hub, and every rigidly attached point, advances per revolution.
pub fn horizontal_progress<T: Scalar>(trace: &[TraceSample<T>]) -> T {
    match (trace.first(), trace.last()) {
        (Some(a), Some(b)) => b.point.x - a.point.x,
        _ => T::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn rejects_bad_configs() {
        assert!(WheelConfig::new(1.0, 0.0, 64).is_err());
        assert!(WheelConfig::new(1.0, 1.5, 64).is_err());
        assert!(WheelConfig::new(0.0, 0.0, 64).is_err());
        assert!(WheelConfig::new(1.0, 0.5, 7).is_err());
        assert!(WheelConfig::new(1.0, 1.0, 8).is_ok());
    }

    #[test]
    fn outer_trace_is_a_cycloid() {
        let c = WheelConfig::new(1.0, 0.5, 256).unwrap();
        let outer = trace_outer(&c).unwrap();
        assert_eq!(outer.len(), 257);
        assert!(cycloid_residual(&outer, 1.0).unwrap() < 1e-12);
        assert!((horizontal_progress(&outer) - TAU).abs() < 1e-12);
        let top = &outer[128];
        assert!((top.point.x - PI).abs() < 1e-12 && (top.point.y - 2.0).abs() < 1e-12);
    }

    #[test]
    fn inner_trace_is_not_a_cycloid() {
        let c = WheelConfig::new(1.0, 0.5, 256).unwrap();
        let inner = trace_inner_attached(&c).unwrap();
        assert!((horizontal_progress(&inner) - TAU).abs() < 1e-12);
        for r in [0.25, 0.5, 1.0] {
            assert!(cycloid_residual(&inner, r).unwrap() > 0.1, "r={r}");
            assert!(cycloid_residual_any_phase(&inner, r).unwrap() > 0.1, "r={r}");
        }
        assert!((slip_distance(&c).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn equal_radii_coincide() {
        let c = WheelConfig::new(2.0, 2.0, 64).unwrap();
        let (a, b) = (trace_outer(&c).unwrap(), trace_inner_attached(&c).unwrap());
        for (p, q) in a.iter().zip(&b) {
            assert!(p.point.distance(&q.point) < 1e-12);
        }
        assert_eq!(slip_distance(&c).unwrap(), 0.0);
    }

    #[test]
    fn inner_speed_at_contact_matches_slip() {
        // finite-difference velocity of the inner point at φ = 0 is R − ρ
        let c = WheelConfig::<f64>::new(1.5, 0.4, 1 << 16).unwrap();
        let inner = trace_inner_attached(&c).unwrap();
        let dphi = inner[1].phi - inner[0].phi;
        let v = (inner[1].point.x - inner[0].point.x) / dphi;
        assert!((v - contact_slip_speed(&c).unwrap()).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn trace_ranges(r in 0.1f64..10.0, frac in 0.01f64..1.0, steps in 8usize..300) {
            let c = WheelConfig::new(r, r * frac, steps).unwrap();
            for s in trace_outer(&c).unwrap() {
                prop_assert!(s.point.y >= -1e-12 && s.point.y <= 2.0 * r + 1e-12);
            }
            let rho = c.rho;
            let inner = trace_inner_attached(&c).unwrap();
            for s in &inner {
                prop_assert!(s.point.y >= r - rho - 1e-12 && s.point.y <= r + rho + 1e-12);
            }
            prop_assert!((horizontal_progress(&inner) - TAU * r).abs() < 1e-9 * r);
        }

        #[test]
        fn slip_decreases_with_rho(r in 0.1f64..10.0, f1 in 0.01f64..1.0, f2 in 0.01f64..1.0) {
            let (lo, hi) = if f1 < f2 { (f1, f2) } else { (f2, f1) };
            let a = slip_distance(&WheelConfig::new(r, r * lo, 8).unwrap()).unwrap();
            let b = slip_distance(&WheelConfig::new(r, r * hi, 8).unwrap()).unwrap();
            prop_assert!(a >= b && b >= 0.0);
        }
    }
}
