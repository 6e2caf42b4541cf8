//! The horn of `f(x) = 1/x` on `[1, ∞)`: the area under the curve diverges
//! like `ln A` while the volume of the solid of revolution tends to `π`.
//!
//! Integrals are truncated at `A` and evaluated both analytically and by
//! composite Simpson quadrature on a uniform grid.

use serde::{Deserialize, Serialize};

use crate::closedform::{rational_from_f64, ExactValue, IrrationalTag, Rational};
use crate::error::{Error, Result};
use crate::num::{sum_compensated, Scalar};

pub const DEFAULT_SUBDIVISIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HornQuery<T> {
    /// Truncation point `A > 1`.
    pub upper: T,
    pub subdivisions: usize,
}

impl<T: Scalar> HornQuery<T> {
    pub fn new(upper: T, subdivisions: usize) -> Result<Self> {
        let q = HornQuery { upper, subdivisions };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.upper > T::one() && self.upper.is_finite()) {
            return Err(Error::param("upper", "upper > 1", self.upper));
        }
        if self.subdivisions == 0 {
            return Err(Error::param("subdivisions", "subdivisions >= 1", self.subdivisions));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison<T> {
    pub numeric: T,
    pub analytic: T,
    /// A-priori bound on the quadrature error (before rounding).
    pub error_bound: T,
}

impl<T: Scalar> Comparison<T> {
    pub fn discrepancy(&self) -> T {
        (self.numeric - self.analytic).abs()
    }
}

/// Composite Simpson rule; an odd `subdivisions` is rounded up to even.
pub fn simpson<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, subdivisions: usize) -> T {
    let m = subdivisions.max(2).next_multiple_of(2);
    let h = (hi - lo) / T::lit(m as f64);
    let (four, two) = (T::lit(4.0), T::two());
    let interior = sum_compensated((1..m).map(|i| {
        let x = lo + h * T::lit(i as f64);
        if i % 2 == 1 { four * f(x) } else { two * f(x) }
    }));
    h / T::lit(3.0) * (f(lo) + interior + f(hi))
}

/// Simpson error bound for an integrand whose fourth derivative is positive
/// and decreasing on `[1, A]`: `h⁴/180 · (2h·f⁗(1) + |f‴(A) − f‴(1)|)`.
fn simpson_bound<T: Scalar>(upper: T, subdivisions: usize, f4_at_1: T, f3_at_1: T, f3_at_upper: T) -> T {
    let m = subdivisions.max(2).next_multiple_of(2);
    let h = (upper - T::one()) / T::lit(m as f64);
    let h4 = h * h * h * h;
    h4 / T::lit(180.0) * (T::two() * h * f4_at_1 + (f3_at_upper - f3_at_1).abs())
}

/// `∫_1^A dx/x`: quadrature against `ln A`.
pub fn area_under_curve<T: Scalar>(q: &HornQuery<T>) -> Result<Comparison<T>> {
    q.validate()?;
    let a = q.upper;
    Ok(Comparison {
        numeric: simpson(|x: T| x.recip(), T::one(), a, q.subdivisions),
        analytic: a.ln(),
        // f = 1/x: f‴ = −6/x⁴, f⁗ = 24/x⁵
        error_bound: simpson_bound(a, q.subdivisions, T::lit(24.0), T::lit(-6.0), T::lit(-6.0) / a.powi(4)),
    })
}

/// `∫_1^A π/x² dx`: quadrature against `π(1 − 1/A)`.
pub fn volume_of_revolution<T: Scalar>(q: &HornQuery<T>) -> Result<Comparison<T>> {
    q.validate()?;
    let a = q.upper;
    let pi = T::PI();
    Ok(Comparison {
        numeric: simpson(|x: T| pi / (x * x), T::one(), a, q.subdivisions),
        analytic: pi * (T::one() - a.recip()),
        // f = π/x²: f‴ = −24π/x⁵, f⁗ = 120π/x⁶
        error_bound: simpson_bound(
            a,
            q.subdivisions,
            T::lit(120.0) * pi,
            T::lit(-24.0) * pi,
            T::lit(-24.0) * pi / a.powi(5),
        ),
    })
}

/// Exact closed form `ln A`.
pub fn area_closed_form<T: Scalar>(upper: T) -> Result<ExactValue> {
    if !(upper > T::one() && upper.is_finite()) {
        return Err(Error::param("upper", "upper > 1", upper));
    }
    Ok(ExactValue::term(IrrationalTag::log(upper.as_f64())?, Rational::from_integer(1.into())))
}

/// Exact closed form `π(1 − 1/A)`.
pub fn volume_closed_form<T: Scalar>(upper: T) -> Result<ExactValue> {
    if !(upper > T::one() && upper.is_finite()) {
        return Err(Error::param("upper", "upper > 1", upper));
    }
    let a = rational_from_f64(upper.as_f64())?;
    Ok(ExactValue::pi(Rational::from_integer(1.into()) - a.recip()))
}

/// The volume of the untruncated horn, `π`.
pub fn volume_limit() -> ExactValue {
    ExactValue::pi(Rational::from_integer(1.into()))
}

/// Rigorous lower bound on `∫_1^A dx/x`: each dyadic block `[2^j, 2^(j+1)]`
/// contributes at least its width times `f` at its right end, i.e. `1/2`.
pub fn area_lower_bound<T: Scalar>(upper: T) -> Result<T> {
    if !(upper > T::one() && upper.is_finite()) {
        return Err(Error::param("upper", "upper > 1", upper));
    }
    let blocks = upper.log2().floor();
    let last = T::two().powf(blocks);
    // partial block [2^blocks, A]
    let partial = (upper - last) / upper;
    Ok(blocks / T::two() + partial)
}
