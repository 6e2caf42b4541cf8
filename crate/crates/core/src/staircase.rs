//! Segment-measuring "staircase" constructions.
//!
//! A base segment of length `2R` is covered by `2^(n-1)` congruent units,
//! each spanning an equal sub-base. The four similar-unit models keep the
//! total length constant as `n` grows, so their curves close in on the base
//! while their lengths never approach `2R`. The bisecting model shrinks the
//! roof angle at every step and its length does converge to `2R`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::closedform::{
    integer, rational_from_f64, rational_sqrt, ClosedForm, ExactValue, IrrationalTag, Rational,
};
use crate::error::{Error, Result};
use crate::geometry::{CurveIteration, Orientation, Point, Primitive};
use crate::num::Scalar;

/// Largest iteration for which geometry is built (2^29 units).
pub const MAX_GEOMETRY_N: u32 = 30;
/// Largest iteration accepted by the closed-form operations.
pub const MAX_CLOSED_FORM_N: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum StaircaseModel<T> {
    /// Upper semicircles on each sub-base.
    Semicircle,
    /// Right isosceles roofs.
    IsoRight,
    /// Right triangles with hypotenuse on the sub-base and leg ratio `lambda`.
    Lambda { lambda: T },
    /// Upward equilateral triangles.
    Equilateral,
    /// Isosceles roofs with base angle `omega / 2^(n-1)`.
    Bisect { omega: T },
}

/// Model name without parameters, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Semicircle,
    IsoRight,
    Lambda,
    Equilateral,
    Bisect,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::Semicircle,
        ModelKind::IsoRight,
        ModelKind::Lambda,
        ModelKind::Equilateral,
        ModelKind::Bisect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Semicircle => "semicircle",
            ModelKind::IsoRight => "iso-right",
            ModelKind::Lambda => "lambda",
            ModelKind::Equilateral => "equilateral",
            ModelKind::Bisect => "bisect",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "semicircle" => Ok(ModelKind::Semicircle),
            "iso-right" | "isoright" => Ok(ModelKind::IsoRight),
            "lambda" => Ok(ModelKind::Lambda),
            "equilateral" => Ok(ModelKind::Equilateral),
            "bisect" => Ok(ModelKind::Bisect),
            _ => Err(Error::param(
                "model",
                "one of semicircle, iso-right, lambda, equilateral, bisect",
                s,
            )),
        }
    }
}

impl<T: Scalar> StaircaseModel<T> {
    pub fn lambda(lambda: T) -> Result<Self> {
        let m = StaircaseModel::Lambda { lambda };
        m.validate()?;
        Ok(m)
    }

    pub fn bisect(omega: T) -> Result<Self> {
        let m = StaircaseModel::Bisect { omega };
        m.validate()?;
        Ok(m)
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            StaircaseModel::Semicircle => ModelKind::Semicircle,
            StaircaseModel::IsoRight => ModelKind::IsoRight,
            StaircaseModel::Lambda { .. } => ModelKind::Lambda,
            StaircaseModel::Equilateral => ModelKind::Equilateral,
            StaircaseModel::Bisect { .. } => ModelKind::Bisect,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            StaircaseModel::Lambda { lambda } if !(lambda > T::zero() && lambda.is_finite()) => {
                Err(Error::param("lambda", "lambda > 0", lambda))
            }
            StaircaseModel::Bisect { omega }
                if !(omega > T::zero() && omega < T::FRAC_PI_2()) =>
            {
                Err(Error::param("omega", "0 < omega < pi/2", omega))
            }
            _ => Ok(()),
        }
    }

    /// Whether the total length is the same at every iteration.
    pub fn is_constant(&self) -> bool {
        !matches!(self, StaircaseModel::Bisect { .. })
    }
}

fn check<T: Scalar>(model: &StaircaseModel<T>, radius: T, n: u32, max_n: u32) -> Result<()> {
    model.validate()?;
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::param("R", "R > 0", radius));
    }
    if n == 0 {
        return Err(Error::param("n", "n >= 1", n));
    }
    if n > max_n {
        return Err(Error::Parameter {
            name: "n",
            expected: if max_n == MAX_GEOMETRY_N {
                "n <= 30 when building geometry"
            } else {
                "n <= 1000000"
            },
            value: n.to_string(),
        });
    }
    Ok(())
}

fn exact<T: Scalar>(x: T) -> Result<Rational> {
    rational_from_f64(x.as_f64())
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(num_traits::pow(num_bigint::BigInt::from(2), k as usize))
}

/// `2(1 + x) / √(x² + 1)`, the constant total length (per unit `R`) of the
/// similar-right-triangle model. Lies in `(2, 2√2]`, maximal at `x = 1`.
pub fn f_lambda<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero() && x.is_finite()) {
        return Err(Error::param("x", "x > 0", x));
    }
    Ok(T::two() * (T::one() + x) / x.hypot(T::one()))
}

/// `f_lambda(x) − 2`, computed without cancellation.
fn f_lambda_excess<T: Scalar>(x: T) -> T {
    let s = x.hypot(T::one());
    T::lit(4.0) * x / ((T::one() + x + s) * s)
}

/// `2(1 + λ) / √(λ² + 1)` exactly, when `λ² + 1` is a rational square.
fn f_lambda_exact(lambda: &Rational) -> Option<Rational> {
    let s = rational_sqrt(&(lambda * lambda + Rational::one()))?;
    Some(integer(2) * (Rational::one() + lambda) / s)
}

/// Closed-form total length of iteration `n`, without building geometry.
pub fn sum_formula<T: Scalar>(model: &StaircaseModel<T>, radius: T, n: u32) -> Result<ClosedForm> {
    check(model, radius, n, MAX_CLOSED_FORM_N)?;
    let r = exact(radius)?;
    Ok(match *model {
        StaircaseModel::Semicircle => ExactValue::pi(r).into(),
        StaircaseModel::IsoRight => ExactValue::sqrt(2, integer(2) * r).into(),
        StaircaseModel::Equilateral => ExactValue::rational(integer(4) * r).into(),
        StaircaseModel::Lambda { lambda } => match f_lambda_exact(&exact(lambda)?) {
            Some(f) => ExactValue::rational(f * r).into(),
            None => ClosedForm::Approx {
                approx: (f_lambda(lambda)? * radius).as_f64(),
            },
        },
        StaircaseModel::Bisect { omega } => ExactValue::term(
            IrrationalTag::sec_halving(omega.as_f64(), n - 1)?,
            integer(2) * r,
        )
        .into(),
    })
}

/// Closed-form maximum height of the curve above its base at iteration `n`.
pub fn sup_height_formula<T: Scalar>(model: &StaircaseModel<T>, radius: T, n: u32) -> Result<ClosedForm> {
    check(model, radius, n, MAX_CLOSED_FORM_N)?;
    // half of one unit's chord: R / 2^(n-1)
    let half_chord = exact(radius)? / pow2(n - 1);
    Ok(match *model {
        StaircaseModel::Semicircle | StaircaseModel::IsoRight => ExactValue::rational(half_chord).into(),
        StaircaseModel::Equilateral => ExactValue::sqrt(3, half_chord).into(),
        StaircaseModel::Lambda { lambda } => {
            let l = exact(lambda)?;
            let apex = integer(2) * &l / (&l * &l + Rational::one());
            ExactValue::rational(half_chord * apex).into()
        }
        StaircaseModel::Bisect { omega } => {
            let theta = omega / T::two().powi((n - 1) as i32);
            ClosedForm::Approx {
                approx: (T::lit(
                    num_traits::ToPrimitive::to_f64(&half_chord).unwrap_or(f64::NAN),
                ) * theta.tan())
                .as_f64(),
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct StaircaseIteration<T> {
    pub model: StaircaseModel<T>,
    #[serde(rename = "R")]
    pub radius: T,
    pub n: u32,
    pub curve: CurveIteration<T>,
    /// Number of congruent units, `2^(n-1)`.
    pub pieces: u64,
    pub sum_closed: ClosedForm,
    pub sup_height_closed: ClosedForm,
}

/// Apex of one roof unit over the sub-base `[x0, x1]` on the x-axis.
fn apex<T: Scalar>(model: &StaircaseModel<T>, x0: T, x1: T, n: u32) -> Option<Point<T>> {
    let w = x1 - x0;
    let mid = (x0 + x1) / T::two();
    match *model {
        StaircaseModel::Semicircle => None,
        StaircaseModel::IsoRight => Some(Point::new(mid, w / T::two())),
        StaircaseModel::Equilateral => Some(Point::new(mid, w * T::lit(3.0).sqrt() / T::two())),
        StaircaseModel::Lambda { lambda } => {
            // legs w/√(1+λ²) then λw/√(1+λ²); the altitude foot splits the chord 1 : λ²
            let denom = T::one() + lambda * lambda;
            Some(Point::new(x0 + w / denom, w * lambda / denom))
        }
        StaircaseModel::Bisect { omega } => {
            let theta = omega / T::two().powi((n - 1) as i32);
            Some(Point::new(mid, w / T::two() * theta.tan()))
        }
    }
}

/// Builds iteration `n` over the base from `(0, 0)` to `(2R, 0)`.
pub fn build_iteration<T: Scalar>(model: &StaircaseModel<T>, radius: T, n: u32) -> Result<StaircaseIteration<T>> {
    check(model, radius, n, MAX_GEOMETRY_N)?;
    let units: u64 = 1 << (n - 1);
    let span = T::two() * radius;
    let cut = |i: u64| span * T::lit(i as f64) / T::lit(units as f64);
    let mut primitives = Vec::with_capacity(units as usize * 2);
    for i in 0..units {
        let (x0, x1) = (cut(i), cut(i + 1));
        let left = Point::new(x0, T::zero());
        let right = Point::new(x1, T::zero());
        match apex(model, x0, x1, n) {
            Some(top) => {
                primitives.push(Primitive::segment(left, top));
                primitives.push(Primitive::segment(top, right));
            }
            None => primitives.push(Primitive::arc(
                Point::new((x0 + x1) / T::two(), T::zero()),
                (x1 - x0) / T::two(),
                T::PI(),
                T::zero(),
                Orientation::Cw,
            )),
        }
    }
    Ok(StaircaseIteration {
        model: *model,
        radius,
        n,
        curve: CurveIteration::new(n, primitives)?,
        pieces: units,
        sum_closed: sum_formula(model, radius, n)?,
        sup_height_closed: sup_height_formula(model, radius, n)?,
    })
}

/// Where the sequence of total lengths goes as `n → ∞`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitVerdict<T> {
    pub limit_value: T,
    pub limit_closed: ClosedForm,
    /// `limit − 2R`, computed without cancellation.
    pub excess_over_base: T,
    pub equals_base: bool,
    pub constant_sequence: bool,
}

pub fn limit_classify<T: Scalar>(model: &StaircaseModel<T>, radius: T) -> Result<LimitVerdict<T>> {
    check(model, radius, 1, MAX_CLOSED_FORM_N)?;
    let two_r = T::two() * radius;
    let (limit_closed, excess) = match *model {
        StaircaseModel::Bisect { .. } => (
            ExactValue::rational(integer(2) * exact(radius)?).into(),
            T::zero(),
        ),
        StaircaseModel::Semicircle => (sum_formula(model, radius, 1)?, (T::PI() - T::two()) * radius),
        StaircaseModel::IsoRight => (
            sum_formula(model, radius, 1)?,
            (T::two() * T::SQRT_2() - T::two()) * radius,
        ),
        StaircaseModel::Equilateral => (sum_formula(model, radius, 1)?, two_r),
        StaircaseModel::Lambda { lambda } => (sum_formula(model, radius, 1)?, f_lambda_excess(lambda) * radius),
    };
    let limit_value = match &limit_closed {
        ClosedForm::Exact(v) => v.eval::<T>(),
        ClosedForm::Approx { approx } => T::lit(*approx),
    };
    Ok(LimitVerdict {
        limit_value,
        limit_closed,
        excess_over_base: excess,
        equals_base: excess.is_zero(),
        constant_sequence: model.is_constant(),
    })
}

/// One unit's curve length minus its chord `2R / 2^(n-1)`.
pub fn gap_per_step<T: Scalar>(model: &StaircaseModel<T>, radius: T, n: u32) -> Result<T> {
    check(model, radius, n, MAX_GEOMETRY_N)?;
    let chord = T::two() * radius / T::two().powi((n - 1) as i32);
    let factor = match *model {
        StaircaseModel::Semicircle => T::FRAC_PI_2() - T::one(),
        StaircaseModel::IsoRight => T::SQRT_2() - T::one(),
        StaircaseModel::Equilateral => T::one(),
        StaircaseModel::Lambda { lambda } => f_lambda_excess(lambda) / T::two(),
        StaircaseModel::Bisect { omega } => {
            // sec θ − 1 = 2 sin²(θ/2) / cos θ
            let theta = omega / T::two().powi((n - 1) as i32);
            let s = (theta / T::two()).sin();
            T::two() * s * s / theta.cos()
        }
    };
    Ok(chord * factor)
}

/// Closed-form total lengths for `n = 1..=n_max`.
pub fn sum_series<T: Scalar>(model: &StaircaseModel<T>, radius: T, n_max: u32) -> Result<Vec<ClosedForm>> {
    (1..=n_max).map(|n| sum_formula(model, radius, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::rational;
    use crate::geometry::{measure_length, sup_distance_to_segment};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, PI, SQRT_2};

    type M = StaircaseModel<f64>;

    fn models() -> Vec<M> {
        vec![
            M::Semicircle,
            M::IsoRight,
            M::lambda(0.75).unwrap(),
            M::lambda(2.3).unwrap(),
            M::Equilateral,
            M::bisect(FRAC_PI_3).unwrap(),
            M::bisect(0.7).unwrap(),
        ]
    }

    #[test]
    fn build_examples() {
        let it = build_iteration(&M::Semicircle, 1.0, 1).unwrap();
        assert_eq!(it.sum_closed, ClosedForm::Exact(ExactValue::pi(integer(1))));
        assert_eq!(it.sum_closed.eval_float(), PI);

        let it = build_iteration(&M::IsoRight, 1.0, 5).unwrap();
        assert_eq!(it.sum_closed, ClosedForm::Exact(ExactValue::sqrt(2, integer(2))));
        assert!((it.sum_closed.eval_float() - 2.0 * SQRT_2).abs() < 1e-15);
        assert_eq!(it.pieces, 16);

        let it = build_iteration(&M::bisect(FRAC_PI_3).unwrap(), 1.0, 1).unwrap();
        let tag = IrrationalTag::sec_halving(FRAC_PI_3, 0).unwrap();
        assert_eq!(it.sum_closed, ClosedForm::Exact(ExactValue::term(tag, integer(2))));
        assert!((it.sum_closed.eval_float() - 4.0).abs() < 1e-12);

        for n in [1, 4, 9] {
            let it = build_iteration(&M::Equilateral, 1.0, n).unwrap();
            assert_eq!(it.sum_closed, ClosedForm::Exact(ExactValue::rational(integer(4))));
        }
    }

    #[test]
    fn sum_formula_examples() {
        assert_eq!(
            sum_formula(&M::Semicircle, 1.0, 9).unwrap(),
            ClosedForm::Exact(ExactValue::pi(integer(1)))
        );
        assert_eq!(
            sum_formula(&M::lambda(0.75).unwrap(), 1.0, 4).unwrap(),
            ClosedForm::Exact(ExactValue::rational(rational(14, 5)))
        );
        let b = sum_formula(&M::bisect(FRAC_PI_3).unwrap(), 1.0, 2).unwrap();
        let tag = IrrationalTag::sec_halving(FRAC_PI_3, 1).unwrap();
        assert_eq!(b, ClosedForm::Exact(ExactValue::term(tag, integer(2))));
        assert!((b.eval_float() - 2.309_401_076_758_503).abs() < 1e-12);
        // closed forms accept huge n
        assert!(sum_formula(&M::Semicircle, 1.0, 1_000_000).is_ok());
        assert!(sum_formula(&M::Semicircle, 1.0, 1_000_001).is_err());
    }

    #[test]
    fn lambda_without_rational_root_is_flagged_inexact() {
        let cf = sum_formula(&M::lambda(0.5).unwrap(), 1.0, 3).unwrap();
        assert!(!cf.is_exact());
        assert!((cf.eval_float() - 3.0 / 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn parameter_errors_are_distinct() {
        let errs = [
            build_iteration(&M::Semicircle, 0.0, 1).unwrap_err(),
            build_iteration(&M::Semicircle, 1.0, 0).unwrap_err(),
            build_iteration(&M::Semicircle, 1.0, 31).unwrap_err(),
            M::lambda(0.0).unwrap_err(),
            M::bisect(PI / 2.0).unwrap_err(),
        ];
        let names: Vec<String> = errs.iter().map(Error::precondition).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                assert_ne!(names[i], names[j]);
            }
        }
        assert!(f_lambda(0.0).is_err());
        assert!(f_lambda(-1.0).is_err());
    }

    #[test]
    fn f_lambda_examples() {
        assert!((f_lambda(1.0).unwrap() - 2.0 * SQRT_2).abs() < 1e-15);
        assert!((f_lambda(0.75f64).unwrap() - 2.8).abs() < 1e-15);
        assert!((f_lambda(1e6f64).unwrap() - 2.000002).abs() < 1e-6);
    }

    #[test]
    fn limit_examples() {
        let v = limit_classify(&M::Semicircle, 1.0).unwrap();
        assert_eq!(v.limit_value, PI);
        assert!(!v.equals_base && v.constant_sequence);

        let v = limit_classify(&M::bisect(0.7).unwrap(), 1.0).unwrap();
        assert_eq!(v.limit_value, 2.0);
        assert!(v.equals_base && !v.constant_sequence);

        let v = limit_classify(&M::lambda(1.0).unwrap(), 1.0).unwrap();
        assert!((v.limit_value - 2.0 * SQRT_2).abs() < 1e-15);
        assert!(!v.equals_base);

        let v = limit_classify(&M::lambda(1e15).unwrap(), 1.0).unwrap();
        assert!(!v.equals_base && v.excess_over_base > 0.0);

        assert_eq!(limit_classify(&M::Equilateral, 2.0).unwrap().limit_value, 8.0);
    }

    #[test]
    fn gap_examples() {
        assert!((gap_per_step(&M::Semicircle, 1.0, 1).unwrap() - (PI - 2.0)).abs() < 1e-15);
        assert!((gap_per_step(&M::IsoRight, 1.0, 2).unwrap() - (SQRT_2 - 1.0)).abs() < 1e-15);
        let g = gap_per_step(&M::bisect(FRAC_PI_3).unwrap(), 1.0, 10).unwrap();
        assert!(g > 0.0 && g <= 1e-5);
    }

    #[test]
    fn gap_matches_geometry_and_stays_positive() {
        for m in models() {
            for n in 1..=8 {
                let it = build_iteration(&m, 1.0, n).unwrap();
                let per_unit = measure_length(&it.curve) / it.pieces as f64;
                let chord = 2.0 / it.pieces as f64;
                let gap = gap_per_step(&m, 1.0, n).unwrap();
                assert!(gap > 0.0);
                assert!((per_unit - chord - gap).abs() < 1e-12, "{m:?} n={n}");
            }
        }
        // bisect: gap relative to chord vanishes
        let m = M::bisect(1.2).unwrap();
        let rel = |n| gap_per_step(&m, 1.0, n).unwrap() / (2.0 / 2f64.powi(n as i32 - 1));
        assert!(rel(20) < rel(10) && rel(20) < 1e-10);
    }

    #[test]
    fn oracle_agreement() {
        for m in models() {
            for n in 1..=12 {
                let it = build_iteration(&m, 1.0, n).unwrap();
                let oracle = measure_length(&it.curve);
                let closed = it.sum_closed.eval_float();
                assert!((oracle - closed).abs() <= 1e-9 * closed, "{m:?} n={n}: {oracle} vs {closed}");
            }
        }
    }

    #[test]
    fn endpoints_are_preserved() {
        for m in models() {
            for n in [1, 5, 11] {
                let it = build_iteration(&m, 1.7, n).unwrap();
                assert!(it.curve.start().distance(&Point::new(0.0, 0.0)) <= 1e-9);
                assert!(it.curve.end().distance(&Point::new(3.4, 0.0)) <= 1e-9);
            }
        }
    }

    #[test]
    fn faulty_models_are_exactly_constant() {
        for m in [M::Semicircle, M::IsoRight, M::Equilateral, M::lambda(0.75).unwrap()] {
            for n in 1..=11 {
                let a = sum_formula(&m, 1.0, n).unwrap();
                let b = sum_formula(&m, 1.0, n + 1).unwrap();
                assert!(a.as_exact().unwrap().exact_eq(b.as_exact().unwrap()));
            }
        }
        let m = M::lambda(0.3).unwrap();
        for n in 1..=11 {
            let a = sum_formula(&m, 1.0, n).unwrap().eval_float();
            let b = sum_formula(&m, 1.0, n + 1).unwrap().eval_float();
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn bisect_decreases_to_base() {
        let m = M::bisect(FRAC_PI_3).unwrap();
        let s: Vec<f64> = (1..=20)
            .map(|n| sum_formula(&m, 1.0, n).unwrap().eval_float())
            .collect();
        for w in s.windows(2) {
            assert!(w[0] > w[1] && w[1] > 2.0);
        }
        // S_n − 2R ≈ R·θ², so 1e-6 needs θ below about 1e-3 (not 1.4e-3) at R = 1
        for n in 1..=20u32 {
            if FRAC_PI_3 / 2f64.powi(n as i32 - 1) < 7e-4 {
                assert!((s[n as usize - 1] - 2.0).abs() < 1e-6);
            }
        }
        assert!((s[11] - 2.0).abs() < 1e-6);
        assert!((s[10] - 2.0).abs() > 1e-6);
    }

    #[test]
    fn sup_distance_halves() {
        let base = (Point::new(0.0, 0.0), Point::new(2.0, 0.0));
        for m in models() {
            let d: Vec<f64> = (1..=10)
                .map(|n| {
                    let it = build_iteration(&m, 1.0, n).unwrap();
                    sup_distance_to_segment(&it.curve, base.0, base.1, 64).unwrap()
                })
                .collect();
            for w in d.windows(2) {
                assert!(w[1] / w[0] <= 0.5 + 1e-9, "{m:?}: {w:?}");
            }
        }
        let semi = build_iteration(&M::Semicircle, 1.0, 4).unwrap();
        let d = sup_distance_to_segment(&semi.curve, base.0, base.1, 256).unwrap();
        assert!((d - 0.125).abs() < 1e-15);
    }

    #[test]
    fn sup_height_matches_sampled_apex() {
        let base = (Point::new(0.0, 0.0), Point::new(2.0, 0.0));
        for m in models() {
            for n in [1, 3, 6] {
                let it = build_iteration(&m, 1.0, n).unwrap();
                let sampled = sup_distance_to_segment(&it.curve, base.0, base.1, 256).unwrap();
                let closed = it.sup_height_closed.eval_float();
                assert!((sampled - closed).abs() < 1e-12, "{m:?} n={n}");
            }
        }
    }

    #[test]
    fn lambda_legs_keep_ratio() {
        for lambda in [0.2, 0.75, 1.0, 3.5] {
            let it = build_iteration(&M::lambda(lambda).unwrap(), 1.0, 4).unwrap();
            for pair in it.curve.primitives().chunks(2) {
                let ratio = pair[1].length() / pair[0].length();
                assert!((ratio - lambda).abs() <= 1e-12 * lambda.max(1.0));
            }
        }
    }

    #[test]
    fn works_in_single_precision() {
        let it = build_iteration(&StaircaseModel::<f32>::IsoRight, 1.0, 6).unwrap();
        let l = measure_length(&it.curve);
        assert!((l - 2.0 * std::f32::consts::SQRT_2).abs() < 1e-5);
    }

    #[test]
    fn model_names_parse() {
        for k in ModelKind::ALL {
            assert_eq!(k.name().parse::<ModelKind>().unwrap(), k);
        }
        assert!("spiral".parse::<ModelKind>().is_err());
    }

    proptest! {
        #[test]
        fn f_lambda_is_unimodal(x in 1e-3f64..1.0, y in 1e-3f64..1.0, u in 1.0f64..1e4, v in 1.0f64..1e4) {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            if lo < hi {
                prop_assert!(f_lambda(lo).unwrap() < f_lambda(hi).unwrap());
            }
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            if lo < hi {
                prop_assert!(f_lambda(lo).unwrap() > f_lambda(hi).unwrap());
            }
            for z in [x, y, u, v] {
                let f = f_lambda(z).unwrap();
                prop_assert!(f > 2.0 && f <= 2.0 * SQRT_2 + 1e-12);
            }
        }

        #[test]
        fn oracle_agrees_for_random_radius(r in 0.1f64..10.0, n in 1u32..9, idx in 0usize..7) {
            let m = models()[idx];
            let it = build_iteration(&m, r, n).unwrap();
            let closed = it.sum_closed.eval_float();
            prop_assert!((measure_length(&it.curve) - closed).abs() <= 1e-9 * closed);
        }
    }
}
