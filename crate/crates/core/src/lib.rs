//! Geometric paradox lab: constructions whose pointwise limit disagrees with
//! the limit of a measured quantity, each paired with an exact closed form
//! and an independent numeric oracle.
//!
//! Float constructions are generic over [`num::Scalar`] (`f32`, `f64`);
//! dissections run in exact rationals. The aliases below fix `f64`.

pub mod closedform;
pub mod dissection;
pub mod error;
pub mod geometry;
pub mod koch;
pub mod num;
pub mod revolution;
pub mod staircase;
pub mod wheel;

pub use closedform::{ClosedForm, ExactValue, IrrationalTag, Rational};
pub use error::{Error, Result};
pub use geometry::{Location, Orientation};
pub use num::Scalar;
pub use staircase::ModelKind;

pub type Point = geometry::Point<f64>;
pub type RationalPoint = geometry::Point<Rational>;
pub type Primitive = geometry::Primitive<f64>;
pub type CurveIteration = geometry::CurveIteration<f64>;
pub type StaircaseModel = staircase::StaircaseModel<f64>;
pub type StaircaseIteration = staircase::StaircaseIteration<f64>;
pub type LimitVerdict = staircase::LimitVerdict<f64>;
pub type KochState = koch::KochState<f64>;
pub type HornQuery = revolution::HornQuery<f64>;
pub type Comparison = revolution::Comparison<f64>;
pub type WheelConfig = wheel::WheelConfig<f64>;
pub type TraceSample = wheel::TraceSample<f64>;

pub type Point32 = geometry::Point<f32>;
pub type CurveIteration32 = geometry::CurveIteration<f32>;
pub type StaircaseIteration32 = staircase::StaircaseIteration<f32>;
