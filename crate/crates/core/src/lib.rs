//! Equilibrium curves of the total inverse curvature functional ℱ(γ) = ∫ 1/H
//! in the upper half-plane, with prescribed endpoints (±x0, 0) and enclosed area.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::type_complexity)]

pub mod config;
pub mod critical;
pub mod curvegeom;
pub mod error;
pub mod jet;
pub mod linalg;
pub mod output;
pub mod profile;
pub mod quad;
pub mod real;
pub mod roots;
pub mod spline;
pub mod stability;
pub mod perturb;
pub mod steiner;
pub mod variations;

pub use config::{OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use real::Real;

pub type DiscreteCurve = curvegeom::DiscreteCurve<f64>;
pub type CurveFrame = curvegeom::CurveFrame<f64>;
pub type CriticalParams = critical::CriticalParams<f64>;
pub type CriticalCurve = critical::CriticalCurve<f64>;
pub type Profile = profile::Profile<f64>;
pub type GraphPair = steiner::GraphPair<f64>;
