//! Mathematics of prevalence-dependent screening curves.
//!
//! For a binary test with sensitivity `a` and specificity `b`, the positive
//! predictive value as a function of prevalence `φ` is
//!
//! ```text
//! ρ(φ) = aφ / (aφ + (1 − b)(1 − φ))
//! ```
//!
//! This crate evaluates that curve and its derivatives, classifies its
//! concavity through the screening coefficient `ε = a + b`, locates the
//! prevalence threshold (the point of maximum curvature) in closed form,
//! integrates the curve, and simulates how a successful screening programme
//! erodes its own predictive value. Every closed form has a numerical
//! counterpart in [`numeric`] so the two can be checked against each other.
//!
//! The crate is `no_std` and only needs `alloc` for the sampled curve and
//! simulation trajectories.
//!
//! ```
//! use screening_curves::TestCharacteristics;
//!
//! let pcr = TestCharacteristics::new(0.95, 0.99).unwrap();
//! let threshold = pcr.prevalence_threshold().unwrap().unwrap();
//! assert!((threshold - 0.093).abs() < 1e-3);
//! ```

#![no_std]

extern crate alloc;

pub mod curvature;
pub mod curve;
mod error;
pub mod integrals;
pub mod numeric;
pub mod paradox;
pub mod screening;

pub use curvature::{
    numeric_threshold_oracle, threshold_report, threshold_sensitivities, Concavity, ConcavityClass,
    ThresholdReport, ThresholdSensitivities, LINEAR_TOLERANCE,
};
pub use curve::{sample_curve, CurveRow, CurveSamples};
pub use error::{Error, Metric, Result};
pub use integrals::{auc, AucReport};
pub use paradox::{ParadoxScenario, ParadoxTrajectory, TrajectoryPoint};
pub use screening::{
    metrics_from_counts, ConfusionMatrix, CountMetrics, Prevalence, TestCharacteristics,
};
