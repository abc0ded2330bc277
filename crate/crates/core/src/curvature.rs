//! Derivatives and curvature of the screening curve, concavity by screening
//! coefficient, and the prevalence threshold (the point of maximum curvature).

use crate::error::{Error, Result};
use crate::numeric::golden_section_max;
use crate::screening::{Prevalence, TestCharacteristics};

/// `|ε − 1|` at or below this is treated as the linear (identity) curve.
pub const LINEAR_TOLERANCE: f64 = 1e-12;

/// Grid intervals used to bracket the curvature maximum before refinement.
const ORACLE_GRID: usize = 1000;
/// Final golden-section bracket width.
const ORACLE_WIDTH: f64 = 1e-9;
/// A grid maximum of κ below this means the curve is a straight line.
const ORACLE_FLAT: f64 = 1e-12;

const SENSITIVITY_STEP: f64 = 1e-6;
const SENSITIVITY_MARGIN: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConcavityClass {
    /// `ε > 1`: ρ'' < 0 on (0, 1).
    Concave,
    /// `ε = 1`: ρ(φ) = φ.
    Linear,
    /// `ε < 1`: ρ'' > 0 on (0, 1).
    Convex,
}

impl ConcavityClass {
    pub fn name(self) -> &'static str {
        match self {
            ConcavityClass::Concave => "concave",
            ConcavityClass::Linear => "linear",
            ConcavityClass::Convex => "convex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concavity {
    pub class: ConcavityClass,
    pub screening_coefficient: f64,
}

impl TestCharacteristics {
    /// `dρ/dφ = a(1 − b) / (aφ + (1 − b)(1 − φ))²`
    pub fn ppv_derivative(&self, prevalence: Prevalence) -> Result<f64> {
        let d = self.positive_rate(prevalence.value())?;
        Ok(self.sensitivity() * self.fall_out() / (d * d))
    }

    /// `d²ρ/dφ² = −2a(1 − b)(a + b − 1) / (aφ + (1 − b)(1 − φ))³`
    pub fn ppv_second_derivative(&self, prevalence: Prevalence) -> Result<f64> {
        let d = self.positive_rate(prevalence.value())?;
        Ok(-2.0 * self.sensitivity() * self.fall_out() * self.youden_j() / (d * d * d))
    }

    /// Curvature `κ = |ρ''| / (1 + ρ'²)^{3/2}`, the reciprocal of the radius
    /// of curvature.
    pub fn curvature(&self, prevalence: Prevalence) -> Result<f64> {
        let slope = self.ppv_derivative(prevalence)?;
        let bend = self.ppv_second_derivative(prevalence)?;
        Ok(libm::fabs(bend) / libm::pow(1.0 + slope * slope, 1.5))
    }

    pub fn classify(&self) -> Concavity {
        let j = self.youden_j();
        let class = if j > LINEAR_TOLERANCE {
            ConcavityClass::Concave
        } else if j < -LINEAR_TOLERANCE {
            ConcavityClass::Convex
        } else {
            ConcavityClass::Linear
        };
        Concavity {
            class,
            screening_coefficient: self.screening_coefficient(),
        }
    }

    /// Prevalence threshold `φₑ = √(1 − b) / (√a + √(1 − b))`.
    ///
    /// `Ok(None)` for the linear class: the identity line has no point of
    /// maximum curvature, even though the expression above stays finite there.
    pub fn prevalence_threshold(&self) -> Result<Option<f64>> {
        self.check_positive_results()?;
        if self.classify().class == ConcavityClass::Linear {
            return Ok(None);
        }
        let root_a = libm::sqrt(self.sensitivity());
        let root_c = libm::sqrt(self.fall_out());
        Ok(Some(root_c / (root_a + root_c)))
    }

    /// The same threshold in its unsimplified form `(√(a(1 − b)) + b − 1) / J`.
    /// Loses precision as `J → 0`; kept as a cross-check.
    pub fn prevalence_threshold_unsimplified(&self) -> Option<f64> {
        if self.classify().class == ConcavityClass::Linear {
            return None;
        }
        let (a, b) = (self.sensitivity(), self.specificity());
        Some((libm::sqrt(a * (1.0 - b)) + b - 1.0) / self.youden_j())
    }

    /// `ρ(φₑ) = φₑ·√(a / (1 − b))`. A perfectly specific test has `φₑ = 0`
    /// and reports the limiting value 1.
    pub fn ppv_at_threshold(&self) -> Result<Option<f64>> {
        let Some(phi_e) = self.prevalence_threshold()? else {
            return Ok(None);
        };
        match self.positive_likelihood_ratio() {
            Some(lr) => Ok(Some((phi_e * libm::sqrt(lr)).min(1.0))),
            None => Ok(Some(1.0)),
        }
    }
}

/// Locates the curvature maximum without the closed form: a 1001-point grid
/// scan followed by golden-section refinement on the bracketing cells.
/// `Ok(None)` when κ is flat (below 1e−12) across the grid.
pub fn numeric_threshold_oracle(t: &TestCharacteristics) -> Result<Option<f64>> {
    t.check_positive_results()?;
    // 0/0 endpoints belong to constant curves, where κ is identically 0.
    let kappa = |phi: f64| t.curvature(Prevalence::clamped(phi)).unwrap_or(0.0);
    let step = 1.0 / ORACLE_GRID as f64;
    let (best, best_kappa) = (0..=ORACLE_GRID)
        .map(|i| {
            let phi = i as f64 * step;
            (i, kappa(phi))
        })
        .fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, k)| if k > acc.1 { (i, k) } else { acc },
        );
    if best_kappa < ORACLE_FLAT {
        return Ok(None);
    }
    let lo = best.saturating_sub(1) as f64 * step;
    let hi = ((best + 1).min(ORACLE_GRID)) as f64 * step;
    let phi = golden_section_max(kappa, lo, hi, ORACLE_WIDTH);
    Ok(Some(phi.clamp(0.0, 1.0)))
}

/// The prevalence threshold together with its predictive value, concavity
/// class and the numerical cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub threshold: Option<f64>,
    pub ppv_at_threshold: Option<f64>,
    pub concavity: Concavity,
    pub oracle_threshold: Option<f64>,
    /// `|threshold − oracle_threshold|` when both are defined.
    pub oracle_residual: Option<f64>,
}

pub fn threshold_report(t: &TestCharacteristics) -> Result<ThresholdReport> {
    let threshold = t.prevalence_threshold()?;
    let oracle_threshold = numeric_threshold_oracle(t)?;
    let oracle_residual = match (threshold, oracle_threshold) {
        (Some(x), Some(y)) => Some(libm::fabs(x - y)),
        _ => None,
    };
    Ok(ThresholdReport {
        threshold,
        ppv_at_threshold: t.ppv_at_threshold()?,
        concavity: t.classify(),
        oracle_threshold,
        oracle_residual,
    })
}

/// Partial derivatives of the prevalence threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSensitivities {
    /// `∂φₑ/∂a`
    pub d_sensitivity: f64,
    /// `∂φₑ/∂b`
    pub d_specificity: f64,
}

impl ThresholdSensitivities {
    /// `|∂φₑ/∂b| / |∂φₑ/∂a|`; above 1 when the threshold reacts more to
    /// specificity than to sensitivity.
    pub fn specificity_dominance(&self) -> f64 {
        libm::fabs(self.d_specificity) / libm::fabs(self.d_sensitivity)
    }
}

/// Central finite differences of the closed-form threshold.
///
/// The centre itself may sit on the identity line: only the four perturbed
/// points need a defined threshold.
pub fn threshold_sensitivities(t: &TestCharacteristics) -> Result<ThresholdSensitivities> {
    let (a, b) = (t.sensitivity(), t.specificity());
    for (field, value) in [("sensitivity", a), ("specificity", b)] {
        if !(SENSITIVITY_MARGIN..=1.0 - SENSITIVITY_MARGIN).contains(&value) {
            return Err(Error::NotInterior { field, value });
        }
    }
    let threshold_at = |a: f64, b: f64| -> Result<f64> {
        TestCharacteristics::new(a, b)?
            .prevalence_threshold()?
            .ok_or(Error::UndefinedThreshold)
    };
    let h_a = SENSITIVITY_STEP.min(0.5 * a).min(0.5 * (1.0 - a));
    let h_b = SENSITIVITY_STEP.min(0.5 * b).min(0.5 * (1.0 - b));
    let d_sensitivity = (threshold_at(a + h_a, b)? - threshold_at(a - h_a, b)?) / (2.0 * h_a);
    let d_specificity = (threshold_at(a, b + h_b)? - threshold_at(a, b - h_b)?) / (2.0 * h_b);
    Ok(ThresholdSensitivities {
        d_sensitivity,
        d_specificity,
    })
}
