//! Area under the screening curve, closed form and by quadrature.

use crate::curvature::LINEAR_TOLERANCE;
use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;
use crate::screening::{Prevalence, TestCharacteristics};

const QUADRATURE_TOLERANCE: f64 = 1e-10;
const QUADRATURE_DEPTH: u32 = 60;

/// Below this `|J / (1 − b)|` the closed-form difference `F(1) − F(0)`
/// cancels catastrophically and a series is used instead.
const SERIES_CUTOFF: f64 = 1e-3;

impl TestCharacteristics {
    /// Antiderivative of ρ:
    ///
    /// ```text
    /// F(φ) = a((b − 1) ln|(a + b − 1)φ − b + 1| + (a + b − 1)φ) / (a + b − 1)²
    /// ```
    pub fn ppv_antiderivative(&self, prevalence: Prevalence) -> Result<f64> {
        self.check_positive_results()?;
        let j = self.youden_j();
        if libm::fabs(j) <= LINEAR_TOLERANCE {
            return Err(Error::LinearCurve);
        }
        let phi = prevalence.value();
        let (a, b) = (self.sensitivity(), self.specificity());
        if a == 0.0 {
            return Ok(0.0);
        }
        let arg = libm::fabs(j * phi - b + 1.0);
        if arg == 0.0 {
            return Err(Error::LogSingularity { prevalence: phi });
        }
        Ok(a * ((b - 1.0) * libm::log(arg) + j * phi) / (j * j))
    }
}

/// Closed-form and numerical area under `ρ` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AucReport {
    pub auc_closed: f64,
    pub auc_numeric: f64,
    /// `|auc_closed − auc_numeric|`
    pub residual: f64,
    pub screening_coefficient: f64,
}

/// `∫₀¹ ρ(φ) dφ`.
///
/// Closed form is `F(1) − F(0)` except on the constant and identity curves,
/// and near the identity line where the expansion
/// `(a/c)(1/2 − x/3 + x²/4 − …)` with `x = J/c` replaces it.
pub fn auc(t: &TestCharacteristics) -> Result<AucReport> {
    t.check_positive_results()?;
    let auc_closed = closed_form_auc(t)?;
    let auc_numeric = adaptive_simpson(
        |phi| t.ppv_continuous(phi),
        0.0,
        1.0,
        QUADRATURE_TOLERANCE,
        QUADRATURE_DEPTH,
    );
    Ok(AucReport {
        auc_closed,
        auc_numeric,
        residual: libm::fabs(auc_closed - auc_numeric),
        screening_coefficient: t.screening_coefficient(),
    })
}

fn closed_form_auc(t: &TestCharacteristics) -> Result<f64> {
    let (a, c, j) = (t.sensitivity(), t.fall_out(), t.youden_j());
    if libm::fabs(j) <= LINEAR_TOLERANCE {
        return Ok(0.5);
    }
    if c == 0.0 {
        // ρ ≡ 1 on (0, 1]
        return Ok(1.0);
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let x = j / c;
    if libm::fabs(x) < SERIES_CUTOFF {
        // Σ (−x)ᵏ / (k + 2); eight terms reach f64 precision for |x| < 1e−3.
        let series: f64 = (0..8)
            .rev()
            .fold(0.0, |acc, k| acc * -x + 1.0 / (k as f64 + 2.0));
        return Ok(a / c * series);
    }
    let upper = t.ppv_antiderivative(Prevalence::ONE)?;
    let lower = t.ppv_antiderivative(Prevalence::ZERO)?;
    Ok((upper - lower).clamp(0.0, 1.0))
}
