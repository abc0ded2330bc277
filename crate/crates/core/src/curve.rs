//! Uniformly sampled screening curves, the data behind plots.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::screening::{Prevalence, TestCharacteristics};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub prevalence: f64,
    pub ppv: f64,
    pub slope: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    pub test: TestCharacteristics,
    pub threshold: Option<f64>,
    pub ppv_at_threshold: Option<f64>,
    pub rows: Vec<CurveRow>,
}

impl CurveSamples {
    pub fn screening_coefficient(&self) -> f64 {
        self.test.screening_coefficient()
    }
}

/// Samples `n ≥ 2` equally spaced prevalences on `[0, 1]`, both ends
/// included. Endpoints where ρ is 0/0 (perfect specificity at φ = 0, zero
/// sensitivity at φ = 1) take the one-sided limits of the constant curve.
pub fn sample_curve(t: &TestCharacteristics, n: usize) -> Result<CurveSamples> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    t.check_positive_results()?;
    let last = (n - 1) as f64;
    let rows = (0..n)
        .map(|i| {
            let phi = if i + 1 == n { 1.0 } else { i as f64 / last };
            let p = Prevalence::clamped(phi);
            match t.ppv(p) {
                Ok(ppv) => Ok(CurveRow {
                    prevalence: phi,
                    ppv,
                    slope: t.ppv_derivative(p)?,
                    curvature: t.curvature(p)?,
                }),
                Err(Error::UndefinedAt { .. }) => Ok(CurveRow {
                    prevalence: phi,
                    ppv: t.ppv_continuous(phi),
                    slope: 0.0,
                    curvature: 0.0,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CurveSamples {
        test: *t,
        threshold: t.prevalence_threshold()?,
        ppv_at_threshold: t.ppv_at_threshold()?,
        rows,
    })
}
