//! Confusion-matrix ratios and the Bayes-derived predictive values.

use crate::error::{Error, Metric, Result};

pub(crate) fn probability(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange { field, value })
    }
}

/// Raw 2×2 counts of test outcome against condition status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConfusionMatrix {
    true_positives: u64,
    false_positives: u64,
    false_negatives: u64,
    true_negatives: u64,
}

impl ConfusionMatrix {
    /// Both the condition-present column (`tp + fn`) and the condition-absent
    /// column (`fp + tn`) must be non-empty so that sensitivity and specificity
    /// exist.
    pub fn new(
        true_positives: u64,
        false_positives: u64,
        false_negatives: u64,
        true_negatives: u64,
    ) -> Result<Self> {
        if true_positives + false_negatives == 0 {
            return Err(Error::UndefinedRatio(Metric::Sensitivity));
        }
        if false_positives + true_negatives == 0 {
            return Err(Error::UndefinedRatio(Metric::Specificity));
        }
        Ok(Self {
            true_positives,
            false_positives,
            false_negatives,
            true_negatives,
        })
    }

    pub fn true_positives(&self) -> u64 {
        self.true_positives
    }

    pub fn false_positives(&self) -> u64 {
        self.false_positives
    }

    pub fn false_negatives(&self) -> u64 {
        self.false_negatives
    }

    pub fn true_negatives(&self) -> u64 {
        self.true_negatives
    }

    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.false_negatives + self.true_negatives
    }

    /// Sensitivity and specificity estimated from the counts.
    pub fn characteristics(&self) -> TestCharacteristics {
        let m = metrics_from_counts(self);
        TestCharacteristics {
            sensitivity: m.sensitivity,
            specificity: m.specificity,
        }
    }
}

/// The five ratios of a confusion matrix. Prevalence, sensitivity and
/// specificity always exist for a valid matrix; the predictive values need a
/// non-empty test-positive (respectively test-negative) row.
#[derive(Debug, Clone, PartialEq)]
pub struct CountMetrics {
    pub prevalence: f64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub ppv: Result<f64>,
    pub npv: Result<f64>,
}

fn ratio(numerator: u64, denominator: u64, metric: Metric) -> Result<f64> {
    if denominator == 0 {
        Err(Error::UndefinedRatio(metric))
    } else {
        Ok(numerator as f64 / denominator as f64)
    }
}

pub fn metrics_from_counts(m: &ConfusionMatrix) -> CountMetrics {
    let (tp, fp, fneg, tn) = (
        m.true_positives,
        m.false_positives,
        m.false_negatives,
        m.true_negatives,
    );
    // The constructor guarantees non-empty columns, hence a non-zero total.
    CountMetrics {
        prevalence: (tp + fneg) as f64 / m.total() as f64,
        sensitivity: tp as f64 / (tp + fneg) as f64,
        specificity: tn as f64 / (tn + fp) as f64,
        ppv: ratio(tp, tp + fp, Metric::PositivePredictiveValue),
        npv: ratio(tn, fneg + tn, Metric::NegativePredictiveValue),
    }
}

/// A prevalence (pre-test probability) in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Prevalence(f64);

impl Prevalence {
    pub const ZERO: Prevalence = Prevalence(0.0);
    pub const ONE: Prevalence = Prevalence(1.0);

    pub fn new(value: f64) -> Result<Self> {
        probability("prevalence", value).map(Prevalence)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn clamped(value: f64) -> Self {
        Prevalence(value.clamp(0.0, 1.0))
    }
}

impl TryFrom<f64> for Prevalence {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Prevalence::new(value)
    }
}

/// Sensitivity `a` and specificity `b` of a binary test.
///
/// Everything else (screening coefficient, Youden's J, LR+) is derived on
/// demand, so the two stored values are the only source of truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestCharacteristics {
    sensitivity: f64,
    specificity: f64,
}

impl TestCharacteristics {
    pub fn new(sensitivity: f64, specificity: f64) -> Result<Self> {
        Ok(Self {
            sensitivity: probability("sensitivity", sensitivity)?,
            specificity: probability("specificity", specificity)?,
        })
    }

    pub fn sensitivity(&self) -> f64 {
        self.sensitivity
    }

    pub fn specificity(&self) -> f64 {
        self.specificity
    }

    /// False positive rate, `1 − b`.
    pub fn fall_out(&self) -> f64 {
        1.0 - self.specificity
    }

    /// `ε = a + b`, in `[0, 2]`.
    pub fn screening_coefficient(&self) -> f64 {
        self.sensitivity + self.specificity
    }

    /// `J = ε − 1`.
    pub fn youden_j(&self) -> f64 {
        self.sensitivity + self.specificity - 1.0
    }

    /// `a / (1 − b)`; `None` for a perfectly specific test.
    pub fn positive_likelihood_ratio(&self) -> Option<f64> {
        (self.specificity < 1.0).then(|| self.sensitivity / self.fall_out())
    }

    pub(crate) fn check_positive_results(&self) -> Result<()> {
        if self.sensitivity == 0.0 && self.specificity == 1.0 {
            Err(Error::NeverPositive)
        } else {
            Ok(())
        }
    }

    /// `aφ + (1 − b)(1 − φ)`, the probability of a positive result. Errors
    /// where it vanishes.
    pub(crate) fn positive_rate(&self, phi: f64) -> Result<f64> {
        self.check_positive_results()?;
        let d = self.sensitivity * phi + self.fall_out() * (1.0 - phi);
        if d > 0.0 {
            Ok(d)
        } else {
            Err(Error::UndefinedAt { prevalence: phi })
        }
    }

    /// Positive predictive value `ρ(φ)`.
    pub fn ppv(&self, prevalence: Prevalence) -> Result<f64> {
        let phi = prevalence.value();
        let d = self.positive_rate(phi)?;
        Ok((self.sensitivity * phi / d).min(1.0))
    }

    /// Negative predictive value `σ(φ) = b(1 − φ) / (b(1 − φ) + (1 − a)φ)`.
    pub fn npv(&self, prevalence: Prevalence) -> Result<f64> {
        if self.sensitivity == 1.0 && self.specificity == 0.0 {
            return Err(Error::NeverNegative);
        }
        let phi = prevalence.value();
        let true_neg = self.specificity * (1.0 - phi);
        let d = true_neg + (1.0 - self.sensitivity) * phi;
        if d > 0.0 {
            Ok((true_neg / d).min(1.0))
        } else {
            Err(Error::UndefinedAt { prevalence: phi })
        }
    }

    /// Inverts [`ppv`](Self::ppv): the prevalence at which the test reaches
    /// the given positive predictive value.
    pub fn prevalence_for_ppv(&self, ppv: f64) -> Result<Prevalence> {
        if !(ppv.is_finite() && ppv > 0.0 && ppv <= 1.0) {
            return Err(Error::OutOfRange {
                field: "ppv",
                value: ppv,
            });
        }
        if self.sensitivity == 0.0 {
            return Err(Error::UndefinedRatio(Metric::PositivePredictiveValue));
        }
        let c = self.fall_out();
        let d = self.sensitivity / ppv - self.sensitivity + c;
        if d <= 0.0 || (c == 0.0 && ppv < 1.0) {
            // b = 1 makes ρ ≡ 1 for every φ > 0.
            return Err(Error::Unattainable { ppv });
        }
        let phi = c / d;
        if (0.0..=1.0).contains(&phi) {
            Ok(Prevalence(phi))
        } else {
            Err(Error::Unattainable { ppv })
        }
    }

    /// `ρ(φ)` with 0/0 endpoints replaced by their one-sided limits. Only
    /// meaningful for a test that produces positives.
    pub(crate) fn ppv_continuous(&self, phi: f64) -> f64 {
        match self.positive_rate(phi) {
            Ok(d) => (self.sensitivity * phi / d).min(1.0),
            // b = 1 at φ = 0: ρ ≡ 1 on (0, 1]. a = 0 at φ = 1: ρ ≡ 0 on [0, 1).
            Err(_) if self.fall_out() == 0.0 => 1.0,
            Err(_) => 0.0,
        }
    }
}
