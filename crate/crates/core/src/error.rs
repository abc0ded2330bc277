use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// A ratio that can be computed from a confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Prevalence,
    Sensitivity,
    Specificity,
    PositivePredictiveValue,
    NegativePredictiveValue,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Prevalence => "prevalence",
            Metric::Sensitivity => "sensitivity",
            Metric::Specificity => "specificity",
            Metric::PositivePredictiveValue => "ppv",
            Metric::NegativePredictiveValue => "npv",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A probability-valued input outside `[0, 1]` (or not finite).
    OutOfRange { field: &'static str, value: f64 },
    /// A ratio whose denominator is zero for the given counts.
    UndefinedRatio(Metric),
    /// Sensitivity 0 and specificity 1: the test never reports a positive.
    NeverPositive,
    /// Sensitivity 1 and specificity 0: the test never reports a negative.
    NeverNegative,
    /// The predictive value is 0/0 at this particular prevalence.
    UndefinedAt { prevalence: f64 },
    /// No prevalence in `[0, 1]` yields the requested predictive value.
    Unattainable { ppv: f64 },
    /// The operation divides by Youden's J, which is (numerically) zero.
    LinearCurve,
    /// The logarithm in the antiderivative has a zero argument.
    LogSingularity { prevalence: f64 },
    /// The prevalence threshold is undefined at a point a finite difference needs.
    UndefinedThreshold,
    /// Sensitivity or specificity too close to 0 or 1 for a finite difference.
    NotInterior { field: &'static str, value: f64 },
    /// Curve sampling requires at least two rows.
    TooFewSamples(usize),
    /// A simulation parameter violates its constraint.
    InvalidScenario {
        field: &'static str,
        reason: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { field, value } => {
                write!(f, "{field} must be a probability in [0, 1], got {value}")
            }
            Error::UndefinedRatio(metric) => {
                write!(f, "{metric} is undefined: its denominator is zero")
            }
            Error::NeverPositive => f.write_str(
                "degenerate test: sensitivity 0 and specificity 1 never yield a positive result",
            ),
            Error::NeverNegative => f.write_str(
                "degenerate test: sensitivity 1 and specificity 0 never yield a negative result",
            ),
            Error::UndefinedAt { prevalence } => {
                write!(f, "predictive value is 0/0 at prevalence {prevalence}")
            }
            Error::Unattainable { ppv } => {
                write!(
                    f,
                    "no prevalence in [0, 1] gives a positive predictive value of {ppv}"
                )
            }
            Error::LinearCurve => {
                f.write_str("screening coefficient is 1: the curve is the identity line")
            }
            Error::LogSingularity { prevalence } => {
                write!(f, "antiderivative is singular at prevalence {prevalence}")
            }
            Error::UndefinedThreshold => {
                f.write_str("prevalence threshold is undefined in the neighbourhood")
            }
            Error::NotInterior { field, value } => {
                write!(
                    f,
                    "{field} = {value} is too close to the boundary of [0, 1]"
                )
            }
            Error::TooFewSamples(n) => write!(f, "a curve needs at least 2 samples, got {n}"),
            Error::InvalidScenario { field, reason } => write!(f, "{field}: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
