//! Discrete-time screening paradox: each round a share of the population is
//! screened, detected cases are treated, prevalence falls, and the test's
//! positive predictive value falls with it.
//!
//! The dynamics are a single-compartment geometric decay with no incidence
//! and a constant population:
//!
//! ```text
//! φₜ₊₁ = φₜ · (1 − a·τ·cₛ)
//! ```
//!
//! where `a` is sensitivity, `τ` treatment efficacy and `cₛ` screening
//! coverage.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::screening::{probability, Prevalence, TestCharacteristics};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxScenario {
    test: TestCharacteristics,
    initial_prevalence: f64,
    treatment_efficacy: f64,
    screening_coverage: f64,
    rounds: u32,
}

impl ParadoxScenario {
    pub fn new(
        test: TestCharacteristics,
        initial_prevalence: f64,
        treatment_efficacy: f64,
        screening_coverage: f64,
        rounds: u32,
    ) -> Result<Self> {
        let initial_prevalence = probability("initial_prevalence", initial_prevalence)?;
        if initial_prevalence == 0.0 || initial_prevalence == 1.0 {
            return Err(Error::InvalidScenario {
                field: "initial_prevalence",
                reason: "must lie strictly between 0 and 1",
            });
        }
        if rounds == 0 {
            return Err(Error::InvalidScenario {
                field: "rounds",
                reason: "must be at least 1",
            });
        }
        Ok(Self {
            test,
            initial_prevalence,
            treatment_efficacy: probability("treatment_efficacy", treatment_efficacy)?,
            screening_coverage: probability("screening_coverage", screening_coverage)?,
            rounds,
        })
    }

    pub fn test(&self) -> &TestCharacteristics {
        &self.test
    }

    pub fn initial_prevalence(&self) -> f64 {
        self.initial_prevalence
    }

    pub fn treatment_efficacy(&self) -> f64 {
        self.treatment_efficacy
    }

    pub fn screening_coverage(&self) -> f64 {
        self.screening_coverage
    }

    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Fraction of the diseased pool removed per round, `a·τ·cₛ`.
    pub fn removal_rate(&self) -> f64 {
        self.test.sensitivity() * self.treatment_efficacy * self.screening_coverage
    }

    /// One round of screening and treatment.
    pub fn step(&self, prevalence: f64) -> f64 {
        prevalence * (1.0 - self.removal_rate())
    }

    pub fn run(&self) -> Result<ParadoxTrajectory> {
        let threshold = self.test.prevalence_threshold()?;
        let mut series = Vec::with_capacity(self.rounds as usize + 1);
        let mut phi = self.initial_prevalence;
        for round in 0..=self.rounds {
            if round > 0 {
                phi = self.step(phi);
            }
            series.push(TrajectoryPoint {
                round,
                prevalence: phi,
                ppv: self.test.ppv(Prevalence::clamped(phi))?,
            });
        }
        let crossing_round = threshold.and_then(|phi_e| {
            series
                .iter()
                .find(|point| point.prevalence < phi_e)
                .map(|point| point.round)
        });
        Ok(ParadoxTrajectory {
            series,
            crossing_round,
            threshold,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub round: u32,
    pub prevalence: f64,
    pub ppv: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParadoxTrajectory {
    /// Rounds `0..=rounds`, starting from the initial prevalence.
    pub series: Vec<TrajectoryPoint>,
    /// First round whose prevalence is strictly below the threshold.
    pub crossing_round: Option<u32>,
    pub threshold: Option<f64>,
}
