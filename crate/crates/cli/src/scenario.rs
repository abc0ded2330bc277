//! Scenario files for the paradox simulator and trajectory output.

use std::io::{Read, Write};

use screening_curves::{ParadoxScenario, ParadoxTrajectory, TestCharacteristics};
use serde::Deserialize;

use crate::format::sig6_or_undefined;
use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub sensitivity: f64,
    pub specificity: f64,
    pub initial_prevalence: f64,
    pub treatment_efficacy: f64,
    pub screening_coverage: f64,
    pub rounds: u32,
}

pub fn read_scenario(input: impl Read) -> Result<ParadoxScenario, CliError> {
    let file: ScenarioFile =
        serde_json::from_reader(input).map_err(|e| CliError::Invalid(format!("scenario: {e}")))?;
    let test = TestCharacteristics::new(file.sensitivity, file.specificity)?;
    Ok(ParadoxScenario::new(
        test,
        file.initial_prevalence,
        file.treatment_efficacy,
        file.screening_coverage,
        file.rounds,
    )?)
}

/// `round,prevalence,ppv` with full precision.
pub fn write_trajectory(trajectory: &ParadoxTrajectory, out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["round", "prevalence", "ppv"])?;
    for p in &trajectory.series {
        w.write_record([
            p.round.to_string(),
            p.prevalence.to_string(),
            p.ppv.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn summary(trajectory: &ParadoxTrajectory) -> String {
    let crossing = trajectory
        .crossing_round
        .map_or_else(|| "none".to_string(), |r| r.to_string());
    format!(
        "threshold: {}, crossing: {crossing}",
        sig6_or_undefined(trajectory.threshold)
    )
}
