// Copyright 2026 The feedback-urn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Rejection-filtered urn updates.
//!
//! The uncorrected urn adds discovered incidents to whichever region
//! the draw deployed to, so the expected A-addition is proportional to
//! n_A lambda_A rather than lambda_A: a go-with-the-winner loop. The
//! fix draws a second ball before adding and keeps the incident batch
//! only if the second color differs from the deployed one. The
//! acceptance probability (1 - n_i / N) exactly cancels the deployment
//! bias: additions become proportional to the true rates, up to a
//! state-dependent factor common to all regions.
//!
//! In the mixed stream the same gate is applied to the discovered
//! incidents only; reported incidents are deployment-independent and
//! enter at their weight w_r for every region, which preserves the
//! lambda_A : lambda_B addition ratio at every urn state.

use serde::{Deserialize, Serialize};

use crate::urn::{AdditionSpec, RegionId, UrnError, UrnState};

/// Which update rule the simulation applies to training data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionMode {
    /// Feed incidents back unfiltered.
    None,
    /// Second-draw rejection on discovered incidents.
    DiscoveredRejection,
    /// Mixed-stream variant: the rejection gate applies to the
    /// discovered incidents, reported incidents pass through.
    MixedRejection,
}

impl CorrectionMode {
    pub fn is_corrected(self) -> bool {
        !matches!(self, CorrectionMode::None)
    }
}

/// How a rejection decision covers a multi-incident batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GatingMode {
    /// One second draw gates the whole day's discovered batch; the
    /// single deployment decision caused all of them.
    #[default]
    Batch,
    /// Every discovered incident gets its own second draw. Requires an
    /// integer batch; fractional batches fall back to batch gating.
    PerIncident,
}

/// Outcome of one corrected (or uncorrected-mixed) urn round.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub deployed: RegionId,
    /// Realized discovered incidents in the deployed region, pre-gate.
    pub discovered: f64,
    /// Whether any discovered mass survived the gate.
    pub accepted: bool,
    /// Realized reported incidents per region (empty when the stream
    /// has no reported component).
    pub reported: Vec<f64>,
}

/// One round of the corrected discovered-only urn.
///
/// Draws the deployment, realizes that region's incident batch, draws a
/// second ball, and adds the batch only if the second color differs.
/// Decay, if any, is the caller's job.
pub fn corrected_step_discovered(
    state: &mut UrnState,
    rates: &[AdditionSpec],
    gating: GatingMode,
    rng: &mut impl rand::Rng,
) -> Result<StepOutcome, UrnError> {
    debug_assert_eq!(rates.len(), state.n_regions());
    let deployed = state.draw(rng)?;
    let amount = rates[deployed.index()].realize(rng);
    let kept = gate_amount(state, deployed, amount, gating, rng)?;
    if kept > 0.0 {
        state.add(deployed, kept);
    }
    state.bump_step();
    Ok(StepOutcome {
        deployed,
        discovered: amount,
        accepted: kept > 0.0,
        reported: Vec::new(),
    })
}

/// One round of the corrected mixed urn.
///
/// The deployed region's discovered batch is weighted by `w_d` and
/// passes through the second-draw gate; every region's reported batch
/// enters at weight `w_r` unconditionally.
pub fn corrected_step_mixed(
    state: &mut UrnState,
    discovered: &[AdditionSpec],
    reported: &[AdditionSpec],
    w_d: f64,
    w_r: f64,
    gating: GatingMode,
    rng: &mut impl rand::Rng,
) -> Result<StepOutcome, UrnError> {
    mixed_step(state, discovered, reported, w_d, w_r, true, gating, rng)
}

/// One round of the uncorrected mixed urn: the visited region logs
/// weighted discovered plus weighted reported incidents, the other
/// regions their weighted reported incidents.
pub fn uncorrected_step_mixed(
    state: &mut UrnState,
    discovered: &[AdditionSpec],
    reported: &[AdditionSpec],
    w_d: f64,
    w_r: f64,
    rng: &mut impl rand::Rng,
) -> Result<StepOutcome, UrnError> {
    mixed_step(state, discovered, reported, w_d, w_r, false, GatingMode::Batch, rng)
}

#[allow(clippy::too_many_arguments)]
fn mixed_step(
    state: &mut UrnState,
    discovered: &[AdditionSpec],
    reported: &[AdditionSpec],
    w_d: f64,
    w_r: f64,
    gated: bool,
    gating: GatingMode,
    rng: &mut impl rand::Rng,
) -> Result<StepOutcome, UrnError> {
    debug_assert_eq!(discovered.len(), state.n_regions());
    debug_assert_eq!(reported.len(), state.n_regions());
    debug_assert!((w_d + w_r - 1.0).abs() < 1e-9);

    let deployed = state.draw(rng)?;
    let disc_amount = discovered[deployed.index()].realize(rng);
    let kept = if gated {
        gate_amount(state, deployed, disc_amount, gating, rng)?
    } else {
        disc_amount
    };
    let accepted = kept > 0.0;

    // Reject against the pre-addition state, then apply additions.
    if kept > 0.0 && w_d > 0.0 {
        state.add(deployed, w_d * kept);
    }
    let mut rep = Vec::new();
    if w_r > 0.0 {
        rep.reserve(reported.len());
        for (j, spec) in reported.iter().enumerate() {
            let amount = spec.realize(rng);
            rep.push(amount);
            if amount > 0.0 {
                state.add(RegionId(j), w_r * amount);
            }
        }
    }
    state.bump_step();
    Ok(StepOutcome { deployed, discovered: disc_amount, accepted, reported: rep })
}

/// Applies the second-draw rejection to `amount` discovered incidents,
/// returning the surviving amount. The second ball is drawn from the
/// same pre-addition state, with replacement, independently of the
/// deployment draw.
fn gate_amount(
    state: &UrnState,
    deployed: RegionId,
    amount: f64,
    gating: GatingMode,
    rng: &mut impl rand::Rng,
) -> Result<f64, UrnError> {
    let is_integer = amount.fract() == 0.0;
    match gating {
        GatingMode::PerIncident if is_integer && amount > 0.0 => {
            let mut kept = 0u64;
            for _ in 0..amount as u64 {
                if state.draw(rng)? != deployed {
                    kept += 1;
                }
            }
            Ok(kept as f64)
        }
        _ => {
            let second = state.draw(rng)?;
            Ok(if second != deployed { amount } else { 0.0 })
        }
    }
}

/// Importance weight of the Thompson–Horvitz alternative to rejection:
/// a discovered incident from a region deployed to with probability `p`
/// enters with weight 1/p.
pub fn horvitz_weight(deploy_prob: f64) -> Result<f64, UrnError> {
    if deploy_prob == 0.0 {
        return Err(UrnError::DivisionByZero);
    }
    if !(0.0..=1.0).contains(&deploy_prob) {
        return Err(UrnError::InvalidSpec(format!("deployment probability {deploy_prob}")));
    }
    Ok(1.0 / deploy_prob)
}
