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

//! Models of runaway feedback loops in predictive policing.
//!
//! The crate has three layers:
//!
//! - [`urn`] and [`limits`]: generalized Polya urns with stochastic
//!   replacement rules, plus closed-form asymptotics (beta limits and
//!   point-mass limits from the associated quadratic).
//! - [`correction`]: rejection-filtered urn updates that restore
//!   convergence to the true incident rates, for discovered-only and
//!   mixed discovered/reported incident streams.
//! - [`sepp`] and [`sim`]: an aftershock (self-exciting point process)
//!   rate predictor with EM fitting, and the closed-loop daily
//!   deployment simulation that drives either engine and logs
//!   trajectories for analysis.
//!
//! Everything is deterministic given a master seed; replications run in
//! parallel on independent derived streams.

pub mod correction;
pub mod limits;
pub mod report;
pub mod rng;
pub mod sepp;
pub mod sim;
pub mod stats;
pub mod urn;

pub use correction::{horvitz_weight, CorrectionMode};
pub use limits::{DeterministicMatrix2, LimitResult, MixedParams};
pub use sepp::{EmConfig, Event, SeppModel};
pub use sim::{RunLog, ScenarioConfig};
pub use urn::{AdditionSpec, DecayMode, DecayPolicy, RegionId, ReplacementRule, UrnState};
