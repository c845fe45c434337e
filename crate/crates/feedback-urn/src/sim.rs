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

//! Closed-loop daily deployment simulation.
//!
//! Each simulated day: predict (urn fractions or fitted aftershock
//! rates), deploy one officer probabilistically, generate true
//! incidents, and feed the (optionally rejection-filtered) incident
//! records back into the training state. Replications run on
//! independent RNG streams derived from the scenario's master seed, so
//! logs are byte-identical across re-runs and thread counts.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use thiserror::Error;

use crate::correction::{
    corrected_step_discovered, corrected_step_mixed, uncorrected_step_mixed, CorrectionMode,
    GatingMode, StepOutcome,
};
use crate::rng::rep_rng;
use crate::sepp::{fit_em, generate_events, predict_rates, EmConfig, Event, SeppError};
use crate::urn::{AdditionSpec, DecayPolicy, RegionId, UrnError, UrnState};

/// Log-format version written as the first (comment) line of every CSV.
pub const CSV_SCHEMA_VERSION: &str = "# feedback-urn v1";

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid scenario config: {0}")]
    Config(String),
    #[error(transparent)]
    Urn(#[from] UrnError),
    #[error(transparent)]
    Sepp(#[from] SeppError),
    #[error("csv schema mismatch: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Urn,
    Sepp,
}

/// Which incident streams feed the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncidentMode {
    DiscoveredOnly,
    Mixed { w_d: f64, w_r: f64 },
}

/// How a true daily rate is realized as an urn addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdditionKind {
    /// Poisson incident counts per visit (rates may exceed 1).
    #[default]
    Poisson,
    /// One incident with probability rate; requires rate <= 1.
    Bernoulli,
    /// Exactly `rate` ball-equivalents per visit.
    Deterministic,
}

impl AdditionKind {
    fn spec(self, rate: f64) -> AdditionSpec {
        match self {
            AdditionKind::Poisson => AdditionSpec::Poisson(rate),
            AdditionKind::Bernoulli => AdditionSpec::Bernoulli(rate),
            AdditionKind::Deterministic => AdditionSpec::Deterministic(rate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionCfg {
    pub label: String,
    /// Prior belief mass (urn balls / warmup incident share).
    pub prior_mass: f64,
    /// True daily incident rate.
    pub rate: f64,
}

/// One experiment definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub regions: Vec<RegionCfg>,
    pub engine: Engine,
    pub incident_mode: IncidentMode,
    pub correction: CorrectionMode,
    pub horizon_days: u32,
    pub reps: u32,
    pub master_seed: u64,
    /// Trailing training window; required by the Sepp engine.
    #[serde(default)]
    pub training_window_days: Option<u32>,
    /// Per-round ball decay; urn engine only.
    #[serde(default)]
    pub decay: Option<DecayPolicy>,
    /// Realized addition distribution for urn updates.
    #[serde(default)]
    pub addition: AdditionKind,
    /// Rejection granularity for multi-incident batches (urn engine).
    #[serde(default)]
    pub gating: GatingMode,
    /// Reuse the previous day's fit as the EM starting point.
    #[serde(default)]
    pub warm_start: bool,
    #[serde(default = "default_em_max_iters")]
    pub em_max_iters: usize,
    #[serde(default = "default_em_rel_tolerance")]
    pub em_rel_tolerance: f64,
}

fn default_em_max_iters() -> usize {
    150
}

fn default_em_rel_tolerance() -> f64 {
    1e-5
}

impl ScenarioConfig {
    /// An urn-engine scenario with paper-style defaults.
    #[allow(clippy::too_many_arguments)]
    pub fn urn(
        name: impl Into<String>,
        regions: Vec<RegionCfg>,
        incident_mode: IncidentMode,
        correction: CorrectionMode,
        horizon_days: u32,
        reps: u32,
        decay: Option<DecayPolicy>,
        master_seed: u64,
    ) -> Self {
        Self {
            name: name.into(),
            regions,
            engine: Engine::Urn,
            incident_mode,
            correction,
            horizon_days,
            reps,
            master_seed,
            training_window_days: None,
            decay,
            addition: AdditionKind::Poisson,
            gating: GatingMode::Batch,
            warm_start: false,
            em_max_iters: default_em_max_iters(),
            em_rel_tolerance: default_em_rel_tolerance(),
        }
    }

    /// An aftershock-predictor scenario.
    #[allow(clippy::too_many_arguments)]
    pub fn sepp(
        name: impl Into<String>,
        regions: Vec<RegionCfg>,
        incident_mode: IncidentMode,
        correction: CorrectionMode,
        horizon_days: u32,
        reps: u32,
        training_window_days: u32,
        master_seed: u64,
    ) -> Self {
        Self {
            name: name.into(),
            regions,
            engine: Engine::Sepp,
            incident_mode,
            correction,
            horizon_days,
            reps,
            master_seed,
            training_window_days: Some(training_window_days),
            decay: None,
            addition: AdditionKind::Poisson,
            gating: GatingMode::Batch,
            warm_start: false,
            em_max_iters: default_em_max_iters(),
            em_rel_tolerance: default_em_rel_tolerance(),
        }
    }

    pub fn n_regions(&self) -> usize {
        self.regions.len()
    }

    pub fn true_rates(&self) -> Vec<f64> {
        self.regions.iter().map(|r| r.rate).collect()
    }

    pub fn prior_masses(&self) -> Vec<f64> {
        self.regions.iter().map(|r| r.prior_mass).collect()
    }

    /// The fair deployment share of region 0: rate_0 / sum(rates).
    pub fn lambda_star(&self) -> f64 {
        let total: f64 = self.regions.iter().map(|r| r.rate).sum();
        self.regions[0].rate / total
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |msg: String| Err(SimError::Config(msg));
        if self.name.is_empty() {
            return fail("scenario name is empty".into());
        }
        if self.regions.len() < 2 {
            return fail(format!("need at least 2 regions, got {}", self.regions.len()));
        }
        for (i, a) in self.regions.iter().enumerate() {
            if a.label.is_empty() {
                return fail(format!("region {i} has an empty label"));
            }
            if !(a.prior_mass.is_finite() && a.prior_mass >= 0.0) {
                return fail(format!("region {} prior mass {}", a.label, a.prior_mass));
            }
            if !(a.rate.is_finite() && a.rate >= 0.0) {
                return fail(format!("region {} rate {}", a.label, a.rate));
            }
            for b in &self.regions[..i] {
                if a.label == b.label {
                    return fail(format!("duplicate region label {}", a.label));
                }
            }
        }
        if self.regions.iter().map(|r| r.prior_mass).sum::<f64>() <= 0.0 {
            return fail("prior masses sum to zero".into());
        }
        if self.horizon_days < 1 {
            return fail("horizon_days must be >= 1".into());
        }
        if self.reps < 1 {
            return fail("reps must be >= 1".into());
        }
        if let IncidentMode::Mixed { w_d, w_r } = self.incident_mode {
            if !(0.0..=1.0).contains(&w_d) || !(0.0..=1.0).contains(&w_r) {
                return fail(format!("incident weights out of range: w_d={w_d} w_r={w_r}"));
            }
            if (w_d + w_r - 1.0).abs() > 1e-9 {
                return fail(format!("incident weights must sum to 1, got {}", w_d + w_r));
            }
        }
        if self.correction == CorrectionMode::MixedRejection
            && matches!(self.incident_mode, IncidentMode::DiscoveredOnly)
        {
            return fail("mixed_rejection requires the mixed incident mode".into());
        }
        if self.addition == AdditionKind::Bernoulli && self.regions.iter().any(|r| r.rate > 1.0) {
            return fail("bernoulli additions require rates <= 1".into());
        }
        match self.engine {
            Engine::Urn => {
                if self.training_window_days.is_some() {
                    return fail("training_window_days only applies to the sepp engine".into());
                }
            }
            Engine::Sepp => {
                if self.training_window_days.is_none() {
                    return fail("sepp engine requires training_window_days".into());
                }
                if self.decay.is_some() {
                    return fail("decay only applies to the urn engine".into());
                }
            }
        }
        Ok(())
    }
}

/// One logged simulation day.
#[derive(Debug, Clone, PartialEq)]
pub struct DayRecord {
    pub rep: u32,
    pub day: u32,
    pub deployed: u32,
    /// Urn engine: region-0 mass fraction after the day's update.
    /// Sepp engine: the deployment probability used for the day.
    pub frac_or_prob: f64,
    /// Urn engine: per-region masses after the day.
    /// Sepp engine: per-region predicted rates for the day.
    pub rates: Vec<f64>,
    /// Realized discovered incidents (pre-filter), per region; nonzero
    /// only for the deployed region.
    pub discovered: Vec<f64>,
    /// Realized reported incidents per region (zero in discovered-only
    /// mode).
    pub reported: Vec<f64>,
    /// Whether the day's discovered batch survived the filter (always
    /// true when uncorrected).
    pub accepted: bool,
}

/// Per-day, per-rep trajectory records for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct RunLog {
    pub scenario: String,
    pub n_regions: usize,
    pub records: Vec<DayRecord>,
}

impl RunLog {
    /// Final-day `frac_or_prob`, one entry per rep in rep order.
    pub fn terminal_values(&self) -> Vec<f64> {
        let last_day = self.records.iter().map(|r| r.day).max().unwrap_or(0);
        self.day_values(last_day)
    }

    /// Values of `frac_or_prob` on a given day, in rep order.
    pub fn day_values(&self, day: u32) -> Vec<f64> {
        self.records.iter().filter(|r| r.day == day).map(|r| r.frac_or_prob).collect()
    }

    pub fn n_days(&self) -> u32 {
        self.records.iter().map(|r| r.day + 1).max().unwrap_or(0)
    }

    fn header(&self) -> Vec<String> {
        let mut cols = vec![
            "rep".to_string(),
            "day".to_string(),
            "deployed".to_string(),
            "frac_or_prob".to_string(),
        ];
        for i in 0..self.n_regions {
            cols.push(format!("rate_{i}"));
        }
        for i in 0..self.n_regions {
            cols.push(format!("disc_{i}"));
        }
        for i in 0..self.n_regions {
            cols.push(format!("rep_{i}"));
        }
        cols.push("accepted".to_string());
        cols
    }

    /// Writes the versioned CSV representation.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<(), SimError> {
        writeln!(w, "{CSV_SCHEMA_VERSION}")?;
        writeln!(w, "{}", self.header().join(","))?;
        for r in &self.records {
            let mut fields: Vec<String> = vec![
                r.rep.to_string(),
                r.day.to_string(),
                r.deployed.to_string(),
                format!("{}", r.frac_or_prob),
            ];
            fields.extend(r.rates.iter().map(|v| format!("{v}")));
            fields.extend(r.discovered.iter().map(|v| format!("{v}")));
            fields.extend(r.reported.iter().map(|v| format!("{v}")));
            fields.push(r.accepted.to_string());
            writeln!(w, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, SimError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    /// Reads a CSV produced by [`RunLog::write_csv`]. The scenario name
    /// is not stored in the file; pass it in (usually the file stem).
    pub fn read_csv<R: BufRead>(reader: R, scenario: impl Into<String>) -> Result<Self, SimError> {
        let mut lines = reader.lines();
        let header = loop {
            match lines.next() {
                Some(line) => {
                    let line = line?;
                    if line.starts_with('#') || line.trim().is_empty() {
                        continue;
                    }
                    break line;
                }
                None => return Err(SimError::Schema("empty file".into())),
            }
        };
        let cols: Vec<&str> = header.split(',').collect();
        let fixed = ["rep", "day", "deployed", "frac_or_prob"];
        if cols.len() < 8 || cols[..4] != fixed || cols.last() != Some(&"accepted") {
            return Err(SimError::Schema(format!("unexpected header {header:?}")));
        }
        let n_regions = (cols.len() - 5) / 3;
        if 5 + 3 * n_regions != cols.len() {
            return Err(SimError::Schema(format!("unexpected column count {}", cols.len())));
        }
        for (i, name) in cols[4..4 + n_regions].iter().enumerate() {
            if *name != format!("rate_{i}") {
                return Err(SimError::Schema(format!("missing column rate_{i}, found {name}")));
            }
        }

        let mut records = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols.len() {
                return Err(SimError::Schema(format!(
                    "line {}: expected {} fields, got {}",
                    lineno + 3,
                    cols.len(),
                    fields.len()
                )));
            }
            let parse_f = |s: &str, col: &str| -> Result<f64, SimError> {
                s.parse::<f64>()
                    .map_err(|_| SimError::Schema(format!("bad value {s:?} in column {col}")))
            };
            let parse_u = |s: &str, col: &str| -> Result<u32, SimError> {
                s.parse::<u32>()
                    .map_err(|_| SimError::Schema(format!("bad value {s:?} in column {col}")))
            };
            let rates = fields[4..4 + n_regions]
                .iter()
                .map(|s| parse_f(s, "rate"))
                .collect::<Result<Vec<_>, _>>()?;
            let discovered = fields[4 + n_regions..4 + 2 * n_regions]
                .iter()
                .map(|s| parse_f(s, "disc"))
                .collect::<Result<Vec<_>, _>>()?;
            let reported = fields[4 + 2 * n_regions..4 + 3 * n_regions]
                .iter()
                .map(|s| parse_f(s, "rep"))
                .collect::<Result<Vec<_>, _>>()?;
            records.push(DayRecord {
                rep: parse_u(fields[0], "rep")?,
                day: parse_u(fields[1], "day")?,
                deployed: parse_u(fields[2], "deployed")?,
                frac_or_prob: parse_f(fields[3], "frac_or_prob")?,
                rates,
                discovered,
                reported,
                accepted: match fields[cols.len() - 1] {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(SimError::Schema(format!(
                            "bad value {other:?} in column accepted"
                        )))
                    }
                },
            });
        }
        Ok(RunLog { scenario: scenario.into(), n_regions, records })
    }
}

/// Runs an urn-engine scenario: one urn round per day per rep, with the
/// configured incident mode and correction, then decay.
pub fn run_urn_scenario(cfg: &ScenarioConfig) -> Result<RunLog, SimError> {
    cfg.validate()?;
    if cfg.engine != Engine::Urn {
        return Err(SimError::Config("run_urn_scenario requires engine = urn".into()));
    }
    let n = cfg.n_regions();
    let specs: Vec<AdditionSpec> = cfg.regions.iter().map(|r| cfg.addition.spec(r.rate)).collect();
    let decay = cfg.decay.unwrap_or(DecayPolicy::none());

    let per_rep: Result<Vec<Vec<DayRecord>>, SimError> = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(cfg.master_seed, rep as u64);
            let mut state = UrnState::new(cfg.prior_masses())?;
            let mut records = Vec::with_capacity(cfg.horizon_days as usize);
            for day in 0..cfg.horizon_days {
                let outcome = urn_day(&mut state, cfg, &specs, &mut rng)?;
                decay.apply(&mut state, &mut rng)?;
                let mut discovered = vec![0.0; n];
                discovered[outcome.deployed.index()] = outcome.discovered;
                let mut reported = outcome.reported.clone();
                reported.resize(n, 0.0);
                records.push(DayRecord {
                    rep,
                    day,
                    deployed: outcome.deployed.index() as u32,
                    frac_or_prob: state.fraction(RegionId(0)),
                    rates: state.masses().to_vec(),
                    discovered,
                    reported,
                    accepted: outcome.accepted,
                });
            }
            Ok(records)
        })
        .collect();

    Ok(RunLog {
        scenario: cfg.name.clone(),
        n_regions: n,
        records: per_rep?.into_iter().flatten().collect(),
    })
}

fn urn_day(
    state: &mut UrnState,
    cfg: &ScenarioConfig,
    specs: &[AdditionSpec],
    rng: &mut impl rand::Rng,
) -> Result<StepOutcome, UrnError> {
    match (cfg.incident_mode, cfg.correction) {
        (IncidentMode::DiscoveredOnly, CorrectionMode::None) => {
            let deployed = state.draw(rng)?;
            let amount = specs[deployed.index()].realize(rng);
            if amount > 0.0 {
                state.add(deployed, amount);
            }
            state.bump_step();
            Ok(StepOutcome { deployed, discovered: amount, accepted: true, reported: Vec::new() })
        }
        (IncidentMode::DiscoveredOnly, _) => {
            corrected_step_discovered(state, specs, cfg.gating, rng)
        }
        (IncidentMode::Mixed { w_d, w_r }, CorrectionMode::None) => {
            uncorrected_step_mixed(state, specs, specs, w_d, w_r, rng)
        }
        (IncidentMode::Mixed { w_d, w_r }, _) => {
            corrected_step_mixed(state, specs, specs, w_d, w_r, cfg.gating, rng)
        }
    }
}

/// Synthesizes the initial training history for the Sepp engine: one
/// training window of daily Poisson counts, at rates that split the
/// true total rate by prior mass.
pub fn warmup_history(cfg: &ScenarioConfig, rng: &mut impl rand::Rng) -> Vec<Event> {
    let window = cfg.training_window_days.unwrap_or(0);
    if window == 0 {
        return Vec::new();
    }
    let prior_total: f64 = cfg.regions.iter().map(|r| r.prior_mass).sum();
    let rate_total: f64 = cfg.regions.iter().map(|r| r.rate).sum();
    let rates: Vec<f64> =
        cfg.regions.iter().map(|r| rate_total * r.prior_mass / prior_total).collect();
    let mut events = Vec::new();
    for day in 0..window {
        let t = -(window as f64) + day as f64 + 0.5;
        let counts = generate_events(&rates, rng);
        for (region, &c) in counts.iter().enumerate() {
            if c > 0 {
                events.push(Event::weighted(RegionId(region), t, c as f64));
            }
        }
    }
    events
}

/// Runs a Sepp-engine scenario: daily refit on the trailing window,
/// probabilistic deployment by predicted-rate share, Poisson ground
/// truth, and correction-filtered training-set appends.
pub fn run_sepp_scenario(cfg: &ScenarioConfig) -> Result<RunLog, SimError> {
    cfg.validate()?;
    if cfg.engine != Engine::Sepp {
        return Err(SimError::Config("run_sepp_scenario requires engine = sepp".into()));
    }
    let n = cfg.n_regions();
    let window_days = cfg.training_window_days.expect("validated") as f64;
    let true_rates = cfg.true_rates();
    let (w_d, w_r) = match cfg.incident_mode {
        IncidentMode::DiscoveredOnly => (1.0, 0.0),
        IncidentMode::Mixed { w_d, w_r } => (w_d, w_r),
    };

    let per_rep: Result<Vec<Vec<DayRecord>>, SimError> = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = rep_rng(cfg.master_seed, rep as u64);
            let mut events = warmup_history(cfg, &mut rng);
            let mut histories: Vec<Vec<Event>> = vec![Vec::new(); n];
            for ev in &events {
                histories[ev.region.index()].push(*ev);
            }
            let mut em_cfg = EmConfig {
                max_iters: cfg.em_max_iters,
                rel_tolerance: cfg.em_rel_tolerance,
                ..EmConfig::default()
            };
            let mut prev_rates: Option<Vec<f64>> = None;
            let mut records = Vec::with_capacity(cfg.horizon_days as usize);

            for day in 0..cfg.horizon_days {
                let t = day as f64;
                let window = (t - window_days, t);
                let lo = events.partition_point(|e| e.time <= window.0);
                let rates = match fit_em(&events[lo..], n, window, &em_cfg) {
                    Ok(fit) => {
                        if cfg.warm_start {
                            em_cfg.mu0 = Some(fit.model.mu.clone());
                            em_cfg.theta0 = fit.model.theta;
                            em_cfg.omega0 = fit.model.omega;
                        }
                        let hists: Vec<&[Event]> = histories
                            .iter()
                            .map(|h| {
                                let lo = h.partition_point(|e| e.time <= window.0);
                                &h[lo..]
                            })
                            .collect();
                        predict_rates(&fit.model, &hists, t)?
                    }
                    Err(SeppError::EmptyWindow(_, _)) => {
                        log::warn!(
                            "{} rep {rep} day {day}: no events in window; using fallback rates",
                            cfg.name
                        );
                        prev_rates.clone().unwrap_or_else(|| vec![1.0; n])
                    }
                    Err(e) => return Err(e.into()),
                };

                let total: f64 = rates.iter().sum();
                let p0 = if total > 0.0 { rates[0] / total } else { 1.0 / n as f64 };
                // Deploy by predicted-rate share: Bernoulli(p) for two
                // regions, categorical in general.
                let deployed = {
                    let u = rng.random::<f64>();
                    let mut acc = 0.0;
                    let mut pick = n - 1;
                    for (i, &r) in rates.iter().enumerate() {
                        acc += if total > 0.0 { r / total } else { 1.0 / n as f64 };
                        if u < acc {
                            pick = i;
                            break;
                        }
                    }
                    RegionId(pick)
                };

                let truth = generate_events(&true_rates, &mut rng);
                let reported =
                    if w_r > 0.0 { generate_events(&true_rates, &mut rng) } else { vec![0u64; n] };

                // Input filter: keep the discovered batch with
                // probability equal to the unvisited share of the
                // predicted rates.
                let accepted = if cfg.correction.is_corrected() {
                    let p_other = if total > 0.0 {
                        1.0 - rates[deployed.index()] / total
                    } else {
                        1.0 - 1.0 / n as f64
                    };
                    rng.random::<f64>() < p_other
                } else {
                    true
                };

                let t_event = t + 0.5;
                let disc_count = truth[deployed.index()];
                if accepted && disc_count > 0 && w_d > 0.0 {
                    let ev = Event::weighted(deployed, t_event, w_d * disc_count as f64);
                    events.push(ev);
                    histories[deployed.index()].push(ev);
                }
                if w_r > 0.0 {
                    for (region, &c) in reported.iter().enumerate() {
                        if c > 0 {
                            let ev = Event::weighted(RegionId(region), t_event, w_r * c as f64);
                            events.push(ev);
                            histories[region].push(ev);
                        }
                    }
                }

                let mut discovered = vec![0.0; n];
                discovered[deployed.index()] = disc_count as f64;
                records.push(DayRecord {
                    rep,
                    day,
                    deployed: deployed.index() as u32,
                    frac_or_prob: p0,
                    rates: rates.clone(),
                    discovered,
                    reported: reported.iter().map(|&c| c as f64).collect(),
                    accepted,
                });
                prev_rates = Some(rates);
            }
            Ok(records)
        })
        .collect();

    Ok(RunLog {
        scenario: cfg.name.clone(),
        n_regions: n,
        records: per_rep?.into_iter().flatten().collect(),
    })
}

/// Dispatches on the configured engine.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunLog, SimError> {
    match cfg.engine {
        Engine::Urn => run_urn_scenario(cfg),
        Engine::Sepp => run_sepp_scenario(cfg),
    }
}
