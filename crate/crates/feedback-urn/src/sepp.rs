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

//! Aftershock (self-exciting point process) crime-rate model.
//!
//! Region r's intensity is
//!
//! ```text
//! lambda_r(t) = mu_r + sum_{t_i < t} theta omega exp(-omega (t - t_i))
//! ```
//!
//! with a per-region background rate and shared aftershock productivity
//! theta and decay omega. Parameters are fit by latent-branching EM:
//! each event is attributed fractionally to the background or to an
//! earlier event of the same region, and the M-step re-estimates
//! (mu_r, theta, omega) from those responsibilities in closed form.
//!
//! Events may carry fractional weights; a weight-w event counts as w
//! events in both the intensity and the likelihood. The log-likelihood
//! uses the branching compensator (every event's full offspring mass
//! theta w), under which the closed-form M-step is exactly monotone;
//! the boundary truncation it ignores is O(1/(omega T)).
//!
//! Exponential sums are evaluated with the O(n) forward recursion over
//! time-grouped events (same-time events do not excite each other).

use rand::Rng as _;
use rand_distr::{Distribution, Exp, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::urn::RegionId;

#[derive(Debug, Error, PartialEq)]
pub enum SeppError {
    #[error("history contains an event at or after the evaluation time {0}")]
    FutureEvent(f64),
    #[error("events must be sorted by time")]
    UnsortedEvents,
    #[error("window ({0}, {1}] contains no events")]
    EmptyWindow(f64, f64),
    #[error("EM produced a non-finite parameter at iteration {0}")]
    NonFinite(usize),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

/// A logged incident.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub region: RegionId,
    /// Days since the scenario epoch.
    pub time: f64,
    /// Training weight; 1.0 for an ordinary incident.
    pub weight: f64,
}

impl Event {
    pub fn new(region: RegionId, time: f64) -> Self {
        Self { region, time, weight: 1.0 }
    }

    pub fn weighted(region: RegionId, time: f64, weight: f64) -> Self {
        Self { region, time, weight }
    }
}

/// Aftershock intensity parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeppModel {
    /// Background rate per region, incidents/day.
    pub mu: Vec<f64>,
    /// Aftershock productivity (expected children per event).
    pub theta: f64,
    /// Aftershock decay rate, 1/days.
    pub omega: f64,
}

impl SeppModel {
    pub fn new(mu: Vec<f64>, theta: f64, omega: f64) -> Result<Self, SeppError> {
        if mu.is_empty() || mu.iter().any(|&m| !m.is_finite() || m < 0.0) {
            return Err(SeppError::InvalidModel(format!("background rates {mu:?}")));
        }
        if !theta.is_finite() || theta < 0.0 {
            return Err(SeppError::InvalidModel(format!("theta {theta}")));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(SeppError::InvalidModel(format!("omega {omega}")));
        }
        if theta >= 1.0 {
            log::warn!("theta = {theta} >= 1: supercritical aftershock cascade");
        }
        Ok(Self { mu, theta, omega })
    }

    pub fn n_regions(&self) -> usize {
        self.mu.len()
    }
}

/// Intensity of `region` at time `t` given that region's time-sorted
/// event history, all strictly before `t`.
pub fn intensity(
    model: &SeppModel,
    region: RegionId,
    t: f64,
    history: &[Event],
) -> Result<f64, SeppError> {
    let mu = model.mu[region.index()];
    if history.is_empty() {
        return Ok(mu);
    }
    let mut sum = 0.0; // sum of w_j exp(-omega (last - t_j)), j <= last index
    let mut last = history[0].time;
    for ev in history {
        if ev.time >= t {
            return Err(SeppError::FutureEvent(ev.time));
        }
        if ev.time < last {
            return Err(SeppError::UnsortedEvents);
        }
        sum = sum * (-model.omega * (ev.time - last)).exp() + ev.weight;
        last = ev.time;
    }
    Ok(mu + model.theta * model.omega * sum * (-model.omega * (t - last)).exp())
}

/// Per-region intensities at time `t`; `histories[r]` holds region r's
/// sorted events.
pub fn predict_rates(
    model: &SeppModel,
    histories: &[&[Event]],
    t: f64,
) -> Result<Vec<f64>, SeppError> {
    debug_assert_eq!(histories.len(), model.n_regions());
    histories
        .iter()
        .enumerate()
        .map(|(r, h)| intensity(model, RegionId(r), t, h))
        .collect()
}

/// EM fitting configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmConfig {
    pub max_iters: usize,
    /// Relative parameter change below which iteration stops.
    pub rel_tolerance: f64,
    pub theta0: f64,
    pub omega0: f64,
    /// Initial background rates; defaults to per-region event weight
    /// over the window length.
    pub mu0: Option<Vec<f64>>,
}

impl Default for EmConfig {
    fn default() -> Self {
        // Interior optima converge in tens of iterations; the theta -> 0
        // boundary (no real excitation in the data) needs thousands.
        Self { max_iters: 2000, rel_tolerance: 1e-6, theta0: 0.5, omega0: 0.1, mu0: None }
    }
}

/// A fitted model plus the per-iteration log-likelihood trace.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: SeppModel,
    /// Log-likelihood of the parameters entering each iteration;
    /// non-decreasing by the EM guarantee.
    pub log_likelihood: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Events of one region collapsed into same-timestamp groups.
struct RegionGroups {
    times: Vec<f64>,
    weights: Vec<f64>,
}

impl RegionGroups {
    fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn group_events(
    events: &[Event],
    n_regions: usize,
    window: (f64, f64),
) -> Result<Vec<RegionGroups>, SeppError> {
    let mut groups: Vec<RegionGroups> = (0..n_regions)
        .map(|_| RegionGroups { times: Vec::new(), weights: Vec::new() })
        .collect();
    let mut last = f64::NEG_INFINITY;
    for ev in events {
        if ev.time < last {
            return Err(SeppError::UnsortedEvents);
        }
        last = ev.time;
        if ev.time <= window.0 || ev.time > window.1 || ev.weight <= 0.0 {
            continue;
        }
        let g = &mut groups[ev.region.index()];
        if g.times.last() == Some(&ev.time) {
            *g.weights.last_mut().unwrap() += ev.weight;
        } else {
            g.times.push(ev.time);
            g.weights.push(ev.weight);
        }
    }
    Ok(groups)
}

/// Fits `(mu_r, theta, omega)` to the events inside `(window.0,
/// window.1]` by latent-branching EM.
///
/// Regions without events in the window get `mu_r = 0` and contribute
/// nothing to the shared theta/omega estimates.
pub fn fit_em(
    events: &[Event],
    n_regions: usize,
    window: (f64, f64),
    config: &EmConfig,
) -> Result<FitResult, SeppError> {
    let t_len = window.1 - window.0;
    if !(t_len > 0.0) {
        return Err(SeppError::EmptyWindow(window.0, window.1));
    }
    let groups = group_events(events, n_regions, window)?;
    let total_weight: f64 = groups.iter().map(|g| g.total_weight()).sum();
    if total_weight <= 0.0 {
        return Err(SeppError::EmptyWindow(window.0, window.1));
    }

    let mut mu: Vec<f64> = match &config.mu0 {
        Some(m0) => m0.clone(),
        None => groups.iter().map(|g| g.total_weight() / t_len).collect(),
    };
    let mut theta = config.theta0;
    let mut omega = config.omega0;

    let mut ll_trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..config.max_iters {
        iterations = iter + 1;
        let mut ll = -theta * total_weight;
        let mut bg = vec![0.0; n_regions];
        let mut trig = 0.0;
        let mut trig_gap = 0.0;

        for (r, g) in groups.iter().enumerate() {
            ll -= mu[r] * t_len;
            // State after group g: s = sum_{h<=g} w_h e^{-omega dt},
            // sb = same with a (tau_g - tau_h) factor; the strictly
            // earlier sums for the next group decay these by the gap.
            let mut s = 0.0;
            let mut sb = 0.0;
            let mut prev_t = f64::NAN;
            for (&t, &w) in g.times.iter().zip(&g.weights) {
                let (a, b) = if s > 0.0 {
                    let delta = t - prev_t;
                    let decay = (-omega * delta).exp();
                    (decay * s, decay * (delta * s + sb))
                } else {
                    (0.0, 0.0)
                };
                let lambda = mu[r] + theta * omega * a;
                ll += w * lambda.ln();
                let inv = w / lambda;
                bg[r] += mu[r] * inv;
                trig += theta * omega * a * inv;
                trig_gap += theta * omega * b * inv;
                s = a + w;
                sb = b;
                prev_t = t;
            }
        }
        ll_trace.push(ll);
        if !ll.is_finite() {
            return Err(SeppError::NonFinite(iter));
        }

        let new_mu: Vec<f64> = bg.iter().map(|&s| s / t_len).collect();
        let (new_theta, new_omega) = if trig > 0.0 && trig_gap > 0.0 {
            (trig / total_weight, trig / trig_gap)
        } else {
            // No triggering mass left: homogeneous Poisson fit.
            (0.0, omega)
        };
        if new_mu.iter().any(|m| !m.is_finite())
            || !new_theta.is_finite()
            || !new_omega.is_finite()
            || new_omega <= 0.0
        {
            return Err(SeppError::NonFinite(iter));
        }

        let rel = |old: f64, new: f64| (new - old).abs() / old.abs().max(1e-12);
        let delta = mu
            .iter()
            .zip(&new_mu)
            .map(|(&o, &n)| rel(o, n))
            .fold(rel(theta, new_theta).max(rel(omega, new_omega)), f64::max);

        mu = new_mu;
        theta = new_theta;
        omega = new_omega;

        if delta < config.rel_tolerance {
            converged = true;
            break;
        }
    }

    Ok(FitResult {
        model: SeppModel { mu, theta, omega },
        log_likelihood: ll_trace,
        iterations,
        converged,
    })
}

/// Ground-truth daily incident counts: independent Poisson draws per
/// region (the true process is deliberately not self-exciting).
pub fn generate_events(rates: &[f64], rng: &mut impl rand::Rng) -> Vec<u64> {
    rates
        .iter()
        .map(|&l| {
            debug_assert!(l >= 0.0);
            if l <= 0.0 {
                0
            } else {
                Poisson::new(l).expect("non-negative rate").sample(rng) as u64
            }
        })
        .collect()
}

/// Samples the model's own process on `(window.0, window.1]` by the
/// branching construction: background events arrive Poisson(mu_r), and
/// every event spawns Poisson(theta) children at Exp(omega) lags.
/// Returns time-sorted unit-weight events.
pub fn sample_hawkes(
    model: &SeppModel,
    window: (f64, f64),
    rng: &mut impl rand::Rng,
) -> Vec<Event> {
    let t_len = window.1 - window.0;
    assert!(t_len > 0.0, "empty sampling window");
    let mut events: Vec<Event> = Vec::new();
    for (r, &mu) in model.mu.iter().enumerate() {
        if mu <= 0.0 {
            continue;
        }
        let n = Poisson::new(mu * t_len).expect("positive rate").sample(rng) as usize;
        let mut frontier: Vec<f64> =
            (0..n).map(|_| window.0 + rng.random::<f64>() * t_len).collect();
        while let Some(t) = frontier.pop() {
            events.push(Event::new(RegionId(r), t));
            if model.theta <= 0.0 {
                continue;
            }
            let kids = Poisson::new(model.theta).expect("positive theta").sample(rng) as usize;
            for _ in 0..kids {
                let lag = Exp::new(model.omega).expect("positive omega").sample(rng);
                let child = t + lag;
                if child <= window.1 {
                    frontier.push(child);
                }
            }
        }
    }
    events.sort_by(|x, y| x.time.total_cmp(&y.time));
    events
}
