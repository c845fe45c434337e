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

//! Generalized Polya urn: state, proportional draws, stochastic
//! replacement rules, and per-round decay.
//!
//! One round: draw a ball (the color is the deployment decision),
//! replace it, realize the drawn color's row of the replacement matrix
//! as additions, then apply decay. Masses are non-negative reals so
//! that fractional and weighted additions are representable.

use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum UrnError {
    #[error("urn has zero total mass; cannot draw")]
    EmptyUrn,
    #[error("per-ball binomial decay requires integer masses, got {0}")]
    DecayModeMismatch(f64),
    #[error("invalid mass {0}: masses must be finite and non-negative")]
    InvalidMass(f64),
    #[error("invalid addition spec: {0}")]
    InvalidSpec(String),
    #[error("invalid replacement rule: {0}")]
    InvalidRule(String),
    #[error("horizon must be >= 1")]
    EmptyHorizon,
    #[error("division by zero")]
    DivisionByZero,
}

/// Index of a region (urn color).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionId(pub usize);

impl RegionId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Per-region ball masses plus the round counter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UrnState {
    masses: Vec<f64>,
    step: u64,
}

impl UrnState {
    pub fn new(masses: Vec<f64>) -> Result<Self, UrnError> {
        if masses.is_empty() {
            return Err(UrnError::InvalidRule("no regions".into()));
        }
        for &m in &masses {
            if !m.is_finite() || m < 0.0 {
                return Err(UrnError::InvalidMass(m));
            }
        }
        Ok(Self { masses, step: 0 })
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn n_regions(&self) -> usize {
        self.masses.len()
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Mass fraction of `region`; NaN when the urn is empty.
    pub fn fraction(&self, region: RegionId) -> f64 {
        self.masses[region.0] / self.total_mass()
    }

    pub fn add(&mut self, region: RegionId, amount: f64) {
        debug_assert!(amount >= 0.0);
        self.masses[region.0] += amount;
    }

    pub fn bump_step(&mut self) {
        self.step += 1;
    }

    /// Draws a region with probability proportional to its mass.
    ///
    /// The state is unchanged; errors with [`UrnError::EmptyUrn`] when
    /// the total mass is zero.
    pub fn draw(&self, rng: &mut impl rand::Rng) -> Result<RegionId, UrnError> {
        let total = self.total_mass();
        if total <= 0.0 {
            return Err(UrnError::EmptyUrn);
        }
        let u = rng.random::<f64>() * total;
        let mut acc = 0.0;
        for (i, &m) in self.masses.iter().enumerate() {
            acc += m;
            if u < acc {
                return Ok(RegionId(i));
            }
        }
        // u landed on the accumulated rounding edge; return the last
        // region with positive mass.
        let last = self
            .masses
            .iter()
            .rposition(|&m| m > 0.0)
            .expect("total mass positive");
        Ok(RegionId(last))
    }
}

/// What gets added to one color after a draw.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum AdditionSpec {
    /// Add exactly `v` balls (fractional allowed).
    Deterministic(f64),
    /// Add one ball with probability `p`.
    Bernoulli(f64),
    /// Add a Poisson(lambda) number of balls.
    Poisson(f64),
}

impl AdditionSpec {
    pub fn validate(&self) -> Result<(), UrnError> {
        match *self {
            AdditionSpec::Deterministic(v) if v.is_finite() && v >= 0.0 => Ok(()),
            AdditionSpec::Bernoulli(p) if (0.0..=1.0).contains(&p) => Ok(()),
            AdditionSpec::Poisson(l) if l.is_finite() && l >= 0.0 => Ok(()),
            other => Err(UrnError::InvalidSpec(format!("{other:?}"))),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            AdditionSpec::Deterministic(v) => v,
            AdditionSpec::Bernoulli(p) => p,
            AdditionSpec::Poisson(l) => l,
        }
    }

    /// Samples the realized number of balls to add.
    pub fn realize(&self, rng: &mut impl rand::Rng) -> f64 {
        match *self {
            AdditionSpec::Deterministic(v) => v,
            AdditionSpec::Bernoulli(p) => {
                if p > 0.0 && rng.random::<f64>() < p {
                    1.0
                } else {
                    0.0
                }
            }
            AdditionSpec::Poisson(l) => {
                if l <= 0.0 {
                    0.0
                } else {
                    Poisson::new(l).expect("validated lambda").sample(rng)
                }
            }
        }
    }
}

/// Replacement matrix: row = drawn color, column = color added.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplacementRule {
    matrix: Vec<Vec<AdditionSpec>>,
}

impl ReplacementRule {
    pub fn new(matrix: Vec<Vec<AdditionSpec>>) -> Result<Self, UrnError> {
        let n = matrix.len();
        if n == 0 {
            return Err(UrnError::InvalidRule("empty matrix".into()));
        }
        let mut any_positive = false;
        for row in &matrix {
            if row.len() != n {
                return Err(UrnError::InvalidRule(format!(
                    "matrix is not square: {n} rows, row of length {}",
                    row.len()
                )));
            }
            for spec in row {
                spec.validate()?;
                any_positive |= spec.mean() > 0.0;
            }
        }
        if !any_positive {
            return Err(UrnError::InvalidRule(
                "at least one entry must have positive expected addition".into(),
            ));
        }
        Ok(Self { matrix })
    }

    /// Diagonal rule: drawing color i adds `specs[i]` balls of color i.
    pub fn diagonal(specs: Vec<AdditionSpec>) -> Result<Self, UrnError> {
        let n = specs.len();
        let matrix = specs
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                (0..n)
                    .map(|j| if i == j { s } else { AdditionSpec::Deterministic(0.0) })
                    .collect()
            })
            .collect();
        Self::new(matrix)
    }

    /// The standard Polya urn: drawing a color adds one ball of it.
    pub fn standard_polya(n: usize) -> Self {
        Self::diagonal(vec![AdditionSpec::Deterministic(1.0); n]).expect("valid")
    }

    pub fn n_regions(&self) -> usize {
        self.matrix.len()
    }

    pub fn row(&self, drawn: RegionId) -> &[AdditionSpec] {
        &self.matrix[drawn.0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayMode {
    /// Remove Binomial(m, p_d) balls per color; masses must be integers.
    PerBallBinomial,
    /// Multiply every mass by (1 - p_d).
    ExpectedMultiplicative,
}

/// Per-round ball disappearance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayPolicy {
    pub p_d: f64,
    pub mode: DecayMode,
}

impl DecayPolicy {
    pub fn new(p_d: f64, mode: DecayMode) -> Result<Self, UrnError> {
        if !(0.0..=1.0).contains(&p_d) {
            return Err(UrnError::InvalidSpec(format!("decay probability {p_d}")));
        }
        Ok(Self { p_d, mode })
    }

    /// No decay; mode is irrelevant.
    pub fn none() -> Self {
        Self { p_d: 0.0, mode: DecayMode::ExpectedMultiplicative }
    }

    pub fn apply(&self, state: &mut UrnState, rng: &mut impl rand::Rng) -> Result<(), UrnError> {
        if self.p_d == 0.0 {
            return Ok(());
        }
        match self.mode {
            DecayMode::ExpectedMultiplicative => {
                for m in &mut state.masses {
                    *m *= 1.0 - self.p_d;
                }
            }
            DecayMode::PerBallBinomial => {
                for m in &mut state.masses {
                    let rounded = m.round();
                    if (*m - rounded).abs() > 1e-9 || rounded < 0.0 {
                        return Err(UrnError::DecayModeMismatch(*m));
                    }
                    let n = rounded as u64;
                    if n == 0 {
                        continue;
                    }
                    let removed = Binomial::new(n, self.p_d)
                        .expect("validated p_d")
                        .sample(rng);
                    *m = (n - removed) as f64;
                }
            }
        }
        Ok(())
    }
}

/// One urn round: draw, realize the drawn row's additions, decay.
///
/// Returns the drawn region. The drawn ball is replaced; additions land
/// before decay is applied.
pub fn step(
    state: &mut UrnState,
    rule: &ReplacementRule,
    decay: DecayPolicy,
    rng: &mut impl rand::Rng,
) -> Result<RegionId, UrnError> {
    debug_assert_eq!(state.n_regions(), rule.n_regions());
    let drawn = state.draw(rng)?;
    for (j, spec) in rule.row(drawn).iter().enumerate() {
        let amount = spec.realize(rng);
        if amount > 0.0 {
            state.masses[j] += amount;
        }
    }
    decay.apply(state, rng)?;
    state.step += 1;
    Ok(drawn)
}

/// Runs `horizon` rounds and records the region-0 mass fraction after
/// each one. Deterministic given the RNG state.
pub fn simulate(
    initial: &UrnState,
    rule: &ReplacementRule,
    decay: DecayPolicy,
    horizon: usize,
    rng: &mut impl rand::Rng,
) -> Result<Vec<f64>, UrnError> {
    if horizon == 0 {
        return Err(UrnError::EmptyHorizon);
    }
    let mut state = initial.clone();
    let mut trajectory = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        step(&mut state, rule, decay, rng)?;
        trajectory.push(state.fraction(RegionId(0)));
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{rep_rng, seeded};
    use approx::assert_relative_eq;

    fn bern(p: f64) -> AdditionSpec {
        AdditionSpec::Bernoulli(p)
    }

    fn det(v: f64) -> AdditionSpec {
        AdditionSpec::Deterministic(v)
    }

    fn pois(l: f64) -> AdditionSpec {
        AdditionSpec::Poisson(l)
    }

    #[test]
    fn draw_single_color_urn_is_degenerate() {
        let state = UrnState::new(vec![1.0, 0.0]).unwrap();
        let mut rng = seeded(0);
        for _ in 0..100 {
            assert_eq!(state.draw(&mut rng).unwrap(), RegionId(0));
        }
    }

    #[test]
    fn draw_matches_prior_mass_ratio() {
        let state = UrnState::new(vec![609.0, 379.0]).unwrap();
        let mut rng = seeded(1);
        let n = 1_000_000;
        let hits = (0..n)
            .filter(|_| state.draw(&mut rng).unwrap() == RegionId(0))
            .count();
        let freq = hits as f64 / n as f64;
        assert!((freq - 609.0 / 988.0).abs() < 0.002, "freq={freq}");
    }

    #[test]
    fn draw_symmetric_with_real_masses() {
        let state = UrnState::new(vec![2.5, 2.5]).unwrap();
        let mut rng = seeded(2);
        let n = 1_000_000;
        let hits = (0..n)
            .filter(|_| state.draw(&mut rng).unwrap() == RegionId(0))
            .count();
        let freq = hits as f64 / n as f64;
        assert!((freq - 0.5).abs() < 0.005, "freq={freq}");
    }

    #[test]
    fn draw_empty_urn_errors() {
        let state = UrnState::new(vec![0.0, 0.0]).unwrap();
        let mut rng = seeded(3);
        assert_eq!(state.draw(&mut rng).unwrap_err(), UrnError::EmptyUrn);
    }

    #[test]
    fn realize_deterministic_and_certain_bernoulli() {
        let mut rng = seeded(4);
        assert_relative_eq!(det(0.567).realize(&mut rng), 0.567);
        assert_relative_eq!(bern(1.0).realize(&mut rng), 1.0);
        assert_relative_eq!(bern(0.0).realize(&mut rng), 0.0);
    }

    #[test]
    fn realize_poisson_mean() {
        let mut rng = seeded(5);
        let spec = pois(3.69);
        let n = 1_000_000;
        let sum: f64 = (0..n).map(|_| spec.realize(&mut rng)).sum();
        let mean = sum / n as f64;
        assert!((mean - 3.69).abs() < 0.01, "mean={mean}");
    }

    #[test]
    fn step_standard_polya_reinforces_drawn_color() {
        let rule = ReplacementRule::standard_polya(2);
        let mut state = UrnState::new(vec![1.0, 1.0]).unwrap();
        let mut rng = seeded(6);
        let drawn = state.draw(&mut rng.clone()).unwrap();
        let got = step(&mut state, &rule, DecayPolicy::none(), &mut rng).unwrap();
        assert_eq!(got, drawn);
        assert_relative_eq!(state.masses()[drawn.0], 2.0);
        assert_relative_eq!(state.masses()[1 - drawn.0], 1.0);
        assert_eq!(state.step_count(), 1);
    }

    #[test]
    fn step_full_decay_empties_urn() {
        for mode in [DecayMode::ExpectedMultiplicative, DecayMode::PerBallBinomial] {
            let rule = ReplacementRule::standard_polya(2);
            let mut state = UrnState::new(vec![10.0, 10.0]).unwrap();
            let mut rng = seeded(7);
            let decay = DecayPolicy::new(1.0, mode).unwrap();
            step(&mut state, &rule, decay, &mut rng).unwrap();
            assert_eq!(state.masses(), &[0.0, 0.0]);
            assert_eq!(
                state.draw(&mut rng).unwrap_err(),
                UrnError::EmptyUrn,
                "mode {mode:?}"
            );
        }
    }

    #[test]
    fn binomial_decay_rejects_fractional_masses() {
        let rule = ReplacementRule::standard_polya(2);
        let mut state = UrnState::new(vec![1.5, 2.0]).unwrap();
        let mut rng = seeded(8);
        let decay = DecayPolicy::new(0.1, DecayMode::PerBallBinomial).unwrap();
        let err = step(&mut state, &rule, decay, &mut rng).unwrap_err();
        assert!(matches!(err, UrnError::DecayModeMismatch(_)));
    }

    /// Oracle: enumerate draw outcomes exactly. With additions before
    /// decay, E[delta total] = (M + sum_i p_i lambda_i)(1 - p_d) - M.
    #[test]
    fn step_mean_total_mass_change_matches_enumeration_oracle() {
        let masses = [609.0, 379.0];
        let lambdas = [3.69, 2.82];
        let p_d = 0.01;
        let total: f64 = masses.iter().sum();
        let expected_add: f64 = masses
            .iter()
            .zip(&lambdas)
            .map(|(&m, &l)| (m / total) * l)
            .sum();
        let oracle = (total + expected_add) * (1.0 - p_d) - total;

        let rule = ReplacementRule::diagonal(vec![pois(3.69), pois(2.82)]).unwrap();
        let decay = DecayPolicy::new(p_d, DecayMode::ExpectedMultiplicative).unwrap();
        let mut rng = seeded(9);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let mut state = UrnState::new(masses.to_vec()).unwrap();
            step(&mut state, &rule, decay, &mut rng).unwrap();
            sum += state.total_mass() - total;
        }
        let mc = sum / n as f64;
        assert!(
            (mc - oracle).abs() < 0.01 * oracle.abs(),
            "mc={mc} oracle={oracle}"
        );
    }

    #[test]
    fn simulate_one_step_standard_polya() {
        let rule = ReplacementRule::standard_polya(2);
        let initial = UrnState::new(vec![1.0, 1.0]).unwrap();
        for seed in 0..20 {
            let mut rng = seeded(seed);
            let traj = simulate(&initial, &rule, DecayPolicy::none(), 1, &mut rng).unwrap();
            assert_eq!(traj.len(), 1);
            let ok = (traj[0] - 1.0 / 3.0).abs() < 1e-12 || (traj[0] - 2.0 / 3.0).abs() < 1e-12;
            assert!(ok, "got {}", traj[0]);
        }
    }

    /// Identical rows make the additions state-independent, so the
    /// fraction settles at the region-0 share of the row.
    #[test]
    fn simulate_identical_rows_converges_to_row_share() {
        let row = vec![det(0.6), det(0.4)];
        let rule = ReplacementRule::new(vec![row.clone(), row]).unwrap();
        let initial = UrnState::new(vec![1.0, 1.0]).unwrap();
        let mut finals: Vec<f64> = (0..5)
            .map(|seed| {
                let mut rng = rep_rng(10, seed);
                *simulate(&initial, &rule, DecayPolicy::none(), 100_000, &mut rng)
                    .unwrap()
                    .last()
                    .unwrap()
            })
            .collect();
        finals.sort_by(|a, b| a.total_cmp(b));
        let median = finals[2];
        assert!((median - 0.6).abs() < 0.02, "median={median}");
    }

    /// With decay providing finite memory, the skewed Bernoulli urn
    /// settles on the higher-rate region almost every run.
    #[test]
    fn skewed_bernoulli_urn_with_decay_settles_on_higher_rate_region() {
        let rule = ReplacementRule::diagonal(vec![bern(0.10), bern(0.11)]).unwrap();
        let decay = DecayPolicy::new(0.001, DecayMode::ExpectedMultiplicative).unwrap();
        let initial = UrnState::new(vec![1.0, 1.0]).unwrap();
        let runs: usize = 200;
        let low = (0..runs)
            .filter(|&r| {
                let mut rng = rep_rng(11, r as u64);
                let traj = simulate(&initial, &rule, decay, 100_000, &mut rng).unwrap();
                *traj.last().unwrap() < 0.05
            })
            .count();
        assert!(
            low * 2 > runs,
            "only {low}/{runs} runs ended below 0.05"
        );
    }

    /// Without decay the same urn only drifts: the region-0 fraction
    /// falls like k^-(1 - lambda_A/lambda_B) in the addition count, far
    /// from settled at this horizon, but the direction is clear.
    #[test]
    fn skewed_bernoulli_urn_drifts_toward_higher_rate_region() {
        let rule = ReplacementRule::diagonal(vec![bern(0.10), bern(0.11)]).unwrap();
        let initial = UrnState::new(vec![1.0, 1.0]).unwrap();
        let mut finals: Vec<f64> = (0..200)
            .map(|r| {
                let mut rng = rep_rng(12, r);
                *simulate(&initial, &rule, DecayPolicy::none(), 100_000, &mut rng)
                    .unwrap()
                    .last()
                    .unwrap()
            })
            .collect();
        finals.sort_by(|a, b| a.total_cmp(b));
        let median = finals[100];
        assert!(median < 0.45, "median={median}");
    }

    #[test]
    fn simulate_is_deterministic_given_seed() {
        let rule = ReplacementRule::diagonal(vec![pois(1.3), pois(0.7)]).unwrap();
        let decay = DecayPolicy::new(0.01, DecayMode::ExpectedMultiplicative).unwrap();
        let initial = UrnState::new(vec![5.0, 3.0]).unwrap();
        let run = |seed| {
            let mut rng = seeded(seed);
            simulate(&initial, &rule, decay, 2_000, &mut rng).unwrap()
        };
        assert_eq!(run(13), run(13));
        assert_ne!(run(13), run(14));
    }

    /// Standard Polya limit law: the terminal fraction over many runs is
    /// a Beta(n_r, n_b) draw.
    #[test]
    fn standard_polya_fraction_follows_beta_limit() {
        use statrs::distribution::{Beta, ContinuousCDF};
        let rule = ReplacementRule::standard_polya(2);
        let initial = UrnState::new(vec![2.0, 3.0]).unwrap();
        let finals: Vec<f64> = (0..2000)
            .map(|r| {
                let mut rng = rep_rng(15, r);
                *simulate(&initial, &rule, DecayPolicy::none(), 10_000, &mut rng)
                    .unwrap()
                    .last()
                    .unwrap()
            })
            .collect();
        let beta = Beta::new(2.0, 3.0).unwrap();
        let d = crate::stats::ks_statistic(&finals, |x| beta.cdf(x));
        let p = crate::stats::ks_pvalue(finals.len(), d);
        assert!(p > 0.01, "KS rejected beta limit: D={d} p={p}");
    }

    /// A uniform-rate Bernoulli urn restricted to its addition events is
    /// a standard Polya urn slowed by the rate factor.
    #[test]
    fn uniform_bernoulli_urn_is_slowed_standard_polya() {
        let lambda = 0.3;
        let additions = 40;
        let runs = 2000;
        let rule = ReplacementRule::diagonal(vec![bern(lambda), bern(lambda)]).unwrap();

        let slowed: Vec<f64> = (0..runs)
            .map(|r| {
                let mut rng = rep_rng(16, r);
                let mut state = UrnState::new(vec![2.0, 3.0]).unwrap();
                let mut seen = 0;
                while seen < additions {
                    let before = state.total_mass();
                    step(&mut state, &rule, DecayPolicy::none(), &mut rng).unwrap();
                    if state.total_mass() > before {
                        seen += 1;
                    }
                }
                state.fraction(RegionId(0))
            })
            .collect();

        let polya = ReplacementRule::standard_polya(2);
        let reference: Vec<f64> = (0..runs)
            .map(|r| {
                let mut rng = rep_rng(17, r);
                let initial = UrnState::new(vec![2.0, 3.0]).unwrap();
                *simulate(&initial, &polya, DecayPolicy::none(), additions, &mut rng)
                    .unwrap()
                    .last()
                    .unwrap()
            })
            .collect();

        let (d, p) = crate::stats::ks_two_sample(&slowed, &reference);
        assert!(p > 0.01, "distributions differ: D={d} p={p}");
    }

    /// P(A-ball added | some ball added) = n_A l_A / (n_A l_A + n_B l_B)
    /// at a fixed state.
    #[test]
    fn conditional_addition_frequency_matches_closed_form() {
        let rule = ReplacementRule::diagonal(vec![bern(0.3), bern(0.6)]).unwrap();
        let mut rng = seeded(18);
        let (mut added_a, mut added_any) = (0u64, 0u64);
        for _ in 0..1_000_000 {
            let mut state = UrnState::new(vec![3.0, 7.0]).unwrap();
            step(&mut state, &rule, DecayPolicy::none(), &mut rng).unwrap();
            let masses = state.masses();
            if masses[0] > 3.0 {
                added_a += 1;
                added_any += 1;
            } else if masses[1] > 7.0 {
                added_any += 1;
            }
        }
        let freq = added_a as f64 / added_any as f64;
        let expected = (3.0 * 0.3) / (3.0 * 0.3 + 7.0 * 0.6);
        assert!((freq - expected).abs() < 0.005, "freq={freq} expected={expected}");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_spec() -> impl Strategy<Value = AdditionSpec> {
            prop_oneof![
                (0.0..5.0f64).prop_map(AdditionSpec::Deterministic),
                (0.0..=1.0f64).prop_map(AdditionSpec::Bernoulli),
                (0.0..4.0f64).prop_map(AdditionSpec::Poisson),
            ]
        }

        proptest! {
            #[test]
            fn masses_stay_non_negative_and_step_advances(
                seed in any::<u64>(),
                m0 in 0.1..50.0f64,
                m1 in 0.1..50.0f64,
                specs in proptest::collection::vec(arb_spec(), 4),
                p_d in 0.0..=1.0f64,
            ) {
                let matrix = vec![
                    vec![specs[0], specs[1]],
                    vec![specs[2], specs[3]],
                ];
                prop_assume!(matrix.iter().flatten().any(|s| s.mean() > 0.0));
                let rule = ReplacementRule::new(matrix).unwrap();
                let decay = DecayPolicy::new(p_d, DecayMode::ExpectedMultiplicative).unwrap();
                let mut state = UrnState::new(vec![m0, m1]).unwrap();
                let mut rng = seeded(seed);
                for s in 0..50 {
                    match step(&mut state, &rule, decay, &mut rng) {
                        Ok(_) => {
                            prop_assert!(state.masses().iter().all(|&m| m >= 0.0));
                            prop_assert_eq!(state.step_count(), s + 1);
                        }
                        Err(UrnError::EmptyUrn) => break,
                        Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
                    }
                }
            }
        }
    }
}
