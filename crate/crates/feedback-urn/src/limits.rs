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

//! Closed-form asymptotics for two-color generalized urns.
//!
//! For a deterministic replacement matrix ((a, b), (c, d)) the fraction
//! of A-colored balls converges almost surely: to a Beta(n_A, n_B) draw
//! in the standard-Polya case (a = d, b = c = 0), otherwise to the root
//! of
//!
//! ```text
//! f(x) = (c + d - a - b) x^2 + (a - 2c - d) x + c
//! ```
//!
//! at which f' < 0. The mixed discovered/reported matrix specializes
//! this to a quadratic in the reported weight R = w_r (r_A + r_B) and
//! the discovered differential Delta_d = w_d (d_B - d_A), with the
//! kappa = R / Delta_d change of variables and the large-kappa
//! approximation x* -> lambda* R / (R + Delta_d).
//!
//! These limits are the ground truth the simulation modules are checked
//! against.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative epsilon below which a quadratic's leading coefficient is
/// treated as zero; also used for weight-sum validation.
const REL_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum LimitsError {
    #[error("no root in [0,1] with negative derivative; matrix outside the point-mass regime")]
    NoValidRoot,
    #[error("all replacement entries are zero")]
    DegenerateMatrix,
    #[error("both reported and discovered rates are degenerate")]
    DegenerateRates,
    #[error("negative radicand: parameters outside the derivation's validity")]
    NegativeRadicand,
    #[error("division by zero: R + delta_d = 0")]
    DivisionByZero,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// A 2x2 deterministic replacement matrix; row = sampled color,
/// column = added color.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeterministicMatrix2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl DeterministicMatrix2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, LimitsError> {
        for v in [a, b, c, d] {
            if !v.is_finite() || v < 0.0 {
                return Err(LimitsError::InvalidParams(format!(
                    "matrix entries must be finite and non-negative, got {v}"
                )));
            }
        }
        if a <= 0.0 && b <= 0.0 && c <= 0.0 && d <= 0.0 {
            return Err(LimitsError::DegenerateMatrix);
        }
        Ok(Self { a, b, c, d })
    }

    fn scale(&self) -> f64 {
        self.a.max(self.b).max(self.c).max(self.d)
    }
}

/// The asymptotic law of the region-A fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitResult {
    PointMass { x_star: f64 },
    BetaLimit { alpha: f64, beta: f64 },
}

/// Asymptotic fraction of A-colored balls for a deterministic 2x2
/// replacement matrix started from positive counts.
pub fn renlund_limit(
    m: &DeterministicMatrix2,
    initial_a: f64,
    initial_b: f64,
) -> Result<LimitResult, LimitsError> {
    if !(initial_a > 0.0 && initial_b > 0.0 && initial_a.is_finite() && initial_b.is_finite()) {
        return Err(LimitsError::InvalidParams(format!(
            "initial counts must be positive, got ({initial_a}, {initial_b})"
        )));
    }
    let scale = m.scale();
    if scale <= 0.0 {
        return Err(LimitsError::DegenerateMatrix);
    }
    let eps = REL_EPS * scale;

    // Standard-Polya regime: equal diagonal, empty off-diagonal.
    if m.b.abs() <= eps && m.c.abs() <= eps && (m.a - m.d).abs() <= eps {
        return Ok(LimitResult::BetaLimit { alpha: initial_a, beta: initial_b });
    }

    let qa = m.c + m.d - m.a - m.b;
    let qb = m.a - 2.0 * m.c - m.d;
    let qc = m.c;
    let f = |x: f64| (qa * x + qb) * x + qc;
    let fp = |x: f64| 2.0 * qa * x + qb;

    let mut candidates: Vec<f64> = Vec::with_capacity(2);
    if qa.abs() <= eps {
        // Numerically a line. Outside the beta regime qb = -(b + c) < 0.
        if qb.abs() <= eps {
            return Err(LimitsError::NoValidRoot);
        }
        candidates.push(-qc / qb);
    } else {
        // Stable quadratic roots: larger-magnitude root from the
        // citardauq pairing, the other from the product.
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        let sq = disc.sqrt();
        let q = -0.5 * (qb + qb.signum() * sq);
        if q == 0.0 {
            candidates.push(-qb / (2.0 * qa));
        } else {
            candidates.push(q / qa);
            candidates.push(qc / q);
        }
    }

    let in_unit = |x: f64| (-1e-9..=1.0 + 1e-9).contains(&x);
    let mut valid: Vec<f64> = candidates
        .iter()
        .copied()
        .filter(|&x| in_unit(x) && fp(x) < 0.0)
        .map(|x| x.clamp(0.0, 1.0))
        .collect();
    valid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);

    match valid.len() {
        0 => Err(LimitsError::NoValidRoot),
        1 => {
            debug_assert!(f(valid[0]).abs() <= 1e-7 * scale.max(1.0));
            Ok(LimitResult::PointMass { x_star: valid[0] })
        }
        _ => {
            // A numerically degenerate double root; the attracting root
            // is unique in exact arithmetic.
            let x = valid
                .into_iter()
                .min_by(|a, b| (a - 0.5).abs().total_cmp(&(b - 0.5).abs()))
                .unwrap();
            log::warn!("degenerate root pair for {m:?}; picked x*={x}");
            Ok(LimitResult::PointMass { x_star: x })
        }
    }
}

/// Rates and weights of the mixed discovered/reported urn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixedParams {
    w_d: f64,
    w_r: f64,
    d_a: f64,
    d_b: f64,
    r_a: f64,
    r_b: f64,
}

impl MixedParams {
    pub fn new(
        w_d: f64,
        w_r: f64,
        d_a: f64,
        d_b: f64,
        r_a: f64,
        r_b: f64,
    ) -> Result<Self, LimitsError> {
        if !(0.0..=1.0).contains(&w_d) || !(0.0..=1.0).contains(&w_r) {
            return Err(LimitsError::InvalidParams(format!(
                "weights must lie in [0,1], got w_d={w_d} w_r={w_r}"
            )));
        }
        if (w_d + w_r - 1.0).abs() > REL_EPS {
            return Err(LimitsError::InvalidParams(format!(
                "weights must sum to 1, got {}",
                w_d + w_r
            )));
        }
        for v in [d_a, d_b, r_a, r_b] {
            if !v.is_finite() || v < 0.0 {
                return Err(LimitsError::InvalidParams(format!(
                    "rates must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self { w_d, w_r, d_a, d_b, r_a, r_b })
    }

    pub fn w_d(&self) -> f64 {
        self.w_d
    }

    pub fn w_r(&self) -> f64 {
        self.w_r
    }

    pub fn discovered_rates(&self) -> (f64, f64) {
        (self.d_a, self.d_b)
    }

    pub fn reported_rates(&self) -> (f64, f64) {
        (self.r_a, self.r_b)
    }

    /// Total weight of reported incidents, R = w_r (r_A + r_B).
    pub fn reported_weight(&self) -> f64 {
        self.w_r * (self.r_a + self.r_b)
    }

    /// Weighted discovered differential, Delta_d = w_d (d_B - d_A).
    pub fn delta_d(&self) -> f64 {
        self.w_d * (self.d_b - self.d_a)
    }

    /// The true relative reported rate r_A / (r_A + r_B).
    pub fn lambda_star(&self) -> f64 {
        self.r_a / (self.r_a + self.r_b)
    }

    /// kappa = R / Delta_d (infinite when Delta_d = 0).
    pub fn kappa(&self) -> f64 {
        self.reported_weight() / self.delta_d()
    }

    /// The uncorrected replacement matrix: the visited region logs
    /// weighted discovered plus weighted reported incidents, the other
    /// region only its weighted reported incidents.
    pub fn replacement_matrix(&self) -> Result<DeterministicMatrix2, LimitsError> {
        DeterministicMatrix2::new(
            self.w_d * self.d_a + self.w_r * self.r_a,
            self.w_r * self.r_b,
            self.w_r * self.r_a,
            self.w_d * self.d_b + self.w_r * self.r_b,
        )
    }

    fn rate_scale(&self) -> f64 {
        self.d_a.max(self.d_b).max(self.r_a).max(self.r_b)
    }
}

/// Limiting A-fraction of the uncorrected mixed urn.
///
/// Solved through the general quadratic on the mixed replacement
/// matrix, which is valid for either sign of the discovered
/// differential; the closed form in (R, Delta_d) is cross-checked in
/// debug builds whenever Delta_d > 0.
pub fn mixed_limit(p: &MixedParams) -> Result<f64, LimitsError> {
    let scale = p.rate_scale();
    if scale <= 0.0 {
        return Err(LimitsError::DegenerateRates);
    }
    let eps = REL_EPS * scale;
    let delta_d = p.delta_d();
    if delta_d.abs() <= eps {
        // Linear regime: additions do not depend on the visit, so the
        // urn tracks the reported split exactly.
        if p.reported_weight() <= eps {
            return Err(LimitsError::DegenerateRates);
        }
        return Ok(p.w_r * p.r_a / p.reported_weight());
    }
    let matrix = p.replacement_matrix().map_err(|e| match e {
        LimitsError::DegenerateMatrix => LimitsError::DegenerateRates,
        other => other,
    })?;
    match renlund_limit(&matrix, 1.0, 1.0)? {
        LimitResult::PointMass { x_star } => {
            if delta_d > 0.0 {
                let closed = closed_form_eq1(p);
                debug_assert!(
                    (closed - x_star).abs() < 1e-9,
                    "closed form {closed} disagrees with quadratic {x_star}"
                );
            }
            Ok(x_star)
        }
        LimitResult::BetaLimit { .. } => Err(LimitsError::InvalidParams(
            "mixed matrix degenerated to the standard-Polya regime".into(),
        )),
    }
}

/// x* = nu - sqrt(nu^2 - w_r r_A / Delta_d), nu = 1/2 + R / (2 Delta_d),
/// evaluated through the root product to avoid cancellation.
fn closed_form_eq1(p: &MixedParams) -> f64 {
    let delta_d = p.delta_d();
    let nu = 0.5 + p.reported_weight() / (2.0 * delta_d);
    let prod = p.w_r * p.r_a / delta_d;
    let rad = (nu * nu - prod).max(0.0);
    if prod == 0.0 {
        nu - rad.sqrt()
    } else {
        prod / (nu + rad.sqrt())
    }
}

/// x* = (1 + kappa)/2 - sqrt(((1 + kappa)/2)^2 - lambda* kappa).
///
/// Equals `mixed_limit` whenever Delta_d > 0 and kappa = R / Delta_d.
/// Values kappa <= 0 are outside the derivation's regime; they are
/// evaluated as written and flagged with a warning.
pub fn kappa_form(lambda_star: f64, kappa: f64) -> Result<f64, LimitsError> {
    if !lambda_star.is_finite() || !kappa.is_finite() {
        return Err(LimitsError::InvalidParams(format!(
            "lambda* and kappa must be finite, got ({lambda_star}, {kappa})"
        )));
    }
    if !(0.0..=1.0).contains(&lambda_star) {
        log::warn!("lambda* = {lambda_star} outside [0,1]; outside the derivation's regime");
    }
    let nu = 0.5 * (1.0 + kappa);
    let rad = nu * nu - lambda_star * kappa;
    if rad < 0.0 {
        return Err(LimitsError::NegativeRadicand);
    }
    if kappa <= 0.0 {
        log::warn!("kappa = {kappa} <= 0 is outside the derivation's regime");
        return Ok(nu - rad.sqrt());
    }
    let prod = lambda_star * kappa;
    if prod == 0.0 {
        Ok(nu - rad.sqrt())
    } else {
        Ok(prod / (nu + rad.sqrt()))
    }
}

/// Large-kappa limit of the distorted fraction:
/// lambda* R / (R + Delta_d).
pub fn large_kappa_approx(lambda_star: f64, r: f64, delta_d: f64) -> Result<f64, LimitsError> {
    if r + delta_d == 0.0 {
        return Err(LimitsError::DivisionByZero);
    }
    Ok(lambda_star * r / (r + delta_d))
}
