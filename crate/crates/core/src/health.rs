//! Preventive health treatment.
//!
//! The infection risk is either `θ̲` or `θ̄`; adopting the treatment (`a = 1`)
//! costs `c` and cuts the risk to `(1 − α)θ`; falling ill costs `ς`:
//!
//! ```text
//! u(a, θ) = (1 − a)(−ςθ) + a(−(1 − α)θς − c)
//! ```
//!
//! Beliefs are the probability of the high-risk state, so adoption is the
//! correct action in the high state and the generic 2×2 machinery applies
//! directly. Non-adoption carries both the best payoff and the larger
//! payoff spread, which makes it the action a wishful receiver leans toward.

use crate::belief::DecisionProblem;
use crate::binary::BinaryPayoffs;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HealthParams {
    /// Severity `ς` of the illness.
    pub sigma: f64,
    /// Cost of the treatment.
    pub c: f64,
    /// Efficacy: probability that the treatment works.
    pub alpha: f64,
    pub theta_low: f64,
    pub theta_high: f64,
    pub rho: f64,
}

impl HealthParams {
    pub fn validate(&self) -> Result<()> {
        let HealthParams { sigma, c, alpha, theta_low, theta_high, rho } = *self;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(sigma > 0.0 && sigma.is_finite()) {
            return bad(format!("severity must be positive, got {sigma}"));
        }
        if !(c > 0.0 && c.is_finite()) {
            return bad(format!("cost must be positive, got {c}"));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return bad(format!("efficacy must lie in [0, 1], got {alpha}"));
        }
        if !(theta_low > 0.0 && theta_low < theta_high && theta_high < 1.0) {
            return bad(format!(
                "risks must satisfy 0 < theta_low < theta_high < 1, got ({theta_low}, {theta_high})"
            ));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return bad(format!("rho must be positive and finite, got {rho}"));
        }
        if !(sigma * alpha * theta_low < c && c < sigma * alpha * theta_high) {
            return bad(format!(
                "no trade-off: need sigma*alpha*theta_low < c < sigma*alpha*theta_high \
                 ({} < {c} < {})",
                sigma * alpha * theta_low,
                sigma * alpha * theta_high
            ));
        }
        Ok(())
    }

    pub fn utility(&self, adopt: bool, theta: f64) -> f64 {
        if adopt {
            -(1.0 - self.alpha) * theta * self.sigma - self.c
        } else {
            -self.sigma * theta
        }
    }

    /// Closed-form Bayesian cutoff `(c − αθ̲ς) / (α(θ̄ − θ̲)ς)`.
    pub fn mu_b_closed_form(&self) -> f64 {
        (self.c - self.alpha * self.theta_low * self.sigma)
            / (self.alpha * (self.theta_high - self.theta_low) * self.sigma)
    }

    /// Closed-form wishful cutoff, evaluated without any shift.
    pub fn mu_w_closed_form(&self) -> f64 {
        let HealthParams { sigma: s, c, alpha: a, theta_low: lo, theta_high: hi, rho: r } = *self;
        let num = (-r * lo * s).exp() - (r * (-(1.0 - a) * lo * s - c)).exp();
        let den = num + (r * (-(1.0 - a) * hi * s - c)).exp() - (-r * hi * s).exp();
        num / den
    }
}

/// The health problem in its generic forms together with both cutoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct HealthModel {
    pub params: HealthParams,
    pub payoffs: BinaryPayoffs,
    pub mu_b: f64,
    pub mu_w: f64,
    pub problem: DecisionProblem,
}

pub fn health_problem(params: HealthParams) -> Result<HealthModel> {
    params.validate()?;
    let payoffs = BinaryPayoffs::new(
        params.utility(false, params.theta_low),
        params.utility(false, params.theta_high),
        params.utility(true, params.theta_low),
        params.utility(true, params.theta_high),
    )?;
    let problem = DecisionProblem::with_labels(
        vec!["low_risk".into(), "high_risk".into()],
        vec!["no_adoption".into(), "adoption".into()],
        vec![
            vec![payoffs.u_low_0, payoffs.u_high_0],
            vec![payoffs.u_low_1, payoffs.u_high_1],
        ],
        vec![0.0, 1.0],
        params.rho,
    )?;
    Ok(HealthModel {
        params,
        payoffs,
        mu_b: payoffs.mu_b(),
        mu_w: payoffs.mu_w(params.rho),
        problem,
    })
}

impl HealthModel {
    /// Motivated belief about the high-risk state at posterior `mu`:
    ///
    /// ```text
    /// η(μ) = μ / (μ + (1−μ) e^{ρς(θ̄−θ̲)})                        if μ < μ^W
    ///        μ e^{−ρ(1−α)ς(θ̄−θ̲)} / (μ e^{−ρ(1−α)ς(θ̄−θ̲)} + 1 − μ)  otherwise
    /// ```
    pub fn belief(&self, mu: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::InvalidParameter(format!("posterior must lie in [0, 1], got {mu}")));
        }
        let HealthParams { sigma, alpha, theta_low, theta_high, rho, .. } = self.params;
        let spread = sigma * (theta_high - theta_low);
        if mu < self.mu_w {
            Ok(mu / (mu + (1.0 - mu) * (rho * spread).exp()))
        } else {
            let k = (-rho * (1.0 - alpha) * spread).exp();
            Ok(mu * k / (mu * k + (1.0 - mu)))
        }
    }

    /// Probability of adoption under the sender-optimal policy at prior
    /// `mu0`, as `(wishful, bayesian)`.
    pub fn adoption_probability(&self, mu0: f64) -> Result<(f64, f64)> {
        if !(mu0 > 0.0 && mu0 < 1.0) {
            return Err(Error::InvalidParameter(format!("prior must lie in (0, 1), got {mu0}")));
        }
        Ok(((mu0 / self.mu_w).min(1.0), (mu0 / self.mu_b).min(1.0)))
    }
}

/// [`HealthModel::belief`] for one-off use.
pub fn health_belief(mu: f64, params: HealthParams) -> Result<f64> {
    health_problem(params)?.belief(mu)
}

/// [`HealthModel::adoption_probability`] for one-off use.
pub fn adoption_probability(mu0: f64, params: HealthParams) -> Result<(f64, f64)> {
    health_problem(params)?.adoption_probability(mu0)
}

/// Parameters of the illustrated case: ς=2, c=0.5, α=0.8, θ̲=0.1, θ̄=0.9, ρ=2.
pub fn reference_params() -> HealthParams {
    HealthParams { sigma: 2.0, c: 0.5, alpha: 0.8, theta_low: 0.1, theta_high: 0.9, rho: 2.0 }
}
