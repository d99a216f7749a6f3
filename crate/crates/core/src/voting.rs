//! Public persuasion of a wishful electorate.
//!
//! Voter `i` has partisan weight `βⁱ ∈ (0, 1)` and payoff
//! `u(x, θ) = xθβ + (1 − x)(1 − θ)(1 − β)` from the proposal `x` in state
//! `θ ∈ {0, 1}`. Each voter forms motivated beliefs as if their own vote were
//! decisive and votes sincerely, so voter `i` supports the proposal iff the
//! public posterior is at least their wishful cutoff `μ^W(βⁱ)`. The median
//! voter decides the election.

use crate::binary::{optimal_policy, BinaryPayoffs, ThresholdPolicy};
use crate::error::{Error, Result};
use crate::numeric::golden_section_max;

/// Grid resolution of the polarization maximizer.
const ARGMAX_GRID: usize = 10_000;

/// Payoffs of a voter with weight `beta`, in the order
/// `(u(0,θ=0), u(0,θ=1), u(1,θ=0), u(1,θ=1)) = (1−β, 0, 0, β)`.
pub fn voter_payoffs(beta: f64) -> Result<BinaryPayoffs> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "partisan weight must lie strictly inside (0, 1), got {beta}: at 0 or 1 one \
             action's payoff row is constant and the voter never switches"
        )));
    }
    BinaryPayoffs::new(1.0 - beta, 0.0, 0.0, beta)
}

/// `μ^W(β) = (e^{ρ(1−β)} − 1) / (e^{ρ(1−β)} + e^{ρβ} − 2)`.
pub fn voter_threshold(beta: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(voter_payoffs(beta)?.mu_w(rho))
}

/// `μ e^{x} / (μ e^{x} + 1 − μ)` without overflow.
fn shift_odds(mu: f64, x: f64) -> f64 {
    if mu <= 0.0 {
        return 0.0;
    }
    if mu >= 1.0 {
        return 1.0;
    }
    1.0 / (1.0 + ((1.0 - mu).ln() - mu.ln() - x).exp())
}

/// Motivated belief in `θ = 1`: tilted down by `e^{ρ(1−β)}` below the
/// voter's cutoff and up by `e^{ρβ}` at or above it.
pub fn voter_belief(mu: f64, beta: f64, rho: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter(format!("posterior must lie in [0, 1], got {mu}")));
    }
    let threshold = voter_threshold(beta, rho)?;
    Ok(belief_given_threshold(mu, beta, rho, threshold))
}

fn belief_given_threshold(mu: f64, beta: f64, rho: f64, threshold: f64) -> f64 {
    if mu < threshold {
        shift_odds(mu, -rho * (1.0 - beta))
    } else {
        shift_odds(mu, rho * beta)
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rho must be positive and finite, got {rho}")))
    }
}

/// An odd-sized electorate sharing a common `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Electorate {
    betas: Vec<f64>,
    rho: f64,
    thresholds: Vec<f64>,
    symmetric: bool,
}

impl Electorate {
    pub fn new(betas: Vec<f64>, rho: f64) -> Result<Self> {
        let n = betas.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "electorate size must be odd and at least 3, got {n}"
            )));
        }
        if betas.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::InvalidParameter("partisan weights must be sorted ascending".into()));
        }
        let thresholds = betas
            .iter()
            .map(|&b| voter_threshold(b, rho))
            .collect::<Result<Vec<_>>>()?;
        let symmetric = (0..n).all(|i| (betas[i] + betas[n - 1 - i] - 1.0).abs() <= 1e-12);
        Ok(Electorate { betas, rho, thresholds, symmetric })
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Zero-based index of the median voter.
    pub fn median_index(&self) -> usize {
        self.betas.len() / 2
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn beliefs(&self, mu: f64) -> Vec<f64> {
        self.betas
            .iter()
            .zip(&self.thresholds)
            .map(|(&b, &t)| belief_given_threshold(mu, b, self.rho, t))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationProfile {
    pub mu: f64,
    pub beliefs: Vec<f64>,
    pub pi: f64,
}

/// `π = Σ_{i<j} |ηᵢ − ηⱼ|` by the double sum.
pub fn pairwise_polarization(beliefs: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 0..beliefs.len() {
        for j in (i + 1)..beliefs.len() {
            total += (beliefs[i] - beliefs[j]).abs();
        }
    }
    total
}

/// `Σ_{i=1}^{m} (n + 1 − 2i)(η^{n+1−i} − η^{i})` for beliefs listed in
/// ascending order of `β`.
///
/// Beliefs are nondecreasing in `β`, so every term is nonnegative and the sum
/// equals the pairwise form.
pub fn rearranged_polarization(beliefs: &[f64]) -> f64 {
    let n = beliefs.len();
    (1..=n.div_ceil(2))
        .map(|i| (n + 1 - 2 * i) as f64 * (beliefs[n - i] - beliefs[i - 1]))
        .sum()
}

pub fn polarization(mu: f64, electorate: &Electorate) -> Result<PolarizationProfile> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter(format!("posterior must lie in [0, 1], got {mu}")));
    }
    let beliefs = electorate.beliefs(mu);
    let pi = pairwise_polarization(&beliefs);
    Ok(PolarizationProfile { mu, beliefs, pi })
}

/// Public posterior maximizing polarization: best point of a uniform grid,
/// refined by golden-section search between its neighbors.
pub fn polarization_argmax(electorate: &Electorate) -> f64 {
    let pi = |mu: f64| pairwise_polarization(&electorate.beliefs(mu));
    let step = 1.0 / ARGMAX_GRID as f64;
    let (best_i, _) = (0..=ARGMAX_GRID)
        .map(|i| (i, pi(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let lo = (best_i.saturating_sub(1)) as f64 * step;
    let hi = ((best_i + 1).min(ARGMAX_GRID)) as f64 * step;
    let grid_best = (best_i as f64 * step, pi(best_i as f64 * step));
    let refined = golden_section_max(pi, lo, hi, 1e-12);
    if refined.1 >= grid_best.1 {
        refined.0
    } else {
        grid_best.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectionOutcome {
    pub votes: Vec<bool>,
    pub passes: bool,
}

impl ElectionOutcome {
    pub fn yes_votes(&self) -> usize {
        self.votes.iter().filter(|&&v| v).count()
    }
}

/// Sincere votes at public posterior `mu`; a voter exactly at the cutoff
/// votes for the proposal.
pub fn election_outcome(mu: f64, electorate: &Electorate) -> Result<ElectionOutcome> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter(format!("posterior must lie in [0, 1], got {mu}")));
    }
    let votes: Vec<bool> = electorate.thresholds.iter().map(|&t| mu >= t).collect();
    let yes = votes.iter().filter(|&&v| v).count();
    let passes = 2 * yes > electorate.len();
    debug_assert_eq!(passes, votes[electorate.median_index()]);
    Ok(ElectionOutcome { votes, passes })
}

/// The sender persuades the median voter: pool at the median's cutoff.
pub fn optimal_public_policy(mu0: f64, electorate: &Electorate) -> Result<ThresholdPolicy> {
    optimal_policy(mu0, electorate.thresholds[electorate.median_index()])
}
