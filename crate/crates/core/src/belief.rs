//! Motivated belief formation on a finite state space.
//!
//! A receiver facing Bayesian posterior `μ` picks a subjective belief `η`
//! and an action `a` to maximize anticipated utility `∫ u(a,·) dη` minus
//! `KL(η ‖ μ) / ρ`. For each action the best belief is the exponential tilt
//!
//! ```text
//! η_a(θ) ∝ exp(ρ u(a,θ)) μ(θ)
//! ```
//!
//! and the attained well-being is `W_a(μ) = (1/ρ) ln Σ_θ exp(ρ u(a,θ)) μ(θ)`.
//! The receiver takes an action maximizing `W_a`; ties go to the action the
//! sender prefers, then to the lowest index.
//!
//! Every exponential is evaluated through a max-shifted log-sum-exp so that
//! `ρ·u` may be arbitrarily large.

use crate::error::{Error, Result};
use crate::numeric::log_sum_exp_weighted;

/// Tolerance on the total mass of a belief.
pub const BELIEF_SUM_TOL: f64 = 1e-12;

/// Relative tolerance used to declare two well-being values equal.
pub const INDIFFERENCE_RTOL: f64 = 1e-10;

/// A probability vector over a finite, ordered state set.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief(Vec<f64>);

impl Belief {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidBelief("empty probability vector".into()));
        }
        if let Some((i, &x)) = p.iter().enumerate().find(|(_, x)| !(**x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidBelief(format!("entry {i} = {x} is not a probability")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > BELIEF_SUM_TOL {
            return Err(Error::InvalidBelief(format!("entries sum to {total}, not 1")));
        }
        Ok(Belief(p))
    }

    /// Like [`Belief::new`] but additionally requires full support, as a
    /// prior must.
    pub fn interior(p: Vec<f64>) -> Result<Self> {
        let b = Belief::new(p)?;
        if b.0.iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidBelief("prior must put positive mass on every state".into()));
        }
        Ok(b)
    }

    /// Rescales nonnegative weights to sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidBelief(format!("cannot normalize weights with total {total}")));
        }
        Belief::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn dirac(n: usize, state: usize) -> Self {
        let mut p = vec![0.0; n];
        p[state] = 1.0;
        Belief(p)
    }

    pub fn uniform(n: usize) -> Self {
        Belief(vec![1.0 / n as f64; n])
    }

    /// Two-state belief putting `high` on the second state.
    pub fn binary(high: f64) -> Result<Self> {
        Belief::new(vec![1.0 - high, high])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &p)| p > 0.0).map(|(i, _)| i)
    }

    pub fn l1_distance(&self, other: &Belief) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }
}

impl std::ops::Index<usize> for Belief {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Finite decision problem of the receiver together with the sender's
/// state-independent payoff for each action.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    states: Vec<String>,
    actions: Vec<String>,
    /// Receiver payoff, indexed `[action][state]`.
    u: Vec<Vec<f64>>,
    /// Sender payoff per action.
    v: Vec<f64>,
    rho: f64,
}

impl DecisionProblem {
    /// Builds a problem with default labels `s0, s1, …` and `a0, a1, …`.
    pub fn new(u: Vec<Vec<f64>>, v: Vec<f64>, rho: f64) -> Result<Self> {
        let m = u.len();
        let n = u.first().map_or(0, Vec::len);
        let states = (0..n).map(|i| format!("s{i}")).collect();
        let actions = (0..m).map(|i| format!("a{i}")).collect();
        DecisionProblem::with_labels(states, actions, u, v, rho)
    }

    pub fn with_labels(
        states: Vec<String>,
        actions: Vec<String>,
        u: Vec<Vec<f64>>,
        v: Vec<f64>,
        rho: f64,
    ) -> Result<Self> {
        let n = states.len();
        let m = actions.len();
        if n < 2 {
            return Err(Error::InvalidProblem(format!("need at least 2 states, got {n}")));
        }
        if m < 2 {
            return Err(Error::InvalidProblem(format!("need at least 2 actions, got {m}")));
        }
        if u.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: u.len() });
        }
        if let Some(row) = u.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        if u.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidProblem("payoffs must be finite".into()));
        }
        if v.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: v.len() });
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidProblem("sender payoffs must be finite".into()));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::InvalidProblem(format!("rho must be positive and finite, got {rho}")));
        }
        Ok(DecisionProblem { states, actions, u, v, rho })
    }

    /// Same payoffs with a different self-deception weight.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        DecisionProblem::with_labels(
            self.states.clone(),
            self.actions.clone(),
            self.u.clone(),
            self.v.clone(),
            rho,
        )
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn actions(&self) -> &[String] {
        &self.actions
    }

    pub fn payoff(&self, action: usize, state: usize) -> f64 {
        self.u[action][state]
    }

    pub fn payoffs(&self, action: usize) -> &[f64] {
        &self.u[action]
    }

    pub fn sender_value(&self, action: usize) -> f64 {
        self.v[action]
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Pairs `(dominated, dominator)` where the dominator is weakly better in
    /// every state, strictly better in one, and equally valued by the sender.
    /// Such problems are allowed but considered degenerate.
    pub fn dominance_warnings(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.num_actions() {
            for b in 0..self.num_actions() {
                if a == b || self.v[a] != self.v[b] {
                    continue;
                }
                let weak = (0..self.num_states()).all(|s| self.u[b][s] >= self.u[a][s]);
                let strict = (0..self.num_states()).any(|s| self.u[b][s] > self.u[a][s]);
                if weak && strict {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_belief(&self, mu: &Belief) -> Result<()> {
        if mu.len() != self.num_states() {
            return Err(Error::DimensionMismatch { expected: self.num_states(), got: mu.len() });
        }
        Ok(())
    }

    fn check_action(&self, a: usize) -> Result<()> {
        if a >= self.num_actions() {
            return Err(Error::InvalidParameter(format!(
                "action index {a} out of range (have {})",
                self.num_actions()
            )));
        }
        Ok(())
    }

    /// `ln Σ_θ exp(ρ u(a,θ)) μ(θ)`, i.e. `ρ · W_a(μ)`.
    fn scaled_wellbeing(&self, a: usize, mu: &Belief) -> f64 {
        let exps: Vec<f64> = self.u[a].iter().map(|&x| self.rho * x).collect();
        log_sum_exp_weighted(&exps, mu.probs())
    }
}

/// The receiver's chosen belief, action and resulting well-being.
#[derive(Debug, Clone, PartialEq)]
pub struct MotivatedOutcome {
    pub belief: Belief,
    pub action: usize,
    pub wellbeing: f64,
}

/// `KL(η ‖ μ) = Σ η ln(η/μ)`, with `0·ln(0/q) = 0`.
///
/// Returns `f64::INFINITY` when `η` charges a state that `μ` does not.
pub fn kl_divergence(eta: &Belief, mu: &Belief) -> Result<f64> {
    if eta.len() != mu.len() {
        return Err(Error::DimensionMismatch { expected: mu.len(), got: eta.len() });
    }
    let mut total = 0.0;
    for (&e, &m) in eta.probs().iter().zip(mu.probs()) {
        if e == 0.0 {
            continue;
        }
        if m == 0.0 {
            return Ok(f64::INFINITY);
        }
        total += e * (e / m).ln();
    }
    // Rounding can leave a tiny negative value when η = μ.
    Ok(total.max(0.0))
}

/// Optimal belief of a receiver committed to action `a`:
/// `η_a(θ) ∝ exp(ρ u(a,θ)) μ(θ)`.
pub fn tilt_belief(problem: &DecisionProblem, a: usize, mu: &Belief) -> Result<Belief> {
    problem.check_belief(mu)?;
    problem.check_action(a)?;
    let rho = problem.rho();
    let row = problem.payoffs(a);
    let shift = mu
        .support()
        .map(|s| rho * row[s])
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = mu
        .probs()
        .iter()
        .zip(row)
        .map(|(&p, &x)| if p > 0.0 { p * (rho * x - shift).exp() } else { 0.0 })
        .collect();
    Belief::normalized(weights)
}

/// Psychological well-being `W_a(μ) = (1/ρ) ln Σ_θ exp(ρ u(a,θ)) μ(θ)`.
pub fn wellbeing(problem: &DecisionProblem, a: usize, mu: &Belief) -> Result<f64> {
    problem.check_belief(mu)?;
    problem.check_action(a)?;
    Ok(problem.scaled_wellbeing(a, mu) / problem.rho())
}

fn argmax_set(values: &[f64]) -> Vec<usize> {
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tol = INDIFFERENCE_RTOL * best.abs().max(1.0);
    values
        .iter()
        .enumerate()
        .filter(|(_, &x)| x >= best - tol)
        .map(|(i, _)| i)
        .collect()
}

/// Actions maximizing `Σ_θ exp(ρ u(a,θ)) μ(θ)`.
pub fn optimal_action_set(problem: &DecisionProblem, mu: &Belief) -> Result<Vec<usize>> {
    problem.check_belief(mu)?;
    let values: Vec<f64> = (0..problem.num_actions())
        .map(|a| problem.scaled_wellbeing(a, mu))
        .collect();
    Ok(argmax_set(&values))
}

/// Actions maximizing expected utility under `μ` itself.
pub fn bayesian_action_set(problem: &DecisionProblem, mu: &Belief) -> Result<Vec<usize>> {
    problem.check_belief(mu)?;
    let values: Vec<f64> = (0..problem.num_actions())
        .map(|a| problem.payoffs(a).iter().zip(mu.probs()).map(|(u, p)| u * p).sum())
        .collect();
    Ok(argmax_set(&values))
}

/// Picks the sender's preferred action from a set of receiver-optimal ones,
/// falling back to the lowest index.
pub fn sender_preferred(problem: &DecisionProblem, candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    for &a in &candidates[1..] {
        if problem.sender_value(a) > problem.sender_value(best) {
            best = a;
        }
    }
    best
}

/// The receiver's optimal belief and action at Bayesian posterior `μ`.
pub fn optimal_belief(problem: &DecisionProblem, mu: &Belief) -> Result<MotivatedOutcome> {
    let set = optimal_action_set(problem, mu)?;
    let action = sender_preferred(problem, &set);
    Ok(MotivatedOutcome {
        belief: tilt_belief(problem, action, mu)?,
        action,
        wellbeing: wellbeing(problem, action, mu)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn ternary() -> DecisionProblem {
        DecisionProblem::new(vec![vec![2.0, 3.0, -1.0], vec![1.0, 0.0, 4.0]], vec![0.0, 1.0], 1.0)
            .unwrap()
    }

    /// Health problem with ς=2, c=0.5, α=0.8, θ̲=0.1, θ̄=0.9, ρ=2, states
    /// ordered (low risk, high risk).
    fn health() -> DecisionProblem {
        let (s, c, al, lo, hi) = (2.0, 0.5, 0.8, 0.1, 0.9);
        DecisionProblem::new(
            vec![
                vec![-s * lo, -s * hi],
                vec![-(1.0 - al) * lo * s - c, -(1.0 - al) * hi * s - c],
            ],
            vec![0.0, 1.0],
            2.0,
        )
        .unwrap()
    }

    #[test]
    fn belief_validation() {
        assert!(Belief::new(vec![0.5, 0.5]).is_ok());
        assert!(Belief::new(vec![0.5, 0.6]).is_err());
        assert!(Belief::new(vec![-0.1, 1.1]).is_err());
        assert!(Belief::new(vec![f64::NAN, 1.0]).is_err());
        assert!(Belief::new(vec![]).is_err());
        assert!(Belief::interior(vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(DecisionProblem::new(vec![vec![1.0, 2.0]], vec![0.0], 1.0).is_err());
        assert!(DecisionProblem::new(vec![vec![1.0], vec![2.0]], vec![0.0, 1.0], 1.0).is_err());
        assert!(DecisionProblem::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]], vec![0.0, 1.0], 0.0).is_err());
        assert!(DecisionProblem::new(vec![vec![1.0, 2.0], vec![2.0, f64::NAN]], vec![0.0, 1.0], 1.0)
            .is_err());
        assert!(matches!(
            DecisionProblem::new(vec![vec![1.0, 2.0], vec![2.0, 1.0, 0.0]], vec![0.0, 1.0], 1.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dominance_diagnostic() {
        let p = DecisionProblem::new(vec![vec![1.0, 1.0], vec![1.0, 2.0]], vec![0.0, 0.0], 1.0).unwrap();
        assert_eq!(p.dominance_warnings(), vec![(0, 1)]);
        assert!(ternary().dominance_warnings().is_empty());
    }

    #[test]
    fn kl_examples() {
        let half = Belief::uniform(2);
        assert_eq!(kl_divergence(&half, &half).unwrap(), 0.0);
        let d = kl_divergence(&Belief::dirac(2, 0), &half).unwrap();
        assert!(close(d, std::f64::consts::LN_2, 1e-15));
        let eta = Belief::new(vec![0.6, 0.4]).unwrap();
        let mu = Belief::new(vec![0.3, 0.7]).unwrap();
        // direct summation
        let oracle = 0.6 * (0.6f64 / 0.3).ln() + 0.4 * (0.4f64 / 0.7).ln();
        assert!(close(kl_divergence(&eta, &mu).unwrap(), oracle, 1e-15));
        assert!(close(oracle, 0.192042, 1e-6));
    }

    #[test]
    fn kl_support_mismatch_is_infinite() {
        let d = kl_divergence(&Belief::uniform(2), &Belief::dirac(2, 0)).unwrap();
        assert_eq!(d, f64::INFINITY);
        assert!(kl_divergence(&Belief::uniform(2), &Belief::uniform(3)).is_err());
    }

    #[test]
    fn health_tilts_at_wishful_threshold() {
        let p = health();
        let mu = Belief::binary(0.685486).unwrap();
        let eta0 = tilt_belief(&p, 0, &mu).unwrap();
        let eta1 = tilt_belief(&p, 1, &mu).unwrap();
        assert!(close(eta0[1], 0.0815927, 1e-6), "{}", eta0[1]);
        assert!(close(eta1[1], 0.534719, 1e-6), "{}", eta1[1]);
    }

    #[test]
    fn constant_payoff_means_no_distortion() {
        let p = DecisionProblem::new(vec![vec![3.0, 3.0, 3.0], vec![0.0, 1.0, 2.0]], vec![0.0, 1.0], 5.0)
            .unwrap();
        let mu = Belief::new(vec![0.2, 0.3, 0.5]).unwrap();
        let eta = tilt_belief(&p, 0, &mu).unwrap();
        assert!(eta.l1_distance(&mu) < 1e-12);
        assert!(close(wellbeing(&p, 0, &mu).unwrap(), 3.0, 1e-12));
    }

    #[test]
    fn voting_wellbeing() {
        let beta: f64 = 0.5;
        let p = DecisionProblem::new(
            vec![vec![1.0 - beta, 0.0], vec![0.0, beta]],
            vec![0.0, 1.0],
            2.0,
        )
        .unwrap();
        let w = wellbeing(&p, 1, &Belief::uniform(2)).unwrap();
        let oracle = 0.5 * ((1.0 + std::f64::consts::E) / 2.0).ln();
        assert!(close(w, oracle, 1e-14));
        assert!(close(w, 0.310057, 1e-6));
    }

    #[test]
    fn small_rho_recovers_expected_utility() {
        let p = ternary().with_rho(1e-6).unwrap();
        let mu = Belief::new(vec![0.2, 0.3, 0.5]).unwrap();
        for a in 0..2 {
            let eu: f64 = p.payoffs(a).iter().zip(mu.probs()).map(|(u, q)| u * q).sum();
            assert!(close(wellbeing(&p, a, &mu).unwrap(), eu, 1e-4));
        }
    }

    #[test]
    fn health_below_threshold_picks_no_adoption() {
        let p = health();
        let out = optimal_belief(&p, &Belief::binary(0.5).unwrap()).unwrap();
        assert_eq!(out.action, 0);
        let oracle = 0.5 / (0.5 + 0.5 * 3.2f64.exp());
        assert!(close(out.belief[1], oracle, 1e-12));
        assert!(close(oracle, 0.039165, 1e-6));
        let w0 = wellbeing(&p, 0, &Belief::binary(0.5).unwrap()).unwrap();
        let w1 = wellbeing(&p, 1, &Belief::binary(0.5).unwrap()).unwrap();
        assert!(w0 > w1);
        assert_eq!(out.wellbeing, w0);
    }

    #[test]
    fn dirac_posterior_is_not_distorted() {
        let p = health();
        let out = optimal_belief(&p, &Belief::dirac(2, 1)).unwrap();
        assert_eq!(out.belief, Belief::dirac(2, 1));
        assert_eq!(out.action, 1);
        let t = ternary();
        let out = optimal_belief(&t, &Belief::dirac(3, 2)).unwrap();
        assert_eq!(out.action, 1);
        assert_eq!(out.belief, Belief::dirac(3, 2));
        assert_eq!(optimal_action_set(&t, &Belief::dirac(3, 0)).unwrap(), vec![0]);
        assert_eq!(bayesian_action_set(&t, &Belief::dirac(3, 1)).unwrap(), vec![0]);
    }

    #[test]
    fn bayesian_indifference_points() {
        let p = health();
        let set = bayesian_action_set(&p, &Belief::binary(0.265625).unwrap()).unwrap();
        assert_eq!(set, vec![0, 1]);
        let t = ternary();
        let mu = Belief::new(vec![0.0, 0.625, 0.375]).unwrap();
        assert_eq!(bayesian_action_set(&t, &mu).unwrap(), vec![0, 1]);
    }

    #[test]
    fn wishful_and_bayesian_sets_differ_near_edge() {
        let t = ternary();
        // On the {θ₀, θ₂} edge the Bayesian cutoff is μ₂ = 1/6 and the
        // wishful one is about 0.0793.
        let mu = Belief::new(vec![0.88, 0.0, 0.12]).unwrap();
        assert_eq!(bayesian_action_set(&t, &mu).unwrap(), vec![0]);
        assert_eq!(optimal_action_set(&t, &mu).unwrap(), vec![1]);
    }

    #[test]
    fn tie_goes_to_sender() {
        // Exact indifference everywhere; sender prefers action 1.
        let p = DecisionProblem::new(vec![vec![1.0, 0.0], vec![1.0, 0.0]], vec![0.0, 1.0], 1.0).unwrap();
        let out = optimal_belief(&p, &Belief::uniform(2)).unwrap();
        assert_eq!(out.action, 1);
        // Equal sender values: lowest index.
        let q = DecisionProblem::new(vec![vec![1.0, 0.0], vec![1.0, 0.0]], vec![1.0, 1.0], 1.0).unwrap();
        assert_eq!(optimal_belief(&q, &Belief::uniform(2)).unwrap().action, 0);
    }

    #[test]
    fn bad_indices_error() {
        let t = ternary();
        assert!(tilt_belief(&t, 2, &Belief::uniform(3)).is_err());
        assert!(wellbeing(&t, 0, &Belief::uniform(2)).is_err());
    }

    #[test]
    fn extreme_rho_does_not_overflow() {
        let p = DecisionProblem::new(vec![vec![0.0, 1000.0], vec![500.0, 0.0]], vec![0.0, 1.0], 10.0)
            .unwrap();
        let mu = Belief::uniform(2);
        let eta = tilt_belief(&p, 0, &mu).unwrap();
        assert!(close(eta[1], 1.0, 1e-12));
        let w = wellbeing(&p, 0, &mu).unwrap();
        assert!(close(w, 1000.0 - std::f64::consts::LN_2 / 10.0, 1e-9));
        assert_eq!(optimal_belief(&p, &mu).unwrap().action, 0);
    }
}
