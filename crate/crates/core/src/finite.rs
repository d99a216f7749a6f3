//! Finite state spaces with two actions.
//!
//! The set of posteriors at which the receiver takes action 1 is the
//! polytope `Δ₁ = {μ : Σ_θ w(θ) μ(θ) ≥ 0}` where the net weight is
//! `w(θ) = u(1,θ) − u(0,θ)` for a Bayesian receiver and
//! `w(θ) = exp(ρu(1,θ)) − exp(ρu(0,θ))` for a wishful one. Its extreme
//! points are the Dirac beliefs with `w(θ) ≥ 0` plus, on every edge of the
//! simplex whose endpoints have weights of opposite sign, the unique
//! indifference belief on that edge.
//!
//! With sender payoff `v(a) = a`, the sender maximizes the probability of
//! landing in `Δ₁`. The concave envelope of that indicator is attained on the
//! polytope vertices together with the Dirac beliefs, so a small LP over
//! those candidates is exact.

use crate::belief::{Belief, DecisionProblem};
use crate::binary::{BinaryPayoffs, FavoredReport};
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};

/// Slack allowed on the net gain of a member posterior, relative to
/// `Σ |w(θ)| μ(θ)`.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Posteriors closer than this (L1) are treated as the same vertex.
const DEDUP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Bayesian,
    Wishful,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Bayesian => "bayesian",
            Mode::Wishful => "wishful",
        }
    }
}

fn require_binary(problem: &DecisionProblem) -> Result<()> {
    if problem.num_actions() != 2 {
        return Err(Error::InvalidProblem(format!(
            "action polytopes need exactly two actions, got {}",
            problem.num_actions()
        )));
    }
    Ok(())
}

/// Net weight of action 1 over action 0 in each state.
///
/// Wishful weights are divided by `exp(ρ · max u)`, which keeps them in
/// `[-1, 1]` without changing any sign or indifference point.
pub fn net_weights(problem: &DecisionProblem, mode: Mode) -> Result<Vec<f64>> {
    require_binary(problem)?;
    let (u0, u1) = (problem.payoffs(0), problem.payoffs(1));
    Ok(match mode {
        Mode::Bayesian => u1.iter().zip(u0).map(|(a, b)| a - b).collect(),
        Mode::Wishful => {
            let rho = problem.rho();
            let shift = u0.iter().chain(u1).fold(f64::NEG_INFINITY, |m, &x| m.max(rho * x));
            u1.iter()
                .zip(u0)
                .map(|(&a, &b)| (rho * a - shift).exp() - (rho * b - shift).exp())
                .collect()
        }
    })
}

fn is_member(weights: &[f64], p: &[f64]) -> bool {
    let (gain, size) = weights
        .iter()
        .zip(p)
        .fold((0.0, 0.0), |(g, s), (w, x)| (g + w * x, s + (w * x).abs()));
    gain >= -MEMBERSHIP_TOL * size
}

/// Whether the receiver (in `mode`) takes action 1 at posterior `mu`.
pub fn membership(problem: &DecisionProblem, mu: &Belief, mode: Mode) -> Result<bool> {
    let w = net_weights(problem, mode)?;
    if mu.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: w.len(), got: mu.len() });
    }
    Ok(is_member(&w, mu.probs()))
}

/// Indifference belief on the edge between two states.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePoint {
    pub states: (usize, usize),
    pub belief: Belief,
}

/// One indifference belief per edge whose endpoint weights have strictly
/// opposite signs.
pub fn edge_indifference_points(problem: &DecisionProblem, mode: Mode) -> Result<Vec<EdgePoint>> {
    let w = net_weights(problem, mode)?;
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if w[i] * w[j] < 0.0 {
                let mut p = vec![0.0; n];
                p[i] = w[j] / (w[j] - w[i]);
                p[j] = w[i] / (w[i] - w[j]);
                out.push(EdgePoint { states: (i, j), belief: Belief::new(p)? });
            }
        }
    }
    Ok(out)
}

/// Extreme points of the set of posteriors inducing action 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionPolytope {
    pub mode: Mode,
    pub vertices: Vec<Belief>,
}

impl ActionPolytope {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn action_polytope(problem: &DecisionProblem, mode: Mode) -> Result<ActionPolytope> {
    let w = net_weights(problem, mode)?;
    let n = w.len();
    let mut vertices: Vec<Belief> = Vec::new();
    let diracs = (0..n).filter(|&s| w[s] >= 0.0).map(|s| Belief::dirac(n, s));
    let edges = edge_indifference_points(problem, mode)?.into_iter().map(|e| e.belief);
    for v in diracs.chain(edges) {
        if !vertices.iter().any(|u| u.l1_distance(&v) <= DEDUP_TOL) {
            vertices.push(v);
        }
    }
    Ok(ActionPolytope { mode, vertices })
}

/// Two-state restriction on a pair of states that straddle the indifference
/// hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct PairReport {
    /// `(low, high)`: action 0 is better in `low`, action 1 in `high`.
    pub states: (usize, usize),
    pub report: FavoredReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FavoredCheck {
    /// True iff every Bayesian vertex lies in the wishful polytope.
    pub favored: bool,
    pub pairs: Vec<PairReport>,
}

/// Whether action 1 is taken by the wishful receiver on (weakly) more
/// posteriors than by a Bayesian one, i.e. `Δ₁^B ⊆ Δ₁^W`.
pub fn is_favored(problem: &DecisionProblem) -> Result<FavoredCheck> {
    let bayes = action_polytope(problem, Mode::Bayesian)?;
    let favored = bayes
        .vertices
        .iter()
        .map(|v| membership(problem, v, Mode::Wishful))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|m| m);
    let w = net_weights(problem, Mode::Bayesian)?;
    let n = w.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if w[i] * w[j] >= 0.0 {
                continue;
            }
            let (low, high) = if w[i] < 0.0 { (i, j) } else { (j, i) };
            let payoffs = BinaryPayoffs::new(
                problem.payoff(0, low),
                problem.payoff(0, high),
                problem.payoff(1, low),
                problem.payoff(1, high),
            )?;
            pairs.push(PairReport {
                states: (low, high),
                report: payoffs.classify_favored(problem.rho())?,
            });
        }
    }
    Ok(FavoredCheck { favored, pairs })
}

/// A Bayes-plausible distribution over posteriors.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePolicy {
    pub posteriors: Vec<Belief>,
    pub weights: Vec<f64>,
    /// Probability that the receiver takes action 1.
    pub value: f64,
}

impl FinitePolicy {
    /// `Σ weights · posteriors`.
    pub fn barycenter(&self) -> Vec<f64> {
        let n = self.posteriors.first().map_or(0, Belief::len);
        let mut out = vec![0.0; n];
        for (p, &w) in self.posteriors.iter().zip(&self.weights) {
            for (o, &x) in out.iter_mut().zip(p.probs()) {
                *o += w * x;
            }
        }
        out
    }
}

/// Sender-optimal policy at interior prior `mu0`.
///
/// Solves the LP over candidate posteriors (polytope vertices and all Dirac
/// beliefs), then merges the mass inside the polytope into a single posterior
/// and the remaining mass into another, giving a support of at most two
/// points.
pub fn optimal_policy_finite(
    problem: &DecisionProblem,
    mu0: &Belief,
    mode: Mode,
) -> Result<FinitePolicy> {
    let n = problem.num_states();
    if mu0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu0.len() });
    }
    if mu0.probs().iter().any(|&p| p <= 0.0) {
        return Err(Error::InvalidBelief("prior must be interior".into()));
    }
    let polytope = action_polytope(problem, mode)?;
    let inside = polytope.vertices.len();
    let mut candidates = polytope.vertices;
    candidates.extend((0..n).map(|s| Belief::dirac(n, s)));
    let a: Vec<Vec<f64>> = (0..n)
        .map(|s| candidates.iter().map(|c| c[s]).collect())
        .collect();
    let cost: Vec<f64> = (0..candidates.len()).map(|j| if j < inside { 1.0 } else { 0.0 }).collect();
    let (x, value) = match lp::solve(&a, mu0.probs(), &cost) {
        LpOutcome::Optimal { x, value } => (x, value),
        other => {
            return Err(Error::Numerical(format!("persuasion LP failed: {other:?}")));
        }
    };

    let mut posteriors = Vec::new();
    let mut weights = Vec::new();
    for (range, label) in [(0..inside, "inside"), (inside..candidates.len(), "outside")] {
        let mass: f64 = x[range.clone()].iter().sum();
        if mass <= 1e-14 {
            continue;
        }
        let mut merged = vec![0.0; n];
        for j in range {
            for (m, &c) in merged.iter_mut().zip(candidates[j].probs()) {
                *m += x[j] * c;
            }
        }
        let belief = Belief::normalized(merged)
            .map_err(|e| Error::Numerical(format!("merging {label} posteriors: {e}")))?;
        posteriors.push(belief);
        weights.push(mass);
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(FinitePolicy { posteriors, weights, value: value.clamp(0.0, 1.0) })
}

/// Lattice points `{ m / k : m ∈ ℕⁿ, Σm = k }` of the simplex.
pub fn simplex_grid(n: usize, k: usize) -> Vec<Vec<f64>> {
    fn rec(n: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for m in 0..=left {
            prefix.push(m);
            rec(n, left - m, prefix, out);
            prefix.pop();
        }
    }
    let mut ints = Vec::new();
    rec(n, k, &mut Vec::new(), &mut ints);
    ints.into_iter()
        .map(|m| m.into_iter().map(|x| x as f64 / k as f64).collect())
        .collect()
}

/// Brute-force lower bound on the sender's value: the best split of `mu0`
/// into at most two posteriors that both lie on the resolution-`k` grid of
/// the simplex.
pub fn grid_oracle_value(
    problem: &DecisionProblem,
    mu0: &Belief,
    mode: Mode,
    k: usize,
) -> Result<f64> {
    let n = problem.num_states();
    let max_k = if n == 2 { 10_000 } else { 60 };
    if n > 4 || k == 0 || k > max_k {
        return Err(Error::InvalidParameter(format!(
            "grid oracle supports at most 4 states and resolution 1..={max_k}, got n={n}, k={k}"
        )));
    }
    if mu0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: mu0.len() });
    }
    let w = net_weights(problem, mode)?;
    let member = |p: &[f64]| is_member(&w, p);
    if member(mu0.probs()) {
        return Ok(1.0);
    }
    let grid = simplex_grid(n, k);
    let flags: Vec<bool> = grid.iter().map(|p| member(p)).collect();
    let target = mu0.probs();
    let mut best = 0.0f64;
    for (p, _) in grid.iter().zip(&flags).filter(|(_, &f)| f) {
        for (q, &q_in) in grid.iter().zip(&flags) {
            // μ₀ = λ p + (1 − λ) q
            let (idx, _) = p
                .iter()
                .zip(q)
                .map(|(a, b)| (a - b).abs())
                .enumerate()
                .fold((0, 0.0), |acc, (i, d)| if d > acc.1 { (i, d) } else { acc });
            let denom = p[idx] - q[idx];
            if denom == 0.0 {
                continue;
            }
            let lambda = (target[idx] - q[idx]) / denom;
            if !(0.0..=1.0).contains(&lambda) {
                continue;
            }
            let collinear = (0..n).all(|s| (target[s] - q[s] - lambda * (p[s] - q[s])).abs() <= 1e-9);
            if collinear {
                let v = if q_in { 1.0 } else { lambda };
                best = best.max(v);
            }
        }
    }
    Ok(best)
}
