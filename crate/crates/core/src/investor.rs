//! Persuading a wishful investor about a continuous return.
//!
//! The return `θ` has prior density `f` on `[θ̲, θ̄]` with `θ̲ < 0 < θ̄`. The
//! investor buys (`u = θ`) or abstains (`u = 0`). A wishful investor buys at
//! posterior `μ` iff the exponential moment `∫ e^{ρθ} dμ` is at least 1, a
//! Bayesian one iff `∫ θ dμ ≥ 0`. The sender's optimal report pools all
//! returns above a cutoff, so the relevant objects are the truncated means
//!
//! ```text
//! φ(z) = E[θ | θ ≥ z]        ψ(z) = E[e^{ρθ} | θ ≥ z]
//! ```
//!
//! and the cutoffs solve `φ(θ^B) = 0` and `ψ(θ^W) = 1`.

use std::fmt;
use std::sync::Arc;

use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::numeric::{bisect, integrate_pieces};

/// Absolute tolerance of every quadrature in this module.
pub const QUAD_TOL: f64 = 1e-10;

/// Tail mass below which truncated moments take their endpoint values.
const TAIL_EPS: f64 = 1e-12;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Family {
    Uniform,
    TruncatedNormal { mean: f64, sd: f64, cdf_low: f64, mass: f64 },
    /// Normalized density values at the knots and the cdf at each knot.
    PiecewiseLinear { xs: Vec<f64>, fs: Vec<f64>, cum: Vec<f64> },
    Custom { pdf: RealFn, cdf: RealFn },
}

/// Prior distribution of returns on a bounded interval.
#[derive(Clone)]
pub struct ReturnPrior {
    low: f64,
    high: f64,
    family: Family,
}

impl fmt::Debug for ReturnPrior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.family {
            Family::Uniform => "Uniform".to_string(),
            Family::TruncatedNormal { mean, sd, .. } => format!("TruncatedNormal({mean}, {sd})"),
            Family::PiecewiseLinear { xs, .. } => format!("PiecewiseLinear({} knots)", xs.len()),
            Family::Custom { .. } => "Custom".to_string(),
        };
        write!(f, "ReturnPrior {{ {kind} on [{}, {}] }}", self.low, self.high)
    }
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

impl ReturnPrior {
    pub fn uniform(low: f64, high: f64) -> Result<Self> {
        ReturnPrior::build(low, high, Family::Uniform)
    }

    /// Normal(mean, sd) conditioned on `[low, high]`.
    pub fn truncated_normal(mean: f64, sd: f64, low: f64, high: f64) -> Result<Self> {
        if !(sd > 0.0 && sd.is_finite() && mean.is_finite()) {
            return Err(Error::InvalidParameter(format!("bad normal parameters ({mean}, {sd})")));
        }
        let cdf_low = std_normal_cdf((low - mean) / sd);
        let mass = std_normal_cdf((high - mean) / sd) - cdf_low;
        if !(mass > 1e-300) {
            return Err(Error::InvalidParameter(
                "normal has no mass on the support interval".into(),
            ));
        }
        ReturnPrior::build(low, high, Family::TruncatedNormal { mean, sd, cdf_low, mass })
    }

    /// Density linear between `(x, f(x))` knots, rescaled to integrate to
    /// one. The first and last knots fix the support.
    pub fn piecewise_linear(knots: &[(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidParameter("need at least two knots".into()));
        }
        if knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::InvalidParameter("knot positions must increase strictly".into()));
        }
        if knots.iter().any(|&(_, f)| !(f > 0.0 && f.is_finite())) {
            return Err(Error::InvalidParameter("knot densities must be positive".into()));
        }
        let area: f64 = knots
            .windows(2)
            .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
            .sum();
        let xs: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let fs: Vec<f64> = knots.iter().map(|k| k.1 / area).collect();
        let mut cum = vec![0.0];
        for i in 1..xs.len() {
            let seg = 0.5 * (fs[i - 1] + fs[i]) * (xs[i] - xs[i - 1]);
            cum.push(cum[i - 1] + seg);
        }
        let (low, high) = (xs[0], xs[xs.len() - 1]);
        ReturnPrior::build(low, high, Family::PiecewiseLinear { xs, fs, cum })
    }

    /// A user-supplied density and cdf. Both must agree; the usual checks
    /// are applied.
    pub fn custom<P, C>(low: f64, high: f64, pdf: P, cdf: C) -> Result<Self>
    where
        P: Fn(f64) -> f64 + Send + Sync + 'static,
        C: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ReturnPrior::build(low, high, Family::Custom { pdf: Arc::new(pdf), cdf: Arc::new(cdf) })
    }

    fn build(low: f64, high: f64, family: Family) -> Result<Self> {
        if !(low.is_finite() && high.is_finite() && low < 0.0 && 0.0 < high) {
            return Err(Error::InvalidParameter(format!(
                "support must satisfy low < 0 < high, got [{low}, {high}]"
            )));
        }
        let prior = ReturnPrior { low, high, family };
        prior.validate()?;
        Ok(prior)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.cdf(self.low).abs() > 1e-9 || (self.cdf(self.high) - 1.0).abs() > 1e-9 {
            return bad("cdf must run from 0 to 1 over the support".into());
        }
        let mut prev = self.cdf(self.low);
        for i in 0..=1000 {
            let x = (self.low + (self.high - self.low) * i as f64 / 1000.0).min(self.high);
            let c = self.cdf(x);
            if c < prev - 1e-12 {
                return bad(format!("cdf decreases near {x}"));
            }
            prev = c;
            if !(self.pdf(x) > 0.0) {
                return bad(format!("density must be positive on the support, f({x}) = {}", self.pdf(x)));
            }
        }
        let total = self.integrate(|_| 1.0, self.low, self.high)?;
        if (total - 1.0).abs() > 1e-8 {
            return bad(format!("density integrates to {total}, not 1"));
        }
        if let Family::Custom { cdf, .. } = &self.family {
            for i in 0..=10 {
                let x = (self.low + (self.high - self.low) * i as f64 / 10.0).min(self.high);
                let area = self.integrate(|_| 1.0, self.low, x)?;
                if (area - cdf(x)).abs() > 1e-6 {
                    return bad(format!("cdf disagrees with the density at {x}"));
                }
            }
        }
        Ok(())
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < self.low || x > self.high {
            return 0.0;
        }
        match &self.family {
            Family::Uniform => 1.0 / (self.high - self.low),
            Family::TruncatedNormal { mean, sd, mass, .. } => {
                let z = (x - mean) / sd;
                (-0.5 * z * z).exp() / ((2.0 * std::f64::consts::PI).sqrt() * sd * mass)
            }
            Family::PiecewiseLinear { xs, fs, .. } => {
                let i = segment(xs, x);
                let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
                fs[i] + t * (fs[i + 1] - fs[i])
            }
            Family::Custom { pdf, .. } => pdf(x),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.low {
            return 0.0;
        }
        if x >= self.high {
            return 1.0;
        }
        match &self.family {
            Family::Uniform => (x - self.low) / (self.high - self.low),
            Family::TruncatedNormal { mean, sd, cdf_low, mass } => {
                ((std_normal_cdf((x - mean) / sd) - cdf_low) / mass).clamp(0.0, 1.0)
            }
            Family::PiecewiseLinear { xs, fs, cum } => {
                let i = segment(xs, x);
                let h = x - xs[i];
                let slope = (fs[i + 1] - fs[i]) / (xs[i + 1] - xs[i]);
                cum[i] + fs[i] * h + 0.5 * slope * h * h
            }
            Family::Custom { cdf, .. } => cdf(x),
        }
    }

    /// Points where the density may have a kink, including both endpoints.
    fn breaks(&self, from: f64, to: f64) -> Vec<f64> {
        let mut out = vec![from];
        if let Family::PiecewiseLinear { xs, .. } = &self.family {
            out.extend(xs.iter().copied().filter(|&x| x > from && x < to));
        }
        out.push(to);
        out
    }

    /// `∫_from^to g(θ) f(θ) dθ`.
    pub fn integrate<G>(&self, g: G, from: f64, to: f64) -> Result<f64>
    where
        G: Fn(f64) -> f64,
    {
        integrate_pieces(|x| g(x) * self.pdf(x), &self.breaks(from, to), QUAD_TOL)
    }

    /// Prior mean `m̂`.
    pub fn mean(&self) -> Result<f64> {
        self.integrate(|x| x, self.low, self.high)
    }
}

fn segment(xs: &[f64], x: f64) -> usize {
    match xs.partition_point(|&k| k <= x) {
        0 => 0,
        p => (p - 1).min(xs.len() - 2),
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rho must be positive and finite, got {rho}")))
    }
}

/// `x̂ = ∫ e^{ρθ} f(θ) dθ`.
pub fn exp_moment(prior: &ReturnPrior, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(1.0 + prior.integrate(|x| (rho * x).exp_m1(), prior.low, prior.high)?)
}

fn check_cutoff(prior: &ReturnPrior, z: f64) -> Result<()> {
    if !(z >= prior.low && z <= prior.high) {
        return Err(Error::InvalidParameter(format!(
            "cutoff {z} outside the support [{}, {}]",
            prior.low, prior.high
        )));
    }
    Ok(())
}

/// `φ(z) = E[θ | θ ≥ z]`, with `φ(θ̄) = θ̄`.
pub fn trunc_mean(prior: &ReturnPrior, z: f64) -> Result<f64> {
    check_cutoff(prior, z)?;
    let tail = 1.0 - prior.cdf(z);
    if z >= prior.high || tail < TAIL_EPS {
        return Ok(prior.high);
    }
    Ok(prior.integrate(|x| x, z, prior.high)? / tail)
}

/// `ψ(z) − 1 = E[e^{ρθ} − 1 | θ ≥ z]`; exact near `ρ = 0` where `ψ ≈ 1`.
fn trunc_exp_excess(prior: &ReturnPrior, z: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    check_cutoff(prior, z)?;
    let tail = 1.0 - prior.cdf(z);
    if z >= prior.high || tail < TAIL_EPS {
        return Ok((rho * prior.high).exp_m1());
    }
    Ok(prior.integrate(|x| (rho * x).exp_m1(), z, prior.high)? / tail)
}

/// `ψ(z) = E[e^{ρθ} | θ ≥ z]`, with `ψ(θ̄) = e^{ρθ̄}`.
pub fn trunc_exp_mean(prior: &ReturnPrior, z: f64, rho: f64) -> Result<f64> {
    Ok(1.0 + trunc_exp_excess(prior, z, rho)?)
}

fn root_tol(prior: &ReturnPrior) -> f64 {
    1e-10 * (prior.high - prior.low)
}

/// Lowest return a Bayesian investor accepts when all returns above it are
/// pooled: `φ(θ^B) = 0`.
pub fn theta_b(prior: &ReturnPrior) -> Result<f64> {
    let m_hat = prior.mean()?;
    if m_hat >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "prior violates the negative-mean assumption (mean = {m_hat})"
        )));
    }
    bisect(|z| trunc_mean(prior, z), prior.low + 1e-12, 0.0, root_tol(prior))
}

/// Lowest pooled return a wishful investor accepts: `ψ(θ^W) = 1`.
pub fn theta_w(prior: &ReturnPrior, rho: f64) -> Result<f64> {
    let x_hat = exp_moment(prior, rho)?;
    if x_hat >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "wishful investor already invests at the prior (exponential moment = {x_hat})"
        )));
    }
    bisect(|z| trunc_exp_excess(prior, z, rho), prior.low + 1e-12, 0.0, root_tol(prior))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvestorSolution {
    pub theta_w: f64,
    pub theta_b: f64,
    /// Probability of investment under the optimal policy, `1 − F(θ^W)`.
    pub prob_w: f64,
    pub prob_b: f64,
    pub x_hat: f64,
    pub m_hat: f64,
}

pub fn solve_investor(prior: &ReturnPrior, rho: f64) -> Result<InvestorSolution> {
    let x_hat = exp_moment(prior, rho)?;
    let m_hat = prior.mean()?;
    let theta_w = theta_w(prior, rho)?;
    let theta_b = theta_b(prior)?;
    Ok(InvestorSolution {
        theta_w,
        theta_b,
        prob_w: 1.0 - prior.cdf(theta_w),
        prob_b: 1.0 - prior.cdf(theta_b),
        x_hat,
        m_hat,
    })
}
