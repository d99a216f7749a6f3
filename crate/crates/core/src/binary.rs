//! Two states, two actions.
//!
//! States are ordered `(θ̲, θ̄)` and a belief is summarized by the
//! probability `μ` of the high state `θ̄`. Action 0 is the receiver's best
//! reply in the low state and action 1 in the high state, so both a Bayesian
//! and a wishful receiver follow cutoff rules: take action 1 iff `μ` is at
//! least `μ^B` (Bayesian) or `μ^W(ρ)` (wishful).

use crate::belief::DecisionProblem;
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Below this value of `ρ·spread` the tilt coefficient uses its series.
const SERIES_SWITCH: f64 = 1e-4;

/// Gap between `μ^W` and `μ^B` that counts as a strict difference.
pub const FAVORED_TOL: f64 = 1e-12;

/// Payoffs of a 2×2 "match the state" problem:
/// `u_low_a = u(a, θ̲)` and `u_high_a = u(a, θ̄)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryPayoffs {
    pub u_low_0: f64,
    pub u_high_0: f64,
    pub u_low_1: f64,
    pub u_high_1: f64,
}

/// Which of the favoredness patterns the payoffs fall in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCase {
    /// `u_max ≤ 0` and action 0 varies less than action 1: favored for all ρ.
    CaseI,
    /// `u_max < 0` and action 0 varies more: favored once ρ exceeds ρ̄.
    CaseII,
    /// `u_max > 0` and action 0 varies less: favored while ρ is below ρ̄.
    CaseIII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Favored {
    /// The wishful receiver takes action 1 on strictly more posteriors.
    Favored,
    NotFavored,
    Equal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FavoredReport {
    pub favored: Favored,
    pub lemma_case: Option<LemmaCase>,
    pub mu_b: f64,
    pub mu_w: f64,
    pub rho_bar: Option<f64>,
}

impl BinaryPayoffs {
    /// Requires `u̲₀ > u̲₁` and `ū₁ > ū₀`, i.e. each action is the strict best
    /// reply in its own state.
    pub fn new(u_low_0: f64, u_high_0: f64, u_low_1: f64, u_high_1: f64) -> Result<Self> {
        let p = BinaryPayoffs { u_low_0, u_high_0, u_low_1, u_high_1 };
        if [u_low_0, u_high_0, u_low_1, u_high_1].iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("payoffs must be finite".into()));
        }
        if !(u_low_0 > u_low_1 && u_high_1 > u_high_0) {
            return Err(Error::InvalidParameter(format!(
                "payoffs ({u_low_0}, {u_high_0}, {u_low_1}, {u_high_1}) do not match the state: \
                 need u(0,low) > u(1,low) and u(1,high) > u(0,high)"
            )));
        }
        Ok(p)
    }

    pub fn from_array(u: [f64; 4]) -> Result<Self> {
        BinaryPayoffs::new(u[0], u[1], u[2], u[3])
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.u_low_0, self.u_high_0, self.u_low_1, self.u_high_1]
    }

    /// Payoff variability of action 0, `u̲₀ − ū₀`.
    pub fn var0(&self) -> f64 {
        self.u_low_0 - self.u_high_0
    }

    /// Payoff variability of action 1, `ū₁ − u̲₁`.
    pub fn var1(&self) -> f64 {
        self.u_high_1 - self.u_low_1
    }

    /// `u̲₀ − ū₁`: how much the best payoff of action 0 exceeds that of action 1.
    pub fn u_max(&self) -> f64 {
        self.u_low_0 - self.u_high_1
    }

    /// Largest payoff magnitude.
    pub fn scale(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// Gain from action 0 over action 1 in the low state.
    fn low_gap(&self) -> f64 {
        self.u_low_0 - self.u_low_1
    }

    /// Gain from action 1 over action 0 in the high state.
    fn high_gap(&self) -> f64 {
        self.u_high_1 - self.u_high_0
    }

    pub fn translated(&self, shift: f64) -> Self {
        BinaryPayoffs {
            u_low_0: self.u_low_0 + shift,
            u_high_0: self.u_high_0 + shift,
            u_low_1: self.u_low_1 + shift,
            u_high_1: self.u_high_1 + shift,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        BinaryPayoffs {
            u_low_0: self.u_low_0 * factor,
            u_high_0: self.u_high_0 * factor,
            u_low_1: self.u_low_1 * factor,
            u_high_1: self.u_high_1 * factor,
        }
    }

    /// The general decision problem with states `(θ̲, θ̄)`, actions `(0, 1)`
    /// and sender payoff `v(a) = a`.
    pub fn to_problem(&self, rho: f64) -> Result<DecisionProblem> {
        DecisionProblem::with_labels(
            vec!["low".into(), "high".into()],
            vec!["0".into(), "1".into()],
            vec![vec![self.u_low_0, self.u_high_0], vec![self.u_low_1, self.u_high_1]],
            vec![0.0, 1.0],
            rho,
        )
    }

    /// Bayesian cutoff `μ^B = (u̲₀ − u̲₁) / (u̲₀ − u̲₁ + ū₁ − ū₀)`.
    pub fn mu_b(&self) -> f64 {
        self.low_gap() / (self.low_gap() + self.high_gap())
    }

    /// Wishful cutoff
    /// `μ^W(ρ) = (e^{ρu̲₀} − e^{ρu̲₁}) / (e^{ρu̲₀} − e^{ρu̲₁} + e^{ρū₁} − e^{ρū₀})`,
    /// evaluated as a logistic of the log-ratio of the two differences.
    pub fn mu_w(&self, rho: f64) -> f64 {
        let log_low = rho * self.u_low_0 + (-(-rho * self.low_gap()).exp_m1()).ln();
        let log_high = rho * self.u_high_1 + (-(-rho * self.high_gap()).exp_m1()).ln();
        1.0 / (1.0 + (log_high - log_low).exp())
    }

    /// Coefficient of the logistic equation `dμ^W/dρ = α(ρ) μ^W (1 − μ^W)`:
    ///
    /// ```text
    /// α(ρ) = (u̲₀e^{ρu̲₀} − u̲₁e^{ρu̲₁})/(e^{ρu̲₀} − e^{ρu̲₁})
    ///      − (ū₁e^{ρū₁} − ū₀e^{ρū₀})/(e^{ρū₁} − e^{ρū₀})
    /// ```
    ///
    /// Each quotient equals `y + d/(1 − e^{−ρd})` with `d` the payoff gap;
    /// the `1/ρ` poles cancel and are removed before evaluation.
    pub fn alpha(&self, rho: f64) -> f64 {
        self.u_low_1 + tilt_excess(self.low_gap(), rho)
            - self.u_high_0
            - tilt_excess(self.high_gap(), rho)
    }

    /// `α′(ρ) = ½[(ū₁−ū₀)²/(cosh(ρ(ū₁−ū₀))−1) − (u̲₀−u̲₁)²/(cosh(ρ(u̲₀−u̲₁))−1)]`.
    pub fn alpha_derivative(&self, rho: f64) -> f64 {
        // d²/(2(cosh(ρd) − 1)) = (d / (2 sinh(ρd/2)))²
        let term = |d: f64| {
            let s = 2.0 * (0.5 * rho * d).sinh();
            (d / s) * (d / s)
        };
        term(self.high_gap()) - term(self.low_gap())
    }

    /// Payoff pattern of the favoredness lemma, if any.
    pub fn lemma_case(&self) -> Option<LemmaCase> {
        let eps = 1e-12 * self.scale().max(1.0);
        let u_max = self.u_max();
        let dv = self.var0() - self.var1();
        if u_max <= eps && dv < -eps {
            Some(LemmaCase::CaseI)
        } else if u_max < -eps && dv > eps {
            Some(LemmaCase::CaseII)
        } else if u_max > eps && dv < -eps {
            Some(LemmaCase::CaseIII)
        } else {
            None
        }
    }

    /// The strictly positive `ρ̄` with `μ^W(ρ̄) = μ^B`, if `μ^W − μ^B`
    /// changes sign on `(1e-8, 1e4)/scale`.
    pub fn rho_bar(&self) -> Result<Option<f64>> {
        let scale = self.scale();
        let lo = 1e-8 / scale;
        let hi = 1e4 / scale;
        let mu_b = self.mu_b();
        let gap = |rho: f64| self.mu_w(rho) - mu_b;
        const SCAN: usize = 64;
        let ratio = (hi / lo).powf(1.0 / (SCAN - 1) as f64);
        let grid: Vec<f64> = (0..SCAN).map(|i| lo * ratio.powi(i as i32)).collect();
        let mut prev: Option<(f64, f64)> = None;
        for &rho in &grid {
            let g = gap(rho);
            if g.abs() <= 1e-15 {
                continue;
            }
            if let Some((r0, g0)) = prev {
                if g0.signum() != g.signum() {
                    let tol = 1e-10 * (1.0 + r0);
                    let root = bisect(|r| Ok(gap(r)), r0, rho, tol)?;
                    return Ok(Some(root));
                }
            }
            prev = Some((rho, g));
        }
        match self.lemma_case() {
            Some(LemmaCase::CaseII) | Some(LemmaCase::CaseIII) => Err(Error::Numerical(format!(
                "payoffs {:?} predict a crossing of the two cutoffs but none was bracketed",
                self.as_array()
            ))),
            _ => Ok(None),
        }
    }

    /// Compares the wishful and Bayesian cutoffs at `rho`.
    pub fn classify_favored(&self, rho: f64) -> Result<FavoredReport> {
        check_rho(rho)?;
        let mu_b = self.mu_b();
        let mu_w = self.mu_w(rho);
        let favored = if mu_w < mu_b - FAVORED_TOL {
            Favored::Favored
        } else if mu_w > mu_b + FAVORED_TOL {
            Favored::NotFavored
        } else {
            Favored::Equal
        };
        Ok(FavoredReport {
            favored,
            lemma_case: self.lemma_case(),
            mu_b,
            mu_w,
            rho_bar: self.rho_bar()?,
        })
    }
}

/// `d/(1 − e^{−ρd}) − 1/ρ`, with a series near `ρd = 0`.
fn tilt_excess(d: f64, rho: f64) -> f64 {
    let x = rho * d;
    if x.abs() < SERIES_SWITCH {
        d / 2.0 + rho * d * d / 12.0 - rho.powi(3) * d.powi(4) / 720.0
    } else {
        d / -(-x).exp_m1() - 1.0 / rho
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("rho must be positive and finite, got {rho}")))
    }
}

/// A Bayes-plausible two-point policy `{low, high}` in a binary-state
/// problem, with the probability that the high posterior is realized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    pub low: f64,
    pub high: f64,
    pub weight_high: f64,
    /// Probability that the receiver takes action 1.
    pub value: f64,
}

impl ThresholdPolicy {
    pub fn mean(&self) -> f64 {
        self.weight_high * self.high + (1.0 - self.weight_high) * self.low
    }

    pub fn is_no_disclosure(&self) -> bool {
        self.weight_high == 1.0
    }
}

/// Sender-optimal policy against a receiver who takes action 1 iff the
/// posterior is at least `threshold`: pool just enough low-state mass with the
/// high state to reach the threshold, reveal the rest. A threshold of exactly
/// one, which a wishful cutoff reaches in floating point at large `ρ`, yields
/// full disclosure.
pub fn optimal_policy(mu0: f64, threshold: f64) -> Result<ThresholdPolicy> {
    if !(mu0 > 0.0 && mu0 < 1.0) {
        return Err(Error::InvalidParameter(format!("prior must lie in (0, 1), got {mu0}")));
    }
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidParameter(format!("threshold must lie in [0, 1], got {threshold}")));
    }
    if mu0 >= threshold {
        return Ok(ThresholdPolicy { low: 0.0, high: mu0, weight_high: 1.0, value: 1.0 });
    }
    let w = mu0 / threshold;
    Ok(ThresholdPolicy { low: 0.0, high: threshold, weight_high: w, value: w })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlackwellOrder {
    MoreInformative,
    LessInformative,
    Equal,
    Incomparable,
}

/// Blackwell comparison of two policies sharing the low posterior 0: the one
/// whose high posterior is larger has a support whose hull contains the
/// other's.
pub fn blackwell_compare(p1: &ThresholdPolicy, p2: &ThresholdPolicy) -> BlackwellOrder {
    if p1.low != p2.low {
        return BlackwellOrder::Incomparable;
    }
    if (p1.high - p2.high).abs() <= 1e-12 {
        BlackwellOrder::Equal
    } else if p1.high > p2.high {
        BlackwellOrder::MoreInformative
    } else {
        BlackwellOrder::LessInformative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::{optimal_action_set, Belief};

    fn p(u: [f64; 4]) -> BinaryPayoffs {
        BinaryPayoffs::from_array(u).unwrap()
    }

    /// Unshifted formula, fine for moderate ρ·u.
    fn mu_w_direct(q: &BinaryPayoffs, rho: f64) -> f64 {
        let a = (rho * q.u_low_0).exp() - (rho * q.u_low_1).exp();
        let b = (rho * q.u_high_1).exp() - (rho * q.u_high_0).exp();
        a / (a + b)
    }

    fn alpha_direct(q: &BinaryPayoffs, rho: f64) -> f64 {
        let e = |x: f64| (rho * x).exp();
        (q.u_low_0 * e(q.u_low_0) - q.u_low_1 * e(q.u_low_1)) / (e(q.u_low_0) - e(q.u_low_1))
            - (q.u_high_1 * e(q.u_high_1) - q.u_high_0 * e(q.u_high_0))
                / (e(q.u_high_1) - e(q.u_high_0))
    }

    #[test]
    fn rejects_payoffs_that_do_not_match_state() {
        assert!(BinaryPayoffs::new(1.0, 0.0, 2.0, 1.0).is_err());
        assert!(BinaryPayoffs::new(1.0, 2.0, 0.0, 1.0).is_err());
        assert!(BinaryPayoffs::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn mu_b_examples() {
        assert!((p([3.0, -1.0, 1.0, 4.0]).mu_b() - 2.0 / 7.0).abs() < 1e-15);
        assert!((p([1.0, 0.0, 0.0, 1.0]).mu_b() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mu_w_matches_direct_formula() {
        let q = p([3.0, -1.0, 1.0, 4.0]);
        for rho in [0.01, 0.3, 1.0, 2.5, 7.0] {
            assert!((q.mu_w(rho) - mu_w_direct(&q, rho)).abs() < 1e-13);
        }
        assert!((q.mu_w(1e-8) - q.mu_b()).abs() < 1e-4);
    }

    #[test]
    fn mu_w_is_the_wishful_indifference_point() {
        let q = p([3.0, -1.0, 1.0, 4.0]);
        let problem = q.to_problem(1.3).unwrap();
        let t = q.mu_w(1.3);
        let set = optimal_action_set(&problem, &Belief::binary(t).unwrap()).unwrap();
        assert_eq!(set, vec![0, 1]);
    }

    #[test]
    fn mu_w_saturates_without_overflow() {
        let q = p([3.0, -1.0, 1.0, 4.0]);
        let v = q.mu_w(500.0);
        assert!(v.is_finite() && v < 1e-100);
        let r = p([4.0, 1.0, -1.0, 3.0]);
        assert!((r.mu_w(500.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_examples() {
        let q = p([3.0, -1.0, 1.0, 4.0]);
        assert!((q.alpha(1e-6) - 0.5).abs() < 1e-3);
        assert!((q.alpha(50.0) + 1.0).abs() < 1e-6);
        let r = p([2.0, -1.0, 1.0, 4.0]);
        let oracle = alpha_direct(&r, 0.1);
        assert!((r.alpha(0.1) - oracle).abs() < 1e-12);
        assert!((oracle + 0.199).abs() < 1e-3, "{oracle}");
    }

    #[test]
    fn alpha_series_is_continuous_at_switch() {
        let q = p([3.0, -1.0, 1.0, 4.0]);
        let gap_max = 5.0;
        let r = SERIES_SWITCH / gap_max;
        let below = q.alpha(r * (1.0 - 1e-9));
        let above = q.alpha(r * (1.0 + 1e-9));
        assert!((below - above).abs() < 1e-9);
    }

    #[test]
    fn rho_bar_examples() {
        let r = p([3.0, -1.0, 1.0, 4.0]).rho_bar().unwrap().unwrap();
        assert!((r - 0.621806).abs() < 5e-4, "{r}");
        assert_eq!(p([3.0, 0.5, 1.0, 4.0]).rho_bar().unwrap(), None);
        assert_eq!(p([1.0, 0.0, 0.0, 1.0]).rho_bar().unwrap(), None);
    }

    #[test]
    fn classify_examples() {
        let q = p([3.0, 0.5, 1.0, 4.0]);
        for rho in [0.1, 1.0, 10.0] {
            let rep = q.classify_favored(rho).unwrap();
            assert_eq!(rep.favored, Favored::Favored);
            assert_eq!(rep.lemma_case, Some(LemmaCase::CaseI));
        }
        let q = p([3.0, -1.0, 1.0, 4.0]);
        assert_eq!(q.classify_favored(1.0).unwrap().favored, Favored::Favored);
        assert_eq!(q.classify_favored(0.3).unwrap().favored, Favored::NotFavored);
        assert_eq!(q.lemma_case(), Some(LemmaCase::CaseII));
        let q = p([4.0, 1.0, -1.0, 3.0]);
        assert_eq!(q.classify_favored(0.3).unwrap().favored, Favored::Favored);
        assert_eq!(q.classify_favored(2.0).unwrap().favored, Favored::NotFavored);
        assert_eq!(q.lemma_case(), Some(LemmaCase::CaseIII));
        let sym = p([1.0, 0.0, 0.0, 1.0]).classify_favored(3.0).unwrap();
        assert_eq!(sym.favored, Favored::Equal);
        assert_eq!(sym.lemma_case, None);
        assert!(q.classify_favored(0.0).is_err());
    }

    #[test]
    fn policy_examples() {
        let a = optimal_policy(0.2, 0.5).unwrap();
        assert!((a.value - 0.4).abs() < 1e-15);
        let b = optimal_policy(0.2, 0.37754).unwrap();
        assert!((b.value - 0.52975).abs() < 1e-5);
        let c = optimal_policy(0.7, 0.5).unwrap();
        assert!(c.is_no_disclosure());
        assert_eq!(c.value, 1.0);
        for pol in [a, b, c] {
            assert!((pol.mean() - if pol.high == 0.7 { 0.7 } else { 0.2 }).abs() < 1e-12);
        }
        assert!(optimal_policy(0.0, 0.5).is_err());
        assert!(optimal_policy(0.5, 1.5).is_err());
        let full = optimal_policy(0.3, 1.0).unwrap();
        assert_eq!((full.low, full.high, full.value), (0.0, 1.0, 0.3));
        assert_eq!(optimal_policy(0.3, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn blackwell_examples() {
        let mk = |t: f64| optimal_policy(0.1, t).unwrap();
        assert_eq!(blackwell_compare(&mk(0.685486), &mk(0.265625)), BlackwellOrder::MoreInformative);
        assert_eq!(blackwell_compare(&mk(0.37754), &mk(0.5)), BlackwellOrder::LessInformative);
        assert_eq!(blackwell_compare(&mk(0.5), &mk(0.5)), BlackwellOrder::Equal);
    }
}
