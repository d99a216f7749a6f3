//! Evaluation of each scenario into result tables.
//!
//! Every scenario has a summary, a list of named values. A plain run emits
//! the summary followed by scenario-specific detail rows; a sweep emits one
//! summary row per grid point.

use wishful::binary::Favored;
use wishful::finite::{grid_oracle_value, is_favored, optimal_policy_finite, Mode};
use wishful::health::{health_problem, HealthParams};
use wishful::investor::{solve_investor, trunc_exp_mean, trunc_mean, ReturnPrior};
use wishful::voting::{
    election_outcome, optimal_public_policy, polarization, polarization_argmax, Electorate,
};
use wishful::{optimal_policy, Belief, BinaryPayoffs, DecisionProblem, LemmaCase};

use crate::config::*;
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

pub type Summary = Vec<(&'static str, Cell)>;

const SUMMARY_COLUMNS: [&str; 3] = ["record", "name", "value"];

fn check_points(points: usize) -> CliResult<()> {
    if (2..=100_000).contains(&points) {
        Ok(())
    } else {
        Err(CliError::Config(format!("points must lie in 2..=100000, got {points}")))
    }
}

fn unit_grid(points: usize) -> impl Iterator<Item = f64> {
    (0..points).map(move |i| i as f64 / (points - 1) as f64)
}

fn favored_label(f: Favored) -> &'static str {
    match f {
        Favored::Favored => "favored",
        Favored::NotFavored => "not_favored",
        Favored::Equal => "equal",
    }
}

fn case_label(c: Option<LemmaCase>) -> Cell {
    match c {
        Some(LemmaCase::CaseI) => "i".into(),
        Some(LemmaCase::CaseII) => "ii".into(),
        Some(LemmaCase::CaseIII) => "iii".into(),
        None => Cell::Empty,
    }
}

fn binary_summary(c: &BinaryConfig) -> CliResult<Summary> {
    let p = BinaryPayoffs::from_array(c.payoffs)?;
    let report = p.classify_favored(c.rho)?;
    let vb = optimal_policy(c.mu0, report.mu_b)?;
    let vw = optimal_policy(c.mu0, report.mu_w)?;
    Ok(vec![
        ("rho", c.rho.into()),
        ("mu_B", report.mu_b.into()),
        ("mu_W", report.mu_w.into()),
        ("alpha", p.alpha(c.rho).into()),
        ("favored", favored_label(report.favored).into()),
        ("lemma_case", case_label(report.lemma_case)),
        ("rho_bar", report.rho_bar.into()),
        ("value_B", vb.value.into()),
        ("value_W", vw.value.into()),
    ])
}

fn health_params(c: &HealthConfig) -> HealthParams {
    HealthParams {
        sigma: c.sigma,
        c: c.c,
        alpha: c.alpha,
        theta_low: c.theta_low,
        theta_high: c.theta_high,
        rho: c.rho,
    }
}

fn health_summary(c: &HealthConfig) -> CliResult<Summary> {
    let m = health_problem(health_params(c))?;
    let (tau_w, tau_b) = m.adoption_probability(c.mu0)?;
    let below = wishful::tilt_belief(&m.problem, 0, &Belief::binary(m.mu_w)?)?;
    let above = m.belief(m.mu_w)?;
    Ok(vec![
        ("sigma", c.sigma.into()),
        ("alpha", c.alpha.into()),
        ("mu_B", m.mu_b.into()),
        ("mu_W", m.mu_w.into()),
        ("tau_B", tau_b.into()),
        ("tau_W", tau_w.into()),
        ("eta_at_mu_W_no_adoption", below[1].into()),
        ("eta_at_mu_W_adoption", above.into()),
    ])
}

fn electorate(c: &VotingConfig) -> CliResult<Electorate> {
    Ok(Electorate::new(c.betas.clone(), c.rho)?)
}

fn voting_summary(c: &VotingConfig) -> CliResult<Summary> {
    let e = electorate(c)?;
    let argmax = polarization_argmax(&e);
    let policy = optimal_public_policy(c.mu0, &e)?;
    let at_prior = election_outcome(c.mu0, &e)?;
    Ok(vec![
        ("rho", c.rho.into()),
        ("median_threshold", e.thresholds()[e.median_index()].into()),
        ("polarization_argmax", argmax.into()),
        ("polarization_max", polarization(argmax, &e)?.pi.into()),
        ("passes_at_prior", at_prior.passes.into()),
        ("policy_value", policy.value.into()),
        ("policy_pass_posterior", policy.high.into()),
    ])
}

fn finite_problem(c: &FiniteConfig) -> CliResult<(DecisionProblem, Belief)> {
    if c.payoffs.len() != 2 {
        return Err(CliError::Config(format!(
            "finite scenario needs two payoff rows, got {}",
            c.payoffs.len()
        )));
    }
    let p = DecisionProblem::new(c.payoffs.clone(), vec![0.0, 1.0], c.rho)?;
    Ok((p, Belief::new(c.prior.clone())?))
}

fn finite_summary(c: &FiniteConfig) -> CliResult<Summary> {
    let (p, mu0) = finite_problem(c)?;
    let bayes = optimal_policy_finite(&p, &mu0, Mode::Bayesian)?;
    let wish = optimal_policy_finite(&p, &mu0, Mode::Wishful)?;
    let oracle = match c.oracle_resolution {
        Some(k) => Some(grid_oracle_value(&p, &mu0, Mode::Wishful, k)?),
        None => None,
    };
    Ok(vec![
        ("rho", c.rho.into()),
        ("favored", is_favored(&p)?.favored.into()),
        ("value_B", bayes.value.into()),
        ("value_W", wish.value.into()),
        ("oracle_W", oracle.into()),
    ])
}

fn prior(spec: &PriorSpec) -> CliResult<ReturnPrior> {
    Ok(match spec {
        PriorSpec::Uniform { low, high } => ReturnPrior::uniform(*low, *high)?,
        PriorSpec::TruncatedNormal { mean, sd, low, high } => {
            ReturnPrior::truncated_normal(*mean, *sd, *low, *high)?
        }
        PriorSpec::PiecewiseLinear { knots } => {
            let k: Vec<(f64, f64)> = knots.iter().map(|&[x, f]| (x, f)).collect();
            ReturnPrior::piecewise_linear(&k)?
        }
    })
}

fn investor_summary(c: &InvestorConfig) -> CliResult<Summary> {
    let s = solve_investor(&prior(&c.prior)?, c.rho)?;
    Ok(vec![
        ("rho", c.rho.into()),
        ("theta_B", s.theta_b.into()),
        ("theta_W", s.theta_w.into()),
        ("prob_B", s.prob_b.into()),
        ("prob_W", s.prob_w.into()),
        ("x_hat", s.x_hat.into()),
        ("m_hat", s.m_hat.into()),
    ])
}

pub fn summary(config: &ScenarioConfig) -> CliResult<Summary> {
    match config {
        ScenarioConfig::Binary(c) => binary_summary(c),
        ScenarioConfig::Health(c) => health_summary(c),
        ScenarioConfig::Voting(c) => voting_summary(c),
        ScenarioConfig::Finite(c) => finite_summary(c),
        ScenarioConfig::Investor(c) => investor_summary(c),
    }
}

fn with_summary(extra: &[&str], summary: Summary) -> Table {
    let mut t = Table::new(SUMMARY_COLUMNS.iter().chain(extra).copied());
    for (name, value) in summary {
        t.push(vec![("record", "summary".into()), ("name", name.into()), ("value", value)]);
    }
    t
}

/// Summary rows followed by the scenario's detail rows.
pub fn run(config: &ScenarioConfig) -> CliResult<Table> {
    let s = summary(config)?;
    Ok(match config {
        ScenarioConfig::Binary(_) => with_summary(&[], s),
        ScenarioConfig::Health(c) => {
            check_points(c.points)?;
            let m = health_problem(health_params(c))?;
            let mut t = with_summary(&["mu", "eta", "action"], s);
            for mu in unit_grid(c.points) {
                let action = mu >= m.mu_w;
                t.push(vec![
                    ("record", "curve".into()),
                    ("mu", mu.into()),
                    ("eta", m.belief(mu)?.into()),
                    ("action", action.into()),
                ]);
            }
            t
        }
        ScenarioConfig::Voting(c) => {
            check_points(c.points)?;
            let e = electorate(c)?;
            let mut t = with_summary(&["voter", "beta", "threshold", "belief", "vote", "mu", "pi"], s);
            let at = polarization(c.mu_eval, &e)?;
            let votes = election_outcome(c.mu_eval, &e)?.votes;
            for (i, &beta) in e.betas().iter().enumerate() {
                t.push(vec![
                    ("record", "voter".into()),
                    ("voter", (i + 1).into()),
                    ("beta", beta.into()),
                    ("threshold", e.thresholds()[i].into()),
                    ("belief", at.beliefs[i].into()),
                    ("vote", votes[i].into()),
                    ("mu", c.mu_eval.into()),
                ]);
            }
            for mu in unit_grid(c.points) {
                t.push(vec![("record", "curve".into()), ("mu", mu.into()), ("pi", polarization(mu, &e)?.pi.into())]);
            }
            t
        }
        ScenarioConfig::Finite(c) => {
            let (p, mu0) = finite_problem(c)?;
            let n = p.num_states();
            let states: Vec<String> = (0..n).map(|s| format!("p{s}")).collect();
            let mut extra = vec!["mode", "weight"];
            extra.extend(states.iter().map(String::as_str));
            let mut t = with_summary(&extra, s);
            for mode in [Mode::Bayesian, Mode::Wishful] {
                let pol = optimal_policy_finite(&p, &mu0, mode)?;
                for (post, &w) in pol.posteriors.iter().zip(&pol.weights) {
                    let mut row = vec![("record", "posterior".into()), ("mode", mode.name().into()), ("weight", w.into())];
                    row.extend(states.iter().zip(post.probs()).map(|(s, &x)| (s.as_str(), x.into())));
                    t.push(row);
                }
            }
            t
        }
        ScenarioConfig::Investor(c) => {
            check_points(c.points)?;
            let pr = prior(&c.prior)?;
            let mut t = with_summary(&["z", "phi", "psi"], s);
            for u in unit_grid(c.points) {
                let z = pr.low() + (pr.high() - pr.low()) * u;
                t.push(vec![
                    ("record", "curve".into()),
                    ("z", z.into()),
                    ("phi", trunc_mean(&pr, z)?.into()),
                    ("psi", trunc_exp_mean(&pr, z, c.rho)?.into()),
                ]);
            }
            t
        }
    })
}

/// One row of summary values per sweep point, series-major.
pub fn sweep(config: &ScenarioConfig) -> CliResult<Table> {
    let spec = config
        .sweep()
        .ok_or_else(|| CliError::Config("config has no sweep".into()))?
        .clone();
    if spec.steps == 0 || spec.steps > 100_000 {
        return Err(CliError::Config(format!("sweep steps must lie in 1..=100000, got {}", spec.steps)));
    }
    if !(spec.from.is_finite() && spec.to.is_finite()) {
        return Err(CliError::Config("sweep bounds must be finite".into()));
    }
    let base = config.without_sweep();
    let series: Vec<Option<f64>> = match &spec.series {
        Some(s) if s.values.is_empty() => return Err(CliError::Config("sweep series has no values".into())),
        Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };

    let mut points = Vec::new();
    for value in &series {
        let mut cfg = base.clone();
        if let (Some(v), Some(s)) = (value, &spec.series) {
            cfg.set_number(&s.parameter, *v)?;
        }
        for x in spec.grid() {
            let mut c = cfg.clone();
            c.set_number(&spec.parameter, x)?;
            points.push((*value, x, c));
        }
    }

    let mut columns: Vec<&str> = Vec::new();
    if let Some(s) = &spec.series {
        columns.push(&s.parameter);
    }
    columns.push(&spec.parameter);
    let mut table: Option<Table> = None;
    for (series_value, x, cfg) in points {
        let summary = summary(&cfg)?;
        let t = table.get_or_insert_with(|| {
            let mut cols: Vec<String> = columns.iter().map(|s| s.to_string()).collect();
            cols.extend(summary.iter().map(|(n, _)| n.to_string()).filter(|n| !columns.contains(&n.as_str())));
            Table::new(cols)
        });
        let mut row: Vec<(&str, Cell)> = Vec::new();
        if let (Some(v), Some(s)) = (series_value, &spec.series) {
            row.push((s.parameter.as_str(), v.into()));
        }
        row.push((spec.parameter.as_str(), x.into()));
        row.extend(summary.into_iter().filter(|(n, _)| !columns.contains(n)));
        t.push(row);
    }
    Ok(table.expect("at least one sweep point"))
}

/// Runs the config, sweeping if it carries a sweep.
pub fn execute(config: &ScenarioConfig) -> CliResult<Table> {
    if config.sweep().is_some() {
        sweep(config)
    } else {
        run(config)
    }
}
