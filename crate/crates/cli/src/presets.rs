//! Named configurations reproducing the standard figures and examples.

use crate::config::*;
use crate::error::{CliError, CliResult};

pub const PRESETS: &[&str] = &[
    "health-fig3",
    "health-fig4",
    "health-fig5",
    "binary-fig6a",
    "binary-fig6b",
    "binary-fig6c",
    "voting-fig7",
    "ternary",
    "investor-demo",
];

fn health(sweep: Option<Sweep>) -> ScenarioConfig {
    ScenarioConfig::Health(HealthConfig {
        sigma: 2.0,
        c: 0.5,
        alpha: 0.8,
        theta_low: 0.1,
        theta_high: 0.9,
        rho: 2.0,
        mu0: 0.3,
        points: 101,
        sweep,
    })
}

fn binary(payoffs: [f64; 4]) -> ScenarioConfig {
    ScenarioConfig::Binary(BinaryConfig {
        payoffs,
        rho: 1.0,
        mu0: 0.2,
        sweep: Some(Sweep { parameter: "rho".into(), from: 0.01, to: 2.5, steps: 250, series: None }),
    })
}

pub fn preset(name: &str) -> CliResult<ScenarioConfig> {
    let severity = |series| Sweep { parameter: "sigma".into(), from: 0.7, to: 0.0, steps: 0, series };
    Ok(match name {
        "health-fig3" => health(None),
        "health-fig4" => health(Some(Sweep { to: 6.2, steps: 111, ..severity(None) })),
        "health-fig5" => health(Some(Sweep {
            to: 4.9,
            steps: 85,
            ..severity(Some(Series { parameter: "alpha".into(), values: vec![1.0, 0.8] }))
        })),
        "binary-fig6a" => binary([3.0, -1.0, 1.0, 4.0]),
        "binary-fig6b" => binary([4.0, -1.0, 1.0, 4.0]),
        "binary-fig6c" => binary([4.0, 1.0, -1.0, 3.0]),
        "voting-fig7" => ScenarioConfig::Voting(VotingConfig {
            betas: vec![0.25, 0.5, 0.75],
            rho: 2.0,
            mu0: 0.3,
            mu_eval: 0.5,
            points: 101,
            sweep: None,
        }),
        "ternary" => ScenarioConfig::Finite(FiniteConfig {
            payoffs: vec![vec![2.0, 3.0, -1.0], vec![1.0, 0.0, 4.0]],
            rho: 1.0,
            prior: vec![0.45, 0.45, 0.10],
            oracle_resolution: Some(40),
            sweep: None,
        }),
        "investor-demo" => ScenarioConfig::Investor(InvestorConfig {
            prior: PriorSpec::Uniform { low: -2.0, high: 1.0 },
            rho: 1.0,
            points: 61,
            sweep: None,
        }),
        other => {
            return Err(CliError::Config(format!(
                "unknown preset `{other}`; available: {}",
                PRESETS.join(", ")
            )))
        }
    })
}
