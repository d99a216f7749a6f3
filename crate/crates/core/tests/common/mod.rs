#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use wishful::{Belief, BinaryPayoffs, DecisionProblem};

/// Seed shared by every randomized suite in this crate.
pub const SEED: u64 = 20_240_917;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Interior belief on `n` states with every probability at least ~1e-3.
pub fn interior_belief(n: usize) -> impl Strategy<Value = Belief> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|w| Belief::normalized(w).unwrap())
}

/// Belief that may put zero mass on some states.
pub fn any_belief(n: usize) -> impl Strategy<Value = Belief> {
    prop::collection::vec(prop_oneof![3 => 0.01f64..1.0, 1 => Just(0.0)], n)
        .prop_filter("needs some mass", |w| w.iter().any(|&x| x > 0.0))
        .prop_map(|w| Belief::normalized(w).unwrap())
}

pub fn problem(n: usize, m: usize) -> impl Strategy<Value = DecisionProblem> {
    (
        prop::collection::vec(prop::collection::vec(-5.0f64..5.0, n), m),
        prop::collection::vec(0.0f64..1.0, m),
        0.05f64..5.0,
    )
        .prop_map(|(u, v, rho)| DecisionProblem::new(u, v, rho).unwrap())
}

pub fn problem_with_belief() -> impl Strategy<Value = (DecisionProblem, Belief)> {
    (2usize..=5, 2usize..=4).prop_flat_map(|(n, m)| (problem(n, m), any_belief(n)))
}

/// Payoffs where each action is strictly best in its own state, with both
/// gaps at least 0.1.
pub fn binary_payoffs() -> impl Strategy<Value = BinaryPayoffs> {
    (-5.0f64..5.0, 0.1f64..5.0, -5.0f64..5.0, 0.1f64..5.0).prop_map(|(l1, d0, h0, d1)| {
        BinaryPayoffs::new(l1 + d0, h0, l1, h0 + d1).unwrap()
    })
}
