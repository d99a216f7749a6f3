//! Motivated ("wishful") beliefs and Bayesian persuasion.
//!
//! A receiver who enjoys anticipating good outcomes distorts the Bayesian
//! posterior `μ` toward states where their chosen action pays off, paying a
//! Kullback-Leibler cost scaled by `1/ρ`. This crate computes those beliefs
//! and the behavior they induce, and solves the sender's information design
//! problem against such a receiver:
//!
//! | module | contents |
//! |--------|----------|
//! | [`belief`] | KL divergence, exponential tilting, well-being, optimal belief and action |
//! | [`binary`] | 2×2 cutoffs `μ^B`, `μ^W(ρ)`, the coefficient `α(ρ)`, `ρ̄`, threshold policies |
//! | [`health`] | preventive-treatment application |
//! | [`finite`] | action polytopes on the simplex, favoredness, LP-based optimal policies |
//! | [`voting`] | heterogeneous voters, polarization index, median-voter persuasion |
//! | [`investor`] | continuous returns, truncated moments and threshold states |

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod belief;
pub mod binary;
pub mod error;
pub mod finite;
pub mod health;
pub mod investor;
pub mod lp;
pub mod numeric;
pub mod voting;

pub use belief::{
    bayesian_action_set, kl_divergence, optimal_action_set, optimal_belief, tilt_belief,
    wellbeing, Belief, DecisionProblem, MotivatedOutcome,
};
pub use binary::{
    blackwell_compare, optimal_policy, BinaryPayoffs, BlackwellOrder, Favored, FavoredReport,
    LemmaCase, ThresholdPolicy,
};
pub use error::{Error, Result};
