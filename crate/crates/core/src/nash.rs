//! Nash equilibrium checks for mixed strategy pairs.
//!
//! Payoffs are bilinear in (p, q), so a unilateral deviation changes the
//! payoff affinely; checking the two corner deviations per player is
//! necessary and sufficient. [`brute_force_nash`] ignores that shortcut and
//! scans a full lattice, serving as the independent oracle.

use serde::Serialize;

use crate::game::{GameMatrix, MixedStrategyPair};
use crate::probability::EprDistribution;

/// Default tolerance on deviation gains.
pub const DEFAULT_NE_TOL: f64 = 1e-9;

/// Corner deviation gains and the equilibrium verdict for one pair.
/// Gains are payoff(deviation) - payoff(pair); the pair is an equilibrium
/// when no gain exceeds the tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NashReport {
    pub pair: MixedStrategyPair,
    pub gain_a_at_p0: f64,
    pub gain_a_at_p1: f64,
    pub gain_b_at_q0: f64,
    pub gain_b_at_q1: f64,
    pub is_ne: bool,
    /// True when a player sitting on a pure strategy would lose nothing by
    /// jumping to the opposite corner: the equilibrium is weak there.
    /// Indifference of a player already playing an interior mix is required
    /// for any mixed equilibrium and does not raise this flag.
    pub is_strict_boundary: bool,
}

/// The two deviation brackets for the pair (1, 1/2).
///
/// `bracket_a` multiplies Alice's loss for lowering p; the pair is an
/// equilibrium exactly when `bracket_a <= 0` and `bracket_b = 0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BracketValues {
    pub bracket_a: f64,
    pub bracket_b: f64,
}

pub fn is_nash(
    game: &GameMatrix,
    dist: &EprDistribution,
    pair: &MixedStrategyPair,
    tol: f64,
) -> NashReport {
    let table = game.pure_payoffs(dist);
    let (p, q) = (pair.p(), pair.q());
    let (base_a, base_b) = table.payoff_at(p, q);

    let gain_a_at_p0 = table.payoff_at(0.0, q).0 - base_a;
    let gain_a_at_p1 = table.payoff_at(1.0, q).0 - base_a;
    let gain_b_at_q0 = table.payoff_at(p, 0.0).1 - base_b;
    let gain_b_at_q1 = table.payoff_at(p, 1.0).1 - base_b;

    let is_ne = gain_a_at_p0 <= tol
        && gain_a_at_p1 <= tol
        && gain_b_at_q0 <= tol
        && gain_b_at_q1 <= tol;

    let mut is_strict_boundary = false;
    if is_ne {
        if p >= 1.0 - tol {
            is_strict_boundary |= gain_a_at_p0.abs() <= tol;
        } else if p <= tol {
            is_strict_boundary |= gain_a_at_p1.abs() <= tol;
        }
        if q >= 1.0 - tol {
            is_strict_boundary |= gain_b_at_q0.abs() <= tol;
        } else if q <= tol {
            is_strict_boundary |= gain_b_at_q1.abs() <= tol;
        }
    }

    NashReport {
        pair: *pair,
        gain_a_at_p0,
        gain_a_at_p1,
        gain_b_at_q0,
        gain_b_at_q1,
        is_ne,
        is_strict_boundary,
    }
}

/// Deviation brackets for the designated pair (1, 1/2):
/// the second-row payoff sum minus the first-row sum for Alice, and the
/// first-row payoff difference for Bob.
pub fn nash_brackets(game: &GameMatrix, dist: &EprDistribution) -> BracketValues {
    let t = game.pure_payoffs(dist);
    BracketValues {
        bracket_a: t.alice[1][0] + t.alice[1][1] - t.alice[0][0] - t.alice[0][1],
        bracket_b: t.bob[0][0] - t.bob[0][1],
    }
}

/// The two brackets for the pair (1/2, 1/2). That pair is an equilibrium
/// exactly when both vanish, so its condition can never track the sign of a
/// CHSH discriminant.
pub fn half_half_brackets(game: &GameMatrix, dist: &EprDistribution) -> (f64, f64) {
    let t = game.pure_payoffs(dist);
    (
        t.alice[0][0] + t.alice[0][1] - t.alice[1][0] - t.alice[1][1],
        t.bob[0][0] - t.bob[0][1] + t.bob[1][0] - t.bob[1][1],
    )
}

/// Scans the grid_n x grid_n lattice over `[0,1]^2` and returns every pair
/// where no lattice deviation by either player gains more than `tol`.
/// Pairs come back sorted lexicographically by (p, q).
pub fn brute_force_nash(
    game: &GameMatrix,
    dist: &EprDistribution,
    grid_n: usize,
    tol: f64,
) -> Vec<MixedStrategyPair> {
    assert!(grid_n >= 2, "grid_n must be at least 2");
    let table = game.pure_payoffs(dist);
    let grid: Vec<f64> = (0..grid_n)
        .map(|i| i as f64 / (grid_n - 1) as f64)
        .collect();

    let mut found = Vec::new();
    for &p in &grid {
        for &q in &grid {
            let (base_a, base_b) = table.payoff_at(p, q);
            let alice_ok = grid
                .iter()
                .all(|&p_dev| table.payoff_at(p_dev, q).0 - base_a <= tol);
            if !alice_ok {
                continue;
            }
            let bob_ok = grid
                .iter()
                .all(|&q_dev| table.payoff_at(p, q_dev).1 - base_b <= tol);
            if bob_ok {
                found.push(MixedStrategyPair::new(p, q).expect("lattice point in range"));
            }
        }
    }
    found
}
