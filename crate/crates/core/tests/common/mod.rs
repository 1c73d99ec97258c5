//! Shared fixtures and samplers for the integration suites.
#![allow(dead_code)] // each suite uses its own subset

use rand::Rng;

use epr_games::family::{FamilyCase, FamilyParams};
use epr_games::probability::sample_valid_independent;
use epr_games::quantum::{EntangledState, LocalModel, MeasurementConfig};
use epr_games::{EprDistribution, GameMatrix};

pub const TWO_SQRT_2: f64 = 2.828_427_124_746_190_2;

pub fn unit_params(case: FamilyCase) -> FamilyParams {
    FamilyParams {
        free_a: [1.0; 7],
        b_top: 1.0,
        b_bottom: 1.0,
        b_rest: [1.0; 8],
        case,
    }
}

/// The case-A family game at unit parameters.
pub fn case_a_unit_game() -> GameMatrix {
    GameMatrix {
        a: [
            1.0, 1.0, -3.0, 1.0, //
            1.0, -3.0, 1.0, 1.0, //
            -3.0, 1.0, 1.0, 1.0, //
            5.0, 1.0, 1.0, 1.0,
        ],
        b: [1.0; 16],
    }
}

/// The case-B family game at unit parameters.
pub fn case_b_unit_game() -> GameMatrix {
    GameMatrix {
        a: [
            1.0, -3.0, 9.0, 1.0, //
            1.0, 9.0, -3.0, 1.0, //
            13.0, 5.0, 5.0, 1.0, //
            -7.0, 1.0, 1.0, 5.0,
        ],
        b: [1.0; 16],
    }
}

pub fn random_valid_distribution<R: Rng>(rng: &mut R) -> EprDistribution {
    EprDistribution::from_independent(&sample_valid_independent(rng))
}

pub fn random_game<R: Rng>(rng: &mut R) -> GameMatrix {
    let mut coeff = || rng.random_range(-5.0..5.0);
    GameMatrix {
        a: std::array::from_fn(|_| coeff()),
        b: std::array::from_fn(|_| coeff()),
    }
}

/// Dirichlet(1) weights over the 16 deterministic assignments.
pub fn random_local_model<R: Rng>(rng: &mut R) -> LocalModel {
    let mut weights: [f64; 16] = std::array::from_fn(|_| -rng.random::<f64>().max(1e-12).ln());
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    LocalModel::new(weights).expect("normalized nonnegative weights")
}

/// A random state (singlet or Schmidt) with four uniform in-plane angles.
pub fn random_config<R: Rng>(rng: &mut R) -> MeasurementConfig {
    let state = if rng.random::<bool>() {
        EntangledState::Singlet
    } else {
        EntangledState::Schmidt(rng.random_range(0.0..=std::f64::consts::FRAC_PI_2))
    };
    MeasurementConfig {
        state,
        angles: std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU)),
    }
}

pub fn random_family_params<R: Rng>(rng: &mut R, case: FamilyCase) -> FamilyParams {
    let mut c = || rng.random_range(-3.0..3.0);
    FamilyParams {
        free_a: std::array::from_fn(|_| c()),
        b_top: c(),
        b_bottom: c(),
        b_rest: std::array::from_fn(|_| c()),
        case,
    }
}
