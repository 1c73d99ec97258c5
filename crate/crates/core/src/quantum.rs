//! Physical sources of joint distributions: projective spin measurements on
//! an entangled pair (Born rule), and classical mixtures of deterministic
//! local assignments for contrast.
//!
//! Measurement directions live in a fixed common plane, one angle per
//! direction. The +1 outcome projects onto the direction's positive
//! eigenvector, which for the singlet state pins the correlation
//! `<xy> = -cos(theta_a - theta_b)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::error::Error;
use crate::probability::EprDistribution;

/// The shared two-particle state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntangledState {
    /// The spin singlet (|01> - |10>)/sqrt(2).
    Singlet,
    /// cos(g/2)|00> + sin(g/2)|11> for a Schmidt angle g in [0, pi/2];
    /// g = 0 is a product state, g = pi/2 is maximally entangled.
    Schmidt(f64),
}

/// A state plus the four in-plane measurement angles, ordered
/// (Alice first, Alice second, Bob first, Bob second).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementConfig {
    pub state: EntangledState,
    pub angles: [f64; 4],
}

/// Which CHSH extreme to target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSign {
    Positive,
    Negative,
}

/// Nonnegative weights over the 16 deterministic assignments of outcomes to
/// the four directions, in the order (S1, S2, S1', S2') with +1 before -1
/// per slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModel {
    weights: [f64; 16],
}

impl MeasurementConfig {
    pub fn singlet(angles: [f64; 4]) -> Self {
        Self { state: EntangledState::Singlet, angles }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if let Some(index) = self.angles.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFiniteAngle { index });
        }
        if let EntangledState::Schmidt(g) = self.state {
            if !(0.0..=FRAC_PI_2).contains(&g) {
                return Err(Error::SchmidtAngleOutOfRange(g));
            }
        }
        Ok(())
    }
}

// Amplitudes over |00>, |01>, |10>, |11>; everything stays real because the
// directions share one plane.
fn state_vector(state: EntangledState) -> [f64; 4] {
    match state {
        EntangledState::Singlet => [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0],
        EntangledState::Schmidt(g) => [(g / 2.0).cos(), 0.0, 0.0, (g / 2.0).sin()],
    }
}

// (I + s n.sigma)/2 for the in-plane direction n = (sin theta, 0, cos theta).
fn projector(theta: f64, outcome: f64) -> [[f64; 2]; 2] {
    let (sin, cos) = theta.sin_cos();
    [
        [0.5 * (1.0 + outcome * cos), 0.5 * outcome * sin],
        [0.5 * outcome * sin, 0.5 * (1.0 - outcome * cos)],
    ]
}

// psi . (Pa (x) Pb) psi
fn joint_probability(psi: &[f64; 4], pa: &[[f64; 2]; 2], pb: &[[f64; 2]; 2]) -> f64 {
    let mut total = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for k in 0..2 {
                for l in 0..2 {
                    acc += pa[i][k] * pb[j][l] * psi[2 * k + l];
                }
            }
            total += psi[2 * i + j] * acc;
        }
    }
    total
}

/// Joint outcome probabilities for projective measurements along the
/// configured directions, one block per direction pair.
pub fn born_distribution(config: &MeasurementConfig) -> Result<EprDistribution, Error> {
    config.validate()?;
    let psi = state_vector(config.state);
    let mut eps = [0.0; 16];
    for alice_dir in 0..2 {
        for bob_dir in 0..2 {
            let theta_a = config.angles[alice_dir];
            let theta_b = config.angles[2 + bob_dir];
            let block = 4 * (2 * alice_dir + bob_dir);
            for (cell, (x, y)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
                .into_iter()
                .enumerate()
            {
                eps[block + cell] =
                    joint_probability(&psi, &projector(theta_a, x), &projector(theta_b, y));
            }
        }
    }
    Ok(EprDistribution::new(eps))
}

/// Finds a singlet configuration whose CHSH sum reaches the requested
/// extreme, +2*sqrt(2) or -2*sqrt(2), to within 1e-9.
///
/// Deterministic: a coarse grid over the three free angles (the first Alice
/// angle is fixed at 0 by rotational symmetry) followed by a compass search,
/// both evaluated through [`born_distribution`] itself.
pub fn max_chsh_config(sign: DeltaSign) -> MeasurementConfig {
    let s = match sign {
        DeltaSign::Positive => 1.0,
        DeltaSign::Negative => -1.0,
    };
    let objective = |x: [f64; 3]| {
        let config = MeasurementConfig::singlet([0.0, x[0], x[1], x[2]]);
        s * born_distribution(&config)
            .expect("finite angles")
            .correlations()
            .delta
    };

    let coarse = 24;
    let step0 = 2.0 * PI / coarse as f64;
    let mut best = [0.0; 3];
    let mut best_val = objective(best);
    for i in 0..coarse {
        for j in 0..coarse {
            for k in 0..coarse {
                let x = [i as f64 * step0, j as f64 * step0, k as f64 * step0];
                let v = objective(x);
                if v > best_val {
                    best_val = v;
                    best = x;
                }
            }
        }
    }

    let mut step = step0;
    while step > 1e-8 {
        let mut improved = false;
        for d in 0..3 {
            for dir in [1.0, -1.0] {
                let mut x = best;
                x[d] += dir * step;
                let v = objective(x);
                if v > best_val {
                    best_val = v;
                    best = x;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    MeasurementConfig::singlet([0.0, best[0], best[1], best[2]])
}

impl LocalModel {
    /// Index of the assignment (s1, s2, b1, b2), outcomes +1 or -1.
    pub fn assignment_index(s1: i8, s2: i8, b1: i8, b2: i8) -> usize {
        let bit = |o: i8| -> usize {
            assert!(o == 1 || o == -1, "outcome must be +1 or -1");
            usize::from(o < 0)
        };
        bit(s1) << 3 | bit(s2) << 2 | bit(b1) << 1 | bit(b2)
    }

    /// Rejects negative weights and weight sums off 1 by more than 1e-9.
    pub fn new(weights: [f64; 16]) -> Result<Self, Error> {
        for (index, &value) in weights.iter().enumerate() {
            if value < 0.0 || value.is_nan() {
                return Err(Error::NegativeWeight { index, value });
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::WeightsNotNormalized(total));
        }
        Ok(Self { weights })
    }

    /// All weight on a single deterministic assignment.
    pub fn point_mass(s1: i8, s2: i8, b1: i8, b2: i8) -> Self {
        let mut weights = [0.0; 16];
        weights[Self::assignment_index(s1, s2, b1, b2)] = 1.0;
        Self { weights }
    }

    pub fn uniform() -> Self {
        Self { weights: [1.0 / 16.0; 16] }
    }

    pub fn weights(&self) -> &[f64; 16] {
        &self.weights
    }
}

/// The joint distribution induced by a mixture of deterministic local
/// assignments. Satisfies the no-signaling equalities exactly and has
/// |delta| <= 2.
pub fn local_deterministic_mixture(model: &LocalModel) -> EprDistribution {
    let mut eps = [0.0; 16];
    for (idx, &w) in model.weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let outcome = |bit: usize| if idx >> bit & 1 == 0 { 1.0 } else { -1.0 };
        let alice = [outcome(3), outcome(2)];
        let bob = [outcome(1), outcome(0)];
        for alice_dir in 0..2 {
            for bob_dir in 0..2 {
                let cell = 2 * usize::from(alice[alice_dir] < 0.0)
                    + usize::from(bob[bob_dir] < 0.0);
                eps[4 * (2 * alice_dir + bob_dir) + cell] += w;
            }
        }
    }
    EprDistribution::new(eps)
}
