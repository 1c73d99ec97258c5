//! Two-player games played through a shared two-particle experiment.
//!
//! Each party picks one of two measurement directions per run; payoffs are
//! defined over the 16 joint outcome probabilities. The crate models those
//! constrained distributions, computes the CHSH sum of correlations and its
//! discriminant, evaluates payoffs and Nash equilibria, produces
//! distributions from physical sources (Born rule, local deterministic
//! mixtures), and generates the game families whose designated strategy
//! pair is an equilibrium exactly when the CHSH bound is exceeded.
//!
//! ```
//! use epr_games::{born_distribution, is_nash, max_chsh_config, DeltaSign, MixedStrategyPair};
//! use epr_games::family::{generate, FamilyCase, FamilyParams};
//!
//! let game = generate(&FamilyParams {
//!     free_a: [1.0; 7],
//!     b_top: 1.0,
//!     b_bottom: 1.0,
//!     b_rest: [1.0; 8],
//!     case: FamilyCase::NonNegativeDelta,
//! });
//! let dist = born_distribution(&max_chsh_config(DeltaSign::Positive))?;
//! let pair = MixedStrategyPair::new(1.0, 0.5)?;
//! let report = is_nash(&game, &dist, &pair, 1e-9);
//! assert!(report.is_ne); // delta = 2*sqrt(2) > 2
//! # Ok::<(), epr_games::Error>(())
//! ```

pub mod family;
pub mod game;
pub mod io;
pub mod monte_carlo;
pub mod nash;
pub mod probability;
pub mod quantum;

mod error;

pub use error::Error;
pub use family::{generate, membership_test, verify_family, FamilyCase, FamilyParams};
pub use game::{GameMatrix, MixedStrategyPair, PayoffTable};
pub use monte_carlo::{simulate, simulate_with, SimulationSummary};
pub use nash::{brute_force_nash, is_nash, nash_brackets, NashReport};
pub use probability::{ConstraintReport, CorrelationSet, EprDistribution, IndependentProbs};
pub use quantum::{
    born_distribution, local_deterministic_mixture, max_chsh_config, DeltaSign, EntangledState,
    LocalModel, MeasurementConfig,
};

/// Shared test fixtures: the two reference family games at unit parameters.
#[cfg(test)]
pub(crate) mod fixtures {
    use crate::family::{FamilyCase, FamilyParams};
    use crate::game::GameMatrix;

    pub fn unit_params(case: FamilyCase) -> FamilyParams {
        FamilyParams {
            free_a: [1.0; 7],
            b_top: 1.0,
            b_bottom: 1.0,
            b_rest: [1.0; 8],
            case,
        }
    }

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
}
