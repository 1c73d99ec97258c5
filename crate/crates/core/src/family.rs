//! Generation and verification of the game families whose designated pair
//! (1, 1/2) is an equilibrium exactly when the CHSH bound is exceeded.
//!
//! The construction fixes seven of Alice's coefficients freely and solves
//! the remaining nine so that, for every completed distribution, her
//! deviation bracket equals 2 - delta (case A, targeting delta > 2) or
//! 2 + delta (case B, targeting delta < -2). Bob's bracket is forced to
//! zero by equating his coefficients across the two top-row block rows;
//! his second-row coefficients stay free.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::game::GameMatrix;
use crate::nash::nash_brackets;
use crate::probability::{sample_valid_independent, EprDistribution};

/// Which sign of the CHSH sum the family targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyCase {
    /// Bracket identity `bracket_a = 2 - delta`; the designated pair is an
    /// equilibrium when delta >= 2.
    #[serde(rename = "A")]
    NonNegativeDelta,
    /// Bracket identity `bracket_a = 2 + delta`; equilibrium when
    /// delta <= -2.
    #[serde(rename = "B")]
    NegativeDelta,
}

impl std::fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyCase::NonNegativeDelta => write!(f, "A"),
            FamilyCase::NegativeDelta => write!(f, "B"),
        }
    }
}

/// Free constants seeding one family game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    /// (a1, a4, a5, a8, a12, a14, a15) in this order.
    pub free_a: [f64; 7],
    /// Value shared by b1, b2, b5, b6.
    pub b_top: f64,
    /// Value shared by b3, b4, b7, b8.
    pub b_bottom: f64,
    /// b9..b16, unconstrained by the construction.
    pub b_rest: [f64; 8],
    pub case: FamilyCase,
}

/// Residuals from checking a game against one case's bracket identities on
/// sampled distributions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FamilyVerification {
    pub case: FamilyCase,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_residual_bracket_a: f64,
    pub max_residual_bracket_b: f64,
    pub pass: bool,
}

// 0-based slots of the free coefficients (a1, a4, a5, a8, a12, a14, a15).
const FREE_A_INDICES: [usize; 7] = [0, 3, 4, 7, 11, 13, 14];

// Dependent coefficients: target slot, weights on the free constants, and
// the additive constant per case (A, B). The linear part is shared; only
// the constants differ.
#[rustfmt::skip]
const DEPENDENT_A: [(usize, [f64; 7], f64, f64); 9] = [
    // slot   a1    a4    a5    a8   a12   a14   a15    case A  case B
    (1,  [ 0.0,  0.0, -1.0,  0.0,  1.0,  0.0,  1.0],    0.0,   -4.0), // a2
    (2,  [ 1.0,  1.0,  1.0,  0.0, -1.0,  0.0, -1.0],   -4.0,    8.0), // a3
    (5,  [ 0.0,  1.0,  1.0,  1.0, -1.0,  0.0, -1.0],   -4.0,    8.0), // a6
    (6,  [ 0.0, -1.0,  0.0,  0.0,  1.0,  0.0,  1.0],    0.0,   -4.0), // a7
    (8,  [ 1.0,  1.0,  1.0,  1.0, -1.0, -1.0, -1.0],   -4.0,   12.0), // a9
    (9,  [ 0.0,  1.0,  0.0,  1.0,  0.0, -1.0,  0.0],    0.0,    4.0), // a10
    (10, [ 1.0,  0.0,  1.0,  0.0,  0.0,  0.0, -1.0],    0.0,    4.0), // a11
    (12, [ 0.0, -1.0,  0.0, -1.0,  1.0,  1.0,  1.0],    4.0,   -8.0), // a13
    (15, [ 0.0,  1.0,  0.0,  1.0, -1.0,  0.0,  0.0],    0.0,    4.0), // a16
];

/// Builds the family game for the given parameters. The nine dependent
/// coefficients of Alice and the top/bottom pattern of Bob's first two
/// blocks are set exactly; everything is affine in the parameters.
pub fn generate(params: &FamilyParams) -> GameMatrix {
    let f = &params.free_a;
    let mut a = [0.0; 16];
    for (k, &slot) in FREE_A_INDICES.iter().enumerate() {
        a[slot] = f[k];
    }
    for (slot, weights, const_a, const_b) in DEPENDENT_A {
        let linear: f64 = (0..7).map(|k| weights[k] * f[k]).sum();
        a[slot] = linear
            + match params.case {
                FamilyCase::NonNegativeDelta => const_a,
                FamilyCase::NegativeDelta => const_b,
            };
    }

    let mut b = [0.0; 16];
    for slot in [0, 1, 4, 5] {
        b[slot] = params.b_top;
    }
    for slot in [2, 3, 6, 7] {
        b[slot] = params.b_bottom;
    }
    b[8..16].copy_from_slice(&params.b_rest);

    GameMatrix { a, b }
}

/// Checks the bracket identities of `case` on `samples` rejection-sampled
/// valid distributions. A failing report (not an error) means the game is
/// not in the family.
pub fn verify_family(
    game: &GameMatrix,
    case: FamilyCase,
    samples: usize,
    seed: u64,
) -> FamilyVerification {
    let tolerance = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_a = 0.0f64;
    let mut max_b = 0.0f64;
    for _ in 0..samples {
        let mu = sample_valid_independent(&mut rng);
        let dist = EprDistribution::from_independent(&mu);
        let brackets = nash_brackets(game, &dist);
        let delta = dist.chsh_delta_from_independent();
        let expected_a = match case {
            FamilyCase::NonNegativeDelta => 2.0 - delta,
            FamilyCase::NegativeDelta => 2.0 + delta,
        };
        max_a = max_a.max((brackets.bracket_a - expected_a).abs());
        max_b = max_b.max(brackets.bracket_b.abs());
    }
    FamilyVerification {
        case,
        samples,
        seed,
        tolerance,
        max_residual_bracket_a: max_a,
        max_residual_bracket_b: max_b,
        pass: max_a < tolerance && max_b < tolerance,
    }
}

/// Recovers the parameters of a game that satisfies one case's equations
/// (residual below 1e-9, loose enough for games deserialized from text),
/// or None when neither case fits.
pub fn membership_test(game: &GameMatrix) -> Option<FamilyParams> {
    const TOL: f64 = 1e-9;
    let mut free_a = [0.0; 7];
    for (k, &slot) in FREE_A_INDICES.iter().enumerate() {
        free_a[k] = game.a[slot];
    }
    let mut b_rest = [0.0; 8];
    b_rest.copy_from_slice(&game.b[8..16]);

    for case in [FamilyCase::NonNegativeDelta, FamilyCase::NegativeDelta] {
        let params = FamilyParams {
            free_a,
            b_top: game.b[0],
            b_bottom: game.b[2],
            b_rest,
            case,
        };
        let expected = generate(&params);
        let fits = (0..16).all(|i| {
            (game.a[i] - expected.a[i]).abs() <= TOL && (game.b[i] - expected.b[i]).abs() <= TOL
        });
        if fits {
            return Some(params);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{case_a_unit_game, case_b_unit_game, unit_params};

    #[test]
    fn unit_parameters_rebuild_the_reference_games() {
        let game = generate(&unit_params(FamilyCase::NonNegativeDelta));
        assert_eq!(game, case_a_unit_game());
        let game = generate(&unit_params(FamilyCase::NegativeDelta));
        assert_eq!(game, case_b_unit_game());
    }

    #[test]
    fn zero_parameters_leave_only_the_case_constants() {
        let params = FamilyParams {
            free_a: [0.0; 7],
            b_top: 0.0,
            b_bottom: 0.0,
            b_rest: [0.0; 8],
            case: FamilyCase::NonNegativeDelta,
        };
        let game = generate(&params);
        let mut expected_a = [0.0; 16];
        expected_a[2] = -4.0; // a3
        expected_a[5] = -4.0; // a6
        expected_a[8] = -4.0; // a9
        expected_a[12] = 4.0; // a13
        assert_eq!(game.a, expected_a);
        assert_eq!(game.b, [0.0; 16]);
    }

    #[test]
    fn reference_games_pass_their_case_checks() {
        let report = verify_family(&case_a_unit_game(), FamilyCase::NonNegativeDelta, 200, 3);
        assert!(report.pass, "max residuals {} / {}", report.max_residual_bracket_a, report.max_residual_bracket_b);
        let report = verify_family(&case_b_unit_game(), FamilyCase::NegativeDelta, 200, 3);
        assert!(report.pass);
    }

    #[test]
    fn constant_game_fails_verification() {
        let ones = GameMatrix { a: [1.0; 16], b: [1.0; 16] };
        let report = verify_family(&ones, FamilyCase::NonNegativeDelta, 50, 3);
        assert!(!report.pass);
        // Its bracket is identically zero, so the residual is |2 - delta|.
        assert!(report.max_residual_bracket_a > 0.5);
    }

    #[test]
    fn membership_recovers_reference_parameters() {
        let found = membership_test(&case_a_unit_game()).expect("case A member");
        assert_eq!(found.case, FamilyCase::NonNegativeDelta);
        assert_eq!(found.free_a, [1.0; 7]);
        assert_eq!((found.b_top, found.b_bottom), (1.0, 1.0));

        let found = membership_test(&case_b_unit_game()).expect("case B member");
        assert_eq!(found.case, FamilyCase::NegativeDelta);
        assert_eq!(found.free_a, [1.0; 7]);
    }

    #[test]
    fn dilemma_reduction_is_not_a_member() {
        let game = GameMatrix::from_symmetric(3.0, 0.0, 5.0, 1.0);
        assert!(membership_test(&game).is_none());
    }

    #[test]
    fn generation_is_affine_in_the_parameters() {
        let p1 = FamilyParams {
            free_a: [1.0, -2.0, 0.5, 3.0, 0.0, 1.5, -1.0],
            b_top: 2.0,
            b_bottom: -1.0,
            b_rest: [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0],
            case: FamilyCase::NegativeDelta,
        };
        let p2 = FamilyParams {
            free_a: [0.0, 4.0, -1.0, 2.0, 2.0, -3.0, 0.5],
            b_top: -0.5,
            b_bottom: 1.0,
            b_rest: [7.0; 8],
            case: FamilyCase::NegativeDelta,
        };
        let lambda = 0.3;
        let mix = FamilyParams {
            free_a: std::array::from_fn(|i| {
                lambda * p1.free_a[i] + (1.0 - lambda) * p2.free_a[i]
            }),
            b_top: lambda * p1.b_top + (1.0 - lambda) * p2.b_top,
            b_bottom: lambda * p1.b_bottom + (1.0 - lambda) * p2.b_bottom,
            b_rest: std::array::from_fn(|i| {
                lambda * p1.b_rest[i] + (1.0 - lambda) * p2.b_rest[i]
            }),
            case: FamilyCase::NegativeDelta,
        };
        let g1 = generate(&p1);
        let g2 = generate(&p2);
        let gm = generate(&mix);
        for i in 0..16 {
            assert!((gm.a[i] - (lambda * g1.a[i] + (1.0 - lambda) * g2.a[i])).abs() < 1e-12);
            assert!((gm.b[i] - (lambda * g1.b[i] + (1.0 - lambda) * g2.b[i])).abs() < 1e-12);
        }
    }
}
