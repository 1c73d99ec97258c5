//! Games with 16 payoff coefficients per player, one per joint outcome,
//! laid out block-for-block like [`EprDistribution`].

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::probability::EprDistribution;

/// Payoff coefficients a1..a16 (first player) and b1..b16 (second player).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameMatrix {
    pub a: [f64; 16],
    pub b: [f64; 16],
}

/// The pair (p, q): probabilities of choosing the first direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixedStrategyPair {
    p: f64,
    q: f64,
}

/// Expected payoffs per pure direction pair; `alice[i][j]` and `bob[i][j]`
/// are indexed by Alice's direction `i` and Bob's direction `j` (0 = first).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffTable {
    pub alice: [[f64; 2]; 2],
    pub bob: [[f64; 2]; 2],
}

impl GameMatrix {
    pub fn new(a: [f64; 16], b: [f64; 16]) -> Result<Self, Error> {
        for (name, coeffs) in [("a", &a), ("b", &b)] {
            if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoefficient(format!("{name}{}", i + 1)));
            }
        }
        Ok(Self { a, b })
    }

    /// The block-constant game: first blocks pay (alpha, alpha), the cross
    /// blocks (beta, gamma) and (gamma, beta), the last (delta, delta).
    /// Its payoff table equals the classical bimatrix
    /// ((alpha,alpha),(beta,gamma);(gamma,beta),(delta,delta)) for every
    /// normalized distribution.
    pub fn from_symmetric(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        let mut a = [0.0; 16];
        let mut b = [0.0; 16];
        for i in 0..4 {
            a[i] = alpha;
            b[i] = alpha;
            a[4 + i] = beta;
            b[4 + i] = gamma;
            a[8 + i] = gamma;
            b[8 + i] = beta;
            a[12 + i] = delta;
            b[12 + i] = delta;
        }
        Self { a, b }
    }

    /// Expected payoff per direction pair: the block-wise dot product of
    /// coefficients with the distribution.
    pub fn pure_payoffs(&self, dist: &EprDistribution) -> PayoffTable {
        let eps = dist.epsilon();
        let mut alice = [[0.0; 2]; 2];
        let mut bob = [[0.0; 2]; 2];
        for block in 0..4 {
            let o = 4 * block;
            let (mut pa, mut pb) = (0.0, 0.0);
            for k in 0..4 {
                pa += self.a[o + k] * eps[o + k];
                pb += self.b[o + k] * eps[o + k];
            }
            alice[block / 2][block % 2] = pa;
            bob[block / 2][block % 2] = pb;
        }
        PayoffTable { alice, bob }
    }

    pub fn mixed_payoff(&self, dist: &EprDistribution, pair: &MixedStrategyPair) -> (f64, f64) {
        self.pure_payoffs(dist).mixed_payoff(pair)
    }
}

impl MixedStrategyPair {
    pub fn new(p: f64, q: f64) -> Result<Self, Error> {
        for (name, value) in [("p", p), ("q", q)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::StrategyOutOfRange { name, value });
            }
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl PayoffTable {
    /// The bilinear form (p, 1-p) T (q, 1-q) for each player, without range
    /// checks on p and q.
    pub fn payoff_at(&self, p: f64, q: f64) -> (f64, f64) {
        let form = |t: &[[f64; 2]; 2]| {
            p * (q * t[0][0] + (1.0 - q) * t[0][1]) + (1.0 - p) * (q * t[1][0] + (1.0 - q) * t[1][1])
        };
        (form(&self.alice), form(&self.bob))
    }

    pub fn mixed_payoff(&self, pair: &MixedStrategyPair) -> (f64, f64) {
        self.payoff_at(pair.p, pair.q)
    }

    pub fn entry(&self, alice_dir: usize, bob_dir: usize) -> (f64, f64) {
        (self.alice[alice_dir][bob_dir], self.bob[alice_dir][bob_dir])
    }
}
