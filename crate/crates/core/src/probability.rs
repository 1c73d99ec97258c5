//! Joint probability distributions for the two-party, two-setting experiment.
//!
//! A distribution holds 16 probabilities eps1..eps16 in four blocks of four,
//! one block per pair of measurement directions:
//!
//! ```text
//! block 0: (S1, S1')  eps1..eps4      block 1: (S1, S2')  eps5..eps8
//! block 2: (S2, S1')  eps9..eps12     block 3: (S2, S2')  eps13..eps16
//! ```
//!
//! Within each block the outcome order is (+1,+1), (+1,-1), (-1,+1), (-1,-1).
//! A physically admissible distribution has every block sum to 1 and satisfies
//! eight no-signaling equalities: each party's marginal is independent of the
//! other party's direction choice. Those constraints leave 8 of the 16 entries
//! independent, and the rest follow linearly.
//!
//! Indices are 1-based in documentation, error messages, and constraint ids,
//! 0-based in code.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default residual tolerance for externally supplied data.
pub const TOL_EXTERNAL: f64 = 1e-9;
/// Default residual tolerance for internally generated data.
pub const TOL_INTERNAL: f64 = 1e-12;

/// 0-based positions of the independent entries (eps1, eps4, eps5, eps8,
/// eps9, eps12, eps14, eps15).
pub const INDEPENDENT_INDICES: [usize; 8] = [0, 3, 4, 7, 8, 11, 13, 14];

/// 0-based positions of the dependent entries (eps2, eps3, eps6, eps7,
/// eps10, eps11, eps13, eps16).
pub const DEPENDENT_INDICES: [usize; 8] = [1, 2, 5, 6, 9, 10, 12, 15];

// Each dependent entry is (1 + c . mu) / 2 with mu in independent-index order.
const COMPLETION_COEFFS: [[f64; 8]; 8] = [
    [-1.0, -1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0],  // eps2
    [-1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0, 1.0],  // eps3
    [1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0, -1.0],  // eps6
    [-1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0],  // eps7
    [-1.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, -1.0],  // eps10
    [1.0, -1.0, -1.0, 1.0, -1.0, -1.0, -1.0, 1.0],  // eps11
    [-1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0],  // eps13
    [1.0, -1.0, -1.0, 1.0, -1.0, 1.0, -1.0, -1.0],  // eps16
];

// The eight no-signaling equalities, as (label, lhs pair, rhs pair).
const LOCALITY_CONSTRAINTS: [(&str, [usize; 2], [usize; 2]); 8] = [
    ("eps1+eps2 = eps5+eps6", [0, 1], [4, 5]),
    ("eps1+eps3 = eps9+eps11", [0, 2], [8, 10]),
    ("eps9+eps10 = eps13+eps14", [8, 9], [12, 13]),
    ("eps5+eps7 = eps13+eps15", [4, 6], [12, 14]),
    ("eps3+eps4 = eps7+eps8", [2, 3], [6, 7]),
    ("eps11+eps12 = eps15+eps16", [10, 11], [14, 15]),
    ("eps2+eps4 = eps10+eps12", [1, 3], [9, 11]),
    ("eps6+eps8 = eps14+eps16", [5, 7], [13, 15]),
];

/// The 16 joint outcome probabilities of one experiment.
///
/// Values outside `[0, 1]` are representable on purpose: the linear identities
/// used by the game-family checks hold for any completion, and [`validate`]
/// reports range violations rather than refusing to construct them.
///
/// [`validate`]: EprDistribution::validate
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EprDistribution {
    #[serde(rename = "epsilon")]
    eps: [f64; 16],
}

/// The 8 independent probabilities (eps1, eps4, eps5, eps8, eps9, eps12,
/// eps14, eps15) from which a full distribution is completed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndependentProbs {
    #[serde(rename = "mu")]
    mu: [f64; 8],
}

/// The four pair correlations and their CHSH combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationSet {
    pub e11: f64,
    pub e12: f64,
    pub e21: f64,
    pub e22: f64,
    /// e11 + e12 + e21 - e22.
    pub delta: f64,
}

/// One failed constraint with the magnitude of its residual.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub constraint: String,
    pub residual: f64,
}

/// Outcome of checking a distribution against all constraints.
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintReport {
    pub violations: Vec<Violation>,
    pub is_valid: bool,
    /// Whether |delta| <= 2 + tol, i.e. membership in the local polytope as
    /// seen by the single CHSH facet used here. None when the basic
    /// constraints already fail.
    pub is_local_polytope_member: Option<bool>,
}

impl IndependentProbs {
    /// Checks every entry lies in `[0, 1]`. Entries are named by the
    /// distribution slot they fill (eps1, eps4, ...).
    pub fn new(mu: [f64; 8]) -> Result<Self, Error> {
        for (k, &v) in mu.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ProbabilityOutOfRange {
                    name: format!("eps{}", INDEPENDENT_INDICES[k] + 1),
                    value: v,
                });
            }
        }
        Ok(Self { mu })
    }

    pub fn values(&self) -> &[f64; 8] {
        &self.mu
    }
}

impl EprDistribution {
    pub fn new(eps: [f64; 16]) -> Self {
        Self { eps }
    }

    /// Completes the 8 dependent entries from the independent set.
    ///
    /// The completion satisfies all four block sums and all eight
    /// no-signaling equalities identically, but the dependent entries may
    /// fall outside `[0, 1]`; callers decide whether that matters via
    /// [`validate`](Self::validate).
    pub fn from_independent(mu: &IndependentProbs) -> Self {
        let m = &mu.mu;
        let mut eps = [0.0; 16];
        for (k, &i) in INDEPENDENT_INDICES.iter().enumerate() {
            eps[i] = m[k];
        }
        for (row, &i) in DEPENDENT_INDICES.iter().enumerate() {
            let c = &COMPLETION_COEFFS[row];
            let dot: f64 = (0..8).map(|k| c[k] * m[k]).sum();
            eps[i] = 0.5 * (1.0 + dot);
        }
        Self { eps }
    }

    pub fn epsilon(&self) -> &[f64; 16] {
        &self.eps
    }

    /// Entries of one direction-pair block, `block` in 0..4.
    pub fn block(&self, block: usize) -> [f64; 4] {
        let o = 4 * block;
        [self.eps[o], self.eps[o + 1], self.eps[o + 2], self.eps[o + 3]]
    }

    /// The independent entries in their canonical order.
    pub fn independent_part(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        for (k, &i) in INDEPENDENT_INDICES.iter().enumerate() {
            out[k] = self.eps[i];
        }
        out
    }

    /// Reports every range, normalization, and no-signaling residual
    /// exceeding `tol`. Always produces a report; never errors.
    pub fn validate(&self, tol: f64) -> ConstraintReport {
        let mut violations = Vec::new();

        for (i, &e) in self.eps.iter().enumerate() {
            let residual = if e.is_nan() {
                f64::INFINITY
            } else {
                (-e).max(e - 1.0).max(0.0)
            };
            if residual > tol {
                violations.push(Violation {
                    constraint: format!("eps{} in [0,1]", i + 1),
                    residual,
                });
            }
        }

        for b in 0..4 {
            let sum: f64 = self.block(b).iter().sum();
            let residual = (sum - 1.0).abs();
            if residual > tol || residual.is_nan() {
                violations.push(Violation {
                    constraint: format!("sum(eps{}..eps{}) = 1", 4 * b + 1, 4 * b + 4),
                    residual,
                });
            }
        }

        for (label, lhs, rhs) in LOCALITY_CONSTRAINTS {
            let residual =
                (self.eps[lhs[0]] + self.eps[lhs[1]] - self.eps[rhs[0]] - self.eps[rhs[1]]).abs();
            if residual > tol || residual.is_nan() {
                violations.push(Violation {
                    constraint: label.to_string(),
                    residual,
                });
            }
        }

        let is_valid = violations.is_empty();
        let is_local_polytope_member =
            is_valid.then(|| self.correlations().delta.abs() <= 2.0 + tol);
        ConstraintReport {
            violations,
            is_valid,
            is_local_polytope_member,
        }
    }

    /// The four correlations <S_i S_j'> and their CHSH sum.
    pub fn correlations(&self) -> CorrelationSet {
        let corr = |b: usize| {
            let [pp, pm, mp, mm] = self.block(b);
            pp - pm - mp + mm
        };
        let (e11, e12, e21, e22) = (corr(0), corr(1), corr(2), corr(3));
        CorrelationSet {
            e11,
            e12,
            e21,
            e22,
            delta: e11 + e12 + e21 - e22,
        }
    }

    /// The CHSH sum computed from the independent entries alone:
    /// 2(eps1 + eps4 + eps5 + eps8 + eps9 + eps12 + eps14 + eps15 - 2).
    ///
    /// Agrees with [`correlations`](Self::correlations)`.delta` to round-off
    /// on any distribution satisfying normalization and no-signaling.
    pub fn chsh_delta_from_independent(&self) -> f64 {
        let sum: f64 = INDEPENDENT_INDICES.iter().map(|&i| self.eps[i]).sum();
        2.0 * (sum - 2.0)
    }

    /// 2 - |delta|; negative exactly when the CHSH bound is violated.
    pub fn bell_discriminant(&self) -> f64 {
        2.0 - self.correlations().delta.abs()
    }
}

/// Draws an independent set whose completion lies entirely in `[0, 1]`,
/// by rejection from the uniform cube.
pub fn sample_valid_independent<R: Rng + ?Sized>(rng: &mut R) -> IndependentProbs {
    loop {
        let mut mu = [0.0; 8];
        for v in &mut mu {
            *v = rng.random::<f64>();
        }
        let candidate = IndependentProbs { mu };
        let completed = EprDistribution::from_independent(&candidate);
        if completed.eps.iter().all(|&e| (0.0..=1.0).contains(&e)) {
            return candidate;
        }
    }
}
