//! Repeated-run simulation of the experiment under mixed strategies.
//!
//! Runs are i.i.d. Per run the draws are, in this fixed order: Alice's
//! direction, Bob's direction, then the joint outcome from the chosen
//! block's conditional distribution. The generator is ChaCha8 seeded with
//! the caller's seed, so identical inputs reproduce bit-identical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::game::{GameMatrix, MixedStrategyPair};
use crate::probability::{CorrelationSet, EprDistribution, TOL_EXTERNAL};

/// One experimental run. Directions are 1-based; outcomes are +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunRecord {
    pub run: u64,
    pub alice_dir: u8,
    pub bob_dir: u8,
    pub x: i8,
    pub y: i8,
    pub payoff_a: f64,
    pub payoff_b: f64,
}

/// Aggregate of a simulation. Blocks never visited (p or q pinned to 0
/// or 1) report no empirical probabilities rather than zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub n_runs: u64,
    pub seed: u64,
    /// Outcome counts per block cell; cells follow the distribution layout.
    pub counts: [[u64; 4]; 4],
    /// Per-block counts normalized by block visits, when visited.
    pub empirical_eps: [Option<[f64; 4]>; 4],
    pub payoff_mean: (f64, f64),
    pub payoff_stderr: (f64, f64),
}

impl SimulationSummary {
    /// Correlations from the empirical block probabilities; requires every
    /// block to have been visited.
    pub fn empirical_correlations(&self) -> Option<CorrelationSet> {
        let corr = |block: Option<[f64; 4]>| block.map(|[pp, pm, mp, mm]| pp - pm - mp + mm);
        let e11 = corr(self.empirical_eps[0])?;
        let e12 = corr(self.empirical_eps[1])?;
        let e21 = corr(self.empirical_eps[2])?;
        let e22 = corr(self.empirical_eps[3])?;
        Some(CorrelationSet {
            e11,
            e12,
            e21,
            e22,
            delta: e11 + e12 + e21 - e22,
        })
    }

    pub fn empirical_delta(&self) -> Option<f64> {
        self.empirical_correlations().map(|c| c.delta)
    }
}

/// Running mean and spread via Welford's update.
#[derive(Default)]
struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d1 = x - self.mean;
        self.mean += d1 / self.n as f64;
        self.m2 += d1 * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
        }
    }
}

pub fn simulate(
    game: &GameMatrix,
    dist: &EprDistribution,
    pair: &MixedStrategyPair,
    n: u64,
    seed: u64,
) -> Result<SimulationSummary, Error> {
    simulate_with(game, dist, pair, n, seed, |_| {})
}

/// Like [`simulate`] but hands every run to `on_run` (for per-run export).
/// The observer does not affect the random stream.
pub fn simulate_with<F: FnMut(&RunRecord)>(
    game: &GameMatrix,
    dist: &EprDistribution,
    pair: &MixedStrategyPair,
    n: u64,
    seed: u64,
    mut on_run: F,
) -> Result<SimulationSummary, Error> {
    if n == 0 {
        return Err(Error::EmptySimulation);
    }
    let report = dist.validate(TOL_EXTERNAL);
    if !report.is_valid {
        return Err(Error::InvalidDistribution(
            report.violations[0].constraint.clone(),
        ));
    }

    // Per-block cumulative outcome weights; each block sums to 1 up to
    // round-off, tiny negatives clamp to zero.
    let mut cumulative = [[0.0; 4]; 4];
    for (block, cdf) in cumulative.iter_mut().enumerate() {
        let entries = dist.block(block);
        let mut acc = 0.0;
        for (cell, c) in cdf.iter_mut().enumerate() {
            acc += entries[cell].max(0.0);
            *c = acc;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [[0u64; 4]; 4];
    let (mut acc_a, mut acc_b) = (Accumulator::default(), Accumulator::default());

    for run in 1..=n {
        let alice_dir = usize::from(rng.random::<f64>() >= pair.p());
        let bob_dir = usize::from(rng.random::<f64>() >= pair.q());
        let block = 2 * alice_dir + bob_dir;

        let u = rng.random::<f64>();
        let cell = cumulative[block]
            .iter()
            .position(|&c| u < c)
            .unwrap_or(3);

        counts[block][cell] += 1;
        let payoff_a = game.a[4 * block + cell];
        let payoff_b = game.b[4 * block + cell];
        acc_a.push(payoff_a);
        acc_b.push(payoff_b);

        on_run(&RunRecord {
            run,
            alice_dir: alice_dir as u8 + 1,
            bob_dir: bob_dir as u8 + 1,
            x: if cell < 2 { 1 } else { -1 },
            y: if cell % 2 == 0 { 1 } else { -1 },
            payoff_a,
            payoff_b,
        });
    }

    let empirical_eps = std::array::from_fn(|block| {
        let visits: u64 = counts[block].iter().sum();
        (visits > 0).then(|| std::array::from_fn(|cell| counts[block][cell] as f64 / visits as f64))
    });

    Ok(SimulationSummary {
        n_runs: n,
        seed,
        counts,
        empirical_eps,
        payoff_mean: (acc_a.mean, acc_b.mean),
        payoff_stderr: (acc_a.stderr(), acc_b.stderr()),
    })
}
