//! Seeded, counter-style random streams.
//!
//! Trial `t` of a run with master seed `S` uses the ChaCha8 generator keyed
//! by `S` (expanded with `SeedableRng::seed_from_u64`) and with its 64-bit
//! stream id set to `t`. Distinct trials therefore read disjoint keystreams,
//! and a trial can be regenerated in isolation from `(S, t)` alone.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Master seed plus the documented trial → substream mapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedStream {
    pub master_seed: u64,
}

impl SeedStream {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    /// Generator for one trial: key from the master seed, stream id = trial.
    pub fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial);
        rng
    }

    pub fn gaussians(&self, trial: u64) -> GaussianSource {
        GaussianSource::new(self.trial_rng(trial))
    }
}

/// Standard normal variates by the Box–Muller transform: every pair of
/// variates consumes exactly two 64-bit words, so the sequence is
/// platform-stable and never depends on rejection outcomes.
pub struct GaussianSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    pub fn new(rng: ChaCha8Rng) -> Self {
        Self { rng, spare: None }
    }

    /// Uniform on (0, 1].
    pub fn uniform(&mut self) -> f64 {
        1.0 - (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn standard(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Normal variate with the given variance.
    pub fn normal(&mut self, variance: f64) -> f64 {
        variance.sqrt() * self.standard()
    }
}
