//! Seeded sampling shared by the numerical verifiers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pseudolattice::LatticeVector;

/// Bound on `|a|, |b|` for sampled lattice vectors.
pub const LATTICE_COEFF_BOUND: i64 = 10;
/// Sampled points `v` lie in `[−5, 5]²`.
pub const POINT_HALF_WIDTH: f64 = 5.0;

/// Deterministic sampler over the verification domain.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn lattice_vector(&mut self) -> LatticeVector {
        let k = LATTICE_COEFF_BOUND;
        LatticeVector::new(self.rng.gen_range(-k..=k), self.rng.gen_range(-k..=k))
    }

    pub fn point(&mut self) -> Complex64 {
        let w = POINT_HALF_WIDTH;
        Complex64::new(self.rng.gen_range(-w..=w), self.rng.gen_range(-w..=w))
    }

    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
