//! Deterministic random draws.
//!
//! Every random quantity in the crate comes from a ChaCha20 stream seeded
//! with `ChaCha20Rng::seed_from_u64(seed)`. Per-sample streams use the same
//! seed with the ChaCha stream id set to the sample index, so samples can be
//! drawn in any order (or in parallel) and still reproduce exactly.
//! Complex standard normals have independent real and imaginary parts, each
//! `N(0, 1/2)`, drawn with `rand_distr::StandardNormal`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::action::ComplexSignal;

pub fn master_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_signal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexSignal {
    ComplexSignal::new((0..n).map(|_| complex_normal(rng)).collect())
}

/// Uniform point on the unit sphere of `ℂⁿ` (normalized Gaussian).
pub fn unit_signal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexSignal {
    loop {
        let g = gaussian_signal(rng, n);
        let r = g.norm();
        if r > 1e-150 {
            return g.scaled(1.0 / r);
        }
    }
}

/// `exp(U)` with `U` uniform on `[ln lo, ln hi]`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.random();
    (lo.ln() + u * (hi.ln() - lo.ln())).exp()
}
