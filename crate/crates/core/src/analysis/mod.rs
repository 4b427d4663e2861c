//! Sampling-based verification of invariance, separation and stability.
//!
//! Every suite is deterministic in `(pipeline, samples, seed)`: sample `i`
//! draws from its own ChaCha stream, samples are evaluated in parallel and
//! reduced with order-independent max/min folds.

mod prime;
mod report;
mod suites;
mod sweep;

pub use prime::{is_prime, prime_collision_pair, prime_fourier_map};
pub use report::{Case, Criterion, VerificationReport, MAX_SAMPLE_CASES};
pub use suites::{
    check_invariance, empirical_lipschitz, nonparallel_falsification, separation_margin,
    sup_norm_check, tilde_rescale, INVARIANCE_TOLERANCE, LIPSCHITZ_SLACK, MIN_QUOTIENT_DISTANCE,
    SEPARATION_HEADROOM,
};
pub use sweep::{
    find_witness, lower_lipschitz_sweep, lower_lipschitz_sweep_with_witness, SweepPoint,
    SweepResult, Witness, MAX_DECREASE_FACTOR, SLOPE_RANGE,
};
