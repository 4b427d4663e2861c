//! The ratio `|Phi(x) - Phi(x_eps)| / d_G(x, x_eps)` shrinks linearly in
//! `eps` near a point with nontrivial stabilizer, so `Phi` has no lower
//! Lipschitz bound.

use orbit_embed::analysis::{lower_lipschitz_sweep_with_witness, Witness};
use orbit_embed::{CyclicAction, Pipeline, TargetDim};

fn main() -> orbit_embed::Result<()> {
    let p = Pipeline::new(
        CyclicAction::diagonal(12, &[6, 3, 4, 2, 2])?,
        TargetDim::Auto,
        42,
    )?;
    let witness = Witness {
        support: 3,
        perturbed: 4,
    };
    let sweep = lower_lipschitz_sweep_with_witness(&p, &[1e-1, 3e-2, 1e-2, 3e-3, 1e-3], witness)?;
    print!("{}", sweep.to_csv());
    println!(
        "log-log slope {:.4}, decrease factor {:.3e}, passes: {}",
        sweep.slope,
        sweep.decrease_factor(),
        sweep.passes()
    );
    Ok(())
}
