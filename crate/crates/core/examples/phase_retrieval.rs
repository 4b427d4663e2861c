//! Phase retrieval up to sign: `T = -I` on `C^2`. The embedding identifies
//! `x` with `-x` and nothing else.

use orbit_embed::action::distance;
use orbit_embed::{ComplexSignal, CyclicAction, Pipeline, TargetDim};

fn main() -> orbit_embed::Result<()> {
    let action = CyclicAction::diagonal(2, &[1, 1])?;
    let p = Pipeline::new(action.clone(), TargetDim::Auto, 42)?;
    println!(
        "{action}: {} invariants, target C^{}",
        p.set().len(),
        p.target_dim()
    );
    for mono in p.set().monomials() {
        println!("  {mono}");
    }

    let x = ComplexSignal::from_real(&[0.6, 0.8]);
    let minus_x = action.act(1, &x)?;
    let y = ComplexSignal::from_real(&[0.6, -0.8]);
    let phi = p.embed(&x)?;
    println!(
        "|Phi(x) - Phi(-x)| = {:.2e}",
        distance(&phi, &p.embed(&minus_x)?)
    );
    println!(
        "|Phi(x) - Phi(y)|  = {:.4}   (d_G = {:.4})",
        distance(&phi, &p.embed(&y)?),
        action.quotient_distance(&x, &y)?
    );
    Ok(())
}
