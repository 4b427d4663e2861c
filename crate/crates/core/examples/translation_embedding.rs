//! Circular translation on `C^8`: shifted copies of a signal embed to the
//! same point, and the quotient distance picks the best alignment.

use orbit_embed::action::distance;
use orbit_embed::sampling::{gaussian_signal, sample_rng};
use orbit_embed::{CyclicAction, Pipeline, TargetDim};

fn main() -> orbit_embed::Result<()> {
    let action = CyclicAction::translation(8)?;
    let p = Pipeline::new(action.clone(), TargetDim::Auto, 42)?;
    println!("{action}; Fourier-domain action {}", p.domain_action());
    println!("N = {}, embedding into C^{}", p.set().len(), p.target_dim());

    let x = gaussian_signal(&mut sample_rng(1, 0), 8);
    let phi = p.embed(&x)?;
    for k in [1, 3, 5] {
        let shifted = action.act(k, &x)?;
        println!(
            "shift {k}: |Phi(T^k x) - Phi(x)| = {:.2e}",
            distance(&phi, &p.embed(&shifted)?)
        );
    }
    let y = gaussian_signal(&mut sample_rng(1, 1), 8);
    println!(
        "unrelated y: d_G = {:.4}, |Phi(x) - Phi(y)| = {:.4}",
        action.quotient_distance(&x, &y)?,
        distance(&phi, &p.embed(&y)?)
    );
    Ok(())
}
