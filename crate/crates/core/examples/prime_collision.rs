//! For translation by `Z_5`, the naive Fourier invariant map is invariant
//! but collapses two distinct orbits once `x_hat_1 = 0`.

use orbit_embed::action::distance;
use orbit_embed::analysis::{prime_collision_pair, prime_fourier_map};
use orbit_embed::CyclicAction;

fn main() -> orbit_embed::Result<()> {
    let p = 5;
    let modulation = CyclicAction::translation(p)?.to_fourier_domain()?;
    let (x, y) = prime_collision_pair(p)?;
    let (fx, fy) = (prime_fourier_map(p, &x)?, prime_fourier_map(p, &y)?);
    println!("x_hat = {:?}", x.as_slice());
    println!("y_hat = {:?}", y.as_slice());
    println!("|F(x) - F(y)| = {:.2e}", distance(&fx, &fy));
    println!(
        "d_G(x, y)     = {:.4}",
        modulation.quotient_distance(&x, &y)?
    );
    Ok(())
}
