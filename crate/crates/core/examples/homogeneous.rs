//! `T = omega I`: every invariant has degree `m`, so `F_T` is homogeneous
//! and `2n` output coordinates suffice.

use num_complex::Complex64;
use orbit_embed::action::distance;
use orbit_embed::sampling::{sample_rng, unit_signal};
use orbit_embed::{auto_target_dim, eval_invariants, is_homogeneous, separating_set, CyclicAction};

fn main() -> orbit_embed::Result<()> {
    for (m, weights) in [
        (3, vec![1, 1, 1, 1]),
        (4, vec![2, 2, 2]),
        (5, vec![1, 2, 3]),
    ] {
        let action = CyclicAction::diagonal(m, &weights)?;
        let n = action.n();
        println!(
            "{action}: homogeneous {}, N = {}, auto target {}",
            is_homogeneous(&action),
            n * (n + 1) / 2,
            auto_target_dim(&action)
        );
    }

    let action = CyclicAction::diagonal(3, &[1, 1, 1, 1])?;
    let set = separating_set(&action)?;
    let x = unit_signal(&mut sample_rng(3, 0), 4);
    let c = Complex64::from_polar(1.7, 0.4);
    let cx: Vec<Complex64> = x.iter().map(|z| c * z).collect();
    let expected: Vec<Complex64> = eval_invariants(&set, &x)?
        .iter()
        .map(|z| c.powu(3) * z)
        .collect();
    println!(
        "|F(cx) - c^3 F(x)| = {:.2e}",
        distance(&eval_invariants(&set, &cx)?, &expected)
    );
    Ok(())
}
