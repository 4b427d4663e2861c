//! The separating monomials of `Z_12` acting on `C^5` with weights
//! `[6, 3, 4, 2, 2]`, in canonical order.

use orbit_embed::{coordinate_order, separating_set, CyclicAction};

fn main() -> orbit_embed::Result<()> {
    let action = CyclicAction::diagonal(12, &[6, 3, 4, 2, 2])?;
    let set = separating_set(&action)?;
    let orders: Vec<usize> = action
        .weights()
        .iter()
        .map(|&e| coordinate_order(12, e))
        .collect();
    println!("{action}, coordinate orders {orders:?}");
    for (idx, mono) in set.monomials().iter().enumerate() {
        let note = if mono.is_degenerate() {
            "  (pure power)"
        } else {
            ""
        };
        println!(
            "{idx:>2}  {:<12} degree {}{note}",
            mono.to_string(),
            mono.degree()
        );
    }
    println!("{}", set.to_json()?);
    Ok(())
}
