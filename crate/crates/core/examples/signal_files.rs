//! Reading and writing signal batches as CSV and JSON.

use orbit_embed::cli::{parse_csv, to_csv, to_json};
use orbit_embed::sampling::{gaussian_signal, sample_rng};

fn main() -> orbit_embed::Result<()> {
    let signals: Vec<_> = (0..2)
        .map(|i| gaussian_signal(&mut sample_rng(9, i), 3))
        .collect();
    let csv = to_csv(&signals);
    print!("{csv}");
    println!("{}", to_json(&signals)?);
    assert_eq!(parse_csv(&csv)?, signals);
    println!("round trip exact");
    Ok(())
}
