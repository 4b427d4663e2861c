//! Runs every sampling suite on a config file, the same way `verify` does,
//! without writing anything.
//!
//! `cargo run --example verification_suites -- configs/z12.json`

use orbit_embed::analysis::{
    check_invariance, empirical_lipschitz, nonparallel_falsification, separation_margin,
    sup_norm_check,
};
use orbit_embed::cli::RunConfig;

fn main() -> orbit_embed::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "configs/z12.json".into());
    let cfg = RunConfig::load(path.as_ref())?;
    let p = cfg.pipeline()?;
    let seed = cfg.seed;
    let reports = [
        check_invariance(&p, 1000, seed)?,
        separation_margin(&p, 1000, 0.1, seed)?,
        empirical_lipschitz(&p, 10_000, seed)?,
        nonparallel_falsification(&p, 1000, 0.1, seed)?,
        sup_norm_check(p.set(), 10_000, seed)?,
    ];
    for r in &reports {
        println!(
            "{:<12} {}  statistic {:.4e}  threshold {:.4e}",
            r.suite,
            if r.pass { "pass" } else { "FAIL" },
            r.statistic,
            r.threshold
        );
    }
    Ok(())
}
