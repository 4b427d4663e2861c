//! The bound `3 m |l|` against sampled ratios and the sampled sup-norm
//! constants of `F_T`.

use orbit_embed::analysis::{empirical_lipschitz, sup_norm_check};
use orbit_embed::oracle::dense_operator_norm;
use orbit_embed::{CyclicAction, Pipeline, TargetDim};

fn main() -> orbit_embed::Result<()> {
    let p = Pipeline::new(
        CyclicAction::diagonal(12, &[6, 3, 4, 2, 2])?,
        TargetDim::Auto,
        42,
    )?;
    let norm = p.reducer().operator_norm();
    println!("|l| = {norm:.12} (power iteration)");
    println!(
        "|l| = {:.12} (SVD)",
        dense_operator_norm(p.reducer().matrix())
    );

    let sup = sup_norm_check(p.set(), 10_000, 7)?;
    let bound = p.lipschitz_bound().with_sampled(
        sup.case("component_sup").unwrap_or(f64::NAN),
        sup.case("partial_sup").unwrap_or(f64::NAN),
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&bound).expect("serializable")
    );

    let report = empirical_lipschitz(&p, 10_000, 7)?;
    println!(
        "max |dPhi| / d_G over {} pairs: {:.4} (pass: {})",
        report.samples, report.statistic, report.pass
    );
    Ok(())
}
