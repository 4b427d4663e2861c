//! Batch front end behind the `orbit-embed` binary.
//!
//! Each subcommand reads a [`RunConfig`], builds the pipeline and writes its
//! results under the output directory:
//!
//! | command     | files                                              |
//! |-------------|----------------------------------------------------|
//! | `monomials` | `monomials.json`                                   |
//! | `embed`     | `embeddings.json`, `embeddings.csv`                |
//! | `verify`    | `report_<suite>.json`, `verify.json`               |
//! | `sweep`     | `sweep.json`, `sweep.csv`                          |
//! | `fixtures`  | `fixtures.json`                                    |

mod config;
mod signals;

use std::path::{Path, PathBuf};

use serde::Serialize;

pub use config::{
    ActionSpec, MarginSpec, ReducerConfig, RunConfig, SamplesSpec, SignalFormat, SignalSource,
    SuiteConfig, SweepSpec, TargetDimSpec, DEFAULT_EPSILONS,
};
pub use signals::{load_signals, parse_csv, parse_json, to_csv, to_json, write_signals};

use crate::action::{distance, ComplexSignal};
use crate::analysis::{self, VerificationReport};
use crate::embed::{eval_gradient, eval_invariants, LipschitzBound, Pipeline};
use crate::error::{Error, Result};
use crate::invariants::Monomial;
use crate::oracle;
use crate::sampling::{sample_rng, unit_signal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Monomials,
    Embed,
    Verify,
    Sweep,
    Fixtures,
}

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    /// False when a verification suite failed.
    pub success: bool,
    pub files: Vec<PathBuf>,
    pub summary: String,
}

/// Runs one subcommand against a parsed config.
pub fn run(command: Command, mut config: RunConfig, overrides: &Overrides) -> Result<Outcome> {
    if let Some(seed) = overrides.seed {
        config.seed = seed;
    }
    if let Some(out) = &overrides.out {
        config.output_dir = out.clone();
    }
    let pipeline = config.pipeline()?;
    std::fs::create_dir_all(&config.output_dir)?;
    let out = config.output_dir.as_path();
    match command {
        Command::Monomials => monomials(&pipeline, out),
        Command::Embed => embed(&pipeline, &config, out),
        Command::Verify => verify(&pipeline, &config, out),
        Command::Sweep => sweep(&pipeline, &config, out),
        Command::Fixtures => fixtures(&pipeline, &config, out),
    }
}

/// Loads the config file and runs the subcommand.
pub fn run_file(command: Command, config_path: &Path, overrides: &Overrides) -> Result<Outcome> {
    run(command, RunConfig::load(config_path)?, overrides)
}

fn write_json<T: Serialize>(path: PathBuf, value: &T, files: &mut Vec<PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    files.push(path);
    Ok(())
}

fn monomials(p: &Pipeline, out: &Path) -> Result<Outcome> {
    let mut files = Vec::new();
    write_json(out.join("monomials.json"), p.set(), &mut files)?;
    Ok(Outcome {
        success: true,
        files,
        summary: format!("{} monomials for {}", p.set().len(), p.domain_action()),
    })
}

fn embed(p: &Pipeline, config: &RunConfig, out: &Path) -> Result<Outcome> {
    let source = config
        .signals
        .as_ref()
        .ok_or_else(|| Error::Usage("embed needs a \"signals\" entry in the config".into()))?;
    let signals = load_signals(&source.path, source.resolved_format()?)?;
    let mut embedded = Vec::with_capacity(signals.len());
    for (record, s) in signals.iter().enumerate() {
        if s.len() != p.n() {
            return Err(Error::Data {
                record,
                message: format!(
                    "signal has {} entries, the action acts on C^{}",
                    s.len(),
                    p.n()
                ),
            });
        }
        let phi = p.embed(s).map_err(|e| Error::Data {
            record,
            message: e.to_string(),
        })?;
        embedded.push(ComplexSignal::new(phi));
    }
    let mut files = Vec::new();
    for (name, fmt) in [
        ("embeddings.json", SignalFormat::Json),
        ("embeddings.csv", SignalFormat::Csv),
    ] {
        let path = out.join(name);
        write_signals(&path, fmt, &embedded)?;
        files.push(path);
    }
    Ok(Outcome {
        success: true,
        files,
        summary: format!(
            "embedded {} signals into C^{}",
            embedded.len(),
            p.target_dim()
        ),
    })
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    action: String,
    target_dim: usize,
    lipschitz_bound: LipschitzBound,
    reports: &'a [VerificationReport],
}

fn sweep_applies(p: &Pipeline) -> bool {
    p.m() >= 3 && p.n() >= 3
}

fn run_sweep(p: &Pipeline, spec: &SweepSpec) -> Result<analysis::SweepResult> {
    match spec.witness {
        Some(w) => analysis::lower_lipschitz_sweep_with_witness(p, &spec.epsilons, w),
        None => analysis::lower_lipschitz_sweep(p, &spec.epsilons),
    }
}

fn verify(p: &Pipeline, config: &RunConfig, out: &Path) -> Result<Outcome> {
    let seed = config.seed;
    let suites = &config.suites;
    let mut reports = Vec::new();
    if let Some(s) = suites.invariance {
        reports.push(analysis::check_invariance(p, s.samples, seed)?);
    }
    if let Some(s) = suites.separation {
        reports.push(analysis::separation_margin(p, s.samples, s.delta, seed)?);
    }
    if let Some(s) = suites.lipschitz {
        reports.push(analysis::empirical_lipschitz(p, s.samples, seed)?);
    }
    if let Some(s) = suites.nonparallel {
        reports.push(analysis::nonparallel_falsification(
            p, s.samples, s.delta, seed,
        )?);
    }
    let mut bound = p.lipschitz_bound();
    if let Some(s) = suites.sup_norm {
        let r = analysis::sup_norm_check(p.set(), s.samples, seed)?;
        if let (Some(c), Some(g)) = (r.case("component_sup"), r.case("partial_sup")) {
            bound = bound.with_sampled(c, g);
        }
        reports.push(r);
    }
    if let Some(spec) = &suites.sweep {
        if sweep_applies(p) {
            reports.push(run_sweep(p, spec)?.report());
        } else {
            log::warn!("skipping sweep: it needs m, n >= 3");
        }
    }

    let mut files = Vec::new();
    for r in &reports {
        write_json(out.join(format!("report_{}.json", r.suite)), r, &mut files)?;
    }
    let summary = VerifySummary {
        action: p.action().to_string(),
        target_dim: p.target_dim(),
        lipschitz_bound: bound,
        reports: &reports,
    };
    write_json(out.join("verify.json"), &summary, &mut files)?;

    let lines: Vec<String> = reports
        .iter()
        .map(|r| {
            format!(
                "{} {:<12} statistic={:.6e} threshold={:.6e}",
                if r.pass { "PASS" } else { "FAIL" },
                r.suite,
                r.statistic,
                r.threshold
            )
        })
        .collect();
    Ok(Outcome {
        success: reports.iter().all(|r| r.pass),
        files,
        summary: lines.join("\n"),
    })
}

fn sweep(p: &Pipeline, config: &RunConfig, out: &Path) -> Result<Outcome> {
    let spec = config.suites.sweep.clone().unwrap_or(SweepSpec {
        epsilons: DEFAULT_EPSILONS.to_vec(),
        witness: None,
    });
    let result = run_sweep(p, &spec)?;
    let mut files = Vec::new();
    write_json(out.join("sweep.json"), &result, &mut files)?;
    let csv_path = out.join("sweep.csv");
    std::fs::write(&csv_path, result.to_csv())?;
    files.push(csv_path);
    Ok(Outcome {
        success: result.passes(),
        files,
        summary: format!(
            "slope {:.4} (residual {:.2e}), decrease factor {:.3e}",
            result.slope,
            result.residual,
            result.decrease_factor()
        ),
    })
}

/// Golden values computed by the independent oracles, side by side with
/// the library's own results.
#[derive(Serialize)]
struct Fixtures {
    action: String,
    monomial_count: usize,
    monomials: Vec<String>,
    exponents_match_brute_force: bool,
    max_monomial_orbit_deviation: f64,
    target_dim: usize,
    reducer_norm_power_iteration: f64,
    reducer_norm_svd: f64,
    lipschitz_bound: f64,
    max_gradient_fd_error: f64,
    orbit_checks: Vec<OrbitCheck>,
}

#[derive(Serialize)]
struct OrbitCheck {
    k: i64,
    quotient_distance: f64,
    exhaustive_same_orbit: bool,
}

const FIXTURE_POINTS: u64 = 16;

fn fixtures(p: &Pipeline, config: &RunConfig, out: &Path) -> Result<Outcome> {
    let set = p.set();
    let domain = p.domain_action();
    let (m, e) = (domain.m(), domain.weights());

    let exponents_match = set.monomials().iter().all(|mono| match *mono {
        Monomial::Single { i, exp } => exp == oracle::brute_force_order(m, e[i]),
        Monomial::Pair { j, k, a, b } => {
            (a, b) == oracle::brute_force_pair_exponents(m, e[j], e[k])
        }
    });

    let mut orbit_dev: f64 = 0.0;
    let mut fd_err: f64 = 0.0;
    let mut orbit_checks = Vec::new();
    for i in 0..FIXTURE_POINTS {
        let mut rng = sample_rng(config.seed, i);
        let x = unit_signal(&mut rng, p.n());
        let xd = p.to_domain(&x)?;
        for mono in set.monomials() {
            orbit_dev = orbit_dev.max(oracle::monomial_orbit_deviation(domain, mono, &xd));
        }
        let jac = eval_gradient(set, &xd)?;
        let (d_re, d_im) = oracle::finite_difference(
            |z| eval_invariants(set, z).expect("dimension fixed"),
            &xd,
            1e-6,
        );
        for (r, (row_re, row_im)) in d_re.iter().zip(&d_im).enumerate() {
            for c in 0..p.n() {
                let analytic = jac.get(r, c);
                fd_err = fd_err
                    .max((row_re[c] - analytic).norm())
                    .max((row_im[c] - analytic * num_complex::Complex64::i()).norm());
            }
        }
        // a translate (same orbit) and an independent draw (distinct orbit)
        let k = (i % m as u64) as i64;
        let gx = p.action().act(k, &x)?;
        let y = unit_signal(&mut rng, p.n());
        for (other, label_k) in [(&gx, k), (&y, -1)] {
            let d = p.action().quotient_distance(&x, other)?;
            orbit_checks.push(OrbitCheck {
                k: label_k,
                quotient_distance: d,
                exhaustive_same_orbit: oracle::same_orbit(p.action(), &x, other, 1e-9),
            });
        }
        debug_assert!(distance(&p.embed(&x)?, &p.embed(&gx)?) < 1e-9);
    }

    let fixtures = Fixtures {
        action: p.action().to_string(),
        monomial_count: set.len(),
        monomials: set.monomials().iter().map(|m| m.to_string()).collect(),
        exponents_match_brute_force: exponents_match,
        max_monomial_orbit_deviation: orbit_dev,
        target_dim: p.target_dim(),
        reducer_norm_power_iteration: p.reducer().operator_norm(),
        reducer_norm_svd: oracle::dense_operator_norm(p.reducer().matrix()),
        lipschitz_bound: p.lipschitz_bound().bound,
        max_gradient_fd_error: fd_err,
        orbit_checks,
    };
    let success = fixtures.exponents_match_brute_force
        && (fixtures.reducer_norm_power_iteration - fixtures.reducer_norm_svd).abs() <= 1e-8
        && fixtures.max_gradient_fd_error <= 1e-5;
    let summary = format!(
        "N = {}, ||l|| = {:.12} (svd {:.12}), fd error {:.2e}",
        fixtures.monomial_count,
        fixtures.reducer_norm_power_iteration,
        fixtures.reducer_norm_svd,
        fixtures.max_gradient_fd_error
    );
    let mut files = Vec::new();
    write_json(out.join("fixtures.json"), &fixtures, &mut files)?;
    Ok(Outcome {
        success,
        files,
        summary,
    })
}
