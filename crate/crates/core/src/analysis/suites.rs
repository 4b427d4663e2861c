use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::report::{worst_cases, Case, Criterion, VerificationReport};
use crate::action::{distance, norm, ComplexSignal};
use crate::embed::{eval_gradient, eval_invariants, Pipeline};
use crate::error::{Error, Result};
use crate::invariants::{Monomial, SeparatingSet};
use crate::sampling::{log_uniform, sample_rng, unit_signal};

/// Invariance tolerance, relative to `1 + ‖Φ(x)‖`.
pub const INVARIANCE_TOLERANCE: f64 = 1e-10;
/// Distinct-orbit margins must exceed same-orbit leakage by this factor.
pub const SEPARATION_HEADROOM: f64 = 1e3;
/// Relative slack on the theorem bound `3 m ‖ℓ‖`.
pub const LIPSCHITZ_SLACK: f64 = 1e-9;
/// Pairs closer than this in the quotient metric are left out of ratios.
pub const MIN_QUOTIENT_DISTANCE: f64 = 1e-12;

const MAX_REDRAWS: usize = 10_000;

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::parameter("sample count must be at least 1"));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(Error::parameter(format!(
            "delta must lie in (0, 2), got {delta}"
        )));
    }
    Ok(())
}

/// Unit pair with `d_G(x, y) ≥ delta`, redrawn from the same stream.
fn distant_unit_pair<R: Rng>(
    p: &Pipeline,
    rng: &mut R,
    delta: f64,
) -> Result<Option<(ComplexSignal, ComplexSignal, f64)>> {
    for _ in 0..MAX_REDRAWS {
        let x = unit_signal(rng, p.n());
        let y = unit_signal(rng, p.n());
        let d = p.action().quotient_distance(&x, &y)?;
        if d >= delta {
            return Ok(Some((x, y, d)));
        }
    }
    Ok(None)
}

/// `‖Φ(T^k x) − Φ(x)‖ ≤ 1e-10 (1 + ‖Φ(x)‖)` for every `k` over random unit
/// signals, plus the zero signal.
pub fn check_invariance(p: &Pipeline, samples: usize, seed: u64) -> Result<VerificationReport> {
    check_samples(samples)?;
    let m = p.m() as i64;
    let orbit_violation = |x: &ComplexSignal| -> Result<f64> {
        let phi = p.embed(x)?;
        let scale = 1.0 + norm(&phi);
        let mut worst: f64 = 0.0;
        for k in 0..m {
            let moved = p.embed(&p.action().act(k, x)?)?;
            worst = worst.max(distance(&moved, &phi) / scale);
        }
        Ok(worst)
    };

    let violations: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| orbit_violation(&unit_signal(&mut sample_rng(seed, i as u64), p.n())))
        .collect::<Result<_>>()?;

    let zero = ComplexSignal::zeros(p.n());
    let mut zero_max: f64 = 0.0;
    for k in 0..m {
        let v = p.embed(&p.action().act(k, &zero)?)?;
        zero_max = zero_max.max(v.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }

    let statistic = violations.iter().cloned().fold(zero_max, f64::max);
    let mut cases = vec![Case::new("zero_signal_max_abs", zero_max)];
    cases.extend(worst_cases(
        "violation",
        violations.into_iter().enumerate(),
        true,
    ));
    Ok(VerificationReport::new(
        "invariance",
        seed,
        samples,
        statistic,
        INVARIANCE_TOLERANCE,
        Criterion::AtMost,
        cases,
    ))
}

/// Minimum `‖Φ(x) − Φ(y)‖` over unit pairs with `d_G ≥ delta`, against the
/// largest same-orbit difference.
///
/// Passes iff the minimum margin exceeds `SEPARATION_HEADROOM` times the
/// same-orbit leakage (so in particular is strictly positive).
pub fn separation_margin(
    p: &Pipeline,
    samples: usize,
    delta: f64,
    seed: u64,
) -> Result<VerificationReport> {
    check_samples(samples)?;
    check_delta(delta)?;
    let m = p.m();
    let results: Vec<Option<(f64, f64, f64)>> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Option<(f64, f64, f64)>> {
            let mut rng = sample_rng(seed, i as u64);
            let Some((x, y, d)) = distant_unit_pair(p, &mut rng, delta)? else {
                return Ok(None);
            };
            let phi_x = p.embed(&x)?;
            let margin = distance(&phi_x, &p.embed(&y)?);
            let k = rng.random_range(0..m) as i64;
            let leak = distance(&phi_x, &p.embed(&p.action().act(k, &x)?)?);
            Ok(Some((margin, d, leak)))
        })
        .collect::<Result<_>>()?;

    let skipped = results.iter().filter(|r| r.is_none()).count();
    let kept: Vec<(usize, f64, f64, f64)> = results
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|(a, b, c)| (i, a, b, c)))
        .collect();
    let min_margin = kept.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let leakage = kept.iter().map(|r| r.3).fold(0.0, f64::max);
    let statistic = if kept.is_empty() { 0.0 } else { min_margin };

    let mut cases = vec![
        Case::new("same_orbit_leakage", leakage),
        Case::new("qualifying_pairs", kept.len() as f64),
        Case::new("skipped_pairs", skipped as f64),
        Case::new("delta", delta),
    ];
    cases.extend(worst_cases(
        "margin",
        kept.iter().map(|r| (r.0, r.1)),
        false,
    ));
    Ok(VerificationReport::new(
        "separation",
        seed,
        samples,
        statistic,
        SEPARATION_HEADROOM * leakage,
        Criterion::Exceeds,
        cases,
    ))
}

/// Largest `‖Φ(x) − Φ(y)‖ / d_G(x, y)` over mixed-scale pairs, against
/// `3 m ‖ℓ‖ (1 + 1e-9)`.
///
/// Sample `i` uses pattern `i mod 4`: independent pairs with norms
/// log-uniform in `[1e-3, 1e3]`; a point and a small perturbation of it;
/// a point and a rescaled perturbation; a point and a perturbation of a
/// group translate of it.
pub fn empirical_lipschitz(p: &Pipeline, samples: usize, seed: u64) -> Result<VerificationReport> {
    check_samples(samples)?;
    let bound = p.lipschitz_bound();
    let n = p.n();
    let m = p.m();
    let ratios: Vec<Option<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Option<f64>> {
            let mut rng = sample_rng(seed, i as u64);
            let r = log_uniform(&mut rng, 1e-3, 1e3);
            let x = unit_signal(&mut rng, n).scaled(r);
            let offset = |rng: &mut rand_chacha::ChaCha20Rng, base: &ComplexSignal| {
                let delta = log_uniform(rng, 1e-6, 1.0);
                let z = unit_signal(rng, n);
                ComplexSignal::new(
                    base.iter()
                        .zip(z.iter())
                        .map(|(b, zz)| b + zz * (r * delta))
                        .collect(),
                )
            };
            let y = match i % 4 {
                0 => unit_signal(&mut rng, n).scaled(log_uniform(&mut rng, 1e-3, 1e3)),
                1 => offset(&mut rng, &x),
                2 => {
                    let s = log_uniform(&mut rng, 0.5, 2.0);
                    offset(&mut rng, &x.scaled(s))
                }
                _ => {
                    let k = rng.random_range(0..m) as i64;
                    let gx = p.action().act(k, &x)?;
                    offset(&mut rng, &gx)
                }
            };
            let d = p.action().quotient_distance(&x, &y)?;
            if d < crate::analysis::MIN_QUOTIENT_DISTANCE {
                return Ok(None);
            }
            Ok(Some(distance(&p.embed(&x)?, &p.embed(&y)?) / d))
        })
        .collect::<Result<_>>()?;

    let excluded = ratios.iter().filter(|r| r.is_none()).count();
    let max_ratio = ratios.iter().flatten().cloned().fold(0.0, f64::max);
    let mut cases = vec![
        Case::new("theorem_bound", bound.bound),
        Case::new("reducer_norm", bound.reducer_norm),
        Case::new("observed_max_ratio", max_ratio),
        Case::new("excluded_pairs", excluded as f64),
    ];
    cases.extend(worst_cases(
        "ratio",
        ratios
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.map(|v| (i, v))),
        true,
    ));
    Ok(VerificationReport::new(
        "lipschitz",
        seed,
        samples,
        max_ratio,
        bound.bound * (1.0 + LIPSCHITZ_SLACK),
        Criterion::AtMost,
        cases,
    ))
}

/// `ỹ_i = λ^{1/m_i} y_i`, which satisfies `F_T(ỹ) = λ F_T(y)`.
pub fn tilde_rescale(set: &SeparatingSet, y: &[Complex64], lambda: f64) -> Result<ComplexSignal> {
    Error::check_dim(set.n(), y.len())?;
    if !(lambda > 0.0) {
        return Err(Error::parameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let mut out = y.to_vec();
    for mono in set.monomials() {
        if let Monomial::Single { i, exp } = *mono {
            out[i] *= lambda.powf(1.0 / exp as f64);
        }
    }
    Ok(ComplexSignal::new(out))
}

/// Best positive multiple `λ* = max(Re⟨a, b⟩, 0) / ‖b‖²` and the residual
/// `‖a − λ* b‖`. `None` when `b = 0`.
pub(crate) fn positive_fit(a: &[Complex64], b: &[Complex64]) -> Option<(f64, f64)> {
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if bb == 0.0 {
        return None;
    }
    let inner: f64 = a.iter().zip(b).map(|(u, v)| (u * v.conj()).re).sum();
    let lambda = inner.max(0.0) / bb;
    let residual = a
        .iter()
        .zip(b)
        .map(|(u, v)| (u - v * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Some((lambda, residual))
}

/// Statistical falsification of parallelism for `H = ℓ ∘ F_T` on the sphere.
///
/// Distinct-orbit unit pairs must leave a positive residual after the best
/// positive-multiple fit; same-orbit pairs must fit with `λ* = 1`. The
/// threshold is the same-orbit residual, i.e. the numerical noise floor.
pub fn nonparallel_falsification(
    p: &Pipeline,
    samples: usize,
    delta: f64,
    seed: u64,
) -> Result<VerificationReport> {
    check_samples(samples)?;
    check_delta(delta)?;
    let m = p.m();
    #[derive(Default)]
    struct Sample {
        distinct: Option<f64>,
        zero_norm: bool,
        same_lambda_dev: f64,
        same_residual: f64,
    }
    let rows: Vec<Sample> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<Sample> {
            let mut rng = sample_rng(seed, i as u64);
            let mut s = Sample::default();
            if let Some((x, y, _)) = distant_unit_pair(p, &mut rng, delta)? {
                match positive_fit(&p.h(&x)?, &p.h(&y)?) {
                    Some((_, res)) => s.distinct = Some(res),
                    None => s.zero_norm = true,
                }
            }
            let y = unit_signal(&mut rng, p.n());
            let k = rng.random_range(0..m) as i64;
            let x = p.action().act(k, &y)?;
            match positive_fit(&p.h(&x)?, &p.h(&y)?) {
                Some((lambda, res)) => {
                    s.same_lambda_dev = (lambda - 1.0).abs();
                    s.same_residual = res;
                }
                None => s.zero_norm = true,
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;

    let min_residual = rows
        .iter()
        .filter_map(|s| s.distinct)
        .fold(f64::INFINITY, f64::min);
    let distinct_count = rows.iter().filter(|s| s.distinct.is_some()).count();
    let statistic = if distinct_count == 0 {
        0.0
    } else {
        min_residual
    };
    let lambda_dev = rows.iter().map(|s| s.same_lambda_dev).fold(0.0, f64::max);
    let same_res = rows.iter().map(|s| s.same_residual).fold(0.0, f64::max);
    let zero_norm = rows.iter().filter(|s| s.zero_norm).count();

    let mut cases = vec![
        Case::new("same_orbit_max_lambda_deviation", lambda_dev),
        Case::new("same_orbit_max_residual", same_res),
        Case::new("distinct_pairs", distinct_count as f64),
        Case::new("zero_norm_cases", zero_norm as f64),
    ];
    cases.extend(worst_cases(
        "residual",
        rows.iter()
            .enumerate()
            .filter_map(|(i, s)| s.distinct.map(|v| (i, v))),
        false,
    ));
    Ok(VerificationReport::new(
        "nonparallel",
        seed,
        samples,
        statistic,
        same_res,
        Criterion::Exceeds,
        cases,
    ))
}

/// Component and partial-derivative moduli of `F_T` on the unit sphere.
///
/// The statistic is `max(component_sup / (1 + 1e-12), partial_sup / (m + 1e-9))`
/// and must not exceed 1.
pub fn sup_norm_check(
    set: &SeparatingSet,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_samples(samples)?;
    let m = set.m() as f64;
    let sups: Vec<(f64, f64)> = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64)> {
            let x = unit_signal(&mut sample_rng(seed, i as u64), set.n());
            let comp = eval_invariants(set, &x)?
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let part = eval_gradient(set, &x)?.max_modulus();
            Ok((comp, part))
        })
        .collect::<Result<_>>()?;
    let comp_sup = sups.iter().map(|s| s.0).fold(0.0, f64::max);
    let part_sup = sups.iter().map(|s| s.1).fold(0.0, f64::max);
    let statistic = (comp_sup / (1.0 + 1e-12)).max(part_sup / (m + 1e-9));
    let cases = vec![
        Case::new("component_sup", comp_sup),
        Case::new("partial_sup", part_sup),
        Case::new("m", m),
    ];
    Ok(VerificationReport::new(
        "sup_norm",
        seed,
        samples,
        statistic,
        1.0,
        Criterion::AtMost,
        cases,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::CyclicAction;
    use crate::embed::{Pipeline, TargetDim};
    use crate::invariants::separating_set;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pr() -> Pipeline {
        Pipeline::new(
            CyclicAction::diagonal(2, &[1, 1]).unwrap(),
            TargetDim::Auto,
            0,
        )
        .unwrap()
    }

    fn z12() -> Pipeline {
        Pipeline::new(
            CyclicAction::diagonal(12, &[6, 3, 4, 2, 2]).unwrap(),
            TargetDim::Auto,
            42,
        )
        .unwrap()
    }

    #[test]
    fn invariance_on_phase_retrieval() {
        let r = check_invariance(&pr(), 100, 1).unwrap();
        assert!(r.pass);
        assert!(r.statistic < 1e-12);
        assert_eq!(r.case("zero_signal_max_abs"), Some(0.0));
    }

    #[test]
    fn hand_pair_on_phase_retrieval() {
        let p = pr();
        let x = [c(1.0, 0.0), c(0.0, 0.0)];
        let y = [c(0.0, 0.0), c(1.0, 0.0)];
        let d = p.action().quotient_distance(&x, &y).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let hx = p.h(&x).unwrap();
        let hy = p.h(&y).unwrap();
        assert_eq!(hx, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(hy, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let dphi = distance(&p.embed(&x).unwrap(), &p.embed(&y).unwrap());
        assert!((dphi - 2f64.sqrt()).abs() < 1e-15);
        assert!((dphi / d - 1.0).abs() < 1e-15);
        let (lambda, res) = positive_fit(&hx, &hy).unwrap();
        assert_eq!((lambda, res), (0.0, 1.0));
    }

    #[test]
    fn homogeneity_ratio_for_scaled_pair() {
        let p = z12();
        let x = unit_signal(&mut sample_rng(3, 0), 5).scaled(0.8);
        let x2 = x.scaled(2.0);
        let d = p.action().quotient_distance(&x, &x2).unwrap();
        assert!((d - x.norm()).abs() < 1e-12);
        let ratio = distance(&p.embed(&x).unwrap(), &p.embed(&x2).unwrap()) / d;
        let expect = norm(&p.embed(&x).unwrap()) / x.norm();
        assert!((ratio - expect).abs() < 1e-12);
        assert!(ratio <= p.lipschitz_bound().bound);
    }

    #[test]
    fn separation_rejects_bad_delta() {
        assert!(matches!(
            separation_margin(&pr(), 10, 0.0, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            separation_margin(&pr(), 10, 2.0, 1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            check_invariance(&pr(), 0, 1),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn separation_and_nonparallel_small_runs() {
        let p = z12();
        let s = separation_margin(&p, 100, 0.1, 7).unwrap();
        assert!(s.pass, "{s:?}");
        assert!(s.case("same_orbit_leakage").unwrap() <= 1e-10);
        let np = nonparallel_falsification(&p, 100, 0.1, 7).unwrap();
        assert!(np.pass, "{np:?}");
        assert!(np.case("same_orbit_max_lambda_deviation").unwrap() <= 1e-8);
    }

    #[test]
    fn lipschitz_on_phase_retrieval() {
        let r = empirical_lipschitz(&pr(), 2000, 3).unwrap();
        assert!(r.pass);
        assert!(r.threshold >= 6.0 && r.threshold < 6.0 + 1e-8);
    }

    #[test]
    fn tilde_rescale_examples() {
        let pr_set = separating_set(&CyclicAction::diagonal(2, &[1, 1]).unwrap()).unwrap();
        let y = unit_signal(&mut sample_rng(1, 1), 2);
        assert_eq!(tilde_rescale(&pr_set, &y, 1.0).unwrap(), y);
        let lambda = 2.5;
        let yt = tilde_rescale(&pr_set, &y, lambda).unwrap();
        assert_eq!(yt, y.scaled(lambda.sqrt()));
        let f = eval_invariants(&pr_set, &y).unwrap();
        let ft = eval_invariants(&pr_set, &yt).unwrap();
        for (a, b) in f.iter().zip(&ft) {
            assert!((a * lambda - b).norm() <= 1e-14);
        }
        assert!(matches!(
            tilde_rescale(&pr_set, &y, 0.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            tilde_rescale(&pr_set, &y, -1.0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn tilde_rescale_on_z12_pairs() {
        let set = separating_set(&CyclicAction::diagonal(12, &[6, 3, 4, 2, 2]).unwrap()).unwrap();
        let orders: Vec<usize> = set
            .monomials()
            .iter()
            .filter_map(|mo| match *mo {
                Monomial::Single { exp, .. } => Some(exp),
                _ => None,
            })
            .collect();
        let y = unit_signal(&mut sample_rng(2, 2), 5);
        let lambda = 3.7;
        let yt = tilde_rescale(&set, &y, lambda).unwrap();
        let mut checked = 0;
        for mono in set.monomials() {
            if let Monomial::Pair { j, k, a, b } = *mono {
                if mono.is_degenerate() {
                    continue;
                }
                // a/m_j + b/m_k = 1, in integers
                assert_eq!(a * orders[k] + b * orders[j], orders[j] * orders[k]);
                let lhs = mono.evaluate(&y) * lambda;
                let rhs = mono.evaluate(&yt);
                assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
                checked += 1;
            }
        }
        assert_eq!(checked, 8);
    }

    #[test]
    fn sup_norm_on_phase_retrieval() {
        let set = separating_set(&CyclicAction::diagonal(2, &[1, 1]).unwrap()).unwrap();
        let r = sup_norm_check(&set, 500, 1).unwrap();
        assert!(r.pass);
        assert!(r.case("partial_sup").unwrap() <= 2.0);
    }

    #[test]
    fn reports_are_deterministic() {
        let p = z12();
        assert_eq!(
            separation_margin(&p, 50, 0.1, 3).unwrap(),
            separation_margin(&p, 50, 0.1, 3).unwrap()
        );
        assert_eq!(
            empirical_lipschitz(&p, 50, 3).unwrap(),
            empirical_lipschitz(&p, 50, 3).unwrap()
        );
    }
}
