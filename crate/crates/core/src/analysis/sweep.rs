//! Degeneration of the lower Lipschitz ratio.
//!
//! With `x = e_s` on the sphere and `x_ε = √(1−ε²) e_s + ε e_p`, the
//! quotient distance behaves like `ε` while every monomial that sees the
//! perturbed coordinate `p` does so with exponent at least 2, so
//! `‖Φ(x_ε) − Φ(x)‖ = O(ε²)` and the ratio decays linearly in `ε`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::report::{Case, Criterion, VerificationReport};
use crate::action::{distance, ComplexSignal};
use crate::embed::Pipeline;
use crate::error::{Error, Result};
use crate::invariants::{Monomial, SeparatingSet};

/// Accepted range for the fitted log-log slope of ratio against `ε`.
pub const SLOPE_RANGE: (f64, f64) = (0.8, 1.2);
/// `ratio(ε_min) / ratio(ε_max)` must fall below this.
pub const MAX_DECREASE_FACTOR: f64 = 0.5;

/// Witness coordinates (0-based, in the diagonal domain).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Coordinate carrying the unit mass of `x`.
    pub support: usize,
    /// Coordinate receiving the `ε` perturbation.
    pub perturbed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub d_g: f64,
    pub delta_phi: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub witness: Witness,
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of `ln ratio` against `ln ε`.
    pub slope: f64,
    /// RMS residual of that fit.
    pub residual: f64,
}

impl SweepResult {
    pub fn epsilons(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.epsilon).collect()
    }

    /// `ratio(ε_min) / ratio(ε_max)`.
    pub fn decrease_factor(&self) -> f64 {
        let first = self.points.first().map_or(f64::NAN, |p| p.ratio);
        let last = self.points.last().map_or(f64::NAN, |p| p.ratio);
        last / first
    }

    /// Largest `|d_G − ε| / ε²` over the sweep.
    pub fn distance_defect(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p.d_g - p.epsilon).abs() / (p.epsilon * p.epsilon))
            .fold(0.0, f64::max)
    }

    pub fn slope_in_range(&self) -> bool {
        (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&self.slope)
    }

    pub fn passes(&self) -> bool {
        self.slope_in_range() && self.decrease_factor() < MAX_DECREASE_FACTOR
    }

    /// Plot table with header `epsilon,d_g,delta_phi,ratio`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,d_g,delta_phi,ratio\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.epsilon, p.d_g, p.delta_phi, p.ratio
            ));
        }
        out
    }

    /// Summary report; the statistic normalizes both conditions so that
    /// passing means `statistic ≤ 1`.
    pub fn report(&self) -> VerificationReport {
        let half_width = (SLOPE_RANGE.1 - SLOPE_RANGE.0) / 2.0;
        let center = (SLOPE_RANGE.1 + SLOPE_RANGE.0) / 2.0;
        let slope_score = (self.slope - center).abs() / half_width;
        let decrease_score = self.decrease_factor() / MAX_DECREASE_FACTOR;
        let mut statistic = slope_score.max(decrease_score);
        if decrease_score == 1.0 {
            // the decrease condition is strict
            statistic = statistic.next_up();
        }
        let mut cases = vec![
            Case::new("slope", self.slope),
            Case::new("fit_residual", self.residual),
            Case::new("decrease_factor", self.decrease_factor()),
            Case::new("distance_defect", self.distance_defect()),
            Case::new("support", self.witness.support as f64),
            Case::new("perturbed", self.witness.perturbed as f64),
        ];
        cases.extend(
            self.points
                .iter()
                .map(|p| Case::new(format!("ratio@{}", p.epsilon), p.ratio)),
        );
        VerificationReport::new(
            "sweep",
            0,
            self.points.len(),
            statistic,
            1.0,
            Criterion::AtMost,
            cases,
        )
    }
}

/// First pair in canonical order with an exponent of at least 2 on a
/// coordinate of order at least 2; that coordinate is perturbed and the
/// other carries the support.
pub fn find_witness(set: &SeparatingSet) -> Option<Witness> {
    let orders: Vec<usize> = set
        .monomials()
        .iter()
        .filter_map(|mono| match *mono {
            Monomial::Single { exp, .. } => Some(exp),
            Monomial::Pair { .. } => None,
        })
        .collect();
    set.monomials().iter().find_map(|mono| match *mono {
        Monomial::Pair { j, k, a, .. } if a >= 2 && orders[j] >= 2 => Some(Witness {
            support: k,
            perturbed: j,
        }),
        Monomial::Pair { j, k, b, .. } if b >= 2 && orders[k] >= 2 => Some(Witness {
            support: j,
            perturbed: k,
        }),
        _ => None,
    })
}

fn check_hypothesis(p: &Pipeline) -> Result<()> {
    if p.m() < 3 || p.n() < 3 {
        return Err(Error::Hypothesis(format!(
            "the degeneration needs m, n >= 3 (got m = {}, n = {})",
            p.m(),
            p.n()
        )));
    }
    Ok(())
}

fn check_epsilons(epsilons: &[f64]) -> Result<()> {
    if epsilons.len() < 2 {
        return Err(Error::parameter("sweep needs at least two epsilons"));
    }
    if epsilons.iter().any(|&e| !(e > 0.0 && e <= 0.5)) {
        return Err(Error::parameter("epsilons must lie in (0, 0.5]"));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::parameter("epsilons must be strictly decreasing"));
    }
    Ok(())
}

/// Sweep with the witness detected from the separating set.
pub fn lower_lipschitz_sweep(p: &Pipeline, epsilons: &[f64]) -> Result<SweepResult> {
    check_hypothesis(p)?;
    let witness = find_witness(p.set()).ok_or_else(|| {
        Error::Hypothesis("no pair monomial with an exponent of at least 2".into())
    })?;
    lower_lipschitz_sweep_with_witness(p, epsilons, witness)
}

/// Sweep with explicit witness coordinates.
pub fn lower_lipschitz_sweep_with_witness(
    p: &Pipeline,
    epsilons: &[f64],
    witness: Witness,
) -> Result<SweepResult> {
    check_hypothesis(p)?;
    check_epsilons(epsilons)?;
    let n = p.n();
    if witness.support >= n || witness.perturbed >= n || witness.support == witness.perturbed {
        return Err(Error::parameter(format!(
            "invalid witness {witness:?} for n = {n}"
        )));
    }
    let base = p.from_domain(&ComplexSignal::basis(n, witness.support))?;
    let phi_base = p.embed(&base)?;
    let mut points = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mut xe = ComplexSignal::zeros(n);
        xe.as_mut_slice()[witness.support] = Complex64::new((1.0 - eps * eps).sqrt(), 0.0);
        xe.as_mut_slice()[witness.perturbed] = Complex64::new(eps, 0.0);
        let xe = p.from_domain(&xe)?;
        let d_g = p.action().quotient_distance(&xe, &base)?;
        if !(d_g > 0.0) {
            return Err(Error::Hypothesis(format!(
                "zero quotient distance at epsilon {eps}"
            )));
        }
        let delta_phi = distance(&p.embed(&xe)?, &phi_base);
        points.push(SweepPoint {
            epsilon: eps,
            d_g,
            delta_phi,
            ratio: delta_phi / d_g,
        });
    }
    let (slope, residual) = log_log_fit(&points);
    Ok(SweepResult {
        witness,
        points,
        slope,
        residual,
    })
}

fn log_log_fit(points: &[SweepPoint]) -> (f64, f64) {
    let xs: Vec<f64> = points.iter().map(|p| p.epsilon.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ratio.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::CyclicAction;
    use crate::embed::TargetDim;

    const EPS: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];

    fn z12() -> Pipeline {
        Pipeline::new(
            CyclicAction::diagonal(12, &[6, 3, 4, 2, 2]).unwrap(),
            TargetDim::Auto,
            42,
        )
        .unwrap()
    }

    #[test]
    fn auto_witness_on_z12() {
        // pair (x1, x2) = x1 x2^2: perturb x2, support on x1
        assert_eq!(
            find_witness(z12().set()),
            Some(Witness {
                support: 0,
                perturbed: 1
            })
        );
        let r = lower_lipschitz_sweep(&z12(), &EPS).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn explicit_witness_on_z12() {
        let w = Witness {
            support: 3,
            perturbed: 4,
        };
        let r = lower_lipschitz_sweep_with_witness(&z12(), &EPS, w).unwrap();
        assert!(r.slope_in_range(), "slope {}", r.slope);
        assert!(r.decrease_factor() < 0.5);
        assert!(r.distance_defect() <= 1.0);
        assert!(r.report().pass);
        let ratios: Vec<f64> = r.points.iter().map(|p| p.ratio).collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn hypothesis_errors() {
        let pr = Pipeline::new(
            CyclicAction::diagonal(2, &[1, 1, 1]).unwrap(),
            TargetDim::Auto,
            0,
        )
        .unwrap();
        assert!(matches!(
            lower_lipschitz_sweep(&pr, &EPS),
            Err(Error::Hypothesis(_))
        ));
        let small = Pipeline::new(
            CyclicAction::diagonal(5, &[1, 2]).unwrap(),
            TargetDim::Auto,
            0,
        )
        .unwrap();
        assert!(matches!(
            lower_lipschitz_sweep(&small, &EPS),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn epsilon_validation() {
        let p = z12();
        assert!(lower_lipschitz_sweep(&p, &[1e-2, 1e-1]).is_err());
        assert!(lower_lipschitz_sweep(&p, &[0.6, 1e-1]).is_err());
        assert!(lower_lipschitz_sweep(&p, &[1e-1]).is_err());
        assert!(lower_lipschitz_sweep(&p, &[1e-1, 0.0]).is_err());
    }

    #[test]
    fn csv_table() {
        let r = lower_lipschitz_sweep(&z12(), &[1e-1, 1e-2]).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "epsilon,d_g,delta_phi,ratio");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0.1,"));
    }

    #[test]
    fn translation_pipeline_sweeps_in_fourier_domain() {
        let p = Pipeline::new(CyclicAction::translation(8).unwrap(), TargetDim::Auto, 5).unwrap();
        let r = lower_lipschitz_sweep(&p, &EPS).unwrap();
        assert!(r.passes(), "{r:?}");
    }
}
