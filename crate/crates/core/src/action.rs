//! Finite cyclic unitary actions on `ℂⁿ`.
//!
//! Two forms are supported. A *diagonal* action of `ℤ_m` is given by the
//! powers of `T = diag(ω^{e_1}, …, ω^{e_n})` with `ω = e^{2πi/m}`. The
//! *translation* action of `ℤ_n` circularly shifts coordinates,
//! `(T^k x)_j = x_{(j−k) mod n}`; the unitary DFT conjugates it to the
//! diagonal modulation action with weights `e_j = j`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `x ∈ ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexSignal(Vec<Complex64>);

impl ComplexSignal {
    pub fn new(entries: Vec<Complex64>) -> Self {
        ComplexSignal(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexSignal(vec![Complex64::new(0.0, 0.0); n])
    }

    /// Builds a signal from real parts only.
    pub fn from_real(values: &[f64]) -> Self {
        ComplexSignal(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// The `i`-th standard basis vector of `ℂⁿ`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut s = Self::zeros(n);
        s.0[i] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        ComplexSignal(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

impl Deref for ComplexSignal {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl From<Vec<Complex64>> for ComplexSignal {
    fn from(v: Vec<Complex64>) -> Self {
        ComplexSignal(v)
    }
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean distance between two complex vectors of equal length.
pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `e^{2πi r/m}` evaluated from the exact residue `r mod m`.
pub fn root_of_unity(r: usize, m: usize) -> Complex64 {
    let r = r % m;
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * r == m {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * r == m {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * r == 3 * m {
        return Complex64::new(0.0, -1.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / m as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionForm {
    Diagonal,
    Translation,
}

/// The group `ℤ_m` acting unitarily on `ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    m: usize,
    weights: Vec<usize>,
    form: ActionForm,
}

impl CyclicAction {
    /// Diagonal action `t_i = ω^{e_i}`; weights are reduced mod `m`.
    pub fn diagonal(m: usize, weights: &[i64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::parameter("group order m must be at least 1"));
        }
        if weights.is_empty() {
            return Err(Error::Empty("weight list"));
        }
        let weights = weights
            .iter()
            .map(|&e| e.rem_euclid(m as i64) as usize)
            .collect();
        Ok(CyclicAction {
            m,
            weights,
            form: ActionForm::Diagonal,
        })
    }

    /// Circular translation of `ℂⁿ` by `ℤ_n`.
    pub fn translation(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("translation dimension"));
        }
        Ok(CyclicAction {
            m: n,
            weights: (0..n).collect(),
            form: ActionForm::Translation,
        })
    }

    /// Group order.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Exponents `e_i` with `t_i = ω^{e_i}`. For the translation form these
    /// are the modulation weights of the Fourier-conjugated action.
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn form(&self) -> ActionForm {
        self.form
    }

    /// Applies `T^k` to `x`.
    pub fn act(&self, k: i64, x: &[Complex64]) -> Result<ComplexSignal> {
        Error::check_dim(self.n(), x.len())?;
        let k = k.rem_euclid(self.m as i64) as usize;
        let out = match self.form {
            ActionForm::Diagonal => x
                .iter()
                .zip(&self.weights)
                .map(|(z, &e)| z * root_of_unity(k * e % self.m, self.m))
                .collect(),
            ActionForm::Translation => {
                let n = self.n();
                (0..n).map(|j| x[(j + n - k) % n]).collect()
            }
        };
        Ok(ComplexSignal(out))
    }

    /// All `m` orbit points `T^0 x, …, T^{m−1} x`.
    pub fn orbit(&self, x: &[Complex64]) -> Result<Vec<ComplexSignal>> {
        (0..self.m as i64).map(|k| self.act(k, x)).collect()
    }

    /// Quotient metric `min_k ‖x − T^k y‖`, by exhaustive search over the group.
    pub fn quotient_distance(&self, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
        Error::check_dim(self.n(), x.len())?;
        Error::check_dim(self.n(), y.len())?;
        let mut best = f64::INFINITY;
        for k in 0..self.m as i64 {
            let gy = self.act(k, y)?;
            best = best.min(distance(x, &gy));
        }
        Ok(best)
    }

    /// The diagonal modulation action conjugate to a translation action.
    pub fn to_fourier_domain(&self) -> Result<CyclicAction> {
        match self.form {
            ActionForm::Translation => Ok(CyclicAction {
                m: self.m,
                weights: (0..self.n()).collect(),
                form: ActionForm::Diagonal,
            }),
            ActionForm::Diagonal => Err(Error::InvalidForm(
                "to_fourier_domain requires a translation action".into(),
            )),
        }
    }
}

impl fmt::Display for CyclicAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            ActionForm::Diagonal => write!(f, "Z_{} diagonal {:?}", self.m, self.weights),
            ActionForm::Translation => write!(f, "Z_{} translation on C^{}", self.m, self.n()),
        }
    }
}

/// Unitary DFT of a fixed length, with the sign convention
/// `x̂_j = n^{-1/2} Σ_t x_t e^{+2πi jt/n}`.
///
/// With this sign, `dft(T x) = M dft(x)` where `T` is the unit circular
/// shift and `M = diag(e^{2πi j/n})`.
#[derive(Clone)]
pub struct Dft {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Dft {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dft").field("n", &self.n).finish()
    }
}

impl Dft {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("dft input"));
        }
        let mut planner = FftPlanner::new();
        // rustfft's "inverse" uses e^{+2πi}, which is our forward direction.
        Ok(Dft {
            n,
            forward: planner.plan_fft_inverse(n),
            inverse: planner.plan_fft_forward(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&self, x: &[Complex64]) -> Result<ComplexSignal> {
        self.run(&self.forward, x)
    }

    pub fn inverse(&self, x: &[Complex64]) -> Result<ComplexSignal> {
        self.run(&self.inverse, x)
    }

    fn run(&self, plan: &Arc<dyn Fft<f64>>, x: &[Complex64]) -> Result<ComplexSignal> {
        Error::check_dim(self.n, x.len())?;
        let mut buf = x.to_vec();
        plan.process(&mut buf);
        let scale = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= scale);
        Ok(ComplexSignal(buf))
    }
}

/// One-shot unitary DFT.
pub fn dft(x: &[Complex64]) -> Result<ComplexSignal> {
    Dft::new(x.len())?.forward(x)
}

/// One-shot inverse of [`dft`].
pub fn idft(xhat: &[Complex64]) -> Result<ComplexSignal> {
    Dft::new(xhat.len())?.inverse(xhat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{gaussian_signal, sample_rng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn make_action_reduces_weights() {
        let a = CyclicAction::diagonal(12, &[18, -9, 4, 2, 2]).unwrap();
        assert_eq!(a.weights(), &[6, 3, 4, 2, 2]);
        assert_eq!(a.m(), 12);
        assert_eq!(a.n(), 5);
    }

    #[test]
    fn make_action_errors() {
        assert!(matches!(
            CyclicAction::diagonal(3, &[]),
            Err(Error::Empty(_))
        ));
        assert!(matches!(
            CyclicAction::diagonal(0, &[1]),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn minus_identity_on_c2() {
        let a = CyclicAction::diagonal(2, &[1, 1]).unwrap();
        let x = [c(0.3, -1.0), c(2.0, 0.5)];
        let y = a.act(1, &x).unwrap();
        assert_eq!(y.as_slice(), &[-x[0], -x[1]]);
    }

    #[test]
    fn zero_weight_fixes_coordinate() {
        let a = CyclicAction::diagonal(4, &[0, 1]).unwrap();
        let x = [c(0.7, 0.1), c(1.0, 0.0)];
        let y = a.act(1, &x).unwrap();
        assert_eq!(y[0], x[0]);
        assert!((y[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn translation_shift() {
        let a = CyclicAction::translation(4).unwrap();
        let x = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)];
        let y = a.act(1, &x).unwrap();
        assert_eq!(y.as_slice(), &[x[3], x[0], x[1], x[2]]);
        assert_eq!(a.act(-1, &x).unwrap().as_slice(), &[x[1], x[2], x[3], x[0]]);
    }

    #[test]
    fn act_rejects_wrong_dimension() {
        let a = CyclicAction::translation(4).unwrap();
        assert!(matches!(
            a.act(1, &[c(1.0, 0.0)]),
            Err(Error::Dimension {
                expected: 4,
                got: 1
            })
        ));
        assert!(a
            .quotient_distance(&[c(1.0, 0.0); 4], &[c(1.0, 0.0); 3])
            .is_err());
    }

    #[test]
    fn generator_has_order_m_and_is_unitary() {
        let actions = [
            CyclicAction::diagonal(12, &[6, 3, 4, 2, 2]).unwrap(),
            CyclicAction::diagonal(7, &[1, 3, 0]).unwrap(),
            CyclicAction::translation(8).unwrap(),
        ];
        for (i, a) in actions.iter().enumerate() {
            let mut rng = sample_rng(11, i as u64);
            let x = gaussian_signal(&mut rng, a.n());
            let nx = x.norm();
            for k in 0..=a.m() as i64 {
                let y = a.act(k, &x).unwrap();
                assert!((y.norm() - nx).abs() <= 1e-12 * nx);
            }
            let full = a.act(a.m() as i64, &x).unwrap();
            assert!(distance(&full, &x) <= 1e-12 * nx);
            // m successive generator applications
            let mut z = x.clone();
            for _ in 0..a.m() {
                z = a.act(1, &z).unwrap();
            }
            assert!(distance(&z, &x) <= 1e-12 * nx);
        }
    }

    #[test]
    fn quotient_distance_examples() {
        let a = CyclicAction::translation(4).unwrap();
        let e0 = ComplexSignal::basis(4, 0);
        let e1 = ComplexSignal::basis(4, 1);
        assert_eq!(a.quotient_distance(&e0, &e0).unwrap(), 0.0);
        assert_eq!(a.quotient_distance(&e0, &e1).unwrap(), 0.0);
        assert_eq!(
            a.quotient_distance(&e0, &ComplexSignal::zeros(4)).unwrap(),
            1.0
        );
    }

    #[test]
    fn dft_of_delta() {
        let x = dft(&ComplexSignal::basis(4, 0)).unwrap();
        for z in x.iter() {
            assert!((z - c(0.5, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn dft_matches_direct_sum() {
        let mut rng = sample_rng(3, 0);
        let x = gaussian_signal(&mut rng, 7);
        let fast = dft(&x).unwrap();
        let n = x.len();
        for j in 0..n {
            let direct: Complex64 = (0..n)
                .map(|t| x[t] * root_of_unity(j * t % n, n))
                .sum::<Complex64>()
                / (n as f64).sqrt();
            assert!((direct - fast[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn dft_parseval_and_inverse() {
        let mut rng = sample_rng(5, 0);
        for n in [1, 2, 5, 8, 13] {
            let x = gaussian_signal(&mut rng, n);
            let xh = dft(&x).unwrap();
            assert!((xh.norm() - x.norm()).abs() <= 1e-12 * x.norm());
            let back = idft(&xh).unwrap();
            assert!(distance(&back, &x) <= 1e-10);
        }
        assert!(matches!(dft(&[]), Err(Error::Empty(_))));
    }

    #[test]
    fn shift_theorem() {
        let t = CyclicAction::translation(8).unwrap();
        let modulation = t.to_fourier_domain().unwrap();
        let mut rng = sample_rng(9, 0);
        let x = gaussian_signal(&mut rng, 8);
        let lhs = dft(&t.act(3, &x).unwrap()).unwrap();
        let rhs = modulation.act(3, &dft(&x).unwrap()).unwrap();
        assert!(distance(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn fourier_domain_weights() {
        let a = CyclicAction::translation(4)
            .unwrap()
            .to_fourier_domain()
            .unwrap();
        assert_eq!(a.form(), ActionForm::Diagonal);
        assert_eq!((a.m(), a.weights()), (4, &[0, 1, 2, 3][..]));
        let one = CyclicAction::translation(1)
            .unwrap()
            .to_fourier_domain()
            .unwrap();
        assert_eq!((one.m(), one.weights()), (1, &[0][..]));
        assert!(matches!(a.to_fourier_domain(), Err(Error::InvalidForm(_))));
    }

    #[test]
    fn distances_agree_across_domains() {
        let t = CyclicAction::translation(8).unwrap();
        let f = t.to_fourier_domain().unwrap();
        let dft8 = Dft::new(8).unwrap();
        for i in 0..20 {
            let mut rng = sample_rng(21, i);
            let x = gaussian_signal(&mut rng, 8);
            let y = gaussian_signal(&mut rng, 8);
            let d_time = t.quotient_distance(&x, &y).unwrap();
            let d_freq = f
                .quotient_distance(&dft8.forward(&x).unwrap(), &dft8.forward(&y).unwrap())
                .unwrap();
            assert!((d_time - d_freq).abs() < 1e-10);
        }
    }

    #[test]
    fn roots_are_exact_at_quarter_turns() {
        assert_eq!(root_of_unity(3, 12), c(0.0, 1.0));
        assert_eq!(root_of_unity(6, 12), c(-1.0, 0.0));
        assert_eq!(root_of_unity(9, 12), c(0.0, -1.0));
        assert_eq!(root_of_unity(12, 12), c(1.0, 0.0));
    }
}
