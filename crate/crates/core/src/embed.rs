//! Evaluation of the invariant map and its sphere-normalized embedding.
//!
//! `F_T` evaluates every monomial of the separating set, a linear reducer
//! `ℓ` compresses it to `k` coordinates, and the embedding is
//! `Φ(x) = ‖x‖ · ℓ(F_T(x/‖x‖))` with `Φ(0) = 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::action::{ActionForm, ComplexSignal, CyclicAction, Dft};
use crate::error::{Error, Result};
use crate::invariants::{is_homogeneous, SeparatingSet};
use crate::sampling::{complex_normal, master_rng};

/// Inputs with norm below this are embedded as exactly zero.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-300;

/// `F_T(x)`: the separating monomials evaluated at `x`, in canonical order.
pub fn eval_invariants(set: &SeparatingSet, x: &[Complex64]) -> Result<Vec<Complex64>> {
    Error::check_dim(set.n(), x.len())?;
    Ok(set
        .monomials()
        .iter()
        .map(|mono| mono.evaluate(x))
        .collect())
}

/// Dense `N × n` matrix of holomorphic partials `∂F_r/∂x_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jacobian {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Jacobian {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn eval_gradient(set: &SeparatingSet, x: &[Complex64]) -> Result<Jacobian> {
    Error::check_dim(set.n(), x.len())?;
    let cols = set.n();
    let mut data = Vec::with_capacity(set.len() * cols);
    for mono in set.monomials() {
        data.extend((0..cols).map(|c| mono.partial(x, c)));
    }
    Ok(Jacobian {
        rows: set.len(),
        cols,
        data,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReducerKind {
    Gaussian,
    Identity,
}

/// Linear map `ℓ: ℂ^N → ℂ^k`.
///
/// Gaussian entries are regenerated from `(k, N, seed)`: a ChaCha20 stream
/// seeded with `seed` fills the matrix row by row, each entry a complex
/// standard normal (see [`crate::sampling`]). Entries are never stored in
/// serialized form.
#[derive(Clone, Debug, PartialEq)]
pub struct Reducer {
    seed: u64,
    kind: ReducerKind,
    matrix: DMatrix<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct ReducerSpec {
    k: usize,
    #[serde(rename = "N")]
    cols: usize,
    seed: u64,
    kind: ReducerKind,
}

impl Serialize for Reducer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReducerSpec {
            k: self.rows(),
            cols: self.cols(),
            seed: self.seed,
            kind: self.kind,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Reducer {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = ReducerSpec::deserialize(d)?;
        Reducer::new(spec.cols, spec.k, spec.seed, spec.kind).map_err(serde::de::Error::custom)
    }
}

impl Reducer {
    pub fn new(cols: usize, k: usize, seed: u64, kind: ReducerKind) -> Result<Self> {
        if cols == 0 || k == 0 {
            return Err(Error::parameter("reducer dimensions must be positive"));
        }
        if k > cols {
            return Err(Error::parameter(format!(
                "reducer target dimension {k} exceeds source dimension {cols}"
            )));
        }
        let matrix = match kind {
            ReducerKind::Identity if k != cols => {
                return Err(Error::parameter(format!(
                    "identity reducer must be square, got {k}x{cols}"
                )))
            }
            ReducerKind::Identity => DMatrix::identity(k, cols),
            ReducerKind::Gaussian => {
                let mut rng = master_rng(seed);
                let entries: Vec<Complex64> =
                    (0..k * cols).map(|_| complex_normal(&mut rng)).collect();
                DMatrix::from_row_slice(k, cols, &entries)
            }
        };
        Ok(Reducer { seed, kind, matrix })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, n, 0, ReducerKind::Identity)
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn kind(&self) -> ReducerKind {
        self.kind
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        Error::check_dim(self.cols(), v.len())?;
        if self.kind == ReducerKind::Identity {
            return Ok(v.to_vec());
        }
        let out = &self.matrix * DVector::from_column_slice(v);
        Ok(out.as_slice().to_vec())
    }

    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }
}

/// Largest singular value by power iteration on `A*A`.
///
/// Iterates until the eigen-residual `‖A*A v − μ v‖` drops below
/// `1e-12 · μ` and the Rayleigh quotient `μ` is stationary to `1e-15`.
pub fn operator_norm(a: &DMatrix<Complex64>) -> f64 {
    const MAX_ITERS: usize = 200_000;
    let cols = a.ncols();
    if cols == 0 || a.nrows() == 0 {
        return 0.0;
    }
    let frobenius = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if frobenius == 0.0 {
        return 0.0;
    }
    // fixed, non-symmetric start vector
    let mut v = DVector::from_iterator(
        cols,
        (0..cols).map(|j| Complex64::new(1.0 + 0.37 * j as f64, 0.11 * (j % 3) as f64)),
    );
    v /= Complex64::from(v.norm());
    let a_adj = a.adjoint();
    let mut mu = 0.0;
    for _ in 0..MAX_ITERS {
        let w = &a_adj * (a * &v);
        let next_mu = v.dotc(&w).re;
        let residual = (&w - &v * Complex64::from(next_mu)).norm();
        let wn = w.norm();
        if wn == 0.0 {
            break;
        }
        let stationary = (next_mu - mu).abs() <= 1e-15 * next_mu;
        mu = next_mu;
        v = w / Complex64::from(wn);
        if residual <= 1e-12 * mu && stationary {
            break;
        }
    }
    let sigma = mu.max(0.0).sqrt();
    debug_assert!(sigma <= frobenius * (1.0 + 1e-12));
    sigma.min(frobenius)
}

/// Requested output dimension of a pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetDim {
    /// `2n+1` (or `2n` for `T = ωI`), clamped to `N`.
    Auto,
    Fixed(usize),
}

/// `2n+1`, or `2n` when the action is `ωI` with primitive `ω`, clamped to `N`.
pub fn auto_target_dim(action: &CyclicAction) -> usize {
    let n = action.n();
    let base = if action.form() == ActionForm::Diagonal && is_homogeneous(action) {
        2 * n
    } else {
        2 * n + 1
    };
    base.min(n * (n + 1) / 2)
}

/// Action, separating set and reducer, assembled into `Φ`.
#[derive(Clone, Debug)]
pub struct Pipeline {
    action: CyclicAction,
    domain_action: CyclicAction,
    dft: Option<Dft>,
    set: SeparatingSet,
    reducer: Reducer,
}

impl Pipeline {
    /// Builds the pipeline. A target equal to `N` always uses the identity
    /// reducer; smaller targets use a seeded Gaussian reducer.
    pub fn new(action: CyclicAction, target: TargetDim, seed: u64) -> Result<Self> {
        let n = action.n();
        let big_n = n * (n + 1) / 2;
        let k = match target {
            TargetDim::Auto => auto_target_dim(&action),
            TargetDim::Fixed(k) => k,
        };
        let reducer = if k == big_n {
            Reducer::identity(big_n)?
        } else {
            Reducer::new(big_n, k, seed, ReducerKind::Gaussian)?
        };
        Self::with_reducer(action, reducer)
    }

    pub fn with_reducer(action: CyclicAction, reducer: Reducer) -> Result<Self> {
        let (domain_action, dft) = match action.form() {
            ActionForm::Diagonal => (action.clone(), None),
            ActionForm::Translation => (action.to_fourier_domain()?, Some(Dft::new(action.n())?)),
        };
        let set = SeparatingSet::new(&domain_action)?;
        Error::check_dim(set.len(), reducer.cols())?;
        Ok(Pipeline {
            action,
            domain_action,
            dft,
            set,
            reducer,
        })
    }

    pub fn action(&self) -> &CyclicAction {
        &self.action
    }

    /// The diagonal action the monomials are built for.
    pub fn domain_action(&self) -> &CyclicAction {
        &self.domain_action
    }

    pub fn set(&self) -> &SeparatingSet {
        &self.set
    }

    pub fn reducer(&self) -> &Reducer {
        &self.reducer
    }

    pub fn n(&self) -> usize {
        self.action.n()
    }

    pub fn m(&self) -> usize {
        self.action.m()
    }

    pub fn target_dim(&self) -> usize {
        self.reducer.rows()
    }

    /// Moves `x` into the coordinates where the action is diagonal.
    pub fn to_domain(&self, x: &[Complex64]) -> Result<ComplexSignal> {
        Error::check_dim(self.n(), x.len())?;
        match &self.dft {
            Some(dft) => dft.forward(x),
            None => Ok(ComplexSignal::new(x.to_vec())),
        }
    }

    /// Inverse of [`Pipeline::to_domain`].
    pub fn from_domain(&self, xhat: &[Complex64]) -> Result<ComplexSignal> {
        Error::check_dim(self.n(), xhat.len())?;
        match &self.dft {
            Some(dft) => dft.inverse(xhat),
            None => Ok(ComplexSignal::new(xhat.to_vec())),
        }
    }

    /// `F_T` in the diagonal domain, composed with the DFT for translations.
    pub fn invariants(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        eval_invariants(&self.set, &self.to_domain(x)?)
    }

    /// `H = ℓ ∘ F_T`.
    pub fn h(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.reducer.apply(&self.invariants(x)?)
    }

    /// `Φ(x) = ‖x‖ H(x/‖x‖)`, and exactly zero below [`ZERO_NORM_THRESHOLD`].
    pub fn embed(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        Error::check_dim(self.n(), x.len())?;
        if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("signal has non-finite entries".into()));
        }
        let r = crate::action::norm(x);
        if r < ZERO_NORM_THRESHOLD {
            return Ok(vec![Complex64::new(0.0, 0.0); self.target_dim()]);
        }
        let unit: Vec<Complex64> = x.iter().map(|z| z / r).collect();
        let mut out = self.h(&unit)?;
        out.iter_mut().for_each(|z| *z *= r);
        Ok(out)
    }

    pub fn lipschitz_bound(&self) -> LipschitzBound {
        LipschitzBound::new(self.m(), self.reducer.operator_norm())
    }
}

/// Sampled sup-norm estimates of `F_T` and its partials on the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampledConstant {
    pub component_sup: f64,
    pub partial_sup: f64,
    /// `3‖ℓ‖ · max(component_sup, partial_sup)`.
    pub bound: f64,
}

/// The upper Lipschitz constant `3 m ‖ℓ‖`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LipschitzBound {
    pub m: usize,
    pub reducer_norm: f64,
    pub bound: f64,
    pub sampled: Option<SampledConstant>,
}

impl LipschitzBound {
    pub fn new(m: usize, reducer_norm: f64) -> Self {
        LipschitzBound {
            m,
            reducer_norm,
            bound: 3.0 * m as f64 * reducer_norm,
            sampled: None,
        }
    }

    pub fn with_sampled(mut self, component_sup: f64, partial_sup: f64) -> Self {
        self.sampled = Some(SampledConstant {
            component_sup,
            partial_sup,
            bound: 3.0 * self.reducer_norm * component_sup.max(partial_sup),
        });
        self
    }
}
