//! The separating monomial set of a diagonal cyclic action.
//!
//! For `T = diag(ω^{e_1}, …, ω^{e_n})` the set holds one power `x_i^{m_i}`
//! per coordinate, where `m_i = m / gcd(e_i, m)` is the order of `t_i`, and
//! one mixed monomial `x_j^{a} x_k^{b}` per pair `j < k`, where `a ≥ 1` is
//! minimal such that some `0 ≤ b < m_k` makes the monomial invariant.
//! Everything here is exact integer arithmetic.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::action::{ActionForm, CyclicAction};
use crate::error::{Error, Result};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative order of `ω^e` in `ℤ_m`; `e = 0` gives 1.
pub fn coordinate_order(m: usize, e: usize) -> usize {
    m / gcd(e % m, m)
}

/// Minimal `a ≥ 1`, then minimal `0 ≤ b < m_k`, with `a·e_j + b·e_k ≡ 0 (mod m)`.
pub fn pair_exponents(m: usize, e_j: usize, e_k: usize) -> (usize, usize) {
    let order_k = coordinate_order(m, e_k);
    for a in 1..=m {
        for b in 0..order_k {
            if (a * e_j + b * e_k).is_multiple_of(m) {
                return (a, b);
            }
        }
    }
    // a = m_j, b = 0 always solves the congruence
    unreachable!("no invariant pair exponent for m={m}, e_j={e_j}, e_k={e_k}")
}

/// A monomial in the separating set. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Monomial {
    Single {
        i: usize,
        exp: usize,
    },
    Pair {
        j: usize,
        k: usize,
        a: usize,
        b: usize,
    },
}

impl Monomial {
    pub fn degree(&self) -> usize {
        match *self {
            Monomial::Single { exp, .. } => exp,
            Monomial::Pair { a, b, .. } => a + b,
        }
    }

    /// A pair with `b = 0`, which is a pure power of `x_j`.
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Monomial::Pair { b: 0, .. })
    }

    /// Sparse exponent list `(index, exponent)` with nonzero exponents.
    pub fn factors(&self) -> Vec<(usize, usize)> {
        match *self {
            Monomial::Single { i, exp } => vec![(i, exp)],
            Monomial::Pair { j, a, b: 0, .. } => vec![(j, a)],
            Monomial::Pair { j, k, a, b } => vec![(j, a), (k, b)],
        }
    }

    fn max_index(&self) -> usize {
        match *self {
            Monomial::Single { i, .. } => i,
            Monomial::Pair { j, k, .. } => j.max(k),
        }
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Complex64 {
        match *self {
            Monomial::Single { i, exp } => x[i].powu(exp as u32),
            Monomial::Pair { j, k, a, b } => x[j].powu(a as u32) * x[k].powu(b as u32),
        }
    }

    /// Holomorphic partial derivative with respect to `x_var`.
    pub fn partial(&self, x: &[Complex64], var: usize) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match *self {
            Monomial::Single { i, exp } if i == var => x[i].powu(exp as u32 - 1) * exp as f64,
            Monomial::Single { .. } => zero,
            Monomial::Pair { j, k, a, b } if j == var => {
                x[j].powu(a as u32 - 1) * x[k].powu(b as u32) * a as f64
            }
            Monomial::Pair { j, k, a, b } if k == var && b > 0 => {
                x[j].powu(a as u32) * x[k].powu(b as u32 - 1) * b as f64
            }
            Monomial::Pair { .. } => zero,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |f: &mut fmt::Formatter<'_>, i: usize, p: usize| match p {
            1 => write!(f, "x{}", i + 1),
            _ => write!(f, "x{}^{}", i + 1, p),
        };
        let factors = self.factors();
        for (n, (i, p)) in factors.into_iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            term(f, i, p)?;
        }
        Ok(())
    }
}

/// Exact invariance check: the weighted exponent sum vanishes mod `m`.
pub fn is_invariant_monomial(action: &CyclicAction, monomial: &Monomial) -> Result<bool> {
    let n = action.n();
    if monomial.max_index() >= n {
        return Err(Error::Dimension {
            expected: n,
            got: monomial.max_index() + 1,
        });
    }
    let e = action.weights();
    let total = match *monomial {
        Monomial::Single { i, exp } => exp * e[i],
        Monomial::Pair { j, k, a, b } => a * e[j] + b * e[k],
    };
    Ok(total % action.m() == 0)
}

/// `T = ωI` with `ω` a primitive `m`-th root of unity.
pub fn is_homogeneous(action: &CyclicAction) -> bool {
    let e = action.weights()[0];
    action.weights().iter().all(|&w| w == e) && gcd(e, action.m()) == 1
}

/// The canonical separating set: singles by index, then pairs in
/// lexicographic `(j, k)` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatingSet {
    m: usize,
    weights: Vec<usize>,
    monomials: Vec<Monomial>,
}

impl SeparatingSet {
    pub fn new(action: &CyclicAction) -> Result<Self> {
        if action.form() != ActionForm::Diagonal {
            return Err(Error::InvalidForm(
                "separating set needs a diagonal action; conjugate a translation \
                 action with to_fourier_domain first"
                    .into(),
            ));
        }
        let m = action.m();
        let e = action.weights();
        let n = e.len();
        let mut monomials = Vec::with_capacity(n * (n + 1) / 2);
        monomials.extend((0..n).map(|i| Monomial::Single {
            i,
            exp: coordinate_order(m, e[i]),
        }));
        for j in 0..n {
            for k in j + 1..n {
                let (a, b) = pair_exponents(m, e[j], e[k]);
                monomials.push(Monomial::Pair { j, k, a, b });
            }
        }
        Ok(SeparatingSet {
            m,
            weights: e.to_vec(),
            monomials,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    /// Target dimension `N = n(n+1)/2`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn action(&self) -> CyclicAction {
        let w: Vec<i64> = self.weights.iter().map(|&e| e as i64).collect();
        CyclicAction::diagonal(self.m, &w).expect("set built from a valid action")
    }

    /// Positions of pairs with `b = 0`.
    pub fn degenerate_pairs(&self) -> Vec<usize> {
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, mono)| mono.is_degenerate())
            .map(|(idx, _)| idx)
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses the canonical JSON form and checks it against the set rebuilt
    /// from `m` and `weights`.
    pub fn from_json(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            m: usize,
            weights: Vec<i64>,
            monomials: Vec<Monomial>,
        }
        let raw: Raw = serde_json::from_str(s)?;
        let rebuilt = SeparatingSet::new(&CyclicAction::diagonal(raw.m, &raw.weights)?)?;
        if rebuilt.monomials != raw.monomials {
            return Err(Error::Input(
                "monomial list is not the canonical separating set for its action".into(),
            ));
        }
        Ok(rebuilt)
    }
}

/// Convenience wrapper around [`SeparatingSet::new`].
pub fn separating_set(action: &CyclicAction) -> Result<SeparatingSet> {
    SeparatingSet::new(action)
}
