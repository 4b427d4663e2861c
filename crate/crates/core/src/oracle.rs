//! Independent reference computations used to generate and check golden values.
//!
//! Nothing here calls back into the routines it is meant to check: operator
//! norms come from a dense SVD, exponents from a full grid enumeration,
//! derivatives from central differences, and orbit membership from comparing
//! against every group element.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::action::{distance, root_of_unity, CyclicAction};
use crate::invariants::Monomial;

/// Largest singular value from a full SVD.
pub fn dense_operator_norm(a: &DMatrix<Complex64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Smallest `d ≥ 1` with `d·e ≡ 0 (mod m)`, by counting.
pub fn brute_force_order(m: usize, e: usize) -> usize {
    (1..=m).find(|d| (d * e).is_multiple_of(m)).unwrap_or(m)
}

/// Lexicographically smallest `(a, b)` over the full grid
/// `1 ≤ a ≤ m`, `0 ≤ b < m_k` with `a·e_j + b·e_k ≡ 0 (mod m)`.
pub fn brute_force_pair_exponents(m: usize, e_j: usize, e_k: usize) -> (usize, usize) {
    let order_k = brute_force_order(m, e_k);
    let mut solutions: Vec<(usize, usize)> = Vec::new();
    for a in 1..=m {
        for b in 0..order_k {
            if (a * e_j + b * e_k).is_multiple_of(m) {
                solutions.push((a, b));
            }
        }
    }
    solutions
        .into_iter()
        .min()
        .expect("(m_j, 0) is always a solution")
}

/// Numerical invariance of a monomial: evaluates it at `T^k x` for all `k`
/// by explicit root-of-unity products and returns the largest deviation.
pub fn monomial_orbit_deviation(action: &CyclicAction, mono: &Monomial, x: &[Complex64]) -> f64 {
    let m = action.m();
    let e = action.weights();
    let value = |k: usize| -> Complex64 {
        mono.factors()
            .into_iter()
            .map(|(i, p)| {
                let mut acc = Complex64::new(1.0, 0.0);
                let t = root_of_unity(k * e[i] % m, m);
                for _ in 0..p {
                    acc *= x[i] * t;
                }
                acc
            })
            .product()
    };
    let base = value(0);
    (1..m).map(|k| (value(k) - base).norm()).fold(0.0, f64::max)
}

/// Whether `y` lies within `tol` of some `T^k x`.
pub fn same_orbit(action: &CyclicAction, x: &[Complex64], y: &[Complex64], tol: f64) -> bool {
    (0..action.m() as i64).any(|k| {
        let gx = action.act(k, x).expect("dimension checked by caller");
        distance(&gx, y) <= tol
    })
}

/// Central differences of `f` along the real and imaginary axis of each
/// coordinate. Returns `(d_re, d_im)`, each `N × n` row-major.
pub fn finite_difference<F>(
    f: F,
    x: &[Complex64],
    step: f64,
) -> (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>)
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let n = x.len();
    let rows = f(x).len();
    let mut d_re = vec![vec![Complex64::new(0.0, 0.0); n]; rows];
    let mut d_im = d_re.clone();
    for c in 0..n {
        for (dir, out) in [
            (Complex64::new(step, 0.0), &mut d_re),
            (Complex64::new(0.0, step), &mut d_im),
        ] {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[c] += dir;
            minus[c] -= dir;
            let fp = f(&plus);
            let fm = f(&minus);
            for r in 0..rows {
                out[r][c] = (fp[r] - fm[r]) / (2.0 * step);
            }
        }
    }
    (d_re, d_im)
}

/// `x̂_j = n^{-1/2} Σ_t x_t e^{2πi jt/n}` by direct summation.
pub fn direct_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|t| {
                    x[t] * Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * (j * t) as f64 / n as f64,
                    )
                })
                .sum::<Complex64>()
                * scale
        })
        .collect()
}
