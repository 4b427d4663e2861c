//! The first-attempt invariant map for `ℤ_p` acting by translation, written
//! in Fourier coordinates:
//!
//! `F(x̂) = (x̂_0, x̂_1^p, …, x̂_{p−1}^p, x̂_1^{p−2} x̂_2, …, x̂_1 x̂_{p−1})`.
//!
//! Every entry is invariant under the modulation action, but once `x̂_1 = 0`
//! the mixed terms vanish and the phases of `x̂_2, …, x̂_{p−1}` are no longer
//! tied together, so distinct orbits collide.

use num_complex::Complex64;

use crate::action::{root_of_unity, ComplexSignal};
use crate::error::{Error, Result};

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Evaluates the map; output length is `2p − 2`.
pub fn prime_fourier_map(p: usize, xhat: &[Complex64]) -> Result<Vec<Complex64>> {
    if !is_prime(p) {
        return Err(Error::parameter(format!("{p} is not prime")));
    }
    Error::check_dim(p, xhat.len())?;
    let mut out = Vec::with_capacity(2 * p - 2);
    out.push(xhat[0]);
    out.extend((1..p).map(|k| xhat[k].powu(p as u32)));
    out.extend((2..p).map(|k| xhat[1].powu((p - k) as u32) * xhat[k]));
    Ok(out)
}

/// `x̂ = (0, 0, 1, …, 1)` and `ŷ = (0, 0, e^{2πi/p}, 1, …, 1)`: equal map
/// values, different orbits. Needs `p ≥ 5` so that a free coordinate
/// besides `x̂_2` remains to pin the orbit.
pub fn prime_collision_pair(p: usize) -> Result<(ComplexSignal, ComplexSignal)> {
    if !is_prime(p) || p < 5 {
        return Err(Error::parameter(format!("need a prime p >= 5, got {p}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut x = vec![one; p];
    x[0] = Complex64::new(0.0, 0.0);
    x[1] = Complex64::new(0.0, 0.0);
    let mut y = x.clone();
    y[2] = root_of_unity(1, p);
    Ok((ComplexSignal::new(x), ComplexSignal::new(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{distance, CyclicAction};
    use crate::sampling::{gaussian_signal, sample_rng};

    #[test]
    fn primality() {
        let primes: Vec<usize> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn length_and_errors() {
        let x = gaussian_signal(&mut sample_rng(0, 0), 5);
        assert_eq!(prime_fourier_map(5, &x).unwrap().len(), 8);
        assert!(matches!(
            prime_fourier_map(4, &x[..4]),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            prime_fourier_map(7, &x),
            Err(Error::Dimension { .. })
        ));
        assert!(prime_collision_pair(3).is_err());
    }

    #[test]
    fn invariant_under_modulation() {
        for p in [3, 5, 7] {
            let m = CyclicAction::translation(p)
                .unwrap()
                .to_fourier_domain()
                .unwrap();
            let x = gaussian_signal(&mut sample_rng(1, p as u64), p);
            let f = prime_fourier_map(p, &x).unwrap();
            for k in 0..p as i64 {
                let g = prime_fourier_map(p, &m.act(k, &x).unwrap()).unwrap();
                assert!(distance(&f, &g) <= 1e-10);
            }
        }
    }

    #[test]
    fn collision_pair_for_p5() {
        let (x, y) = prime_collision_pair(5).unwrap();
        let fx = prime_fourier_map(5, &x).unwrap();
        let fy = prime_fourier_map(5, &y).unwrap();
        assert!(distance(&fx, &fy) <= 1e-12);
        let m = CyclicAction::translation(5)
            .unwrap()
            .to_fourier_domain()
            .unwrap();
        assert!(m.quotient_distance(&x, &y).unwrap() > 0.5);
    }
}
