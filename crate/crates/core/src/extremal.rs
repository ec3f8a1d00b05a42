//! Closed-form solution of the trace-constrained weighted entropy-difference
//! maximization
//!
//! ```text
//!   max over X with tr(Q_X) <= n*P  of  h(X + Z1) - mu * h(sqrt(a)*X + Z2)
//! ```
//!
//! with white Gaussian `Z1 ~ N(0, N1*I)`, `Z2 ~ N(0, N2*I)`. The optimum is
//! i.i.d. Gaussian and the per-dimension value is a three-piece function of
//! `mu`. All outputs are per-dimension quantities in bits; the `2*pi*e`
//! factors are kept verbatim so callers can audit cancellations themselves.

use crate::error::{Error, Result};
use std::f64::consts::{E, PI};

/// `0.5 * log2(2*pi*e*x)` in bits.
#[inline]
pub(crate) fn half_log2_2pie(x: f64) -> f64 {
    0.5 * (2.0 * PI * E * x).log2()
}

/// Optimal per-dimension input variance and objective value for the `a = 1`
/// problem `max h(X+Z1) - mu*h(X+Z2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalSolution {
    /// Optimal per-dimension input variance; one of `p`, `(n2 - mu*n1)/(mu - 1)`, `0`.
    pub variance: f64,
    /// Optimal objective per dimension, bits.
    pub value: f64,
}

fn check_noise(name: &'static str, n: f64) -> Result<()> {
    if !n.is_finite() || n <= 0.0 {
        return Err(Error::InvalidParam { name, reason: format!("must be positive, got {n}") });
    }
    Ok(())
}

fn check_power(p: f64) -> Result<()> {
    if !p.is_finite() || p < 0.0 {
        return Err(Error::InvalidParam { name: "p", reason: format!("must be nonnegative, got {p}") });
    }
    Ok(())
}

fn check_weight(mu: f64) -> Result<()> {
    if !mu.is_finite() || mu < 0.0 {
        return Err(Error::InvalidParam { name: "mu", reason: format!("must be nonnegative, got {mu}") });
    }
    Ok(())
}

/// Solves `max h(X+Z1) - mu*h(X+Z2)` under the per-dimension power budget `p`.
///
/// For `n1 <= n2` the optimum falls in one of three regimes of `mu`:
/// full power, the interpolating variance `(n2 - mu*n1)/(mu - 1)`, or zero.
/// For `n1 > n2` only `mu >= 1` is supported (zero variance); smaller weights
/// have no Gaussian-optimal closed form there.
pub fn extremal_variance(p: f64, n1: f64, n2: f64, mu: f64) -> Result<ExtremalSolution> {
    check_power(p)?;
    check_noise("n1", n1)?;
    check_noise("n2", n2)?;
    check_weight(mu)?;

    if n1 > n2 {
        if mu < 1.0 {
            return Err(Error::UnsupportedRegime(format!(
                "n1 > n2 requires mu >= 1 (n1={n1}, n2={n2}, mu={mu})"
            )));
        }
        return Ok(ExtremalSolution {
            variance: 0.0,
            value: half_log2_2pie(n1) - mu * half_log2_2pie(n2),
        });
    }

    if mu <= (n2 + p) / (n1 + p) {
        Ok(ExtremalSolution {
            variance: p,
            value: half_log2_2pie(p + n1) - mu * half_log2_2pie(p + n2),
        })
    } else if mu <= n2 / n1 {
        // (n2+p)/(n1+p) < mu implies mu > 1 here, so the division is safe.
        let lam = (n2 - mu * n1) / (mu - 1.0);
        let gap = (n2 - n1) / (mu - 1.0);
        Ok(ExtremalSolution {
            variance: lam,
            value: half_log2_2pie(gap) - mu * half_log2_2pie(mu * gap),
        })
    } else {
        Ok(ExtremalSolution {
            variance: 0.0,
            value: half_log2_2pie(n1) - mu * half_log2_2pie(n2),
        })
    }
}

/// Per-dimension maximum of `h(X+Z1) - h(X+Z2)` (the `mu = 1` case).
pub fn worst_noise_gap(p: f64, n1: f64, n2: f64) -> Result<f64> {
    check_power(p)?;
    check_noise("n1", n1)?;
    check_noise("n2", n2)?;
    if n1 <= n2 {
        Ok(0.5 * ((p + n1) / (p + n2)).log2())
    } else {
        Ok(0.5 * (n1 / n2).log2())
    }
}

/// Per-dimension maximum of `h(X+Z1) - mu*h(sqrt(a)*X+Z2)` under the power
/// budget `p`, for `a > 0` and `n1 <= n2/a`.
///
/// Scaling the second argument by `1/sqrt(a)` reduces this to
/// [`extremal_variance`] with noises `(n1, n2/a)` plus the determinant
/// correction `-(mu/2)*log2(a)`; the three pieces below are that reduction
/// spelled out. Breakpoints sit at `mu = (p + n2/a)/(p + n1)` and
/// `mu = n2/(a*n1)`, and the function is continuous in `mu`.
pub fn max_entropy_difference(p: f64, n1: f64, n2: f64, a: f64, mu: f64) -> Result<f64> {
    check_power(p)?;
    check_noise("n1", n1)?;
    check_noise("n2", n2)?;
    check_weight(mu)?;
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!(
            "gain a must be positive (one-sided cases have their own closed forms), got {a}"
        )));
    }
    let mut n2a = n2 / a;
    if n1 > n2a {
        // Tolerate round-off when a caller sits exactly on the boundary
        // n1 = n2/a (active admissibility constraints do).
        if n1 <= n2a * (1.0 + 1e-9) {
            n2a = n1;
        } else {
            return Err(Error::Domain(format!(
                "requires n1 <= n2/a, got n1={n1}, n2/a={n2a}"
            )));
        }
    }

    if mu <= (p + n2a) / (p + n1) {
        Ok(half_log2_2pie(p + n1) - mu * half_log2_2pie(a * p + n2))
    } else if mu <= n2a / n1 {
        let gap = (n2a - n1) / (mu - 1.0);
        Ok(half_log2_2pie(gap) - mu * half_log2_2pie(a * mu * gap))
    } else {
        Ok(half_log2_2pie(n1) - mu * half_log2_2pie(n2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variance_regimes() {
        // mu at or below the first breakpoint keeps full power.
        let s = extremal_variance(1.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(s.variance, 1.0);

        // Past n2/n1 the optimal variance collapses to zero.
        let s = extremal_variance(10.0, 1.0, 2.0, 3.0).unwrap();
        assert_eq!(s.variance, 0.0);

        // Interpolating regime: (n2 - mu*n1)/(mu - 1).
        let s = extremal_variance(10.0, 1.0, 2.0, 1.5).unwrap();
        assert!((s.variance - 1.0).abs() < 1e-12);
    }

    #[test]
    fn variance_rejects_small_mu_with_reversed_noises() {
        assert!(extremal_variance(1.0, 2.0, 1.0, 0.5).is_err());
        assert!(extremal_variance(1.0, 2.0, 1.0, 1.0).is_ok());
    }

    #[test]
    fn variance_value_continuous_at_first_breakpoint() {
        let (p, n1, n2) = (3.0, 0.7, 2.1);
        let bp = (n2 + p) / (n1 + p);
        let lo = extremal_variance(p, n1, n2, bp).unwrap().value;
        // Evaluate the regime-2 formula exactly at the breakpoint.
        let gap = (n2 - n1) / (bp - 1.0);
        let hi = half_log2_2pie(gap) - bp * half_log2_2pie(bp * gap);
        assert!((lo - hi).abs() < 1e-9, "regime mismatch at breakpoint: {lo} vs {hi}");
    }

    #[test]
    fn worst_noise_gap_examples() {
        assert_eq!(worst_noise_gap(5.0, 1.3, 1.3).unwrap(), 0.0);
        let g = worst_noise_gap(1.0, 1.0, 2.0).unwrap();
        assert!((g - 0.5 * (2.0f64 / 3.0).log2()).abs() < 1e-15);
        let g = worst_noise_gap(0.0, 4.0, 2.0).unwrap();
        assert!((g - 0.5).abs() < 1e-15);
    }

    #[test]
    fn entropy_difference_at_zero_weight() {
        let (p, n1) = (2.0, 0.8);
        let v = max_entropy_difference(p, n1, 1.7, 0.4, 0.0).unwrap();
        assert!((v - half_log2_2pie(p + n1)).abs() < 1e-12);
    }

    #[test]
    fn entropy_difference_vanishes_for_identical_problem() {
        let v = max_entropy_difference(3.0, 1.2, 1.2, 1.0, 1.0).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn entropy_difference_piece_values_meet_at_breakpoint() {
        let (p, n1, n2, a) = (4.0, 0.6, 1.9, 0.5);
        let bp = (p + n2 / a) / (p + n1);
        let piece1 = half_log2_2pie(p + n1) - bp * half_log2_2pie(a * p + n2);
        let gap = (n2 / a - n1) / (bp - 1.0);
        let piece2 = half_log2_2pie(gap) - bp * half_log2_2pie(a * bp * gap);
        assert!((piece1 - piece2).abs() < 1e-9);
    }

    #[test]
    fn entropy_difference_matches_rescaled_route() {
        // h(sqrt(a) X + Z2) = 0.5*log2(a) + h(X + Z2/sqrt(a)) per dimension,
        // so the value must equal the a=1 solution with noises (n1, n2/a)
        // minus (mu/2)*log2(a).
        let cases = [
            (2.0, 0.5, 1.0, 0.4, 0.7),
            (5.0, 1.0, 2.0, 0.6, 1.3),
            (0.0, 0.9, 1.1, 0.3, 2.5),
            (7.0, 0.4, 3.0, 1.5, 4.0),
            (3.0, 1.0, 1.0, 0.2, 9.0),
        ];
        for (p, n1, n2, a, mu) in cases {
            let direct = max_entropy_difference(p, n1, n2, a, mu).unwrap();
            let via_scaling =
                extremal_variance(p, n1, n2 / a, mu).unwrap().value - 0.5 * mu * a.log2();
            assert!(
                (direct - via_scaling).abs() < 1e-12,
                "routes disagree at p={p}, n1={n1}, n2={n2}, a={a}, mu={mu}: {direct} vs {via_scaling}"
            );
        }
    }

    #[test]
    fn entropy_difference_rejects_bad_geometry() {
        assert!(max_entropy_difference(1.0, 2.0, 1.0, 1.0, 0.5).is_err());
        assert!(max_entropy_difference(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn entropy_difference_nonincreasing_in_mu() {
        let (p, n1, n2, a) = (6.0, 0.8, 1.4, 0.6);
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let mu = k as f64 * 0.05;
            let v = max_entropy_difference(p, n1, n2, a, mu).unwrap();
            assert!(v <= prev + 1e-12, "increased at mu={mu}");
            prev = v;
        }
    }
}
