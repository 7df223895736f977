use crate::special::{binomial, unit_ball_volume};
use serde::Serialize;

/// Constants of the lower and upper bounds for a given `(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub n: usize,
    pub k: usize,
    /// `k^{k+1} / (n (2k+1)^k)`
    pub polya_lower: f64,
    /// `C(n,k) n (2k+1)^k / k^{k+1}`
    pub eigen_upper: f64,
    /// `C(n,k)`, the bound on `lambda_k T_k / |Omega|^k`.
    pub g_bound: f64,
    /// `n (k+2) / (n-k+1)`, the distance-test-function bound.
    pub dpg_upper: f64,
    pub a: f64,
    pub c_n: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Constants {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 2 && (1..=n).contains(&k), "constants need 1 <= k <= n and n >= 2");
        let (nf, kf) = (n as f64, k as f64);
        let q = 2.0 * kf + 1.0;
        let polya_lower = kf.powf(kf + 1.0) / (nf * q.powf(kf));
        let c1 = (kf * q.powf(2.0 + 1.0 / kf) / (3.0 * kf + 1.0).powf(3.0 + 1.0 / kf))
            * (kf.powf(kf + 2.0) * 2.0 * (nf - 1.0) / (nf.powi(3) * q.powf(kf)))
            * Self::a(n);
        Constants {
            n,
            k,
            polya_lower,
            eigen_upper: binomial(n, k) / polya_lower,
            g_bound: binomial(n, k),
            dpg_upper: nf * (kf + 2.0) / (nf - kf + 1.0),
            a: Self::a(n),
            c_n: Self::c_n(n),
            c1,
            c2: kf.powf(kf + 2.0) / (nf * q.powf(kf) * (6.0 * nf).powf(q / kf)),
        }
    }

    /// Ratio bound between inradius and minimal width.
    pub fn a(n: usize) -> f64 {
        let nf = n as f64;
        if n % 2 == 0 {
            (nf + 2.0).sqrt() / (2.0 * nf + 2.0)
        } else {
            1.0 / (2.0 * nf.sqrt())
        }
    }

    /// Constant of the inner-perimeter decay estimate.
    pub fn c_n(n: usize) -> f64 {
        let nf = n as f64;
        (nf - 1.0) * unit_ball_volume(n).powf(1.0 / (nf - 1.0)) / nf.powf((nf - 2.0) / (nf - 1.0))
    }

    /// `c1` assembled the way the lower-bound argument produces it:
    /// `k^{k+3} (2k+1)^{2+1/k} 2(n-1) a(n) / (n^3 (2k+1)^k (3k+1)^{3+1/k})`.
    pub fn c1_composed(&self) -> f64 {
        let (nf, kf) = (self.n as f64, self.k as f64);
        let q = 2.0 * kf + 1.0;
        kf.powf(kf + 3.0) * q.powf(2.0 + 1.0 / kf) * 2.0 * (nf - 1.0) * self.a
            / (nf.powi(3) * q.powf(kf) * (3.0 * kf + 1.0).powf(3.0 + 1.0 / kf))
    }

    /// Known upper bound `2^{2n} n^{3n} / omega_n^2 * n/(n+2)` for
    /// `T P^2 / |Omega|^3` (Laplacian case), reported for context only.
    pub fn torsion_upper_context(n: usize) -> f64 {
        let nf = n as f64;
        2f64.powf(2.0 * nf) * nf.powf(3.0 * nf) / unit_ball_volume(n).powi(2) * nf / (nf + 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reference_values() {
        let c = Constants::new(2, 1);
        assert!((c.polya_lower - 1.0 / 6.0).abs() < 1e-15);
        assert!((c.eigen_upper - 12.0).abs() < 1e-13);
        assert!((c.c1 - 27.0 / 9216.0).abs() < 1e-15);
        assert!((c.c2 - 1.0 / 10368.0).abs() < 1e-16);
        assert!((Constants::a(2) - 1.0 / 3.0).abs() < 1e-15);
        assert!((Constants::a(3) - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((Constants::c_n(2) - PI).abs() < 1e-14);
        assert!((Constants::new(2, 2).eigen_upper - 6.25).abs() < 1e-13);
        assert!((Constants::new(2, 2).polya_lower - 0.16).abs() < 1e-15);
    }

    #[test]
    fn c1_forms_agree_and_constants_positive() {
        for n in 2..=8 {
            for k in 1..=n {
                let c = Constants::new(n, k);
                assert!((c.c1 - c.c1_composed()).abs() <= 1e-12 * c.c1);
                for v in [c.polya_lower, c.eigen_upper, c.g_bound, c.dpg_upper, c.a, c.c_n, c.c1, c.c2] {
                    assert!(v > 0.0 && v.is_finite());
                }
            }
        }
    }
}
