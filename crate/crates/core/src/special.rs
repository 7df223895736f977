//! Special functions: unit-ball volumes, binomials, complete elliptic
//! integrals and Bessel roots.

use std::f64::consts::PI;

/// Volume of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Elementary symmetric polynomial `e_j(a_1, .., a_m)`.
pub fn elementary_symmetric(values: &[f64], j: usize) -> f64 {
    // e[i] after processing a prefix holds e_i of the prefix
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (count, &a) in values.iter().enumerate() {
        for i in (1..=count + 1).rev() {
            e[i] += a * e[i - 1];
        }
    }
    e.get(j).copied().unwrap_or(0.0)
}

/// Perimeter of the ellipse with semi-axes `a`, `b` via the
/// arithmetic-geometric mean form of the complete elliptic integral of the
/// second kind.
pub fn ellipse_perimeter(a: f64, b: f64) -> f64 {
    let major = a.max(b);
    let (mut an, mut bn) = (major, a.min(b));
    // sum_{n>=0} 2^{n-1} c_n^2 with c_0^2 = a^2 - b^2, c_{n+1} = (a_n - b_n)/2
    let mut weighted = 0.5 * (an * an - bn * bn);
    let mut pow = 0.5;
    for _ in 0..64 {
        let c = 0.5 * (an - bn);
        let next_a = 0.5 * (an + bn);
        bn = (an * bn).sqrt();
        an = next_a;
        pow *= 2.0;
        weighted += pow * c * c;
        if c.abs() <= 1e-17 * an {
            break;
        }
    }
    let agm = 0.5 * (an + bn);
    2.0 * PI / agm * (major * major - weighted)
}

/// `J_nu(x)` up to the positive factor `(x/2)^nu / Gamma(nu+1)`, i.e. the
/// entire series `sum_m (-1)^m (x/2)^{2m} / (m! (nu+1)_m)`. Shares its
/// positive zeros with `J_nu`.
fn bessel_reduced(nu: f64, x: f64) -> f64 {
    let q = -(x * x) / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..400 {
        term *= q / (m as f64 * (nu + m as f64));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// First positive zero of `J_nu` by bracketing and bisection.
pub fn bessel_first_zero(nu: f64) -> f64 {
    let step = 0.05;
    let mut lo = 1e-3;
    let mut flo = bessel_reduced(nu, lo);
    let mut hi = lo + step;
    loop {
        let fhi = bessel_reduced(nu, hi);
        if flo * fhi <= 0.0 {
            break;
        }
        lo = hi;
        flo = fhi;
        hi += step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = bessel_reduced(nu, mid);
        if fm == 0.0 {
            return mid;
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}
