//! Gauss rules and sphere rules.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::specfun::gamma::{gamma_real, rgamma_real};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss–Jacobi rule for the weight `(1 - t)^a (1 + t)^b` on `[-1, 1]`
/// (Golub–Welsch).
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        jm[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let beta = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + ab)
                    / ((2.0 * j + ab).powi(2) * (2.0 * j + ab + 1.0) * (2.0 * j + ab - 1.0))
            };
            let off = beta.sqrt();
            jm[(k, k + 1)] = off;
            jm[(k + 1, k)] = off;
        }
    }
    let mu0 = 2f64.powf(ab + 1.0)
        * gamma_real(a + 1.0).unwrap_or(f64::NAN)
        * gamma_real(b + 1.0).unwrap_or(f64::NAN)
        * rgamma_real(ab + 2.0);
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

/// Gauss–Legendre rule mapped to `[lo, hi]`.
pub fn gl_interval(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    x.iter().zip(w.iter()).map(|(xi, wi)| (mid + half * xi, half * wi)).collect()
}

/// Quadrature on the unit sphere `S^{d-1}`: points and weights summing to
/// the surface area. `n` controls the resolution.
pub fn sphere_rule(d: u32, n: usize) -> Vec<(Vec<f64>, f64)> {
    match d {
        1 => vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)],
        2 => (0..n)
            .map(|k| {
                let th = 2.0 * PI * (k as f64 + 0.5) / n as f64;
                (vec![th.cos(), th.sin()], 2.0 * PI / n as f64)
            })
            .collect(),
        3 => {
            let (ct, wt) = gauss_legendre(n);
            let nphi = 2 * n;
            let mut out = Vec::with_capacity(n * nphi);
            for (c, w) in ct.iter().zip(wt.iter()) {
                let s = (1.0 - c * c).sqrt();
                for k in 0..nphi {
                    let ph = 2.0 * PI * (k as f64 + 0.5) / nphi as f64;
                    out.push((vec![s * ph.cos(), s * ph.sin(), *c], w * 2.0 * PI / nphi as f64));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Surface area of `S^{d-1}`.
pub fn sphere_area(d: u32) -> f64 {
    2.0 * PI.powf(d as f64 / 2.0) * rgamma_real(d as f64 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_rule_moments() {
        let (a, b) = (0.5, -0.5);
        let (x, w) = gauss_jacobi(8, a, b);
        // int (1-t)^{1/2} (1+t)^{-1/2} dt = pi
        assert!((w.iter().sum::<f64>() - PI).abs() < 1e-13);
        // first moment: int t (1-t)^{1/2}(1+t)^{-1/2} = -pi/2
        let m1: f64 = x.iter().zip(&w).map(|(x, w)| x * w).sum();
        assert!((m1 + PI / 2.0).abs() < 1e-13);
        let (x, w) = gauss_jacobi(6, 0.0, 0.0);
        let (xl, wl) = gauss_legendre(6);
        for i in 0..6 {
            assert!((x[i] - xl[i]).abs() < 1e-13 && (w[i] - wl[i]).abs() < 1e-13);
        }
    }

    #[test]
    fn sphere_areas() {
        for d in 1..=3 {
            let s: f64 = sphere_rule(d, 16).iter().map(|(_, w)| w).sum();
            assert!((s - sphere_area(d)).abs() < 1e-12, "d={d}");
        }
    }
}
