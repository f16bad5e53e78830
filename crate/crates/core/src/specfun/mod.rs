//! Numerical special functions.

use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

pub mod gamma;
pub mod harmonic;
pub mod hyp;
pub mod jacobi;
pub mod meijer;
pub mod quadrature;

pub use gamma::{gamma_complex, rgamma};
pub use harmonic::{harmonic_basis, harmonic_dim, HarmonicBasis, Poly};
pub use hyp::{hyp_2f1, hyp_pfq};
pub use jacobi::jacobi_poly;
pub use meijer::{admissible_strip, default_lambda, meijer_g, meijer_g_at_zero, meijer_g_contour, meijer_g_series};

/// How a value was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Series,
    Contour,
    PerturbedSeries,
    Quadrature,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Series => "series",
            Route::Contour => "contour",
            Route::PerturbedSeries => "perturbed-series",
            Route::Quadrature => "quadrature",
        })
    }
}

/// A numerical value with an error estimate.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult {
    pub value: Complex64,
    pub est_abs_error: f64,
    pub route: Route,
}

impl EvalResult {
    pub fn new(value: Complex64, est_abs_error: f64, route: Route) -> Self {
        EvalResult {
            value,
            est_abs_error,
            route,
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn scaled(self, c: Complex64) -> Self {
        EvalResult {
            value: self.value * c,
            est_abs_error: self.est_abs_error * c.norm(),
            route: self.route,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": [self.value.re, self.value.im],
            "err": self.est_abs_error,
            "route": self.route.to_string(),
        })
    }
}

/// Limit `eps -> 0` of an even function `f(eps) = f0 + c2 eps^2 + ...`,
/// sampled at `eps0 / 2^k`, `k < levels`, by repeated Richardson
/// extrapolation. Returns the limit and an error estimate (last correction
/// plus propagated sample errors).
pub(crate) fn richardson_even<F>(f: F, eps0: f64, levels: usize) -> crate::error::Result<(Complex64, f64)>
where
    F: Fn(f64) -> crate::error::Result<(Complex64, f64)>,
{
    let mut table: Vec<Complex64> = Vec::with_capacity(levels);
    let mut err = 0.0_f64;
    let mut correction = 0.0;
    for k in 0..levels {
        let (v, e) = f(eps0 / 2f64.powi(k as i32))?;
        err = err.max(e);
        let mut row = vec![v];
        for j in 1..=k {
            let p = 4f64.powi(j as i32);
            let prev = table[j - 1];
            let cur = row[j - 1];
            row.push((cur * p - prev) / (p - 1.0));
        }
        if k > 0 {
            correction = (row[k] - row[k - 1]).norm();
        }
        table = row;
    }
    // error amplification of the extrapolation weights stays below 2
    Ok((table[levels - 1], correction + 2.0 * err))
}
