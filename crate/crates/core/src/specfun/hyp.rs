//! Generalized hypergeometric series and the Gauss function on `(-inf, 1)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gfun::HypSpec;
use crate::specfun::gamma::{pole_index, rgamma, sinpi};
use crate::specfun::{richardson_even, EvalResult, Route};

const TERM_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 2_000_000;

/// Largest offset used to step off integer `c - a - b` in the connection
/// formula; smaller ones are `PERTURB_EPS / 2^k`.
pub(crate) const PERTURB_EPS: f64 = 0.02;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn terminates(upper: &[Complex64]) -> bool {
    upper.iter().any(|a| pole_index(*a).is_some())
}

/// Sum of `prod (a)_n / prod (b)_n * z^n / n!`, divided by `prod Gamma(b)`
/// when `regularized`. Returns the value and an absolute error estimate.
pub fn pfq_series(
    upper: &[Complex64],
    lower: &[Complex64],
    regularized: bool,
    z: Complex64,
) -> Result<(Complex64, f64)> {
    let (p, q) = (upper.len(), lower.len());
    if p > q + 1 {
        return Err(Error::Invalid(format!("pFq needs p <= q + 1, got p = {p}, q = {q}")));
    }
    let finite = terminates(upper);
    if p == q + 1 && !finite {
        // terms decay like |z|^n; give up early when the cap cannot suffice
        if z.norm() >= 1.0 || TERM_TOL.ln() / z.norm().ln() > MAX_TERMS as f64 {
            return Err(Error::DivergentSeries(z.norm()));
        }
    }
    if !regularized {
        if let Some(b) = lower.iter().find(|b| pole_index(**b).is_some()) {
            return Err(Error::Pole(format!("lower parameter {b}")));
        }
    }
    if z == c(0.0) {
        let v = if regularized {
            lower.iter().map(|b| rgamma(*b)).product()
        } else {
            c(1.0)
        };
        return Ok((v, 0.0));
    }

    // first index with nonzero regularized term
    let n0 = if regularized {
        lower
            .iter()
            .filter_map(|b| pole_index(*b))
            .map(|k| (1 - k) as usize)
            .max()
            .unwrap_or(0)
    } else {
        0
    };
    let mut t = c(1.0);
    for k in 0..n0 {
        let kf = k as f64;
        for a in upper {
            t *= *a + kf;
        }
        t *= z / (kf + 1.0);
    }
    if regularized {
        for b in lower {
            t *= rgamma(*b + n0 as f64);
        }
    }

    let mut sum = c(0.0);
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut n = n0;
    let mut converged = false;
    while n < n0 + MAX_TERMS {
        sum += t;
        let tn = t.norm();
        abs_sum += tn;
        if t == c(0.0) {
            converged = true;
            break;
        }
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for a in upper {
            ratio *= *a + nf;
        }
        for b in lower {
            ratio /= *b + nf;
        }
        let next = t * ratio;
        let rn = ratio.norm();
        // geometric tail bound once terms decrease
        let tail = if rn < 1.0 { next.norm() / (1.0 - rn) } else { f64::INFINITY };
        if tail <= TERM_TOL * sum.norm() || tail < 1e-300 {
            small_run += 1;
            if small_run >= 3 {
                sum += next;
                converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
        t = next;
        n += 1;
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::DivergentSeries(z.norm()));
        }
    }
    if !converged {
        return Err(Error::DivergentSeries(z.norm()));
    }
    let err = 4.0 * f64::EPSILON * abs_sum + TERM_TOL * sum.norm();
    Ok((sum, err))
}

/// Evaluates `coeff * pFq(upper; lower | arg * r)` by its defining series.
///
/// Real arguments of `2F1` in `(1/2, 1)` use the Gauss connection formula,
/// which converges much faster than the raw series there.
pub fn hyp_pfq(h: &HypSpec, r: Complex64) -> Result<EvalResult> {
    h.check()?;
    let upper: Vec<Complex64> = h.upper.iter().map(|x| x.c64()).collect();
    let lower: Vec<Complex64> = h.lower.iter().map(|x| x.c64()).collect();
    if upper.iter().chain(lower.iter()).any(|x| x.re.is_nan()) {
        return Err(Error::UnboundSymbol(h.to_string()));
    }
    let z = h.arg.c64() * r;
    let k = h.coeff.value()?;
    let (v, e) = if upper.len() == 1 && lower.is_empty() {
        // 1F0(a;; z) = (1 - z)^{-a}
        if z.re >= 1.0 && z.im == 0.0 {
            return Err(Error::Region(format!("1F0 at z = {z} (need z < 1)")));
        }
        let v = (c(1.0) - z).powc(-upper[0]);
        (v, 4.0 * f64::EPSILON * v.norm())
    } else if upper.len() == 2
        && lower.len() == 1
        && z.im == 0.0
        && z.re.abs() > 0.5
        && z.re.abs() < 1.0
        && !terminates(&upper)
    {
        let (v, e) = f21_reg(upper[0], upper[1], lower[0], z.re)?;
        if h.regularized {
            (v, e)
        } else {
            let g = crate::specfun::gamma::gamma(lower[0])?;
            (v * g, e * g.norm())
        }
    } else {
        pfq_series(&upper, &lower, h.regularized, z)?
    };
    Ok(EvalResult::new(v * k, e * k.norm(), Route::Series))
}

/// Gauss `2F1(a, b; c; r)` for real `r < 1`.
pub fn hyp_2f1(a: Complex64, b: Complex64, cc: Complex64, r: f64) -> Result<EvalResult> {
    if pole_index(cc).is_some() {
        return Err(Error::Pole(format!("lower parameter {cc}")));
    }
    let (v, e) = f21_reg(a, b, cc, r)?;
    let g = crate::specfun::gamma::gamma(cc)?;
    Ok(EvalResult::new(v * g, e * g.norm(), Route::Series))
}

/// Regularized Gauss function `2F~1(a, b; c; r)` for real `r < 1`.
pub fn hyp_2f1_reg(a: Complex64, b: Complex64, cc: Complex64, r: f64) -> Result<EvalResult> {
    let (v, e) = f21_reg(a, b, cc, r)?;
    Ok(EvalResult::new(v, e, Route::Series))
}

pub(crate) fn f21_reg(a: Complex64, b: Complex64, cc: Complex64, x: f64) -> Result<(Complex64, f64)> {
    if !(x < 1.0) {
        return Err(Error::Region(format!("2F1 at r = {x} (need r < 1)")));
    }
    if terminates(&[a, b]) || x.abs() <= 0.5 {
        return pfq_series(&[a, b], &[cc], true, c(x));
    }
    if x < -0.5 {
        // Pfaff: F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1))
        let w = x / (x - 1.0);
        let pre = c(1.0 - x).powc(-a);
        let (v, e) = if w <= 0.5 || terminates(&[a, cc - b]) {
            pfq_series(&[a, cc - b], &[cc], true, c(w))?
        } else {
            connection(a, cc - b, cc, 1.0 - w)?
        };
        return Ok((v * pre, e * pre.norm()));
    }
    connection(a, b, cc, 1.0 - x)
}

/// `2F~1(a, b; c; 1 - s)` for `s > 0`, accurate when `s` is too small for
/// `1 - s` to be represented.
pub fn hyp_2f1_reg_complement(a: Complex64, b: Complex64, cc: Complex64, s: f64) -> Result<EvalResult> {
    if !(s > 0.0) {
        return Err(Error::Region(format!("2F1 at 1 - s, s = {s} (need s > 0)")));
    }
    let (v, e) = if s >= 0.5 || terminates(&[a, b]) {
        f21_reg(a, b, cc, 1.0 - s)?
    } else {
        connection(a, b, cc, s)?
    };
    Ok(EvalResult::new(v, e, Route::Series))
}

/// `1 - z` connection for `1/2 < z < 1`, in regularized form; takes
/// `w = 1 - z`.
fn connection(a: Complex64, b: Complex64, cc: Complex64, z: f64) -> Result<(Complex64, f64)> {
    let s = cc - a - b;
    let near_int = s.im.abs() < 1e-9 && (s.re - s.re.round()).abs() < 1e-9;
    if !near_int {
        return connection_raw(a, b, cc, z);
    }
    // F~ is entire in c: average c +- eps, then Richardson in eps^2
    let sym = |eps: f64| -> Result<(Complex64, f64)> {
        let (p, ep) = connection_raw(a, b, cc + eps, z)?;
        let (m, em) = connection_raw(a, b, cc - eps, z)?;
        Ok(((p + m) * 0.5, 0.5 * (ep + em)))
    };
    richardson_even(sym, PERTURB_EPS, 4)
}

fn connection_raw(a: Complex64, b: Complex64, cc: Complex64, w: f64) -> Result<(Complex64, f64)> {
    let s = cc - a - b;
    let (f1, e1) = pfq_series(&[a, b], &[1.0 - s], true, c(w))?;
    let (f2, e2) = pfq_series(&[cc - a, cc - b], &[1.0 + s], true, c(w))?;
    let k1 = rgamma(cc - a) * rgamma(cc - b);
    let k2 = c(w).powc(s) * rgamma(a) * rgamma(b);
    let pre = PI / sinpi(s);
    let v = pre * (f1 * k1 - f2 * k2);
    let err = pre.norm() * (e1 * k1.norm() + e2 * k2.norm())
        + 4.0 * f64::EPSILON * pre.norm() * ((f1 * k1).norm() + (f2 * k2).norm());
    Ok((v, err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Param;

    fn real_series(upper: &[f64], lower: &[f64], reg: bool, z: f64) -> f64 {
        let u: Vec<Complex64> = upper.iter().map(|x| c(*x)).collect();
        let l: Vec<Complex64> = lower.iter().map(|x| c(*x)).collect();
        pfq_series(&u, &l, reg, c(z)).unwrap().0.re
    }

    #[test]
    fn elementary_values() {
        assert!((real_series(&[1.0, 1.0], &[2.0], false, 0.5) - 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((real_series(&[], &[], false, 1.3) - 1.3f64.exp()).abs() < 1e-14);
        let cos2 = real_series(&[], &[0.5], true, -1.0);
        assert!((cos2 - 2f64.cos() / PI.sqrt()).abs() < 1e-15);
        assert_eq!(real_series(&[2.0], &[3.0, 4.0], false, 0.0), 1.0);
        let reg0 = real_series(&[2.0], &[0.5], true, 0.0);
        assert!((reg0 - 1.0 / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn regularized_at_lower_poles() {
        // 1F~1(a; -1; z) = z^2 a (a+1) 1F~1(a+2; 3; z) ... check via limit
        let a = 0.7;
        let z = 0.4;
        let got = real_series(&[a], &[-1.0], true, z);
        let want = z * z * a * (a + 1.0) * real_series(&[a + 2.0], &[3.0], true, z);
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn divergence_and_poles() {
        assert!(matches!(
            pfq_series(&[c(1.0), c(1.0)], &[c(2.0)], false, c(1.0)),
            Err(Error::DivergentSeries(_))
        ));
        assert!(matches!(
            pfq_series(&[c(1.0)], &[c(-2.0)], false, c(0.1)),
            Err(Error::Pole(_))
        ));
        // terminating series is fine anywhere
        let v = pfq_series(&[c(-2.0), c(1.0)], &[c(1.0)], false, c(3.0)).unwrap().0;
        assert!((v.re - (1.0 - 2.0 * 3.0 + 9.0)).abs() < 1e-12);
    }

    #[test]
    fn gauss_regions() {
        // 2F1(1,1;2;x) = -ln(1-x)/x
        for x in [-5.0, -0.9, -0.3, 0.3, 0.7, 0.95, 0.999] {
            let v = hyp_2f1(c(1.0), c(1.0), c(2.0), x).unwrap();
            let want = -(1.0 - x).ln() / x;
            assert!((v.value.re - want).abs() < 1e-10 * want.abs(), "x={x}: {} vs {want}", v.value.re);
        }
        // 2F1(1/2, 1; 3/2; -x^2) = atan(x)/x
        for x in [0.5f64, 1.0, 3.0] {
            let v = hyp_2f1(c(0.5), c(1.0), c(1.5), -x * x).unwrap();
            assert!((v.value.re - x.atan() / x).abs() < 1e-12);
        }
        // non-integer c - a - b: 2F1(a,b;c;x) against z^... Euler transform identity
        let (a, b, cc, x) = (0.3, 1.7, 2.2, 0.8);
        let lhs = hyp_2f1(c(a), c(b), c(cc), x).unwrap().value.re;
        let rhs = (1.0 - x).powf(cc - a - b) * hyp_2f1(c(cc - a), c(cc - b), c(cc), x).unwrap().value.re;
        assert!((lhs - rhs).abs() < 1e-11 * lhs.abs());
        assert!(matches!(hyp_2f1(c(1.0), c(1.0), c(2.0), 1.0), Err(Error::Region(_))));
        assert_eq!(hyp_2f1(c(0.3), c(0.4), c(0.5), 0.0).unwrap().value.re, 1.0);
    }

    #[test]
    fn truncating_upper_zero() {
        // 2F~1(rho + delta/2, 0; c | r) = 1/Gamma(c)
        let v = hyp_2f1_reg(c(1.2), c(0.0), c(0.9), 0.8).unwrap().value.re;
        assert!((v - rgamma(c(0.9)).re).abs() < 1e-15);
    }

    #[test]
    fn hyp_spec_entry_point() {
        let h = HypSpec::new(vec![], vec![Param::rat(1, 2)], true).with_arg(Param::int(-1));
        let v = hyp_pfq(&h, c(1.0)).unwrap();
        assert!((v.value.re - 2f64.cos() / PI.sqrt()).abs() < 1e-15, "{}", v.value);
        let h = HypSpec::new(vec![Param::int(1), Param::int(1)], vec![Param::int(2)], false);
        assert!(matches!(hyp_pfq(&h, c(1.0)), Err(Error::DivergentSeries(_))));
        let v = hyp_pfq(&h, c(0.75)).unwrap();
        // integer c - a - b goes through the perturbed connection formula
        assert!((v.value.re - (-(0.25f64).ln() / 0.75)).abs() < 1e-13, "{} {}", v.value, v.est_abs_error);
    }

    #[test]
    fn binomial_series_near_one() {
        let h = HypSpec::new(vec![Param::rat(-1, 4)], vec![], false);
        for x in [0.3, 1.0 - 1e-9, 1.0 - 1e-14] {
            let v = hyp_pfq(&h, c(x)).unwrap().value.re;
            assert!((v - (1.0 - x).powf(0.25)).abs() < 1e-15, "{x}: {v}");
        }
        assert!(matches!(hyp_pfq(&h, c(1.5)), Err(Error::Region(_))));
        // hopeless partial sums are refused without summing them
        let slow = pfq_series(&[c(0.5), c(0.5)], &[c(1.5)], false, c(1.0 - 1e-12));
        assert!(matches!(slow, Err(Error::DivergentSeries(_))));
    }
}
