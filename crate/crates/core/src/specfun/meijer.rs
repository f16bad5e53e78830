//! Numerical Meijer G-function: hypergeometric-series route and an
//! independent inverse-Mellin contour route.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gfun::{classify, ensure_valid, invert_argument, to_hyp_expansion, ConditionClass, GSpec};
use crate::param::Param;
use crate::specfun::gamma::ln_gamma;
use crate::specfun::hyp::hyp_pfq;
use crate::specfun::{richardson_even, EvalResult, Route};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Series route: expansion into regularized `pFq` terms, after inverting
/// the argument when `p > q` (or `p = q`, `r > 1`). Integer-spaced
/// `b`-clusters are split by a balanced perturbation and extrapolated.
pub fn meijer_g_series(g: &GSpec, r: f64) -> Result<EvalResult> {
    g.require_closed()?;
    ensure_valid(g)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Region(format!("r = {r} (need r > 0)")));
    }
    if g.coeff.vanishes() {
        return Ok(EvalResult::new(c(0.0), 0.0, Route::Series));
    }
    if g.p == g.q && r == 1.0 {
        let rep = classify(g)?;
        let nu = rep.nu.f64();
        if rep.class == Some(ConditionClass::B) && nu <= 1.0 {
            return Err(Error::UndefinedAtOne(nu));
        }
        return Err(Error::Region(
            "r = 1 lies on the circle of convergence; use the contour route".into(),
        ));
    }
    let (h, x) = if g.p > g.q || (g.p == g.q && r > 1.0) {
        (invert_argument(g), 1.0 / r)
    } else {
        (g.clone(), r)
    };
    let clusters = integer_clusters(h.b_first());
    if clusters.iter().all(|cl| cl.len() < 2) {
        return expansion_value(&h, x).map(|(v, e)| EvalResult::new(v, e, Route::Series));
    }
    let kmax = clusters.iter().map(Vec::len).max().unwrap_or(1);
    let eps = match kmax {
        2 => 0.02,
        3 => 0.05,
        _ => 0.1,
    };
    let sym = |e: f64| -> Result<(Complex64, f64)> {
        let (p, ep) = expansion_value(&perturbed(&h, &clusters, e), x)?;
        let (m, em) = expansion_value(&perturbed(&h, &clusters, -e), x)?;
        Ok(((p + m) * 0.5, 0.5 * (ep + em)))
    };
    let (v, e) = richardson_even(sym, eps, 4)?;
    Ok(EvalResult::new(v, e, Route::PerturbedSeries))
}

/// Groups indices of `b` whose pairwise differences are integers.
fn integer_clusters(b: &[Param]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, bi) in b.iter().enumerate() {
        match out.iter_mut().find(|cl| b[cl[0]].integer_offset(bi).is_some()) {
            Some(cl) => cl.push(i),
            None => out.push(vec![i]),
        }
    }
    out
}

fn perturbed(g: &GSpec, clusters: &[Vec<usize>], eps: f64) -> GSpec {
    let mut h = g.clone();
    for cl in clusters.iter().filter(|cl| cl.len() > 1) {
        let mid = (cl.len() - 1) as f64 / 2.0;
        for (k, &i) in cl.iter().enumerate() {
            let shift = eps * (k as f64 - mid);
            h.b[i] = Param::complex(g.b[i].c64() + shift);
        }
    }
    h
}

fn expansion_value(g: &GSpec, x: f64) -> Result<(Complex64, f64)> {
    let terms = to_hyp_expansion(g)?;
    let mut sum = c(0.0);
    let mut err = 0.0;
    let mut mag = 0.0;
    for t in &terms {
        let pw = c(x).powc(t.power.c64());
        let v = hyp_pfq(&t.hyp, c(x))?;
        let term = v.value * pw;
        sum += term;
        mag += term.norm();
        err += v.est_abs_error * pw.norm();
    }
    Ok((sum, err + 4.0 * f64::EPSILON * mag))
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Path {
    Vertical,
    Left,
    Right,
}

fn choose_path(g: &GSpec, class: ConditionClass, r: f64) -> Path {
    if !g.all_real() {
        return Path::Vertical;
    }
    match class {
        ConditionClass::A => Path::Vertical,
        ConditionClass::B if r < 1.0 => Path::Left,
        ConditionClass::B if r > 1.0 => Path::Right,
        ConditionClass::B => Path::Vertical,
        ConditionClass::C => Path::Left,
        ConditionClass::D => Path::Right,
    }
}

/// Open interval of admissible `lambda` for evaluating `g` at `r`.
///
/// On a vertical line this is `(lambda_under, lambda_over)`. When the route
/// bends the line into a hyperbola (real parameters; classes C and D, or
/// class B with `r != 1`) the decay no longer depends on `nu`, and only pole separation
/// `(-b_under, 1 - a_bar)` is required.
pub fn admissible_strip(g: &GSpec, r: f64) -> Result<(f64, f64)> {
    let rep = classify(g)?;
    let class = rep
        .class
        .ok_or_else(|| Error::NoAdmissibleContour("p+q > 2m+2n".into()))?;
    Ok(match choose_path(g, class, r) {
        Path::Vertical => (rep.lambda_under.f64(), rep.lambda_over.f64()),
        _ => (-rep.b_under.f64(), 1.0 - rep.a_bar.f64()),
    })
}

/// Midpoint of an open interval, or a point at distance 1/2 from its finite
/// end.
pub fn default_lambda(lo: f64, hi: f64) -> Option<f64> {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) if lo < hi => Some(0.5 * (lo + hi)),
        (true, true) => None,
        (true, false) => Some(lo + 0.5),
        (false, true) => Some(hi - 0.5),
        (false, false) => Some(0.0),
    }
}

fn ln_kernel(g: &GSpec, s: Complex64) -> Option<Complex64> {
    let mut acc = c(0.0);
    for bj in g.b_first() {
        acc += ln_gamma(bj.c64() + s).ok()?;
    }
    for aj in g.a_first() {
        acc += ln_gamma(1.0 - aj.c64() - s).ok()?;
    }
    for bj in g.b_second() {
        acc -= ln_gamma(1.0 - bj.c64() - s).ok()?;
    }
    for aj in g.a_second() {
        acc -= ln_gamma(aj.c64() + s).ok()?;
    }
    Some(acc)
}

const MAX_STEPS: usize = 4_000_000;

/// Contour route: `(1/2 pi i) int G(s) r^{-s} ds` through `Re s = lambda`.
///
/// With real parameters and `r != 1`, classes B, C and D bend the line into
/// a hyperbola opening towards the side where the kernel decays; class A and
/// complex parameters use the straight line. Trapezoid rule throughout.
pub fn meijer_g_contour(g: &GSpec, r: f64, lambda: f64) -> Result<EvalResult> {
    g.require_closed()?;
    ensure_valid(g)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Region(format!("r = {r} (need r > 0)")));
    }
    let rep = classify(g)?;
    let class = rep
        .class
        .ok_or_else(|| Error::NoAdmissibleContour("p+q > 2m+2n".into()))?;
    let (lo, hi) = admissible_strip(g, r)?;
    if !(lo < hi) {
        return Err(Error::NoAdmissibleContour(format!("empty strip ({lo}, {hi})")));
    }
    if !(lambda > lo && lambda < hi) {
        return Err(Error::NoAdmissibleContour(format!(
            "lambda = {lambda} outside ({lo}, {hi})"
        )));
    }
    let coeff = g.coeff.value()?;
    if coeff == c(0.0) {
        return Ok(EvalResult::new(c(0.0), 0.0, Route::Contour));
    }
    let ln_r = r.ln();
    let path = choose_path(g, class, r);
    // polynomial decay exponent on the vertical line
    let mu = rep.nu.f64() + (g.p as f64 - g.q as f64) * (lambda - 0.5);
    let poly_decay = path == Path::Vertical && class != ConditionClass::A;
    if poly_decay && mu <= 1.0 {
        return Err(Error::SlowDecay(format!(
            "class {class} on a vertical line needs decay exponent > 1, got {mu}"
        )));
    }

    // distance from lambda to the nearest pole
    let mut dist = f64::INFINITY;
    for bj in g.b_first() {
        let p = -bj.c64();
        dist = dist.min((Complex64::new(lambda, 0.0) - p).norm());
    }
    for aj in g.a_first() {
        let p = 1.0 - aj.c64();
        dist = dist.min((Complex64::new(lambda, 0.0) - p).norm());
    }
    let h = 0.05_f64
        .min(1.0 / (4.0 * (1.0 + ln_r.abs())))
        .min(0.2 * dist);
    let kappa = 1.0;
    let point = |t: f64| -> (Complex64, Complex64) {
        match path {
            Path::Vertical => (Complex64::new(lambda, t), Complex64::new(0.0, 1.0)),
            Path::Left | Path::Right => {
                let sgn = if path == Path::Left { -1.0 } else { 1.0 };
                let q = (1.0 + t * t).sqrt();
                (
                    Complex64::new(lambda + sgn * kappa * (q - 1.0), t),
                    Complex64::new(sgn * kappa * t / q, 1.0),
                )
            }
        }
    };
    let integrand = |t: f64| -> Complex64 {
        let (s, ds) = point(t);
        match ln_kernel(g, s) {
            Some(l) => (l - s * ln_r).exp() * ds,
            None => c(0.0),
        }
    };

    let f0 = integrand(0.0);
    let mut sum_h = f0;
    let mut sum_2h = f0;
    let mut abs_sum = f0.norm();
    let mut peak = f0.norm();
    let mut tail_est = 0.0;
    for sgn in [1.0, -1.0] {
        let mut small = 0;
        let mut k = 1usize;
        loop {
            if k > MAX_STEPS {
                return Err(Error::SlowDecay(format!(
                    "integrand still {:.3e} at |t| = {:.3e}",
                    integrand(sgn * k as f64 * h).norm(),
                    k as f64 * h
                )));
            }
            let t = sgn * k as f64 * h;
            let v = integrand(t);
            let vn = v.norm();
            sum_h += v;
            if k % 2 == 0 {
                sum_2h += v;
            }
            abs_sum += vn;
            peak = peak.max(vn);
            let scale = peak.max(sum_h.norm() * h);
            let done = if poly_decay {
                let tail = vn * t.abs() / (mu - 1.0);
                if tail < 1e-12 * scale.max(1e-300) && k > 40 {
                    tail_est += tail;
                    true
                } else {
                    false
                }
            } else if vn <= 1e-17 * scale || vn < 1e-300 {
                small += 1;
                small >= 20 && k > 40
            } else {
                small = 0;
                false
            };
            if done {
                break;
            }
            k += 1;
        }
    }
    let norm = coeff / Complex64::new(0.0, 2.0 * PI);
    let v_h = sum_h * h;
    let v_2h = sum_2h * 2.0 * h;
    let diff = (v_h - v_2h).norm();
    let disc = diff.min(diff * diff / v_h.norm().max(1e-300));
    let round = 8.0 * f64::EPSILON * abs_sum * h;
    let est = (disc + round + tail_est) * norm.norm();
    Ok(EvalResult::new(v_h * norm, est, Route::Contour))
}

/// Evaluates `g` at `r`, choosing the series route when it is accurate and
/// falling back to the contour route otherwise.
pub fn meijer_g(g: &GSpec, r: f64) -> Result<EvalResult> {
    let series = meijer_g_series(g, r);
    if let Ok(s) = &series {
        if s.est_abs_error <= 1e-10 * s.value.norm().max(1.0) {
            return series;
        }
    }
    let contour = admissible_strip(g, r).and_then(|(lo, hi)| match default_lambda(lo, hi) {
        Some(l) => meijer_g_contour(g, r, l),
        None => Err(Error::NoAdmissibleContour(format!("empty strip ({lo}, {hi})"))),
    });
    match (series, contour) {
        (Ok(s), Ok(k)) => Ok(if k.est_abs_error < s.est_abs_error { k } else { s }),
        (Ok(s), Err(_)) => Ok(s),
        (Err(_), Ok(k)) => Ok(k),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Limit of `g(r)` as `r -> 0+`.
///
/// Finite when the first `b` block has minimal real part `0`, attained by a
/// single parameter (simple pole of the kernel at `s = 0`), or when every
/// first-block parameter has positive real part (the limit is then `0`).
pub fn meijer_g_at_zero(g: &GSpec) -> Result<EvalResult> {
    g.require_closed()?;
    ensure_valid(g)?;
    let zero = EvalResult::new(c(0.0), 0.0, Route::Series);
    if g.coeff.vanishes() {
        return Ok(zero);
    }
    if g.m == 0 {
        if g.p == g.q {
            // supported in r >= 1
            return Ok(zero);
        }
        return Err(Error::Region("r = 0 for a G-function with m = 0".into()));
    }
    let tol = crate::param::FLOAT_TOL;
    let b1 = g.b_first();
    let min = b1.iter().map(|b| b.re()).fold(f64::INFINITY, f64::min);
    if min > tol {
        return Ok(zero);
    }
    let at_zero: Vec<usize> = (0..b1.len()).filter(|&j| b1[j].re().abs() <= tol).collect();
    let simple = min >= -tol && at_zero.len() == 1 && b1[at_zero[0]].c64().im.abs() <= tol;
    if !simple {
        return Err(Error::Region("G-function is unbounded or oscillates as r -> 0".into()));
    }
    // residue of the kernel at s = 0, with Gamma(b_k + s) removed
    let k = at_zero[0];
    let mut v = g.coeff.value()?;
    for (j, b) in b1.iter().enumerate() {
        if j != k {
            v *= crate::specfun::gamma::gamma(b.c64())?;
        }
    }
    for a in g.a_first() {
        v *= crate::specfun::gamma::gamma(c(1.0) - a.c64())?;
    }
    for b in g.b_second() {
        v *= crate::specfun::gamma::rgamma(c(1.0) - b.c64());
    }
    for a in g.a_second() {
        v *= crate::specfun::gamma::rgamma(a.c64());
    }
    Ok(EvalResult::new(v, 8.0 * f64::EPSILON * v.norm(), Route::Series))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfun::Coeff;
    use crate::specfun::gamma::gamma_real;

    fn p(n: i64, d: i64) -> Param {
        Param::rat(n, d)
    }

    fn getoor() -> GSpec {
        GSpec::from_blocks(vec![], vec![p(3, 2)], vec![p(0, 1)], vec![], Coeff::one())
    }

    #[test]
    fn series_examples() {
        let v = meijer_g_series(&getoor(), 0.25).unwrap();
        let want = 0.75f64.sqrt() / gamma_real(1.5).unwrap();
        assert!((v.value.re - want).abs() < 1e-14, "{}", v.value.re);
        let g = GSpec::from_blocks(vec![p(0, 1)], vec![p(1, 1)], vec![p(0, 1)], vec![p(1, 2)], Coeff::one());
        let v = meijer_g_series(&g, 0.5).unwrap();
        assert!((v.value.re - 1.0 / PI.sqrt()).abs() < 1e-14);
        let comp = GSpec::from_blocks(vec![p(3, 2)], vec![], vec![], vec![p(0, 1)], Coeff::one());
        assert_eq!(meijer_g_series(&comp, 0.4).unwrap().value.re, 0.0);
        // outside the ball the Getoor profile vanishes
        assert!(meijer_g_series(&getoor(), 2.0).unwrap().value.norm() < 1e-15);
    }

    #[test]
    fn value_at_zero() {
        // (1 - r)^{1/2} / Gamma(3/2) -> 1 / Gamma(3/2)
        let v = meijer_g_at_zero(&getoor()).unwrap();
        assert!((v.value.re - 1.0 / gamma_real(1.5).unwrap()).abs() < 1e-15);
        let g = GSpec::from_blocks(vec![p(0, 1)], vec![p(1, 1)], vec![p(0, 1)], vec![p(1, 2)], Coeff::one());
        let small = meijer_g_series(&g, 1e-12).unwrap().value.re;
        assert!((meijer_g_at_zero(&g).unwrap().value.re - small).abs() < 1e-10);
        let shifted = crate::gfun::shift_power(&g, p(1, 2));
        assert_eq!(meijer_g_at_zero(&shifted).unwrap().value.re, 0.0);
        let neg = crate::gfun::shift_power(&g, p(-1, 2));
        assert!(meijer_g_at_zero(&neg).is_err());
    }

    #[test]
    fn undefined_at_one() {
        let g = GSpec::from_blocks(vec![p(0, 1)], vec![p(1, 1)], vec![p(0, 1)], vec![p(1, 2)], Coeff::one());
        assert!(matches!(meijer_g_series(&g, 1.0), Err(Error::UndefinedAtOne(_))));
    }

    #[test]
    fn contour_examples() {
        let s = meijer_g_series(&getoor(), 0.25).unwrap().value.re;
        let k = meijer_g_contour(&getoor(), 0.25, 0.4).unwrap();
        assert!((s - k.value.re).abs() < 1e-9, "{s} vs {}", k.value.re);
        let cos = GSpec::from_blocks(vec![], vec![], vec![p(0, 1)], vec![p(1, 2)], Coeff::scalar(c(PI.sqrt())));
        let k = meijer_g_contour(&cos, 1.0, 0.25).unwrap();
        assert!((k.value.re - 2f64.cos()).abs() < 1e-10, "{}", k.value.re);
        assert!(k.value.im.abs() < 1e-12);
        assert!(matches!(
            meijer_g_contour(&getoor(), 0.25, -0.5),
            Err(Error::NoAdmissibleContour(_))
        ));
    }

    #[test]
    fn perturbed_series_matches_contour() {
        // b-first block (0, 1): integer spaced
        let g = GSpec::from_blocks(vec![], vec![p(5, 2), p(7, 3)], vec![p(0, 1), p(1, 1)], vec![], Coeff::one());
        for r in [0.3, 0.8] {
            let s = meijer_g_series(&g, r).unwrap();
            assert_eq!(s.route, Route::PerturbedSeries);
            let k = meijer_g_contour(&g, r, 0.5).unwrap();
            assert!((s.value - k.value).norm() < 1e-9, "r={r}: {} vs {}", s.value, k.value);
        }
    }

    #[test]
    fn inverted_region() {
        let g = GSpec::from_blocks(vec![p(0, 1)], vec![p(1, 1)], vec![p(0, 1)], vec![p(1, 2)], Coeff::one());
        for r in [1.5, 3.0] {
            let s = meijer_g_series(&g, r).unwrap();
            let k = meijer_g_contour(&g, r, 0.5).unwrap();
            assert!((s.value - k.value).norm() < 1e-9, "r={r}: {} vs {}", s.value, k.value);
        }
    }
}
