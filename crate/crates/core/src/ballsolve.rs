//! Spectral solver for `(-Delta)^{alpha/2}(w u) = g` in the unit ball with
//! zero exterior data, `w(x) = (1 - |x|^2)_+^{alpha/2}`.
//!
//! The basis is `P_{l,m,n}(x) = V_{l,m}(x) P_n^{(alpha/2, d/2+l-1)}(2|x|^2 - 1)`
//! with `V_{l,m}` surface-orthonormal solid harmonics; `w P_{l,m,n}` is an
//! eigenfunction with eigenvalue [`jacobi_eigenvalue`].

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::oracle::{Decay, PointwiseFn};
use crate::specfun::harmonic::{harmonic_basis, harmonic_dim, Poly};
use crate::specfun::jacobi::jacobi_poly;
use crate::specfun::quadrature::{gauss_jacobi, sphere_rule};
use crate::transform::jacobi_eigenvalue;

/// Tolerance on the change of any projection coefficient when the
/// quadrature is refined.
const PROJECTION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenIndex {
    pub l: u32,
    /// 1-based index into the harmonic basis of degree `l`.
    pub m: usize,
    pub n: usize,
    pub lambda: f64,
}

impl EigenIndex {
    pub fn new(d: u32, alpha: f64, l: u32, m: usize, n: usize) -> Result<Self> {
        let dim = harmonic_dim(d, l);
        if m == 0 || m > dim {
            return Err(Error::Invalid(format!("m = {m} outside 1..={dim} for d = {d}, l = {l}")));
        }
        Ok(EigenIndex {
            l,
            m,
            n,
            lambda: jacobi_eigenvalue(n, l, d, alpha),
        })
    }

    fn key(&self) -> (u32, usize, usize) {
        (self.l, self.m, self.n)
    }
}

/// All indices with `l <= lmax`, `n <= nmax`, ordered by `(l, m, n)`.
pub fn indices(d: u32, alpha: f64, lmax: u32, nmax: usize) -> Result<Vec<EigenIndex>> {
    let mut out = Vec::new();
    for l in 0..=lmax {
        for m in 1..=harmonic_dim(d, l) {
            for n in 0..=nmax {
                out.push(EigenIndex::new(d, alpha, l, m, n)?);
            }
        }
    }
    Ok(out)
}

fn check(d: u32, alpha: f64) -> Result<()> {
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Invalid(format!("need 0 < alpha < 2, got {alpha}")));
    }
    Ok(())
}

/// Harmonic polynomials per degree, built once per expansion.
#[derive(Clone, Debug)]
struct Harmonics(Vec<Vec<Poly>>);

impl Harmonics {
    fn new(d: u32, lmax: u32) -> Result<Self> {
        (0..=lmax).map(|l| harmonic_basis(d, l).map(|b| b.polys)).collect::<Result<_>>().map(Harmonics)
    }

    fn value(&self, d: u32, alpha: f64, idx: &EigenIndex, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let v = self.0[idx.l as usize][idx.m - 1].eval(x);
        let b = d as f64 / 2.0 + idx.l as f64 - 1.0;
        v * jacobi_poly(idx.n, alpha / 2.0, b, 2.0 * r2 - 1.0)
    }
}

/// `w(x) = (1 - |x|^2)_+^{alpha/2}`.
pub fn weight(x: &[f64], alpha: f64) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (1.0 - r2).max(0.0).powf(alpha / 2.0)
}

/// `P_{l,m,n}(x)`.
pub fn basis_fn(d: u32, alpha: f64, idx: &EigenIndex, x: &[f64]) -> Result<f64> {
    check(d, alpha)?;
    let h = harmonic_basis(d, idx.l)?;
    let v = h
        .polys
        .get(idx.m.wrapping_sub(1))
        .ok_or_else(|| Error::Invalid(format!("no harmonic m = {} for l = {}", idx.m, idx.l)))?;
    let r2: f64 = x.iter().map(|t| t * t).sum();
    let b = d as f64 / 2.0 + idx.l as f64 - 1.0;
    Ok(v.eval(x) * jacobi_poly(idx.n, alpha / 2.0, b, 2.0 * r2 - 1.0))
}

/// `w P_{l,m,n}` as an oracle input (zero outside the ball).
pub fn weighted_basis_fn(d: u32, alpha: f64, idx: &EigenIndex) -> Result<PointwiseFn> {
    check(d, alpha)?;
    let h = Harmonics::new(d, idx.l)?;
    let idx = *idx;
    Ok(PointwiseFn::new(d, Decay::Compact(1.0), move |x| {
        let w = weight(x, alpha);
        if w == 0.0 {
            0.0
        } else {
            w * h.value(d, alpha, &idx, x)
        }
    }))
}

/// Tensor rule on the ball for `int_B F(x) w(x) dx`: Gauss–Jacobi in
/// `t = 2r^2 - 1` (weight `(1-t)^{alpha/2} (1+t)^{d/2-1}`) times a sphere rule.
fn ball_rule(d: u32, alpha: f64, radial: usize, angular: usize) -> Vec<(Vec<f64>, f64)> {
    let (t, wt) = gauss_jacobi(radial, alpha / 2.0, d as f64 / 2.0 - 1.0);
    let k = 2f64.powf(-1.0 - (alpha + d as f64) / 2.0);
    let sphere = sphere_rule(d, angular);
    let mut out = Vec::with_capacity(t.len() * sphere.len());
    for (ti, wi) in t.iter().zip(&wt) {
        let r = ((1.0 + ti) / 2.0).sqrt();
        for (dir, ws) in &sphere {
            out.push((dir.iter().map(|c| r * c).collect(), k * wi * ws));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SpectralExpansion {
    pub d: u32,
    pub alpha: f64,
    pub lmax: u32,
    pub nmax: usize,
    pub terms: Vec<(EigenIndex, f64)>,
}

impl SpectralExpansion {
    pub fn zero(d: u32, alpha: f64, lmax: u32, nmax: usize) -> Self {
        SpectralExpansion {
            d,
            alpha,
            lmax,
            nmax,
            terms: Vec::new(),
        }
    }

    pub fn coeff(&self, l: u32, m: usize, n: usize) -> f64 {
        self.terms.iter().find(|(i, _)| i.key() == (l, m, n)).map(|t| t.1).unwrap_or(0.0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "alpha": self.alpha,
            "truncation": [self.lmax, self.nmax],
            "terms": self.terms.iter().map(|(i, c)| json!({
                "l": i.l, "m": i.m, "n": i.n, "coeff": c, "lambda": i.lambda,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |k: &str| Error::Invalid(format!("expansion JSON: missing or bad `{k}`"));
        let d = v["d"].as_u64().ok_or_else(|| bad("d"))? as u32;
        let alpha = v["alpha"].as_f64().ok_or_else(|| bad("alpha"))?;
        let mut e = SpectralExpansion::zero(d, alpha, 0, 0);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let l = t["l"].as_u64().ok_or_else(|| bad("l"))? as u32;
            let m = t["m"].as_u64().ok_or_else(|| bad("m"))? as usize;
            let n = t["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
            let c = t["coeff"].as_f64().ok_or_else(|| bad("coeff"))?;
            e.lmax = e.lmax.max(l);
            e.nmax = e.nmax.max(n);
            e.terms.push((EigenIndex::new(d, alpha, l, m, n)?, c));
        }
        if let Some(tr) = v["truncation"].as_array() {
            e.lmax = tr.first().and_then(Value::as_u64).map(|x| x as u32).unwrap_or(e.lmax);
            e.nmax = tr.get(1).and_then(Value::as_u64).map(|x| x as usize).unwrap_or(e.nmax);
        }
        Ok(e)
    }

    /// `w(x) sum_k c_k P_k(x)` as an oracle input.
    pub fn weighted_fn(&self) -> Result<PointwiseFn> {
        let e = self.clone();
        let h = Harmonics::new(self.d, self.lmax)?;
        Ok(PointwiseFn::new(self.d, Decay::Compact(1.0), move |x| {
            let w = weight(x, e.alpha);
            if w == 0.0 {
                0.0
            } else {
                w * e.terms.iter().map(|(i, c)| c * h.value(e.d, e.alpha, i, x)).sum::<f64>()
            }
        }))
    }
}

/// Coefficients of `g` in the basis `P_{l,m,n}` with respect to the weighted
/// inner product `<f, g>_w = int_B f g w`.
pub fn project(g: &PointwiseFn, d: u32, alpha: f64, lmax: u32, nmax: usize) -> Result<SpectralExpansion> {
    check(d, alpha)?;
    if g.d != d {
        return Err(Error::Invalid(format!("g lives in dimension {}, expected {d}", g.d)));
    }
    let h = Harmonics::new(d, lmax)?;
    let idx = indices(d, alpha, lmax, nmax)?;
    let radial = 2 * nmax + 8 + lmax as usize;
    let angular = (2 * lmax as usize + 8).max(16);
    let coarse = ball_rule(d, alpha, radial, angular);
    let fine = ball_rule(d, alpha, radial + 8, angular + 8);
    let gc: Vec<f64> = coarse.iter().map(|(x, _)| g.eval(x)).collect();
    let gf: Vec<f64> = fine.iter().map(|(x, _)| g.eval(x)).collect();
    let coeffs: Vec<(f64, f64)> = idx
        .par_iter()
        .map(|i| {
            let run = |rule: &[(Vec<f64>, f64)], gv: &[f64]| {
                let (mut num, mut den) = (0.0, 0.0);
                for ((x, w), gx) in rule.iter().zip(gv) {
                    let p = h.value(d, alpha, i, x);
                    num += w * gx * p;
                    den += w * p * p;
                }
                num / den
            };
            (run(&coarse, &gc), run(&fine, &gf))
        })
        .collect();
    let scale = coeffs.iter().map(|c| c.1.abs()).fold(1.0, f64::max);
    let worst = coeffs.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if !(worst <= PROJECTION_TOL * scale) {
        return Err(Error::QuadratureFailure(format!(
            "projection coefficients change by {worst:.2e} under refinement"
        )));
    }
    let terms = idx.into_iter().zip(coeffs).map(|(i, c)| (i, c.1)).collect();
    Ok(SpectralExpansion {
        d,
        alpha,
        lmax,
        nmax,
        terms,
    })
}

/// Coefficients of `u` with `(-Delta)^{alpha/2}(w u) = g` in the truncated
/// basis: `u_k = c_k / lambda_k`.
pub fn solve(g: &PointwiseFn, d: u32, alpha: f64, lmax: u32, nmax: usize) -> Result<SpectralExpansion> {
    let mut e = project(g, d, alpha, lmax, nmax)?;
    divide_by_eigenvalues(&mut e);
    Ok(e)
}

pub fn divide_by_eigenvalues(e: &mut SpectralExpansion) {
    for (i, c) in e.terms.iter_mut() {
        *c /= i.lambda;
    }
}

/// `sum_k c_k P_k(x)`, times `w(x)` if `weighted`.
pub fn evaluate_solution(e: &SpectralExpansion, x: &[f64], weighted: bool) -> Result<f64> {
    if e.terms.is_empty() {
        return Ok(0.0);
    }
    let lmax = e.terms.iter().map(|t| t.0.l).max().unwrap_or(0);
    let h = Harmonics::new(e.d, lmax)?;
    let s: f64 = e.terms.iter().map(|(i, c)| c * h.value(e.d, e.alpha, i, x)).sum();
    Ok(if weighted { s * weight(x, e.alpha) } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{fraclap_singular, QuadratureConfig};

    fn basis_as_fn(d: u32, alpha: f64, l: u32, m: usize, n: usize) -> PointwiseFn {
        let i = EigenIndex::new(d, alpha, l, m, n).unwrap();
        PointwiseFn::new(d, Decay::Power(0.0), move |x| basis_fn(d, alpha, &i, x).unwrap())
    }

    #[test]
    fn basis_values() {
        let i = EigenIndex::new(1, 1.0, 0, 1, 1).unwrap();
        let v = basis_fn(1, 1.0, &i, &[0.0]).unwrap();
        assert!((v - (-0.5) / 2f64.sqrt()).abs() < 1e-15);
        let i = EigenIndex::new(1, 1.0, 0, 1, 0).unwrap();
        assert!((basis_fn(1, 1.0, &i, &[0.3]).unwrap() - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!(EigenIndex::new(1, 1.0, 2, 1, 0).is_err());
        assert!((EigenIndex::new(1, 1.0, 0, 1, 1).unwrap().lambda - 3.0).abs() < 1e-14);
    }

    #[test]
    fn orthogonality() {
        for d in 1..=3 {
            let alpha = 0.7;
            let h = Harmonics::new(d, 2).unwrap();
            let idx = indices(d, alpha, 2, 8).unwrap();
            let rule = ball_rule(d, alpha, 2 * 8 + 10, 16);
            for (a, i) in idx.iter().enumerate() {
                let pi: Vec<f64> = rule.iter().map(|(x, _)| h.value(d, alpha, i, x)).collect();
                let nii: f64 = rule.iter().zip(&pi).map(|((_, w), p)| w * p * p).sum();
                for j in &idx[a + 1..] {
                    let nij: f64 = rule.iter().zip(&pi).map(|((x, w), p)| w * p * h.value(d, alpha, j, x)).sum();
                    assert!(nij.abs() < 1e-10 * nii, "d={d} {i:?} {j:?}: {nij}");
                }
            }
        }
    }

    #[test]
    fn projection_of_basis_function() {
        let e = project(&basis_as_fn(1, 1.0, 0, 1, 2), 1, 1.0, 2, 16).unwrap();
        for (i, c) in &e.terms {
            let want = if i.key() == (0, 1, 2) { 1.0 } else { 0.0 };
            assert!((c - want).abs() < 1e-10, "{i:?}: {c}");
        }
        let one = PointwiseFn::new(2, Decay::Power(0.0), |_| 1.0);
        let e = project(&one, 2, 0.5, 2, 6).unwrap();
        assert!(e.terms.iter().filter(|t| t.0.l > 0).all(|t| t.1.abs() < 1e-10));
        let odd = PointwiseFn::new(2, Decay::Power(0.0), |x| x[0] * (1.0 + x[1] * x[1]));
        let e = project(&odd, 2, 0.5, 2, 6).unwrap();
        assert!(e.terms.iter().filter(|t| t.0.l % 2 == 0).all(|t| t.1.abs() < 1e-10));
    }

    #[test]
    fn solve_eigenpair_and_round_trip() {
        let i = EigenIndex::new(1, 1.0, 0, 1, 1).unwrap();
        let g = PointwiseFn::new(1, Decay::Power(0.0), move |x| i.lambda * basis_fn(1, 1.0, &i, x).unwrap());
        let u = solve(&g, 1, 1.0, 2, 16).unwrap();
        for (j, c) in &u.terms {
            let want = if j.key() == (0, 1, 1) { 1.0 } else { 0.0 };
            assert!((c - want).abs() < 1e-10);
        }
        let e = project(&basis_as_fn(1, 1.0, 0, 1, 3), 1, 1.0, 1, 8).unwrap();
        let i3 = EigenIndex::new(1, 1.0, 0, 1, 3).unwrap();
        let v = evaluate_solution(&e, &[0.25], false).unwrap();
        assert!((v - basis_fn(1, 1.0, &i3, &[0.25]).unwrap()).abs() < 1e-10);
        assert_eq!(evaluate_solution(&SpectralExpansion::zero(1, 1.0, 2, 4), &[0.1], true).unwrap(), 0.0);
        let back = SpectralExpansion::from_json(&e.to_json()).unwrap();
        assert_eq!(back.terms.len(), e.terms.len());
        assert_eq!(back.to_json(), e.to_json());
    }

    #[test]
    fn eigen_relation_spot_check() {
        let cfg = QuadratureConfig::for_dimension(1);
        let i = EigenIndex::new(1, 1.5, 1, 1, 2).unwrap();
        let f = weighted_basis_fn(1, 1.5, &i).unwrap();
        for x in [-0.7, 0.2, 0.55] {
            let v = fraclap_singular(&f, &[x], 1.5, &cfg).unwrap().re();
            let want = i.lambda * basis_fn(1, 1.5, &i, &[x]).unwrap();
            assert!((v - want).abs() < 1e-5 * want.abs().max(1.0), "x={x}: {v} vs {want}");
        }
    }
}
