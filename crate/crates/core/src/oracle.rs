//! Brute-force quadrature of the Riesz potential and the fractional
//! Laplacian straight from their integral definitions.
//!
//! Everything is done in polar coordinates around the evaluation point:
//! for each direction of a half-sphere rule the radial integral is split at
//! the points where the line crosses a declared non-smooth sphere of `f`,
//! graded geometrically towards those crossings, handled near `t = 0` with a
//! Gauss–Jacobi rule carrying the kernel's power, and closed off by a tail
//! rule matched to the declared decay.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gfun::GSpec;
use crate::specfun::quadrature::{gauss_jacobi, gauss_legendre, sphere_rule};
use crate::specfun::{EvalResult, Route};
use crate::transform::{chi_dk, gamma_d, Operator, RadialHarmonicFn, TransformResult};

/// Tolerances and resolution of the oracle.
#[derive(Clone, Debug)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Bisection budget per radial integral.
    pub max_subdivisions: usize,
    /// Radius schedule of the inner disc around the evaluation point;
    /// only the first entry is used, [`QuadratureConfig::halved`] drops it.
    pub eps_inner: Vec<f64>,
    /// Circle points in d = 2; d = 3 uses `angular / 2` Gauss nodes times
    /// `angular` trapezoid nodes.
    pub angular: usize,
    /// Geometric panels towards each kink.
    pub grading_depth: usize,
    /// Relative tolerance used by [`compare`] to mark rows as passing.
    pub pass_tol: f64,
}

impl QuadratureConfig {
    /// Defaults for dimension `d`; `FRACLAP_QUAD_TOL` overrides `rel_tol`.
    pub fn for_dimension(d: u32) -> Self {
        let rel = match d {
            1 => 1e-6,
            2 => 1e-5,
            _ => 1e-4,
        };
        let rel = std::env::var("FRACLAP_QUAD_TOL")
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|v| *v >= 1e-12)
            .unwrap_or(rel);
        QuadratureConfig {
            rel_tol: rel,
            abs_tol: 1e-10,
            max_subdivisions: 400,
            eps_inner: (0..12).map(|k| 0.25 / 2f64.powi(k)).collect(),
            angular: 64,
            grading_depth: 48,
            pass_tol: 10.0 * rel,
        }
    }

    pub fn with_rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn with_pass_tol(mut self, tol: f64) -> Self {
        self.pass_tol = tol;
        self
    }

    /// The next radius in the excision schedule.
    pub fn halved(&self) -> Self {
        let mut c = self.clone();
        if c.eps_inner.len() > 1 {
            c.eps_inner.remove(0);
        } else {
            c.eps_inner[0] /= 2.0;
        }
        c
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 1e-12) {
            return Err(Error::Invalid(format!("rel_tol = {} (need >= 1e-12)", self.rel_tol)));
        }
        if self.eps_inner.is_empty()
            || self.eps_inner.iter().any(|e| !(*e > 0.0))
            || self.eps_inner.windows(2).any(|w| w[1] >= w[0])
        {
            return Err(Error::Invalid("eps_inner must be positive and strictly decreasing".into()));
        }
        if self.angular < 4 || self.angular % 4 != 0 {
            return Err(Error::Invalid("angular resolution must be a positive multiple of 4".into()));
        }
        Ok(())
    }

    fn inner(&self) -> f64 {
        self.eps_inner[0]
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::for_dimension(1)
    }
}

/// Behaviour of `f(y)` as `|y| -> inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    /// `f` vanishes for `|y - center| > R`.
    Compact(f64),
    /// `|f(y)| <= C |y|^{-p}`, with an expansion in `1/|y|`.
    Power(f64),
    /// Oscillation of the given period with amplitude `O(|y|^{-power})`.
    Oscillatory { period: f64, power: f64 },
}

type Func = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A function on `R^d` together with what the quadrature needs to know
/// about it: where it fails to be smooth and how it decays.
#[derive(Clone)]
pub struct PointwiseFn {
    func: Func,
    pub d: u32,
    /// Radii of spheres (around `center`) off which `f` is smooth; radius 0
    /// marks a point singularity.
    pub kinks: Vec<f64>,
    pub center: Vec<f64>,
    pub decay: Decay,
}

impl std::fmt::Debug for PointwiseFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointwiseFn")
            .field("d", &self.d)
            .field("kinks", &self.kinks)
            .field("center", &self.center)
            .field("decay", &self.decay)
            .finish()
    }
}

impl PointwiseFn {
    pub fn new(d: u32, decay: Decay, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        PointwiseFn {
            func: Arc::new(f),
            d,
            kinks: Vec::new(),
            center: vec![0.0; d as usize],
            decay,
        }
    }

    /// `x -> phi(|x|)`.
    pub fn radial(d: u32, decay: Decay, phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(d, decay, move |x| phi(x.iter().map(|v| v * v).sum::<f64>().sqrt()))
    }

    pub fn with_kinks(mut self, kinks: &[f64]) -> Self {
        self.kinks = kinks.to_vec();
        self
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }

    /// `x -> f(x - h)`.
    pub fn translated(&self, h: &[f64]) -> Self {
        let f = self.func.clone();
        let h = h.to_vec();
        let hh = h.clone();
        let mut out = Self::new(self.d, self.decay, move |x| {
            let y: Vec<f64> = x.iter().zip(&hh).map(|(a, b)| a - b).collect();
            f(&y)
        });
        out.kinks = self.kinks.clone();
        out.center = self.center.iter().zip(&h).map(|(a, b)| a + b).collect();
        out
    }

    /// `x -> f(c x)`, `c > 0`.
    pub fn dilated(&self, c: f64) -> Self {
        let f = self.func.clone();
        let decay = match self.decay {
            Decay::Compact(r) => Decay::Compact(r / c),
            Decay::Oscillatory { period, power } => Decay::Oscillatory { period: period / c, power },
            p => p,
        };
        let mut out = Self::new(self.d, decay, move |x| {
            let y: Vec<f64> = x.iter().map(|v| c * v).collect();
            f(&y)
        });
        out.kinks = self.kinks.iter().map(|r| r / c).collect();
        out.center = self.center.iter().map(|v| v / c).collect();
        out
    }

    /// Wraps a symbolic radial-times-harmonic function, reading kinks and
    /// decay off its Meijer G profile.
    pub fn from_radial_harmonic(f: &RadialHarmonicFn) -> Result<Self> {
        let (kinks, decay) = profile_geometry(&f.profile, f.l)?;
        let g = f.clone();
        let unit_sphere_singular = f.profile.p == f.profile.q;
        Ok(Self::new(f.d, decay, move |x| {
            let norm2: f64 = x.iter().map(|v| v * v).sum();
            if unit_sphere_singular && (norm2 - 1.0).abs() <= 4.0 * f64::EPSILON {
                // undefined on the sphere itself: average the one-sided limits
                let side = |s: f64| {
                    let y: Vec<f64> = x.iter().map(|v| v * s / norm2.sqrt()).collect();
                    g.eval(&y).map(|v| v.re()).unwrap_or(f64::NAN)
                };
                return 0.5 * (side(1.0 - 1e-12) + side(1.0 + 1e-12));
            }
            g.eval(x).map(|v| v.re()).unwrap_or(f64::NAN)
        })
        .with_kinks(&kinks))
    }

    fn sphere_radii(&self) -> Vec<f64> {
        let mut r = self.kinks.clone();
        if let Decay::Compact(rr) = self.decay {
            r.push(rr);
        }
        r
    }
}

fn profile_geometry(g: &GSpec, l: u32) -> Result<(Vec<f64>, Decay)> {
    let first_b: Vec<f64> = g.b[..g.m].iter().map(|p| p.re()).collect();
    let smooth_at_zero = first_b.iter().all(|b| *b >= 0.0 && b.fract() == 0.0);
    let mut kinks = if smooth_at_zero { vec![] } else { vec![0.0] };
    if g.p == g.q {
        if g.n == 0 {
            return Ok((kinks, Decay::Compact(1.0)));
        }
        // the only finite singular point is r = (-1)^{p-m-n}
        if (g.p + g.m + g.n) % 2 == 0 {
            kinks.push(1.0);
        }
    }
    if g.n > 0 {
        let a_max = g.a[..g.n].iter().map(|p| p.re()).fold(f64::NEG_INFINITY, f64::max);
        return Ok((kinks, Decay::Power(2.0 * (1.0 - a_max) - l as f64)));
    }
    if g.m == g.q && g.p < g.q {
        // exponential decay
        return Ok((kinks, Decay::Power(40.0)));
    }
    Err(Error::Invalid(
        "cannot infer the decay of this profile; build the PointwiseFn directly".into(),
    ))
}

// ---------------------------------------------------------------------------
// one-dimensional building blocks

fn gl_rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static GL10: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    static GL20: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    match n {
        10 => GL10.get_or_init(|| gauss_legendre(10)),
        _ => GL20.get_or_init(|| gauss_legendre(20)),
    }
}

fn gl_apply(h: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gl_rule(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    half * x.iter().zip(w).map(|(x, w)| w * h(mid + half * x)).sum::<f64>()
}

struct Budget {
    left: usize,
    rel: f64,
    abs: f64,
}

/// Adaptive bisection with a 10/20-point Gauss–Legendre pair.
fn adapt(h: &dyn Fn(f64) -> f64, a: f64, b: f64, abs: f64, budget: &mut Budget) -> (f64, f64) {
    let i1 = gl_apply(h, a, b, 10);
    let i2 = gl_apply(h, a, b, 20);
    let e = (i2 - i1).abs();
    if e <= abs.max(budget.rel * i2.abs()) || budget.left == 0 || !e.is_finite() {
        return (i2, e);
    }
    budget.left -= 1;
    let m = 0.5 * (a + b);
    let (l, el) = adapt(h, a, m, 0.5 * abs, budget);
    let (r, er) = adapt(h, m, b, 0.5 * abs, budget);
    (l + r, el + er)
}

fn jacobi_rule(n: usize, e: f64) -> (Vec<f64>, Vec<f64>) {
    gauss_jacobi(n, 0.0, e)
}

/// `int_0^L t^e g(t) dt` with two Gauss–Jacobi orders.
fn jacobi_segment(g: &dyn Fn(f64) -> f64, len: f64, e: f64) -> (f64, f64) {
    let run = |n: usize| {
        let (x, w) = jacobi_rule(n, e);
        let k = (0.5 * len).powf(e + 1.0);
        k * x.iter().zip(&w).map(|(s, w)| w * g(0.5 * len * (1.0 + s))).sum::<f64>()
    };
    let hi = run(24);
    let lo = run(16);
    (hi, (hi - lo).abs())
}

// ---------------------------------------------------------------------------
// the radial integral along one direction

/// `h(t) = c0 f(x) + sum_j w_j f(x + s_j t theta)`, integrated against
/// `t^power` on `(0, inf)`; `h = O(t^zero_order)` at 0.
struct Scheme {
    c0: f64,
    terms: Vec<(f64, f64)>,
    power: f64,
    zero_order: i32,
    norm: f64,
}

impl Scheme {
    fn singular(d: u32, alpha: f64) -> Result<Self> {
        Ok(Scheme {
            c0: 1.0,
            terms: vec![(-0.5, 1.0), (-0.5, -1.0)],
            power: -1.0 - alpha,
            zero_order: 2,
            norm: 1.0 / gamma_d(d, -alpha)?.abs(),
        })
    }

    fn hypersingular(d: u32, alpha: f64, k: u32) -> Result<Self> {
        let chi = chi_dk(d, k, alpha)?;
        let mut binom = 1.0;
        let mut c0 = 0.0;
        let mut terms = Vec::new();
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let shift = k as f64 / 2.0 - j as f64;
            if shift == 0.0 {
                c0 = -sign * binom;
            } else {
                terms.push((-sign * binom, shift));
            }
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        let mut zero_order = 2;
        while zero_order as f64 <= alpha {
            zero_order += 2;
        }
        Ok(Scheme {
            c0,
            terms,
            power: -1.0 - alpha,
            zero_order,
            norm: 1.0 / chi,
        })
    }

    fn riesz(d: u32, alpha: f64) -> Result<Self> {
        Ok(Scheme {
            c0: 0.0,
            terms: vec![(0.5, 1.0), (0.5, -1.0)],
            power: alpha - 1.0,
            zero_order: 0,
            norm: 1.0 / gamma_d(d, alpha)?,
        })
    }
}

struct Line<'a> {
    f: &'a PointwiseFn,
    x: &'a [f64],
    dir: &'a [f64],
    scheme: &'a Scheme,
    fx: f64,
    cfg: &'a QuadratureConfig,
}

impl Line<'_> {
    fn var(&self, t: f64) -> f64 {
        let mut y = vec![0.0; self.x.len()];
        let mut s = 0.0;
        for (w, sh) in &self.scheme.terms {
            for i in 0..y.len() {
                y[i] = self.x[i] + sh * t * self.dir[i];
            }
            s += w * self.f.eval(&y);
        }
        s
    }

    fn h(&self, t: f64) -> f64 {
        self.scheme.c0 * self.fx + self.var(t)
    }

    /// Positive `t` at which `x + s t theta` meets a declared sphere.
    fn crossings(&self) -> Vec<f64> {
        let z: Vec<f64> = self.x.iter().zip(&self.f.center).map(|(a, c)| a - c).collect();
        let b: f64 = z.iter().zip(self.dir).map(|(a, t)| a * t).sum();
        let z2: f64 = z.iter().map(|v| v * v).sum();
        let mut out = Vec::new();
        for rho in self.f.sphere_radii() {
            let disc = b * b - (z2 - rho * rho);
            if disc < 0.0 {
                continue;
            }
            let sq = disc.sqrt();
            for (_, s) in &self.scheme.terms {
                for r in [-b - sq, -b + sq] {
                    let t = r / s;
                    if t > 1e-14 {
                        out.push(t);
                    }
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * b.abs().max(1.0));
        out
    }

    fn integrate(&self) -> Result<(f64, f64)> {
        let sc = self.scheme;
        let kinks = self.crossings();
        let first = kinks.first().copied().unwrap_or(f64::INFINITY);
        let t0 = self.cfg.inner().min(0.5 * first);
        let kernel = |t: f64| t.powf(sc.power);

        // inner segment
        let zo = sc.zero_order;
        let g0 = |t: f64| self.h(t) / t.powi(zo);
        let (mut total, mut err) = jacobi_segment(&g0, t0, sc.power + zo as f64);

        // end of the explicitly integrated range
        let last = kinks.last().copied().unwrap_or(t0);
        let tail_start = match self.f.decay {
            Decay::Compact(_) => last.max(t0),
            _ => (1.25 * last + 1.0).max(t0 + 1.0),
        };
        let mut points: Vec<(f64, bool)> = vec![(t0, false)];
        points.extend(kinks.iter().filter(|t| **t > t0 && **t <= tail_start).map(|t| (*t, true)));
        if points.last().map(|p| p.0 < tail_start).unwrap_or(true) {
            points.push((tail_start, false));
        }

        let mut budget = Budget {
            left: self.cfg.max_subdivisions,
            rel: 1e-2 * self.cfg.rel_tol,
            abs: 1e-2 * self.cfg.abs_tol,
        };
        let integrand = |t: f64| kernel(t) * self.h(t);
        for w in points.windows(2) {
            let ((a, ka), (b, kb)) = (w[0], w[1]);
            for (p, q) in graded_panels(a, ka, b, kb, self.cfg.grading_depth) {
                let abs = budget.abs;
                let (v, e) = adapt(&integrand, p, q, abs, &mut budget);
                total += v;
                err += e;
            }
        }

        // tail: the constant part in closed form
        if sc.c0 != 0.0 {
            total += sc.c0 * self.fx * tail_start.powf(sc.power + 1.0) / (-(sc.power + 1.0));
        }
        match self.f.decay {
            Decay::Compact(_) => {}
            Decay::Power(p) => {
                let e = p - sc.power - 2.0;
                if !(e > -1.0) {
                    return Err(Error::NotIntegrable(format!(
                        "decay exponent {p} too small for kernel power {}",
                        sc.power
                    )));
                }
                let tt = tail_start;
                let g = |u: f64| tt.powf(sc.power + 1.0) * self.var(tt / u) * u.powf(-p);
                let (v, e) = jacobi_segment(&g, 1.0, e);
                total += v;
                err += e;
            }
            Decay::Oscillatory { period, power } => {
                if !(power - sc.power > 1.0) && !(sc.power < 0.0) {
                    return Err(Error::SlowDecay(format!("oscillatory amplitude |y|^-{power}")));
                }
                let (v, e) = self.oscillatory_tail(tail_start, period, &mut budget);
                total += v;
                err += e;
            }
        }
        if !total.is_finite() {
            return Err(Error::QuadratureFailure("non-finite radial integral".into()));
        }
        Ok((total, err))
    }

    /// `int_T^inf t^power var(t) dt` for oscillating `var`: integrate over
    /// whole periods, then average the partial integral over one more
    /// period, which cancels the leading oscillating remainder.
    fn oscillatory_tail(&self, start: f64, period: f64, budget: &mut Budget) -> (f64, f64) {
        let f = |t: f64| t.powf(self.scheme.power) * self.var(t);
        let periods = 200usize;
        let mut sum = 0.0;
        let mut err = 0.0;
        let half = 0.5 * period;
        for k in 0..2 * periods {
            let a = start + k as f64 * half;
            let abs = budget.abs;
            let (v, e) = adapt(&f, a, a + half, abs, budget);
            sum += v;
            err += e;
        }
        let window = |t0: f64, budget: &mut Budget| -> f64 {
            let g = |t: f64| f(t) * (t0 + period - t) / period;
            let abs = budget.abs;
            adapt(&g, t0, t0 + half, abs, budget).0 + adapt(&g, t0 + half, t0 + period, abs, budget).0
        };
        let t2 = start + periods as f64 * period;
        let w1 = window(t2, budget);
        let abs = budget.abs;
        let full = adapt(&f, t2, t2 + half, abs, budget).0 + adapt(&f, t2 + half, t2 + period, abs, budget).0;
        let w2 = full + window(t2 + period, budget);
        (sum + w1, err + (w2 - w1).abs())
    }
}

/// Panels covering `[a, b]`, refined geometrically towards kinked ends.
fn graded_panels(a: f64, ka: bool, b: f64, kb: bool, depth: usize) -> Vec<(f64, f64)> {
    if !(b > a) {
        return vec![];
    }
    let mid = 0.5 * (a + b);
    let mut out = Vec::new();
    let toward = |from: f64, to: f64, out: &mut Vec<(f64, f64)>| {
        // points from, to - L/2, to - L/4, ..., to
        let len = to - from;
        let mut prev = from;
        for k in 1..=depth {
            let p = to - len / 2f64.powi(k as i32);
            if p == prev || (p - to).abs() <= 1e-14 * to.abs().max(1.0) {
                break;
            }
            out.push((prev, p));
            prev = p;
        }
        out.push((prev, to));
    };
    match (ka, kb) {
        (false, false) => out.push((a, b)),
        (false, true) => toward(a, b, &mut out),
        (true, false) => {
            let mut tmp = Vec::new();
            toward(b, a, &mut tmp);
            out.extend(tmp.into_iter().map(|(p, q)| (q, p)).rev());
        }
        (true, true) => {
            let mut tmp = Vec::new();
            toward(mid, a, &mut tmp);
            out.extend(tmp.into_iter().map(|(p, q)| (q, p)).rev());
            toward(mid, b, &mut out);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// angular assembly

/// Half of an antipodally symmetric sphere rule, weights doubled.
fn half_sphere(d: u32, angular: usize) -> Vec<(Vec<f64>, f64)> {
    match d {
        1 => vec![(vec![1.0], 2.0)],
        2 => sphere_rule(2, angular).into_iter().filter(|(p, _)| p[1] > 0.0).map(|(p, w)| (p, 2.0 * w)).collect(),
        _ => sphere_rule(3, angular / 2)
            .into_iter()
            .filter(|(p, _)| p[2] > 0.0)
            .map(|(p, w)| (p, 2.0 * w))
            .collect(),
    }
}

/// Directions from a point outside a ball of radius `a |z|` towards it,
/// `e` the unit vector to the centre. With `sin psi = a sin phi` the chord
/// length is smooth in `phi`, so the tangency cone costs nothing. Weights
/// are doubled as in [`half_sphere`]; directions missing the ball carry no
/// mass when `f(x) = 0`.
fn cap_rule(d: u32, e: &[f64], a: f64, angular: usize) -> Vec<(Vec<f64>, f64)> {
    let (gx, gw) = gauss_legendre(angular / 2);
    let mut out = Vec::new();
    match d {
        1 => out.push((e.to_vec(), 2.0)),
        2 => {
            let u = [-e[1], e[0]];
            for (x, w) in gx.iter().zip(&gw) {
                let phi = 0.5 * PI * x;
                let sp = a * phi.sin();
                let psi = sp.asin();
                let jac = a * phi.cos() / psi.cos() * 0.5 * PI;
                let dir = vec![psi.cos() * e[0] + sp * u[0], psi.cos() * e[1] + sp * u[1]];
                out.push((dir, 2.0 * w * jac));
            }
        }
        _ => {
            // orthonormal frame (e, u1, u2)
            let k = (0..3).min_by(|i, j| e[*i].abs().total_cmp(&e[*j].abs())).unwrap();
            let mut h = [0.0; 3];
            h[k] = 1.0;
            let dot: f64 = h.iter().zip(e).map(|(p, q)| p * q).sum();
            let mut u1: Vec<f64> = (0..3).map(|i| h[i] - dot * e[i]).collect();
            let n1 = u1.iter().map(|v| v * v).sum::<f64>().sqrt();
            u1.iter_mut().for_each(|v| *v /= n1);
            let u2 = [
                e[1] * u1[2] - e[2] * u1[1],
                e[2] * u1[0] - e[0] * u1[2],
                e[0] * u1[1] - e[1] * u1[0],
            ];
            let naz = angular;
            for (x, w) in gx.iter().zip(&gw) {
                // phi in [0, pi/2]
                let phi = 0.25 * PI * (x + 1.0);
                let sp = a * phi.sin();
                let psi = sp.asin();
                let jac = a * phi.cos() / psi.cos() * 0.25 * PI;
                for k in 0..naz {
                    let az = 2.0 * PI * (k as f64 + 0.5) / naz as f64;
                    let (ca, sa) = (az.cos(), az.sin());
                    let dir: Vec<f64> = (0..3).map(|i| psi.cos() * e[i] + sp * (ca * u1[i] + sa * u2[i])).collect();
                    out.push((dir, 2.0 * w * jac * sp * 2.0 * PI / naz as f64));
                }
            }
        }
    }
    out
}

fn assemble(f: &PointwiseFn, x: &[f64], scheme: &Scheme, cfg: &QuadratureConfig) -> Result<EvalResult> {
    cfg.validate()?;
    let d = f.d;
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if x.len() != d as usize {
        return Err(Error::Invalid(format!("point has {} coordinates, expected {d}", x.len())));
    }
    let z2: f64 = x.iter().zip(&f.center).map(|(a, c)| (a - c) * (a - c)).sum();
    let zn = z2.sqrt();
    if f.sphere_radii().iter().any(|r| (zn - r).abs() <= 1e-12 * r.max(1.0)) {
        return Err(Error::NonSmoothAtPoint);
    }
    let fx = f.eval(x);
    let cap = match f.decay {
        Decay::Compact(r) if d > 1 && zn > r && fx == 0.0 => {
            let e: Vec<f64> = f.center.iter().zip(x).map(|(c, a)| (c - a) / zn).collect();
            Some((e, r / zn))
        }
        _ => None,
    };
    let rule = |n: usize| match &cap {
        Some((e, a)) => cap_rule(d, e, *a, n),
        None => half_sphere(d, n),
    };
    let radial = |rule: &[(Vec<f64>, f64)]| -> Result<(f64, f64)> {
        let parts: Vec<Result<(f64, f64)>> = rule
            .par_iter()
            .map(|(dir, w)| {
                let line = Line {
                    f,
                    x,
                    dir,
                    scheme,
                    fx,
                    cfg,
                };
                line.integrate().map(|(v, e)| (w * v, w * e))
            })
            .collect();
        let mut s = 0.0;
        let mut e = 0.0;
        for p in parts {
            let (v, ev) = p?;
            s += v;
            e += ev;
        }
        Ok((s, e))
    };
    let (v, mut e) = radial(&rule(cfg.angular))?;
    if d > 1 {
        let (vc, _) = radial(&rule(cfg.angular / 2))?;
        e += (v - vc).abs();
    }
    // panels are accepted at 1e-2 rel_tol; never claim better than that
    e += 1e-2 * cfg.rel_tol * v.abs();
    let value = scheme.norm * v;
    if !value.is_finite() {
        return Err(Error::QuadratureFailure(format!("non-finite value at {x:?}")));
    }
    Ok(EvalResult::new(Complex64::new(value, 0.0), scheme.norm.abs() * e, Route::Quadrature))
}

/// `(-Delta)^{alpha/2} f(x)` for `0 < alpha < 2` from the symmetrized
/// second-difference integral.
pub fn fraclap_singular(f: &PointwiseFn, x: &[f64], alpha: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Invalid(format!("need 0 < alpha < 2, got {alpha}")));
    }
    assemble(f, x, &Scheme::singular(f.d, alpha)?, cfg)
}

/// `(-Delta)^{alpha/2} f(x)` from the hypersingular integral with centered
/// differences of even order `k > alpha`.
pub fn fraclap_hypersingular(
    f: &PointwiseFn,
    x: &[f64],
    alpha: f64,
    k: u32,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    assemble(f, x, &Scheme::hypersingular(f.d, alpha, k)?, cfg)
}

/// Riesz potential `(1/gamma_d(alpha)) int f(x - y) |y|^{alpha - d} dy`,
/// `0 < alpha < d`.
pub fn riesz_quadrature(f: &PointwiseFn, x: &[f64], alpha: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(alpha > 0.0 && alpha < f.d as f64) {
        return Err(Error::Invalid(format!("need 0 < alpha < d, got {alpha}")));
    }
    assemble(f, x, &Scheme::riesz(f.d, alpha)?, cfg)
}

/// Chebyshev interpolant on `[lo, hi]` (first-kind nodes, barycentric form).
#[derive(Clone, Debug)]
pub struct Chebyshev {
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Chebyshev {
    pub fn nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|j| {
                let th = PI * (2 * j + 1) as f64 / (2 * n) as f64;
                0.5 * (lo + hi) + 0.5 * (hi - lo) * th.cos()
            })
            .collect()
    }

    pub fn fit(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> Result<f64> + Sync) -> Result<Self> {
        let nodes = Self::nodes(lo, hi, n);
        let values = nodes.par_iter().map(|t| f(*t)).collect::<Result<Vec<f64>>>()?;
        Ok(Chebyshev { lo, hi, nodes, values })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.nodes.len();
        let (mut num, mut den) = (0.0, 0.0);
        for j in 0..n {
            let diff = t - self.nodes[j];
            if diff == 0.0 {
                return self.values[j];
            }
            let th = PI * (2 * j + 1) as f64 / (2 * n) as f64;
            let w = if j % 2 == 0 { th.sin() } else { -th.sin() } / diff;
            num += w * self.values[j];
            den += w;
        }
        num / den
    }
}

/// `I_{alpha2}(I_{alpha1} f)(x)` for a radial `f` supported in the ball of
/// radius `R`: the inner potential is tabulated along a ray (Chebyshev in
/// `s` on `[0, R]` and in `R/s` beyond, after scaling out `s^{alpha1 - d}`)
/// and fed to a second quadrature.
pub fn nested_riesz(
    f: &PointwiseFn,
    alpha1: f64,
    alpha2: f64,
    points: &[Vec<f64>],
    nodes: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<EvalResult>> {
    let d = f.d as f64;
    let r = match f.decay {
        Decay::Compact(r) => r,
        _ => return Err(Error::Invalid("nested_riesz needs a compactly supported radial f".into())),
    };
    if !(alpha1 + alpha2 < d) {
        return Err(Error::Invalid(format!("need alpha1 + alpha2 < d, got {}", alpha1 + alpha2)));
    }
    let ray = |s: f64| {
        let mut p = vec![0.0; f.d as usize];
        p[0] = s;
        p
    };
    let inner_cfg = QuadratureConfig {
        rel_tol: 0.1 * cfg.rel_tol,
        ..cfg.clone()
    };
    let near = Chebyshev::fit(0.0, r, nodes, |s| Ok(riesz_quadrature(f, &ray(s), alpha1, &inner_cfg)?.re()))?;
    let far = Chebyshev::fit(0.0, 1.0, nodes, |u| {
        let s = r / u;
        Ok(s.powf(d - alpha1) * riesz_quadrature(f, &ray(s), alpha1, &inner_cfg)?.re())
    })?;
    let g = PointwiseFn::radial(f.d, Decay::Power(d - alpha1), move |s| {
        if s <= r {
            near.eval(s)
        } else {
            far.eval(r / s) * s.powf(alpha1 - d)
        }
    })
    .with_kinks(&[r]);
    points.iter().map(|x| riesz_quadrature(&g, x, alpha2, cfg)).collect()
}

// ---------------------------------------------------------------------------
// reports

/// Which integral definition the oracle evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOp {
    Singular,
    Hypersingular(u32),
    Riesz,
}

impl OracleOp {
    /// The natural oracle for a symbolic result.
    pub fn for_result(r: &TransformResult) -> Self {
        match r.operator {
            Operator::RieszPotential => OracleOp::Riesz,
            _ => {
                let a = r.alpha.re();
                if a < 2.0 {
                    OracleOp::Singular
                } else {
                    let mut k = 2;
                    while k as f64 <= a {
                        k += 2;
                    }
                    OracleOp::Hypersingular(k)
                }
            }
        }
    }

    pub fn eval(&self, f: &PointwiseFn, x: &[f64], alpha: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
        match self {
            OracleOp::Singular => fraclap_singular(f, x, alpha, cfg),
            OracleOp::Hypersingular(k) => fraclap_hypersingular(f, x, alpha, *k, cfg),
            OracleOp::Riesz => riesz_quadrature(f, x, alpha, cfg),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    OutsideValidity,
    Error(String),
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
            Status::OutsideValidity => f.write_str("outside validity"),
            Status::Error(e) => write!(f, "error: {e}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub point: Vec<f64>,
    pub symbolic: f64,
    pub oracle: f64,
    pub oracle_err: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub tol: f64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Pass)
    }

    /// Re-marks evaluated rows: pass iff `abs_err <= max(abs, rel |symbolic|)`.
    pub fn judge(&mut self, abs: f64, rel: f64) {
        for r in &mut self.rows {
            if matches!(r.status, Status::Pass | Status::Fail) {
                r.status = if r.abs_err <= abs.max(rel * r.symbolic.abs()) {
                    Status::Pass
                } else {
                    Status::Fail
                };
            }
        }
    }

    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("point,symbolic,oracle,abs_err,rel_err,pass\n");
        for r in &self.rows {
            let p: Vec<String> = r.point.iter().map(|v| format!("{v}")).collect();
            let _ = writeln!(
                s,
                "{},{:.12e},{:.12e},{:.3e},{:.3e},{}",
                p.join(" "),
                r.symbolic,
                r.oracle,
                r.abs_err,
                r.rel_err,
                r.status
            );
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tol": self.tol,
            "rows": self.rows.iter().map(|r| json!({
                "point": r.point,
                "symbolic": r.symbolic,
                "oracle": r.oracle,
                "oracle_err": r.oracle_err,
                "abs_err": r.abs_err,
                "rel_err": r.rel_err,
                "pass": r.status.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn row(x: &[f64], sym: f64, inside: bool, oracle: Result<EvalResult>, cfg: &QuadratureConfig) -> ReportRow {
    let mut row = ReportRow {
        point: x.to_vec(),
        symbolic: sym,
        oracle: f64::NAN,
        oracle_err: f64::NAN,
        abs_err: f64::NAN,
        rel_err: f64::NAN,
        status: Status::OutsideValidity,
    };
    if !inside {
        return row;
    }
    match oracle {
        Ok(v) => {
            row.oracle = v.re();
            row.oracle_err = v.est_abs_error;
            row.abs_err = (row.oracle - sym).abs();
            row.rel_err = row.abs_err / sym.abs();
            row.status = if row.abs_err <= cfg.abs_tol.max(cfg.pass_tol * sym.abs()) {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        Err(e) => row.status = Status::Error(e.to_string()),
    }
    row
}

/// A report from oracle values computed elsewhere (e.g. [`nested_riesz`]).
pub fn report_from_values(
    points: &[Vec<f64>],
    expected: &[(f64, bool)],
    oracle: &[EvalResult],
    cfg: &QuadratureConfig,
) -> Report {
    let rows = points
        .iter()
        .zip(expected)
        .zip(oracle)
        .map(|((x, (sym, inside)), v)| row(x, *sym, *inside, Ok(*v), cfg))
        .collect();
    Report { rows, tol: cfg.pass_tol }
}

/// Compares a row of expected values with the oracle applied to `f`.
pub fn compare_values(
    f: &PointwiseFn,
    op: OracleOp,
    alpha: f64,
    points: &[Vec<f64>],
    expected: &[(f64, bool)],
    cfg: &QuadratureConfig,
) -> Report {
    let rows = points
        .iter()
        .zip(expected)
        .map(|(x, (sym, inside))| {
            let v = if *inside { op.eval(f, x, alpha, cfg) } else { Err(Error::Region("outside validity".into())) };
            row(x, *sym, *inside, v, cfg)
        })
        .collect();
    Report { rows, tol: cfg.pass_tol }
}

/// Evaluates a symbolic transform at `points` and checks it against the
/// oracle applied to its input. Points outside the result's validity domain
/// are reported as such, not evaluated.
pub fn compare(symbolic: &TransformResult, op: OracleOp, points: &[Vec<f64>], cfg: &QuadratureConfig) -> Report {
    let f = match PointwiseFn::from_radial_harmonic(&symbolic.input) {
        Ok(f) => f,
        Err(e) => {
            let rows = points
                .iter()
                .map(|p| ReportRow {
                    point: p.clone(),
                    symbolic: f64::NAN,
                    oracle: f64::NAN,
                    oracle_err: f64::NAN,
                    abs_err: f64::NAN,
                    rel_err: f64::NAN,
                    status: Status::Error(e.to_string()),
                })
                .collect();
            return Report { rows, tol: cfg.pass_tol };
        }
    };
    let expected: Vec<(f64, bool)> = points
        .iter()
        .map(|x| match symbolic.evaluate(x) {
            Ok(v) => (v.value.re(), v.inside),
            Err(_) => (f64::NAN, false),
        })
        .collect();
    compare_values(&f, op, symbolic.alpha.re().abs(), points, &expected, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::for_dimension(1)
    }

    fn cosine() -> PointwiseFn {
        PointwiseFn::new(1, Decay::Oscillatory { period: 2.0 * PI, power: 0.0 }, |x| x[0].cos())
    }

    fn cauchy() -> PointwiseFn {
        PointwiseFn::new(1, Decay::Power(2.0), |x| 1.0 / (1.0 + x[0] * x[0]))
    }

    fn getoor(d: u32, alpha: f64) -> PointwiseFn {
        PointwiseFn::radial(d, Decay::Compact(1.0), move |r| (1.0 - r * r).max(0.0).powf(alpha / 2.0))
    }

    #[test]
    fn spec_examples() {
        let v = fraclap_singular(&cosine(), &[0.3], 1.0, &cfg()).unwrap();
        assert!((v.re() - 0.3f64.cos()).abs() < 1e-6, "{}", v.re());
        let v = fraclap_singular(&getoor(1, 1.0), &[0.5], 1.0, &cfg()).unwrap();
        assert!((v.re() - 1.0).abs() < 1e-6, "{}", v.re());
        let v = fraclap_singular(&cauchy(), &[0.0], 1.0, &cfg()).unwrap();
        assert!((v.re() - 1.0).abs() < 1e-6, "{}", v.re());
        let v = fraclap_hypersingular(&cosine(), &[0.0], 1.0, 2, &cfg()).unwrap();
        assert!((v.re() - 1.0).abs() < 1e-6, "{}", v.re());
    }

    #[test]
    fn riesz_of_ball_indicator() {
        let f = PointwiseFn::radial(2, Decay::Compact(1.0), |r| if r < 1.0 { 1.0 } else { 0.0 });
        let v = riesz_quadrature(&f, &[0.0, 0.0], 1.0, &QuadratureConfig::for_dimension(2)).unwrap();
        assert!((v.re() - 1.0).abs() < 1e-8, "{}", v.re());
    }

    #[test]
    fn k_independence() {
        let f = cauchy();
        let a = fraclap_hypersingular(&f, &[0.7], 1.5, 2, &cfg()).unwrap();
        let b = fraclap_hypersingular(&f, &[0.7], 1.5, 4, &cfg()).unwrap();
        assert!((a.re() - b.re()).abs() < 1e-5f64.max(10.0 * (a.est_abs_error + b.est_abs_error)));
        let s = fraclap_singular(&f, &[0.7], 1.5, &cfg()).unwrap();
        assert!((s.re() - a.re()).abs() <= 1e-12 + s.est_abs_error + a.est_abs_error);
    }

    #[test]
    fn cosine_above_two() {
        for x in [0.0, 0.3, 1.0] {
            let v = fraclap_hypersingular(&cosine(), &[x], 2.5, 4, &cfg()).unwrap();
            assert!((v.re() - f64::cos(x)).abs() < 1e-5, "x={x}: {}", v.re());
        }
    }

    #[test]
    fn excision_radius_is_immaterial() {
        let f = getoor(1, 1.5);
        let a = fraclap_singular(&f, &[0.3], 1.5, &cfg()).unwrap();
        let b = fraclap_singular(&f, &[0.3], 1.5, &cfg().halved()).unwrap();
        assert!((a.re() - b.re()).abs() < a.est_abs_error.max(1e-12), "{} {}", a.re(), b.re());
    }

    #[test]
    fn translation_and_scaling() {
        let f = cauchy();
        let h = [0.4];
        let a = fraclap_singular(&f.translated(&h), &[0.9], 0.8, &cfg()).unwrap();
        let b = fraclap_singular(&f, &[0.5], 0.8, &cfg()).unwrap();
        assert!((a.re() - b.re()).abs() < 1e-6);
        let c = 1.7;
        let a = fraclap_singular(&f.dilated(c), &[0.3], 0.8, &cfg()).unwrap();
        let b = fraclap_singular(&f, &[0.3 * c], 0.8, &cfg()).unwrap();
        assert!((a.re() - c.powf(0.8) * b.re()).abs() < 1e-6);
    }

    #[test]
    fn kinks_at_the_point_are_rejected() {
        assert!(matches!(
            fraclap_singular(&getoor(1, 1.0), &[1.0], 1.0, &cfg()),
            Err(Error::NonSmoothAtPoint)
        ));
        let f = PointwiseFn::new(1, Decay::Power(0.5), |x| (1.0 + x[0].abs()).powf(-0.5));
        assert!(matches!(riesz_quadrature(&f, &[0.0], 0.7, &cfg()), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn symbolic_profiles() {
        use crate::gfun::{encode_power_kernel, Region};
        use crate::param::Param;
        use crate::transform::power_ball;
        // (1 + r^2)^{-1} is smooth at r = 1, (1 - r^2)_+^{1/4} is not
        let full = encode_power_kernel(Param::zero(), Param::int(-1), Region::Full).unwrap();
        let (kinks, decay) = profile_geometry(&full, 0).unwrap();
        assert!(kinks.is_empty() && decay == Decay::Power(2.0));
        let ball = encode_power_kernel(Param::zero(), Param::rat(1, 4), Region::Ball).unwrap();
        assert_eq!(profile_geometry(&ball, 0).unwrap().1, Decay::Compact(1.0));
        let f = PointwiseFn::from_radial_harmonic(&RadialHarmonicFn::radial(1, ball)).unwrap();
        assert!(f.eval(&[1.0]).abs() < 1e-2);
        assert!((f.eval(&[0.6]) - 0.64f64.powf(0.25)).abs() < 1e-14);
        let t = power_ball(Param::zero(), Param::rat(1, 4), 1, 0, Param::rat(1, 2), Region::Ball).unwrap();
        let r = compare(&t, OracleOp::for_result(&t), &[vec![0.3], vec![1.5]], &cfg());
        assert!(r.all_pass(), "{}", r.to_csv());
    }

    #[test]
    fn chebyshev_interpolates() {
        let c = Chebyshev::fit(0.0, 2.0, 30, |t| Ok((t * 1.3).sin())).unwrap();
        for t in [0.0, 0.37, 1.5, 2.0] {
            assert!((c.eval(t) - (t * 1.3).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn csv_layout() {
        let r = compare_values(&cauchy(), OracleOp::Singular, 1.0, &[vec![0.0], vec![3.0]], &[(1.0, true), (0.0, false)], &cfg());
        let csv = r.to_csv();
        assert!(csv.starts_with("point,symbolic,oracle,abs_err,rel_err,pass\n"));
        assert!(csv.lines().nth(1).unwrap().ends_with(",pass"));
        assert!(csv.lines().nth(2).unwrap().ends_with("outside validity"));
    }
}
