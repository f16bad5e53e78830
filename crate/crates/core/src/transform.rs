//! Riesz potentials and fractional Laplacians as exact parameter maps.
//!
//! A function `f(x) = V(x) * phi(|x|^2)` with `V` a solid harmonic of degree
//! `l` and `phi` a Meijer G-function is mapped to another function of the
//! same form. Only `delta = d + 2l` enters the parameter rows.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gfun::{
    classify, encode_power_kernel, ensure_valid, reduce, Coeff, ConditionClass, ConditionReport, GSpec,
    HypSpec, Region,
};
use crate::param::{rat, Ext, Num, Param, Rat, FLOAT_TOL};
use crate::specfun::gamma::{gamma, gamma_real, ln_gamma, rgamma, rgamma_real};
use crate::specfun::harmonic::{harmonic_basis, Poly};
use crate::specfun::hyp::{hyp_2f1_reg, hyp_2f1_reg_complement, hyp_pfq};
use crate::specfun::meijer::{meijer_g, meijer_g_at_zero};
use crate::specfun::{EvalResult, Route};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `V(x) * phi(|x|^2)` in `R^d`, `phi` given as a G-function profile.
#[derive(Clone, Debug)]
pub struct RadialHarmonicFn {
    pub d: u32,
    pub l: u32,
    pub harmonic: Poly,
    pub profile: GSpec,
}

/// The harmonic factor used when none is given: `1` for `l = 0`, otherwise
/// the first element of the orthonormal basis.
pub fn default_harmonic(d: u32, l: u32) -> Result<Poly> {
    if l == 0 {
        return Ok(Poly::constant(d, 1.0));
    }
    let b = harmonic_basis(d, l)?;
    b.polys
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid(format!("no solid harmonics of degree {l} in dimension {d}")))
}

impl RadialHarmonicFn {
    /// Radial function `phi(|x|^2)`.
    pub fn radial(d: u32, profile: GSpec) -> Self {
        RadialHarmonicFn {
            d,
            l: 0,
            harmonic: Poly::constant(d, 1.0),
            profile,
        }
    }

    /// Checks that `harmonic` is homogeneous of degree `l` and harmonic.
    pub fn new(d: u32, l: u32, harmonic: Poly, profile: GSpec) -> Result<Self> {
        if !harmonic.is_homogeneous(l) {
            return Err(Error::Invalid(format!("harmonic factor is not homogeneous of degree {l}")));
        }
        if harmonic.laplacian().max_abs_coeff() > 1e-12 * harmonic.max_abs_coeff().max(1.0) {
            return Err(Error::Invalid("harmonic factor has nonzero Laplacian".into()));
        }
        if d < 3 && harmonic.terms.keys().any(|e| e[d as usize..].iter().any(|&k| k > 0)) {
            return Err(Error::Invalid(format!("harmonic factor uses more than {d} variables")));
        }
        Ok(RadialHarmonicFn {
            d,
            l,
            harmonic,
            profile,
        })
    }

    /// Uses [`default_harmonic`].
    pub fn with_degree(d: u32, l: u32, profile: GSpec) -> Result<Self> {
        let v = default_harmonic(d, l)?;
        Ok(RadialHarmonicFn {
            d,
            l,
            harmonic: v,
            profile,
        })
    }

    pub fn delta(&self) -> u32 {
        self.d + 2 * self.l
    }

    /// `phi(r)`, including the limit at `r = 0`.
    pub fn profile_at(&self, r: f64) -> Result<EvalResult> {
        if r == 0.0 {
            meijer_g_at_zero(&self.profile)
        } else {
            meijer_g(&self.profile, r)
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<EvalResult> {
        let r: f64 = x.iter().map(|v| v * v).sum();
        let v = self.harmonic.eval(x);
        if r == 0.0 && self.l > 0 {
            // V vanishes to order l; the product tends to 0 when
            // |x|^l phi(|x|^2) does
            if profile_order_at_zero(&self.profile, self.l)? {
                return Ok(EvalResult::new(c(0.0), 0.0, Route::Series));
            }
            return Err(Error::Region("unbounded at x = 0".into()));
        }
        Ok(self.profile_at(r)?.scaled(c(v)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "l": self.l,
            "harmonic": self.harmonic.terms.iter().map(|(e, c)| json!([e[0], e[1], e[2], c])).collect::<Vec<_>>(),
            "profile": self.profile.to_json(),
        })
    }
}

/// Whether `|x|^l phi(|x|^2) -> 0` (strictly) as `x -> 0`.
fn profile_order_at_zero(g: &GSpec, l: u32) -> Result<bool> {
    if g.coeff.vanishes() || (g.m == 0 && g.p == g.q) {
        return Ok(true);
    }
    if g.m == 0 {
        return Ok(false);
    }
    let lmin = g.b_first().iter().map(|b| b.re_num()).fold(None, |acc: Option<Num>, b| match acc {
        Some(a) if !b.lt(&a) => Some(a),
        _ => Some(b),
    });
    let t = Num::int(2) * lmin.unwrap_or(Num::int(0)) + Num::int(l as i64);
    Ok(t.gt(&Num::int(0)))
}

/// Whether `V(x) phi(|x|^2)` is continuous at `x = 0`.
fn continuous_at_origin(g: &GSpec, l: u32) -> bool {
    if profile_order_at_zero(g, l).unwrap_or(false) {
        return true;
    }
    l == 0 && g.m > 0 && meijer_g_at_zero(g).is_ok()
}

/// Which operator a [`TransformResult`] applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    FractionalLaplacian,
    RieszPotential,
    Identity,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::FractionalLaplacian => "fractional-laplacian",
            Operator::RieszPotential => "riesz-potential",
            Operator::Identity => "identity",
        })
    }
}

/// Where an identity holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Everywhere,
    Ball,
    Complement,
}

/// Domain on which a transform identity is asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validity {
    pub support: Support,
    pub origin: bool,
    pub unit_sphere: bool,
}

impl Validity {
    pub fn everywhere() -> Self {
        Validity {
            support: Support::Everywhere,
            origin: true,
            unit_sphere: true,
        }
    }

    /// Membership of a point with norm `norm`.
    pub fn contains(&self, norm: f64) -> bool {
        if norm == 0.0 && !self.origin {
            return false;
        }
        if norm == 1.0 && !self.unit_sphere {
            return false;
        }
        match self.support {
            Support::Everywhere => true,
            Support::Ball => norm < 1.0 || (norm == 1.0 && self.unit_sphere),
            Support::Complement => norm > 1.0 || (norm == 1.0 && self.unit_sphere),
        }
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<&str> = Vec::new();
        match self.support {
            Support::Everywhere => {
                if !self.origin {
                    parts.push("x != 0");
                }
                if !self.unit_sphere {
                    parts.push("|x| != 1");
                }
                if parts.is_empty() {
                    return f.write_str("all x");
                }
            }
            Support::Ball => {
                parts.push(match (self.origin, self.unit_sphere) {
                    (true, false) => "|x| < 1",
                    (false, false) => "0 < |x| < 1",
                    (true, true) => "|x| <= 1",
                    (false, true) => "0 < |x| <= 1",
                });
            }
            Support::Complement => parts.push(if self.unit_sphere { "|x| >= 1" } else { "|x| > 1" }),
        }
        f.write_str(&parts.join(", "))
    }
}

/// A value together with a flag telling whether the point lies in the
/// validity domain of the identity that produced it.
#[derive(Clone, Copy, Debug)]
pub struct Flagged {
    pub value: EvalResult,
    pub inside: bool,
}

/// Output of a transform, with the domain on which it is asserted.
#[derive(Clone, Debug)]
pub struct TransformResult {
    pub operator: Operator,
    pub alpha: Param,
    pub input: RadialHarmonicFn,
    /// Output profile before [`reduce`].
    pub unreduced: GSpec,
    pub output: RadialHarmonicFn,
    pub validity: Validity,
    /// Condition class of the input profile that authorized the identity.
    pub class: Option<ConditionClass>,
}

impl TransformResult {
    /// Evaluates the output at `x`. Points outside [`Validity`] are
    /// evaluated anyway and flagged; if evaluation fails there, the value is
    /// NaN.
    pub fn evaluate(&self, x: &[f64]) -> Result<Flagged> {
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let inside = self.validity.contains(norm);
        match self.output.eval(x) {
            Ok(value) => Ok(Flagged { value, inside }),
            Err(_) if !inside => Ok(Flagged {
                value: EvalResult::new(c(f64::NAN), f64::NAN, Route::Series),
                inside,
            }),
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "operator": self.operator.to_string(),
            "alpha": self.alpha.to_string(),
            "d": self.input.d,
            "l": self.input.l,
            "delta": self.input.delta(),
            "input": self.input.profile.to_json(),
            "unreduced": self.unreduced.to_json(),
            "output": self.output.profile.to_json(),
            "validity": self.validity.to_string(),
            "class": self.class.map(|c| c.to_string()),
        })
    }
}

// ---------------------------------------------------------------------------
// constants and multipliers

/// Normalizing constant of the Riesz kernel,
/// `2^alpha pi^{d/2} Gamma(alpha/2) / Gamma((d - alpha)/2)`.
pub fn gamma_d(d: u32, alpha: f64) -> Result<f64> {
    let dh = d as f64 / 2.0;
    let g1 = gamma_real(alpha / 2.0)?;
    let g2 = gamma_real(dh - alpha / 2.0)?;
    Ok(2f64.powf(alpha) * PI.powf(dh) * g1 / g2)
}

fn centered_sum(k: u32, alpha: f64) -> f64 {
    let mut binom = 1.0;
    let mut s = 0.0;
    for j in 0..=k {
        let w = (k as f64 / 2.0 - j as f64).abs();
        if w > 0.0 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom * w.powf(alpha);
        }
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    s
}

/// Normalizing constant of the hypersingular integral with centered
/// differences of even order `k`,
/// `-gamma_d(-alpha) * sum_j (-1)^j C(k, j) |k/2 - j|^alpha`.
pub fn chi_dk(d: u32, k: u32, alpha: f64) -> Result<f64> {
    if k % 2 != 0 || !(alpha > 0.0 && alpha < k as f64) {
        return Err(Error::Invalid(format!("need even k > alpha > 0, got k = {k}, alpha = {alpha}")));
    }
    let at = |a: f64| -> Result<f64> { Ok(-gamma_d(d, -a)? * centered_sum(k, a)) };
    if (alpha / 2.0).fract() == 0.0 {
        // removable singularity: pole of gamma_d(-alpha) times a zero of the sum
        let h = 1e-7;
        return Ok(0.5 * (at(alpha - h)? + at(alpha + h)?));
    }
    at(alpha)
}

/// Mellin multiplier of the Riesz potential,
/// `Gamma(s) Gamma((delta - alpha)/2 - s) / (2^alpha Gamma(alpha/2 + s) Gamma(delta/2 - s))`.
pub fn mellin_multiplier(s: Complex64, alpha: f64, delta: f64) -> Result<Complex64> {
    if alpha == 0.0 {
        return Ok(c(1.0));
    }
    let den = rgamma(s + alpha / 2.0) * rgamma(c(delta / 2.0) - s);
    if den == c(0.0) {
        return Ok(den);
    }
    let num = gamma(s)? * gamma(c((delta - alpha) / 2.0) - s)?;
    Ok(num * den * 2f64.powf(-alpha))
}

/// `2^alpha Gamma(1 + alpha/2 + n) Gamma((delta + alpha)/2 + n) / (n! Gamma(delta/2 + n))`
/// with `delta = d + 2l`.
pub fn jacobi_eigenvalue(n: usize, l: u32, d: u32, alpha: f64) -> f64 {
    let nf = n as f64;
    let delta = (d + 2 * l) as f64;
    let ln = |x: f64| ln_gamma(c(x)).map(|v| v.re).unwrap_or(f64::NAN);
    if n < 20 {
        let v = gamma_real(1.0 + alpha / 2.0 + nf).unwrap_or(f64::NAN)
            * gamma_real((delta + alpha) / 2.0 + nf).unwrap_or(f64::NAN)
            * rgamma_real(nf + 1.0)
            * rgamma_real(delta / 2.0 + nf);
        return 2f64.powf(alpha) * v;
    }
    (alpha * 2f64.ln() + ln(1.0 + alpha / 2.0 + nf) + ln((delta + alpha) / 2.0 + nf)
        - ln(nf + 1.0)
        - ln(delta / 2.0 + nf))
        .exp()
}

/// The eigenvalue as a symbolic coefficient, with rational parts folded
/// into the scalar.
pub fn jacobi_eigenvalue_exact(n: usize, l: u32, d: u32, alpha: Param) -> Coeff {
    let n_p = Param::int(n as i64);
    let half_delta = Param::from_rat(rat(d as i64 + 2 * l as i64, 2));
    Coeff::power(Rat::from_integer(2), alpha)
        .times(&Coeff::gamma(Param::one() + alpha.half() + n_p))
        .times(&Coeff::gamma(half_delta + alpha.half() + n_p))
        .times(&Coeff::inv_gamma(n_p + 1))
        .times(&Coeff::inv_gamma(half_delta + n_p))
        .simplified()
}

/// `(-Delta)^{alpha/2} (1 - |x|^2)_+^{alpha/2}` inside the ball.
pub fn getoor_constant(d: u32, alpha: f64) -> f64 {
    jacobi_eigenvalue(0, 0, d, alpha)
}

// ---------------------------------------------------------------------------
// the theorems

/// Applies the parameter rows of the operator to `g` (no condition checks,
/// no reduction). `Identity` returns `g` unchanged.
pub fn apply_rows(g: &GSpec, alpha: Param, delta: u32, op: Operator) -> GSpec {
    let shift = match op {
        Operator::Identity => return g.clone(),
        Operator::FractionalLaplacian => -alpha.half(),
        Operator::RieszPotential => alpha.half(),
    };
    let one_minus_half_delta = Param::one() - Param::from_rat(rat(delta as i64, 2));
    let mut a1 = vec![one_minus_half_delta + shift];
    a1.extend(g.a_first().iter().map(|a| *a + shift));
    let mut a2: Vec<Param> = g.a_second().iter().map(|a| *a + shift).collect();
    a2.push(shift);
    let mut b1 = vec![Param::zero()];
    b1.extend(g.b_first().iter().map(|b| *b + shift));
    let mut b2: Vec<Param> = g.b_second().iter().map(|b| *b + shift).collect();
    b2.push(one_minus_half_delta);
    let coeff = g.coeff.times(&Coeff::power(Rat::from_integer(2), shift.scale(Rat::from_integer(-2))));
    GSpec::from_blocks(a1, a2, b1, b2, coeff)
}

fn alpha_num(alpha: &Param) -> Result<Num> {
    alpha.require_closed()?;
    if !alpha.is_real() {
        return Err(Error::Invalid(format!("alpha = {alpha} must be real")));
    }
    Ok(alpha.re_num())
}

fn num_is_zero(x: &Num) -> bool {
    match x {
        Num::Exact(r) => r.is_zero(),
        Num::Float(v) => v.abs() <= FLOAT_TOL,
    }
}

fn violation(what: &str, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Error {
    Error::ConditionViolation(format!("{what} (lhs = {lhs}, rhs = {rhs})"))
}

/// Checks the hypotheses of the Riesz/fractional-Laplacian theorems for
/// `f` and the operator's order `alpha > 0`.
fn check_theorem(f: &RadialHarmonicFn, alpha: Num, op: Operator) -> Result<ConditionReport> {
    ensure_valid(&f.profile)?;
    let rep = classify(&f.profile)?;
    let class = rep
        .class
        .ok_or_else(|| Error::ConditionViolation("p+q <= 2(m+n) (condition class)".into()))?;
    let l = Num::int(f.l as i64);
    let d = Num::int(f.d as i64);
    let two = Num::int(2);
    let zero = Num::int(0);
    let (upper_rhs, upper_name) = match op {
        Operator::RieszPotential => {
            if !alpha.gt(&zero) || !alpha.lt(&d) {
                return Err(violation("0 < alpha < d", alpha, d));
            }
            (alpha + l, "alpha + l")
        }
        _ => (-alpha + l, "-alpha + l"),
    };
    let (over, under) = if class == ConditionClass::A {
        ("2(1 - a_bar)", "-2 b_under")
    } else {
        ("2 lambda_over", "2 lambda_under")
    };
    let two_over = rep.lambda_over.scale_pos(two);
    if !two_over.gt(&Ext::Fin(upper_rhs)) {
        return Err(violation(&format!("{over} > {upper_name}"), two_over, upper_rhs));
    }
    let two_under = rep.lambda_under.scale_pos(two);
    if !two_under.lt(&Ext::Fin(d + l)) {
        return Err(violation(&format!("{under} < d + l"), two_under, d + l));
    }
    if class == ConditionClass::B && !rep.nu.gt(&zero) {
        return Err(violation("nu > 0", rep.nu, 0));
    }
    Ok(rep)
}

fn theorem_transform(f: &RadialHarmonicFn, alpha: Param, op: Operator) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    let rep = check_theorem(f, a, op)?;
    let unreduced = apply_rows(&f.profile, alpha, f.delta(), op);
    let out = reduce(&unreduced);
    ensure_valid(&out)?;
    let output = RadialHarmonicFn {
        profile: out,
        ..f.clone()
    };
    let class = rep.class;
    let one = Num::int(1);
    let unit_sphere = class != Some(ConditionClass::B)
        || match op {
            Operator::RieszPotential => (rep.nu + a).gt(&one),
            _ => rep.nu.gt(&(one + a)),
        };
    let origin = op == Operator::FractionalLaplacian
        && continuous_at_origin(&f.profile, f.l)
        && continuous_at_origin(&output.profile, f.l);
    Ok(TransformResult {
        operator: op,
        alpha,
        input: f.clone(),
        unreduced,
        output,
        validity: Validity {
            support: Support::Everywhere,
            origin,
            unit_sphere,
        },
        class,
    })
}

/// `(-Delta)^{-alpha/2} f` for `0 < alpha < d`.
pub fn riesz_transform(f: &RadialHarmonicFn, alpha: Param) -> Result<TransformResult> {
    theorem_transform(f, alpha, Operator::RieszPotential)
}

/// `(-Delta)^{alpha/2} f` for `alpha > 0`.
pub fn fraclap_transform(f: &RadialHarmonicFn, alpha: Param) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    if !a.gt(&Num::int(0)) {
        return Err(violation("alpha > 0", a, 0));
    }
    theorem_transform(f, alpha, Operator::FractionalLaplacian)
}

/// `(-Delta)^{alpha/2} f` for any real `alpha`: negative orders are Riesz
/// potentials of order `-alpha`, and `alpha = 0` is the identity.
pub fn transform(f: &RadialHarmonicFn, alpha: Param) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    if num_is_zero(&a) {
        ensure_valid(&f.profile)?;
        return Ok(TransformResult {
            operator: Operator::Identity,
            alpha,
            input: f.clone(),
            unreduced: f.profile.clone(),
            output: f.clone(),
            validity: Validity::everywhere(),
            class: classify(&f.profile)?.class,
        });
    }
    if a.gt(&Num::int(0)) {
        fraclap_transform(f, alpha)
    } else {
        riesz_transform(f, -alpha)
    }
}

// ---------------------------------------------------------------------------
// corollaries

fn origin_clause(rho: Param, alpha: Num, l: u32) -> bool {
    let two_rho = rho.scale(Rat::from_integer(2));
    let l = Num::int(l as i64);
    two_rho.re_num().gt(&(alpha - l))
        || matches!(two_rho.as_integer(), Some(k) if k % 2 == 0 && k >= -(l.f64() as i64))
}

/// `(-Delta)^{alpha/2}` of `V(x) |x|^{2 rho} (1 + |x|^2)^sigma`.
pub fn power_fullspace(rho: Param, sigma: Param, d: u32, l: u32, alpha: Param) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    let g = encode_power_kernel(rho, sigma, Region::Full)?;
    let f = RadialHarmonicFn::with_degree(d, l, g)?;
    let mut t = transform(&f, alpha)?;
    if t.operator != Operator::Identity {
        t.validity = Validity {
            support: Support::Everywhere,
            origin: origin_clause(rho, a, l),
            unit_sphere: true,
        };
    }
    Ok(t)
}

/// `(-Delta)^{alpha/2}` of `V(x) |x|^{2 rho} (1 - |x|^2)_+^sigma` (ball) or
/// `V(x) |x|^{2 rho} (|x|^2 - 1)_+^sigma` (complement).
pub fn power_ball(
    rho: Param,
    sigma: Param,
    d: u32,
    l: u32,
    alpha: Param,
    region: Region,
) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    if region == Region::Full {
        return power_fullspace(rho, sigma, d, l, alpha);
    }
    let g = encode_power_kernel(rho, sigma, region)?;
    let f = RadialHarmonicFn::with_degree(d, l, g)?;
    let mut t = transform(&f, alpha)?;
    if t.operator != Operator::Identity {
        t.validity = Validity {
            support: Support::Everywhere,
            origin: region == Region::Complement || origin_clause(rho, a, l),
            unit_sphere: false,
        };
    }
    Ok(t)
}

/// Profile of `(1 - r)_+^sigma 2F~1(1 + sigma - alpha/2, alpha/2 - rho; 1 + sigma | 1 - r)`,
/// namely `G^{20}_{22}(alpha/2, 1 + rho + sigma - alpha/2; 0, rho | r)`.
pub fn ball_2f1_profile(rho: Param, sigma: Param, alpha: Param) -> GSpec {
    let h = alpha.half();
    GSpec::from_blocks(
        vec![],
        vec![h, Param::one() + rho + sigma - h],
        vec![Param::zero(), rho],
        vec![],
        Coeff::one(),
    )
}

/// The ball identity for `V(x) (1 - |x|^2)_+^sigma 2F~1(...)`: the output
/// is `2^alpha Gamma(rho + delta/2) / Gamma(1 + sigma - alpha/2) V(x)
/// |x|^{2 rho - alpha} 2F~1(rho + delta/2, alpha/2 - sigma; rho + (delta - alpha)/2 | |x|^2)`
/// on the punctured ball.
pub fn ball_2f1_transform(rho: Param, sigma: Param, d: u32, l: u32, alpha: Param) -> Result<TransformResult> {
    let a = alpha_num(&alpha)?;
    if !sigma.re_num().gt(&Num::int(-1)) {
        return Err(violation("sigma > -1", sigma, -1));
    }
    let f = RadialHarmonicFn::with_degree(d, l, ball_2f1_profile(rho, sigma, alpha))?;
    let mut t = transform(&f, alpha)?;
    if t.operator != Operator::Identity {
        let two_rho = rho.scale(Rat::from_integer(2)).re_num();
        t.validity = Validity {
            support: Support::Ball,
            origin: two_rho.gt(&(a - Num::int(l as i64))),
            unit_sphere: false,
        };
    }
    Ok(t)
}

/// Closed form of the ball identity's right-hand side at `0 < |x| < 1`
/// (radial part only, without `V`).
pub fn ball_2f1_rhs(rho: f64, sigma: f64, delta: f64, alpha: f64, norm: f64) -> Result<f64> {
    let k = 2f64.powf(alpha) * gamma_real(rho + delta / 2.0)? * rgamma_real(1.0 + sigma - alpha / 2.0);
    let f = hyp_2f1_reg(
        c(rho + delta / 2.0),
        c(alpha / 2.0 - sigma),
        c(rho + (delta - alpha) / 2.0),
        norm * norm,
    )?;
    Ok(k * norm.powf(2.0 * rho - alpha) * f.value.re)
}

/// `f` with zero fractional Laplacian in the punctured ball:
/// `(1 - |x|^2)_+^{alpha/2} 2F~1(1, delta/2; 1 + alpha/2 | 1 - |x|^2)`
/// (radial part).
pub fn ball_harmonic_profile(norm: f64, delta: f64, alpha: f64) -> Result<f64> {
    if norm >= 1.0 {
        return Ok(0.0);
    }
    let w = 1.0 - norm * norm;
    let f = hyp_2f1_reg_complement(c(1.0), c(delta / 2.0), c(1.0 + alpha / 2.0), (norm * norm).max(f64::MIN_POSITIVE))?;
    Ok(w.powf(alpha / 2.0) * f.value.re)
}

/// Green function of `(-Delta)^{alpha/2}` in the unit ball, `0 < alpha < 2`.
pub fn green_function_ball(x: &[f64], y: &[f64], d: u32, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Invalid(format!("need 0 < alpha < 2, got {alpha}")));
    }
    let n2 = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>();
    let (x2, y2) = (n2(x), n2(y));
    if x2 >= 1.0 || y2 >= 1.0 {
        return Err(Error::Region("points must lie in the open unit ball".into()));
    }
    let dist2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    if dist2 == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    let dh = d as f64 / 2.0;
    let w = (1.0 - x2) * (1.0 - y2);
    let k = gamma_real(dh)? * w.powf(alpha / 2.0)
        / (2f64.powf(alpha) * PI.powf(dh) * gamma_real(alpha / 2.0)? * dist2.powf(dh));
    let f = hyp_2f1_reg(c(dh), c(alpha / 2.0), c(1.0 + alpha / 2.0), -w / dist2)?;
    Ok(k * f.value.re)
}

/// `G(x, 0)` through [`ball_harmonic_profile`].
pub fn green_function_origin(x: &[f64], d: u32, alpha: f64) -> Result<f64> {
    let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    let dh = d as f64 / 2.0;
    let k = gamma_real(dh)? / (2f64.powf(alpha) * PI.powf(dh) * gamma_real(alpha / 2.0)?);
    Ok(k * ball_harmonic_profile(norm, d as f64, alpha)?)
}

/// Radial function in dimension `d + 2l` with the same profile.
pub fn bochner_lift(f: &RadialHarmonicFn) -> RadialHarmonicFn {
    RadialHarmonicFn::radial(f.delta(), f.profile.clone())
}

// ---------------------------------------------------------------------------
// hypergeometric profiles

/// Output of [`hyp_transform`].
#[derive(Clone, Debug)]
pub struct HypTransform {
    pub d: u32,
    pub l: u32,
    pub alpha: Param,
    pub input: HypSpec,
    pub output: HypSpec,
}

impl HypTransform {
    /// Radial part of the output at `|x| = norm`.
    pub fn eval_radial(&self, norm: f64) -> Result<EvalResult> {
        hyp_pfq(&self.output, c(norm * norm))
    }
}

/// Moves a lower parameter equal to `delta/2` to the end, or appends the
/// pair `(delta/2; delta/2)` when none is present.
pub fn with_delta_lower(h: &HypSpec, delta: u32) -> HypSpec {
    let hd = Param::from_rat(rat(delta as i64, 2));
    let mut out = h.clone();
    if let Some(j) = out.lower.iter().rposition(|b| b.matches(&hd)) {
        let b = out.lower.remove(j);
        out.lower.push(b);
        return out;
    }
    out.upper.push(hd);
    out.lower.push(hd);
    if out.regularized {
        out.coeff = out.coeff.times(&Coeff::gamma(hd));
    }
    out
}

/// `(-Delta)^{alpha/2}` of `V(x) coeff pFq(a; b', delta/2 | -c |x|^2)`, `alpha > -d`.
///
/// A missing `delta/2` lower parameter is introduced by
/// [`with_delta_lower`]. An argument factor `-c` other than `-1` contributes
/// `c^{alpha/2}` by scaling.
pub fn hyp_transform(h: &HypSpec, d: u32, l: u32, alpha: Param) -> Result<HypTransform> {
    let a = alpha_num(&alpha)?;
    h.check()?;
    if !a.gt(&Num::int(-(d as i64))) {
        return Err(violation("alpha > -d", a, -(d as i64)));
    }
    let h = with_delta_lower(h, d + 2 * l);
    let (p, q) = (h.upper.len(), h.lower.len());
    if p + 1 < q || p > q + 1 {
        return Err(Error::ConditionViolation(format!("p in {{q-1, q, q+1}} (p = {p}, q = {q})")));
    }
    let lhs = Num::int(l as i64) - a;
    for u in &h.upper {
        let two_u = Num::int(2) * u.re_num();
        if !two_u.gt(&lhs) {
            return Err(violation("2 min Re(a) > -alpha + l", two_u, lhs));
        }
    }
    let c_arg = -h.arg;
    let scale = match c_arg.exact_rat() {
        Some(r) if r > Rat::zero() => Coeff::power(r, alpha.half()),
        _ => {
            let cv = c_arg.c64();
            if !(cv.im == 0.0 && cv.re > 0.0) {
                return Err(Error::Invalid(format!("argument factor {} must be negative", h.arg)));
            }
            Coeff::real(cv.re.powf(a.f64() / 2.0))
        }
    };
    let shift = alpha.half();
    let mut coeff = h.coeff.times(&Coeff::power(Rat::from_integer(2), alpha)).times(&scale);
    for u in &h.upper {
        coeff = coeff.times(&Coeff::gamma(*u + shift)).times(&Coeff::inv_gamma(*u));
    }
    let b_prime = &h.lower[..q - 1];
    if !h.regularized {
        for b in b_prime {
            coeff = coeff.times(&Coeff::gamma(*b)).times(&Coeff::inv_gamma(*b + shift));
        }
    }
    let mut lower: Vec<Param> = b_prime.iter().map(|b| *b + shift).collect();
    lower.push(h.lower[q - 1]);
    let output = HypSpec {
        upper: h.upper.iter().map(|u| *u + shift).collect(),
        lower,
        regularized: h.regularized,
        coeff: coeff.normalized(),
        arg: h.arg,
    };
    Ok(HypTransform {
        d,
        l,
        alpha,
        input: h,
        output,
    })
}

/// `cos |x| = sqrt(pi) 0F~1(; 1/2 | -|x|^2 / 4)`.
pub fn cosine_spec() -> HypSpec {
    HypSpec::new(vec![], vec![Param::rat(1, 2)], true)
        .with_coeff(Coeff::real(PI.sqrt()))
        .with_arg(Param::rat(-1, 4))
}
