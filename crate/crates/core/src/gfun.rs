//! Parameter algebra for Meijer G-function representations.
//!
//! A [`GSpec`] stands for `coeff * G^{m,n}_{p,q}(a; b | r)`. The parameter
//! vectors are split into blocks, `a = (a_1..a_n | a_{n+1}..a_p)` and
//! `b = (b_1..b_m | b_{m+1}..b_q)`; permuting inside a block does not change
//! the function, so the identities below may reorder freely within blocks.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::param::{rat, rat_to_f64, same_multiset, Ext, Num, Param, Rat};
use crate::specfun::gamma::{gamma, rgamma, sinpi};

/// Symbolic scalar `scalar * prod base^exp * prod Gamma(num) / prod Gamma(den)`.
///
/// Keeping gamma factors and powers symbolic lets transforms that cancel
/// each other produce bitwise-identical records.
#[derive(Clone, Debug)]
pub struct Coeff {
    pub scalar: Complex64,
    pub powers: Vec<(Rat, Param)>,
    pub gamma_num: Vec<Param>,
    pub gamma_den: Vec<Param>,
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::one()
    }
}

impl Coeff {
    pub fn one() -> Self {
        Coeff {
            scalar: Complex64::new(1.0, 0.0),
            powers: Vec::new(),
            gamma_num: Vec::new(),
            gamma_den: Vec::new(),
        }
    }

    pub fn scalar(z: Complex64) -> Self {
        Coeff {
            scalar: z,
            ..Coeff::one()
        }
    }

    pub fn real(x: f64) -> Self {
        Coeff::scalar(Complex64::new(x, 0.0))
    }

    /// `Gamma(p)`.
    pub fn gamma(p: Param) -> Self {
        Coeff {
            gamma_num: vec![p],
            ..Coeff::one()
        }
    }

    /// `1 / Gamma(p)`.
    pub fn inv_gamma(p: Param) -> Self {
        Coeff {
            gamma_den: vec![p],
            ..Coeff::one()
        }
    }

    /// `base^exp` for a positive rational base.
    pub fn power(base: Rat, exp: Param) -> Self {
        Coeff {
            powers: vec![(base, exp)],
            ..Coeff::one()
        }
        .normalized()
    }

    pub fn times(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        out.scalar *= other.scalar;
        out.powers.extend(other.powers.iter().cloned());
        out.gamma_num.extend(other.gamma_num.iter().cloned());
        out.gamma_den.extend(other.gamma_den.iter().cloned());
        out.normalized()
    }

    pub fn times_scalar(&self, z: Complex64) -> Coeff {
        let mut out = self.clone();
        out.scalar *= z;
        out
    }

    pub fn negated(&self) -> Coeff {
        self.times_scalar(Complex64::new(-1.0, 0.0))
    }

    pub fn inverse(&self) -> Coeff {
        Coeff {
            scalar: 1.0 / self.scalar,
            powers: self.powers.iter().map(|(b, e)| (*b, -*e)).collect(),
            gamma_num: self.gamma_den.clone(),
            gamma_den: self.gamma_num.clone(),
        }
    }

    /// Cancels matching gamma factors and merges powers of equal bases.
    pub fn normalized(mut self) -> Coeff {
        let mut i = 0;
        while i < self.gamma_num.len() {
            if let Some(j) = self
                .gamma_den
                .iter()
                .position(|d| d.matches(&self.gamma_num[i]))
            {
                self.gamma_num.remove(i);
                self.gamma_den.remove(j);
            } else {
                i += 1;
            }
        }
        let mut merged: Vec<(Rat, Param)> = Vec::new();
        for (b, e) in self.powers.drain(..) {
            for (pb, k) in prime_factors(b) {
                let e = e * Rat::from_integer(k);
                if let Some(slot) = merged.iter_mut().find(|(mb, _)| *mb == pb) {
                    slot.1 = slot.1 + e;
                } else {
                    merged.push((pb, e));
                }
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        merged.sort_by_key(|x| x.0);
        self.powers = merged;
        self
    }

    /// Folds everything that is a rational number into the scalar: closed
    /// integer powers, `Gamma(n)` for positive integers `n`, and gamma
    /// ratios whose arguments differ by an integer.
    pub fn simplified(&self) -> Coeff {
        let mut out = self.clone().normalized();
        let mut q = Rat::one();
        out.powers.retain(|(b, e)| match e.exact_rat() {
            Some(r) if r.is_integer() && r.abs() <= Rat::from_integer(62) => {
                q *= b.pow(r.to_integer() as i32);
                false
            }
            _ => true,
        });
        let mut i = 0;
        while i < out.gamma_num.len() {
            let x = out.gamma_num[i];
            let hit = out.gamma_den.iter().enumerate().find_map(|(j, y)| {
                match (x.exact_rat(), y.exact_rat(), y.integer_offset(&x)) {
                    (Some(xr), Some(yr), Some(k)) if k.abs() <= 200 => Some((j, xr, yr, k)),
                    _ => None,
                }
            });
            match hit {
                Some((j, xr, yr, k)) => {
                    // Gamma(y + k) / Gamma(y) = (y)_k
                    q *= if k >= 0 {
                        pochhammer(yr, k)
                    } else {
                        pochhammer(xr, -k).recip()
                    };
                    out.gamma_num.remove(i);
                    out.gamma_den.remove(j);
                }
                None => i += 1,
            }
        }
        for (list, inv) in [(&mut out.gamma_num, false), (&mut out.gamma_den, true)] {
            list.retain(|x| match x.exact_rat() {
                Some(r) if r.is_integer() && r > Rat::zero() && r <= Rat::from_integer(20) => {
                    let f = pochhammer(Rat::one(), r.to_integer() - 1);
                    q *= if inv { f.recip() } else { f };
                    false
                }
                _ => true,
            });
        }
        out.scalar *= rat_to_f64(q);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.powers.iter().all(|(_, e)| e.is_closed())
            && self.gamma_num.iter().all(Param::is_closed)
            && self.gamma_den.iter().all(Param::is_closed)
    }

    pub fn bind(&self, alpha: Param, d: u32) -> Coeff {
        Coeff {
            scalar: self.scalar,
            powers: self.powers.iter().map(|(b, e)| (*b, e.bind(alpha, d))).collect(),
            gamma_num: self.gamma_num.iter().map(|p| p.bind(alpha, d)).collect(),
            gamma_den: self.gamma_den.iter().map(|p| p.bind(alpha, d)).collect(),
        }
        .normalized()
    }

    /// True when some denominator gamma sits on a pole, i.e. the value is 0.
    pub fn vanishes(&self) -> bool {
        self.scalar == Complex64::zero()
            || self
                .gamma_den
                .iter()
                .any(|p| p.is_closed() && p.is_nonpositive_integer())
    }

    pub fn value(&self) -> Result<Complex64> {
        if !self.is_closed() {
            return Err(Error::UnboundSymbol(self.to_string()));
        }
        let mut v = self.scalar;
        for (b, e) in &self.powers {
            v *= (e.c64() * rat_to_f64(*b).ln()).exp();
        }
        for p in &self.gamma_den {
            v *= rgamma(p.c64());
        }
        if v == Complex64::zero() {
            return Ok(v);
        }
        for p in &self.gamma_num {
            v *= gamma(p.c64())?;
        }
        Ok(v)
    }

    /// Exact record equality.
    pub fn same(&self, other: &Coeff) -> bool {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        a.scalar == b.scalar
            && same_multiset(&a.gamma_num, &b.gamma_num)
            && same_multiset(&a.gamma_den, &b.gamma_den)
            && a.powers.len() == b.powers.len()
            && a.powers.iter().all(|(base, e)| {
                b.powers
                    .iter()
                    .any(|(base2, e2)| base == base2 && e.matches(e2))
            })
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.im == 0.0 {
            match as_small_rational(self.scalar.re) {
                Some((p, 1)) => write!(f, "{p}")?,
                Some((p, q)) => write!(f, "{p}/{q}")?,
                None => write!(f, "{}", self.scalar.re)?,
            }
        } else {
            write!(f, "({})", self.scalar)?;
        }
        for (b, e) in &self.powers {
            write!(f, " * {}^({})", Param::from_rat(*b), e)?;
        }
        for p in &self.gamma_num {
            write!(f, " * Gamma({p})")?;
        }
        for p in &self.gamma_den {
            write!(f, " / Gamma({p})")?;
        }
        Ok(())
    }
}

/// `x = p/q` exactly in floating point, with `q <= 10^4`.
fn as_small_rational(x: f64) -> Option<(i64, i64)> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    (1..=10_000i64).find_map(|q| {
        let p = (x * q as f64).round();
        (p / q as f64 == x).then_some((p as i64, q))
    })
}

fn pochhammer(x: Rat, k: i64) -> Rat {
    (0..k).fold(Rat::one(), |acc, j| acc * (x + Rat::from_integer(j)))
}

fn factor_int(mut n: i64, sign: i64, out: &mut Vec<(Rat, i64)>) {
    let mut p = 2;
    while p * p <= n && p < 100_000 {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((Rat::from_integer(p), sign * k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((Rat::from_integer(n), sign));
    }
}

/// `b = prod p^k` for a positive rational `b`.
fn prime_factors(b: Rat) -> Vec<(Rat, i64)> {
    let mut out = Vec::new();
    if b <= Rat::zero() {
        return vec![(b, 1)];
    }
    factor_int(*b.numer(), 1, &mut out);
    factor_int(*b.denom(), -1, &mut out);
    out
}

/// `coeff * G^{m,n}_{p,q}(a; b | r)`.
#[derive(Clone, Debug)]
pub struct GSpec {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub a: Vec<Param>,
    pub b: Vec<Param>,
    pub coeff: Coeff,
}

/// One broken invariant of a [`GSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    LengthMismatch { p: usize, a_len: usize, q: usize, b_len: usize },
    GroupBounds { m: usize, n: usize, p: usize, q: usize },
    Budget { m: usize, n: usize, p: usize, q: usize },
    ForbiddenPair { i: usize, j: usize, diff: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { p, a_len, q, b_len } => write!(
                f,
                "parameter lengths ({a_len}, {b_len}) do not match (p, q) = ({p}, {q})"
            ),
            Violation::GroupBounds { m, n, p, q } => {
                write!(f, "need 0 <= m <= q and 0 <= n <= p, got (m,n,p,q) = ({m},{n},{p},{q})")
            }
            Violation::Budget { .. } => write!(f, "p+q > 2m+2n"),
            Violation::ForbiddenPair { i, j, diff } => {
                write!(f, "a{}-b{} = {} is a positive integer", j + 1, i + 1, diff)
            }
        }
    }
}

/// Which of the mutually exclusive gamma-count conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionClass {
    A,
    B,
    C,
    D,
}

impl fmt::Display for ConditionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Classification of a [`GSpec`] and its contour indices.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub cond_s: bool,
    pub class: Option<ConditionClass>,
    pub nu: Num,
    pub a_bar: Ext,
    pub b_under: Ext,
    pub lambda_under: Ext,
    pub lambda_over: Ext,
}

impl ConditionReport {
    /// Whether an admissible vertical contour exists.
    pub fn has_contour(&self) -> bool {
        self.class.is_some() && self.lambda_under.lt(&self.lambda_over)
    }
}

/// Regularized/plain generalized hypergeometric function
/// `coeff * pFq(upper; lower | arg * r)`.
#[derive(Clone, Debug)]
pub struct HypSpec {
    pub upper: Vec<Param>,
    pub lower: Vec<Param>,
    pub regularized: bool,
    pub coeff: Coeff,
    /// Factor applied to the argument; `-1` for the usual `F(-r)`.
    pub arg: Param,
}

impl HypSpec {
    pub fn new(upper: Vec<Param>, lower: Vec<Param>, regularized: bool) -> Self {
        HypSpec {
            upper,
            lower,
            regularized,
            coeff: Coeff::one(),
            arg: Param::int(1),
        }
    }

    pub fn with_arg(mut self, arg: Param) -> Self {
        self.arg = arg;
        self
    }

    pub fn with_coeff(mut self, coeff: Coeff) -> Self {
        self.coeff = coeff;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.upper.len() > self.lower.len() + 1 {
            return Err(Error::Invalid(format!(
                "pFq needs p <= q + 1, got p = {}, q = {}",
                self.upper.len(),
                self.lower.len()
            )));
        }
        if !self.regularized {
            if let Some(b) = self.lower.iter().find(|b| b.is_nonpositive_integer()) {
                return Err(Error::Pole(format!("lower parameter {b}")));
            }
        }
        Ok(())
    }

    /// Same function with the regularized flag set.
    pub fn to_regularized(&self) -> HypSpec {
        if self.regularized {
            return self.clone();
        }
        let mut c = self.coeff.clone();
        for b in &self.lower {
            c = c.times(&Coeff::gamma(*b));
        }
        HypSpec {
            regularized: true,
            coeff: c,
            ..self.clone()
        }
    }

    /// Removes upper/lower pairs with equal parameters
    /// (`pF~q(c, a; c, b) = (p-1)F~(q-1)(a; b) / Gamma(c)` in regularized form).
    pub fn cancel_matching(&self) -> HypSpec {
        let mut out = self.clone();
        let mut i = 0;
        while i < out.upper.len() {
            if let Some(j) = out.lower.iter().position(|b| b.matches(&out.upper[i])) {
                let c = out.upper.remove(i);
                out.lower.remove(j);
                if out.regularized {
                    out.coeff = out.coeff.times(&Coeff::inv_gamma(c));
                }
            } else {
                i += 1;
            }
        }
        out
    }

    /// Exact record equality.
    pub fn same(&self, other: &HypSpec) -> bool {
        self.regularized == other.regularized
            && self.arg.matches(&other.arg)
            && same_multiset(&self.upper, &other.upper)
            && same_multiset(&self.lower, &other.lower)
            && self.coeff.same(&other.coeff)
    }
}

impl fmt::Display for HypSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Param]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{} * {}F{}{}({}; {} | {} r)",
            self.coeff,
            self.upper.len(),
            if self.regularized { "~" } else { "" },
            self.lower.len(),
            list(&self.upper),
            list(&self.lower),
            self.arg
        )
    }
}

/// One term `r^power * hyp(r)` of a hypergeometric expansion.
#[derive(Clone, Debug)]
pub struct HypTerm {
    pub power: Param,
    pub hyp: HypSpec,
}

/// Region selector for [`encode_power_kernel`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Full,
    Ball,
    Complement,
}

impl GSpec {
    /// Builds a spec from the two blocks of each parameter row.
    pub fn from_blocks(
        a_first: Vec<Param>,
        a_second: Vec<Param>,
        b_first: Vec<Param>,
        b_second: Vec<Param>,
        coeff: Coeff,
    ) -> GSpec {
        let n = a_first.len();
        let m = b_first.len();
        let mut a = a_first;
        a.extend(a_second);
        let mut b = b_first;
        b.extend(b_second);
        GSpec {
            m,
            n,
            p: a.len(),
            q: b.len(),
            a,
            b,
            coeff,
        }
    }

    pub fn a_first(&self) -> &[Param] {
        &self.a[..self.n]
    }

    pub fn a_second(&self) -> &[Param] {
        &self.a[self.n..]
    }

    pub fn b_first(&self) -> &[Param] {
        &self.b[..self.m]
    }

    pub fn b_second(&self) -> &[Param] {
        &self.b[self.m..]
    }

    pub fn with_coeff(mut self, coeff: Coeff) -> GSpec {
        self.coeff = coeff;
        self
    }

    pub fn is_closed(&self) -> bool {
        self.a.iter().all(Param::is_closed)
            && self.b.iter().all(Param::is_closed)
            && self.coeff.is_closed()
    }

    pub fn require_closed(&self) -> Result<()> {
        for p in self.a.iter().chain(self.b.iter()) {
            p.require_closed()?;
        }
        if !self.coeff.is_closed() {
            return Err(Error::UnboundSymbol(self.coeff.to_string()));
        }
        Ok(())
    }

    pub fn all_real(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(Param::is_real)
    }

    /// Substitutes numeric `alpha` and `d`.
    pub fn bind(&self, alpha: Param, d: u32) -> GSpec {
        GSpec {
            a: self.a.iter().map(|p| p.bind(alpha, d)).collect(),
            b: self.b.iter().map(|p| p.bind(alpha, d)).collect(),
            coeff: self.coeff.bind(alpha, d),
            ..self.clone()
        }
    }

    /// Record equality up to permutations inside blocks.
    pub fn same(&self, other: &GSpec) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.p == other.p
            && self.q == other.q
            && same_multiset(self.a_first(), other.a_first())
            && same_multiset(self.a_second(), other.a_second())
            && same_multiset(self.b_first(), other.b_first())
            && same_multiset(self.b_second(), other.b_second())
            && self.coeff.same(&other.coeff)
    }

    /// Parameter-only equality (ignores the coefficient).
    pub fn same_parameters(&self, other: &GSpec) -> bool {
        let mut o = other.clone();
        o.coeff = self.coeff.clone();
        self.same(&o)
    }

    /// Mellin kernel `G(s)` without the coefficient.
    pub fn mellin_kernel(&self, s: Complex64) -> Result<Complex64> {
        self.require_closed()?;
        let mut v = Complex64::new(1.0, 0.0);
        for bj in self.b_second() {
            v *= rgamma(1.0 - bj.c64() - s);
        }
        for aj in self.a_second() {
            v *= rgamma(aj.c64() + s);
        }
        if v == Complex64::zero() {
            return Ok(v);
        }
        for bj in self.b_first() {
            v *= gamma(bj.c64() + s)?;
        }
        for aj in self.a_first() {
            v *= gamma(1.0 - aj.c64() - s)?;
        }
        Ok(v)
    }
}

fn fmt_row(v: &[Param], split: usize) -> String {
    let first: Vec<String> = v[..split].iter().map(|x| x.to_string()).collect();
    let second: Vec<String> = v[split..].iter().map(|x| x.to_string()).collect();
    format!("{} | {}", first.join(", "), second.join(", "))
}

impl fmt::Display for GSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * G^{{{},{}}}_{{{},{}}}(({}); ({}))",
            self.coeff,
            self.m,
            self.n,
            self.p,
            self.q,
            fmt_row(&self.a, self.n),
            fmt_row(&self.b, self.m)
        )
    }
}

/// Checks the standing invariants; an empty list means the spec is legal.
pub fn validate(g: &GSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.a.len() != g.p || g.b.len() != g.q {
        out.push(Violation::LengthMismatch {
            p: g.p,
            a_len: g.a.len(),
            q: g.q,
            b_len: g.b.len(),
        });
        return out;
    }
    if g.m > g.q || g.n > g.p {
        out.push(Violation::GroupBounds {
            m: g.m,
            n: g.n,
            p: g.p,
            q: g.q,
        });
        return out;
    }
    if g.p + g.q > 2 * g.m + 2 * g.n {
        out.push(Violation::Budget {
            m: g.m,
            n: g.n,
            p: g.p,
            q: g.q,
        });
    }
    for (i, bi) in g.b_first().iter().enumerate() {
        for (j, aj) in g.a_first().iter().enumerate() {
            // poles of Gamma(b_i + s) and Gamma(1 - a_j - s) collide iff
            // a_j - b_i is a positive integer
            if let Some(k) = bi.integer_offset(aj) {
                if k > 0 {
                    out.push(Violation::ForbiddenPair { i, j, diff: k });
                }
            }
        }
    }
    out
}

pub fn ensure_valid(g: &GSpec) -> Result<()> {
    let v = validate(g);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(v))
    }
}

fn class_of(m: usize, n: usize, p: usize, q: usize) -> Option<ConditionClass> {
    let budget = 2 * (m + n);
    match (p + q).cmp(&budget) {
        std::cmp::Ordering::Less => Some(ConditionClass::A),
        std::cmp::Ordering::Greater => None,
        std::cmp::Ordering::Equal => Some(match p.cmp(&q) {
            std::cmp::Ordering::Equal => ConditionClass::B,
            std::cmp::Ordering::Less => ConditionClass::C,
            std::cmp::Ordering::Greater => ConditionClass::D,
        }),
    }
}

/// Computes the condition report. Parameters must be closed.
pub fn classify(g: &GSpec) -> Result<ConditionReport> {
    for p in g.a.iter().chain(g.b.iter()) {
        p.require_closed()?;
    }
    let class = class_of(g.m, g.n, g.p, g.q);
    let sum = |v: &[Param]| v.iter().fold(Num::int(0), |acc, x| acc + x.re_num());
    let nu = sum(&g.a) - sum(&g.b);
    let a_bar = g
        .a_first()
        .iter()
        .map(|x| Ext::Fin(x.re_num()))
        .fold(Ext::NegInf, Ext::max);
    let b_under = g
        .b_first()
        .iter()
        .map(|x| Ext::Fin(x.re_num()))
        .fold(Ext::PosInf, Ext::min);
    let one = Num::int(1);
    let half = Num::Exact(rat(1, 2));
    let lower_pole = b_under.neg();
    let upper_pole = a_bar.neg().add_num(one);
    let cond_s = upper_pole.gt(&lower_pole);
    let (lambda_under, lambda_over) = match class {
        Some(ConditionClass::D) => {
            let k = Num::int(g.p as i64 - g.q as i64);
            let alt = Ext::Fin(half - (nu - one).div(k));
            (lower_pole.max(alt), upper_pole)
        }
        Some(ConditionClass::C) => {
            let k = Num::int(g.q as i64 - g.p as i64);
            let alt = Ext::Fin(half + (nu - one).div(k));
            (lower_pole, upper_pole.min(alt))
        }
        _ => (lower_pole, upper_pole),
    };
    Ok(ConditionReport {
        cond_s,
        class,
        nu,
        a_bar,
        b_under,
        lambda_under,
        lambda_over,
    })
}

/// `r^c G(a; b | r) = G(a + c; b + c | r)`.
pub fn shift_power(g: &GSpec, c: Param) -> GSpec {
    GSpec {
        a: g.a.iter().map(|x| *x + c).collect(),
        b: g.b.iter().map(|x| *x + c).collect(),
        ..g.clone()
    }
}

/// `G^{mn}_{pq}(a; b | 1/r) = G^{nm}_{qp}(1 - b; 1 - a | r)`.
pub fn invert_argument(g: &GSpec) -> GSpec {
    let one = Param::one();
    GSpec {
        m: g.n,
        n: g.m,
        p: g.q,
        q: g.p,
        a: g.b.iter().map(|x| one - *x).collect(),
        b: g.a.iter().map(|x| one - *x).collect(),
        coeff: g.coeff.clone(),
    }
}

/// Cancels every parameter shared between the first `a` block and the
/// second `b` block, or between the second `a` block and the first `b`
/// block. Idempotent.
pub fn reduce(g: &GSpec) -> GSpec {
    let mut a1 = g.a_first().to_vec();
    let mut a2 = g.a_second().to_vec();
    let mut b1 = g.b_first().to_vec();
    let mut b2 = g.b_second().to_vec();
    loop {
        if let Some((i, j)) = find_pair(&a1, &b2) {
            a1.remove(i);
            b2.remove(j);
            continue;
        }
        if let Some((i, j)) = find_pair(&a2, &b1) {
            a2.remove(i);
            b1.remove(j);
            continue;
        }
        break;
    }
    GSpec::from_blocks(a1, a2, b1, b2, g.coeff.clone())
}

fn find_pair(x: &[Param], y: &[Param]) -> Option<(usize, usize)> {
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            if u.matches(v) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Moves an integer-separated pair `(a_i, b_j)`, `b_j = a_i + k`, across
/// the blocks, multiplying the coefficient by `(-1)^k`.
///
/// With `a_i` in the first block and `b_j` in the second this maps
/// `G^{mn}` to `G^{m+1,n-1}`; the mirrored pattern maps `G^{mn}` to
/// `G^{m-1,n+1}`.
pub fn swap_integer_pair(g: &GSpec, i: usize, j: usize) -> Result<GSpec> {
    if i >= g.p || j >= g.q {
        return Err(Error::BlockPattern(format!(
            "index out of range (i = {i}, j = {j}, p = {}, q = {})",
            g.p, g.q
        )));
    }
    let ai = g.a[i];
    let bj = g.b[j];
    let mut a1 = g.a_first().to_vec();
    let mut a2 = g.a_second().to_vec();
    let mut b1 = g.b_first().to_vec();
    let mut b2 = g.b_second().to_vec();
    let crosses = (i < g.n && j >= g.m) || (i >= g.n && j < g.m);
    if !crosses {
        return Err(Error::BlockPattern(format!(
            "a{} and b{} lie in matching blocks",
            i + 1,
            j + 1
        )));
    }
    let k = ai
        .integer_offset(&bj)
        .ok_or_else(|| Error::NotInteger(ai.to_string(), bj.to_string()))?;
    if i < g.n && j >= g.m {
        a1.remove(i);
        a2.push(ai);
        b2.remove(j - g.m);
        b1.insert(0, bj);
    } else {
        a2.remove(i - g.n);
        a1.insert(0, ai);
        b1.remove(j);
        b2.push(bj);
    }
    let coeff = if k.rem_euclid(2) == 1 {
        g.coeff.negated()
    } else {
        g.coeff.clone()
    };
    Ok(GSpec::from_blocks(a1, a2, b1, b2, coeff))
}

/// Expansion of `G` into `m` regularized hypergeometric terms, valid for
/// `p < q`, or for `p = q` with `r < 1`. The coefficient of `g` is folded
/// into every term.
pub fn to_hyp_expansion(g: &GSpec) -> Result<Vec<HypTerm>> {
    if g.p > g.q {
        return Err(Error::WrongRegion);
    }
    ensure_valid(g)?;
    let b1 = g.b_first();
    for j in 0..b1.len() {
        for k in (j + 1)..b1.len() {
            if b1[j].integer_offset(&b1[k]).is_some() {
                return Err(Error::IntegerBDifference(j, k));
            }
        }
    }
    let one = Param::one();
    let sign_exp = g.p as i64 - g.m as i64 - g.n as i64;
    let arg = if sign_exp.rem_euclid(2) == 0 {
        Param::int(1)
    } else {
        Param::int(-1)
    };
    let mut out = Vec::with_capacity(g.m);
    for (k, bk) in b1.iter().enumerate() {
        let mut c = g.coeff.clone();
        if g.m > 1 {
            for (j, bj) in b1.iter().enumerate() {
                if j == k {
                    continue;
                }
                // needs numeric values for the sine
                bj.require_closed()?;
                bk.require_closed()?;
                c = c.times_scalar(1.0 / sinpi(bj.c64() - bk.c64()));
            }
            c = c.times_scalar(Complex64::new(PI.powi(g.m as i32 - 1), 0.0));
        }
        for aj in g.a_first() {
            c = c.times(&Coeff::gamma(one + *bk - *aj));
        }
        for aj in g.a_second() {
            c = c.times(&Coeff::inv_gamma(*aj - *bk));
        }
        let upper = g.a.iter().map(|aj| one + *bk - *aj).collect();
        let lower = g
            .b
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, bj)| one + *bk - *bj)
            .collect();
        out.push(HypTerm {
            power: *bk,
            hyp: HypSpec {
                upper,
                lower,
                regularized: true,
                coeff: c,
                arg,
            },
        });
    }
    Ok(out)
}

/// `pF~q(a; b | -r) = G^{1,p}_{p,q+1}(1 - a; 0, 1 - b | r) / prod Gamma(a)`.
pub fn from_hyp(h: &HypSpec) -> Result<GSpec> {
    if !h.arg.matches(&Param::int(-1)) {
        return Err(Error::Invalid(format!(
            "from_hyp expects argument -r, got {} r",
            h.arg
        )));
    }
    if let Some(a) = h.upper.iter().find(|a| a.is_nonpositive_integer()) {
        return Err(Error::NonPositiveIntegerUpper(a.to_string()));
    }
    let h = h.to_regularized();
    let one = Param::one();
    let mut coeff = h.coeff.clone();
    for a in &h.upper {
        coeff = coeff.times(&Coeff::inv_gamma(*a));
    }
    let a_first: Vec<Param> = h.upper.iter().map(|a| one - *a).collect();
    let b_second: Vec<Param> = h.lower.iter().map(|b| one - *b).collect();
    Ok(GSpec::from_blocks(
        a_first,
        Vec::new(),
        vec![Param::zero()],
        b_second,
        coeff,
    ))
}

/// `G`-representation of `r^rho (1 + r)^sigma`, `r^rho (1 - r)_+^sigma` or
/// `r^rho (r - 1)_+^sigma`.
pub fn encode_power_kernel(rho: Param, sigma: Param, region: Region) -> Result<GSpec> {
    let top = Param::one() + rho + sigma;
    match region {
        Region::Full => {
            if matches!(sigma.as_integer(), Some(k) if k >= 0) {
                return Err(Error::Degenerate(format!(
                    "sigma = {sigma} is a nonnegative integer; 1/Gamma(-sigma) vanishes"
                )));
            }
            Ok(GSpec::from_blocks(
                vec![top],
                vec![],
                vec![rho],
                vec![],
                Coeff::inv_gamma(-sigma),
            ))
        }
        Region::Ball | Region::Complement => {
            if !sigma.re_num().gt(&Num::int(-1)) {
                return Err(Error::ConditionViolation(format!("sigma > -1 (sigma = {sigma})")));
            }
            let coeff = Coeff::gamma(Param::one() + sigma);
            Ok(if region == Region::Ball {
                GSpec::from_blocks(vec![], vec![top], vec![rho], vec![], coeff)
            } else {
                GSpec::from_blocks(vec![top], vec![], vec![], vec![rho], coeff)
            })
        }
    }
}

// ---------------------------------------------------------------------------
// JSON

fn param_to_json(p: &Param) -> Value {
    match p {
        Param::Exact(a) => json!({
            "rat": [a.rat.numer(), a.rat.denom()],
            "alpha_mult": [a.alpha_mult.numer(), a.alpha_mult.denom()],
            "d_mult": [a.d_mult.numer(), a.d_mult.denom()],
        }),
        Param::Float(z) => json!([z.re, z.im]),
    }
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid(format!("expected [num, den], got {v}")))?;
    let n = arr[0].as_i64().ok_or_else(|| Error::Invalid(format!("bad numerator {v}")))?;
    let d = arr[1].as_i64().ok_or_else(|| Error::Invalid(format!("bad denominator {v}")))?;
    if d == 0 {
        return Err(Error::Invalid("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

pub fn param_from_json(v: &Value) -> Result<Param> {
    if let Some(obj) = v.as_object() {
        let get = |k: &str| -> Result<Rat> {
            match obj.get(k) {
                Some(x) => rat_from_json(x),
                None => Ok(Rat::zero()),
            }
        };
        return Ok(Param::Exact(crate::param::Affine {
            rat: get("rat")?,
            alpha_mult: get("alpha_mult")?,
            d_mult: get("d_mult")?,
        }));
    }
    if let Some(arr) = v.as_array() {
        if arr.len() == 2 {
            let re = arr[0].as_f64();
            let im = arr[1].as_f64();
            if let (Some(re), Some(im)) = (re, im) {
                return Ok(Param::complex(Complex64::new(re, im)));
            }
        }
    }
    if let Some(x) = v.as_f64() {
        return Ok(Param::real(x));
    }
    if let Some(s) = v.as_str() {
        return Param::parse(s);
    }
    Err(Error::Invalid(format!("cannot read parameter from {v}")))
}

fn complex_to_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Invalid(format!("expected [re, im], got {v}")))?;
    match (arr[0].as_f64(), arr[1].as_f64()) {
        (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
        _ => Err(Error::Invalid(format!("expected [re, im], got {v}"))),
    }
}

impl Coeff {
    pub fn to_json(&self) -> Value {
        json!({
            "scalar": complex_to_json(self.scalar),
            "powers": self.powers.iter().map(|(b, e)| json!({"base": [b.numer(), b.denom()], "exp": param_to_json(e)})).collect::<Vec<_>>(),
            "gamma_num": self.gamma_num.iter().map(param_to_json).collect::<Vec<_>>(),
            "gamma_den": self.gamma_den.iter().map(param_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Coeff> {
        let list = |k: &str| -> Result<Vec<Param>> {
            v.get(k)
                .and_then(Value::as_array)
                .map(|a| a.iter().map(param_from_json).collect())
                .unwrap_or_else(|| Ok(Vec::new()))
        };
        let mut powers = Vec::new();
        if let Some(arr) = v.get("powers").and_then(Value::as_array) {
            for p in arr {
                let base = rat_from_json(p.get("base").unwrap_or(&Value::Null))?;
                let exp = param_from_json(p.get("exp").unwrap_or(&Value::Null))?;
                powers.push((base, exp));
            }
        }
        Ok(Coeff {
            scalar: complex_from_json(v.get("scalar").unwrap_or(&json!([1.0, 0.0])))?,
            powers,
            gamma_num: list("gamma_num")?,
            gamma_den: list("gamma_den")?,
        })
    }
}

impl GSpec {
    /// `{"m","n","p","q","a","b","coeff"}`; the numeric `coeff` is `null`
    /// when it contains unbound symbols. `coeff_factors` carries the exact
    /// symbolic form.
    pub fn to_json(&self) -> Value {
        let coeff = match self.coeff.value() {
            Ok(z) if z.re.is_finite() && z.im.is_finite() => complex_to_json(z),
            _ => Value::Null,
        };
        json!({
            "m": self.m,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "a": self.a.iter().map(param_to_json).collect::<Vec<_>>(),
            "b": self.b.iter().map(param_to_json).collect::<Vec<_>>(),
            "coeff": coeff,
            "coeff_factors": self.coeff.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<GSpec> {
        let int = |k: &str| -> Result<usize> {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Invalid(format!("missing integer field '{k}'")))
        };
        let list = |k: &str| -> Result<Vec<Param>> {
            v.get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Invalid(format!("missing array field '{k}'")))?
                .iter()
                .map(param_from_json)
                .collect()
        };
        let coeff = if let Some(f) = v.get("coeff_factors") {
            Coeff::from_json(f)?
        } else {
            match v.get("coeff") {
                Some(c) if !c.is_null() => Coeff::scalar(complex_from_json(c)?),
                _ => Coeff::one(),
            }
        };
        let g = GSpec {
            m: int("m")?,
            n: int("n")?,
            p: int("p")?,
            q: int("q")?,
            a: list("a")?,
            b: list("b")?,
            coeff,
        };
        Ok(g)
    }

    pub fn parse_json(s: &str) -> Result<GSpec> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        GSpec::from_json(&v)
    }
}

impl HypSpec {
    /// `{"upper","lower","regularized","arg","coeff","coeff_factors"}`.
    pub fn to_json(&self) -> Value {
        let coeff = match self.coeff.value() {
            Ok(z) if z.re.is_finite() && z.im.is_finite() => complex_to_json(z),
            _ => Value::Null,
        };
        json!({
            "upper": self.upper.iter().map(param_to_json).collect::<Vec<_>>(),
            "lower": self.lower.iter().map(param_to_json).collect::<Vec<_>>(),
            "regularized": self.regularized,
            "arg": param_to_json(&self.arg),
            "coeff": coeff,
            "coeff_factors": self.coeff.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<HypSpec> {
        let list = |k: &str| -> Result<Vec<Param>> {
            v.get(k)
                .and_then(Value::as_array)
                .map(|a| a.iter().map(param_from_json).collect())
                .unwrap_or_else(|| Ok(Vec::new()))
        };
        let coeff = if let Some(f) = v.get("coeff_factors") {
            Coeff::from_json(f)?
        } else {
            match v.get("coeff") {
                Some(c) if !c.is_null() => Coeff::scalar(complex_from_json(c)?),
                _ => Coeff::one(),
            }
        };
        let arg = match v.get("arg") {
            Some(a) if !a.is_null() => param_from_json(a)?,
            _ => Param::int(1),
        };
        let h = HypSpec::new(list("upper")?, list("lower")?, v.get("regularized").and_then(Value::as_bool).unwrap_or(false))
            .with_arg(arg)
            .with_coeff(coeff);
        h.check()?;
        Ok(h)
    }

    pub fn parse_json(s: &str) -> Result<HypSpec> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        HypSpec::from_json(&v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64, d: i64) -> Param {
        Param::rat(n, d)
    }

    fn spec(m: usize, n: usize, a: Vec<Param>, b: Vec<Param>) -> GSpec {
        GSpec {
            m,
            n,
            p: a.len(),
            q: b.len(),
            a,
            b,
            coeff: Coeff::one(),
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&spec(1, 0, vec![p(3, 2)], vec![p(0, 1)])).is_empty());
        let v = validate(&spec(1, 1, vec![p(1, 1)], vec![p(0, 1)]));
        assert_eq!(v, vec![Violation::ForbiddenPair { i: 0, j: 0, diff: 1 }]);
        assert_eq!(v[0].to_string(), "a1-b1 = 1 is a positive integer");
        // separated poles: Gamma(1 + s) Gamma(1 - s)
        assert!(validate(&spec(1, 1, vec![p(0, 1)], vec![p(1, 1)])).is_empty());
        let v = validate(&spec(0, 0, vec![p(1, 1)], vec![p(0, 1)]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "p+q > 2m+2n");
    }

    #[test]
    fn classify_examples() {
        let r = classify(&spec(1, 0, vec![p(3, 2)], vec![p(0, 1)])).unwrap();
        assert_eq!(r.class, Some(ConditionClass::B));
        assert!(matches!(r.nu, Num::Exact(x) if x == rat(3, 2)));
        assert!(matches!(r.b_under, Ext::Fin(Num::Exact(x)) if x == rat(0, 1)));
        assert!(matches!(r.a_bar, Ext::NegInf));
        assert!(r.cond_s);

        let r = classify(&spec(1, 1, vec![p(0, 1), p(1, 1)], vec![p(0, 1), p(1, 2)])).unwrap();
        assert_eq!(r.class, Some(ConditionClass::B));
        assert!(matches!(r.nu, Num::Exact(x) if x == rat(1, 2)));

        let r = classify(&spec(0, 1, vec![p(1, 2)], vec![p(0, 1)])).unwrap();
        assert!(matches!(r.b_under, Ext::PosInf));
    }

    #[test]
    fn class_c_and_d_indices() {
        // G^{10}_{02}(-; 0, 1/2): class A actually (p+q = 2 = 2m+2n? m+n = 1 -> 2) -> C
        let g = spec(1, 0, vec![], vec![p(0, 1), p(1, 2)]);
        let r = classify(&g).unwrap();
        assert_eq!(r.class, Some(ConditionClass::C));
        // nu = -1/2, lambda_over = min(+inf, 1/2 + (nu - 1)/2) = -1/4
        assert!(matches!(r.lambda_over, Ext::Fin(Num::Exact(x)) if x == rat(-1, 4)));
        assert!(!r.has_contour());
        let d = invert_argument(&g);
        let r = classify(&d).unwrap();
        assert_eq!(r.class, Some(ConditionClass::D));
    }

    #[test]
    fn shift_and_invert() {
        let g = spec(1, 0, vec![p(3, 2)], vec![p(0, 1)]);
        let rho = Param::rat(1, 3);
        let s = shift_power(&g, rho);
        assert!(s.a[0].matches(&(Param::rat(3, 2) + rho)));
        assert!(s.b[0].matches(&rho));
        assert!(shift_power(&s, -rho).same(&g));
        assert!(shift_power(&g, Param::zero()).same(&g));
        let inv = invert_argument(&g);
        assert_eq!((inv.m, inv.n, inv.p, inv.q), (0, 1, 1, 1));
        assert!(inv.a[0].matches(&p(1, 1)));
        assert!(inv.b[0].matches(&p(-1, 2)));
        assert!(invert_argument(&inv).same(&g));
    }

    #[test]
    fn reduce_getoor_chain() {
        let g = GSpec::from_blocks(
            vec![p(0, 1)],
            vec![p(1, 1), p(-1, 2)],
            vec![p(0, 1), p(-1, 2)],
            vec![p(1, 2)],
            Coeff::one(),
        );
        let r = reduce(&g);
        let want = GSpec::from_blocks(
            vec![p(0, 1)],
            vec![p(1, 1)],
            vec![p(0, 1)],
            vec![p(1, 2)],
            Coeff::one(),
        );
        assert!(r.same(&want), "{r}");
        assert!(reduce(&r).same(&r));
        let plain = spec(1, 0, vec![p(3, 2)], vec![p(0, 1)]);
        assert!(reduce(&plain).same(&plain));
    }

    #[test]
    fn swap_examples() {
        // G^{20}_{22}((1 + alpha/2 + n, 1 - delta/2 - n); (1 - delta/2, 0)), n = 2
        let alpha = Param::alpha();
        let delta = Param::dim() + 2; // d + 2l with l = 1
        let n = 2;
        let a = vec![Param::one() + alpha.half() + n, Param::one() - delta.half() - n];
        let b = vec![Param::one() - delta.half(), Param::zero()];
        let g = spec(2, 0, a.clone(), b.clone());
        let s = swap_integer_pair(&g, 1, 0).unwrap();
        let want = GSpec::from_blocks(
            vec![a[1]],
            vec![a[0]],
            vec![Param::zero()],
            vec![b[0]],
            Coeff::one(),
        );
        assert!(s.same(&want), "{s}");
        assert_eq!(s.coeff.scalar.re, 1.0);
        // odd offset flips the sign, and swapping back restores it
        let g3 = spec(2, 0, vec![a[0], a[1] - 1], b.clone());
        let s3 = swap_integer_pair(&g3, 1, 0).unwrap();
        assert_eq!(s3.coeff.scalar.re, -1.0);
        let back = swap_integer_pair(&s3, 0, 1).unwrap();
        assert_eq!(back.coeff.scalar.re, 1.0);
        assert!(back.same_parameters(&g3));
        // k = 0 relabels blocks only
        let g0 = spec(1, 1, vec![p(1, 3)], vec![p(0, 1), p(1, 3)]);
        let s0 = swap_integer_pair(&g0, 0, 1).unwrap();
        assert_eq!((s0.m, s0.n), (2, 0));
        assert_eq!(s0.coeff.scalar.re, 1.0);
        assert!(matches!(swap_integer_pair(&g, 0, 0), Err(Error::NotInteger(..))));
        assert!(matches!(swap_integer_pair(&g0, 0, 0), Err(Error::BlockPattern(_))));
    }

    #[test]
    fn hyp_expansion_single_term() {
        let g = GSpec::from_blocks(
            vec![p(0, 1)],
            vec![p(1, 1)],
            vec![p(0, 1)],
            vec![p(1, 2)],
            Coeff::one(),
        );
        let terms = to_hyp_expansion(&g).unwrap();
        assert_eq!(terms.len(), 1);
        let t = &terms[0];
        assert!(t.power.is_zero());
        assert!(t.hyp.arg.matches(&Param::int(1)));
        assert!(same_multiset(&t.hyp.upper, &[p(1, 1), p(0, 1)]));
        assert!(same_multiset(&t.hyp.lower, &[p(1, 2)]));
        assert!((t.hyp.coeff.value().unwrap().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyp_expansion_errors() {
        let g = spec(2, 0, vec![p(1, 2), p(3, 2)], vec![p(0, 1), p(1, 1)]);
        assert!(matches!(to_hyp_expansion(&g), Err(Error::IntegerBDifference(0, 1))));
        let d = spec(1, 1, vec![p(1, 2), p(1, 3)], vec![p(0, 1)]);
        assert!(matches!(to_hyp_expansion(&d), Err(Error::WrongRegion)));
    }

    #[test]
    fn from_hyp_examples() {
        let h = HypSpec::new(vec![], vec![p(1, 2)], true).with_arg(Param::int(-1));
        let g = from_hyp(&h).unwrap();
        let want = GSpec::from_blocks(vec![], vec![], vec![p(0, 1)], vec![p(1, 2)], Coeff::one());
        assert!(g.same(&want), "{g}");

        let alpha = p(1, 2);
        let delta = p(3, 1);
        let h = HypSpec::new(
            vec![Param::one(), delta.half()],
            vec![Param::one() + alpha.half()],
            true,
        )
        .with_arg(Param::int(-1));
        let g = from_hyp(&h).unwrap();
        assert_eq!((g.m, g.n, g.p, g.q), (1, 2, 2, 2));
        assert!(same_multiset(g.a_first(), &[p(0, 1), Param::one() - delta.half()]));
        assert!(same_multiset(g.b_second(), &[-alpha.half()]));
        let c = g.coeff.value().unwrap().re;
        let want = crate::specfun::gamma::rgamma_real(1.5);
        assert!((c - want).abs() < 1e-15);

        let bad = HypSpec::new(vec![p(-2, 1)], vec![p(1, 2)], true).with_arg(Param::int(-1));
        assert!(matches!(from_hyp(&bad), Err(Error::NonPositiveIntegerUpper(_))));
    }

    #[test]
    fn power_kernels() {
        let g = encode_power_kernel(p(0, 1), p(1, 2), Region::Ball).unwrap();
        assert_eq!((g.m, g.n, g.p, g.q), (1, 0, 1, 1));
        assert!(g.a[0].matches(&p(3, 2)));
        let g = encode_power_kernel(p(0, 1), p(-1, 1), Region::Full).unwrap();
        assert_eq!((g.m, g.n, g.p, g.q), (1, 1, 1, 1));
        assert!(g.a[0].is_zero() && g.b[0].is_zero());
        assert!((g.coeff.value().unwrap().re - 1.0).abs() < 1e-15);
        assert!(matches!(
            encode_power_kernel(p(0, 1), p(2, 1), Region::Full),
            Err(Error::Degenerate(_))
        ));
        let g = encode_power_kernel(p(1, 1), p(0, 1), Region::Ball).unwrap();
        assert_eq!(g.coeff.value().unwrap().re, 1.0);
    }

    #[test]
    fn coefficient_cancellation() {
        let a = Param::rat(1, 3) + Param::alpha().half();
        let c = Coeff::gamma(a).times(&Coeff::power(rat(2, 1), Param::alpha()));
        let back = c.times(&c.inverse());
        assert!(back.same(&Coeff::one()), "{back}");
    }

    #[test]
    fn json_round_trip() {
        let g = GSpec::from_blocks(
            vec![Param::one() - Param::dim().half()],
            vec![Param::real(0.25)],
            vec![Param::zero()],
            vec![Param::alpha().half()],
            Coeff::gamma(Param::rat(3, 2)),
        );
        let text = g.to_json().to_string();
        let back = GSpec::parse_json(&text).unwrap();
        assert!(back.same(&g));
        let plain = r#"{"m":1,"n":0,"p":1,"q":1,"a":[[1.5,0.0]],"b":[{"rat":[0,1],"alpha_mult":[0,1],"d_mult":[0,1]}],"coeff":[2.0,0.0]}"#;
        let g = GSpec::parse_json(plain).unwrap();
        assert_eq!(g.coeff.value().unwrap().re, 2.0);
    }
}
