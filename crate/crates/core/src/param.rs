//! Exact parameter arithmetic.
//!
//! Parameters of G-functions are kept as exact rationals affine in the
//! symbols `alpha` and `d` whenever the inputs allow it, and fall back to
//! floating complex numbers otherwise. The structural identities (shift,
//! reduction, integer swaps) then compare parameters exactly instead of up
//! to rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = Ratio<i64>;

/// Absolute tolerance used whenever at least one side is floating.
pub const FLOAT_TOL: f64 = 1e-12;

/// `rat + alpha_mult * alpha + d_mult * d` with rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub rat: Rat,
    pub alpha_mult: Rat,
    pub d_mult: Rat,
}

impl Affine {
    pub fn constant(rat: Rat) -> Self {
        Affine {
            rat,
            alpha_mult: Rat::zero(),
            d_mult: Rat::zero(),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.alpha_mult.is_zero() && self.d_mult.is_zero()
    }
}

/// A G-function or hypergeometric parameter.
#[derive(Clone, Copy, Debug)]
pub enum Param {
    Exact(Affine),
    Float(Complex64),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Param {
    pub fn int(n: i64) -> Self {
        Param::Exact(Affine::constant(Rat::from_integer(n)))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Param::Exact(Affine::constant(Rat::new(n, d)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Param::Exact(Affine::constant(r))
    }

    pub fn zero() -> Self {
        Param::int(0)
    }

    pub fn one() -> Self {
        Param::int(1)
    }

    /// A real floating parameter. Values that are exactly small dyadic or
    /// decimal rationals are still floating here; use [`Param::parse`] or
    /// [`Param::rat`] for exact input.
    pub fn real(x: f64) -> Self {
        Param::Float(Complex64::new(x, 0.0))
    }

    pub fn complex(z: Complex64) -> Self {
        Param::Float(z)
    }

    /// The symbol `alpha`.
    pub fn alpha() -> Self {
        Param::Exact(Affine {
            rat: Rat::zero(),
            alpha_mult: Rat::one(),
            d_mult: Rat::zero(),
        })
    }

    /// The symbol `d`.
    pub fn dim() -> Self {
        Param::Exact(Affine {
            rat: Rat::zero(),
            alpha_mult: Rat::zero(),
            d_mult: Rat::one(),
        })
    }

    /// Parses `"3/2"`, `"-2"`, `"0.25"` exactly; anything else that parses
    /// as `f64` becomes a floating parameter.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rational '{s}'")))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad rational '{s}'")))?;
            if d == 0 {
                return Err(Error::Invalid(format!("zero denominator in '{s}'")));
            }
            return Ok(Param::rat(n, d));
        }
        if let Some(r) = parse_decimal(s) {
            return Ok(Param::from_rat(r));
        }
        s.parse::<f64>()
            .map(Param::real)
            .map_err(|_| Error::Invalid(format!("bad number '{s}'")))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Param::Exact(_))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Param::Exact(a) => a.is_closed(),
            Param::Float(_) => true,
        }
    }

    pub fn exact_rat(&self) -> Option<Rat> {
        match self {
            Param::Exact(a) if a.is_closed() => Some(a.rat),
            _ => None,
        }
    }

    pub fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::UnboundSymbol(self.to_string()))
        }
    }

    /// Numeric value. Unbound symbols evaluate to NaN; callers check
    /// [`Param::is_closed`] first.
    pub fn c64(&self) -> Complex64 {
        match self {
            Param::Exact(a) if a.is_closed() => Complex64::new(rat_to_f64(a.rat), 0.0),
            Param::Exact(_) => Complex64::new(f64::NAN, f64::NAN),
            Param::Float(z) => *z,
        }
    }

    pub fn re(&self) -> f64 {
        self.c64().re
    }

    pub fn is_real(&self) -> bool {
        match self {
            Param::Exact(_) => true,
            Param::Float(z) => z.im == 0.0,
        }
    }

    /// Real part as an exact-or-float number.
    pub fn re_num(&self) -> Num {
        match self {
            Param::Exact(a) if a.is_closed() => Num::Exact(a.rat),
            _ => Num::Float(self.re()),
        }
    }

    /// Substitutes concrete values for `alpha` and `d`.
    pub fn bind(&self, alpha: Param, d: u32) -> Param {
        match self {
            Param::Exact(a) if a.is_closed() => *self,
            Param::Exact(a) => {
                let base = Param::from_rat(a.rat) + Param::from_rat(a.d_mult * Rat::from_integer(d as i64));
                base + alpha.scale(a.alpha_mult)
            }
            Param::Float(_) => *self,
        }
    }

    pub fn scale(&self, k: Rat) -> Param {
        match self {
            Param::Exact(a) => Param::Exact(Affine {
                rat: a.rat * k,
                alpha_mult: a.alpha_mult * k,
                d_mult: a.d_mult * k,
            }),
            Param::Float(z) => Param::Float(z * rat_to_f64(k)),
        }
    }

    pub fn half(&self) -> Param {
        self.scale(rat(1, 2))
    }

    /// Equality used by the reduction rules: exact when both sides are
    /// exact, absolute tolerance [`FLOAT_TOL`] otherwise.
    pub fn matches(&self, other: &Param) -> bool {
        match (self, other) {
            (Param::Exact(a), Param::Exact(b)) => a == b,
            _ => {
                if !self.is_closed() || !other.is_closed() {
                    return false;
                }
                (self.c64() - other.c64()).norm() <= FLOAT_TOL
            }
        }
    }

    /// If `other - self` is an integer, returns it.
    pub fn integer_offset(&self, other: &Param) -> Option<i64> {
        match (self, other) {
            (Param::Exact(a), Param::Exact(b)) => {
                let d = *b - *a;
                if d.is_closed() && d.rat.is_integer() {
                    Some(d.rat.to_integer())
                } else {
                    None
                }
            }
            _ => {
                if !self.is_closed() || !other.is_closed() {
                    return None;
                }
                let d = other.c64() - self.c64();
                let k = d.re.round();
                if (d.re - k).abs() <= FLOAT_TOL && d.im.abs() <= FLOAT_TOL {
                    k.to_i64()
                } else {
                    None
                }
            }
        }
    }

    /// Integer value, if the parameter is (exactly or within tolerance) one.
    pub fn as_integer(&self) -> Option<i64> {
        Param::zero().integer_offset(self)
    }

    pub fn is_nonpositive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(k) if k <= 0)
    }

    pub fn is_positive_integer(&self) -> bool {
        matches!(self.as_integer(), Some(k) if k > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.as_integer() == Some(0)
    }

    /// Canonical sort key used to compare parameter multisets.
    fn sort_key(&self) -> (u8, f64, f64, f64, f64) {
        match self {
            Param::Exact(a) => (
                0,
                rat_to_f64(a.rat),
                rat_to_f64(a.alpha_mult),
                rat_to_f64(a.d_mult),
                0.0,
            ),
            Param::Float(z) => (1, z.re, z.im, 0.0, 0.0),
        }
    }
}

impl PartialEq for Param {
    fn eq(&self, other: &Self) -> bool {
        self.matches(other)
    }
}

impl std::ops::Sub for Affine {
    type Output = Affine;
    fn sub(self, o: Affine) -> Affine {
        Affine {
            rat: self.rat - o.rat,
            alpha_mult: self.alpha_mult - o.alpha_mult,
            d_mult: self.d_mult - o.d_mult,
        }
    }
}

impl Add for Param {
    type Output = Param;
    fn add(self, o: Param) -> Param {
        match (self, o) {
            (Param::Exact(a), Param::Exact(b)) => Param::Exact(Affine {
                rat: a.rat + b.rat,
                alpha_mult: a.alpha_mult + b.alpha_mult,
                d_mult: a.d_mult + b.d_mult,
            }),
            (a, b) => Param::Float(a.c64() + b.c64()),
        }
    }
}

impl Sub for Param {
    type Output = Param;
    fn sub(self, o: Param) -> Param {
        self + (-o)
    }
}

impl Neg for Param {
    type Output = Param;
    fn neg(self) -> Param {
        self.scale(-Rat::one())
    }
}

impl Add<Rat> for Param {
    type Output = Param;
    fn add(self, o: Rat) -> Param {
        self + Param::from_rat(o)
    }
}

impl Sub<Rat> for Param {
    type Output = Param;
    fn sub(self, o: Rat) -> Param {
        self + Param::from_rat(-o)
    }
}

impl Add<i64> for Param {
    type Output = Param;
    fn add(self, o: i64) -> Param {
        self + Param::int(o)
    }
}

impl Sub<i64> for Param {
    type Output = Param;
    fn sub(self, o: i64) -> Param {
        self + Param::int(-o)
    }
}

impl Mul<Rat> for Param {
    type Output = Param;
    fn mul(self, k: Rat) -> Param {
        self.scale(k)
    }
}

impl From<i64> for Param {
    fn from(n: i64) -> Self {
        Param::int(n)
    }
}

impl From<Rat> for Param {
    fn from(r: Rat) -> Self {
        Param::from_rat(r)
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::real(x)
    }
}

fn fmt_rat(r: Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(a) => {
                let mut parts = Vec::new();
                if !a.rat.is_zero() || a.is_closed() {
                    parts.push(fmt_rat(a.rat));
                }
                for (k, sym) in [(a.alpha_mult, "alpha"), (a.d_mult, "d")] {
                    if k.is_zero() {
                        continue;
                    }
                    let mag = k.abs();
                    let body = if mag.is_one() {
                        sym.to_string()
                    } else {
                        format!("{}*{}", fmt_rat(mag), sym)
                    };
                    if parts.is_empty() {
                        parts.push(if k.is_negative() { format!("-{body}") } else { body });
                    } else {
                        parts.push(format!("{} {}", if k.is_negative() { "-" } else { "+" }, body));
                    }
                }
                write!(f, "{}", parts.join(" "))
            }
            Param::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Param::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if frac_part.contains('.') || frac_part.len() > 15 || int_part.len() > 15 {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() {
        return None;
    }
    let num: i64 = digits.parse().ok()?;
    let den = 10i64.checked_pow(frac_part.len() as u32)?;
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

/// Sorts a parameter slice into the canonical multiset order.
pub fn canonical_order(v: &[Param]) -> Vec<Param> {
    let mut out = v.to_vec();
    out.sort_by(|x, y| {
        x.sort_key()
            .partial_cmp(&y.sort_key())
            .unwrap_or(Ordering::Equal)
    });
    out
}

/// Multiset equality under [`Param::matches`].
pub fn same_multiset(x: &[Param], y: &[Param]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let mut used = vec![false; y.len()];
    'outer: for a in x {
        for (j, b) in y.iter().enumerate() {
            if !used[j] && a.matches(b) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A real number that stays exact while its inputs are exact.
#[derive(Clone, Copy, Debug)]
pub enum Num {
    Exact(Rat),
    Float(f64),
}

impl Num {
    pub fn f64(&self) -> f64 {
        match self {
            Num::Exact(r) => rat_to_f64(*r),
            Num::Float(x) => *x,
        }
    }

    pub fn int(n: i64) -> Num {
        Num::Exact(Rat::from_integer(n))
    }

    fn lift2(self, o: Num, fr: impl Fn(Rat, Rat) -> Rat, ff: impl Fn(f64, f64) -> f64) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(fr(a, b)),
            (a, b) => Num::Float(ff(a.f64(), b.f64())),
        }
    }

    pub fn div(self, o: Num) -> Num {
        self.lift2(o, |a, b| a / b, |a, b| a / b)
    }

    /// `self > other` with tolerance 0 for exact operands and
    /// [`FLOAT_TOL`] otherwise.
    pub fn gt(&self, other: &Num) -> bool {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => a > b,
            (a, b) => a.f64() > b.f64() + FLOAT_TOL,
        }
    }

    pub fn lt(&self, other: &Num) -> bool {
        other.gt(self)
    }
}

impl Add for Num {
    type Output = Num;
    fn add(self, o: Num) -> Num {
        self.lift2(o, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Num {
    type Output = Num;
    fn sub(self, o: Num) -> Num {
        self.lift2(o, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for Num {
    type Output = Num;
    fn mul(self, o: Num) -> Num {
        self.lift2(o, |a, b| a * b, |a, b| a * b)
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Exact(a) => Num::Exact(-a),
            Num::Float(x) => Num::Float(-x),
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{}", fmt_rat(*r)),
            Num::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Extended real line.
#[derive(Clone, Copy, Debug)]
pub enum Ext {
    NegInf,
    Fin(Num),
    PosInf,
}

impl Ext {
    pub fn f64(&self) -> f64 {
        match self {
            Ext::NegInf => f64::NEG_INFINITY,
            Ext::Fin(x) => x.f64(),
            Ext::PosInf => f64::INFINITY,
        }
    }

    pub fn neg(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(x) => Ext::Fin(-x),
        }
    }

    pub fn add_num(self, k: Num) -> Ext {
        match self {
            Ext::Fin(x) => Ext::Fin(x + k),
            other => other,
        }
    }

    pub fn scale_pos(self, k: Num) -> Ext {
        match self {
            Ext::Fin(x) => Ext::Fin(x * k),
            other => other,
        }
    }

    /// Strict comparison with the same tolerance rules as [`Num::gt`].
    pub fn gt(&self, other: &Ext) -> bool {
        match (self, other) {
            (Ext::PosInf, Ext::PosInf) | (Ext::NegInf, Ext::NegInf) => false,
            (Ext::PosInf, _) | (_, Ext::NegInf) => true,
            (_, Ext::PosInf) | (Ext::NegInf, _) => false,
            (Ext::Fin(a), Ext::Fin(b)) => a.gt(b),
        }
    }

    pub fn lt(&self, other: &Ext) -> bool {
        other.gt(self)
    }

    pub fn max(self, o: Ext) -> Ext {
        if o.gt(&self) {
            o
        } else {
            self
        }
    }

    pub fn min(self, o: Ext) -> Ext {
        if o.lt(&self) {
            o
        } else {
            self
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "+inf"),
            Ext::Fin(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals_and_decimals() {
        assert_eq!(Param::parse("3/2").unwrap().exact_rat(), Some(rat(3, 2)));
        assert_eq!(Param::parse("-0.25").unwrap().exact_rat(), Some(rat(-1, 4)));
        assert_eq!(Param::parse("7").unwrap().exact_rat(), Some(rat(7, 1)));
        assert!(!Param::parse("1e-3").unwrap().is_exact());
        assert!(Param::parse("abc").is_err());
        assert!(Param::parse("1/0").is_err());
    }

    #[test]
    fn symbolic_alpha_cancels_exactly() {
        let a = Param::rat(3, 2) - Param::alpha().half();
        let back = a + Param::alpha().half();
        assert!(back.matches(&Param::rat(3, 2)));
        assert!(back.is_closed());
        assert!(!a.is_closed());
        let bound = a.bind(Param::rat(1, 3), 1);
        assert_eq!(bound.exact_rat(), Some(rat(4, 3)));
    }

    #[test]
    fn integer_offsets() {
        let c = Param::rat(1, 2) - Param::dim().half();
        assert_eq!(c.integer_offset(&(c + 3)), Some(3));
        assert_eq!(Param::rat(1, 2).integer_offset(&Param::rat(1, 3)), None);
        assert_eq!(Param::real(0.5).integer_offset(&Param::rat(5, 2)), Some(2));
    }

    #[test]
    fn num_comparisons_are_strict() {
        let a = Num::Exact(rat(1, 3));
        assert!(!a.gt(&Num::Exact(rat(1, 3))));
        assert!(a.gt(&Num::Exact(rat(1, 4))));
        assert!(!Num::Float(1.0 / 3.0).gt(&a));
        assert!(Ext::PosInf.gt(&Ext::Fin(a)));
        assert!(!Ext::NegInf.gt(&Ext::NegInf));
    }

    #[test]
    fn display_affine() {
        let p = Param::int(1) - Param::dim().half() - Param::alpha().half();
        assert_eq!(p.to_string(), "1 - 1/2*alpha - 1/2*d");
        assert_eq!(Param::alpha().to_string(), "alpha");
    }
}
