//! Solid harmonic polynomials in dimensions 1–3.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Polynomial in up to three variables, `exponents -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    pub d: u32,
    pub terms: BTreeMap<[u32; 3], f64>,
}

impl Poly {
    pub fn zero(d: u32) -> Poly {
        Poly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: u32, c: f64) -> Poly {
        let mut p = Poly::zero(d);
        p.add_term([0, 0, 0], c);
        p
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(d: u32, i: usize) -> Poly {
        let mut e = [0; 3];
        e[i] = 1;
        let mut p = Poly::zero(d);
        p.add_term(e, 1.0);
        p
    }

    pub fn add_term(&mut self, e: [u32; 3], c: f64) {
        if c == 0.0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0.0);
        *slot += c;
        if *slot == 0.0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly {
            d: self.d,
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).filter(|(_, c)| *c != 0.0).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.d.max(o.d));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.d, 1.0), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = *c;
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        v *= x[i].powi(k as i32);
                    }
                }
                v
            })
            .sum()
    }

    pub fn laplacian(&self) -> Poly {
        let mut out = Poly::zero(self.d);
        for (e, c) in &self.terms {
            for i in 0..3 {
                if e[i] >= 2 {
                    let mut f = *e;
                    f[i] -= 2;
                    out.add_term(f, c * (e[i] * (e[i] - 1)) as f64);
                }
            }
        }
        out
    }

    /// Every monomial has total degree `l`.
    pub fn is_homogeneous(&self, l: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == l)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// A surface-orthonormal basis of solid harmonics of degree `l` in `R^d`.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    pub d: u32,
    pub l: u32,
    pub polys: Vec<Poly>,
}

impl HarmonicBasis {
    pub fn size(&self) -> usize {
        self.polys.len()
    }
}

fn binom(n: i64, k: i64) -> f64 {
    if k < 0 || n < 0 || k > n {
        return 0.0;
    }
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v.round()
}

fn fact(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Dimension `M_{d,l}` of the space of degree-`l` solid harmonics in `R^d`.
pub fn harmonic_dim(d: u32, l: u32) -> usize {
    if d == 1 {
        return usize::from(l <= 1);
    }
    let (d, l) = (d as i64, l as i64);
    (binom(d + l - 1, l) - binom(d + l - 3, l - 2)) as usize
}

/// Real and imaginary parts of `(x + i y)^m`.
fn complex_power(d: u32, m: u32) -> (Poly, Poly) {
    let mut re = Poly::zero(d);
    let mut im = Poly::zero(d);
    for j in 0..=m {
        let c = binom(m as i64, j as i64);
        let e = [m - j, j, 0];
        match j % 4 {
            0 => re.add_term(e, c),
            1 => im.add_term(e, c),
            2 => re.add_term(e, -c),
            _ => im.add_term(e, -c),
        }
    }
    (re, im)
}

/// `r^l P_l^m(z / r)` without the `(x + i y)^m` factor.
fn legendre_part(l: u32, m: u32) -> Poly {
    let r2 = Poly::var(3, 0).pow(2).add(&Poly::var(3, 1).pow(2)).add(&Poly::var(3, 2).pow(2));
    let mut out = Poly::zero(3);
    let mut k = 0;
    while 2 * k + m <= l {
        let c = (-1f64).powi(k as i32) * fact(2 * l - 2 * k)
            / (2f64.powi(l as i32) * fact(k) * fact(l - k) * fact(l - 2 * k - m));
        let term = Poly::var(3, 2).pow(l - 2 * k - m).mul(&r2.pow(k)).scale(c);
        out = out.add(&term);
        k += 1;
    }
    out
}

/// Explicit orthonormal basis (w.r.t. surface measure on `S^{d-1}`).
pub fn harmonic_basis(d: u32, l: u32) -> Result<HarmonicBasis> {
    let polys = match d {
        1 => match l {
            0 => vec![Poly::constant(1, 1.0 / 2f64.sqrt())],
            1 => vec![Poly::var(1, 0).scale(1.0 / 2f64.sqrt())],
            _ => vec![],
        },
        2 => {
            if l == 0 {
                vec![Poly::constant(2, 1.0 / (2.0 * PI).sqrt())]
            } else {
                let (re, im) = complex_power(2, l);
                let k = 1.0 / PI.sqrt();
                vec![re.scale(k), im.scale(k)]
            }
        }
        3 => {
            let mut v = Vec::new();
            for m in 0..=l {
                let base = ((2 * l + 1) as f64 / (4.0 * PI) * fact(l - m) / fact(l + m)).sqrt();
                let leg = legendre_part(l, m);
                if m == 0 {
                    v.push(leg.scale(base));
                } else {
                    let (re, im) = complex_power(3, m);
                    let k = base * 2f64.sqrt();
                    v.push(re.mul(&leg).scale(k));
                    v.push(im.mul(&leg).scale(k));
                }
            }
            v
        }
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(HarmonicBasis { d, l, polys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature::sphere_rule;

    #[test]
    fn dimensions() {
        assert_eq!(harmonic_dim(3, 2), 5);
        assert_eq!(harmonic_dim(2, 3), 2);
        assert_eq!(harmonic_dim(2, 0), 1);
        assert_eq!(harmonic_dim(1, 0), 1);
        assert_eq!(harmonic_dim(1, 1), 1);
        assert_eq!(harmonic_dim(1, 2), 0);
        for d in 1..=3 {
            for l in 0..6 {
                assert_eq!(harmonic_basis(d, l).unwrap().size(), harmonic_dim(d, l));
            }
        }
        assert!(matches!(harmonic_basis(4, 0), Err(Error::UnsupportedDimension(4))));
    }

    #[test]
    fn harmonic_and_homogeneous() {
        for d in 1..=3 {
            for l in 0..6 {
                for p in harmonic_basis(d, l).unwrap().polys {
                    assert!(p.is_homogeneous(l));
                    assert!(p.laplacian().max_abs_coeff() < 1e-12 * p.max_abs_coeff().max(1.0));
                }
            }
        }
    }

    #[test]
    fn orthonormal_on_sphere() {
        for d in 1..=3 {
            let rule = sphere_rule(d, 24);
            let mut all = Vec::new();
            for l in 0..5 {
                all.extend(harmonic_basis(d, l).unwrap().polys);
            }
            for (i, p) in all.iter().enumerate() {
                for (j, q) in all.iter().enumerate() {
                    let ip: f64 = rule.iter().map(|(x, w)| w * p.eval(x) * q.eval(x)).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - want).abs() < 1e-10, "d={d} ({i},{j}): {ip}");
                }
            }
        }
    }

    #[test]
    fn d1_constant() {
        let b = harmonic_basis(1, 0).unwrap();
        assert!((b.polys[0].eval(&[0.3]) - 1.0 / 2f64.sqrt()).abs() < 1e-16);
    }
}
