//! Random parameter records shared by the integration suites.
#![allow(dead_code)]

use fraclap::gfun::{classify, validate, ConditionClass, GSpec};
use fraclap::transform::{fraclap_transform, riesz_transform, RadialHarmonicFn};
use fraclap::{Coeff, Param};
use rand::seq::SliceRandom;
use rand::Rng;

/// `(m, n, p, q)` shapes of class A.
pub const SHAPES_A: &[(usize, usize, usize, usize)] =
    &[(1, 0, 0, 1), (2, 0, 0, 2), (1, 1, 1, 1), (1, 1, 1, 2), (2, 1, 1, 2), (2, 0, 1, 2), (1, 1, 2, 1), (2, 1, 2, 2)];

/// `(m, n, p, q)` shapes of class B (`p = q`, `p + q = 2(m + n)`).
pub const SHAPES_B: &[(usize, usize, usize, usize)] = &[(1, 0, 1, 1), (0, 1, 1, 1), (1, 1, 2, 2), (2, 0, 2, 2), (2, 1, 3, 3)];

fn random_param(rng: &mut impl Rng) -> Param {
    let den = *[5i64, 7, 9, 11].choose(rng).unwrap();
    Param::rat(rng.gen_range(-den..3 * den), den)
}

fn clustered(v: &[Param]) -> bool {
    v.iter().enumerate().any(|(i, x)| v[i + 1..].iter().any(|y| x.integer_offset(y).is_some()))
}

/// A legal spec of the given shape with exact rational parameters, no
/// integer-spaced first `b` block and a non-empty contour strip.
pub fn spec_of_shape(rng: &mut impl Rng, (m, n, p, q): (usize, usize, usize, usize)) -> GSpec {
    loop {
        let a: Vec<Param> = (0..p).map(|_| random_param(rng)).collect();
        let b: Vec<Param> = (0..q).map(|_| random_param(rng)).collect();
        let g = GSpec { m, n, p, q, a, b, coeff: Coeff::one() };
        if !validate(&g).is_empty() || clustered(g.b_first()) || clustered(g.a_first()) {
            continue;
        }
        let rep = classify(&g).unwrap();
        if rep.cond_s && rep.has_contour() {
            return g;
        }
    }
}

pub fn random_spec(rng: &mut impl Rng, classes: &[ConditionClass]) -> GSpec {
    let class = *classes.choose(rng).unwrap();
    let shapes = match class {
        ConditionClass::A => SHAPES_A,
        _ => SHAPES_B,
    };
    let shape = *shapes.choose(rng).unwrap();
    spec_of_shape(rng, shape)
}

/// A radius away from `r = 1`, where class-B series converge slowly.
pub fn random_radius(rng: &mut impl Rng) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(0.05..0.8)
    } else {
        rng.gen_range(1.25..4.0)
    }
}

/// A random function `V(x) G(|x|^2)` and an order `0 < alpha < d` for which
/// the Riesz potential and the fractional Laplacian of the result are both
/// covered by the transform theorems.
pub fn admissible_pair(rng: &mut impl Rng) -> (RadialHarmonicFn, Param) {
    loop {
        let g = random_spec(rng, &[ConditionClass::A, ConditionClass::B]);
        let d = rng.gen_range(1..=3u32);
        let l = if d == 1 { rng.gen_range(0..=1) } else { rng.gen_range(0..=2) };
        let alpha = Param::rat(rng.gen_range(1..4 * d as i64), 4);
        let Ok(f) = RadialHarmonicFn::with_degree(d, l, g) else { continue };
        let Ok(up) = riesz_transform(&f, alpha) else { continue };
        if fraclap_transform(&up.output, alpha).is_ok() {
            return (f, alpha);
        }
    }
}
