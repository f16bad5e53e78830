//! `I_1 I_1 f = I_2 f` in three dimensions: nested Riesz quadrature
//! against a single one and the closed form. Takes a few seconds per point.

use fraclap::gfun::{encode_power_kernel, Region};
use fraclap::oracle::{nested_riesz, riesz_quadrature, Decay, PointwiseFn, QuadratureConfig};
use fraclap::transform::{riesz_transform, RadialHarmonicFn};
use fraclap::{Param, Result};

fn main() -> Result<()> {
    let d = 3;
    let f = PointwiseFn::radial(d, Decay::Compact(1.0), |r| (1.0 - r * r).max(0.0).powi(3));
    let profile = encode_power_kernel(Param::zero(), Param::int(3), Region::Ball)?;
    let closed = riesz_transform(&RadialHarmonicFn::radial(d, profile), Param::int(2))?;

    let points = vec![vec![0.5, 0.0, 0.0], vec![0.0, 1.2, 0.9]];
    let cfg = QuadratureConfig::for_dimension(d);
    let nested = nested_riesz(&f, 1.0, 1.0, &points, 24, &cfg)?;
    for (x, n) in points.iter().zip(&nested) {
        let single = riesz_quadrature(&f, x, 2.0, &cfg)?.re();
        let exact = closed.evaluate(x)?.value.re();
        println!("x = {x:?}: nested {:.10}, single {single:.10}, closed form {exact:.10}", n.re());
    }
    Ok(())
}
