//! `cos x` is an eigenfunction of the one-dimensional fractional Laplacian;
//! the hypergeometric transform sees this as a cancellation of parameters.

use std::f64::consts::PI;

use fraclap::oracle::{fraclap_hypersingular, fraclap_singular, Decay, PointwiseFn, QuadratureConfig};
use fraclap::transform::{cosine_spec, hyp_transform};
use fraclap::{Param, Result};

fn main() -> Result<()> {
    let f = PointwiseFn::new(1, Decay::Oscillatory { period: 2.0 * PI, power: 0.0 }, |x| x[0].cos());
    let cfg = QuadratureConfig::for_dimension(1);
    println!("cos|x| = {}", cosine_spec());

    for alpha in [Param::rat(1, 2), Param::int(1), Param::rat(5, 2)] {
        let h = hyp_transform(&cosine_spec(), 1, 0, alpha)?;
        println!("\nalpha = {alpha}: {}  (unchanged: {})", h.output, h.output.same(&cosine_spec()));
        for x in [0.0, 0.3, 1.0] {
            let q = if alpha.re() < 2.0 {
                fraclap_singular(&f, &[x], alpha.re(), &cfg)?
            } else {
                fraclap_hypersingular(&f, &[x], alpha.re(), 4, &cfg)?
            };
            println!("  x = {x}: quadrature {:.10} (+- {:.1e}), cos x = {:.10}", q.re(), q.est_abs_error, f64::cos(x));
        }
    }
    Ok(())
}
