//! Solve `(-Delta)^{alpha/2} (w u) = g` on the unit disc with the
//! Jacobi-harmonic basis and check the residual with the oracle.

use fraclap::ballsolve::{evaluate_solution, solve};
use fraclap::oracle::{fraclap_singular, Decay, PointwiseFn, QuadratureConfig};
use fraclap::Result;

fn main() -> Result<()> {
    let (d, alpha) = (2, 0.75);
    // a right-hand side with an l = 1 component
    let rhs = |x: &[f64]| 1.0 + x[0] - 2.0 * x[1] * x[1];
    let g = PointwiseFn::new(d, Decay::Compact(1.0), rhs);
    let e = solve(&g, d, alpha, 2, 12)?;

    println!("largest coefficients:");
    let mut terms = e.terms.clone();
    terms.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    for (i, c) in terms.iter().take(6) {
        println!("  l={} m={} n={:<2} coeff {c:+.6e}  lambda {:.6}", i.l, i.m, i.n, i.lambda);
    }

    let wu = e.weighted_fn()?;
    let cfg = QuadratureConfig::for_dimension(d);
    for x in [[0.0, 0.0], [0.4, -0.3], [-0.2, 0.7]] {
        let lhs = fraclap_singular(&wu, &x, alpha, &cfg)?.re();
        println!(
            "x = {x:?}: w u = {:.6}, residual {:.2e}",
            evaluate_solution(&e, &x, true)?,
            (lhs - rhs(&x)).abs()
        );
    }
    Ok(())
}
