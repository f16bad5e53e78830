//! Eigenvalues of the weighted fractional Laplacian on the ball, exact and
//! numeric, and an oracle spot check of one eigenpair.

use fraclap::ballsolve::{basis_fn, weighted_basis_fn, EigenIndex};
use fraclap::oracle::{fraclap_singular, QuadratureConfig};
use fraclap::transform::jacobi_eigenvalue_exact;
use fraclap::{Param, Result};

fn main() -> Result<()> {
    let alpha = Param::int(1);
    for d in 1..=3 {
        println!("d = {d}");
        for l in 0..=1 {
            for n in 0..=3 {
                let idx = EigenIndex::new(d, alpha.re(), l, 1, n)?;
                println!("  l={l} n={n}: {:>12.8} = {}", idx.lambda, jacobi_eigenvalue_exact(n, l, d, alpha));
            }
        }
    }

    let (d, a) = (1, 0.5);
    let idx = EigenIndex::new(d, a, 1, 1, 2)?;
    let f = weighted_basis_fn(d, a, &idx)?;
    let cfg = QuadratureConfig::for_dimension(d);
    for x in [-0.7, 0.2, 0.55] {
        let lhs = fraclap_singular(&f, &[x], a, &cfg)?.re();
        println!("x = {x}: oracle {lhs:.10}, lambda P = {:.10}", idx.lambda * basis_fn(d, a, &idx, &[x])?);
    }
    Ok(())
}
