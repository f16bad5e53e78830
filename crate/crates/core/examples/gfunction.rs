//! Build a Meijer G record, classify it and evaluate it along both routes.
//!
//! `cargo run --example gfunction`

use fraclap::gfun::{classify, to_hyp_expansion, GSpec};
use fraclap::specfun::{admissible_strip, default_lambda, meijer_g_contour, meijer_g_series};
use fraclap::{Coeff, Param, Result};

fn main() -> Result<()> {
    // G^{1,1}_{2,2}((0 | 1); (0 | 1/2)): constant inside the unit ball
    let g = GSpec::from_blocks(
        vec![Param::zero()],
        vec![Param::one()],
        vec![Param::zero()],
        vec![Param::rat(1, 2)],
        Coeff::one(),
    );
    let rep = classify(&g)?;
    println!("{g}");
    println!("class {:?}, nu = {}, strip ({}, {})", rep.class, rep.nu.f64(), rep.lambda_under.f64(), rep.lambda_over.f64());

    for term in to_hyp_expansion(&g)? {
        println!("  r^({}) * {}", term.power, term.hyp);
    }

    println!("{:>6} {:>22} {:>22}", "r", "series", "contour");
    for r in [0.25, 0.5, 0.81, 1.44, 4.0] {
        let s = meijer_g_series(&g, r)?;
        let (lo, hi) = admissible_strip(&g, r)?;
        let k = meijer_g_contour(&g, r, default_lambda(lo, hi).unwrap())?;
        println!("{r:>6} {:>22.15e} {:>22.15e}", s.re(), k.re());
    }
    Ok(())
}
