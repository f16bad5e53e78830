//! Fractional Laplacian of `(1 - |x|^2)_+^{alpha/2}` as an exact parameter
//! transform, checked against the closed-form constant.
//!
//! `cargo run --example getoor -- 3 3/2`

use fraclap::gfun::Region;
use fraclap::transform::{getoor_constant, power_ball};
use fraclap::{Param, Result};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let d: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let alpha = Param::parse(&args.next().unwrap_or_else(|| "1".into()))?;

    let t = power_ball(Param::zero(), alpha.half(), d, 0, alpha, Region::Ball)?;
    println!("input:    {}", t.input.profile);
    println!("output:   {}", t.output.profile);
    println!("validity: {}", t.validity);
    println!("expected constant {:.15}", getoor_constant(d, alpha.re()));

    for r in [0.0, 0.3, 0.6, 0.9, 1.5, 3.0] {
        let mut x = vec![0.0; d as usize];
        x[0] = r;
        let v = t.evaluate(&x)?;
        println!("|x| = {r:<4} -> {:.15}{}", v.value.re(), if v.inside { "" } else { "  (outside validity)" });
    }
    Ok(())
}
