//! Cross-check a symbolic transform with the brute-force quadrature oracle
//! and print the comparison as CSV.

use fraclap::oracle::{compare, OracleOp, QuadratureConfig};
use fraclap::transform::power_fullspace;
use fraclap::{Param, Result};

fn main() -> Result<()> {
    // (-Delta)^{1/2} (1 + |x|^2)^{-3/2} in the plane
    let t = power_fullspace(Param::zero(), Param::rat(-3, 2), 2, 0, Param::int(1))?;
    println!("{}", t.output.profile);

    let points: Vec<Vec<f64>> = vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.6, 0.8], vec![2.0, 1.0]];
    let cfg = QuadratureConfig::for_dimension(2);
    let report = compare(&t, OracleOp::for_result(&t), &points, &cfg);
    print!("{}", report.to_csv());
    println!("all pass: {}", report.all_pass());
    Ok(())
}
