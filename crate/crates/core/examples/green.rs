//! Green function of the fractional Laplacian on the unit ball, and the
//! harmonic profile it is built from.

use fraclap::transform::{ball_harmonic_profile, green_function_ball, green_function_origin};
use fraclap::Result;

fn main() -> Result<()> {
    let (d, alpha) = (3, 1.5);
    let y = [0.2, 0.0, 0.0];
    for r in [0.1, 0.4, 0.7, 0.95] {
        let x = [0.0, r, 0.0];
        println!(
            "|x| = {r}: G(x, y) = {:.8}, G(x, 0) = {:.8}",
            green_function_ball(&x, &y, d, alpha)?,
            green_function_origin(&x, d, alpha)?
        );
    }
    println!("\nharmonic profile (d = 1, alpha = 1/2):");
    for r in [0.1, 0.5, 0.9, 1.5] {
        println!("  |x| = {r}: {:.10}", ball_harmonic_profile(r, 1.0, 0.5)?);
    }
    Ok(())
}
