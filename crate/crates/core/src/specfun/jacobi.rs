//! Jacobi polynomials.

/// `P_n^{(a,b)}(z)` by the three-term recurrence.
pub fn jacobi_poly(n: usize, a: f64, b: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = a + b;
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) + (ab + 2.0) * (z - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let lhs = 2.0 * k * (k + ab) * (c - 2.0);
        let p2 = ((c - 1.0) * (c * (c - 2.0) * z + a * a - b * b) * p1
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p0)
            / lhs;
        p0 = p1;
        p1 = p2;
    }
    p1
}
