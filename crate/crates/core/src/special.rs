//! Special functions: exact harmonic numbers, a general-argument digamma,
//! and Gauss-Legendre quadrature nodes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Euler-Mascheroni constant.
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Exact `n`-th harmonic number `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += BigRational::new(BigInt::from(1), BigInt::from(k));
    }
    acc
}

/// Exact harmonic numbers `H_0, H_1, ..., H_max` in one pass.
pub fn harmonic_table(max: u64) -> Vec<BigRational> {
    let mut table = Vec::with_capacity(max as usize + 1);
    let mut acc = BigRational::zero();
    table.push(acc.clone());
    for k in 1..=max {
        acc += BigRational::new(BigInt::from(1), BigInt::from(k));
        table.push(acc.clone());
    }
    table
}

/// Digamma function for general real arguments.
///
/// Uses the reflection formula for negative arguments, the recurrence
/// `psi(x) = psi(x+1) - 1/x` to shift small arguments upward, and the
/// asymptotic series beyond the shift point.  Accurate to roughly 1e-14
/// over the ranges used here.
pub fn digamma(x: f64) -> f64 {
    const SHIFT: f64 = 12.0;
    const NEG_GAMMA: f64 = -EULER_MASCHERONI;
    const ZETA2: f64 = 1.644_934_066_848_226_4;
    const SMALL: f64 = 1e-6;
    const S3: f64 = 1.0 / 12.0;
    const S4: f64 = 1.0 / 120.0;
    const S5: f64 = 1.0 / 252.0;
    const S6: f64 = 1.0 / 240.0;
    const S7: f64 = 1.0 / 132.0;

    if x.is_nan() || x == f64::NEG_INFINITY {
        return f64::NAN;
    }
    if x <= 0.0 && x.floor() == x {
        return f64::NEG_INFINITY;
    }
    if x < 0.0 {
        return digamma(1.0 - x) + std::f64::consts::PI / (-std::f64::consts::PI * x).tan();
    }
    if x <= SMALL {
        return NEG_GAMMA - 1.0 / x + ZETA2 * x;
    }

    let mut result = 0.0;
    let mut z = x;
    while z < SHIFT {
        result -= 1.0 / z;
        z += 1.0;
    }
    let mut r = 1.0 / z;
    result += z.ln() - 0.5 * r;
    r *= r;
    result -= r * (S3 - r * (S4 - r * (S5 - r * (S6 - r * S7))));
    result
}

/// Nodes and weights of the 200-point Gauss-Legendre rule on `[0, 1]`.
///
/// Computed once by Newton iteration on the Legendre recurrence and cached.
pub fn gauss_legendre_unit() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(200))
}

fn gauss_legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess for the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map from [-1, 1] to [0, 1].
        rule.push(((x + 1.0) * 0.5, w * 0.5));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
