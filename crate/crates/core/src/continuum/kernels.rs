//! Transition densities of Brownian motion, killed Brownian motion, the
//! Bessel-3 process and the Pitman transform of Brownian motion with drift.

use std::f64::consts::PI;

/// Heat kernel `p_t(x) = (2πt)^{-1/2} exp(-x²/2t)`.
pub fn heat_p(t: f64, x: f64) -> f64 {
    (-x * x / (2.0 * t)).exp() / (2.0 * PI * t).sqrt()
}

/// Density of Brownian motion from `x > 0` killed on hitting 0:
/// `p_t(y - x) - p_t(y + x)`.
pub fn killed_p(t: f64, x: f64, y: f64) -> f64 {
    heat_p(t, y - x) - heat_p(t, y + x)
}

/// Density of the hitting time of 0 from `x`: `g_t(x) = (x/t) p_t(x)`.
pub fn hit_g(t: f64, x: f64) -> f64 {
    x / t * heat_p(t, x)
}

/// Bessel-3 transition density `r_t(x,y) = (y/x) p*_t(x,y)`, with
/// `r_t(0,y) = 2y g_t(y)`.
pub fn bessel_r(t: f64, x: f64, y: f64) -> f64 {
    if y < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        2.0 * y * hit_g(t, y)
    } else {
        y / x * killed_p(t, x, y)
    }
}

/// `h(x) = sinh(x)/x`, with `h(0) = 1`.
pub fn h(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Transition density of the Pitman transform of Brownian motion with drift
/// `-θ`: `e^{-tθ²/2} r_t(x,y) h(yθ)/h(xθ)`.
pub fn pitman_q(theta: f64, t: f64, x: f64, y: f64) -> f64 {
    (-t * theta * theta / 2.0).exp() * bessel_r(t, x, y) * h(y * theta) / h(x * theta)
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let step = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * step) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * step / 3.0
}
