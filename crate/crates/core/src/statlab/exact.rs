//! Exact finite-size laws: bridge endpoints and windows, first-passage times
//! of simple random walk, local limit approximations, and Galton–Watson
//! tree sizes.

use num_bigint::BigUint;
use statrs::function::factorial::ln_binomial;
use std::f64::consts::{LN_2, PI};

/// `P(b(σ) = -k)` for a uniform bridge of length `σ`:
/// `½ · (2σ-k-1)!/(2σ-1)! · σ!/(σ-k)!`.
pub fn bridge_endpoint_pmf(sigma: u64, k: u64) -> f64 {
    if sigma == 0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if k > sigma {
        return 0.0;
    }
    let mut p = 0.5;
    for i in 0..k {
        p *= (sigma - i) as f64 / (2 * sigma - 1 - i) as f64;
    }
    p
}

/// `ln P(S_k = j)` for simple random walk, `-∞` off the support.
pub fn srw_ln_pmf(k: u64, j: i64) -> f64 {
    let a = j.unsigned_abs();
    if a > k || (k + a) % 2 == 1 {
        return f64::NEG_INFINITY;
    }
    ln_binomial(k, (k + a) / 2) - k as f64 * LN_2
}

/// `P(S_k = j)` for simple random walk.
pub fn srw_pmf(k: u64, j: i64) -> f64 {
    srw_ln_pmf(k, j).exp()
}

/// First-passage probability `P(T_j = k) = (|j|/k) P(S_k = j)`.
pub fn kemperman_pmf(j: i64, k: u64) -> f64 {
    if k == 0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    j.unsigned_abs() as f64 / k as f64 * srw_pmf(k, j)
}

/// Number of ±1 paths of length `k` that first reach `j ≠ 0` at step `k`,
/// `(|j|/k) C(k, (k+j)/2)`, in exact arithmetic.
pub fn kemperman_count(j: i64, k: u64) -> BigUint {
    let a = j.unsigned_abs();
    if k == 0 || a == 0 || a > k || (k + a) % 2 == 1 {
        return BigUint::from(0u8);
    }
    crate::encoding::count::binomial(k, (k + a) / 2) * a / k
}

/// Local limit approximation `p̄(k,j) = 2/sqrt(2πk) · exp(-j²/2k)`, with
/// `p̄(0,j) = δ_0(j)`. It ignores parity.
pub fn local_clt(k: u64, j: i64) -> f64 {
    if k == 0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    let k = k as f64;
    2.0 / (2.0 * PI * k).sqrt() * (-(j * j) as f64 / (2.0 * k)).exp()
}

/// The large-deviation local approximation of `P(S_m = x)` for `x ≪ m`:
/// `sqrt(2/(πm)) exp(-Σ_ℓ x^{2ℓ} / (2ℓ(2ℓ-1) m^{2ℓ-1}))`, summed until the
/// terms are negligible.
pub fn benes_pmf(m: u64, x: i64) -> f64 {
    if (m as i64 + x) % 2 != 0 {
        return 0.0;
    }
    let (mf, xf) = (m as f64, x as f64);
    let r2 = (xf / mf).powi(2);
    let mut term = xf * xf / mf;
    let mut sum = 0.0;
    for l in 1..10_000 {
        let l = l as f64;
        let t = term / (2.0 * l * (2.0 * l - 1.0));
        sum += t;
        if t.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
        term *= r2;
    }
    (2.0 / (PI * mf)).sqrt() * (-sum).exp()
}

/// `ln P_GW(|τ| = k) = ln(Cat(k) · ½ · 4^{-k})` for the critical geometric
/// Galton–Watson tree.
pub fn gw_size_ln_pmf(k: u64) -> f64 {
    ln_binomial(2 * k, k) - ((k + 1) as f64).ln() - LN_2 - 2.0 * k as f64 * LN_2
}

/// `P_GW(|τ| ≥ s)`.
pub fn gw_size_tail(s: u64) -> f64 {
    1.0 - (0..s).map(|k| gw_size_ln_pmf(k).exp()).sum::<f64>()
}

/// Law of `D = b(k) - b(-k)` on the window `-k..=k` of a uniform bridge of
/// length `σ` (indices taken cyclically), as a function of `d ≥ -2k`:
/// `C(d+4k, 2k) C(2σ-d-4k-1, σ-2k-1) / C(2σ, σ)`.
pub fn bridge_window_spread_pmf(sigma: u64, k: u64, d: i64) -> f64 {
    let j = d + 4 * k as i64;
    if d < -2 * k as i64 || sigma < 2 * k + 1 {
        return 0.0;
    }
    let top = 2 * sigma as i64 - 1 - j;
    let bot = sigma - 2 * k - 1;
    if top < bot as i64 {
        return 0.0;
    }
    (ln_binomial(j as u64, 2 * k) + ln_binomial(top as u64, bot) - ln_binomial(2 * sigma, sigma)).exp()
}

/// The same spread for the uniform infinite bridge: `C(d+4k, 2k) 2^{-d-4k-1}`.
pub fn infinite_bridge_window_spread_pmf(k: u64, d: i64) -> f64 {
    let j = d + 4 * k as i64;
    if d < -2 * k as i64 {
        return 0.0;
    }
    (ln_binomial(j as u64, 2 * k) - (j + 1) as f64 * LN_2).exp()
}

/// Ratio of the probability of any single window configuration with spread
/// `d` under the finite and the infinite bridge:
/// `C(2σ-d-4k-1, σ-2k-1)/C(2σ,σ) · 2^{d+4k+1}`.
pub fn bridge_window_ratio(sigma: u64, k: u64, d: i64) -> f64 {
    let p = infinite_bridge_window_spread_pmf(k, d);
    if p == 0.0 {
        return 0.0;
    }
    bridge_window_spread_pmf(sigma, k, d) / p
}

/// Exact total variation between the window laws of the finite and infinite
/// bridges. Window configurations with equal spread have equal probability
/// under both, so this reduces to the spread laws.
pub fn bridge_window_tv(sigma: u64, k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let mut tv = 0.0;
    let mut mass_inf = 0.0;
    let mut d = -2 * k as i64;
    loop {
        let a = bridge_window_spread_pmf(sigma, k, d);
        let b = infinite_bridge_window_spread_pmf(k, d);
        tv += (a - b).abs();
        mass_inf += b;
        if d > 2 * sigma as i64 && 1.0 - mass_inf < 1e-15 {
            break;
        }
        d += 1;
    }
    0.5 * (tv + (1.0 - mass_inf).max(0.0))
}

/// Largest relative deviation `|ratio - 1|` of the window ratio over spreads
/// within `width` standard deviations of the infinite-bridge mean.
pub fn bridge_window_max_rel_dev(sigma: u64, k: u64, width: f64) -> f64 {
    let r = (2 * k + 1) as f64;
    let (mean, sd) = (r - 2.0 * k as f64, (2.0 * r).sqrt());
    let lo = ((mean - width * sd).floor() as i64).max(-2 * k as i64);
    let hi = (mean + width * sd).ceil() as i64;
    (lo..=hi).map(|d| (bridge_window_ratio(sigma, k, d) - 1.0).abs()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::count::enumerate_bridges;
    use num_traits::ToPrimitive;

    #[test]
    fn endpoint_pmf_small_cases() {
        assert_eq!(bridge_endpoint_pmf(1, 0), 0.5);
        assert_eq!(bridge_endpoint_pmf(1, 1), 0.5);
        for sigma in 1..200 {
            let s: f64 = (0..=sigma).map(|k| bridge_endpoint_pmf(sigma, k)).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        for k in 0..=5 {
            assert!((bridge_endpoint_pmf(1000, k) - 0.5f64.powi(k as i32 + 1)).abs() < 1e-3);
        }
    }

    #[test]
    fn endpoint_pmf_matches_enumeration() {
        for sigma in 1..=6 {
            let all = enumerate_bridges(sigma);
            for k in 0..=sigma as u64 {
                let c = all.iter().filter(|b| b.end() == -(k as i64)).count() as f64;
                assert!((c / all.len() as f64 - bridge_endpoint_pmf(sigma as u64, k)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kemperman_small_values() {
        assert!((kemperman_pmf(-1, 1) - 0.5).abs() < 1e-15);
        assert!((kemperman_pmf(-1, 3) - 0.125).abs() < 1e-15);
        assert_eq!(kemperman_pmf(-1, 2), 0.0);
    }

    #[test]
    fn kemperman_matches_path_enumeration() {
        // every path of length 20; a first visit to j at step k is shared by 2^{20-k} paths
        let kmax = 20usize;
        let mut counts = vec![vec![0u64; 2 * kmax + 1]; kmax + 1];
        for mask in 0u32..(1 << kmax) {
            let mut s = 0i64;
            let mut visited = 1u64 << kmax;
            for k in 1..=kmax {
                s += if mask >> (k - 1) & 1 == 1 { 1 } else { -1 };
                let bit = 1u64 << (s + kmax as i64);
                if visited & bit == 0 {
                    visited |= bit;
                    counts[k][(s + kmax as i64) as usize] += 1;
                }
            }
        }
        for k in 1..=kmax {
            for j in -(k as i64)..=k as i64 {
                if j == 0 {
                    continue;
                }
                let exact = kemperman_count(j, k as u64).to_u64().unwrap();
                assert_eq!(counts[k][(j + kmax as i64) as usize] >> (kmax - k), exact, "k={k} j={j}");
                let p = exact as f64 / 2f64.powi(k as i32);
                assert!((kemperman_pmf(j, k as u64) - p).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn benes_close_to_binomial() {
        let exact = srw_pmf(10_000, 500);
        assert!((benes_pmf(10_000, 500) / exact - 1.0).abs() < 0.01);
        assert_eq!(benes_pmf(10, 3), 0.0);
    }

    #[test]
    fn local_clt_error_decays() {
        for &k in &[100u64, 1000, 10_000, 100_000] {
            let err = (srw_pmf(k, 0) - local_clt(k, 0)).abs();
            assert!(err * (k as f64).powf(1.5) < 1.0);
        }
        assert_eq!(srw_pmf(11, 0), 0.0);
    }

    #[test]
    fn gw_law_normalizes() {
        assert!((gw_size_ln_pmf(0).exp() - 0.5).abs() < 1e-15);
        assert!((gw_size_ln_pmf(1).exp() - 0.125).abs() < 1e-15);
        // tail decays like s^{-1/2}
        assert!(gw_size_tail(10_000) > 0.0 && gw_size_tail(10_000) < 0.01);
    }

    #[test]
    fn window_laws() {
        for &(s, k) in &[(50u64, 3u64), (1000, 10)] {
            let tot: f64 = (-2 * k as i64..4 * s as i64).map(|d| bridge_window_spread_pmf(s, k, d)).sum();
            assert!((tot - 1.0).abs() < 1e-10);
        }
        let tot: f64 = (-20..2000).map(|d| infinite_bridge_window_spread_pmf(10, d)).sum();
        assert!((tot - 1.0).abs() < 1e-10);
        assert!(bridge_window_max_rel_dev(10_000, 10, 4.0) < 0.02);
        assert_eq!(bridge_window_tv(100, 0), 0.0);
        assert!(bridge_window_tv(10_000, 10) < bridge_window_tv(1000, 10));
    }
}
