//! Bridges: integer paths with steps in {-1, 0, 1, 2, ...} ending at or below 0.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A bridge `b(0..=σ)` of length `σ ≥ 1` with `b(0) = 0`, steps `≥ -1` and
/// `b(σ) ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bridge {
    values: Vec<i64>,
}

impl Bridge {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidBridge("length must be at least 1".into()));
        }
        if values[0] != 0 {
            return Err(Error::InvalidBridge(format!("starts at {}", values[0])));
        }
        if let Some(i) = values.windows(2).position(|w| w[1] - w[0] < -1) {
            return Err(Error::InvalidBridge(format!("step {i} is below -1")));
        }
        let end = *values.last().unwrap();
        if end > 0 {
            return Err(Error::InvalidBridge(format!("ends at {end} > 0")));
        }
        Ok(Self { values })
    }

    /// The bridge of length `σ` that is identically zero.
    pub fn zero(sigma: usize) -> Self {
        Self { values: vec![0; sigma + 1] }
    }

    pub fn sigma(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn end(&self) -> i64 {
        self.values[self.sigma()]
    }
}

/// Encodes a bridge as a sequence of `2σ` signs containing exactly `σ` minus
/// signs: `-b(σ)` plus signs, then for each `i = 1..=σ` one minus sign
/// followed by `b(i) - b(i-1) + 1` plus signs.
pub fn bridge_to_signs(b: &Bridge) -> Vec<i8> {
    let mut out = Vec::with_capacity(2 * b.sigma());
    out.extend(std::iter::repeat_n(1i8, (-b.end()) as usize));
    for w in b.values.windows(2) {
        out.push(-1);
        out.extend(std::iter::repeat_n(1i8, (w[1] - w[0] + 1) as usize));
    }
    out
}

/// Inverse of [`bridge_to_signs`].
pub fn signs_to_bridge(signs: &[i8]) -> Result<Bridge> {
    if signs.is_empty() || !signs.len().is_multiple_of(2) {
        return Err(Error::MalformedSigns(format!("length {} is not a positive even number", signs.len())));
    }
    if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::MalformedSigns(format!("entry {s} is not ±1")));
    }
    let sigma = signs.len() / 2;
    let minus = signs.iter().filter(|&&s| s == -1).count();
    if minus != sigma {
        return Err(Error::MalformedSigns(format!("{minus} minus signs, expected {sigma}")));
    }
    let first = signs.iter().position(|&s| s == -1).unwrap();
    let mut values = Vec::with_capacity(sigma + 1);
    values.push(0i64);
    let mut cur = 0i64;
    for block in signs[first + 1..].split(|&s| s == -1) {
        cur += block.len() as i64 - 1;
        values.push(cur);
    }
    debug_assert_eq!(values.len(), sigma + 1);
    debug_assert_eq!(cur, -(first as i64));
    Bridge::new(values)
}

/// The window `b(-K..=K)` of a two-sided infinite bridge together with the
/// value `b(-1)` (kept even when `K = 0`) and the extra boundary value `b(∂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeWindow {
    pub radius: usize,
    values: Vec<i64>,
    b_minus_one: i64,
    partial: i64,
}

impl BridgeWindow {
    /// `values[i + radius] = b(i)` for `|i| ≤ radius`.
    pub fn new(radius: usize, values: Vec<i64>, b_minus_one: i64, partial: i64) -> Result<Self> {
        if values.len() != 2 * radius + 1 {
            return Err(Error::LengthMismatch { expected: 2 * radius + 1, found: values.len() });
        }
        if values[radius] != 0 {
            return Err(Error::InvalidBridge(format!("b(0) = {}", values[radius])));
        }
        if values.windows(2).any(|w| w[1] - w[0] < -1) {
            return Err(Error::InvalidBridge("step below -1".into()));
        }
        if b_minus_one > 1 {
            return Err(Error::InvalidBridge(format!("b(-1) = {b_minus_one} > 1")));
        }
        if radius >= 1 && values[radius - 1] != b_minus_one {
            return Err(Error::InvalidBridge("b(-1) disagrees with the window".into()));
        }
        if partial < b_minus_one - 1 || partial > 0 {
            return Err(Error::InvalidBridge(format!("b(∂) = {partial} outside {{{}, ..., 0}}", b_minus_one - 1)));
        }
        Ok(Self { radius, values, b_minus_one, partial })
    }

    /// The values with index in `-k..=k`, for `k ≤ radius`.
    pub fn restrict(&self, k: usize) -> Self {
        assert!(k <= self.radius, "cannot widen a window");
        let lo = self.radius - k;
        Self { radius: k, values: self.values[lo..=lo + 2 * k].to_vec(), ..*self }
    }

    /// `b(i)` for `|i| ≤ radius`.
    pub fn get(&self, i: i64) -> i64 {
        let s = i + self.radius as i64;
        assert!(s >= 0 && (s as usize) < self.values.len(), "bridge index {i} outside window");
        self.values[s as usize]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn b_minus_one(&self) -> i64 {
        self.b_minus_one
    }

    /// The value `b(∂)`, which fixes the root edge of the half-plane.
    pub fn partial(&self) -> i64 {
        self.partial
    }
}
