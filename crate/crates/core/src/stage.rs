//! Solver variants and the stage vocabulary used for timing and cost reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// The four solver variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Direct tridiagonalization.
    Td,
    /// Two-stage (dense to band to tridiagonal) reduction.
    Tt,
    /// Krylov subspace with explicitly formed `C`.
    Ke,
    /// Krylov subspace applying `C` implicitly through the Cholesky factor.
    Ki,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Td, Variant::Tt, Variant::Ke, Variant::Ki];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Td => "td",
            Variant::Tt => "tt",
            Variant::Ke => "ke",
            Variant::Ki => "ki",
        }
    }

    pub fn is_krylov(self) -> bool {
        matches!(self, Variant::Ke | Variant::Ki)
    }

    /// The stage keys a solve with this variant reports, in pipeline order.
    pub fn stage_keys(self) -> &'static [StageKey] {
        use StageKey::*;
        match self {
            Variant::Td => &[Gs1, Gs2, Td1, Td2, Td3, Bt1],
            Variant::Tt => &[Gs1, Gs2, Tt1, Tt2, Tt3, Tt4, Bt1],
            Variant::Ke => &[Gs1, Gs2, Ke1, Ke2, Ke3, Bt1],
            Variant::Ki => &[Gs1, Ki1, Ki2, Ki3, Ki4, Ki5, Bt1],
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "td" => Ok(Variant::Td),
            "tt" => Ok(Variant::Tt),
            "ke" => Ok(Variant::Ke),
            "ki" => Ok(Variant::Ki),
            other => Err(format!(
                "unknown variant '{other}' (expected td, tt, ke or ki)"
            )),
        }
    }
}

/// One row of the stage table.
///
/// | key | operation |
/// |-----|-----------|
/// | gs1 | `B = UᵀU` |
/// | gs2 | `C := U⁻ᵀ A U⁻¹` |
/// | td1 / td2 / td3 | `QᵀCQ = T`, `TZ = ZΛ`, `Y := QZ` |
/// | tt1 / tt2 / tt3 / tt4 | `Q₁ᵀCQ₁ = W`, `Q₂ᵀWQ₂ = T`, `TZ = ZΛ`, `Y := Q₁Q₂Z` |
/// | ke1 / ke2 / ke3 | `z := Cw`, Lanczos update and restarts, Ritz extraction |
/// | ki1 .. ki5 | `U⁻¹w`, `A·`, `U⁻ᵀ·`, Lanczos update and restarts, Ritz extraction |
/// | bt1 | `X := U⁻¹Y` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKey {
    Gs1,
    Gs2,
    Td1,
    Td2,
    Td3,
    Tt1,
    Tt2,
    Tt3,
    Tt4,
    Ke1,
    Ke2,
    Ke3,
    Ki1,
    Ki2,
    Ki3,
    Ki4,
    Ki5,
    Bt1,
}

impl StageKey {
    pub const ALL: [StageKey; 18] = [
        StageKey::Gs1,
        StageKey::Gs2,
        StageKey::Td1,
        StageKey::Td2,
        StageKey::Td3,
        StageKey::Tt1,
        StageKey::Tt2,
        StageKey::Tt3,
        StageKey::Tt4,
        StageKey::Ke1,
        StageKey::Ke2,
        StageKey::Ke3,
        StageKey::Ki1,
        StageKey::Ki2,
        StageKey::Ki3,
        StageKey::Ki4,
        StageKey::Ki5,
        StageKey::Bt1,
    ];

    pub fn as_str(self) -> &'static str {
        use StageKey::*;
        match self {
            Gs1 => "gs1",
            Gs2 => "gs2",
            Td1 => "td1",
            Td2 => "td2",
            Td3 => "td3",
            Tt1 => "tt1",
            Tt2 => "tt2",
            Tt3 => "tt3",
            Tt4 => "tt4",
            Ke1 => "ke1",
            Ke2 => "ke2",
            Ke3 => "ke3",
            Ki1 => "ki1",
            Ki2 => "ki2",
            Ki3 => "ki3",
            Ki4 => "ki4",
            Ki5 => "ki5",
            Bt1 => "bt1",
        }
    }
}

impl fmt::Display for StageKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StageKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        StageKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown stage key '{s}'"))
    }
}

/// Wall-clock seconds per stage.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageTimings(BTreeMap<StageKey, f64>);

impl StageTimings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: StageKey, elapsed: Duration) {
        *self.0.entry(key).or_insert(0.0) += elapsed.as_secs_f64();
    }

    pub fn insert_seconds(&mut self, key: StageKey, seconds: f64) {
        self.0.insert(key, seconds);
    }

    /// Runs `f` and charges its wall time to `key`.
    pub fn time<T>(&mut self, key: StageKey, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.add(key, start.elapsed());
        out
    }

    pub fn get(&self, key: StageKey) -> Option<f64> {
        self.0.get(&key).copied()
    }

    pub fn keys(&self) -> impl Iterator<Item = StageKey> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (StageKey, f64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    pub fn extend(&mut self, other: StageTimings) {
        for (k, v) in other.0 {
            *self.0.entry(k).or_insert(0.0) += v;
        }
    }

    pub fn total(&self) -> f64 {
        self.0.values().sum()
    }
}
