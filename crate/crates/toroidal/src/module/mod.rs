//! Module constructions over τ: explicit bounded modules, highest-weight
//! machinery for the finite fixed-point algebras, windowed PBW induction,
//! irreducible quotients, characters, and thin coverings.

pub mod explicit;
pub mod hw;
pub mod induced;
pub mod quotient;
pub mod thin;

use crate::scalar::CycScalar;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("window cap exceeded: {0} (not finite-dimensional at this cap)")]
    WindowCap(String),
    #[error("module parameters invalid: {0}")]
    BadParams(String),
    #[error("the subalgebra a is not abelian; highest-weight input for W₂ needs an abelian a")]
    NonAbelianA,
    #[error("action undefined for symbol {0}")]
    OutsideDomain(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// Weight key of a module slice: d₀-degree relative to the top, Zⁿ-degree,
/// and h(0̄)-weight.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ModKey {
    pub d0: i64,
    pub k: Vec<i64>,
    pub alpha: Vec<CycScalar>,
}

impl ModKey {
    pub fn shift(&self, w: &crate::roots::WeightVector) -> ModKey {
        ModKey {
            d0: self.d0 + w.k0,
            k: self.k.iter().zip(&w.k).map(|(a, b)| a + b).collect(),
            alpha: self
                .alpha
                .iter()
                .zip(&w.alpha)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl PartialOrd for ModKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d0
            .cmp(&other.d0)
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| {
                for (a, b) in self.alpha.iter().zip(&other.alpha) {
                    let c = a.struct_cmp(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                self.alpha.len().cmp(&other.alpha.len())
            })
    }
}

/// Degree box for exact windowed computation: caps |Zⁿ-degree|∞, d₀-depth
/// below the top, and the number of root-lowering factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Window {
    pub kmax: i64,
    pub depth: u32,
    pub height: u32,
}

impl Window {
    pub fn new(kmax: i64, depth: u32, height: u32) -> Self {
        Self { kmax, depth, height }
    }

    pub fn contains(&self, key: &ModKey) -> bool {
        key.k.iter().all(|&ki| ki.abs() <= self.kmax)
            && key.d0 <= 0
            && -key.d0 <= self.depth as i64
    }

    /// Interior after shrinking the k-box; depth/height are left alone (the
    /// PLUS generators used to certify singularity live at d₀-degree ≥ 0 and
    /// raise the ladder).
    pub fn shrink_k(&self, by: i64) -> Window {
        Window {
            kmax: (self.kmax - by).max(0),
            ..*self
        }
    }
}

/// Character table: weight key → dimension, deterministically ordered.
pub type Character = BTreeMap<ModKey, usize>;

pub fn character_to_json(ch: &Character) -> serde_json::Value {
    serde_json::Value::Array(
        ch.iter()
            .map(|(key, dim)| {
                serde_json::json!({
                    "d0": key.d0,
                    "k": key.k,
                    "alpha": key.alpha,
                    "dim": dim,
                })
            })
            .collect(),
    )
}

pub fn character_to_csv(ch: &Character) -> String {
    let mut out = String::from("d0,k,alpha,dim\n");
    for (key, dim) in ch {
        let k = key
            .k
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let alpha = key
            .alpha
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!("{},{},{},{}\n", key.d0, k, alpha, dim));
    }
    out
}

/// Restricts a character to a k-box (used for interior comparisons).
pub fn restrict_character(ch: &Character, kmax: i64) -> Character {
    ch.iter()
        .filter(|(key, _)| key.k.iter().all(|&ki| ki.abs() <= kmax))
        .map(|(k, d)| (k.clone(), *d))
        .collect()
}
