//! The parameter cascade behind the clustering bound.
//!
//! ```text
//! f1 = f(w, Δ)          Δ2 = Δ + f1·Δ²     w2 = w + 2(w+1)·f1²·Δ²
//! f2 = f(w2, Δ2)        Δ3 = Δ + f2·Δ²     w3 = w + 4(w2+1)·f2²·Δ²
//! f3 = f(w3, Δ3)        g  = (1 + f2·Δ)·f3
//! ```
//!
//! Values reach `w^19 Δ^37` magnitudes, so everything is computed with
//! arbitrary precision integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::PipelineError;

/// Model for the clustering of the two-color subroutine as a function of
/// treewidth `w` and maximum degree `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "c", rename_all = "lowercase")]
pub enum FModel {
    /// `f(w, Δ) = c`.
    Constant(u64),
    /// `f(w, Δ) = c·(w + 1)·Δ`.
    Linear(u64),
}

/// Calibrated constant for [`FModel::Linear`]. The largest observed ratio
/// `clustering / ((w + 1)·Δ)` of the two-color routine is 0.5, over 1200
/// random k-tree subgraphs (k <= 4, 60 vertices) and the grid families.
pub const DEFAULT_F_CONSTANT: u64 = 1;

impl Default for FModel {
    fn default() -> Self {
        FModel::Linear(DEFAULT_F_CONSTANT)
    }
}

impl FModel {
    pub fn eval(&self, w: &BigUint, delta: &BigUint) -> BigUint {
        match *self {
            FModel::Constant(c) => BigUint::from(c),
            FModel::Linear(c) => BigUint::from(c) * (w + 1u32) * delta,
        }
    }
}

impl fmt::Display for FModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FModel::Constant(c) => write!(f, "const:{c}"),
            FModel::Linear(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for FModel {
    type Err = String;

    /// `C` selects `C·(w+1)·Δ`; `const:C` selects the constant model.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad f-model `{s}`: {e}"));
        match s.strip_prefix("const:") {
            Some(rest) => Ok(FModel::Constant(parse(rest)?)),
            None => Ok(FModel::Linear(parse(s)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    #[serde(with = "decimal")]
    pub f1: BigUint,
    #[serde(with = "decimal")]
    pub delta2: BigUint,
    #[serde(with = "decimal")]
    pub w2: BigUint,
    #[serde(with = "decimal")]
    pub f2: BigUint,
    #[serde(with = "decimal")]
    pub delta3: BigUint,
    #[serde(with = "decimal")]
    pub w3: BigUint,
    #[serde(with = "decimal")]
    pub f3: BigUint,
    #[serde(with = "decimal")]
    pub g: BigUint,
}

impl Bounds {
    /// Rows as `(name, value)` in cascade order.
    pub fn rows(&self) -> [(&'static str, &BigUint); 8] {
        [
            ("f1", &self.f1),
            ("delta2", &self.delta2),
            ("w2", &self.w2),
            ("f2", &self.f2),
            ("delta3", &self.delta3),
            ("w3", &self.w3),
            ("f3", &self.f3),
            ("g", &self.g),
        ]
    }
}

fn cascade(w: u64, delta: u64, mut f: impl FnMut(usize, &BigUint, &BigUint) -> BigUint) -> Bounds {
    let w = BigUint::from(w);
    let d = BigUint::from(delta);
    let d2 = &d * &d;
    let f1 = f(1, &w, &d);
    let delta2 = &d + &f1 * &d2;
    let w2 = &w + BigUint::from(2u32) * (&w + 1u32) * &f1 * &f1 * &d2;
    let f2 = f(2, &w2, &delta2);
    let delta3 = &d + &f2 * &d2;
    let w3 = &w + BigUint::from(4u32) * (&w2 + 1u32) * &f2 * &f2 * &d2;
    let f3 = f(3, &w3, &delta3);
    let g = (BigUint::from(1u32) + &f2 * &d) * &f3;
    Bounds { f1, delta2, w2, f2, delta3, w3, f3, g }
}

/// Evaluates the cascade with `f` given by `model`.
pub fn compute_bounds(w: u64, delta: u64, model: &FModel) -> Result<Bounds, PipelineError> {
    if w == 0 || delta == 0 {
        return Err(PipelineError::InvalidInput(format!("bounds need w, Δ >= 1 (got w={w}, Δ={delta})")));
    }
    Ok(cascade(w, delta, |_, w, d| model.eval(w, d)))
}

/// The cascade with measured `f1, f2, f3` substituted for the model.
pub fn measured_bounds(w: u64, delta: u64, f: [u64; 3]) -> Bounds {
    cascade(w.max(1), delta.max(1), |i, _, _| BigUint::from(f[i - 1].max(1)))
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| serde::de::Error::custom(format!("bad integer `{s}`")))
    }
}
