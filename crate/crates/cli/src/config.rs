//! Model configuration files.
//!
//! A config is one JSON document holding exactly one of
//!
//! ```json
//! {"preset": {"name": "heisenberg5", "lambda": 2.0, "mu": 1.0, "xi": 0.5}}
//! {"explicit": {"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "value": 1.0}], "x0": [0, 0, 0.2]}}
//! ```
//!
//! Indices are 1-based. Each bracket entry sets `[e_i, e_j] ∋ value·e_k`; the
//! mirrored entry `(j, i, k)` is filled with `-value` unless it is listed too.

use std::collections::HashSet;

use randers_core::{MetricLieAlgebra, RandersStructure, Vector};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub preset: Option<Preset>,
    pub explicit: Option<Explicit>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Preset {
    pub name: String,
    pub lambda: f64,
    pub mu: f64,
    pub xi: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Explicit {
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub x0: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

/// A validated model ready for computation.
#[derive(Debug, Clone)]
pub struct Model {
    pub structure: RandersStructure,
    /// `(λ, μ, ξ)` for the heisenberg5 preset.
    pub preset: Option<(f64, f64, f64)>,
}

impl ModelConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("malformed config: {e}"))
    }

    pub fn into_model(self) -> Result<Model, String> {
        match (self.preset, self.explicit) {
            (Some(p), None) => preset_model(&p.name, p.lambda, p.mu, p.xi),
            (None, Some(e)) => explicit_model(e),
            _ => Err("config must contain exactly one of \"preset\" or \"explicit\"".into()),
        }
    }
}

pub fn preset_model(name: &str, lambda: f64, mu: f64, xi: f64) -> Result<Model, String> {
    if name != "heisenberg5" {
        return Err(format!("unknown preset {name:?}; the only preset is \"heisenberg5\""));
    }
    if !(xi > 0.0 && xi < 1.0) {
        return Err(format!(
            "xi must be in (0,1) for the Z-Randers preset, got {xi}; \
             use an explicit model with x0 = 0 for Riemannian runs"
        ));
    }
    let structure = RandersStructure::z_randers(lambda, mu, xi).map_err(|e| e.to_string())?;
    Ok(Model {
        structure,
        preset: Some((lambda, mu, xi)),
    })
}

fn explicit_model(e: Explicit) -> Result<Model, String> {
    let n = e.dim;
    let mut algebra = MetricLieAlgebra::abelian(n).map_err(|e| e.to_string())?;
    let mut listed = HashSet::new();
    for b in &e.brackets {
        for (name, idx) in [("i", b.i), ("j", b.j), ("k", b.k)] {
            if idx == 0 || idx > n {
                return Err(format!("bracket index {name}={idx} outside 1..={n}"));
            }
        }
        let key = (b.i - 1, b.j - 1, b.k - 1);
        if !listed.insert(key) {
            return Err(format!("bracket ({}, {}, {}) listed twice", b.i, b.j, b.k));
        }
        algebra.set(key.0, key.1, key.2, b.value);
    }
    for &(i, j, k) in &listed {
        if !listed.contains(&(j, i, k)) {
            algebra.set(j, i, k, -algebra.c(i, j, k));
        }
    }
    let report = algebra.validate();
    if !report.passed() {
        return Err(format!(
            "structure constants are not a Lie algebra (antisymmetry defect {}, Jacobi defect {})",
            report.antisymmetry_defect, report.jacobi_defect
        ));
    }
    let structure =
        RandersStructure::new(algebra, Vector::from_vec(e.x0)).map_err(|e| e.to_string())?;
    Ok(Model {
        structure,
        preset: None,
    })
}
