//! Residual suite: closed forms against finite-difference oracles, connection
//! contracts on random frames, and the Riemannian limit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connection::{almost_metric_defect, chern_rund_table, levi_civita_table, torsion_defect};
use crate::error::Result;
use crate::randers::RandersStructure;
use crate::sampling::random_unit;
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCheck {
    pub name: &'static str,
    pub defect: f64,
    pub tolerance: f64,
}

impl ResidualCheck {
    pub fn passed(&self) -> bool {
        self.defect <= self.tolerance
    }
}

/// Worst `|closed form − second difference|` of the osculating product over
/// `samples` random unit `(w, u, v)`.
pub fn osculating_oracle_defect(s: &RandersStructure, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let n = s.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (w, u, v) = (random_unit(rng, n), random_unit(rng, n), random_unit(rng, n));
        let exact = s.osculating_product(&w, &u, &v)?;
        let fd = s.osculating_product_fd(&w, &u, &v, tolerance::SECOND_DIFF_STEP)?;
        worst = worst.max((exact - fd).abs());
    }
    Ok(worst)
}

/// Worst `|closed form − third difference|` of the Cartan tensor.
pub fn cartan_oracle_defect(s: &RandersStructure, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let n = s.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let w = random_unit(rng, n);
        let (u, v, x) = (random_unit(rng, n), random_unit(rng, n), random_unit(rng, n));
        let exact = s.cartan(&w, &u, &v, &x)?;
        let fd = s.cartan_fd(&w, &u, &v, &x, tolerance::THIRD_DIFF_STEP)?;
        worst = worst.max((exact - fd).abs());
    }
    Ok(worst)
}

/// Worst torsion and almost-metric defects over `frames` random poles.
pub fn connection_defects(s: &RandersStructure, rng: &mut ChaCha8Rng, frames: usize) -> Result<(f64, f64)> {
    let mut torsion: f64 = 0.0;
    let mut almost_metric: f64 = 0.0;
    for _ in 0..frames {
        let t = chern_rund_table(&s.osculating_gram(&random_unit(rng, s.dim()))?);
        torsion = torsion.max(torsion_defect(&t));
        almost_metric = almost_metric.max(almost_metric_defect(&t));
    }
    Ok((torsion, almost_metric))
}

/// Worst entry-wise gap between the `X₀ = 0` Chern–Rund table at random poles
/// and the Levi-Civita table of the same algebra.
pub fn levi_civita_gap(s: &RandersStructure, rng: &mut ChaCha8Rng, frames: usize) -> Result<f64> {
    let riemannian = RandersStructure::riemannian(s.algebra().clone());
    let lc = levi_civita_table(s.algebra());
    let n = s.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..frames {
        let t = chern_rund_table(&riemannian.osculating_gram(&random_unit(rng, n))?);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    worst = worst.max((t.gamma(i, j, k) - lc.gamma(i, j, k)).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Runs every residual check with `samples` draws each from a stream seeded
/// by `seed`.
pub fn residual_suite(s: &RandersStructure, seed: u64, samples: usize) -> Result<Vec<ResidualCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let structure = s.algebra().validate();
    let (torsion, almost_metric) = connection_defects(s, &mut rng, samples)?;
    Ok(vec![
        ResidualCheck {
            name: "structure_constants",
            defect: structure.antisymmetry_defect.max(structure.jacobi_defect),
            tolerance: tolerance::STRUCTURE,
        },
        ResidualCheck {
            name: "osculating_vs_fd",
            defect: osculating_oracle_defect(s, &mut rng, samples)?,
            tolerance: tolerance::OSCULATING_FD,
        },
        ResidualCheck {
            name: "cartan_vs_fd",
            defect: cartan_oracle_defect(s, &mut rng, samples)?,
            tolerance: tolerance::CARTAN_FD,
        },
        ResidualCheck {
            name: "torsion",
            defect: torsion,
            tolerance: tolerance::CONNECTION_DEFECT,
        },
        ResidualCheck {
            name: "almost_metric",
            defect: almost_metric,
            tolerance: tolerance::CONNECTION_DEFECT,
        },
        ResidualCheck {
            name: "levi_civita_limit",
            defect: levi_civita_gap(s, &mut rng, samples)?,
            tolerance: tolerance::LEVI_CIVITA_MATCH,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_on_reference_model() {
        let s = RandersStructure::z_randers(2.0, 1.0, 0.5).unwrap();
        let checks = residual_suite(&s, 0, 20).unwrap();
        assert_eq!(checks.len(), 6);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
    }
}
