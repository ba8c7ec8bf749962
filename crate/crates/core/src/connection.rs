//! Chern–Rund connection of a left-invariant Randers metric at a fixed
//! reference vector `W`, solved from the generalized Koszul formula.
//!
//! For left-invariant fields the derivative terms of the Koszul formula
//! vanish and what remains is, with `g = ⟨,⟩_W` and `C` the Cartan tensor,
//!
//! ```text
//! 2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)
//!              − 2C(∇_X W, Y, Z) − 2C(∇_Y W, Z, X) + 2C(∇_Z W, X, Y).
//! ```
//!
//! `C` vanishes whenever one slot is `W`, so the system is triangular:
//! `∇_W W` first, then `∇_X W` (only `C(∇_W W, ·, ·)` survives), then every
//! `∇_X Y`. Each stage is a set of solves against the cached factor of the
//! osculating Gram matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lie_algebra::{MetricLieAlgebra, Vector, CENTER};
use crate::randers::{OsculatingFrame, RandersStructure};
use crate::tolerance;

/// Coefficients `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k` of a connection.
#[derive(Debug, Clone)]
pub struct ConnectionTable {
    frame: OsculatingFrame,
    gamma: Vec<f64>,
}

impl ConnectionTable {
    pub fn frame(&self) -> &OsculatingFrame {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    #[inline]
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        self.gamma[(i * n + j) * n + k]
    }

    /// `∇_{e_i} e_j`.
    pub fn covariant_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim();
        let row = (i * n + j) * n;
        Vector::from_column_slice(&self.gamma[row..row + n])
    }

    /// `∇_x y` for left-invariant `x`, `y`.
    pub fn covariant(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim();
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                let row = (i * n + j) * n;
                for k in 0..n {
                    out[k] += s * self.gamma[row + k];
                }
            }
        }
        out
    }
}

/// `∇_W W`, the solution of `⟨v, e_k⟩_W = ⟨[e_k, W], W⟩_W`.
pub fn nabla_w_of_w(frame: &OsculatingFrame) -> Vector {
    let n = frame.dim();
    let w = frame.w();
    let gw = frame.gram() * w;
    let rhs = Vector::from_fn(n, |k, _| frame.algebra().bracket_basis_with(k, w).dot(&gw));
    frame.solve(&rhs)
}

/// Matrix whose column `j` holds `∇_{e_j} W`.
pub fn nabla_x_w_map(frame: &OsculatingFrame) -> DMatrix<f64> {
    nabla_x_w_map_with(frame, &nabla_w_of_w(frame))
}

fn nabla_x_w_map_with(frame: &OsculatingFrame, nabla_w_w: &Vector) -> DMatrix<f64> {
    let n = frame.dim();
    let a = frame.algebra();
    let w = frame.w();
    let gram = frame.gram();
    let gw = gram * w;
    let mut map = DMatrix::zeros(n, n);
    for j in 0..n {
        // g([e_j,W],e_k) − g([W,e_k],e_j) + g([e_k,e_j],W) − 2C(∇_W W, e_k, e_j), halved
        let ejw = gram * a.bracket_basis_with(j, w);
        let rhs = Vector::from_fn(n, |k, _| {
            let w_ek = -(gram * a.bracket_basis_with(k, w))[j];
            let ek_ej = a.bracket_basis(k, j).dot(&gw);
            let cartan: f64 = (0..n).map(|m| nabla_w_w[m] * frame.cartan_basis(m, k, j)).sum();
            0.5 * (ejw[k] - w_ek + ek_ej) - cartan
        });
        map.set_column(j, &frame.solve(&rhs));
    }
    map
}

/// The Chern–Rund connection table at the frame's reference vector.
pub fn chern_rund_table(frame: &OsculatingFrame) -> ConnectionTable {
    let n = frame.dim();
    let a = frame.algebra();
    let gram = frame.gram();

    let nabla_w_w = nabla_w_of_w(frame);
    let nabla_x_w = nabla_x_w_map_with(frame, &nabla_w_w);

    // lowered[i][j][k] = g([e_i,e_j], e_k)
    let mut lowered = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let g_bracket = gram * a.bracket_basis(i, j);
            lowered[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(g_bracket.as_slice());
        }
    }
    // cartan_w[i][j][k] = C(∇_{e_i} W, e_j, e_k)
    let mut cartan_w = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cartan_w[(i * n + j) * n + k] =
                    (0..n).map(|m| nabla_x_w[(m, i)] * frame.cartan_basis(m, j, k)).sum();
            }
        }
    }
    let at = |t: &[f64], i: usize, j: usize, k: usize| t[(i * n + j) * n + k];

    let mut gamma = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let rhs = Vector::from_fn(n, |k, _| {
                0.5 * (at(&lowered, i, j, k) - at(&lowered, j, k, i) + at(&lowered, k, i, j))
                    - at(&cartan_w, i, j, k)
                    - at(&cartan_w, j, k, i)
                    + at(&cartan_w, k, i, j)
            });
            let sol = frame.solve(&rhs);
            gamma[(i * n + j) * n..(i * n + j + 1) * n].copy_from_slice(sol.as_slice());
        }
    }
    ConnectionTable {
        frame: frame.clone(),
        gamma,
    }
}

/// Levi-Civita connection of the Euclidean left-invariant metric:
/// `2⟨∇_X Y, Z⟩ = ⟨[X,Y],Z⟩ − ⟨[Y,Z],X⟩ + ⟨[Z,X],Y⟩` against the identity Gram
/// matrix, so no solve is needed.
pub fn levi_civita_table(a: &MetricLieAlgebra) -> ConnectionTable {
    let n = a.dim();
    let mut gamma = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                gamma[(i * n + j) * n + k] = 0.5 * (a.c(i, j, k) - a.c(j, k, i) + a.c(k, i, j));
            }
        }
    }
    let frame = OsculatingFrame::new(RandersStructure::riemannian(a.clone()), &a.basis(0))
        .expect("Euclidean frame is always positive definite");
    ConnectionTable { frame, gamma }
}

/// `max_{i,j} ‖∇_{e_i}e_j − ∇_{e_j}e_i − [e_i,e_j]‖`.
pub fn torsion_defect(t: &ConnectionTable) -> f64 {
    let n = t.dim();
    let a = t.frame().algebra();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = t.covariant_basis(i, j) - t.covariant_basis(j, i) - a.bracket_basis(i, j);
            worst = worst.max(d.norm());
        }
    }
    worst
}

/// `max_{i,j,k} |⟨∇_{e_i}e_j, e_k⟩_W + ⟨e_j, ∇_{e_i}e_k⟩_W + 2C(∇_{e_i}W, e_j, e_k)|`.
///
/// `e_i⟨e_j, e_k⟩_W` vanishes for left-invariant fields, so this is the full
/// almost-metric identity. `∇_{e_i}W` is read back from the table itself.
#[allow(clippy::needless_range_loop)]
pub fn almost_metric_defect(t: &ConnectionTable) -> f64 {
    let n = t.dim();
    let frame = t.frame();
    let gram = frame.gram();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let basis_i = frame.algebra().basis(i);
        let nabla_w = t.covariant(&basis_i, frame.w());
        let lowered: Vec<Vector> = (0..n).map(|j| gram * t.covariant_basis(i, j)).collect();
        for j in 0..n {
            for k in 0..n {
                let cartan: f64 = (0..n).map(|m| nabla_w[m] * frame.cartan_basis(m, j, k)).sum();
                let d = lowered[j][k] + lowered[k][j] + 2.0 * cartan;
                worst = worst.max(d.abs());
            }
        }
    }
    worst
}

/// `W⊥ = λw₂e₁ − λw₁e₂ + μw₄e₃ − μw₃e₄` on the five-dimensional Heisenberg
/// algebra, for `w` with no center component.
pub fn w_perp(a: &MetricLieAlgebra, w: &Vector) -> Result<Vector> {
    let (lambda, mu) = a
        .heisenberg5_parameters()
        .ok_or_else(|| Error::Domain("W⊥ is only defined on the heisenberg5 model".into()))?;
    a.check_dim(w)?;
    if w[CENTER].abs() > tolerance::STRUCTURE {
        return Err(Error::Domain(format!(
            "W⊥ requires a pole without center component, got {}",
            w[CENTER]
        )));
    }
    Ok(Vector::from_vec(vec![
        lambda * w[1],
        -lambda * w[0],
        mu * w[3],
        -mu * w[2],
        0.0,
    ]))
}
