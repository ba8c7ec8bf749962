//! Real Lie algebras given by structure constants on a Euclidean orthonormal
//! basis.
//!
//! Indexing is 0-based in code. Documentation and config files speak of
//! `e1, …, en` (1-based), so `e_{i+1}` in prose is index `i` here. For the
//! five-dimensional Heisenberg algebra the basis is ordered `(e1, e2, e3, e4, Z)`,
//! i.e. the center direction is index 4.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::tolerance;

/// Coordinates of an algebra element in the fixed orthonormal basis.
pub type Vector = DVector<f64>;

/// Index of the center direction `Z` in [`MetricLieAlgebra::heisenberg5`].
pub const CENTER: usize = 4;

/// A finite-dimensional real Lie algebra with an implicit Euclidean inner
/// product for which the basis is orthonormal.
///
/// Structure constants are stored densely: `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra {
    dim: usize,
    structure: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub antisymmetry_defect: f64,
    pub jacobi_defect: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_defect <= tolerance::STRUCTURE && self.jacobi_defect <= tolerance::STRUCTURE
    }
}

impl MetricLieAlgebra {
    /// Builds an algebra from a dense `dim³` array in `[i][j][k]` row-major
    /// order. No Lie axioms are checked here; see [`Self::validate`].
    pub fn from_dense(dim: usize, structure: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: structure.len(),
            });
        }
        Ok(Self { dim, structure })
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::from_dense(dim, vec![0.0; dim * dim * dim])
    }

    /// The five-dimensional Heisenberg algebra in its standard adapted basis:
    /// `[e1,e2] = λZ`, `[e3,e4] = μZ`, all other brackets of basis vectors zero.
    pub fn heisenberg5(lambda: f64, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && lambda.is_finite() && lambda >= mu) {
            return Err(Error::InvalidParameter(format!(
                "heisenberg5 requires lambda >= mu > 0, got lambda={lambda}, mu={mu}"
            )));
        }
        let mut a = Self::abelian(5)?;
        a.set(0, 1, CENTER, lambda);
        a.set(1, 0, CENTER, -lambda);
        a.set(2, 3, CENTER, mu);
        a.set(3, 2, CENTER, -mu);
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        let n = self.dim;
        self.structure[(i * n + j) * n + k] = value;
    }

    /// The `i`-th basis vector (0-based).
    pub fn basis(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.dim)
    }

    pub(crate) fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The Lie bracket `[x, y]`.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
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
                    out[k] += s * self.structure[row + k];
                }
            }
        }
        out
    }

    /// Bracket of two basis vectors, `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let n = self.dim;
        let row = (i * n + j) * n;
        Vector::from_column_slice(&self.structure[row..row + n])
    }

    /// `[e_i, w]`.
    pub(crate) fn bracket_basis_with(&self, i: usize, w: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for j in 0..self.dim {
            if w[j] != 0.0 {
                out += self.bracket_basis(i, j) * w[j];
            }
        }
        out
    }

    /// Maximal antisymmetry and Jacobi defects over all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut antisymmetry_defect: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    antisymmetry_defect =
                        antisymmetry_defect.max((self.c(i, j, k) + self.c(j, i, k)).abs());
                }
            }
        }
        // [e_a,[e_b,e_c]] + [e_b,[e_c,e_a]] + [e_c,[e_a,e_b]], component m
        let mut jacobi_defect: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for m in 0..n {
                        let mut s = 0.0;
                        for l in 0..n {
                            s += self.c(b, c, l) * self.c(a, l, m)
                                + self.c(c, a, l) * self.c(b, l, m)
                                + self.c(a, b, l) * self.c(c, l, m);
                        }
                        jacobi_defect = jacobi_defect.max(s.abs());
                    }
                }
            }
        }
        ValidationReport {
            antisymmetry_defect,
            jacobi_defect,
        }
    }

    /// `(λ, μ)` if this is exactly the [`Self::heisenberg5`] model.
    pub fn heisenberg5_parameters(&self) -> Option<(f64, f64)> {
        if self.dim != 5 {
            return None;
        }
        let lambda = self.c(0, 1, CENTER);
        let mu = self.c(2, 3, CENTER);
        match Self::heisenberg5(lambda, mu) {
            Ok(model) if model == *self => Some((lambda, mu)),
            _ => None,
        }
    }
}
