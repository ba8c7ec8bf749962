//! Left-invariant Randers metrics `F(X) = √⟨X,X⟩ + ⟨X₀,X⟩` and their
//! osculating inner products and Cartan tensors.
//!
//! Every osculating object is 0-homogeneous in the reference vector, so the
//! closed forms normalize `w` to Euclidean length one before evaluating. The
//! finite-difference oracles differentiate `F²` directly at the raw `w`.

use nalgebra::{Cholesky, DMatrix, Dyn};

use crate::error::{Error, Result};
use crate::lie_algebra::{MetricLieAlgebra, Vector, CENTER};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct RandersStructure {
    algebra: MetricLieAlgebra,
    x0: Vector,
}

impl RandersStructure {
    /// Rejects `‖x0‖ ≥ 1`, where `F` stops being a Minkowski norm.
    pub fn new(algebra: MetricLieAlgebra, x0: Vector) -> Result<Self> {
        algebra.check_dim(&x0)?;
        let norm = x0.norm();
        if norm.is_nan() || norm >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "deformation vector must have Euclidean norm < 1, got {norm}"
            )));
        }
        Ok(Self { algebra, x0 })
    }

    /// The Riemannian metric (`X₀ = 0`) of an algebra.
    pub fn riemannian(algebra: MetricLieAlgebra) -> Self {
        let x0 = algebra.zero();
        Self { algebra, x0 }
    }

    /// Z-Randers metric on the five-dimensional Heisenberg algebra:
    /// `X₀ = ξZ` with `0 < ξ < 1`.
    pub fn z_randers(lambda: f64, mu: f64, xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "xi must lie in (0, 1), got {xi}"
            )));
        }
        let algebra = MetricLieAlgebra::heisenberg5(lambda, mu)?;
        let x0 = algebra.basis(CENTER) * xi;
        Self::new(algebra, x0)
    }

    pub fn algebra(&self) -> &MetricLieAlgebra {
        &self.algebra
    }

    pub fn x0(&self) -> &Vector {
        &self.x0
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn finsler_norm(&self, x: &Vector) -> Result<f64> {
        self.algebra.check_dim(x)?;
        Ok(finsler_norm_unchecked(&self.x0, x))
    }

    fn unit_reference(&self, w: &Vector) -> Result<Vector> {
        self.algebra.check_dim(w)?;
        let n = w.norm();
        if n.is_nan() || n < tolerance::ZERO_VECTOR {
            return Err(Error::DegenerateReference);
        }
        Ok(w / n)
    }

    /// `⟨u, v⟩_w` from the closed form valid for Euclidean-unit `w`.
    pub fn osculating_product(&self, w: &Vector, u: &Vector, v: &Vector) -> Result<f64> {
        let w = self.unit_reference(w)?;
        self.algebra.check_dim(u)?;
        self.algebra.check_dim(v)?;
        Ok(osculating_closed(&self.x0, &w, u, v))
    }

    /// `⟨u, v, x⟩_w`, the (0,3) Cartan tensor, from its closed form.
    pub fn cartan(&self, w: &Vector, u: &Vector, v: &Vector, x: &Vector) -> Result<f64> {
        let w = self.unit_reference(w)?;
        self.algebra.check_dim(u)?;
        self.algebra.check_dim(v)?;
        self.algebra.check_dim(x)?;
        Ok(cartan_closed(&self.x0, &w, u, v, x))
    }

    /// `½ ∂²/∂s∂t F²(w + s·u + t·v)` at `s = t = 0` by a central difference.
    pub fn osculating_product_fd(&self, w: &Vector, u: &Vector, v: &Vector, h: f64) -> Result<f64> {
        if !(1e-6..=1e-2).contains(&h) {
            return Err(Error::InvalidParameter(format!(
                "second-difference step must lie in [1e-6, 1e-2], got {h}"
            )));
        }
        self.unit_reference(w)?;
        self.algebra.check_dim(u)?;
        self.algebra.check_dim(v)?;
        let f2 = |a: f64, b: f64| {
            let y = w + u * (a * h) + v * (b * h);
            finsler_norm_unchecked(&self.x0, &y).powi(2)
        };
        let d = f2(1.0, 1.0) - f2(1.0, -1.0) - f2(-1.0, 1.0) + f2(-1.0, -1.0);
        Ok(0.5 * d / (4.0 * h * h))
    }

    /// `¼ ∂³/∂r∂s∂t F²(w + r·u + s·v + t·x)` at zero by a central difference.
    pub fn cartan_fd(&self, w: &Vector, u: &Vector, v: &Vector, x: &Vector, h: f64) -> Result<f64> {
        if !(1e-3..=1e-1).contains(&h) {
            return Err(Error::InvalidParameter(format!(
                "third-difference step must lie in [1e-3, 1e-1], got {h}"
            )));
        }
        self.unit_reference(w)?;
        self.algebra.check_dim(u)?;
        self.algebra.check_dim(v)?;
        self.algebra.check_dim(x)?;
        let mut d = 0.0;
        for a in [1.0, -1.0] {
            for b in [1.0, -1.0] {
                for c in [1.0, -1.0] {
                    let y = w + u * (a * h) + v * (b * h) + x * (c * h);
                    d += a * b * c * finsler_norm_unchecked(&self.x0, &y).powi(2);
                }
            }
        }
        Ok(0.25 * d / (8.0 * h * h * h))
    }

    /// Berwald iff `X₀` is Levi-Civita parallel, i.e. `⟨[e_i, e_j], X₀⟩ = 0`
    /// for every pair of basis vectors.
    pub fn is_berwald(&self) -> BerwaldCheck {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let b = self.algebra.bracket_basis(i, j).dot(&self.x0);
                if b.abs() > tolerance::STRUCTURE {
                    return BerwaldCheck {
                        berwald: false,
                        witness: Some((i, j)),
                    };
                }
            }
        }
        BerwaldCheck {
            berwald: true,
            witness: None,
        }
    }

    /// Osculating Gram matrix and its Cholesky factor at reference `w`.
    pub fn osculating_gram(&self, w: &Vector) -> Result<OsculatingFrame> {
        OsculatingFrame::new(self.clone(), w)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BerwaldCheck {
    pub berwald: bool,
    /// A basis pair `(i, j)` with `⟨[e_i, e_j], X₀⟩ ≠ 0`.
    pub witness: Option<(usize, usize)>,
}

fn finsler_norm_unchecked(x0: &Vector, x: &Vector) -> f64 {
    x.norm() + x0.dot(x)
}

fn osculating_closed(x0: &Vector, w: &Vector, u: &Vector, v: &Vector) -> f64 {
    let beta_w = x0.dot(w);
    let (bu, bv) = (x0.dot(u), x0.dot(v));
    let (wu, wv) = (w.dot(u), w.dot(v));
    let uv = u.dot(v);
    // grouped so that swapping u and v is bit-for-bit symmetric
    (1.0 + beta_w) * uv + bu * bv - beta_w * (wu * wv) + (bu * wv + bv * wu)
}

fn cartan_closed(x0: &Vector, w: &Vector, u: &Vector, v: &Vector, x: &Vector) -> f64 {
    let beta_w = x0.dot(w);
    let term = |u: &Vector, v: &Vector, x: &Vector| {
        let (wu, wv, wx) = (w.dot(u), w.dot(v), w.dot(x));
        beta_w * wu * wv * wx - beta_w * x.dot(v) * wu - x0.dot(x) * wv * wu + x0.dot(u) * x.dot(v)
    };
    0.5 * (term(u, v, x) + term(v, x, u) + term(x, u, v))
}

/// The osculating inner product `⟨,⟩_W` at a fixed, Euclidean-normalized
/// reference vector, with cached Gram matrix, Cholesky factor and Cartan
/// tensor components.
#[derive(Debug, Clone)]
pub struct OsculatingFrame {
    structure: RandersStructure,
    w: Vector,
    gram: DMatrix<f64>,
    factor: Cholesky<f64, Dyn>,
    cartan: Vec<f64>,
}

impl OsculatingFrame {
    pub fn new(structure: RandersStructure, w: &Vector) -> Result<Self> {
        let w = structure.unit_reference(w)?;
        let n = structure.dim();
        let x0 = structure.x0();
        let basis: Vec<Vector> = (0..n).map(|i| structure.algebra().basis(i)).collect();
        let gram = DMatrix::from_fn(n, n, |i, j| osculating_closed(x0, &w, &basis[i], &basis[j]));
        let factor = Cholesky::new(gram.clone()).ok_or(Error::NotPositiveDefinite)?;
        let mut cartan = vec![0.0; n * n * n];
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let c = cartan_closed(x0, &w, &basis[i], &basis[j], &basis[k]);
                    for (a, b, d) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                        cartan[(a * n + b) * n + d] = c;
                    }
                }
            }
        }
        Ok(Self {
            structure,
            w,
            gram,
            factor,
            cartan,
        })
    }

    pub fn structure(&self) -> &RandersStructure {
        &self.structure
    }

    pub fn algebra(&self) -> &MetricLieAlgebra {
        self.structure.algebra()
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    /// The Euclidean-unit reference vector.
    pub fn w(&self) -> &Vector {
        &self.w
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn product(&self, u: &Vector, v: &Vector) -> f64 {
        u.dot(&(&self.gram * v))
    }

    /// Cartan tensor contracted with three vectors.
    pub fn cartan(&self, u: &Vector, v: &Vector, x: &Vector) -> f64 {
        let n = self.dim();
        let mut s = 0.0;
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let uv = u[i] * v[j];
                if uv == 0.0 {
                    continue;
                }
                let row = (i * n + j) * n;
                for k in 0..n {
                    s += uv * x[k] * self.cartan[row + k];
                }
            }
        }
        s
    }

    /// Cartan component `C(e_i, e_j, e_k)`.
    #[inline]
    pub fn cartan_basis(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        self.cartan[(i * n + j) * n + k]
    }

    /// The vector `v` with `⟨v, e_k⟩_W = rhs[k]` for all `k`.
    pub fn solve(&self, rhs: &Vector) -> Vector {
        self.factor.solve(rhs)
    }
}
