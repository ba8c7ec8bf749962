//! Chern–Rund connections, curvature operators and flag curvatures of
//! left-invariant Randers metrics `F(X) = √⟨X,X⟩ + ⟨X₀,X⟩` on metric Lie
//! algebras.
//!
//! Left-invariance reduces every object to linear algebra on the Lie algebra:
//! the osculating inner product `⟨,⟩_W` and the Cartan tensor at a reference
//! vector `W` are closed-form in `X₀` and `W`, and the connection follows from
//! the Koszul formula by a handful of solves against one Cholesky factor.
//! The five-dimensional Heisenberg algebra with `X₀ = ξZ` in its center is
//! built in, together with the closed-form values it is known to satisfy.
//!
//! Basis indices are 0-based in code and 1-based (`e1 … en`) in prose and
//! configuration files.

pub mod connection;
pub mod curvature;
pub mod error;
pub mod lie_algebra;
pub mod randers;
pub mod reproduction;
pub mod sampling;
pub mod tolerance;
pub mod verify;

pub use connection::{
    almost_metric_defect, chern_rund_table, levi_civita_table, nabla_w_of_w, nabla_x_w_map,
    torsion_defect, w_perp, ConnectionTable,
};
pub use curvature::{
    curvature_operator, flag_curvature, flag_curvature_with, riemannian_sectional, sign_search,
    special_flag_closed_form, FlagReport, SignCertificate, SpecialFlag,
};
pub use error::{Error, Result};
pub use lie_algebra::{MetricLieAlgebra, ValidationReport, Vector, CENTER};
pub use randers::{BerwaldCheck, OsculatingFrame, RandersStructure};
