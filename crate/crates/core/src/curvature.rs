//! Curvature operator and flag curvature of the Chern–Rund connection, the
//! special flags of the Z-Randers Heisenberg model and their closed forms,
//! and a seeded search for flags of both signs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::connection::{chern_rund_table, ConnectionTable};
use crate::error::{Error, Result};
use crate::lie_algebra::{MetricLieAlgebra, Vector, CENTER};
use crate::randers::RandersStructure;
use crate::sampling::{random_unit, random_unit_in_span};
use crate::tolerance;

/// `R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_{[x,y]}z` with the reference vector held
/// fixed at the table's pole.
pub fn curvature_operator(t: &ConnectionTable, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let a = t.frame().algebra();
    t.covariant(x, &t.covariant(y, z)) - t.covariant(y, &t.covariant(x, z))
        - t.covariant(&a.bracket_unchecked(x, y), z)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagReport {
    /// Flag pole as supplied.
    pub w: Vector,
    /// Transverse vector as supplied.
    pub x: Vector,
    /// Flag curvature; NaN when `degenerate`.
    pub k: f64,
    /// `‖W‖²_W ‖X‖²_W − ⟨X,W⟩²_W`, evaluated at the Euclidean-unit pole.
    pub denominator: f64,
    pub degenerate: bool,
}

/// Flag curvature `K(W,X) = ⟨R(X,W)W, X⟩_W / (‖W‖²_W‖X‖²_W − ⟨X,W⟩²_W)`.
pub fn flag_curvature(s: &RandersStructure, w: &Vector, x: &Vector) -> Result<FlagReport> {
    s.algebra().check_dim(x)?;
    let frame = s.osculating_gram(w)?;
    let t = chern_rund_table(&frame);
    let mut report = flag_curvature_with(&t, x)?;
    report.w = w.clone();
    Ok(report)
}

/// Flag curvature with pole fixed by an already solved connection table.
pub fn flag_curvature_with(t: &ConnectionTable, x: &Vector) -> Result<FlagReport> {
    let frame = t.frame();
    frame.algebra().check_dim(x)?;
    let norm = x.norm();
    if norm.is_nan() || norm < tolerance::ZERO_VECTOR {
        return Err(Error::ZeroVector);
    }
    let w = frame.w();
    let ww = frame.product(w, w);
    let xx = frame.product(x, x);
    let xw = frame.product(x, w);
    let denominator = ww * xx - xw * xw;
    let degenerate = denominator < tolerance::FLAG_DEGENERACY * ww * xx;
    let k = if degenerate {
        f64::NAN
    } else {
        frame.product(&curvature_operator(t, x, w, w), x) / denominator
    };
    Ok(FlagReport {
        w: w.clone(),
        x: x.clone(),
        k,
        denominator,
        degenerate,
    })
}

/// Sectional curvature of the left-invariant Riemannian metric (`X₀ = 0`).
pub fn riemannian_sectional(a: &MetricLieAlgebra, x: &Vector, y: &Vector) -> Result<f64> {
    let s = RandersStructure::riemannian(a.clone());
    let report = flag_curvature(&s, x, y)?;
    if report.degenerate {
        return Err(Error::DegenerateFlag);
    }
    Ok(report.k)
}

/// The eight special flag families of the Z-Randers Heisenberg model.
///
/// Poles and transverse vectors range over `Z`, `span(e1,e2)` or
/// `span(e3,e4)`; the curvature is constant on each family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialFlag {
    CenterE12,
    CenterE34,
    E12Center,
    E12E12,
    E12E34,
    E34Center,
    E34E12,
    E34E34,
}

const SPAN_CENTER: &[usize] = &[CENTER];
const SPAN_E12: &[usize] = &[0, 1];
const SPAN_E34: &[usize] = &[2, 3];

fn span_label(span: &[usize]) -> &'static str {
    match span {
        [CENTER] => "Z",
        [0, 1] => "span(e1,e2)",
        _ => "span(e3,e4)",
    }
}

impl SpecialFlag {
    pub const ALL: [SpecialFlag; 8] = [
        SpecialFlag::CenterE12,
        SpecialFlag::CenterE34,
        SpecialFlag::E12Center,
        SpecialFlag::E12E12,
        SpecialFlag::E12E34,
        SpecialFlag::E34Center,
        SpecialFlag::E34E12,
        SpecialFlag::E34E34,
    ];

    /// Row label `"1.1"` … `"3.3"`.
    pub fn id(self) -> &'static str {
        match self {
            SpecialFlag::CenterE12 => "1.1",
            SpecialFlag::CenterE34 => "1.2",
            SpecialFlag::E12Center => "2.1",
            SpecialFlag::E12E12 => "2.2",
            SpecialFlag::E12E34 => "2.3",
            SpecialFlag::E34Center => "3.1",
            SpecialFlag::E34E12 => "3.2",
            SpecialFlag::E34E34 => "3.3",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn pole_span(self) -> &'static [usize] {
        match self {
            SpecialFlag::CenterE12 | SpecialFlag::CenterE34 => SPAN_CENTER,
            SpecialFlag::E12Center | SpecialFlag::E12E12 | SpecialFlag::E12E34 => SPAN_E12,
            SpecialFlag::E34Center | SpecialFlag::E34E12 | SpecialFlag::E34E34 => SPAN_E34,
        }
    }

    pub fn transverse_span(self) -> &'static [usize] {
        match self {
            SpecialFlag::E12Center | SpecialFlag::E34Center => SPAN_CENTER,
            SpecialFlag::CenterE12 | SpecialFlag::E12E12 | SpecialFlag::E34E12 => SPAN_E12,
            SpecialFlag::CenterE34 | SpecialFlag::E12E34 | SpecialFlag::E34E34 => SPAN_E34,
        }
    }

    pub fn pole_label(self) -> &'static str {
        span_label(self.pole_span())
    }

    pub fn transverse_label(self) -> &'static str {
        span_label(self.transverse_span())
    }

    /// A basis-vector flag of the family, e.g. `(Z, e1)` for row 1.1 and
    /// `(e1, e2)` for row 2.2.
    pub fn representative(self) -> (Vector, Vector) {
        let pole = self.pole_span()[0];
        let transverse = self
            .transverse_span()
            .iter()
            .copied()
            .find(|&i| i != pole)
            .expect("spans have a direction other than the pole");
        let basis = |i: usize| {
            let mut v = Vector::zeros(5);
            v[i] = 1.0;
            v
        };
        (basis(pole), basis(transverse))
    }

    /// A random flag of the family: unit pole in the pole span, unit
    /// transverse vector in the transverse span, kept away from the pole when
    /// the spans coincide.
    pub fn sample<R: rand::Rng + ?Sized>(self, rng: &mut R) -> (Vector, Vector) {
        let w = random_unit_in_span(rng, 5, self.pole_span());
        loop {
            let x = random_unit_in_span(rng, 5, self.transverse_span());
            if x.dot(&w).abs() < 0.99 {
                return (w, x);
            }
        }
    }

    pub fn closed_form(self, lambda: f64, mu: f64, xi: f64) -> Result<f64> {
        if !(mu > 0.0 && lambda >= mu && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "requires lambda >= mu > 0, got lambda={lambda}, mu={mu}"
            )));
        }
        if !(xi > 0.0 && xi < 1.0) {
            return Err(Error::InvalidParameter(format!("requires 0 < xi < 1, got {xi}")));
        }
        let (l2, m2, x2) = (lambda * lambda, mu * mu, xi * xi);
        Ok(match self {
            SpecialFlag::CenterE12 => l2 / 4.0,
            SpecialFlag::CenterE34 => m2 / 4.0,
            SpecialFlag::E12Center => (1.0 - x2) * l2 / 4.0,
            SpecialFlag::E12E12 => (x2 - 3.0) * l2 / 4.0,
            SpecialFlag::E12E34 => x2 * (m2 - l2) / 4.0,
            SpecialFlag::E34Center => (1.0 - x2) * m2 / 4.0,
            SpecialFlag::E34E12 => x2 * (l2 - m2) / 4.0,
            SpecialFlag::E34E34 => (x2 - 3.0) * m2 / 4.0,
        })
    }
}

/// Closed-form flag curvature of a special flag family, by row label.
pub fn special_flag_closed_form(case_id: &str, lambda: f64, mu: f64, xi: f64) -> Result<f64> {
    SpecialFlag::from_id(case_id)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown special flag case {case_id:?}")))?
        .closed_form(lambda, mu, xi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignCertificate {
    pub positive_witness: FlagReport,
    pub negative_witness: FlagReport,
    pub samples_tried: usize,
}

/// Looks for a flag of strictly positive and one of strictly negative
/// curvature.
///
/// On five-dimensional algebras the special-flag representatives are tried
/// first, in row order; after that poles and transverse vectors are drawn
/// uniformly from the unit sphere with a `ChaCha8` stream seeded by `seed`.
/// The first witness of each sign is kept, so the result depends only on
/// `(s, seed)`.
pub fn sign_search(s: &RandersStructure, seed: u64, max_samples: usize) -> Result<SignCertificate> {
    let dim = s.dim();
    let mut positive: Option<FlagReport> = None;
    let mut negative: Option<FlagReport> = None;
    let mut tried = 0;

    let special: Vec<(Vector, Vector)> = if dim == 5 {
        SpecialFlag::ALL.iter().map(|f| f.representative()).collect()
    } else {
        Vec::new()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut special = special.into_iter();

    while tried < max_samples {
        let (w, x) = match special.next() {
            Some(flag) => flag,
            None => (random_unit(&mut rng, dim), random_unit(&mut rng, dim)),
        };
        tried += 1;
        let report = flag_curvature(s, &w, &x)?;
        if report.degenerate {
            continue;
        }
        if report.k > tolerance::SIGN_MARGIN {
            positive.get_or_insert(report);
        } else if report.k < -tolerance::SIGN_MARGIN {
            negative.get_or_insert(report);
        }
        if positive.is_some() && negative.is_some() {
            break;
        }
    }

    match (positive, negative) {
        (Some(positive_witness), Some(negative_witness)) => Ok(SignCertificate {
            positive_witness,
            negative_witness,
            samples_tried: tried,
        }),
        (p, n) => Err(Error::SearchExhausted {
            missing: match (p, n) {
                (None, None) => "nonzero",
                (None, Some(_)) => "positive",
                _ => "negative",
            },
            samples: tried,
        }),
    }
}
