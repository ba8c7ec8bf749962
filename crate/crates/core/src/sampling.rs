//! Seeded sampling of directions: normalized Gaussian draws are uniform on
//! the Euclidean unit sphere.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::lie_algebra::Vector;

/// A uniformly distributed Euclidean unit vector.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = Vector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// A uniformly distributed Euclidean unit vector in the span of the given
/// basis directions.
pub fn random_unit_in_span<R: Rng + ?Sized>(rng: &mut R, dim: usize, span: &[usize]) -> Vector {
    let coords = random_unit(rng, span.len());
    let mut v = Vector::zeros(dim);
    for (&i, &c) in span.iter().zip(coords.iter()) {
        v[i] = c;
    }
    v
}
