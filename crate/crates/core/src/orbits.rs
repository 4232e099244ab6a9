//! Orbit-cone correspondence.
//!
//! A torus orbit `O(τ)` is identified with the sorted set of global ray
//! indices spanning `τ`. Chart-local data (which coordinates vanish on the
//! orbit) is a derived view, [`ChartOrbit`], because one orbit is visible
//! in every chart whose maximal cone contains `τ`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fan::{validate_fan, Fan};
use crate::{Error, Result};

/// The orbit `O(τ)` of a cone `τ` given by sorted ray indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRef {
    rays: Vec<usize>,
    dim: usize,
}

impl OrbitRef {
    /// Sorts and dedups the ray indices; `ambient_dim` must be at least their count.
    pub fn new(mut rays: Vec<usize>, ambient_dim: usize) -> Self {
        rays.sort_unstable();
        rays.dedup();
        let dim = ambient_dim.saturating_sub(rays.len());
        OrbitRef { rays, dim }
    }

    /// Rays spanning the cone `τ`.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    /// `n - dim τ`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dim τ` (smooth cones are simplicial).
    pub fn cone_dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_face_of(&self, other: &OrbitRef) -> bool {
        self.rays.iter().all(|r| other.rays.contains(r))
    }
}

/// An orbit seen in the chart of one maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartOrbit {
    pub max_cone: usize,
    /// Number of chart coordinates.
    pub dim: usize,
    /// 0-based local coordinates that vanish on the orbit; all others are nonzero.
    pub vanishing: Vec<usize>,
}

/// All cones of the fan, ordered by dimension and then lexicographically.
pub fn enumerate_cones(f: &Fan) -> Result<Vec<OrbitRef>> {
    let report = validate_fan(f);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidFan(alloc::format!("{v:?}")));
    }
    Ok(cones_unchecked(f))
}

pub(crate) fn cones_unchecked(f: &Fan) -> Vec<OrbitRef> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in f.max_cones() {
        let d = cone.len();
        for mask in 0u64..1 << d {
            let mut face: Vec<usize> = (0..d)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| cone[i])
                .collect();
            face.sort_unstable();
            set.insert(face);
        }
    }
    let mut out: Vec<OrbitRef> = set.into_iter().map(|c| OrbitRef::new(c, f.dim())).collect();
    out.sort_by(|a, b| a.rays.len().cmp(&b.rays.len()).then_with(|| a.rays.cmp(&b.rays)));
    out
}

/// The orbit in the chart of maximal cone `max_cone`, which must contain `τ`.
pub fn orbit_in_given_chart(t: &OrbitRef, f: &Fan, max_cone: usize) -> Result<ChartOrbit> {
    let cone = f
        .max_cones()
        .get(max_cone)
        .ok_or(Error::ChartOutOfRange(max_cone))?;
    let vanishing = t
        .rays
        .iter()
        .map(|r| cone.iter().position(|x| x == r))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NoContainingMaxCone(t.rays.clone()))?;
    let mut vanishing = vanishing;
    vanishing.sort_unstable();
    Ok(ChartOrbit {
        max_cone,
        dim: f.dim(),
        vanishing,
    })
}

/// The orbit in the chart of the first maximal cone containing `τ`.
pub fn orbit_in_chart(t: &OrbitRef, f: &Fan) -> Result<ChartOrbit> {
    let first = *f
        .containing_max_cones(&t.rays)
        .first()
        .ok_or_else(|| Error::NoContainingMaxCone(t.rays.clone()))?;
    orbit_in_given_chart(t, f, first)
}

/// Cones `σ ⊇ τ`; their orbits make up the closure of `O(τ)`.
pub fn closure_cones(t: &OrbitRef, f: &Fan) -> Vec<OrbitRef> {
    cones_unchecked(f)
        .into_iter()
        .filter(|s| t.is_face_of(s))
        .collect()
}

/// Deterministic point of the orbit in chart coordinates: zero on the
/// vanishing coordinates, small nonzero rationals elsewhere.
pub fn sample_orbit_point(co: &ChartOrbit, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..co.dim)
        .map(|i| {
            let num: i64 = rng.random_range(1..=97);
            let den: i64 = rng.random_range(1..=97);
            let sign = if rng.random_bool(0.5) { -1 } else { 1 };
            if co.vanishing.contains(&i) {
                BigRational::from_integer(BigInt::from(0))
            } else {
                BigRational::new(BigInt::from(sign * num), BigInt::from(den))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::builtin_fan;
    use alloc::vec;
    use num_traits::Zero;

    fn p2() -> Fan {
        builtin_fan("projective_space", &[2]).unwrap()
    }

    #[test]
    fn cone_counts() {
        let cones = enumerate_cones(&p2()).unwrap();
        assert_eq!(cones.len(), 7);
        let by_dim: Vec<usize> = (0..=2)
            .map(|d| cones.iter().filter(|c| c.cone_dim() == d).count())
            .collect();
        assert_eq!(by_dim, vec![1, 3, 3]);

        for n in 1..=5 {
            let f = builtin_fan("affine_space", &[n]).unwrap();
            assert_eq!(enumerate_cones(&f).unwrap().len(), 1 << n);
        }
        let f = builtin_fan("product_p1_p1", &[]).unwrap();
        assert_eq!(enumerate_cones(&f).unwrap().len(), 9);
    }

    #[test]
    fn invalid_fan_is_rejected() {
        let f = Fan::new(2, vec![vec![1, 0], vec![1, 2]], vec![vec![0, 1]]).unwrap();
        assert!(matches!(enumerate_cones(&f), Err(Error::InvalidFan(_))));
    }

    #[test]
    fn chart_views() {
        let f = p2();
        let ray = OrbitRef::new(vec![0], 2);
        assert_eq!(
            orbit_in_chart(&ray, &f).unwrap(),
            ChartOrbit { max_cone: 0, dim: 2, vanishing: vec![0] }
        );
        let torus = OrbitRef::new(vec![], 2);
        assert!(orbit_in_chart(&torus, &f).unwrap().vanishing.is_empty());
        let point = OrbitRef::new(vec![1, 2], 2);
        let co = orbit_in_chart(&point, &f).unwrap();
        assert_eq!(co.max_cone, 1);
        assert_eq!(co.vanishing, vec![0, 1]);
        // ray 2 sits in position 0 of cone [2, 1]
        let co = orbit_in_chart(&OrbitRef::new(vec![2], 2), &f).unwrap();
        assert_eq!((co.max_cone, co.vanishing), (1, vec![0]));
    }

    #[test]
    fn not_in_any_chart() {
        let f = p2();
        let bogus = OrbitRef::new(vec![0, 1, 2], 2);
        assert_eq!(
            orbit_in_chart(&bogus, &f),
            Err(Error::NoContainingMaxCone(vec![0, 1, 2]))
        );
        assert!(orbit_in_given_chart(&OrbitRef::new(vec![2], 2), &f, 0).is_err());
    }

    #[test]
    fn closures() {
        let f = p2();
        assert_eq!(closure_cones(&OrbitRef::new(vec![], 2), &f).len(), 7);
        let ray = closure_cones(&OrbitRef::new(vec![0], 2), &f);
        let sets: Vec<&[usize]> = ray.iter().map(|o| o.rays()).collect();
        assert_eq!(sets, vec![&[0][..], &[0, 1][..], &[0, 2][..]]);
        let point = OrbitRef::new(vec![0, 1], 2);
        assert_eq!(closure_cones(&point, &f), vec![point]);
    }

    #[test]
    fn sampling_shape_and_determinism() {
        let co = ChartOrbit { max_cone: 0, dim: 3, vanishing: vec![0, 1] };
        let z = sample_orbit_point(&co, 1);
        assert!(z[0].is_zero() && z[1].is_zero() && !z[2].is_zero());
        assert_eq!(z, sample_orbit_point(&co, 1));

        let co = ChartOrbit { max_cone: 0, dim: 4, vanishing: vec![] };
        assert!(sample_orbit_point(&co, 9).iter().all(|x| !x.is_zero()));
    }
}
