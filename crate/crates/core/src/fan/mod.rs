//! Lattice vectors, smooth cones and fans.

mod cone;
mod gallery;
mod validate;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use num_integer::Integer;

pub use cone::{
    cone_faces, dual_frame, extend_to_basis, h_representation, halfspace_ray, intersect_cones,
    is_smooth_cone, Cone, DualFrame, HRep, HalfspaceRay,
};
pub use gallery::{builtin_fan, GALLERY_NAMES};
pub use validate::{is_complete, validate_fan, ValidationReport, Violation, Warning};

use crate::linalg::IntMatrix;
use crate::{Error, Result};

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn new(coords: Vec<i64>) -> Self {
                Self(coords)
            }

            pub fn zero(n: usize) -> Self {
                Self(alloc::vec![0; n])
            }

            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = alloc::vec![0; n];
                v[i] = 1;
                Self(v)
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&x| x == 0)
            }

            pub fn into_inner(self) -> Vec<i64> {
                self.0
            }
        }

        impl Deref for $name {
            type Target = [i64];

            fn deref(&self) -> &[i64] {
                &self.0
            }
        }

        impl AsRef<[i64]> for $name {
            fn as_ref(&self) -> &[i64] {
                &self.0
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(v: Vec<i64>) -> Self {
                Self(v)
            }
        }

        impl From<&[i64]> for $name {
            fn from(v: &[i64]) -> Self {
                Self(v.to_vec())
            }
        }

        impl<const N: usize> From<[i64; N]> for $name {
            fn from(v: [i64; N]) -> Self {
                Self(v.to_vec())
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("(")?;
                for (i, x) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    };
}

int_vector!(
    /// Element of the lattice `N`.
    LatticeVector
);
int_vector!(
    /// Element of the dual lattice `M` (characters, monomial exponents).
    Covector
);

impl LatticeVector {
    /// The primitive vector on the same ray and the factor that was divided out.
    pub fn primitive(&self) -> (LatticeVector, i64) {
        let g = self.0.iter().fold(0i64, |acc, x| acc.gcd(x));
        if g <= 1 {
            return (self.clone(), 1.max(g));
        }
        (LatticeVector(self.0.iter().map(|x| x / g).collect()), g)
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive().1 == 1 && !self.is_zero()
    }
}

impl Covector {
    /// The pairing `<m, u>`.
    pub fn pair(&self, u: &[i64]) -> i64 {
        self.0.iter().zip(u).map(|(a, b)| a * b).sum()
    }
}

/// A fan stored as its rays plus the ray-index sets of its maximal cones.
///
/// The order of the indices inside a maximal cone fixes the order of the
/// local coordinates on the corresponding affine chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    rescaled: Vec<(usize, i64)>,
}

impl Fan {
    /// Structural ingestion. Non-primitive rays are divided by their content
    /// and noted; geometric checks live in [`validate_fan`].
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if max_cones.is_empty() {
            return Err(Error::EmptyFan);
        }
        let mut rescaled = Vec::new();
        let mut prim = Vec::with_capacity(rays.len());
        for (i, r) in rays.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            let r = LatticeVector(r);
            if r.is_zero() {
                return Err(Error::ZeroRay);
            }
            let (p, g) = r.primitive();
            if g != 1 {
                rescaled.push((i, g));
            }
            prim.push(p);
        }
        for (ci, cone) in max_cones.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &ri in cone {
                if ri >= prim.len() {
                    return Err(Error::RayIndexOutOfRange {
                        index: ri,
                        len: prim.len(),
                    });
                }
                if !seen.insert(ri) {
                    return Err(Error::RepeatedRayInCone { cone: ci, ray: ri });
                }
            }
        }
        Ok(Fan {
            dim,
            rays: prim,
            max_cones,
            rescaled,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Rays that were rescaled at ingestion, with the removed factor.
    pub fn rescaled_rays(&self) -> &[(usize, i64)] {
        &self.rescaled
    }

    /// The cone spanned by the given rays, in the given order.
    pub fn cone_from_rays(&self, rays: &[usize]) -> Result<Cone> {
        let gens = rays
            .iter()
            .map(|&i| {
                self.rays.get(i).cloned().ok_or(Error::RayIndexOutOfRange {
                    index: i,
                    len: self.rays.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Cone::new(self.dim, gens)
    }

    pub fn max_cone(&self, index: usize) -> Result<Cone> {
        let rays = self
            .max_cones
            .get(index)
            .ok_or(Error::ChartOutOfRange(index))?;
        self.cone_from_rays(rays)
    }

    /// Columns are the generators of maximal cone `index`, in stored order.
    pub fn generator_matrix(&self, index: usize) -> Result<IntMatrix> {
        let rays = self
            .max_cones
            .get(index)
            .ok_or(Error::ChartOutOfRange(index))?;
        let cols: Vec<&[i64]> = rays.iter().map(|&i| &*self.rays[i]).collect();
        Ok(IntMatrix::from_columns(self.dim, &cols))
    }

    /// Maximal cones (by index) whose ray set contains `rays`.
    pub fn containing_max_cones(&self, rays: &[usize]) -> Vec<usize> {
        self.max_cones
            .iter()
            .enumerate()
            .filter(|(_, c)| rays.iter().all(|r| c.contains(r)))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `rays` spans a cone of this fan, i.e. a face of a maximal cone.
    pub fn has_cone(&self, rays: &[usize]) -> bool {
        !self.containing_max_cones(rays).is_empty()
    }

    /// Index of a maximal cone whose rays are exactly the standard basis vectors.
    pub fn standard_orthant(&self) -> Option<usize> {
        self.max_cones.iter().position(|c| {
            c.len() == self.dim
                && (0..self.dim).all(|i| {
                    let e = LatticeVector::unit(self.dim, i);
                    c.iter().any(|&r| self.rays[r] == e)
                })
        })
    }
}
