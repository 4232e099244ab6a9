use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{smith_normal_form, to_i64, unimodular_inverse, IntMatrix};
use crate::polyhedral;
use crate::{Error, Result};

use super::{Covector, LatticeVector};

/// Strongly convex rational cone given by its primitive ray generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    generators: Vec<LatticeVector>,
}

impl Cone {
    /// Generators are rescaled to primitive vectors. Rejects zero or repeated
    /// generators and generator sets whose cone contains a line.
    pub fn new(ambient_dim: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.len(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroRay);
            }
            let p = g.primitive().0;
            if let Some(j) = gens.iter().position(|h| *h == p) {
                return Err(Error::DuplicateGenerator(j, gens.len()));
            }
            gens.push(p);
        }
        let cone = Cone {
            ambient_dim,
            generators: gens,
        };
        if !cone.strongly_convex() {
            return Err(Error::NotStronglyConvex);
        }
        Ok(cone)
    }

    /// The zero cone `{0}`.
    pub fn zero(ambient_dim: usize) -> Self {
        Cone {
            ambient_dim,
            generators: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        smith_normal_form(&self.generator_matrix()).rank()
    }

    /// `n x d` matrix with the generators as columns.
    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_dim, &self.generators)
    }

    // no nonzero lambda >= 0 with sum lambda_i g_i = 0
    fn strongly_convex(&self) -> bool {
        let d = self.generators.len();
        if d == 0 {
            return true;
        }
        let ineqs: Vec<Vec<BigInt>> = (0..d)
            .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let eqs: Vec<Vec<BigInt>> = (0..self.ambient_dim)
            .map(|r| self.generators.iter().map(|g| BigInt::from(g[r])).collect())
            .collect();
        polyhedral::generators(d, &ineqs, &eqs).rays.is_empty()
    }

    /// Membership test for smooth cones via the extended dual basis.
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        let h = h_representation(self)?;
        Ok(h.inequalities.iter().all(|m| m.pair(x) >= 0)
            && h.equalities.iter().all(|m| m.pair(x) == 0))
    }
}

/// Half-space description `<m, x> >= 0` for each inequality, `<m, x> = 0` for each equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub inequalities: Vec<Covector>,
    pub equalities: Vec<Covector>,
}

/// Generator matrix `r`, its inverse `s` (rows form the dual basis) and the H-representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFrame {
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub h: HRep,
}

/// Smooth iff the generators are independent and all invariant factors equal 1.
pub fn is_smooth_cone(c: &Cone) -> bool {
    let snf = smith_normal_form(&c.generator_matrix());
    let factors = snf.invariant_factors();
    factors.len() == c.generators.len() && factors.iter().all(One::is_one)
}

/// Unimodular `n x n` matrix whose first `d` columns are the generators.
pub fn extend_to_basis(c: &Cone) -> Result<IntMatrix> {
    if !is_smooth_cone(c) {
        return Err(Error::NotSmooth);
    }
    let n = c.ambient_dim;
    let d = c.generators.len();
    let g = c.generator_matrix();
    // u g v = [I; 0]  =>  g = u^{-1} [I; 0] v^{-1}
    let snf = smith_normal_form(&g);
    let w = unimodular_inverse(&snf.u)?;
    let v_inv = unimodular_inverse(&snf.v)?;
    let mut block = IntMatrix::identity(n);
    for i in 0..d {
        for j in 0..d {
            block[(i, j)] = v_inv[(i, j)].clone();
        }
    }
    let r = &w * &block;
    debug_assert!((0..d).all(|j| r.column(j) == g.column(j)));
    Ok(r)
}

fn rows_as_covectors(s: &IntMatrix, range: core::ops::Range<usize>) -> Result<Vec<Covector>> {
    range
        .map(|i| {
            s.row(i)
                .iter()
                .map(to_i64)
                .collect::<Result<Vec<_>>>()
                .map(Covector)
        })
        .collect()
}

/// H-representation of a smooth cone of any dimension.
pub fn h_representation(c: &Cone) -> Result<HRep> {
    let r = extend_to_basis(c)?;
    let s = unimodular_inverse(&r)?;
    let d = c.generators.len();
    Ok(HRep {
        inequalities: rows_as_covectors(&s, 0..d)?,
        equalities: rows_as_covectors(&s, d..c.ambient_dim)?,
    })
}

pub fn dual_frame(c: &Cone) -> Result<DualFrame> {
    if !is_smooth_cone(c) {
        return Err(Error::NotSmooth);
    }
    let n = c.ambient_dim;
    if c.generators.len() != n {
        return Err(Error::NotFullDimensional {
            dim: c.generators.len(),
            ambient: n,
        });
    }
    let r = c.generator_matrix();
    let s = unimodular_inverse(&r)?;
    let h = HRep {
        inequalities: rows_as_covectors(&s, 0..n)?,
        equalities: Vec::new(),
    };
    Ok(DualFrame { r, s, h })
}

/// All faces of a smooth cone: one per subset of the generators, in
/// bitmask order (so `{0}` first and the cone itself last).
pub fn cone_faces(c: &Cone) -> Result<Vec<Cone>> {
    if !is_smooth_cone(c) {
        return Err(Error::NotSmooth);
    }
    let d = c.generators.len();
    Ok((0u64..1 << d)
        .map(|mask| Cone {
            ambient_dim: c.ambient_dim,
            generators: (0..d)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| c.generators[i].clone())
                .collect(),
        })
        .collect())
}

/// Ray generators of `c1 ∩ c2` by double description on the joint H-representation.
/// Output is primitive and sorted; the empty list means `{0}`.
pub fn intersect_cones(c1: &Cone, c2: &Cone) -> Result<Vec<LatticeVector>> {
    if c1.ambient_dim != c2.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: c1.ambient_dim,
            found: c2.ambient_dim,
        });
    }
    let h1 = h_representation(c1)?;
    let h2 = h_representation(c2)?;
    let big = |m: &Covector| m.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    let ineqs: Vec<_> = h1.inequalities.iter().chain(&h2.inequalities).map(big).collect();
    let eqs: Vec<_> = h1.equalities.iter().chain(&h2.equalities).map(big).collect();
    let g = polyhedral::generators(c1.ambient_dim, &ineqs, &eqs);
    debug_assert!(g.lines.is_empty(), "intersection of pointed cones has a line");
    g.rays
        .iter()
        .map(|r| r.iter().map(to_i64).collect::<Result<Vec<_>>>().map(LatticeVector))
        .collect()
}

/// A generator found by [`halfspace_ray`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfspaceRay {
    pub index: usize,
    /// `<a, g> < 0`; otherwise `<a, g> = 0`.
    pub strict: bool,
}

/// A generator of `c` in the closed half-space `<a, x> <= 0`, if the cone
/// meets it outside the origin. Strictly negative generators are preferred;
/// among equals the first in order wins.
pub fn halfspace_ray(c: &Cone, a: &Covector) -> Option<HalfspaceRay> {
    let pairings: Vec<i64> = c.generators.iter().map(|g| a.pair(g)).collect();
    if let Some(index) = pairings.iter().position(|&p| p < 0) {
        return Some(HalfspaceRay {
            index,
            strict: true,
        });
    }
    // every generator pairs >= 0, so c ∩ H⁻ is spanned by the zero-pairing ones
    pairings.iter().position(Zero::is_zero).map(|index| HalfspaceRay {
        index,
        strict: false,
    })
}
