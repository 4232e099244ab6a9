//! Equivariant bi-vector fields in the chart-local form
//! `Σ a_ij z^α z_i z_j ∂_i ∧ ∂_j`, their chart transitions and the Poisson
//! criterion.
//!
//! A field is stored as the antisymmetric coefficient matrix `A` together
//! with its multidegree `α`, relative to a base frame (by default the chart
//! of the standard orthant). Moving to the chart of a maximal cone whose
//! generators form the columns of `R` (in base coordinates) gives the
//! presentation `(S A Sᵗ, Rᵗ α)` with `S = R⁻¹`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fan::{extend_to_basis, Covector, Fan};
use crate::linalg::{to_i64, unimodular_inverse, IntMatrix, RatMatrix};
use crate::{Error, Result};

/// The pair `(A, α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantBivector {
    alpha: Covector,
    a: RatMatrix,
}

impl EquivariantBivector {
    pub fn new(alpha: Covector, a: RatMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if a.rows() != alpha.len() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                found: a.rows(),
            });
        }
        if !a.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(EquivariantBivector { alpha, a })
    }

    /// Builds `A` from upper- or lower-triangle entries `(i, j, a_ij)`, 0-based.
    /// Later entries for the same pair overwrite earlier ones.
    pub fn from_entries(alpha: Covector, entries: &[(usize, usize, BigRational)]) -> Result<Self> {
        let n = alpha.len();
        let mut a = RatMatrix::zeros(n, n);
        for (i, j, value) in entries {
            let (i, j) = (*i, *j);
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, dim: n });
                }
            }
            if i == j {
                return Err(Error::DiagonalEntry(i));
            }
            a[(i, j)] = value.clone();
            a[(j, i)] = -value.clone();
        }
        Ok(EquivariantBivector { alpha, a })
    }

    /// `value · ∂_i ∧ ∂_j`, the constant field (multidegree `-e_i - e_j`).
    pub fn constant(n: usize, i: usize, j: usize, value: i64) -> Result<Self> {
        let mut alpha = Covector::zero(n);
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, dim: n });
            }
        }
        alpha.0[i] = -1;
        alpha.0[j] = -1;
        Self::from_entries(alpha, &[(i, j, BigRational::from_integer(value.into()))])
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &Covector {
        &self.alpha
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
    }

    /// Torus-invariant fields have multidegree zero.
    pub fn is_invariant(&self) -> bool {
        self.alpha.is_zero()
    }
}

/// `(B, β)` on one chart. Coordinates `affine_coords..n` are torus
/// coordinates (the maximal cone has fewer than `n` rays) and never vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPresentation {
    pub chart: Option<usize>,
    pub b: RatMatrix,
    pub beta: Covector,
    pub affine_coords: usize,
}

/// `B = S A Sᵗ`, `β = Rᵗ α` with `S = R⁻¹`.
pub fn transition(bv: &EquivariantBivector, r: &IntMatrix) -> Result<ChartPresentation> {
    let s = unimodular_inverse(r)?;
    let n = bv.dim();
    if r.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: r.rows(),
        });
    }
    let s_q = s.to_rational();
    let b = &(&s_q * &bv.a) * &s_q.transpose();
    let alpha: Vec<BigInt> = bv.alpha.iter().map(|&x| BigInt::from(x)).collect();
    let beta = r
        .transpose()
        .mul_vector(&alpha)
        .iter()
        .map(to_i64)
        .collect::<Result<Vec<_>>>()?;
    Ok(ChartPresentation {
        chart: None,
        b,
        beta: Covector(beta),
        affine_coords: n,
    })
}

/// Exponent of each coordinate in entry `(i, j)`: `β_h + [h = i] + [h = j]`.
pub fn entry_exponents(beta: &Covector, i: usize, j: usize) -> Result<Vec<i64>> {
    let n = beta.len();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, dim: n });
        }
    }
    if i == j {
        return Err(Error::DiagonalEntry(i));
    }
    let mut e = beta.0.clone();
    e[i] += 1;
    e[j] += 1;
    Ok(e)
}

/// First nonzero entry `(i, j)` (with `i < j`) having a negative exponent on an
/// affine coordinate, as `(i, j, coordinate, exponent)`.
pub fn irregular_entry(cp: &ChartPresentation) -> Option<(usize, usize, usize, i64)> {
    let n = cp.beta.len();
    for i in 0..n {
        for j in i + 1..n {
            if cp.b[(i, j)].is_zero() {
                continue;
            }
            let e = entry_exponents(&cp.beta, i, j).expect("indices in range");
            if let Some(h) = (0..cp.affine_coords).find(|&h| e[h] < 0) {
                return Some((i, j, h, e[h]));
            }
        }
    }
    None
}

pub fn is_regular_on_chart(cp: &ChartPresentation) -> bool {
    irregular_entry(cp).is_none()
}

/// The matrix `Π(z)`; `0⁰ = 1`, a zero coordinate under a negative exponent
/// in a nonzero entry is an error.
pub fn evaluate_matrix(cp: &ChartPresentation, z: &[BigRational]) -> Result<RatMatrix> {
    let n = cp.beta.len();
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.len(),
        });
    }
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let coeff = &cp.b[(i, j)];
            if coeff.is_zero() {
                continue;
            }
            let e = entry_exponents(&cp.beta, i, j)?;
            let mut value = coeff.clone();
            for (h, (&exp, zh)) in e.iter().zip(z).enumerate() {
                if exp == 0 {
                    continue;
                }
                if zh.is_zero() {
                    if exp < 0 {
                        return Err(Error::UndefinedEntry {
                            i,
                            j,
                            coord: h,
                            exponent: exp,
                        });
                    }
                    value = BigRational::zero();
                    break;
                }
                value *= pow(zh, exp);
            }
            out[(j, i)] = -value.clone();
            out[(i, j)] = value;
        }
    }
    Ok(out)
}

fn pow(x: &BigRational, exp: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= x;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// A triple `j < h < k` (0-based) at which the Poisson condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonViolation {
    pub triple: (usize, usize, usize),
    pub value: BigRational,
}

/// `Σ_{i ∉ {j,h,k}} α_i (a_ij a_hk + a_ih a_kj + a_ik a_jh)`.
pub fn poisson_sum(bv: &EquivariantBivector, j: usize, h: usize, k: usize) -> BigRational {
    let a = &bv.a;
    let mut total = BigRational::zero();
    for (i, &alpha_i) in bv.alpha.iter().enumerate() {
        if alpha_i == 0 || i == j || i == h || i == k {
            continue;
        }
        let jacobi = &a[(i, j)] * &a[(h, k)] + &a[(i, h)] * &a[(k, j)] + &a[(i, k)] * &a[(j, h)];
        total += jacobi * BigRational::from_integer(alpha_i.into());
    }
    total
}

/// First violating triple in lexicographic order, if any.
pub fn poisson_violation(bv: &EquivariantBivector) -> Option<PoissonViolation> {
    let n = bv.dim();
    for j in 0..n {
        for h in j + 1..n {
            for k in h + 1..n {
                let value = poisson_sum(bv, j, h, k);
                if !value.is_zero() {
                    return Some(PoissonViolation {
                        triple: (j, h, k),
                        value,
                    });
                }
            }
        }
    }
    None
}

/// Whether the field is a Poisson structure.
pub fn poisson_check(bv: &EquivariantBivector) -> bool {
    poisson_violation(bv).is_none()
}

/// Which frame the `(A, α)` data is written in.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum BaseChart {
    /// The standard basis; the fan must have the standard orthant as a maximal cone.
    #[default]
    Standard,
    /// The chart of the given maximal cone, coordinates in its stored ray order.
    MaxCone(usize),
    /// An explicit unimodular frame (columns in standard coordinates).
    Frame(IntMatrix),
}

/// Transition matrix and coordinate split for one maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartFrame {
    /// Generators (completed to a basis) expressed in the base frame.
    pub r: IntMatrix,
    pub affine_coords: usize,
}

/// Chart frames of every maximal cone relative to a base frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    base: IntMatrix,
    charts: Vec<ChartFrame>,
}

impl Atlas {
    pub fn new(f: &Fan, base: &BaseChart) -> Result<Self> {
        let n = f.dim();
        let base = match base {
            BaseChart::Standard => {
                f.standard_orthant().ok_or(Error::NoBaseChart)?;
                IntMatrix::identity(n)
            }
            BaseChart::MaxCone(k) => extend_to_basis(&f.max_cone(*k)?)?,
            BaseChart::Frame(r) => {
                if r.rows() != n || r.cols() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: r.rows(),
                    });
                }
                r.clone()
            }
        };
        let base_inv = unimodular_inverse(&base)?;
        let charts = (0..f.max_cones().len())
            .map(|k| {
                let cone = f.max_cone(k)?;
                let g = extend_to_basis(&cone)?;
                Ok(ChartFrame {
                    r: &base_inv * &g,
                    affine_coords: cone.generators().len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Atlas { base, charts })
    }

    pub fn dim(&self) -> usize {
        self.base.rows()
    }

    /// The base frame in standard coordinates.
    pub fn base(&self) -> &IntMatrix {
        &self.base
    }

    pub fn charts(&self) -> &[ChartFrame] {
        &self.charts
    }

    pub fn presentation(&self, bv: &EquivariantBivector, chart: usize) -> Result<ChartPresentation> {
        if bv.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: bv.dim(),
            });
        }
        let frame = self.charts.get(chart).ok_or(Error::ChartOutOfRange(chart))?;
        let mut cp = transition(bv, &frame.r)?;
        cp.chart = Some(chart);
        cp.affine_coords = frame.affine_coords;
        Ok(cp)
    }

    pub fn presentations(&self, bv: &EquivariantBivector) -> Result<Vec<ChartPresentation>> {
        (0..self.charts.len())
            .map(|k| self.presentation(bv, k))
            .collect()
    }

    /// The first chart entry with a pole, as a [`Error::NotRegular`].
    pub fn regularity_violation(&self, bv: &EquivariantBivector) -> Result<Option<Error>> {
        for cp in self.presentations(bv)? {
            if let Some((i, j, coord, exponent)) = irregular_entry(&cp) {
                return Ok(Some(Error::NotRegular {
                    chart: cp.chart.unwrap_or(0),
                    i,
                    j,
                    coord,
                    exponent,
                }));
            }
        }
        Ok(None)
    }
}

/// Whether the field extends holomorphically over every chart of the fan.
pub fn is_regular_global(bv: &EquivariantBivector, f: &Fan, base: &BaseChart) -> Result<bool> {
    Ok(Atlas::new(f, base)?.regularity_violation(bv)?.is_none())
}
