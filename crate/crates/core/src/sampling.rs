//! Globally regular equivariant bivectors of a given multidegree.
//!
//! Regularity on a chart only forbids certain entries of `B = S A Sᵗ`, and
//! each entry is linear in `A`, so the regular fields of multidegree `α`
//! form the kernel of an integer matrix over the coordinates `a_pq`, `p < q`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bivector::{entry_exponents, Atlas, EquivariantBivector};
use crate::fan::Covector;
use crate::linalg::{integer_nullspace, to_i64, unimodular_inverse, IntMatrix, RatMatrix};
use crate::Result;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect()
}

struct ChartData {
    r_t: IntMatrix,
    s: IntMatrix,
    affine_coords: usize,
}

fn chart_data(atlas: &Atlas) -> Result<Vec<ChartData>> {
    atlas
        .charts()
        .iter()
        .map(|c| {
            Ok(ChartData {
                r_t: c.r.transpose(),
                s: unimodular_inverse(&c.r)?,
                affine_coords: c.affine_coords,
            })
        })
        .collect()
}

fn regular_space_with(n: usize, charts: &[ChartData], alpha: &Covector) -> Result<Vec<RatMatrix>> {
    let vars = pairs(n);
    let alpha_big: Vec<BigInt> = alpha.iter().map(|&x| BigInt::from(x)).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for chart in charts {
        let beta = Covector(
            chart
                .r_t
                .mul_vector(&alpha_big)
                .iter()
                .map(to_i64)
                .collect::<Result<Vec<_>>>()?,
        );
        for &(k, h) in &vars {
            let e = entry_exponents(&beta, k, h)?;
            if (0..chart.affine_coords).all(|c| e[c] >= 0) {
                continue;
            }
            let s = &chart.s;
            // b_kh = Σ_{p<q} a_pq (s_kp s_hq - s_kq s_hp)
            let row: Vec<BigInt> = vars
                .iter()
                .map(|&(p, q)| &s[(k, p)] * &s[(h, q)] - &s[(k, q)] * &s[(h, p)])
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..vars.len())
            .map(|i| {
                (0..vars.len())
                    .map(|j| BigInt::from((i == j) as i64))
                    .collect()
            })
            .collect()
    } else {
        integer_nullspace(&IntMatrix::from_rows(rows)?)
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut a = RatMatrix::zeros(n, n);
            for (x, &(p, q)) in v.iter().zip(&vars) {
                a[(p, q)] = BigRational::from_integer(x.clone());
                a[(q, p)] = -BigRational::from_integer(x.clone());
            }
            a
        })
        .collect())
}

/// Basis of the coefficient matrices `A` making `(A, α)` regular on every chart.
pub fn regular_space(atlas: &Atlas, alpha: &Covector) -> Result<Vec<RatMatrix>> {
    regular_space_with(atlas.dim(), &chart_data(atlas)?, alpha)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub alpha: Covector,
    /// Integer antisymmetric matrices spanning the regular fields of this multidegree.
    pub basis: Vec<RatMatrix>,
}

/// Every multidegree in the box `[-radius, radius]ⁿ` that carries a nonzero
/// regular field, with a basis of those fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCatalog {
    dim: usize,
    entries: Vec<CatalogEntry>,
}

impl RegularCatalog {
    pub fn build(atlas: &Atlas, radius: i64) -> Result<Self> {
        let n = atlas.dim();
        let charts = chart_data(atlas)?;
        let mut entries = Vec::new();
        let side = (2 * radius + 1) as u64;
        let total = side.pow(n as u32);
        for mut code in 0..total {
            let alpha: Vec<i64> = (0..n)
                .map(|_| {
                    let digit = (code % side) as i64 - radius;
                    code /= side;
                    digit
                })
                .collect();
            let alpha = Covector(alpha);
            let basis = regular_space_with(n, &charts, &alpha)?;
            if !basis.is_empty() {
                entries.push(CatalogEntry { alpha, basis });
            }
        }
        Ok(RegularCatalog { dim: n, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// A deterministic nonzero regular field, or `None` if the catalogue is empty.
    ///
    /// Picks a multidegree uniformly, then either a single basis element or a
    /// random small integer combination of the basis.
    pub fn sample(&self, seed: u64) -> Option<EquivariantBivector> {
        if self.entries.is_empty() {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entry = &self.entries[rng.random_range(0..self.entries.len())];
        let n = self.dim;
        loop {
            let mut a = RatMatrix::zeros(n, n);
            if rng.random_bool(0.3) {
                let pick = rng.random_range(0..entry.basis.len());
                let c: i64 = rng.random_range(1..=3) * if rng.random_bool(0.5) { -1 } else { 1 };
                a = entry.basis[pick].map(|x| x * BigRational::from_integer(c.into()));
            } else {
                for m in &entry.basis {
                    let c = BigRational::from_integer(rng.random_range(-3i64..=3).into());
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..n {
                        for j in 0..n {
                            let add = &m[(i, j)] * &c;
                            a[(i, j)] += add;
                        }
                    }
                }
            }
            if !a.is_zero() {
                return EquivariantBivector::new(entry.alpha.clone(), a).ok();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivector::BaseChart;
    use crate::fan::builtin_fan;

    #[test]
    fn projective_plane_invariant_fields() {
        let f = builtin_fan("projective_space", &[2]).unwrap();
        let atlas = Atlas::new(&f, &BaseChart::Standard).unwrap();
        assert_eq!(regular_space(&atlas, &Covector::zero(2)).unwrap().len(), 1);
        assert!(regular_space(&atlas, &Covector::from([5, 0])).unwrap().is_empty());
        // ∂1∧∂2 extends, vanishing to order three along the line at infinity
        assert_eq!(regular_space(&atlas, &Covector::from([-1, -1])).unwrap().len(), 1);
        assert!(regular_space(&atlas, &Covector::from([-2, 0])).unwrap().is_empty());
    }

    #[test]
    fn catalog_samples_are_regular() {
        for (name, params) in [("projective_space", &[2][..]), ("hirzebruch", &[2][..])] {
            let f = builtin_fan(name, params).unwrap();
            let atlas = Atlas::new(&f, &BaseChart::Standard).unwrap();
            let cat = RegularCatalog::build(&atlas, 3).unwrap();
            assert!(!cat.entries().is_empty());
            for seed in 0..20 {
                let bv = cat.sample(seed).unwrap();
                assert!(!bv.is_zero());
                assert!(atlas.regularity_violation(&bv).unwrap().is_none());
                assert_eq!(Some(bv), cat.sample(seed));
            }
        }
    }
}
