//! Independent oracles shared by the integration tests. Nothing here calls the
//! library routine it is used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torbiv_core::fan::builtin_fan;
use torbiv_core::sampling::RegularCatalog;
use torbiv_core::{Atlas, BaseChart, BigInt, BigRational, EquivariantBivector, Fan, IntMatrix, RatMatrix};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product of random elementary integer operations, so unimodular by construction.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for _ in 0..steps {
        match rng.random_range(0..3) {
            0 if n > 1 => {
                let a = rng.random_range(0..n);
                let b = (a + rng.random_range(1..n)) % n;
                let c = rng.random_range(-2i64..=2);
                for row in &mut m {
                    row[a] += c * row[b];
                }
            }
            1 if n > 1 => {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                for row in &mut m {
                    row.swap(a, b);
                }
            }
            _ => {
                let a = rng.random_range(0..n);
                for row in &mut m {
                    row[a] = -row[a];
                }
            }
        }
    }
    IntMatrix::from_i64_rows(&m)
}

pub fn random_antisymmetric(rng: &mut impl Rng, n: usize, bound: i64) -> RatMatrix {
    let mut a = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let num = rng.random_range(-bound..=bound);
            let den = rng.random_range(1..=3);
            let x = BigRational::new(num.into(), BigInt::from(den));
            a[(j, i)] = -x.clone();
            a[(i, j)] = x;
        }
    }
    a
}

pub fn random_bivector(rng: &mut impl Rng, n: usize) -> EquivariantBivector {
    let alpha: Vec<i64> = (0..n).map(|_| rng.random_range(-3..=3)).collect();
    EquivariantBivector::new(alpha.into(), random_antisymmetric(rng, n, 4)).unwrap()
}

/// Integer determinant by cofactor expansion.
pub fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det_i64(&minor)
        })
        .sum()
}

/// `x ∈ cone(columns)` for `n` linearly independent generators, by Cramer's rule.
pub fn in_simplicial_cone(generators: &[Vec<i64>], x: &[i64]) -> bool {
    let n = x.len();
    let cols = |replace: Option<usize>| -> Vec<Vec<i64>> {
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if Some(c) == replace { x[r] } else { generators[c][r] })
                    .collect()
            })
            .collect()
    };
    let d = det_i64(&cols(None));
    assert_ne!(d, 0, "generators are dependent");
    (0..n).all(|i| det_i64(&cols(Some(i))) * d.signum() >= 0)
}

/// Laurent polynomial in `n` variables: exponent vector to coefficient.
pub type Laurent = BTreeMap<Vec<i64>, BigRational>;

fn add_term(p: &mut Laurent, e: Vec<i64>, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

fn mul(p: &Laurent, r: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (e1, c1) in p {
        for (e2, c2) in r {
            let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            add_term(&mut out, e, c1 * c2);
        }
    }
    out
}

fn derivative(p: &Laurent, var: usize) -> Laurent {
    let mut out = Laurent::new();
    for (e, c) in p {
        if e[var] != 0 {
            let mut e2 = e.clone();
            e2[var] -= 1;
            add_term(&mut out, e2, c * q(e[var]));
        }
    }
    out
}

/// The entries `π_ij = a_ij z^α z_i z_j` as Laurent monomials.
pub fn symbolic_entries(bv: &EquivariantBivector) -> Vec<Vec<Laurent>> {
    let n = bv.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = Laurent::new();
                    if i != j {
                        let mut e = bv.alpha().0.clone();
                        e[i] += 1;
                        e[j] += 1;
                        add_term(&mut p, e, bv.a()[(i, j)].clone());
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// Jacobi identity of the bracket `{f, g} = Σ π_ij ∂_i f ∂_j g`, expanded symbolically:
/// `Σ_l π_lj ∂_l π_hk + π_lh ∂_l π_kj + π_lk ∂_l π_jh = 0` for every triple.
pub fn symbolic_poisson(bv: &EquivariantBivector) -> bool {
    let n = bv.dim();
    let pi = symbolic_entries(bv);
    for j in 0..n {
        for h in 0..n {
            for k in 0..n {
                let mut total = Laurent::new();
                for l in 0..n {
                    for (x, y, z) in [(j, h, k), (h, k, j), (k, j, h)] {
                        for (e, c) in mul(&pi[l][x], &derivative(&pi[y][z], l)) {
                            add_term(&mut total, e, c);
                        }
                    }
                }
                if !total.is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Value of a Laurent polynomial at a point with nonzero coordinates.
pub fn eval_laurent(p: &Laurent, z: &[BigRational]) -> BigRational {
    p.iter()
        .map(|(e, c)| {
            e.iter().zip(z).fold(c.clone(), |acc, (&k, x)| {
                let mut v = BigRational::one();
                for _ in 0..k.abs() {
                    v *= x;
                }
                if k < 0 {
                    acc / v
                } else {
                    acc * v
                }
            })
        })
        .sum()
}

/// Rank by plain Gauss-Jordan elimination over the rationals.
pub fn naive_rank(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<BigRational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// One gallery instance of the randomized sweeps.
pub struct SweepFan {
    pub label: String,
    pub fan: Fan,
    pub base: BaseChart,
    pub catalog: RegularCatalog,
}

/// Catalogues over the box `[-2, 2]ⁿ` of multidegrees.
pub fn sweep_fans() -> Vec<SweepFan> {
    let mut cases: Vec<(String, Fan, BaseChart)> = Vec::new();
    let mut push = |label: String, name: &str, params: &[i64], base: BaseChart| {
        cases.push((label, builtin_fan(name, params).unwrap(), base));
    };
    for n in 2..=4 {
        push(format!("P{n}"), "projective_space", &[n], BaseChart::Standard);
    }
    push("P1xP1".into(), "product_p1_p1", &[], BaseChart::Standard);
    for a in 0..=3 {
        push(format!("F{a}"), "hirzebruch", &[a], BaseChart::Standard);
    }
    push("blowup_c2".into(), "blowup_c2", &[], BaseChart::MaxCone(0));
    // C¹ carries no nonzero bivector
    for n in 2..=5 {
        push(format!("C{n}"), "affine_space", &[n], BaseChart::Standard);
    }
    cases
        .into_iter()
        .map(|(label, fan, base)| {
            let atlas = Atlas::new(&fan, &base).unwrap();
            let catalog = RegularCatalog::build(&atlas, 2).unwrap();
            SweepFan { label, fan, base, catalog }
        })
        .collect()
}
