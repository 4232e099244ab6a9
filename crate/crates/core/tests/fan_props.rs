mod common;

use std::collections::HashSet;

use common::{in_simplicial_cone, random_unimodular, rng};
use proptest::prelude::*;
use rand::Rng;
use torbiv_core::fan::{
    builtin_fan, cone_faces, dual_frame, extend_to_basis, h_representation, halfspace_ray,
    intersect_cones, is_complete, is_smooth_cone, validate_fan, Violation,
};
use torbiv_core::{BigInt, Cone, Covector, Fan, IntMatrix, LatticeVector};

fn columns(m: &IntMatrix) -> Vec<Vec<i64>> {
    let rows = m.to_i64_rows().unwrap();
    (0..m.cols()).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

/// Cone on the first `d` columns of a random unimodular matrix.
fn smooth_cone(seed: u64, n: usize, d: usize, steps: usize) -> Cone {
    let r = random_unimodular(&mut rng(seed), n, steps);
    let gens = columns(&r).into_iter().take(d).map(LatticeVector::from).collect();
    Cone::new(n, gens).unwrap()
}

fn gallery() -> Vec<(String, Fan)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("P{n}"), builtin_fan("projective_space", &[n]).unwrap()));
        out.push((format!("C{n}"), builtin_fan("affine_space", &[n]).unwrap()));
    }
    for a in 0..=4 {
        out.push((format!("F{a}"), builtin_fan("hirzebruch", &[a]).unwrap()));
    }
    out.push(("P1xP1".into(), builtin_fan("product_p1_p1", &[]).unwrap()));
    out.push(("blowup_c2".into(), builtin_fan("blowup_c2", &[]).unwrap()));
    out
}

fn pairs_nonneg(c: &Cone, x: &[i64]) -> bool {
    let h = h_representation(c).unwrap();
    h.inequalities.iter().all(|m| m.pair(x) >= 0) && h.equalities.iter().all(|m| m.pair(x) == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_frame_membership_matches_grid_search(seed in any::<u64>(), n in 2usize..=3) {
        let c = smooth_cone(seed, n, n, 4);
        let gens: Vec<Vec<i64>> = c.generators().iter().map(|g| g.0.clone()).collect();
        // Cramer: |λ_i| is a determinant with one column replaced by x, so
        // Hadamard's bound over the grid bounds every coefficient needed
        let box_radius = 2i64;
        let norms: Vec<f64> = gens
            .iter()
            .map(|g| g.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt())
            .collect();
        let xmax = ((n as i64 * box_radius * box_radius) as f64).sqrt();
        let bound = norms.iter().product::<f64>() * xmax / norms.iter().cloned().fold(f64::INFINITY, f64::min);
        let k = bound.ceil() as i64;
        prop_assume!(k <= 24);

        let mut reached: HashSet<Vec<i64>> = HashSet::new();
        let mut lambda = vec![0i64; n];
        loop {
            let x: Vec<i64> = (0..n).map(|r| (0..n).map(|i| lambda[i] * gens[i][r]).sum()).collect();
            if x.iter().all(|v| v.abs() <= box_radius) {
                reached.insert(x);
            }
            let Some(pos) = lambda.iter().position(|&l| l < k) else { break };
            lambda[pos] += 1;
            for l in &mut lambda[..pos] {
                *l = 0;
            }
        }

        let frame = dual_frame(&c).unwrap();
        prop_assert_eq!(&frame.r * &frame.s, IntMatrix::identity(n));
        let side = 2 * box_radius + 1;
        for code in 0..side.pow(n as u32) {
            let x: Vec<i64> = (0..n).map(|i| (code / side.pow(i as u32)) % side - box_radius).collect();
            let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            let by_frame = frame.s.mul_vector(&big).iter().all(|v| *v >= BigInt::from(0));
            prop_assert_eq!(by_frame, reached.contains(&x), "x = {:?}", x);
            prop_assert_eq!(c.contains(&x).unwrap(), by_frame);
        }
    }

    #[test]
    fn extend_to_basis_keeps_generators_first(seed in any::<u64>(), n in 1usize..=5, d in 0usize..=5) {
        let d = d.min(n);
        let c = smooth_cone(seed, n, d, 10);
        let r = extend_to_basis(&c).unwrap();
        prop_assert!(r.is_unimodular());
        let cols = columns(&r);
        for (i, g) in c.generators().iter().enumerate() {
            prop_assert_eq!(&cols[i], &g.0);
        }
        let h = h_representation(&c).unwrap();
        prop_assert_eq!(h.inequalities.len(), d);
        prop_assert_eq!(h.equalities.len(), n - d);
    }

    #[test]
    fn intersection_is_symmetric_idempotent_and_inside_both(
        s1 in any::<u64>(),
        s2 in any::<u64>(),
        n in 2usize..=3,
        d1 in 1usize..=3,
        d2 in 1usize..=3,
    ) {
        let c1 = smooth_cone(s1, n, d1.min(n), 5);
        let c2 = smooth_cone(s2, n, d2.min(n), 5);
        let i12 = intersect_cones(&c1, &c2).unwrap();
        prop_assert_eq!(&i12, &intersect_cones(&c2, &c1).unwrap());
        for ray in &i12 {
            prop_assert!(ray.is_primitive());
            prop_assert!(pairs_nonneg(&c1, ray) && pairs_nonneg(&c2, ray));
        }
        let mut own: Vec<LatticeVector> = c1.generators().to_vec();
        own.sort();
        prop_assert_eq!(intersect_cones(&c1, &c1).unwrap(), own);
    }

    #[test]
    fn halfspace_ray_contrapositive(seed in any::<u64>(), n in 2usize..=3, d in 1usize..=3) {
        let c = smooth_cone(seed, n, d.min(n), 5);
        let mut g = rng(seed ^ 0x5eed);
        let a = Covector((0..n).map(|_| g.random_range(-3..=3)).collect());
        let pairings: Vec<i64> = c.generators().iter().map(|u| a.pair(u)).collect();
        match halfspace_ray(&c, &a) {
            None => {
                prop_assert!(pairings.iter().all(|&p| p > 0));
                // no nonzero grid point of the cone reaches the closed negative side
                let dd = c.generators().len();
                for code in 1..6i64.pow(dd as u32) {
                    let lambda: Vec<i64> = (0..dd).map(|i| (code / 6i64.pow(i as u32)) % 6).collect();
                    let x: Vec<i64> = (0..n)
                        .map(|r| (0..dd).map(|i| lambda[i] * c.generators()[i][r]).sum())
                        .collect();
                    prop_assert!(a.pair(&x) > 0);
                }
            }
            Some(hit) if hit.strict => prop_assert!(pairings[hit.index] < 0),
            Some(hit) => {
                prop_assert_eq!(pairings[hit.index], 0);
                prop_assert!(pairings.iter().all(|&p| p >= 0));
            }
        }
    }

    #[test]
    fn faces_are_all_generator_subsets(seed in any::<u64>(), n in 1usize..=5, d in 0usize..=5) {
        let c = smooth_cone(seed, n, d.min(n), 8);
        let faces = cone_faces(&c).unwrap();
        prop_assert_eq!(faces.len(), 1 << c.generators().len());
        prop_assert!(faces.iter().all(is_smooth_cone));
        prop_assert_eq!(faces.first().unwrap().generators().len(), 0);
        prop_assert_eq!(faces.last().unwrap(), &c);
    }
}

#[test]
fn completeness_matches_monte_carlo() {
    let mut g = rng(2024);
    for (label, f) in gallery() {
        assert!(validate_fan(&f).is_valid(), "{label}");
        let cones: Vec<Vec<Vec<i64>>> = (0..f.max_cones().len())
            .map(|k| f.max_cone(k).unwrap().generators().iter().map(|u| u.0.clone()).collect())
            .collect();
        let covered = (0..1000).all(|_| {
            let x: Vec<i64> = loop {
                let x: Vec<i64> = (0..f.dim()).map(|_| g.random_range(-50..=50)).collect();
                if x.iter().any(|&v| v != 0) {
                    break x;
                }
            };
            cones.iter().any(|gens| in_simplicial_cone(gens, &x))
        });
        assert_eq!(is_complete(&f).unwrap(), covered, "{label}");
    }
}

#[test]
fn validation_locates_defects() {
    // cone over (1,0),(1,2) has index 2
    let f = Fan::new(2, vec![vec![1, 0], vec![1, 2], vec![0, 1]], vec![vec![0, 1], vec![1, 2]]).unwrap();
    let r = validate_fan(&f);
    assert_eq!(r.smooth, vec![false, true]);
    assert!(r.violations.contains(&Violation::NotSmooth { cone: 0 }));

    // smooth cones overlapping in the cone over (1,1),(0,1)
    let f = Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0]],
        vec![vec![0, 1], vec![2, 3]],
    )
    .unwrap();
    let r = validate_fan(&f);
    assert!(r
        .violations
        .iter()
        .any(|v| matches!(v, Violation::BadIntersection { first: 0, second: 1, .. })));
    assert!(is_complete(&f).is_err());
}
