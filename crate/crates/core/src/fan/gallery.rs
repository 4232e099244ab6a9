use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::Fan;
use crate::{Error, Result};

pub const GALLERY_NAMES: &[&str] = &[
    "projective_space",
    "affine_space",
    "product_p1_p1",
    "hirzebruch",
    "blowup_c2",
];

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn expect_params(name: &str, params: &[i64], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(Error::BadParams {
            name: name.to_string(),
            reason: format!("expected {count} parameter(s), got {}", params.len()),
        });
    }
    Ok(())
}

fn positive_dim(name: &str, n: i64) -> Result<usize> {
    if !(1..=16).contains(&n) {
        return Err(Error::BadParams {
            name: name.to_string(),
            reason: format!("dimension must be in 1..=16, got {n}"),
        });
    }
    Ok(n as usize)
}

/// Standard smooth fans by name.
///
/// Where the variety has a chart on the standard orthant, that cone comes
/// first with its rays in basis order.
pub fn builtin_fan(name: &str, params: &[i64]) -> Result<Fan> {
    match name {
        "projective_space" => {
            expect_params(name, params, 1)?;
            let n = positive_dim(name, params[0])?;
            let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
            rays.push(vec![-1; n]);
            // cone j swaps e_j for the anticanonical ray -e_1-...-e_n, in place
            let mut cones = vec![(0..n).collect::<Vec<_>>()];
            for j in 0..n {
                let mut c: Vec<usize> = (0..n).collect();
                c[j] = n;
                cones.push(c);
            }
            Fan::new(n, rays, cones)
        }
        "affine_space" => {
            expect_params(name, params, 1)?;
            let n = positive_dim(name, params[0])?;
            Fan::new(n, (0..n).map(|i| unit(n, i)).collect(), vec![(0..n).collect()])
        }
        "product_p1_p1" => {
            expect_params(name, params, 0)?;
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
                vec![vec![0, 1], vec![2, 1], vec![2, 3], vec![0, 3]],
            )
        }
        "hirzebruch" => {
            expect_params(name, params, 1)?;
            let a = params[0];
            if !(0..=1000).contains(&a) {
                return Err(Error::BadParams {
                    name: name.to_string(),
                    reason: format!("parameter must be in 0..=1000, got {a}"),
                });
            }
            Fan::new(
                2,
                vec![vec![1, 0], vec![0, 1], vec![0, -1], vec![-1, a]],
                vec![vec![0, 1], vec![3, 1], vec![3, 2], vec![0, 2]],
            )
        }
        "blowup_c2" => {
            expect_params(name, params, 0)?;
            Fan::new(
                2,
                vec![vec![1, 0], vec![1, 1], vec![0, 1]],
                vec![vec![0, 1], vec![1, 2]],
            )
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{is_complete, validate_fan, LatticeVector};

    #[test]
    fn gallery_fans_are_valid() {
        let cases: &[(&str, &[i64], bool)] = &[
            ("projective_space", &[1], true),
            ("projective_space", &[2], true),
            ("projective_space", &[4], true),
            ("affine_space", &[3], false),
            ("product_p1_p1", &[], true),
            ("hirzebruch", &[0], true),
            ("hirzebruch", &[1], true),
            ("hirzebruch", &[3], true),
            ("blowup_c2", &[], false),
        ];
        for &(name, params, complete) in cases {
            let f = builtin_fan(name, params).unwrap();
            let r = validate_fan(&f);
            assert!(r.is_valid(), "{name}{params:?}: {r:?}");
            assert_eq!(is_complete(&f).unwrap(), complete, "{name}{params:?}");
        }
    }

    #[test]
    fn projective_plane_layout() {
        let f = builtin_fan("projective_space", &[2]).unwrap();
        assert_eq!(
            f.rays(),
            &[
                LatticeVector::from([1, 0]),
                LatticeVector::from([0, 1]),
                LatticeVector::from([-1, -1])
            ]
        );
        assert_eq!(f.max_cones().len(), 3);
        assert_eq!(f.max_cones()[1], vec![2, 1]);
        assert_eq!(f.standard_orthant(), Some(0));
    }

    #[test]
    fn hirzebruch_one_rays() {
        let f = builtin_fan("hirzebruch", &[1]).unwrap();
        assert_eq!(f.rays()[3], LatticeVector::from([-1, 1]));
        assert_eq!(f.max_cones().len(), 4);
    }

    #[test]
    fn unknown_and_bad_params() {
        assert_eq!(
            builtin_fan("grassmannian", &[2, 4]),
            Err(Error::UnknownName("grassmannian".into()))
        );
        assert!(matches!(
            builtin_fan("projective_space", &[]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            builtin_fan("affine_space", &[0]),
            Err(Error::BadParams { .. })
        ));
        assert!(matches!(
            builtin_fan("hirzebruch", &[-1]),
            Err(Error::BadParams { .. })
        ));
    }
}
