//! Double description for cones `{x : a·x >= 0 (a in ineqs), e·x = 0 (e in eqs)}`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::make_primitive;

/// Minimal generators: `lines` span the lineality space, `rays` the pointed part.
#[derive(Debug, Clone, Default)]
pub(crate) struct Generators {
    pub lines: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

struct Ray {
    v: Vec<BigInt>,
    zeros: BTreeSet<usize>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// (s * x) - (t * y), made primitive
fn combine(s: &BigInt, x: &[BigInt], t: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    make_primitive(x.iter().zip(y).map(|(a, b)| s * a - t * b).collect())
}

pub(crate) fn generators(dim: usize, ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Generators {
    let mut lines: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    let constraints = eqs
        .iter()
        .map(|e| (e, true))
        .chain(ineqs.iter().map(|a| (a, false)));
    for (idx, (a, is_eq)) in constraints.enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(pos) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lines.swap_remove(pos);
            if dot(a, &l0).is_negative() {
                for x in &mut l0 {
                    *x = -&*x;
                }
            }
            let al0 = dot(a, &l0);
            for l in &mut lines {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &al, &l0);
                }
            }
            for r in &mut rays {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    r.v = combine(&al0, &r.v, &ar, &l0);
                }
                r.zeros.insert(idx);
            }
            if !is_eq {
                // l0 vanishes on every earlier constraint, being a former line
                rays.push(Ray {
                    v: l0,
                    zeros: (0..idx).collect(),
                });
            }
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (p, vp) in values.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (q, vq) in values.iter().enumerate() {
                if !vq.is_negative() {
                    continue;
                }
                let common: BTreeSet<usize> =
                    rays[p].zeros.intersection(&rays[q].zeros).copied().collect();
                let adjacent = !rays.iter().enumerate().any(|(o, r)| {
                    o != p && o != q && common.is_subset(&r.zeros)
                });
                if adjacent {
                    let mut zeros = common;
                    zeros.insert(idx);
                    next.push(Ray {
                        v: combine(vp, &rays[q].v, vq, &rays[p].v),
                        zeros,
                    });
                }
            }
        }
        for (r, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                let mut r = r;
                r.zeros.insert(idx);
                next.push(r);
            } else if v.is_positive() && !is_eq {
                next.push(r);
            }
        }
        rays = next;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Generators { lines, rays: out }
}
