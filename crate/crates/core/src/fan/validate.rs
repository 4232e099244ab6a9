use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::cone::{intersect_cones, is_smooth_cone};
use super::{Fan, LatticeVector};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Two ray indices carry the same primitive vector.
    DuplicateRay { first: usize, second: usize },
    /// A maximal cone is not smooth (or not even strongly convex).
    NotSmooth { cone: usize },
    /// The rays of one maximal cone are a subset of another's.
    NestedCones { inner: usize, outer: usize },
    /// Two maximal cones meet in something other than the cone on their shared rays.
    BadIntersection {
        first: usize,
        second: usize,
        shared: Vec<usize>,
        found: Vec<LatticeVector>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The ray was not primitive and has been divided by `factor`.
    RescaledRay { ray: usize, factor: i64 },
    /// The ray belongs to no maximal cone.
    UnusedRay { ray: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Smoothness of each maximal cone, by index.
    pub smooth: Vec<bool>,
    /// Number of pairwise intersections that were checked.
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sorted_set(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

pub fn validate_fan(f: &Fan) -> ValidationReport {
    let mut report = ValidationReport::default();
    for &(ray, factor) in f.rescaled_rays() {
        report.warnings.push(Warning::RescaledRay { ray, factor });
    }
    for ray in 0..f.rays().len() {
        if !f.max_cones().iter().any(|c| c.contains(&ray)) {
            report.warnings.push(Warning::UnusedRay { ray });
        }
    }
    for (i, a) in f.rays().iter().enumerate() {
        for (j, b) in f.rays().iter().enumerate().skip(i + 1) {
            if a == b {
                report
                    .violations
                    .push(Violation::DuplicateRay { first: i, second: j });
            }
        }
    }

    let cones: Vec<_> = (0..f.max_cones().len())
        .map(|i| f.max_cone(i).ok().filter(is_smooth_cone))
        .collect();
    for (i, c) in cones.iter().enumerate() {
        report.smooth.push(c.is_some());
        if c.is_none() {
            report.violations.push(Violation::NotSmooth { cone: i });
        }
    }

    let sets: Vec<Vec<usize>> = f.max_cones().iter().map(|c| sorted_set(c)).collect();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if i != j && is_subset(&sets[i], &sets[j]) && (sets[i] != sets[j] || i < j) {
                report
                    .violations
                    .push(Violation::NestedCones { inner: i, outer: j });
            }
        }
    }

    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let (Some(a), Some(b)) = (&cones[i], &cones[j]) else {
                continue;
            };
            report.pairs_checked += 1;
            let shared: Vec<usize> = sets[i].iter().copied().filter(|r| sets[j].contains(r)).collect();
            let mut expected: Vec<LatticeVector> =
                shared.iter().map(|&r| f.rays()[r].clone()).collect();
            expected.sort();
            // the shared rays span a face of each (simplicial) cone, so only
            // the intersection itself needs checking
            let found = intersect_cones(a, b).unwrap_or_default();
            if found != expected {
                report.violations.push(Violation::BadIntersection {
                    first: i,
                    second: j,
                    shared,
                    found,
                });
            }
        }
    }
    report
}

/// Completeness by facet pairing: every maximal cone is full-dimensional and
/// every codimension-one face lies in exactly two maximal cones.
pub fn is_complete(f: &Fan) -> Result<bool> {
    let report = validate_fan(f);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidFan(format!("{v:?}")));
    }
    let n = f.dim();
    if f.max_cones().iter().any(|c| c.len() != n) {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    if n == 1 {
        let has = |x: i64| f.max_cones().iter().any(|c| f.rays()[c[0]][0] == x);
        return Ok(has(1) && has(-1));
    }
    let mut facets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for cone in f.max_cones() {
        let cone = sorted_set(cone);
        for skip in 0..n {
            let facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, &r)| r)
                .collect();
            *facets.entry(facet).or_default() += 1;
        }
    }
    Ok(facets.values().all(|&count| count == 2))
}
