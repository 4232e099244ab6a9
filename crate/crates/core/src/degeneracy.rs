//! Rank of an equivariant bivector on every torus orbit, degeneracy loci
//! `X_{≤2k}` as unions of orbits, and the degeneracy-locus certificate.
//!
//! On the chart of a maximal cone `σ ⊇ τ` the orbit `O(τ)` is the set where
//! the coordinates in `V` (the positions of τ's rays) vanish and all others
//! do not. Entry `(i, j)` of `Π` survives there iff `b_ij ≠ 0` and its
//! exponent is zero at every coordinate of `V`, which gives a closed-form
//! rank from the exponents `β_h`, `h ∈ V`:
//!
//! - some `β_h ≥ 1`: every entry vanishes, rank 0;
//! - `β_h = -1` for three or more `h`: rank 0;
//! - `β = -1` exactly on `{p, q}`: rank 2 iff `b_pq ≠ 0`;
//! - `β = -1` exactly on `{p}`: rank 2 iff `b_pj ≠ 0` for some `j ∉ V`;
//! - otherwise: the rank of `B` restricted to the coordinates outside `V`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::bivector::{evaluate_matrix, Atlas, BaseChart, ChartPresentation, EquivariantBivector};
use crate::fan::{is_complete, validate_fan, Fan};
use crate::linalg::rational_rank;
use crate::orbits::{cones_unchecked, orbit_in_given_chart, sample_orbit_point, OrbitRef};
use crate::{Error, Result};

/// Rank of a chart presentation on the orbit whose vanishing coordinates are `vanishing`.
pub fn rank_from_vanishing(cp: &ChartPresentation, vanishing: &[usize]) -> usize {
    let beta = &cp.beta;
    if vanishing.iter().any(|&h| beta[h] >= 1) {
        return 0;
    }
    let poles: Vec<usize> = vanishing.iter().copied().filter(|&h| beta[h] == -1).collect();
    match poles[..] {
        [] => {
            let rest: Vec<usize> = (0..beta.len()).filter(|i| !vanishing.contains(i)).collect();
            rational_rank(&cp.b.principal_submatrix(&rest))
        }
        [p] => {
            let live = (0..beta.len()).any(|j| !vanishing.contains(&j) && !cp.b[(p, j)].is_zero());
            if live {
                2
            } else {
                0
            }
        }
        [p, q] => {
            if cp.b[(p, q)].is_zero() {
                0
            } else {
                2
            }
        }
        _ => 0,
    }
}

/// Orbit with the rank of the field on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRank {
    pub orbit: OrbitRef,
    pub rank: usize,
}

/// An equivariant bivector placed on a validated fan through an [`Atlas`].
#[derive(Clone, Debug)]
pub struct FanBivector<'f> {
    fan: &'f Fan,
    bv: EquivariantBivector,
    atlas: Atlas,
    charts: Vec<ChartPresentation>,
    violation: Option<Error>,
}

impl<'f> FanBivector<'f> {
    /// Fails with [`Error::InvalidFan`] if the fan does not validate. An
    /// irregular field is accepted here; queries that need regularity fail later.
    pub fn new(bv: EquivariantBivector, fan: &'f Fan, base: &BaseChart) -> Result<Self> {
        let report = validate_fan(fan);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidFan(alloc::format!("{v:?}")));
        }
        let atlas = Atlas::new(fan, base)?;
        let charts = atlas.presentations(&bv)?;
        let violation = atlas.regularity_violation(&bv)?;
        Ok(FanBivector {
            fan,
            bv,
            atlas,
            charts,
            violation,
        })
    }

    pub fn fan(&self) -> &'f Fan {
        self.fan
    }

    pub fn bivector(&self) -> &EquivariantBivector {
        &self.bv
    }

    pub fn atlas(&self) -> &Atlas {
        &self.atlas
    }

    pub fn presentation(&self, chart: usize) -> Result<&ChartPresentation> {
        self.charts.get(chart).ok_or(Error::ChartOutOfRange(chart))
    }

    pub fn is_regular(&self) -> bool {
        self.violation.is_none()
    }

    /// The first pole found, as [`Error::NotRegular`].
    pub fn regularity_violation(&self) -> Option<&Error> {
        self.violation.as_ref()
    }

    fn ensure_regular(&self) -> Result<()> {
        match &self.violation {
            Some(e) => Err(e.clone()),
            None => Ok(()),
        }
    }

    /// Every cone of the fan.
    pub fn cones(&self) -> Vec<OrbitRef> {
        cones_unchecked(self.fan)
    }

    /// Rank on `O(τ)` computed in a specific chart containing `τ`.
    pub fn rank_on_orbit_in_chart(&self, t: &OrbitRef, chart: usize) -> Result<usize> {
        self.ensure_regular()?;
        let co = orbit_in_given_chart(t, self.fan, chart)?;
        Ok(rank_from_vanishing(self.presentation(chart)?, &co.vanishing))
    }

    /// Rank on `O(τ)` via the first maximal cone containing `τ`.
    pub fn rank_on_orbit(&self, t: &OrbitRef) -> Result<usize> {
        self.ensure_regular()?;
        let chart = *self
            .fan
            .containing_max_cones(t.rays())
            .first()
            .ok_or_else(|| Error::ConeNotInFan(t.rays().to_vec()))?;
        self.rank_on_orbit_in_chart(t, chart)
    }

    /// Rank on every orbit, in [`enumerate_cones`](crate::orbits::enumerate_cones) order.
    pub fn orbit_ranks(&self) -> Result<Vec<OrbitRank>> {
        self.cones()
            .into_iter()
            .map(|orbit| {
                let rank = self.rank_on_orbit(&orbit)?;
                Ok(OrbitRank { orbit, rank })
            })
            .collect()
    }

    pub fn stratify(&self) -> Result<Stratification> {
        Ok(Stratification::from_ranks(self.fan.dim(), self.orbit_ranks()?))
    }

    /// Rank of `Π` at sampled points of `O(τ)` in every chart containing `τ`.
    pub fn numeric_rank_oracle(&self, t: &OrbitRef, seeds: &[u64]) -> Result<usize> {
        self.ensure_regular()?;
        if seeds.is_empty() {
            return Err(Error::NoSeeds);
        }
        let charts = self.fan.containing_max_cones(t.rays());
        if charts.is_empty() {
            return Err(Error::ConeNotInFan(t.rays().to_vec()));
        }
        let mut ranks = Vec::with_capacity(seeds.len() * charts.len());
        for &seed in seeds {
            for &chart in &charts {
                let co = orbit_in_given_chart(t, self.fan, chart)?;
                let z = sample_orbit_point(&co, seed);
                let m = evaluate_matrix(self.presentation(chart)?, &z)?;
                ranks.push(rational_rank(&m));
            }
        }
        if ranks.iter().any(|&r| r != ranks[0]) {
            return Err(Error::OracleDisagreement {
                cone: t.rays().to_vec(),
                ranks,
            });
        }
        Ok(ranks[0])
    }

    /// Checks every clause of the degeneracy-locus theorem by exhaustive orbit scan.
    pub fn certify(&self) -> Result<TheoremCertificate> {
        if self.bv.is_zero() {
            return Err(Error::ZeroBivector);
        }
        self.ensure_regular()?;
        let complete = is_complete(self.fan)?;
        let strata = self.stratify()?;
        let n = strata.dim();

        let mut clauses = Vec::new();
        let witness = |bound: usize| -> Option<(OrbitRef, usize)> {
            let best = strata.minimal(bound).iter().map(OrbitRef::dim).max()?;
            strata
                .minimal(bound)
                .iter()
                .find(|o| o.dim() == best)
                .map(|o| (o.clone(), o.dim()))
        };

        let w0 = witness(0);
        let status = match (&w0, complete) {
            (Some((_, d)), _) if *d >= 1 => ClauseStatus::Pass,
            (Some(_), _) => ClauseStatus::Fail,
            (None, true) => ClauseStatus::Fail,
            (None, false) => ClauseStatus::Vacuous,
        };
        clauses.push(Clause {
            k: 0,
            nonempty: w0.is_some(),
            required_dim: 1,
            witness: w0,
            status,
        });

        for k in (1..).take_while(|k| 2 * k < n) {
            let w = witness(2 * k);
            let ok = w.as_ref().is_some_and(|(_, d)| *d > 2 * k);
            clauses.push(Clause {
                k,
                nonempty: w.is_some(),
                required_dim: 2 * k + 1,
                witness: w,
                status: if ok { ClauseStatus::Pass } else { ClauseStatus::Fail },
            });
        }
        Ok(TheoremCertificate {
            dim: n,
            complete,
            regular: true,
            clauses,
        })
    }
}

/// Orbits grouped by the even bounds `2k ≤ n` on the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    dim: usize,
    ranks: Vec<OrbitRank>,
    by_bound: BTreeMap<usize, Vec<OrbitRef>>,
    minimal: BTreeMap<usize, Vec<OrbitRef>>,
}

impl Stratification {
    pub fn from_ranks(dim: usize, ranks: Vec<OrbitRank>) -> Self {
        let mut by_bound = BTreeMap::new();
        let mut minimal = BTreeMap::new();
        for bound in (0..=dim).step_by(2) {
            let set: Vec<OrbitRef> = ranks
                .iter()
                .filter(|r| r.rank <= bound)
                .map(|r| r.orbit.clone())
                .collect();
            let mins: Vec<OrbitRef> = set
                .iter()
                .filter(|t| !set.iter().any(|s| s != *t && s.is_face_of(t)))
                .cloned()
                .collect();
            by_bound.insert(bound, set);
            minimal.insert(bound, mins);
        }
        Stratification {
            dim,
            ranks,
            by_bound,
            minimal,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ranks(&self) -> &[OrbitRank] {
        &self.ranks
    }

    /// The even bounds `0, 2, …, ≤ n`.
    pub fn bounds(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_bound.keys().copied()
    }

    /// Cones whose orbits lie in `X_{≤bound}`; empty for unknown bounds.
    pub fn bound(&self, bound: usize) -> &[OrbitRef] {
        self.by_bound.get(&bound).map_or(&[], Vec::as_slice)
    }

    /// Face-minimal cones of [`bound`](Self::bound).
    pub fn minimal(&self, bound: usize) -> &[OrbitRef] {
        self.minimal.get(&bound).map_or(&[], Vec::as_slice)
    }
}

/// Components of `X_{≤2k}`: each face-minimal cone `τ` with the dimension `n - dim τ`
/// of its orbit closure.
pub fn components(s: &Stratification, k: usize) -> Vec<(OrbitRef, usize)> {
    s.minimal(2 * k)
        .iter()
        .map(|o| (o.clone(), o.dim()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseStatus {
    Pass,
    Fail,
    /// `X_{≤0}` is empty on a non-complete fan, which the theorem allows.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub k: usize,
    pub nonempty: bool,
    /// `2k + 1`, or 1 for the `k = 0` clause.
    pub required_dim: usize,
    /// Largest-dimensional component found, with its dimension.
    pub witness: Option<(OrbitRef, usize)>,
    pub status: ClauseStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCertificate {
    pub dim: usize,
    pub complete: bool,
    pub regular: bool,
    /// `k = 0` first, then every `k ≥ 1` with `2k < n`.
    pub clauses: Vec<Clause>,
}

impl TheoremCertificate {
    /// No clause failed (vacuous clauses count as passing).
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }
}

/// [`FanBivector::rank_on_orbit`] with the field written in the standard-orthant chart.
pub fn rank_on_orbit(bv: &EquivariantBivector, f: &Fan, t: &OrbitRef) -> Result<usize> {
    FanBivector::new(bv.clone(), f, &BaseChart::Standard)?.rank_on_orbit(t)
}

pub fn stratify(bv: &EquivariantBivector, f: &Fan) -> Result<Stratification> {
    FanBivector::new(bv.clone(), f, &BaseChart::Standard)?.stratify()
}

pub fn certify_main_theorem(bv: &EquivariantBivector, f: &Fan) -> Result<TheoremCertificate> {
    FanBivector::new(bv.clone(), f, &BaseChart::Standard)?.certify()
}

pub fn numeric_rank_oracle(
    bv: &EquivariantBivector,
    f: &Fan,
    t: &OrbitRef,
    seeds: &[u64],
) -> Result<usize> {
    FanBivector::new(bv.clone(), f, &BaseChart::Standard)?.numeric_rank_oracle(t, seeds)
}
