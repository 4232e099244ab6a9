//! Text and JSON renderings of command results.
//!
//! Ray and cone indices are 0-based, as in the documents. Chart coordinates
//! `z1..zn` are 1-based. JSON objects come out with sorted keys.

use std::fmt::Write as _;

use serde_json::{json, Value};
use torbiv_core::bivector::PoissonViolation;
use torbiv_core::degeneracy::{ClauseStatus, OrbitRank};
use torbiv_core::fan::{ValidationReport, Violation, Warning};
use torbiv_core::{ChartPresentation, Covector, Error, Fan, OrbitRef, Stratification, TheoremCertificate};

use crate::document::rational_string;

/// `(z1,z2)`-style name of a chart coordinate pair.
fn coords(i: usize, j: usize) -> String {
    format!("(z{},z{})", i + 1, j + 1)
}

/// Diagnosis of a pole: which chart and which entry.
pub fn not_regular(f: &Fan, e: &Error) -> String {
    match e {
        Error::NotRegular { chart, i, j, coord, exponent } => format!(
            "bivector is not regular: on the chart of maximal cone {chart} (rays {:?}), \
             entry {} has exponent {exponent} in z{}",
            f.max_cones()[*chart],
            coords(*i, *j),
            coord + 1
        ),
        other => other.to_string(),
    }
}

fn violation_text(v: &Violation) -> String {
    match v {
        Violation::DuplicateRay { first, second } => format!("rays {first} and {second} coincide"),
        Violation::NotSmooth { cone } => format!("maximal cone {cone} is not smooth"),
        Violation::NestedCones { inner, outer } => {
            format!("maximal cone {inner} is a face of maximal cone {outer}")
        }
        Violation::BadIntersection { first, second, shared, found } => format!(
            "maximal cones {first} and {second} meet in the cone on {} instead of their common face on rays {shared:?}",
            found.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn warning_text(w: &Warning) -> String {
    match w {
        Warning::RescaledRay { ray, factor } => format!("ray {ray} was divided by {factor} to make it primitive"),
        Warning::UnusedRay { ray } => format!("ray {ray} lies in no maximal cone"),
    }
}

pub fn validation_text(name: Option<&str>, f: &Fan, r: &ValidationReport, complete: Option<bool>) -> String {
    let mut out = String::new();
    if let Some(name) = name {
        writeln!(out, "fan: {name}").unwrap();
    }
    writeln!(out, "dim: {}, rays: {}, maximal cones: {}", f.dim(), f.rays().len(), f.max_cones().len()).unwrap();
    for (k, smooth) in r.smooth.iter().enumerate() {
        writeln!(out, "  cone {k} {:?}: {}", f.max_cones()[k], if *smooth { "smooth" } else { "NOT smooth" }).unwrap();
    }
    writeln!(out, "pairwise intersections checked: {}", r.pairs_checked).unwrap();
    for v in &r.violations {
        writeln!(out, "error: {}", violation_text(v)).unwrap();
    }
    for w in &r.warnings {
        writeln!(out, "warning: {}", warning_text(w)).unwrap();
    }
    writeln!(out, "valid: {}", r.is_valid()).unwrap();
    if let Some(c) = complete {
        writeln!(out, "complete: {c}").unwrap();
    }
    out
}

pub fn validation_json(name: Option<&str>, f: &Fan, r: &ValidationReport, complete: Option<bool>) -> Value {
    json!({
        "name": name,
        "dim": f.dim(),
        "smooth": r.smooth,
        "pairs_checked": r.pairs_checked,
        "violations": r.violations.iter().map(violation_text).collect::<Vec<_>>(),
        "warnings": r.warnings.iter().map(warning_text).collect::<Vec<_>>(),
        "valid": r.is_valid(),
        "complete": complete,
    })
}

fn cone_list(orbits: &[OrbitRef]) -> String {
    orbits
        .iter()
        .map(|o| format!("{:?} (dim {})", o.rays(), o.dim()))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Metadata lines shared by `strata` and `certify`.
pub struct FieldSummary<'a> {
    pub name: Option<&'a str>,
    pub fan: &'a Fan,
    pub alpha: Vec<i64>,
    pub rank_a: usize,
    pub seed: u64,
}

impl FieldSummary<'_> {
    fn header(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "fan: {}dim {}, {} maximal cones",
            self.name.map(|n| format!("{n}, ")).unwrap_or_default(),
            self.fan.dim(),
            self.fan.max_cones().len()
        )
        .unwrap();
        writeln!(out, "field: alpha {}, rank of A {}, regular", Covector(self.alpha.clone()), self.rank_a).unwrap();
        out
    }
}

pub fn strata_text(summary: &FieldSummary, s: &Stratification) -> String {
    let mut out = summary.header();
    writeln!(out, "oracle seed: {} (every rank cross-checked in every containing chart)", summary.seed).unwrap();
    writeln!(out, "orbits:").unwrap();
    for r in s.ranks() {
        writeln!(out, "  cone {:?}: orbit dim {}, rank {}", r.orbit.rays(), r.orbit.dim(), r.rank).unwrap();
    }
    for b in s.bounds() {
        let set = s.bound(b);
        if set.is_empty() {
            writeln!(out, "bound {b}: empty").unwrap();
            continue;
        }
        let mins = s.minimal(b);
        writeln!(out, "bound {b}: {} orbits", set.len()).unwrap();
        writeln!(out, "  components ({}): {}", mins.len(), cone_list(mins)).unwrap();
    }
    out
}

fn orbit_json(r: &OrbitRank) -> Value {
    json!({ "cone": r.orbit.rays(), "dim": r.orbit.dim(), "rank": r.rank })
}

pub fn strata_json(summary: &FieldSummary, s: &Stratification) -> Value {
    let bounds: Vec<Value> = s
        .bounds()
        .map(|b| {
            json!({
                "bound": b,
                "cones": s.bound(b).iter().map(|o| o.rays().to_vec()).collect::<Vec<_>>(),
                "components": s.minimal(b).iter().map(|o| json!({ "cone": o.rays(), "dim": o.dim() })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "fan": summary.name,
        "dim": summary.fan.dim(),
        "alpha": summary.alpha,
        "rank_a": summary.rank_a,
        "oracle_seed": summary.seed,
        "orbits": s.ranks().iter().map(orbit_json).collect::<Vec<_>>(),
        "bounds": bounds,
    })
}

pub fn orbit_text(summary: &FieldSummary, r: &OrbitRank, charts: &[usize], bounds: &[usize]) -> String {
    let mut out = summary.header();
    writeln!(out, "orbit of cone {:?}: dim {}, rank {}", r.orbit.rays(), r.orbit.dim(), r.rank).unwrap();
    writeln!(out, "charts containing it: {charts:?} (rank agrees in each, oracle seed {})", summary.seed).unwrap();
    let within: Vec<String> = bounds.iter().map(|b| b.to_string()).collect();
    writeln!(out, "lies in X<=s for s in {{{}}}", within.join(", ")).unwrap();
    out
}

pub fn orbit_json_report(summary: &FieldSummary, r: &OrbitRank, charts: &[usize], bounds: &[usize]) -> Value {
    json!({
        "fan": summary.name,
        "alpha": summary.alpha,
        "oracle_seed": summary.seed,
        "orbit": orbit_json(r),
        "charts": charts,
        "bounds": bounds,
    })
}

fn status_word(s: ClauseStatus) -> &'static str {
    match s {
        ClauseStatus::Pass => "pass",
        ClauseStatus::Fail => "FAIL",
        ClauseStatus::Vacuous => "vacuous",
    }
}

pub fn certificate_text(summary: &FieldSummary, c: &TheoremCertificate) -> String {
    let mut out = summary.header();
    writeln!(out, "complete: {}", c.complete).unwrap();
    for cl in &c.clauses {
        let b = 2 * cl.k;
        let line = match (&cl.witness, cl.status) {
            (None, ClauseStatus::Vacuous) => {
                format!("k={}: stratum empty, fan not complete; clause vacuous", cl.k)
            }
            (None, st) => format!("k={}: X<={b} is empty: {}", cl.k, status_word(st)),
            (Some((t, d)), st) => format!(
                "k={}: X<={b} nonempty, component of cone {:?} has dim {d} (need >= {}): {}",
                cl.k,
                t.rays(),
                cl.required_dim,
                status_word(st)
            ),
        };
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "certificate: {}", if c.passed() { "pass" } else { "FAIL" }).unwrap();
    out
}

pub fn certificate_json(summary: &FieldSummary, c: &TheoremCertificate) -> Value {
    let clauses: Vec<Value> = c
        .clauses
        .iter()
        .map(|cl| {
            json!({
                "k": cl.k,
                "bound": 2 * cl.k,
                "nonempty": cl.nonempty,
                "required_dim": cl.required_dim,
                "witness": cl.witness.as_ref().map(|(t, d)| json!({ "cone": t.rays(), "dim": d })),
                "status": status_word(cl.status).to_lowercase(),
            })
        })
        .collect();
    json!({
        "fan": summary.name,
        "dim": c.dim,
        "alpha": summary.alpha,
        "complete": c.complete,
        "regular": c.regular,
        "clauses": clauses,
        "passed": c.passed(),
    })
}

pub fn poisson_text(v: Option<&PoissonViolation>) -> String {
    match v {
        None => "poisson: true\n".into(),
        Some(v) => {
            let (j, h, k) = v.triple;
            format!(
                "poisson: false\nviolating triple: ({},{},{})\nvalue: {}\n",
                j + 1,
                h + 1,
                k + 1,
                rational_string(&v.value)
            )
        }
    }
}

pub fn transition_text(f: &Fan, chart: usize, cp: &ChartPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "chart: maximal cone {chart}, rays {:?}", f.max_cones()[chart]).unwrap();
    if cp.affine_coords < cp.beta.len() {
        writeln!(out, "coordinates z{}..z{} are torus coordinates", cp.affine_coords + 1, cp.beta.len()).unwrap();
    }
    writeln!(out, "beta: {}", cp.beta).unwrap();
    writeln!(out, "B:").unwrap();
    let n = cp.b.rows();
    let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| rational_string(&cp.b[(i, j)])).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "  [{}]", line.join(" ")).unwrap();
    }
    match torbiv_core::bivector::irregular_entry(cp) {
        None => writeln!(out, "regular on this chart: true").unwrap(),
        Some((i, j, coord, e)) => writeln!(
            out,
            "regular on this chart: false (entry {} has exponent {e} in z{})",
            coords(i, j),
            coord + 1
        )
        .unwrap(),
    }
    out
}
