//! One function per subcommand. Each returns what to print on stdout and
//! whether the run counts as a success; errors carry their exit code.

use std::path::Path;

use torbiv_core::bivector::poisson_violation;
use torbiv_core::degeneracy::OrbitRank;
use torbiv_core::fan::{builtin_fan, is_complete, validate_fan};
use torbiv_core::linalg::rational_rank;
use torbiv_core::sampling::RegularCatalog;
use torbiv_core::{Atlas, BaseChart, EquivariantBivector, Error, Fan, FanBivector, OrbitRef};

use crate::document::{BivectorDocument, FanDocument};
use crate::report::{self, FieldSummary};
use crate::{CliError, Output};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: CliError) -> CliError {
    match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        CliError::Domain(m) => CliError::Domain(format!("{}: {m}", path.display())),
    }
}

pub fn load_fan(path: &Path) -> Result<(FanDocument, Fan), CliError> {
    let doc = FanDocument::parse(&read(path)?).map_err(|e| with_path(path, e))?;
    let fan = doc.to_fan().map_err(|e| with_path(path, e))?;
    Ok((doc, fan))
}

pub fn load_bivector(path: &Path) -> Result<(BivectorDocument, EquivariantBivector), CliError> {
    let doc = BivectorDocument::parse(&read(path)?).map_err(|e| with_path(path, e))?;
    let bv = doc.to_bivector().map_err(|e| with_path(path, e))?;
    Ok((doc, bv))
}

/// Sorts a library error into parse-level or domain-level.
fn classify(f: &Fan, e: Error) -> CliError {
    match e {
        Error::DimensionMismatch { .. }
        | Error::ChartOutOfRange(_)
        | Error::UnknownName(_)
        | Error::BadParams { .. }
        | Error::IndexOutOfRange { .. } => CliError::Parse(e.to_string()),
        Error::NotRegular { .. } => CliError::Domain(report::not_regular(f, &e)),
        Error::NoBaseChart => CliError::Domain(
            "the fan has no standard-orthant cone; set \"base_chart\" in the bivector document".into(),
        ),
        other => CliError::Domain(other.to_string()),
    }
}

fn render(json: bool, text: String, value: serde_json::Value) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("plain data");
        s.push('\n');
        s
    } else {
        text
    }
}

pub fn validate(fan_path: &Path, json: bool) -> Result<Output, CliError> {
    let (doc, fan) = load_fan(fan_path)?;
    let r = validate_fan(&fan);
    let complete = if r.is_valid() { Some(is_complete(&fan).map_err(|e| classify(&fan, e))?) } else { None };
    let name = doc.name.as_deref();
    Ok(Output {
        text: render(
            json,
            report::validation_text(name, &fan, &r, complete),
            report::validation_json(name, &fan, &r, complete),
        ),
        ok: r.is_valid(),
    })
}

struct Loaded {
    fan_doc: FanDocument,
    fan: Fan,
    bv: EquivariantBivector,
    base: BaseChart,
}

fn load_pair(fan_path: &Path, biv_path: &Path) -> Result<Loaded, CliError> {
    let (fan_doc, fan) = load_fan(fan_path)?;
    let (biv_doc, bv) = load_bivector(biv_path)?;
    if bv.dim() != fan.dim() {
        return Err(CliError::Parse(format!(
            "bivector has dimension {} but the fan has dimension {}",
            bv.dim(),
            fan.dim()
        )));
    }
    Ok(Loaded { base: biv_doc.base(), fan_doc, fan, bv })
}

fn regular_field<'f>(l: &'f Loaded) -> Result<FanBivector<'f>, CliError> {
    let fb = FanBivector::new(l.bv.clone(), &l.fan, &l.base).map_err(|e| classify(&l.fan, e))?;
    if let Some(e) = fb.regularity_violation() {
        return Err(classify(&l.fan, e.clone()));
    }
    Ok(fb)
}

fn summary(l: &Loaded, seed: u64) -> FieldSummary<'_> {
    FieldSummary {
        name: l.fan_doc.name.as_deref(),
        fan: &l.fan,
        alpha: l.bv.alpha().0.clone(),
        rank_a: rational_rank(l.bv.a()),
        seed,
    }
}

/// Closed-form rank, checked against sampled evaluation in every chart.
fn checked_rank(fb: &FanBivector, t: &OrbitRef, seed: u64) -> Result<usize, CliError> {
    let rank = fb.rank_on_orbit(t).map_err(|e| classify(fb.fan(), e))?;
    let sampled = fb.numeric_rank_oracle(t, &[seed]).map_err(|e| classify(fb.fan(), e))?;
    if sampled != rank {
        return Err(CliError::Domain(format!(
            "internal inconsistency on cone {:?}: closed form {rank}, sampled {sampled}",
            t.rays()
        )));
    }
    Ok(rank)
}

pub fn strata(
    fan_path: &Path,
    biv_path: &Path,
    json: bool,
    orbit: Option<Vec<usize>>,
    seed: u64,
) -> Result<Output, CliError> {
    let l = load_pair(fan_path, biv_path)?;
    let fb = regular_field(&l)?;
    let sum = summary(&l, seed);
    if let Some(rays) = orbit {
        let t = OrbitRef::new(rays, l.fan.dim());
        let rank = checked_rank(&fb, &t, seed)?;
        let charts = l.fan.containing_max_cones(t.rays());
        let bounds: Vec<usize> = (0..=l.fan.dim()).step_by(2).filter(|&b| rank <= b).collect();
        let r = OrbitRank { orbit: t, rank };
        return Ok(Output::success(render(
            json,
            report::orbit_text(&sum, &r, &charts, &bounds),
            report::orbit_json_report(&sum, &r, &charts, &bounds),
        )));
    }
    let s = fb.stratify().map_err(|e| classify(&l.fan, e))?;
    for r in s.ranks() {
        checked_rank(&fb, &r.orbit, seed)?;
    }
    Ok(Output::success(render(json, report::strata_text(&sum, &s), report::strata_json(&sum, &s))))
}

pub fn certify(fan_path: &Path, biv_path: &Path, json: bool) -> Result<Output, CliError> {
    let l = load_pair(fan_path, biv_path)?;
    let fb = regular_field(&l)?;
    let cert = fb.certify().map_err(|e| classify(&l.fan, e))?;
    let sum = summary(&l, 0);
    Ok(Output {
        text: render(json, report::certificate_text(&sum, &cert), report::certificate_json(&sum, &cert)),
        ok: cert.passed(),
    })
}

pub fn poisson(biv_path: &Path) -> Result<Output, CliError> {
    let (_, bv) = load_bivector(biv_path)?;
    Ok(Output::success(report::poisson_text(poisson_violation(&bv).as_ref())))
}

pub fn gallery(name: &str, params: &[i64]) -> Result<Output, CliError> {
    let fan = builtin_fan(name, params).map_err(|e| CliError::Parse(e.to_string()))?;
    let label = if params.is_empty() {
        name.to_string()
    } else {
        let p: Vec<String> = params.iter().map(i64::to_string).collect();
        format!("{name}({})", p.join(","))
    };
    Ok(Output::success(FanDocument::from_fan(&fan, Some(label)).to_canonical_string()))
}

pub fn transition(fan_path: &Path, biv_path: &Path, chart: usize) -> Result<Output, CliError> {
    let l = load_pair(fan_path, biv_path)?;
    let atlas = Atlas::new(&l.fan, &l.base).map_err(|e| classify(&l.fan, e))?;
    let cp = atlas.presentation(&l.bv, chart).map_err(|e| classify(&l.fan, e))?;
    Ok(Output::success(report::transition_text(&l.fan, chart, &cp)))
}

/// A regular field drawn from the multidegrees in `[-radius, radius]ⁿ`,
/// written in the standard chart when the fan has one and in the chart of
/// maximal cone 0 otherwise.
pub fn random(fan_path: &Path, seed: u64, radius: i64) -> Result<Output, CliError> {
    let (_, fan) = load_fan(fan_path)?;
    if !validate_fan(&fan).is_valid() {
        return Err(CliError::Domain("invalid fan; run `torbiv validate` for details".into()));
    }
    if !(0..=4).contains(&radius) {
        return Err(CliError::Parse(format!("radius must be in 0..=4, got {radius}")));
    }
    let (base, base_chart) = match fan.standard_orthant() {
        Some(_) => (BaseChart::Standard, None),
        None => (BaseChart::MaxCone(0), Some(0)),
    };
    let atlas = Atlas::new(&fan, &base).map_err(|e| classify(&fan, e))?;
    let catalog = RegularCatalog::build(&atlas, radius).map_err(|e| classify(&fan, e))?;
    let bv = catalog
        .sample(seed)
        .ok_or_else(|| CliError::Domain("no nonzero regular field in this range of multidegrees".into()))?;
    BivectorDocument::from_bivector(&bv, base_chart)
        .to_canonical_string()
        .map(Output::success)
}

/// `"0,2"` into ray indices; an empty string is the zero cone.
pub fn parse_orbit(s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("--orbit expects comma-separated ray indices, got {s:?}")))
        })
        .collect()
}

pub fn seed_from_env(value: Option<&str>) -> Result<u64, CliError> {
    match value {
        None => Ok(0),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("TORBIV_SEED must be a nonnegative integer, got {v:?}"))),
    }
}
