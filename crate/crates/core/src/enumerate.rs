//! Exhaustive enumeration of Fano triangles in a coordinate box, the audit
//! battery over the resulting records, and the line-delimited atlas format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cascade::{fibration_profile, reachable_basic_types, run_cascade, BasicType};
use crate::classify::{classify, recognize_wps, two_point_name, WpsName};
use crate::cycle::WeightedCycle;
use crate::error::{Error, Result};
use crate::fan::{barycenter, canonical_form, resolve, FanoTriangle};
use crate::invariants::{surface_invariants, trace_matches_table};
use crate::lattice::{gcd, hj_eval, Rational, RationalPoint, SingularityType};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub canonical_vertices: FanoTriangle,
    pub weight_cycle: WeightedCycle,
    pub sing: Vec<SingularityType>,
    pub n_rays: usize,
    #[serde(rename = "L")]
    pub exceptional_count: usize,
    pub trace: i64,
    pub k2: Rational,
    pub e_orb: Rational,
    pub brauer_order: i64,
    pub barycenter: RationalPoint,
    pub dual_barycenter: RationalPoint,
    pub gorenstein_index: i64,
    pub basic: BasicType,
    pub cascade_length: usize,
    pub wps: WpsName,
    pub ke_candidate: bool,
}

impl SurfaceRecord {
    /// Computes the full record of the class of `t`.
    pub fn compute(t: &FanoTriangle) -> Result<SurfaceRecord> {
        let t = canonical_form(t)?;
        let fan = resolve(&t)?;
        let cycle = fan.cycle();
        let inv = surface_invariants(&t)?;
        let cascade = run_cascade(&cycle)?;
        Ok(SurfaceRecord {
            canonical_vertices: t,
            weight_cycle: cycle,
            sing: inv.sing,
            n_rays: inv.n_rays,
            exceptional_count: inv.exceptional_count,
            trace: inv.trace,
            k2: inv.k2,
            e_orb: inv.e_orb,
            brauer_order: inv.brauer_order,
            barycenter: inv.barycenter,
            dual_barycenter: inv.dual_barycenter,
            gorenstein_index: inv.gorenstein_index,
            basic: cascade.basic,
            cascade_length: cascade.len(),
            wps: recognize_wps(&t)?,
            ke_candidate: inv.barycenter.is_origin(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub box_bound: i64,
    pub index_max: Option<i64>,
    pub jobs: Option<usize>,
}

impl EnumerationConfig {
    pub fn new(box_bound: i64) -> EnumerationConfig {
        EnumerationConfig {
            box_bound,
            index_max: None,
            jobs: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.box_bound < 1 {
            return Err(Error::Parse(format!(
                "box bound must be >= 1, got {}",
                self.box_bound
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Parse("jobs must be >= 1".into()));
        }
        Ok(())
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            None => Ok(f()),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map(|pool| pool.install(f))
                .map_err(|e| Error::Io(e.to_string())),
        }
    }
}

fn primitive_points(b: i64) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = (-b..=b)
        .flat_map(|x| (-b..=b).map(move |y| [x, y]))
        .filter(|&[x, y]| gcd(x, y) == 1)
        .collect();
    pts.sort_unstable();
    pts
}

fn det(p: [i64; 2], q: [i64; 2]) -> i64 {
    p[0] * q[1] - p[1] * q[0]
}

fn origin_strictly_inside(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> bool {
    let d = [det(a, b), det(b, c), det(c, a)];
    d.iter().all(|&x| x > 0) || d.iter().all(|&x| x < 0)
}

/// One canonical representative per lattice-equivalence class of triangles with
/// vertices in `[-B, B]^2`, sorted.
pub fn enumerate_triangles(cfg: &EnumerationConfig) -> Result<Vec<FanoTriangle>> {
    cfg.validate()?;
    let pts = primitive_points(cfg.box_bound);
    let per_first = cfg.run(|| {
        (0..pts.len())
            .into_par_iter()
            .map(|i| -> Result<BTreeSet<FanoTriangle>> {
                let mut found = BTreeSet::new();
                for j in i + 1..pts.len() {
                    for k in j + 1..pts.len() {
                        if origin_strictly_inside(pts[i], pts[j], pts[k]) {
                            let t = FanoTriangle::from_coords([pts[i], pts[j], pts[k]])?;
                            found.insert(canonical_form(&t)?);
                        }
                    }
                }
                Ok(found)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let all: BTreeSet<FanoTriangle> = per_first.into_iter().flatten().collect();
    Ok(all.into_iter().collect())
}

/// Full records for every enumerated class, optionally restricted by Gorenstein index.
pub fn enumerate_records(cfg: &EnumerationConfig) -> Result<Vec<SurfaceRecord>> {
    let triangles = enumerate_triangles(cfg)?;
    let records = cfg.run(|| {
        triangles
            .par_iter()
            .map(SurfaceRecord::compute)
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(records
        .into_iter()
        .filter(|r| cfg.index_max.is_none_or(|m| r.gorenstein_index <= m))
        .collect())
}

pub fn reflexive_subset(records: &[SurfaceRecord]) -> Vec<&SurfaceRecord> {
    records.iter().filter(|r| r.gorenstein_index == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    /// The violating record with fewest rays (ties broken by vertices) and the reason.
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub cycles_checked: usize,
    pub confluent: usize,
    pub counterexamples: Vec<(WeightedCycle, Vec<BasicType>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub records: usize,
    pub checks: Vec<CheckReport>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "audited {} records", self.records)?;
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            write!(
                f,
                "{status:>4} {:<24} checked {:>7}  violations {}",
                c.name, c.checked, c.violations
            )?;
            if let Some(ex) = &c.counterexample {
                write!(f, "  e.g. {ex}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub const CHECKS: [&str; 12] = [
    "record_consistency",
    "sum_rule",
    "three_marked",
    "cascade_invariance",
    "trace_table",
    "basic_exhaustiveness",
    "classification_coherence",
    "one_point_range",
    "ke_suite",
    "brauer_wps_duality",
    "classify_round_trip",
    "fibration_profile",
];

/// `Ok(())` if the check holds for the record, `Err(reason)` otherwise.
type Verdict = std::result::Result<(), String>;

fn ensure(cond: bool, reason: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(reason())
    }
}

fn check_record(name: &str, r: &SurfaceRecord) -> Verdict {
    let c = &r.weight_cycle;
    match name {
        "record_consistency" => {
            let fresh = SurfaceRecord::compute(&r.canonical_vertices).map_err(|e| e.to_string())?;
            ensure(&fresh == r, || {
                "stored fields differ from recomputation".into()
            })
        }
        "sum_rule" => ensure(c.satisfies_sum_rule(), || {
            format!("sum {} != {}", c.sum(), c.expected_sum())
        }),
        "three_marked" => ensure(c.marked_count() == 3, || {
            format!("{} marked vertices", c.marked_count())
        }),
        "cascade_invariance" => {
            let trace = run_cascade(c).map_err(|e| e.to_string())?;
            ensure(trace.basic == r.basic, || {
                format!("cascade ends at {}, record says {}", trace.basic, r.basic)
            })
        }
        "trace_table" => ensure(trace_matches_table(r.basic, c), || {
            format!(
                "trace {} with L = {} for {}",
                c.trace(),
                c.exceptional_count(),
                r.basic
            )
        }),
        "basic_exhaustiveness" => {
            let end = run_cascade(c).map_err(|e| e.to_string())?.end;
            ensure(end.equivalent(&r.basic.cycle()), || {
                format!("terminal graph {end} is not {}", r.basic)
            })
        }
        "classification_coherence" => classification_coherence(r),
        "ke_suite" => ke_suite(r),
        "brauer_wps_duality" => {
            let [a, b, c3] = r.canonical_vertices.vertices();
            let index = gcd(gcd(a.det(&b), b.det(&c3)), c3.det(&a));
            ensure(
                r.brauer_order == index && r.wps.quotient_order == index,
                || {
                    format!(
                        "brauer {} vs ray index {index} vs quotient {}",
                        r.brauer_order, r.wps.quotient_order
                    )
                },
            )
        }
        "classify_round_trip" => {
            let result = classify(&r.sing).map_err(|e| e.to_string())?;
            ensure(result.contains(&r.canonical_vertices), || {
                format!(
                    "classify returned {} solutions, none equal",
                    result.solutions().len()
                )
            })
        }
        "fibration_profile" => {
            if r.basic == BasicType::P2 {
                return Ok(());
            }
            let p = fibration_profile(c, r.basic).map_err(|e| e.to_string())?;
            let expected = match r.basic {
                BasicType::Std0(n) => Some((-n, n)),
                BasicType::Std1(n) => Some((-n, n - 1)),
                BasicType::Std2(n) => Some((-n, n - 2)),
                _ => None,
            };
            ensure(
                expected.is_none_or(|s| s == (p.s1_weight, p.s2_weight)),
                || format!("profile {p} for {}", r.basic),
            )
        }
        other => Err(format!("unknown check {other}")),
    }
}

fn two_point_split_names(sing: &[SingularityType]) -> Vec<[i64; 3]> {
    let mut names = Vec::new();
    let orient = |s: &SingularityType| {
        [
            s.chain().entries().to_vec(),
            s.chain().reversed().entries().to_vec(),
        ]
    };
    for (a, b) in [(&sing[0], &sing[1]), (&sing[1], &sing[0])] {
        for c1 in orient(a) {
            for c2 in orient(b) {
                let probe: Vec<i64> = c1[1..]
                    .iter()
                    .copied()
                    .chain([1])
                    .chain(c2.iter().copied())
                    .collect();
                if c1.len() > 1 && hj_eval(&probe).is_ok_and(|v| v.is_zero()) {
                    if let Ok(mut w) = two_point_name(c1[0], &c2) {
                        w.sort_unstable();
                        names.push(w);
                    }
                }
            }
        }
    }
    names
}

fn classification_coherence(r: &SurfaceRecord) -> Verdict {
    let k = r.sing.len();
    let weights = r.wps.sorted_weights();
    if k <= 2 {
        ensure(r.brauer_order == 1, || {
            format!("{k} singular points but brauer order {}", r.brauer_order)
        })?;
    }
    match k {
        0 => ensure(r.basic == BasicType::P2 && weights == [1, 1, 1], || {
            format!("{} {}", r.basic, r.wps)
        }),
        1 => {
            let chain = r.sing[0].chain().entries();
            ensure(
                matches!(chain, &[n] if r.basic == BasicType::Std0(n) && weights == [1, 1, n]),
                || format!("single point {} on {} {}", r.sing[0], r.basic, r.wps),
            )
        }
        2 => {
            ensure(matches!(r.basic, BasicType::Std1(_)), || {
                format!("two points, basic {}", r.basic)
            })?;
            ensure(
                weights[0] == 1 && two_point_split_names(&r.sing).contains(&weights),
                || format!("two points, {} not of the form P(1,q,(n-1)q+q1)", r.wps),
            )
        }
        3 => ensure(
            matches!(r.basic, BasicType::Std2(_) | BasicType::ThreeA2),
            || format!("three points, basic {}", r.basic),
        ),
        _ => Err(format!("{k} singular points")),
    }
}

fn ke_suite(r: &SurfaceRecord) -> Verdict {
    let origin = barycenter(&r.canonical_vertices).is_origin();
    ensure(origin == r.ke_candidate, || {
        "ke_candidate flag disagrees with barycenter".into()
    })?;
    if matches!(r.basic, BasicType::Std2(_)) {
        ensure(!origin, || {
            "Std2-basic record with barycenter at the origin".into()
        })?;
    }
    if !origin || r.sing.is_empty() {
        return Ok(());
    }
    let three = Rational::integer(3);
    ensure(r.sing.len() == 3, || {
        format!("{} singular points", r.sing.len())
    })?;
    ensure(three.checked_mul(r.e_orb).ok() == Some(r.k2), || {
        format!("K^2 = {} but e_orb = {}", r.k2, r.e_orb)
    })?;
    ensure(r.basic == BasicType::ThreeA2, || {
        format!("cascades to {}", r.basic)
    })
}

fn one_point_range(records: &[SurfaceRecord], box_bound: Option<i64>) -> CheckReport {
    let present: BTreeSet<i64> = records
        .iter()
        .filter_map(|r| match r.sing.as_slice() {
            [s] => s.chain().entries().first().copied(),
            _ => None,
        })
        .collect();
    let missing: Vec<i64> = box_bound
        .map(|b| (2..=b).filter(|n| !present.contains(n)).collect())
        .unwrap_or_default();
    CheckReport {
        name: "one_point_range".into(),
        checked: box_bound.map_or(0, |b| (b - 1).max(0) as usize),
        violations: missing.len(),
        counterexample: missing.first().map(|n| format!("P(1,1,{n}) missing")),
    }
}

/// Runs one named per-record check over `records`.
pub fn run_check(name: &str, records: &[SurfaceRecord]) -> CheckReport {
    let failures: Vec<(&SurfaceRecord, String)> = records
        .par_iter()
        .filter_map(|r| check_record(name, r).err().map(|why| (r, why)))
        .collect();
    let counterexample = failures
        .iter()
        .min_by_key(|(r, _)| (r.n_rays, r.canonical_vertices))
        .map(|(r, why)| format!("{}: {why}", r.canonical_vertices));
    CheckReport {
        name: name.into(),
        checked: records.len(),
        violations: failures.len(),
        counterexample,
    }
}

/// Runs every check over `records`. With `box_bound`, also checks that each
/// `P(1,1,n)` with `2 <= n <= B` is present.
pub fn audit(records: &[SurfaceRecord], box_bound: Option<i64>) -> AuditReport {
    let checks = CHECKS
        .iter()
        .map(|&name| match name {
            "one_point_range" => one_point_range(records, box_bound),
            _ => run_check(name, records),
        })
        .collect();
    AuditReport {
        records: records.len(),
        checks,
    }
}

/// Explores every admissible cascade choice for each record.
pub fn confluence_report(records: &[SurfaceRecord]) -> Result<ConfluenceReport> {
    let outcomes = records
        .par_iter()
        .map(|r| reachable_basic_types(&r.weight_cycle).map(|s| (r.weight_cycle.clone(), s)))
        .collect::<Result<Vec<_>>>()?;
    let mut counterexamples = Vec::new();
    for (c, reached) in &outcomes {
        if reached.len() != 1 {
            counterexamples.push((c.clone(), reached.iter().copied().collect()));
        }
    }
    Ok(ConfluenceReport {
        cycles_checked: outcomes.len(),
        confluent: outcomes.len() - counterexamples.len(),
        counterexamples,
    })
}

/// Number of classes per basic tag.
pub fn basic_type_counts(records: &[SurfaceRecord]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in records {
        *out.entry(r.basic.tag().to_string()).or_insert(0) += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasHeader {
    pub format_version: u32,
    pub box_bound: i64,
    pub tool_version: String,
}

impl AtlasHeader {
    pub fn new(box_bound: i64) -> AtlasHeader {
        AtlasHeader {
            format_version: FORMAT_VERSION,
            box_bound,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub fn write_atlas<W: Write>(
    out: W,
    header: &AtlasHeader,
    records: &[SurfaceRecord],
) -> Result<()> {
    let mut out = BufWriter::new(out);
    let json = |e: serde_json::Error| Error::Io(e.to_string());
    serde_json::to_writer(&mut out, header).map_err(json)?;
    out.write_all(b"\n")?;
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(json)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_atlas<R: std::io::Read>(input: R) -> Result<(AtlasHeader, Vec<SurfaceRecord>)> {
    let mut lines = BufReader::new(input).lines().enumerate();
    let malformed = |line: usize, message: String| Error::MalformedLine {
        line: line + 1,
        message,
    };
    let header: AtlasHeader = match lines.next() {
        None => return Err(malformed(0, "missing header line".into())),
        Some((i, line)) => serde_json::from_str(&line?).map_err(|e| malformed(i, e.to_string()))?,
    };
    if header.format_version != FORMAT_VERSION {
        return Err(malformed(
            0,
            format!("unsupported format version {}", header.format_version),
        ));
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).map_err(|e| malformed(i, e.to_string()))?);
    }
    Ok((header, records))
}

pub fn persist(records: &[SurfaceRecord], box_bound: i64, path: &Path) -> Result<()> {
    write_atlas(
        std::fs::File::create(path)?,
        &AtlasHeader::new(box_bound),
        records,
    )
}

pub fn load(path: &Path) -> Result<(AtlasHeader, Vec<SurfaceRecord>)> {
    read_atlas(std::fs::File::open(path)?)
}
