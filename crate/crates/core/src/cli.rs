//! The `tldp` command-line interface.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cascade::{brauer_family, run_cascade};
use crate::classify::{classify, literal_step4_verdict, ClassifyResult};
use crate::cycle::WeightedCycle;
use crate::enumerate::{
    audit, basic_type_counts, confluence_report, enumerate_records, load, reflexive_subset,
    run_check, write_atlas, AtlasHeader, EnumerationConfig, SurfaceRecord,
};
use crate::error::{Error, Result};
use crate::fan::{realize, resolve, FanoTriangle};
use crate::invariants::{brauer_group, surface_invariants};
use crate::lattice::{parse_singularities, SingularityType};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_NOT_EXISTS: i32 = 3;
pub const EXIT_AUDIT_FAILURE: i32 = 4;

pub const FIXTURES_ENV: &str = "TLDP_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "tldp",
    version,
    about = "Toric log del Pezzo surfaces of Picard number one"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide existence for a list of singularity types, e.g. "3/2,2/1" or "[2,2],[2]".
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        sing: String,
    },
    /// Minimal resolution of a Fano triangle.
    Resolve {
        #[arg(long, allow_hyphen_values = true)]
        triangle: String,
    },
    /// Cascade of a triangle's resolution, or of an explicit weighted cycle.
    Cascade {
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "cycle",
            required_unless_present = "cycle"
        )]
        triangle: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        cycle: Option<String>,
    },
    /// K^2, orbifold Euler number, Gorenstein index, Brauer group and barycenters
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        triangle: String,
    },
    /// Enumerate all classes with vertices in [-B, B]^2 and write an atlas.
    Enumerate {
        #[arg(long = "box")]
        box_bound: i64,
        #[arg(long)]
        index_max: Option<i64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Atlas path; the atlas goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant battery over an atlas.
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also explore every cascade choice for every cycle.
        #[arg(long)]
        confluence: bool,
    },
    /// Member n of the family with Brauer group of order n + 3
    BrauerFamily {
        #[arg(long)]
        n: usize,
    },
    /// Records with barycenter at the origin, with the Kahler-Einstein checks.
    KeScan {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// Regression fixture: number of classes per box bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionFixtures {
    pub classes_per_box: BTreeMap<String, usize>,
    pub reflexive_classes: usize,
}

pub fn fixtures_path() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/regression.json"))
}

pub fn load_fixtures(path: &Path) -> Result<RegressionFixtures> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::MalformedLine { .. } | Error::Io(_) => EXIT_PARSE,
        _ => EXIT_INVALID_INPUT,
    }
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    /// One JSON line, or the text rendering.
    fn emit(&mut self, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{value}")?,
            Format::Text => writeln!(self.out, "{}", text())?,
        }
        Ok(())
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

/// Parses and runs a command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let mut output = Output {
        format: cli.format,
        out,
    };
    match execute(cli.command, &mut output, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn parse_triangle(s: &str) -> Result<FanoTriangle> {
    s.parse()
}

fn execute(cmd: Command, out: &mut Output<'_>, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Classify { sing } => cmd_classify(&sing, out),
        Command::Resolve { triangle } => {
            let t = parse_triangle(&triangle)?;
            let fan = resolve(&t)?;
            let cycle = fan.cycle();
            let value = json!({
                "triangle": t,
                "rays": fan.rays.iter().map(|r| [r.x, r.y]).collect::<Vec<_>>(),
                "cycle": cycle,
                "marked": fan.marked,
                "canonical_cycle": cycle.canonical(),
            });
            out.emit(&value, || {
                let rays: Vec<String> = fan.rays.iter().map(|r| r.to_string()).collect();
                format!(
                    "triangle {t}\nrays     {}\ncycle    {cycle}",
                    rays.join(" ")
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Cascade { triangle, cycle } => {
            let c = match (triangle, cycle) {
                (Some(t), _) => resolve(&parse_triangle(&t)?)?.cycle(),
                (None, Some(c)) => c.parse::<WeightedCycle>()?,
                (None, None) => return Err(Error::Parse("need --triangle or --cycle".into())),
            };
            c.validate()?;
            realize(&c)?;
            let trace = run_cascade(&c)?;
            out.emit(&to_value(&trace), || {
                let mut s = format!("start {}\n", trace.start);
                for step in &trace.steps {
                    s += &format!(
                        "step {}: blow down vertex {} of {}\n",
                        step.step, step.removed_index, step.cycle
                    );
                }
                s + &format!("end   {}\nbasic {}", trace.end, trace.basic)
            })?;
            Ok(EXIT_OK)
        }
        Command::Invariants { triangle } => {
            let inv = surface_invariants(&parse_triangle(&triangle)?)?;
            out.emit(&to_value(&inv), || {
                let sing: Vec<String> = inv.sing.iter().map(|s| s.to_string()).collect();
                format!(
                    "rays {}  L {}  trace {}\nK^2 {}  e_orb {}\nbrauer {} (snf {:?})  gorenstein {}\nbarycenter {}  dual barycenter {}\nbasic {}  sing {}",
                    inv.n_rays,
                    inv.exceptional_count,
                    inv.trace,
                    inv.k2,
                    inv.e_orb,
                    inv.brauer_order,
                    inv.snf_diagonal,
                    inv.gorenstein_index,
                    inv.barycenter,
                    inv.dual_barycenter,
                    inv.basic,
                    sing.join(" ")
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            box_bound,
            index_max,
            jobs,
            out: path,
        } => {
            let cfg = EnumerationConfig {
                box_bound,
                index_max,
                jobs,
            };
            let records = enumerate_records(&cfg)?;
            let header = AtlasHeader::new(box_bound);
            let summary = enumerate_summary(&cfg, &records);
            match &path {
                Some(p) => {
                    write_atlas(std::fs::File::create(p)?, &header, &records)?;
                    out.emit(&summary, || summary_text(&summary))?;
                }
                None => {
                    write_atlas(&mut *out.out, &header, &records)?;
                    writeln!(err, "{summary}")?;
                }
            }
            let mismatch = summary["regression"] == "mismatch";
            Ok(if mismatch {
                EXIT_AUDIT_FAILURE
            } else {
                EXIT_OK
            })
        }
        Command::Audit { input, confluence } => {
            let (header, records) = load(&input)?;
            let report = audit(&records, Some(header.box_bound));
            let conf = if confluence {
                Some(confluence_report(&records)?)
            } else {
                None
            };
            let ok = report.passed() && conf.as_ref().is_none_or(|c| c.counterexamples.is_empty());
            let value = json!({ "box_bound": header.box_bound, "passed": ok, "report": report, "confluence": conf });
            out.emit(&value, || {
                let mut s = report.to_string();
                if let Some(c) = &conf {
                    s += &format!(
                        "confluence: {}/{} cycles reach a unique basic type",
                        c.confluent, c.cycles_checked
                    );
                    for (cycle, types) in &c.counterexamples {
                        let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                        s += &format!("\n  {cycle} reaches {}", names.join(", "));
                    }
                }
                s
            })?;
            Ok(if ok { EXIT_OK } else { EXIT_AUDIT_FAILURE })
        }
        Command::BrauerFamily { n } => {
            let (cycle, triangle) = brauer_family(n)?;
            let order = brauer_group(&triangle)?;
            let sing = cycle.singular_chains();
            let value = json!({ "n": n, "cycle": cycle, "triangle": triangle, "brauer_order": order, "sing": sing });
            out.emit(&value, || {
                let sing: Vec<String> = sing.iter().map(|s| s.to_string()).collect();
                format!(
                    "n {n}\ncycle {cycle}\ntriangle {triangle}\nbrauer order {order}\nsing {}",
                    sing.join(" ")
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::KeScan { input } => {
            let (_, records) = load(&input)?;
            let check = run_check("ke_suite", &records);
            let hits: Vec<&SurfaceRecord> = records.iter().filter(|r| r.ke_candidate).collect();
            for r in &hits {
                out.emit(&to_value(r), || {
                    format!(
                        "{}  K^2 {}  e_orb {}  basic {}",
                        r.canonical_vertices, r.k2, r.e_orb, r.basic
                    )
                })?;
            }
            let value = json!({ "ke_candidates": hits.len(), "check": check });
            out.emit(&value, || {
                format!(
                    "{} barycenter-zero records; KE checks: {} violations{}",
                    hits.len(),
                    check.violations,
                    check
                        .counterexample
                        .as_deref()
                        .map(|e| format!(", e.g. {e}"))
                        .unwrap_or_default()
                )
            })?;
            Ok(if check.passed() {
                EXIT_OK
            } else {
                EXIT_AUDIT_FAILURE
            })
        }
    }
}

/// Input order after sorting decreasingly by `(n_i, m_i)` of the fractions `n_i/m_i`.
fn echo_order(input: &[SingularityType]) -> Vec<String> {
    let mut v: Vec<&SingularityType> = input.iter().collect();
    v.sort_by_key(|s| std::cmp::Reverse((s.fraction().numerator(), s.fraction().denominator())));
    v.iter().map(|s| s.fraction().to_string()).collect()
}

fn cmd_classify(sing: &str, out: &mut Output<'_>) -> Result<i32> {
    let input = parse_singularities(sing)?;
    let result = classify(&input)?;
    let solutions: Vec<Value> = result
        .solutions()
        .iter()
        .map(|s| {
            json!({
                "triangle": s.triangle,
                "cycle": s.cycle,
                "basic": s.basic,
                "name": s.name.map(|n| n.to_string()),
                "wps": s.name,
            })
        })
        .collect();
    let value = json!({
        "input": input.iter().map(|s| s.chain().entries().to_vec()).collect::<Vec<_>>(),
        "ordered_fractions": echo_order(&input),
        "result": if result.exists() { "exists" } else { "not_exists" },
        "literal_step4": literal_step4_verdict(&input),
        "solutions": solutions,
    });
    out.emit(&value, || match &result {
        ClassifyResult::NotExists => "NotExists".to_string(),
        ClassifyResult::Exists(sols) => {
            let mut s = format!("exists: {} class(es)", sols.len());
            for sol in sols {
                let name = sol.name.map(|n| n.to_string()).unwrap_or_default();
                s += &format!(
                    "\n  {}  {}  basic {}  {name}",
                    sol.triangle, sol.cycle, sol.basic
                );
            }
            s
        }
    })?;
    Ok(if result.exists() {
        EXIT_OK
    } else {
        EXIT_NOT_EXISTS
    })
}

fn enumerate_summary(cfg: &EnumerationConfig, records: &[SurfaceRecord]) -> Value {
    let expected = load_fixtures(&fixtures_path())
        .ok()
        .and_then(|f| f.classes_per_box.get(&cfg.box_bound.to_string()).copied());
    let regression = match (cfg.index_max, expected) {
        (None, Some(n)) if n == records.len() => "match",
        (None, Some(_)) => "mismatch",
        _ => "absent",
    };
    json!({
        "box_bound": cfg.box_bound,
        "index_max": cfg.index_max,
        "classes": records.len(),
        "reflexive": reflexive_subset(records).len(),
        "basic_types": basic_type_counts(records),
        "regression": regression,
        "expected_classes": expected,
    })
}

fn summary_text(v: &Value) -> String {
    format!(
        "box {}: {} classes ({} reflexive), basic types {}, regression {}",
        v["box_bound"], v["classes"], v["reflexive"], v["basic_types"], v["regression"]
    )
}

pub fn main() -> std::process::ExitCode {
    let code = run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::ExitCode::from(code as u8)
}
