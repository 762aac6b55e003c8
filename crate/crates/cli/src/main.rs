use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fgdt_core::design::blockfile::{labels_json, write_blocks};
use fgdt_core::design::prescribed::{self, PointSet, Prepared};
use fgdt_core::design::table1::table1_construct;
use fgdt_core::design::{witt_bose_shrikhande, IncidenceStructure};
use fgdt_core::field::prime_power;
use fgdt_core::group::cache::set_cache_dir;
use fgdt_core::verify::{any_failed, claim_ids, matches, verify_all, Report, Status};
use fgdt_core::Error;

const DEFAULT_RANGE: (u32, u32) = (2, 121);

#[derive(Parser)]
#[command(name = "fgdt", version, about = "Flag-transitive 2-designs from PSL(2,q) acting on conics and hyperovals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Directory for cached group enumerations (FGDT_CACHE takes precedence).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the claims and write a report.
    Verify {
        /// A single field order, or an inclusive range such as 7..16.
        #[arg(long)]
        q: Option<String>,
        /// A claim id, or a prefix before a dot such as LSR1.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Build a design and print its blocks.
    Design {
        #[arg(long, conflicts_with = "wbs", required_unless_present = "wbs")]
        table1: Option<u8>,
        #[arg(long)]
        wbs: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for designs with a prescribed block stabilizer.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long = "type", value_enum, conflicts_with_all = ["k", "lambda", "points"])]
        kind: Option<Kind>,
        #[arg(long, requires_all = ["lambda", "points"])]
        k: Option<usize>,
        #[arg(long, requires_all = ["k", "points"])]
        lambda: Option<usize>,
        #[arg(long, value_enum, requires_all = ["k", "lambda"])]
        points: Option<Points>,
        /// Directory receiving one block file per design and summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "I")]
    One,
    #[value(name = "II")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum Points {
    Internal,
    External,
}

enum Failure {
    Usage(String),
    Cap(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Field(_) | Error::Precondition(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn setup(common: &Common) -> Result<(), Failure> {
    let dir = std::env::var_os("FGDT_CACHE").map(PathBuf::from).or_else(|| common.cache.clone());
    set_cache_dir(dir);
    if let Some(n) = common.jobs {
        if n == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Other(e.to_string()))?;
    }
    Ok(())
}

fn parse_q(text: Option<&str>) -> Result<Vec<u32>, Failure> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("--q: {s:?} is not a number")));
    let (lo, hi) = match text {
        None => DEFAULT_RANGE,
        Some(t) => match t.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                (num(a)?, num(b)?)
            }
            None => {
                let q = num(t)?;
                if prime_power(q).is_none() {
                    return Err(Failure::Usage(format!("--q {q} is not a prime power")));
                }
                (q, q)
            }
        },
    };
    if lo > hi {
        return Err(Failure::Usage(format!("--q range {lo}..{hi} is empty")));
    }
    Ok((lo..=hi).collect())
}

fn status_cell(s: &Status) -> (&'static str, &str) {
    match s {
        Status::Pass => ("pass", ""),
        Status::Fail => ("fail", ""),
        Status::Skipped(why) => ("skipped", why),
    }
}

fn render(reports: &[Report], format: Format) -> Result<String, Failure> {
    let opt = |v: &Option<Value>| v.as_ref().map(Value::to_string).unwrap_or_default();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(reports).map_err(|e| Failure::Other(e.to_string()))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["claim", "q", "status", "reason", "expected", "observed", "witness", "millis"])
                .map_err(|e| Failure::Other(e.to_string()))?;
            for r in reports {
                let (status, reason) = status_cell(&r.status);
                let millis = r.millis.map(|m| m.to_string()).unwrap_or_default();
                w.write_record([
                    r.claim.as_str(),
                    &r.q.to_string(),
                    status,
                    reason,
                    &r.expected.to_string(),
                    &r.observed.to_string(),
                    &opt(&r.witness),
                    &millis,
                ])
                .map_err(|e| Failure::Other(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Other(e.to_string()))?)
                .map_err(|e| Failure::Other(e.to_string()))?
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let line = match &r.status {
                    Status::Pass => format!("PASS  {:<13} q={:<4} {}", r.claim, r.q, r.observed),
                    Status::Fail => format!(
                        "FAIL  {:<13} q={:<4} expected {} observed {} witness {}",
                        r.claim,
                        r.q,
                        r.expected,
                        r.observed,
                        opt(&r.witness)
                    ),
                    Status::Skipped(why) => format!("SKIP  {:<13} q={:<4} {why}", r.claim, r.q),
                };
                out.push_str(&line);
                out.push('\n');
            }
            let count = |f: fn(&Status) -> bool| reports.iter().filter(|r| f(&r.status)).count();
            out.push_str(&format!(
                "{} passed, {} failed, {} skipped\n",
                count(|s| *s == Status::Pass),
                count(|s| *s == Status::Fail),
                count(|s| matches!(s, Status::Skipped(_)))
            ));
            out
        }
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        },
    }
    Ok(())
}

fn verify(q: Option<&str>, claim: Option<&str>, out: Option<&Path>, format: Format) -> Outcome {
    if let Some(c) = claim {
        if !claim_ids().iter().any(|id| matches(id, Some(c))) {
            return Err(Failure::Usage(format!("--claim {c:?} matches no claim; known: {}", claim_ids().join(", "))));
        }
    }
    let qs = parse_q(q)?;
    let reports = verify_all(&qs, claim)?;
    emit(&render(&reports, format)?, out)?;
    Ok(!any_failed(&reports))
}

fn write_design(s: &IncidenceStructure, lambda: usize, summary: Value, out: Option<&Path>) -> Outcome {
    let blocks = write_blocks(s, lambda);
    let summary = serde_json::to_string_pretty(&summary).map_err(|e| Failure::Other(e.to_string()))?;
    match out {
        Some(path) => {
            fs::write(path, blocks)?;
            if let Some(labels) = labels_json(s) {
                let mut side = path.as_os_str().to_owned();
                side.push(".labels.json");
                fs::write(
                    PathBuf::from(side),
                    serde_json::to_string_pretty(&labels).expect("labels serialize") + "\n",
                )?;
            }
            emit(&(summary + "\n"), None)?;
        }
        None => {
            emit(&blocks, None)?;
            eprintln!("{summary}");
        }
    }
    Ok(true)
}

fn design(table1: Option<u8>, wbs: Option<u32>, out: Option<&Path>) -> Outcome {
    if let Some(line) = table1 {
        let d = table1_construct(line)?;
        let summary = serde_json::to_value(&d.report).map_err(|e| Failure::Other(e.to_string()))?;
        return write_design(&d.structure, d.certified.params.lambda, summary, out);
    }
    let q = wbs.expect("clap requires --table1 or --wbs");
    let w = witt_bose_shrikhande(q)?;
    let summary = json!({"construction": "W(q)", "q": q, "params": w.certified.params, "base_block": w.base_block});
    write_design(&w.structure, 1, summary, out)
}

fn search(q: u32, kind: Option<Kind>, general: Option<(usize, usize, Points)>, out: Option<&Path>) -> Outcome {
    let prepared: Prepared = match (kind, general) {
        (Some(Kind::One), _) => prescribed::type1(q)?,
        (Some(Kind::Two), _) => prescribed::type2(q)?,
        (None, Some((k, lambda, points))) => {
            let points = match points {
                Points::Internal => PointSet::Internal,
                Points::External => PointSet::External,
            };
            prescribed::general(points, q, k, lambda)?
        }
        (None, None) => return Err(Failure::Usage("give --type, or all of --k, --lambda and --points".into())),
    };
    let outcome = prepared.run()?;
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    let mut designs = Vec::new();
    for (i, d) in outcome.designs.iter().enumerate() {
        let mut entry = json!({
            "params": d.certified.params,
            "repeated_blocks": d.certified.repeated_blocks,
            "stabilizer_orders": d.stabilizer_orders,
            "orbit_keys": d.orbit_keys,
        });
        if let Some(dir) = out {
            let name = format!("design-{i}.blocks");
            fs::write(dir.join(&name), write_blocks(&d.structure, prepared.lambda))?;
            entry["file"] = json!(name);
        }
        designs.push(entry);
    }
    let summary = json!({
        "q": q,
        "points": prepared.points,
        "v": prepared.group.degree(),
        "group_order": prepared.group_order,
        "k": prepared.k,
        "lambda": prepared.lambda,
        "shape": prepared.shape,
        "subgroup_orders": prepared.subgroup_orders,
        "raw_candidates": outcome.raw_candidates,
        "distinct_block_orbits": outcome.distinct_orbits,
        "pair_orbits": outcome.pair_orbits,
        "design_count": designs.len(),
        "designs": designs,
    });
    let text = serde_json::to_string_pretty(&summary).map_err(|e| Failure::Other(e.to_string()))? + "\n";
    if let Some(dir) = out {
        fs::write(dir.join("summary.json"), &text)?;
        let labels: serde_json::Map<String, Value> =
            prepared.labels.iter().enumerate().map(|(i, l)| (i.to_string(), json!(l))).collect();
        fs::write(dir.join("labels.json"), serde_json::to_string_pretty(&labels).expect("labels serialize") + "\n")?;
    }
    emit(&text, None)?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Verify { q, claim, out, format, common } => {
            setup(&common)?;
            verify(q.as_deref(), claim.as_deref(), out.as_deref(), format)
        }
        Command::Design { table1, wbs, out, common } => {
            setup(&common)?;
            design(table1, wbs, out.as_deref())
        }
        Command::Search { q, kind, k, lambda, points, out, common } => {
            setup(&common)?;
            let general = match (k, lambda, points) {
                (Some(k), Some(l), Some(p)) => Some((k, l, p)),
                _ => None,
            };
            search(q, kind, general, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("fgdt: usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("fgdt: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("fgdt: {msg}");
            ExitCode::from(3)
        }
    }
}
