use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use meander::constructions::Family;
use meander::enumerate::{census, enumerate, min_crossings, EnumerationQuery, MinSearch};
use meander::surface::cover::CoverJson;
use meander::surface::{lift_with, BranchSet, Component, PillowcaseCover};
use meander::verify::{max_separating_squares, realising_lift, render_table, verify_grid, Case, LiftSummary, TableRow};
use meander::{CombinatorialMap, Error, Kind, MeanderDiagram, StratumSignature};

/// Environment variable holding the number of worker threads.
const THREADS_VAR: &str = "MEANDER_THREADS";

#[derive(Parser)]
#[command(name = "meander", version, about = "Meanders, their strata, and square-tiled lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or count every diagram of a kind with n crossing positions.
    Enumerate {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Keep only diagrams in this stratum, e.g. "1,1,-1^6".
        #[arg(long, allow_hyphen_values = true)]
        stratum: Option<String>,
        /// One diagram per symmetry class.
        #[arg(long)]
        dedup: bool,
        /// Include variants whose transversal anchors sit on the horizontal ends.
        #[arg(long)]
        shared_anchors: bool,
        #[arg(long)]
        count_only: bool,
        /// Print stratum counts instead of diagrams.
        #[arg(long, conflicts_with_all = ["stratum", "dedup", "count_only", "shared_anchors"])]
        census: bool,
        /// Directory caching census results by kind and n.
        #[arg(long, requires = "census")]
        cache_dir: Option<PathBuf>,
    },
    /// Find the fewest crossings realising a stratum.
    Minimize {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        stratum: String,
        #[arg(long)]
        budget: usize,
    },
    /// Build a diagram from a named family.
    Construct {
        #[arg(long)]
        family: String,
        /// Comma-separated integer parameters, e.g. "2,1" or "0,-1".
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        params: String,
    },
    /// Lift a diagram to its branched double cover.
    Lift {
        #[arg(long)]
        input: PathBuf,
        /// Target component, e.g. "Q(2,2)"; picks a branch set realising it as a [1,1]-cover.
        #[arg(long)]
        target_row: Option<String>,
    },
    /// Compare the tabulated square count with a construction and an exhaustive search.
    Verify {
        /// Row name (h-one-zero, h-two-zeros, q-two-fixed, q-fixed-pair, q-two-pairs,
        /// q-fixed-poles) or a component such as "Q(6,1,1)".
        #[arg(long, required_unless_present = "max_separating")]
        row: Option<String>,
        /// Row parameters, e.g. "j=1,k=1" or "g=2".
        #[arg(long, default_value = "")]
        params: String,
        /// both_nonsep, one_sep, both_sep, or all.
        #[arg(long, default_value = "all")]
        case: String,
        /// Largest number of crossing positions the exhaustive search may enumerate.
        #[arg(long, default_value_t = 12)]
        budget: usize,
        /// Report the largest both-separating count at this genus instead.
        #[arg(long)]
        max_separating: Option<u32>,
    },
    /// Draw a diagram or a square-tiled surface as SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Output of `lift`: the surface, its deck involution and what was measured on it.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct LiftRecord {
    source: MeanderDiagram,
    target: Option<String>,
    branch: BranchSet,
    cover: CoverJson,
    deck: Vec<usize>,
    genus: usize,
    summary: LiftSummary,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(s) => f.write_str(s),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_kind(s: &str) -> Result<Kind, String> {
    Kind::parse(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn parse_json(s: &str) -> CliResult<Value> {
    serde_json::from_str(s).map_err(|e| CliError::Io(format!("invalid JSON: {e}")))
}

fn infeasible(note: &str) -> Value {
    json!({ "result": "infeasible", "note": note })
}

fn parse_params(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Io(format!("parameter {t:?} is not an integer"))))
        .collect()
}

fn parse_named(s: &str) -> CliResult<HashMap<String, u32>> {
    let mut out = HashMap::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Io(format!("expected key=value, got {part:?}")))?;
        let v = v.trim().parse().map_err(|_| CliError::Io(format!("{part:?} needs a nonnegative integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn run_enumerate(
    kind: Kind,
    n: usize,
    stratum: Option<String>,
    dedup: bool,
    shared: bool,
    count_only: bool,
) -> CliResult<Value> {
    let mut q = EnumerationQuery::new(kind, n).dedup(dedup).shared_anchors(shared);
    if let Some(s) = stratum {
        let s: StratumSignature = s.parse()?;
        if s.sum() != -4 {
            return Ok(infeasible(&format!("stratum {s} has order sum {} instead of -4", s.sum())));
        }
        q = q.with_stratum(s);
    }
    if kind == Kind::Closed && n % 2 == 1 {
        return Ok(json!({ "kind": kind, "n": n, "count": 0, "note": "closed meanders have an even number of crossings" }));
    }
    let ds = enumerate(&q);
    if count_only {
        Ok(json!({ "kind": kind, "n": n, "count": ds.len() }))
    } else {
        Ok(json!({ "kind": kind, "n": n, "count": ds.len(), "diagrams": ds }))
    }
}

fn run_census(kind: Kind, n: usize, cache: Option<PathBuf>) -> CliResult<Value> {
    let file = cache.as_ref().map(|d| d.join(format!("census-{}-{n}.json", kind.name())));
    if let Some(f) = file.as_ref().filter(|f| f.exists()) {
        return parse_json(&read(f)?);
    }
    let v = serde_json::to_value(census(kind, n)).expect("census serializes");
    if let (Some(dir), Some(f)) = (cache, file) {
        fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        write(&f, &serde_json::to_string(&v).expect("census serializes"))?;
    }
    Ok(v)
}

fn run_minimize(kind: Kind, stratum: &str, budget: usize) -> CliResult<Value> {
    let s: StratumSignature = stratum.parse()?;
    match min_crossings(kind, &s, budget) {
        Ok(r @ MinSearch::Found(_)) | Ok(r @ MinSearch::Exhausted { .. }) => Ok(serde_json::to_value(r).expect("serializes")),
        Err(Error::InfeasibleStratum(note)) => Ok(infeasible(&note)),
        Err(e) => Err(e.into()),
    }
}

fn run_construct(family: &str, params: &str) -> CliResult<Value> {
    let f: Family = family.parse()?;
    let d = f.build(&parse_params(params)?)?;
    Ok(serde_json::to_value(d).expect("diagram serializes"))
}

fn run_lift(input: &Path, target: Option<String>) -> CliResult<Value> {
    let d = MeanderDiagram::from_json(&read(input)?).map_err(|e| CliError::Io(format!("invalid diagram: {e}")))?;
    d.validate()?;
    let (lift, branch, summary) = match &target {
        Some(t) => {
            let c: Component = t.parse()?;
            let case = Case::for_kind(d.kind);
            match realising_lift(&d, c, case)? {
                Some(found) => found,
                None => return Ok(infeasible(&format!("no branch set lifts this diagram to a {case} [1,1]-cover in {c}"))),
            }
        }
        None => {
            let m = CombinatorialMap::build(&d)?;
            let ft = m.face_table()?;
            let b = BranchSet::all_poles(&m, &ft);
            if b.size() % 2 == 1 {
                return Ok(infeasible("the simple poles are odd in number; choose a branch set with --target-row"));
            }
            let (lift, _) = lift_with(&m, &b)?;
            let summary = LiftSummary::measure(&lift)?;
            (lift, b, summary)
        }
    };
    let record = LiftRecord {
        source: d,
        target,
        branch,
        cover: CoverJson::from(&lift.cover),
        deck: lift.deck.clone(),
        genus: lift.cover.genus(),
        summary,
    };
    Ok(serde_json::to_value(record).expect("lift serializes"))
}

fn run_verify(
    row: Option<String>,
    params: &str,
    case: &str,
    budget: usize,
    max_sep: Option<u32>,
) -> CliResult<Value> {
    if let Some(g) = max_sep {
        if g < 2 {
            return Ok(infeasible("the bound is stated for genus at least 2"));
        }
        let (squares, c) = max_separating_squares(g);
        return Ok(json!({ "genus": g, "squares": squares, "component": c.to_string() }));
    }
    let row = row.expect("clap requires --row");
    let c = TableRow::component(&row, &parse_named(params)?)?;
    let cases: Vec<Case> = if case == "all" { Case::ALL.to_vec() } else { vec![case.parse()?] };
    let items: Vec<(Component, Case)> = cases
        .into_iter()
        .filter(|&k| meander::verify::table_formula(c, k).is_ok() || case != "all")
        .map(|k| (c, k))
        .collect();
    let mut reports = Vec::new();
    for r in verify_grid(&items, budget, Default::default()) {
        match r {
            Ok(r) => reports.push(r),
            Err(Error::NotApplicable(note)) => return Ok(infeasible(&note)),
            Err(e) => return Err(e.into()),
        }
    }
    eprint!("{}", render_table(&reports));
    Ok(serde_json::to_value(reports).expect("reports serialize"))
}

fn run_render(input: &Path, out: &Path) -> CliResult<Value> {
    let v = parse_json(&read(input)?)?;
    let bad = |e: serde_json::Error| CliError::Io(format!("unrecognised input: {e}"));
    let (svg, what) = if v.get("kind").is_some() {
        let d: MeanderDiagram = serde_json::from_value(v).map_err(bad)?;
        d.validate()?;
        (meander::svg::render_diagram(&d), "diagram")
    } else {
        let cover_json = v.get("cover").cloned().unwrap_or(v);
        let j: CoverJson = serde_json::from_value(cover_json).map_err(bad)?;
        (meander::svg::render_cover(&PillowcaseCover::try_from(j)?), "cover")
    };
    write(out, &svg)?;
    Ok(json!({ "rendered": what, "out": out.display().to_string(), "bytes": svg.len() }))
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Enumerate { kind, n, census: true, cache_dir, .. } => run_census(kind, n, cache_dir),
        Command::Enumerate { kind, n, stratum, dedup, shared_anchors, count_only, .. } => {
            run_enumerate(kind, n, stratum, dedup, shared_anchors, count_only)
        }
        Command::Minimize { kind, stratum, budget } => run_minimize(kind, &stratum, budget),
        Command::Construct { family, params } => run_construct(&family, &params),
        Command::Lift { input, target_row } => run_lift(&input, target_row),
        Command::Verify { row, params, case, budget, max_separating } => {
            run_verify(row, &params, &case, budget, max_separating)
        }
        Command::Render { input, out } => run_render(&input, &out),
    };
    match result {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("JSON value serializes");
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
