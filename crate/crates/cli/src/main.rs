//! `tourmap`: build tournament datasets, compare them with exact edit or
//! centrality-profile distances, embed the result as a 2-D map, analyze
//! winners under classical rules, and render SVG figures.
//!
//! Exit codes: 0 success, 2 validation or parse failure, 3 search budget
//! exhausted, 4 missing input file or directory.

mod svg;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use tourmap_core::centrality::Measure;
use tourmap_core::dataset::params;
use tourmap_core::distance::{distance_matrix, DistanceMatrix, GedOptions, Metric};
use tourmap_core::embedding::{distortion, mds, MDS_MAX_ITER, MDS_TOL};
use tourmap_core::generators::{
    child_seed, gen_condorcet_noise, gen_impartial_culture, gen_strength, gen_uniform,
    StrengthFunction,
};
use tourmap_core::ingest::{
    build_dataset, election_to_tournament, parse_election, parse_matches, pairwise_bridge,
    pairwise_nba, random_restrictions, Recipe, RecipeInputs,
};
use tourmap_core::solutions::{
    copeland_winners, knockout_pw_timing, simulate_brackets, slater_timing, slater_winners,
    top_cycle, KNOCKOUT_TIMING_REPEATS, SLATER_TIMING_REPEATS,
};
use tourmap_core::{ord_rps, ordered, rps, rps_ord, Dataset, DatasetEntry, Error, Result};

#[derive(Parser)]
#[command(
    name = "tourmap",
    about = "Maps of tournaments: datasets, distances, embeddings, winners, figures",
    version
)]
struct Cli {
    /// Cap the worker thread pool (0 uses every core). Never changes
    /// outputs, only wall-clock time.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Append generated tournaments to a manifest.
    Generate(GenerateArgs),
    /// Build one of the standard dataset recipes.
    Dataset(DatasetArgs),
    /// Compute a pairwise distance matrix for a manifest.
    Dist(DistArgs),
    /// Embed a distance matrix into the plane.
    Map(MapArgs),
    /// Winner statistics and solver timings per entry.
    Analyze(AnalyzeArgs),
    /// Draw an embedding as a colored SVG map.
    Render(RenderArgs),
    /// Convert real match records or elections into manifest entries.
    Ingest(IngestArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// ordered, rps, ord_rps, rps_ord, uniform, condorcet, strength_exp_e,
    /// strength_exp_2, strength_lin, strength_log, strength_root,
    /// strength_exp, or impartial.
    #[arg(long)]
    model: String,
    /// Player count.
    #[arg(long)]
    n: usize,
    /// Entries to generate (deterministic models allow only 1).
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Probability an edge keeps its ranked orientation (condorcet).
    #[arg(long)]
    p: Option<f64>,
    /// Ranked-block size (ord_rps, rps_ord).
    #[arg(long)]
    k: Option<usize>,
    /// Exponential base (strength_exp).
    #[arg(long)]
    alpha: Option<f64>,
    /// Voter count (impartial).
    #[arg(long)]
    voters: Option<usize>,
    /// Manifest to create or extend.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DatasetArgs {
    /// size7, size12, election, or custom.
    #[arg(long)]
    recipe: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Player count (custom recipe only).
    #[arg(long)]
    n: Option<usize>,
    /// Directory of basketball season match CSVs (size12).
    #[arg(long)]
    nba: Option<PathBuf>,
    /// Directory of bridge event match CSVs (size12).
    #[arg(long)]
    bridge: Option<PathBuf>,
    /// Directory of election ranking files (election).
    #[arg(long)]
    elections: Option<PathBuf>,
    /// Manifest to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// ged or a centrality measure id (katz, degree, closeness,
    /// eigenvector, laplacian, harmonic, pagerank, betweenness, load).
    #[arg(long)]
    metric: String,
    /// Keep raw distances instead of dividing by the distance between the
    /// ranked and rotational reference tournaments.
    #[arg(long)]
    no_normalize: bool,
    /// Cap on search nodes per edit-distance pair.
    #[arg(long)]
    ged_node_budget: Option<u64>,
    /// Matrix CSV to write (a .meta.json sidecar rides along).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct MapArgs {
    /// Distance matrix CSV from `dist`.
    #[arg(long)]
    matrix: PathBuf,
    /// Manifest supplying each entry's family.
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = MDS_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value_t = MDS_TOL)]
    tol: f64,
    /// Embedding CSV to write (a .stress.json sidecar rides along).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Comma-separated subset of copeland, top_cycle, slater, brackets,
    /// knockout.
    #[arg(long, default_value = "copeland,top_cycle,slater,brackets,knockout")]
    rules: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random brackets simulated per entry.
    #[arg(long, default_value_t = 1000)]
    bracket_samples: usize,
    /// Analysis CSV to write. Timing columns report wall-clock
    /// milliseconds and naturally vary between runs; every other column is
    /// seed-deterministic.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    /// Embedding CSV from `map`.
    #[arg(long)]
    embedding: PathBuf,
    /// Analysis CSV from `analyze`; required when coloring by one of its
    /// columns.
    #[arg(long)]
    analysis: Option<PathBuf>,
    /// family, avg_distortion, or an analysis column such as
    /// copeland_count, top_cycle_count, slater_count, slater_time,
    /// max_bracket_freq, pw_count, pw_time.
    #[arg(long)]
    color_by: String,
    #[arg(long, default_value_t = 5.0)]
    marker_size: f64,
    /// Draw the color legend.
    #[arg(long)]
    legend: bool,
    /// SVG file to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IngestArgs {
    /// nba, bridge, or election.
    #[arg(long)]
    kind: String,
    /// Match CSV (nba, bridge) or ranking file (election).
    #[arg(long)]
    input: PathBuf,
    /// Entry label; defaults to the input file stem.
    #[arg(long)]
    label: Option<String>,
    /// Restrict to random player subsets of this size instead of keeping
    /// the full field.
    #[arg(long)]
    restrict: Option<usize>,
    /// Restricted copies to draw.
    #[arg(long, default_value_t = 4)]
    copies: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Manifest to create or extend.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Io(io) if io.kind() == std::io::ErrorKind::NotFound => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Dataset(a) => cmd_dataset(a),
        Command::Dist(a) => cmd_dist(a),
        Command::Map(a) => cmd_map(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Render(a) => cmd_render(a),
        Command::Ingest(a) => cmd_ingest(a),
    }
}

/// Loads `path` if it exists, appends, revalidates, and writes back.
/// Id collisions and mixed player counts are rejected wholesale.
fn append_to_manifest(path: &Path, new: Vec<DatasetEntry>) -> Result<()> {
    let mut entries = if path.exists() {
        Dataset::load_manifest(path)?.entries
    } else {
        Vec::new()
    };
    entries.extend(new);
    let ds = Dataset::new(entries)?;
    ds.player_count()?;
    ds.save_manifest(path)
}

fn cmd_generate(a: GenerateArgs) -> Result<()> {
    let mut entries = Vec::new();
    let deterministic = matches!(a.model.as_str(), "ordered" | "rps" | "ord_rps" | "rps_ord");
    if deterministic && a.count != 1 {
        return Err(Error::Parameter(format!(
            "model {} is deterministic; --count must be 1",
            a.model
        )));
    }
    let need = |opt: Option<f64>, flag: &str| {
        opt.ok_or_else(|| Error::Parameter(format!("model {} requires {flag}", a.model)))
    };
    match a.model.as_str() {
        "ordered" => entries.push(DatasetEntry::new("ord", "ord", params(&[]), ordered(a.n)?)),
        "rps" => entries.push(DatasetEntry::new("rps", "rps", params(&[]), rps(a.n)?)),
        "ord_rps" | "rps_ord" => {
            let k = a
                .k
                .ok_or_else(|| Error::Parameter(format!("model {} requires --k", a.model)))?;
            let (id, t) = if a.model == "ord_rps" {
                (format!("ord_rps_{k}"), ord_rps(a.n, k)?)
            } else {
                (format!("rps_ord_{k}"), rps_ord(a.n, k)?)
            };
            entries.push(DatasetEntry::new(
                id,
                a.model.clone(),
                params(&[("k", k.to_string())]),
                t,
            ));
        }
        model => {
            for i in 0..a.count as u64 {
                let s = child_seed(a.seed, model, i);
                let mut extra = vec![("seed", s.to_string())];
                let t = match model {
                    "uniform" => gen_uniform(a.n, s)?,
                    "condorcet" => {
                        let p = need(a.p, "--p")?;
                        extra.push(("p", p.to_string()));
                        gen_condorcet_noise(a.n, p, s)?
                    }
                    "strength_exp_e" => gen_strength(
                        a.n,
                        &StrengthFunction::Exponential {
                            alpha: std::f64::consts::E,
                        },
                        s,
                    )?,
                    "strength_exp_2" => {
                        gen_strength(a.n, &StrengthFunction::Exponential { alpha: 2.0 }, s)?
                    }
                    "strength_lin" => gen_strength(a.n, &StrengthFunction::Linear, s)?,
                    "strength_log" => gen_strength(a.n, &StrengthFunction::Logarithmic, s)?,
                    "strength_root" => gen_strength(a.n, &StrengthFunction::Root, s)?,
                    "strength_exp" => {
                        let alpha = need(a.alpha, "--alpha")?;
                        extra.push(("alpha", alpha.to_string()));
                        gen_strength(a.n, &StrengthFunction::Exponential { alpha }, s)?
                    }
                    "impartial" => {
                        let voters = a.voters.ok_or_else(|| {
                            Error::Parameter("model impartial requires --voters".into())
                        })?;
                        extra.push(("voters", voters.to_string()));
                        gen_impartial_culture(a.n, voters, s)?
                    }
                    other => {
                        return Err(Error::Parameter(format!("unknown model `{other}`")));
                    }
                };
                entries.push(DatasetEntry::new(
                    format!("{model}_s{}_{i:03}", a.seed),
                    model,
                    params(&extra),
                    t,
                ));
            }
        }
    }
    append_to_manifest(&a.out, entries)
}

/// Reads every regular file in `dir` (sorted by name) through `parse`.
fn read_labeled_dir<T>(
    dir: &Path,
    parse: impl Fn(&str) -> Result<T>,
) -> Result<Vec<(String, T)>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    let mut out = Vec::with_capacity(files.len());
    for f in &files {
        let label = f
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = parse(&fs::read_to_string(f)?)
            .map_err(|e| Error::Parse(format!("{}: {e}", f.display())))?;
        out.push((label, parsed));
    }
    Ok(out)
}

fn cmd_dataset(a: DatasetArgs) -> Result<()> {
    let recipe = match a.recipe.as_str() {
        "size7" => Recipe::Size7,
        "size12" => Recipe::Size12,
        "election" => Recipe::Election,
        "custom" => Recipe::Custom {
            n: a.n
                .ok_or_else(|| Error::Parameter("custom recipe requires --n".into()))?,
        },
        other => return Err(Error::Parameter(format!("unknown recipe `{other}`"))),
    };
    let mut inputs = RecipeInputs::default();
    if let Some(dir) = &a.nba {
        inputs.nba = read_labeled_dir(dir, parse_matches)?;
    }
    if let Some(dir) = &a.bridge {
        inputs.bridge = read_labeled_dir(dir, parse_matches)?;
    }
    if let Some(dir) = &a.elections {
        inputs.elections = read_labeled_dir(dir, parse_election)?;
    }
    let ds = build_dataset(recipe, a.seed, &inputs)?;
    ds.save_manifest(&a.out)?;
    println!("{} entries -> {}", ds.len(), a.out.display());
    Ok(())
}

fn parse_metric(s: &str) -> Result<Metric> {
    if s == "ged" {
        Ok(Metric::Ged)
    } else {
        Ok(Metric::Profile(Measure::from_str(s)?))
    }
}

fn cmd_dist(a: DistArgs) -> Result<()> {
    let metric = parse_metric(&a.metric)?;
    let ds = Dataset::load_manifest(&a.manifest)?;
    let opts = GedOptions {
        node_budget: a.ged_node_budget,
    };
    let dm = distance_matrix(&ds, metric, !a.no_normalize, &opts)?;
    dm.write_csv(&a.out)?;
    println!("{} x {} {} matrix -> {}", dm.len(), dm.len(), a.metric, a.out.display());
    Ok(())
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_map(a: MapArgs) -> Result<()> {
    let dm = DistanceMatrix::read_csv(&a.matrix)?;
    let ds = Dataset::load_manifest(&a.manifest)?;
    let families: BTreeMap<&str, &str> = ds
        .entries
        .iter()
        .map(|e| (e.id.as_str(), e.family.as_str()))
        .collect();
    for id in dm.ids() {
        if !families.contains_key(id.as_str()) {
            return Err(Error::Alignment(format!(
                "matrix entry `{id}` is not in the manifest"
            )));
        }
    }
    let mut e = mds(&dm, a.seed, a.max_iter, a.tol)?;
    // Fix the arbitrary rigid motion when both reference entries exist:
    // ranked family on the left, rotational to its right.
    e.orient("ord", "rps");
    let report = distortion(&dm, &e)?;
    let mut out = String::from("id,family,x,y,avg_distortion\n");
    for (i, id) in e.ids.iter().enumerate() {
        let _ = writeln!(
            out,
            "{id},{},{:.9},{:.9},{:.9}",
            families[id.as_str()],
            e.points[i][0],
            e.points[i][1],
            report.per_entry[i]
        );
    }
    fs::write(&a.out, out)?;
    let meta = serde_json::json!({
        "stress": e.stress,
        "iterations": e.iterations,
        "mean_distortion": report.mean,
        "excluded_pairs": report.excluded_pairs,
    });
    fs::write(
        sidecar(&a.out, ".stress.json"),
        format!("{}\n", serde_json::to_string_pretty(&meta)?),
    )?;
    println!(
        "{} points, stress {:.6} -> {}",
        e.ids.len(),
        e.stress,
        a.out.display()
    );
    Ok(())
}

#[derive(PartialEq, Clone, Copy)]
enum RuleSet {
    Copeland,
    TopCycle,
    Slater,
    Brackets,
    Knockout,
}

const ALL_RULES: [(&str, RuleSet); 5] = [
    ("copeland", RuleSet::Copeland),
    ("top_cycle", RuleSet::TopCycle),
    ("slater", RuleSet::Slater),
    ("brackets", RuleSet::Brackets),
    ("knockout", RuleSet::Knockout),
];

fn parse_rules(s: &str) -> Result<Vec<RuleSet>> {
    let mut wanted = BTreeSet::new();
    for part in s.split(',') {
        let part = part.trim();
        let known = ALL_RULES
            .iter()
            .find(|(name, _)| *name == part)
            .ok_or_else(|| Error::Parameter(format!("unknown rule `{part}`")))?;
        wanted.insert(known.0);
    }
    // Column order is fixed regardless of how the request was spelled.
    Ok(ALL_RULES
        .iter()
        .filter(|(name, _)| wanted.contains(name))
        .map(|(_, r)| *r)
        .collect())
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<()> {
    let rules = parse_rules(&a.rules)?;
    if a.bracket_samples == 0 && rules.contains(&RuleSet::Brackets) {
        return Err(Error::Parameter("--bracket-samples must be positive".into()));
    }
    let ds = Dataset::load_manifest(&a.manifest)?;
    let mut header = vec!["id"];
    for rule in &rules {
        header.extend(match rule {
            RuleSet::Copeland => vec!["copeland_count"],
            RuleSet::TopCycle => vec!["top_cycle_count"],
            RuleSet::Slater => vec!["slater_score", "slater_count", "slater_time"],
            RuleSet::Brackets => vec!["max_bracket_freq"],
            RuleSet::Knockout => vec!["pw_count", "pw_time"],
        });
    }
    let mut out = header.join(",");
    out.push('\n');
    for (idx, entry) in ds.entries.iter().enumerate() {
        let t = &entry.tournament;
        let mut row = vec![entry.id.clone()];
        for rule in &rules {
            match rule {
                RuleSet::Copeland => row.push(copeland_winners(t).len().to_string()),
                RuleSet::TopCycle => row.push(top_cycle(t).len().to_string()),
                RuleSet::Slater => {
                    let (score, stats) = slater_timing(t, SLATER_TIMING_REPEATS)?;
                    row.push(score.to_string());
                    row.push(slater_winners(t)?.len().to_string());
                    row.push(format!("{:.6}", stats.mean_ms));
                }
                RuleSet::Brackets => {
                    let wins =
                        simulate_brackets(t, a.bracket_samples, child_seed(a.seed, "brackets", idx as u64))?;
                    let best = wins.iter().copied().max().unwrap_or(0);
                    row.push(format!("{:.6}", best as f64 / a.bracket_samples as f64));
                }
                RuleSet::Knockout => {
                    let (winners, stats) = knockout_pw_timing(t, KNOCKOUT_TIMING_REPEATS)?;
                    row.push(winners.len().to_string());
                    row.push(format!("{:.6}", stats.mean_ms));
                }
            }
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(&a.out, out)?;
    println!("{} rows -> {}", ds.len(), a.out.display());
    Ok(())
}

struct EmbeddingRow {
    id: String,
    family: String,
    x: f64,
    y: f64,
    avg_distortion: f64,
}

fn read_embedding(path: &Path) -> Result<Vec<EmbeddingRow>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some("id,family,x,y,avg_distortion") {
        return Err(Error::Parse(format!(
            "{}: not an embedding CSV",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for (no, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 5 {
            return Err(Error::Parse(format!("embedding row {}: bad shape", no + 2)));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("embedding row {}: bad number {s:?}", no + 2)))
        };
        rows.push(EmbeddingRow {
            id: f[0].to_string(),
            family: f[1].to_string(),
            x: num(f[2])?,
            y: num(f[3])?,
            avg_distortion: num(f[4])?,
        });
    }
    if rows.is_empty() {
        return Err(Error::Parse("embedding CSV has no rows".into()));
    }
    Ok(rows)
}

/// Header names plus per-id cell values, everything kept as text until a
/// column is actually used.
fn read_analysis(path: &Path) -> Result<(Vec<String>, BTreeMap<String, Vec<String>>)> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::Parse("analysis CSV is empty".into()))?
        .split(',')
        .map(str::to_string)
        .collect();
    if header.first().map(String::as_str) != Some("id") {
        return Err(Error::Parse("analysis CSV must start with an id column".into()));
    }
    let mut rows = BTreeMap::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let mut cells: Vec<String> = line.split(',').map(str::to_string).collect();
        if cells.len() != header.len() {
            return Err(Error::Parse("analysis row width differs from header".into()));
        }
        let id = cells.remove(0);
        rows.insert(id, cells);
    }
    Ok((header, rows))
}

fn cmd_render(a: RenderArgs) -> Result<()> {
    let rows = read_embedding(&a.embedding)?;
    let ids: Vec<String> = rows.iter().map(|r| r.id.clone()).collect();
    let points: Vec<[f64; 2]> = rows.iter().map(|r| [r.x, r.y]).collect();
    let coloring = match a.color_by.as_str() {
        "family" => svg::Coloring::Families(rows.iter().map(|r| r.family.clone()).collect()),
        "avg_distortion" => svg::Coloring::Values {
            name: a.color_by.clone(),
            values: rows.iter().map(|r| r.avg_distortion).collect(),
        },
        column => {
            let path = a.analysis.as_ref().ok_or_else(|| {
                Error::Parameter(format!("coloring by `{column}` needs --analysis"))
            })?;
            let (header, table) = read_analysis(path)?;
            let at = header
                .iter()
                .skip(1)
                .position(|h| h == column)
                .ok_or_else(|| {
                    Error::Parameter(format!(
                        "`{column}` is not an embedding or analysis attribute"
                    ))
                })?;
            let mut values = Vec::with_capacity(rows.len());
            for row in &rows {
                let cells = table.get(&row.id).ok_or_else(|| {
                    Error::Alignment(format!("entry `{}` missing from the analysis CSV", row.id))
                })?;
                let v: f64 = cells[at].parse().map_err(|_| {
                    Error::Parse(format!("`{}` of `{}` is not numeric", column, row.id))
                })?;
                if !v.is_finite() {
                    return Err(Error::Parameter(format!(
                        "`{}` of `{}` is not finite",
                        column, row.id
                    )));
                }
                values.push(v);
            }
            svg::Coloring::Values {
                name: column.to_string(),
                values,
            }
        }
    };
    let doc = svg::render_map(&ids, &points, &coloring, a.marker_size, a.legend);
    fs::write(&a.out, doc)?;
    println!("{} markers -> {}", ids.len(), a.out.display());
    Ok(())
}

fn cmd_ingest(a: IngestArgs) -> Result<()> {
    let label = match &a.label {
        Some(l) => l.clone(),
        None => a
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    let text = fs::read_to_string(&a.input)?;
    let (full, mut extra) = match a.kind.as_str() {
        "nba" => {
            let s = child_seed(a.seed, "nba_pairwise", 0);
            (
                pairwise_nba(&parse_matches(&text)?, s)?,
                vec![("pair_seed", s.to_string())],
            )
        }
        "bridge" => (pairwise_bridge(&parse_matches(&text)?)?, vec![]),
        "election" => {
            let s = child_seed(a.seed, "election", 0);
            let (t, ties) = election_to_tournament(&parse_election(&text)?, s)?;
            (
                t,
                vec![("pair_seed", s.to_string()), ("tie_pairs", ties.to_string())],
            )
        }
        other => return Err(Error::Parameter(format!("unknown ingest kind `{other}`"))),
    };
    extra.push(("source", label.clone()));
    let mut entries = Vec::new();
    match a.restrict {
        None => entries.push(DatasetEntry::new(
            format!("{}_{label}", a.kind),
            a.kind.clone(),
            params(&extra),
            full,
        )),
        Some(k) => {
            let rs = child_seed(a.seed, &format!("{}_restrict", a.kind), 0);
            for (c, t) in random_restrictions(&full, k, a.copies, rs)?
                .into_iter()
                .enumerate()
            {
                let mut p = vec![("seed", rs.to_string()), ("copy", c.to_string())];
                p.extend(extra.iter().cloned());
                entries.push(DatasetEntry::new(
                    format!("{}_{label}_{c}", a.kind),
                    a.kind.clone(),
                    params(&p),
                    t,
                ));
            }
        }
    }
    append_to_manifest(&a.out, entries)
}
