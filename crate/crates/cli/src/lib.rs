//! The `sense-reduce` command line.
//!
//! Exit codes: 0 on success, 2 for input or configuration errors, 3 when an
//! evaluation is degenerate (no instance could be scored).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use sense_reduce::datasets::{write_tsv_dump, write_wic_dump, write_wsd_dump, DatasetError};
use sense_reduce::evaluation::{fmt3, CiMethod, EvalError};
use sense_reduce::inventory::{InventoryError, SenseInventory};
use sense_reduce::matcher::{match_stats, ExampleIndex, MatchError, Normalization};

pub mod config;
pub mod data;
mod evaluate;
pub mod solver;

use config::ConfigFile;
use data::{DataRequest, Format, Instances, WorldSpec};
use solver::SolverSpec;

pub use evaluate::{SeedSummary, VerdictRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<InventoryError> for CliError {
    fn from(e: InventoryError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MatchError> for CliError {
    fn from(e: MatchError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NoScored => CliError::Degenerate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(format!("i/o error: {e}"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sense-reduce",
    version,
    about = "WiC, TSV and WSD reductions and evaluation over a WordNet sense inventory"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// WordNet 3.0 `dict` directory.
    #[arg(long, global = true, env = "SENSE_REDUCE_WORDNET", value_name = "DIR")]
    pub wordnet: Option<PathBuf>,
    /// Seed for every random choice (default 0).
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// JSON instead of tab-separated text.
    #[arg(long, global = true)]
    pub json: bool,
    /// `key=value` file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct DataArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Dataset file, one per split (WiC `.data.txt`, MCL-WiC `.data`, WiC-TSV examples).
    #[arg(long, value_name = "PATH")]
    pub data: Vec<PathBuf>,
    /// Gold labels, aligned with `--data`.
    #[arg(long, value_name = "PATH")]
    pub gold: Vec<PathBuf>,
    /// WiC-TSV definitions, aligned with `--data`.
    #[arg(long, value_name = "PATH")]
    pub definitions: Vec<PathBuf>,
    /// Synthetic world as `seed:lemmas:senses:examples` (default 0:10:4:3).
    #[arg(long, value_name = "SPEC")]
    pub world: Option<WorldSpec>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Colon-chained solver, e.g. `wic-via-wsd:match-backoff`.
    #[arg(long, value_name = "SPEC")]
    pub solver: Option<SolverSpec>,
    /// Seed sweep: `0-19`, `1,4,9` or a single seed. Overrides `--seed`.
    #[arg(long, value_name = "LIST")]
    pub seeds: Option<SeedList>,
    #[arg(long, value_name = "NAME")]
    pub normalization: Option<Normalization>,
    /// Critical value for the accuracy interval (default 1.96).
    #[arg(long)]
    pub z: Option<f64>,
    /// Wilson instead of Wald interval.
    #[arg(long)]
    pub wilson: bool,
    /// Per-instance verdict dump.
    #[arg(long, value_name = "PATH")]
    pub verdicts: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    WicViaWsd,
    WsdViaTsv,
    TsvViaWic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Synset, sense and example counts per part of speech.
    InventoryStats,
    /// Write datasets as one unified instance dump.
    Convert(DataArgs),
    /// Fraction of WiC instances whose two sentences are both gloss examples.
    MatchStats {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_name = "NAME")]
        normalization: Option<Normalization>,
        /// Report every normalization from weakest to strongest.
        #[arg(long)]
        ladder: bool,
    },
    /// Score a solver on labelled data.
    Evaluate(RunArgs),
    /// Run a solver and write its per-instance verdicts.
    Solve(RunArgs),
    /// Dump the instances an adapter poses to the solver it wraps.
    Reduce {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum)]
        reduction: Reduction,
    },
    /// Binomial confidence interval for SUCCESSES out of N.
    Ci {
        successes: u64,
        n: u64,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        wilson: bool,
    },
}

/// A non-empty list of seeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedList(pub Vec<u64>);

/// Largest seed sweep accepted in one run.
pub const MAX_SEEDS: u64 = 10_000;

impl FromStr for SeedList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad seed list {s:?}; expected e.g. 0-19 or 1,4,9");
        let mut seeds = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some((a, b)) = part.split_once('-') {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                if b - a >= MAX_SEEDS {
                    return Err(format!("seed range {part:?} is longer than {MAX_SEEDS}"));
                }
                seeds.extend(a..=b);
            } else {
                seeds.push(part.parse().map_err(|_| bad())?);
            }
        }
        if seeds.len() as u64 > MAX_SEEDS {
            return Err(format!("{} seeds given; at most {MAX_SEEDS} per run", seeds.len()));
        }
        Ok(SeedList(seeds))
    }
}

fn describe_seeds(seeds: &[u64]) -> String {
    let contiguous = seeds.windows(2).all(|w| w[1] == w[0] + 1);
    match seeds {
        [one] => one.to_string(),
        [first, .., last] if contiguous => format!("{first}-{last}"),
        _ => seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
    }
}

/// Flags merged with the config file; what every command runs from.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: &'static str,
    pub wordnet: Option<PathBuf>,
    pub seed: u64,
    pub seeds: Vec<u64>,
    pub out: Option<PathBuf>,
    pub json: bool,
    pub data: DataRequest,
    pub solver: Option<SolverSpec>,
    pub normalization: Normalization,
    pub ladder: bool,
    pub z: f64,
    pub wilson: bool,
    pub verdicts: Option<PathBuf>,
    pub reduction: Option<Reduction>,
}

impl RunConfig {
    /// One line naming every resolved setting.
    pub fn banner(&self) -> String {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
        let paths = |v: &[PathBuf]| v.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",");
        let mut s = format!("sense-reduce {}:", self.command);
        let _ = write!(s, " wordnet={}", path(&self.wordnet));
        let _ = write!(
            s,
            " format={}",
            self.data.format.map(|f| f.to_string()).unwrap_or_else(|| "-".into())
        );
        let _ = write!(s, " data=[{}]", paths(&self.data.data));
        let _ = write!(s, " gold=[{}]", paths(&self.data.gold));
        let _ = write!(s, " definitions=[{}]", paths(&self.data.definitions));
        if self.data.format == Some(Format::Synthetic) {
            let _ = write!(s, " world={}", self.data.world.unwrap_or_default());
        }
        let _ = write!(
            s,
            " solver={}",
            self.solver.as_ref().map(|s| s.to_string()).unwrap_or_else(|| "-".into())
        );
        let _ = write!(s, " seed={} seeds={}", self.seed, describe_seeds(&self.seeds));
        let _ = write!(s, " normalization={} ladder={}", self.normalization.name(), self.ladder);
        let _ = write!(s, " z={} interval={}", self.z, if self.wilson { "wilson" } else { "wald" });
        let _ = write!(s, " verdicts={} out={} json={}", path(&self.verdicts), path(&self.out), self.json);
        if let Some(r) = self.reduction {
            let _ = write!(s, " reduction={}", r.to_possible_value().expect("named").get_name());
        }
        s
    }

    fn resolve(global: GlobalArgs, command: &Command) -> Result<Self, CliError> {
        let file = match &global.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let pick_paths = |flag: &[PathBuf], key: &str| -> Vec<PathBuf> {
            if flag.is_empty() {
                file.get_all(key).into_iter().map(PathBuf::from).collect()
            } else {
                flag.to_vec()
            }
        };
        let data_of = |args: &DataArgs| -> Result<DataRequest, CliError> {
            Ok(DataRequest {
                format: match args.format {
                    Some(f) => Some(f),
                    None => file.parsed("format")?,
                },
                data: pick_paths(&args.data, "data"),
                gold: pick_paths(&args.gold, "gold"),
                definitions: pick_paths(&args.definitions, "definitions"),
                world: match args.world {
                    Some(w) => Some(w),
                    None => file.parsed("world")?,
                },
            })
        };

        let seed = match global.seed {
            Some(s) => s,
            None => file.parsed("seed")?.unwrap_or(0),
        };
        let mut cfg = RunConfig {
            command: "",
            wordnet: global.wordnet.or_else(|| file.get("wordnet").map(PathBuf::from)),
            seed,
            seeds: vec![seed],
            out: global.out.or_else(|| file.get("out").map(PathBuf::from)),
            json: global.json || file.flag("json")?,
            data: DataRequest::default(),
            solver: None,
            normalization: Normalization::default(),
            ladder: false,
            z: 1.96,
            wilson: false,
            verdicts: None,
            reduction: None,
        };

        match command {
            Command::InventoryStats => cfg.command = "inventory-stats",
            Command::Convert(args) => {
                cfg.command = "convert";
                cfg.data = data_of(args)?;
            }
            Command::MatchStats {
                data,
                normalization,
                ladder,
            } => {
                cfg.command = "match-stats";
                cfg.data = data_of(data)?;
                cfg.normalization = match normalization {
                    Some(n) => *n,
                    None => file.parsed("normalization")?.unwrap_or_default(),
                };
                cfg.ladder = *ladder || file.flag("ladder")?;
            }
            Command::Evaluate(args) | Command::Solve(args) => {
                cfg.command = if matches!(command, Command::Evaluate(_)) {
                    "evaluate"
                } else {
                    "solve"
                };
                cfg.data = data_of(&args.data)?;
                cfg.solver = match &args.solver {
                    Some(s) => Some(s.clone()),
                    None => file.parsed("solver")?,
                };
                let seeds: Option<SeedList> = match &args.seeds {
                    Some(s) => Some(s.clone()),
                    None => file.parsed("seeds")?,
                };
                if let Some(SeedList(list)) = seeds {
                    cfg.seeds = list;
                }
                cfg.normalization = match args.normalization {
                    Some(n) => n,
                    None => file.parsed("normalization")?.unwrap_or_default(),
                };
                cfg.z = match args.z {
                    Some(z) => z,
                    None => file.parsed("z")?.unwrap_or(1.96),
                };
                cfg.wilson = args.wilson || file.flag("wilson")?;
                cfg.verdicts = args
                    .verdicts
                    .clone()
                    .or_else(|| file.get("verdicts").map(PathBuf::from));
            }
            Command::Reduce { data, reduction } => {
                cfg.command = "reduce";
                cfg.data = data_of(data)?;
                cfg.reduction = Some(*reduction);
            }
            Command::Ci { z, wilson, .. } => {
                cfg.command = "ci";
                cfg.z = match z {
                    Some(z) => *z,
                    None => file.parsed("z")?.unwrap_or(1.96),
                };
                cfg.wilson = *wilson || file.flag("wilson")?;
            }
        }
        if cfg.seeds.is_empty() {
            return Err(CliError::Input("empty seed list".into()));
        }
        Ok(cfg)
    }

    pub fn ci_method(&self) -> CiMethod {
        if self.wilson {
            CiMethod::Wilson
        } else {
            CiMethod::Wald
        }
    }

    fn load_wordnet(&self) -> Result<SenseInventory, CliError> {
        let dir = self.wordnet.as_ref().ok_or_else(|| {
            CliError::Input("a WordNet directory is required (--wordnet or SENSE_REDUCE_WORDNET)".into())
        })?;
        if !dir.is_dir() {
            return Err(CliError::Input(format!("WordNet directory {} does not exist", dir.display())));
        }
        log::info!("loading WordNet from {}", dir.display());
        Ok(SenseInventory::load(dir)?)
    }
}

/// Writes `text` to `--out` when given, otherwise to `out`.
fn emit(cfg: &RunConfig, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => write_file(path, text.as_bytes()),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return e.exit_code();
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(cli.global, &cli.command)?;
    writeln!(err, "{}", cfg.banner())?;
    match cli.command {
        Command::InventoryStats => cmd_inventory_stats(&cfg, out),
        Command::Convert(_) => cmd_convert(&cfg, out, err),
        Command::MatchStats { .. } => cmd_match_stats(&cfg, out),
        Command::Evaluate(_) => evaluate::cmd_evaluate(&cfg, out, err),
        Command::Solve(_) => evaluate::cmd_solve(&cfg, out, err),
        Command::Reduce { .. } => cmd_reduce(&cfg, out, err),
        Command::Ci { successes, n, .. } => cmd_ci(&cfg, successes, n, out),
    }
}

pub fn cmd_inventory_stats(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let inv = cfg.load_wordnet()?;
    let stats = inv.stats();
    let (mut synsets, mut senses, mut examples) = (0, 0, 0);
    let text = if cfg.json {
        let mut rows = serde_json::Map::new();
        for (pos, s) in &stats {
            rows.insert(
                pos.name().to_string(),
                serde_json::json!({"synsets": s.synsets, "senses": s.senses, "examples": s.examples}),
            );
            synsets += s.synsets;
            senses += s.senses;
            examples += s.examples;
        }
        rows.insert(
            "total".into(),
            serde_json::json!({"synsets": synsets, "senses": senses, "examples": examples}),
        );
        serde_json::to_string_pretty(&rows).expect("plain values") + "\n"
    } else {
        let mut text = String::from("pos\tsynsets\tsenses\texamples\n");
        for (pos, s) in &stats {
            let _ = writeln!(text, "{}\t{}\t{}\t{}", pos.name(), s.synsets, s.senses, s.examples);
            synsets += s.synsets;
            senses += s.senses;
            examples += s.examples;
        }
        let _ = writeln!(text, "total\t{synsets}\t{senses}\t{examples}");
        text
    };
    emit(cfg, out, &text)
}

pub fn cmd_convert(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let loaded = cfg.data.load()?;
    let mut dump = Vec::new();
    let mut total = 0;
    for split in &loaded.splits {
        match &split.instances {
            Instances::Wic(v) => write_wic_dump(&mut dump, v)?,
            Instances::Tsv(v) => write_tsv_dump(&mut dump, v)?,
            Instances::Wsd(v) => write_wsd_dump(&mut dump, v)?,
        }
        writeln!(err, "{}\t{}\t{} instances", split.name, split.instances.task_name(), split.instances.len())?;
        total += split.instances.len();
    }
    writeln!(err, "total\t{total} instances")?;
    match &cfg.out {
        Some(path) => write_file(path, &dump),
        None => Ok(out.write_all(&dump)?),
    }
}

pub fn cmd_match_stats(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let loaded = cfg.data.load()?;
    let owned;
    let inv = match &loaded.world {
        Some(world) => &world.inventory,
        None => {
            owned = cfg.load_wordnet()?;
            &owned
        }
    };
    let wic: Vec<(&str, &[sense_reduce::WicInstance])> = loaded
        .splits
        .iter()
        .filter_map(|s| match &s.instances {
            Instances::Wic(v) => Some((s.name.as_str(), v.as_slice())),
            _ => None,
        })
        .collect();
    if wic.is_empty() {
        return Err(CliError::Input("match-stats needs WiC-format data (wic, mclwic or synthetic)".into()));
    }
    let levels: Vec<Normalization> = if cfg.ladder {
        Normalization::LADDER.to_vec()
    } else {
        vec![cfg.normalization]
    };

    let mut rows = Vec::new();
    for norm in levels {
        let idx = ExampleIndex::build(inv, norm);
        let (mut n, mut both, mut ambiguous) = (0, 0, 0);
        for (name, instances) in &wic {
            let stats = match_stats(&idx, instances)
                .map_err(|e| CliError::Input(format!("split {name}: {e}")))?;
            n += stats.n;
            both += stats.n_both_matched;
            ambiguous += stats.n_ambiguous;
            rows.push((norm, name.to_string(), stats.n, stats.n_both_matched, stats.fraction, stats.n_ambiguous));
        }
        if wic.len() > 1 {
            rows.push((norm, "all".to_string(), n, both, both as f64 / n as f64, ambiguous));
        }
    }

    let text = if cfg.json {
        let rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(norm, split, n, both, fraction, ambiguous)| {
                serde_json::json!({
                    "normalization": norm.name(),
                    "split": split,
                    "n": n,
                    "n_both_matched": both,
                    "fraction": fraction,
                    "n_ambiguous": ambiguous,
                })
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain values") + "\n"
    } else {
        let mut text = String::new();
        if cfg.ladder {
            text.push_str("normalization\t");
        }
        text.push_str("split\tn\tn_both_matched\tfraction\tn_ambiguous\n");
        for (norm, split, n, both, fraction, ambiguous) in &rows {
            if cfg.ladder {
                let _ = write!(text, "{}\t", norm.name());
            }
            let _ = writeln!(text, "{split}\t{n}\t{both}\t{fraction}\t{ambiguous}");
        }
        text
    };
    emit(cfg, out, &text)
}

pub fn cmd_reduce(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    use sense_reduce::reductions::{tsv_via_wic, wsd_via_tsv, GlossExamples, WicViaWsd};
    use sense_reduce::task::ConstantSolver;

    let reduction = cfg.reduction.expect("reduce always names a reduction");
    let loaded = cfg.data.load()?;
    let owned = match (&loaded.world, reduction) {
        (None, Reduction::WsdViaTsv | Reduction::TsvViaWic) => Some(cfg.load_wordnet()?),
        _ => None,
    };
    let inventory = || -> &SenseInventory {
        loaded
            .world
            .as_ref()
            .map(|w| &w.inventory)
            .or(owned.as_ref())
            .expect("loaded above for reductions that need it")
    };

    let mut dump = Vec::new();
    let mut posed = 0;
    let mut failures: std::collections::BTreeMap<&'static str, usize> = Default::default();
    match reduction {
        Reduction::WicViaWsd => {
            for split in &loaded.splits {
                if let Instances::Wic(v) = &split.instances {
                    let sides: Vec<_> = v
                        .iter()
                        .flat_map(WicViaWsd::<AnyWsd>::sides)
                        .collect();
                    posed += sides.len();
                    write_wsd_dump(&mut dump, &sides)?;
                }
            }
        }
        Reduction::WsdViaTsv => {
            let inv = inventory();
            let adapter = wsd_via_tsv(ConstantSolver(false), inv);
            for split in &loaded.splits {
                if let Instances::Wsd(v) = &split.instances {
                    for inst in v {
                        let candidates = adapter.candidates(inst);
                        if candidates.is_empty() {
                            *failures.entry("UnknownLemma").or_default() += 1;
                        }
                        posed += candidates.len();
                        write_tsv_dump(&mut dump, &candidates)?;
                    }
                }
            }
        }
        Reduction::TsvViaWic => {
            let inv = inventory();
            let adapter = tsv_via_wic(ConstantSolver(false), GlossExamples::new(inv), inv);
            for split in &loaded.splits {
                if let Instances::Tsv(v) = &split.instances {
                    for inst in v {
                        match adapter.pair(inst) {
                            Ok(pair) => {
                                posed += 1;
                                write_wic_dump(&mut dump, std::slice::from_ref(&pair))?;
                            }
                            Err(e) => *failures.entry(e.kind()).or_default() += 1,
                        }
                    }
                }
            }
        }
    }
    if posed == 0 && failures.is_empty() {
        return Err(CliError::Input(format!(
            "no split has the input task of {}",
            reduction.to_possible_value().expect("named").get_name()
        )));
    }
    writeln!(err, "posed\t{posed}")?;
    for (kind, count) in &failures {
        writeln!(err, "errors.{kind}\t{count}")?;
    }
    match &cfg.out {
        Some(path) => write_file(path, &dump),
        None => Ok(out.write_all(&dump)?),
    }
}

/// Solver type parameter for calling `WicViaWsd::sides`.
type AnyWsd = Box<dyn sense_reduce::task::WsdSolver>;

pub fn cmd_ci(cfg: &RunConfig, successes: u64, n: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let method = cfg.ci_method();
    let (estimate, margin) = method.interval(successes, n, cfg.z)?;
    let display = format!("{} ± {}", fmt3(estimate), fmt3(margin));
    let text = if cfg.json {
        serde_json::to_string_pretty(&serde_json::json!({
            "successes": successes,
            "n": n,
            "z": cfg.z,
            "method": if cfg.wilson { "wilson" } else { "wald" },
            "estimate": estimate,
            "margin": margin,
            "display": display,
        }))
        .expect("plain values")
            + "\n"
    } else {
        display + "\n"
    };
    emit(cfg, out, &text)
}
