//! `evaluate` and `solve`: running solver specs over dataset splits.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use sense_reduce::evaluation::{EvaluationReport, Verdict};
use sense_reduce::inventory::{escape_field, SenseInventory};
use sense_reduce::matcher::{match_stats, ExampleIndex, MatchOutcome};
use sense_reduce::reductions::GoldOracle;
use sense_reduce::task::{Context, TargetWord, WsdVerdict};

use crate::data::{Instances, Loaded, Split};
use crate::solver::{Resources, SolverSpec, Task};
use crate::{emit, write_file, CliError, RunConfig};

/// One line of the verdict dump:
/// `id prediction gold matched1 matched2 sense1 sense2`.
///
/// `prediction` and `gold` are `T`/`F` (or sense keys for WSD), `matched*`
/// is `1`/`0` for whether the sentence identified a sense through the
/// example index, and `sense*` are the senses chosen for each side. Absent
/// values are `-`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictRow {
    pub id: String,
    pub prediction: String,
    pub gold: String,
    pub matched1: String,
    pub matched2: String,
    pub sense1: String,
    pub sense2: String,
}

impl VerdictRow {
    pub fn line(&self) -> String {
        [
            &self.id,
            &self.prediction,
            &self.gold,
            &self.matched1,
            &self.matched2,
            &self.sense1,
            &self.sense2,
        ]
        .iter()
        .map(|f| escape_field(f))
        .collect::<Vec<_>>()
        .join("\t")
    }
}

/// Mean and spread of one split's accuracy over a seed sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSummary {
    pub split: String,
    pub seeds: Vec<u64>,
    pub mean_accuracy: f64,
    pub min_accuracy: f64,
    pub max_accuracy: f64,
    pub match_fraction: Option<f64>,
    pub expected_accuracy: Option<f64>,
}

impl SeedSummary {
    fn new(split: &str, runs: &[(u64, &EvaluationReport)]) -> Self {
        let accs: Vec<f64> = runs.iter().map(|(_, r)| r.accuracy).collect();
        SeedSummary {
            split: split.to_string(),
            seeds: runs.iter().map(|(s, _)| *s).collect(),
            mean_accuracy: accs.iter().sum::<f64>() / accs.len() as f64,
            min_accuracy: accs.iter().copied().fold(f64::INFINITY, f64::min),
            max_accuracy: accs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            match_fraction: runs[0].1.match_fraction,
            expected_accuracy: runs[0].1.expected_accuracy,
        }
    }

    fn to_text(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".to_string());
        let mut out = String::new();
        let _ = writeln!(out, "summary\t{}", self.split);
        let _ = writeln!(out, "seeds\t{}", crate::describe_seeds(&self.seeds));
        let _ = writeln!(out, "mean_accuracy\t{}", self.mean_accuracy);
        let _ = writeln!(out, "min_accuracy\t{}", self.min_accuracy);
        let _ = writeln!(out, "max_accuracy\t{}", self.max_accuracy);
        let _ = writeln!(out, "match_fraction\t{}", opt(self.match_fraction));
        let _ = writeln!(out, "expected_accuracy\t{}", opt(self.expected_accuracy));
        out
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "split": self.split,
            "seeds": self.seeds,
            "mean_accuracy": self.mean_accuracy,
            "min_accuracy": self.min_accuracy,
            "max_accuracy": self.max_accuracy,
            "match_fraction": self.match_fraction,
            "expected_accuracy": self.expected_accuracy,
        })
    }
}

/// How a solver spec is run against one split.
#[derive(Clone, Debug)]
enum Plan {
    /// Outer `wic-via-wsd`, run so that both side senses are visible.
    WicViaWsd(SolverSpec),
    Wic(SolverSpec),
    Tsv(SolverSpec),
    Wsd(SolverSpec),
}

fn plan_for(spec: &SolverSpec, instances: &Instances) -> Option<Plan> {
    match (instances, spec.task()) {
        (Instances::Wic(_), Some(Task::Wic)) if spec.is_wic_via_wsd() => Some(Plan::WicViaWsd(spec.clone())),
        (Instances::Wic(_), Some(Task::Wsd)) => {
            log::info!("lifting {spec} to WiC through wic-via-wsd");
            Some(Plan::WicViaWsd(spec.lifted_to_wic()))
        }
        (Instances::Wic(_), Some(Task::Wic) | None) => Some(Plan::Wic(spec.clone())),
        (Instances::Tsv(_), Some(Task::Tsv) | None) => Some(Plan::Tsv(spec.clone())),
        (Instances::Wsd(_), Some(Task::Wsd) | None) => Some(Plan::Wsd(spec.clone())),
        _ => None,
    }
}

/// Splits the spec can run on, with their plans. WSD splits are only
/// scored by `solve`; `evaluate` reports boolean tasks.
fn plans<'s>(
    spec: &SolverSpec,
    splits: &'s [Split],
    boolean_only: bool,
) -> Result<Vec<(&'s Split, Plan)>, CliError> {
    let mut out = Vec::new();
    for split in splits {
        if boolean_only && matches!(split.instances, Instances::Wsd(_)) {
            continue;
        }
        match plan_for(spec, &split.instances) {
            Some(plan) => out.push((split, plan)),
            None => log::info!("{spec} does not apply to {} split {}", split.instances.task_name(), split.name),
        }
    }
    if out.is_empty() {
        let tasks: Vec<&str> = splits.iter().map(|s| s.instances.task_name()).collect();
        return Err(CliError::Input(format!(
            "solver {spec} does not apply to the loaded data (tasks: {})",
            tasks.join(", ")
        )));
    }
    Ok(out)
}

struct Outcome {
    row: VerdictRow,
    prediction: Option<bool>,
    gold: Option<bool>,
    error: Option<&'static str>,
}

fn flag(value: Option<bool>) -> String {
    match value {
        Some(true) => "T".into(),
        Some(false) => "F".into(),
        None => "-".into(),
    }
}

fn dash(value: Option<&str>) -> String {
    value.unwrap_or("-").to_string()
}

/// `1`/`0` for whether `context` identifies a sense, and that sense.
fn matched(index: Option<&ExampleIndex>, context: &Context, target: &TargetWord) -> (String, Option<String>) {
    match index.map(|idx| idx.lookup(context.text(), target)) {
        None => ("-".into(), None),
        Some(MatchOutcome::Matched(key)) => ("1".into(), Some(key)),
        Some(_) => ("0".into(), None),
    }
}

fn run_split(
    plan: &Plan,
    split: &Split,
    res: &Resources<'_>,
    index: Option<&ExampleIndex>,
) -> Result<Vec<Outcome>, CliError> {
    let mut outcomes = Vec::new();
    match (plan, &split.instances) {
        (Plan::WicViaWsd(spec), Instances::Wic(instances)) => {
            let solver = res.build_wic_via_wsd(spec)?;
            for inst in instances {
                let (m1, _) = matched(index, &inst.context1, &inst.target);
                let (m2, _) = matched(index, &inst.context2, &inst.target);
                let (prediction, error, s1, s2) = match solver.verdicts(inst) {
                    Ok([a, b]) => {
                        let (s1, s2) = (dash(a.sense_key()), dash(b.sense_key()));
                        match (a, b) {
                            (WsdVerdict::Sense(x), WsdVerdict::Sense(y)) => (Some(x == y), None, s1, s2),
                            _ => (None, Some("AbstainedUpstream"), s1, s2),
                        }
                    }
                    Err(e) => (None, Some(e.kind()), "-".into(), "-".into()),
                };
                outcomes.push(Outcome {
                    row: VerdictRow {
                        id: inst.id.clone(),
                        prediction: flag(prediction),
                        gold: flag(inst.gold),
                        matched1: m1,
                        matched2: m2,
                        sense1: s1,
                        sense2: s2,
                    },
                    prediction,
                    gold: inst.gold,
                    error,
                });
            }
        }
        (Plan::Wic(spec), Instances::Wic(instances)) => {
            let solver = res.build_wic(spec)?;
            for inst in instances {
                let (m1, _) = matched(index, &inst.context1, &inst.target);
                let (m2, _) = matched(index, &inst.context2, &inst.target);
                let result = solver.same_meaning(inst);
                let prediction = result.as_ref().ok().copied();
                outcomes.push(Outcome {
                    row: VerdictRow {
                        id: inst.id.clone(),
                        prediction: flag(prediction),
                        gold: flag(inst.gold),
                        matched1: m1,
                        matched2: m2,
                        sense1: "-".into(),
                        sense2: "-".into(),
                    },
                    prediction,
                    gold: inst.gold,
                    error: result.err().map(|e| e.kind()),
                });
            }
        }
        (Plan::Tsv(spec), Instances::Tsv(instances)) => {
            let solver = res.build_tsv(spec)?;
            for inst in instances {
                let (m1, key) = matched(index, &inst.context, &inst.target);
                let result = solver.verify(inst);
                let prediction = result.as_ref().ok().copied();
                outcomes.push(Outcome {
                    row: VerdictRow {
                        id: inst.id.clone(),
                        prediction: flag(prediction),
                        gold: flag(inst.gold),
                        matched1: m1,
                        matched2: "-".into(),
                        sense1: dash(key.as_deref()),
                        sense2: inst.candidate.to_string(),
                    },
                    prediction,
                    gold: inst.gold,
                    error: result.err().map(|e| e.kind()),
                });
            }
        }
        (Plan::Wsd(spec), Instances::Wsd(instances)) => {
            let solver = res.build_wsd(spec)?;
            for inst in instances {
                let (m1, key) = matched(index, &inst.context, &inst.target);
                let result = solver.disambiguate(inst);
                let sense = result.as_ref().ok().and_then(|v| v.sense_key().map(str::to_string));
                outcomes.push(Outcome {
                    row: VerdictRow {
                        id: inst.id.clone(),
                        prediction: dash(sense.as_deref()),
                        gold: dash(inst.gold.as_deref()),
                        matched1: m1,
                        matched2: "-".into(),
                        sense1: dash(key.as_deref()),
                        sense2: "-".into(),
                    },
                    prediction: None,
                    gold: None,
                    error: result.err().map(|e| e.kind()),
                });
            }
        }
        _ => unreachable!("plans are built per split task"),
    }
    Ok(outcomes)
}

/// Inventory, example index and gold oracle shared by every run.
struct Setup {
    owned: Option<SenseInventory>,
    index: Option<ExampleIndex>,
    gold: Option<GoldOracle>,
}

impl Setup {
    fn new(cfg: &RunConfig, spec: &SolverSpec, loaded: &Loaded) -> Result<Self, CliError> {
        if spec.uses_gold() && loaded.world.is_none() {
            return Err(CliError::Input("gold-oracle is only available with --format synthetic".into()));
        }
        let owned = match &loaded.world {
            Some(_) => {
                if cfg.wordnet.is_some() {
                    log::warn!("--format synthetic uses the generated inventory; --wordnet is ignored");
                }
                None
            }
            None if spec.uses_inventory() || cfg.wordnet.is_some() => Some(cfg.load_wordnet()?),
            None => None,
        };
        let inv = loaded.world.as_ref().map(|w| &w.inventory).or(owned.as_ref());
        let index = inv.map(|inv| ExampleIndex::build(inv, cfg.normalization));
        let gold = loaded
            .world
            .as_ref()
            .map(|w| GoldOracle::new(w.gold_sense_of_context.clone()));
        Ok(Setup { owned, index, gold })
    }

    fn resources<'a>(&'a self, loaded: &'a Loaded, seed: u64) -> Resources<'a> {
        Resources {
            inventory: loaded.world.as_ref().map(|w| &w.inventory).or(self.owned.as_ref()),
            index: self.index.as_ref(),
            gold: self.gold.as_ref(),
            seed,
        }
    }
}

fn sorted_dump(mut rows: Vec<VerdictRow>) -> String {
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    let mut text = String::new();
    for row in rows {
        text.push_str(&row.line());
        text.push('\n');
    }
    text
}

fn verdict_path(base: &Path, seed: u64, sweep: bool) -> PathBuf {
    if sweep {
        let mut name = base.as_os_str().to_owned();
        name.push(format!(".seed{seed}"));
        PathBuf::from(name)
    } else {
        base.to_path_buf()
    }
}

pub fn cmd_evaluate(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = cfg
        .solver
        .as_ref()
        .ok_or_else(|| CliError::Input("--solver is required".into()))?;
    let loaded = cfg.data.load()?;
    let setup = Setup::new(cfg, spec, &loaded)?;
    let plans = plans(spec, &loaded.splits, true)?;
    let sweep = cfg.seeds.len() > 1;
    if sweep && !spec.uses_seed() {
        log::info!("{spec} draws no random numbers; every seed gives the same result");
    }

    let mut runs: Vec<(String, u64, EvaluationReport)> = Vec::new();
    let mut rows_by_seed: Vec<(u64, Vec<VerdictRow>)> = cfg.seeds.iter().map(|s| (*s, Vec::new())).collect();
    for (split, plan) in &plans {
        let fraction = match (&split.instances, setup.index.as_ref()) {
            (Instances::Wic(v), Some(idx)) if !v.is_empty() => Some(match_stats(idx, v)?.fraction),
            _ => None,
        };
        for (seed, rows) in rows_by_seed.iter_mut() {
            let res = setup.resources(&loaded, *seed);
            let outcomes = run_split(plan, split, &res, setup.index.as_ref())?;
            let mut verdicts = Vec::with_capacity(outcomes.len());
            for o in outcomes {
                let gold = o
                    .gold
                    .ok_or_else(|| CliError::Input(format!("split {}: instance {} has no gold label", split.name, o.row.id)))?;
                verdicts.push(Verdict {
                    id: o.row.id.clone(),
                    prediction: o.prediction,
                    gold,
                    error: o.error.map(str::to_string),
                });
                rows.push(o.row);
            }
            let mut report = EvaluationReport::from_verdicts(&split.name, &verdicts)
                .map_err(|e| match CliError::from(e) {
                    CliError::Degenerate(m) => CliError::Degenerate(format!("split {}: {m}", split.name)),
                    other => other,
                })?;
            if let Some(f) = fraction {
                report = report.with_match_fraction(f)?;
            }
            report = report.with_accuracy_ci(cfg.ci_method(), cfg.z)?;
            writeln!(
                err,
                "{}\tseed {seed}\taccuracy {}\tcoverage {}",
                split.name,
                sense_reduce::fmt3(report.accuracy),
                sense_reduce::fmt3(report.coverage)
            )?;
            runs.push((split.name.clone(), *seed, report));
        }
    }

    let summaries: Vec<SeedSummary> = if sweep {
        plans
            .iter()
            .map(|(split, _)| {
                let per_seed: Vec<(u64, &EvaluationReport)> = runs
                    .iter()
                    .filter(|(name, _, _)| *name == split.name)
                    .map(|(_, seed, r)| (*seed, r))
                    .collect();
                SeedSummary::new(&split.name, &per_seed)
            })
            .collect()
    } else {
        Vec::new()
    };

    if let Some(base) = &cfg.verdicts {
        for (seed, rows) in rows_by_seed {
            write_file(&verdict_path(base, seed, sweep), sorted_dump(rows).as_bytes())?;
        }
    }

    let text = if cfg.json {
        let runs: Vec<serde_json::Value> = runs
            .iter()
            .map(|(split, seed, report)| {
                serde_json::json!({"split": split, "seed": seed, "report": report})
            })
            .collect();
        let summaries: Vec<serde_json::Value> = summaries.iter().map(SeedSummary::to_json).collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "solver": spec.to_string(),
            "runs": runs,
            "summary": summaries,
        }))
        .expect("plain values")
            + "\n"
    } else {
        let mut blocks: Vec<String> = runs
            .iter()
            .map(|(_, seed, report)| format!("seed\t{seed}\n{}", report.to_text()))
            .collect();
        blocks.extend(summaries.iter().map(SeedSummary::to_text));
        blocks.join("\n")
    };
    emit(cfg, out, &text)
}

pub fn cmd_solve(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let spec = cfg
        .solver
        .as_ref()
        .ok_or_else(|| CliError::Input("--solver is required".into()))?;
    if cfg.seeds.len() > 1 {
        return Err(CliError::Input("solve runs a single seed; use --seed".into()));
    }
    let loaded = cfg.data.load()?;
    let setup = Setup::new(cfg, spec, &loaded)?;
    let res = setup.resources(&loaded, cfg.seeds[0]);
    let mut rows = Vec::new();
    for (split, plan) in plans(spec, &loaded.splits, false)? {
        let outcomes = run_split(&plan, split, &res, setup.index.as_ref())?;
        let failed = outcomes.iter().filter(|o| o.error.is_some()).count();
        writeln!(err, "{}\t{} instances\t{failed} errors", split.name, outcomes.len())?;
        rows.extend(outcomes.into_iter().map(|o| o.row));
    }
    let text = sorted_dump(rows);
    if let Some(path) = &cfg.verdicts {
        write_file(path, text.as_bytes())?;
    }
    emit(cfg, out, &text)
}
