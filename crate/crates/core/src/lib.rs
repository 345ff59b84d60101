//! Word sense disambiguation (WSD), target sense verification (TSV) and
//! word-in-context (WiC) classification over a shared WordNet sense
//! inventory, with adapters that reduce each task to another.
//!
//! * [`inventory`] reads the WordNet 3.0 database into a [`SenseInventory`].
//! * [`task`] holds the instance types and solver traits; [`datasets`] loads
//!   WiC, WiC-TSV and MCL-WiC; [`synthetic`] generates seeded test worlds.
//! * [`reductions`] turns a solver for one task into a solver for another.
//! * [`matcher`] identifies senses by matching sentences against gloss
//!   examples; [`evaluation`] scores solvers and computes intervals.

pub mod datasets;
pub mod evaluation;
pub mod inventory;
pub mod matcher;
pub mod reductions;
pub mod synthetic;
pub mod task;

pub use evaluation::{
    accuracy, binomial_ci, evaluate_tsv, evaluate_wic, expected_accuracy_with_backoff, fmt3,
    wilson_ci, CiMethod, EvalError, EvaluationReport, Verdict,
};
pub use inventory::{
    load_inventory, InventoryError, PartOfSpeech, Sense, SenseInventory, Synset, SynsetId,
};
pub use matcher::{
    build_example_index, match_fraction, match_sentence, match_stats, matching_wsd_solver,
    normalize_sentence, BackoffPolicy, ExampleIndex, MatchOutcome, MatchStats, Normalization,
    NormalizedSentence,
};
pub use reductions::{
    make_gold_solvers, tsv_via_wic, wic_via_wsd, wsd_via_tsv, ExampleProvider, GlossExamples,
    GoldOracle, ReductionError,
};
pub use synthetic::{generate_synthetic_world, SyntheticError, SyntheticWorld};
pub use task::{
    Context, SenseRef, TargetWord, TsvInstance, TsvSolver, WicInstance, WicSolver, WsdInstance,
    WsdSolver, WsdVerdict,
};
