//! Sense identification by matching sentences against WordNet usage examples.
//!
//! A dataset sentence that equals (after normalization) a gloss example of
//! exactly one sense of its target lemma is taken to carry that sense. The
//! matcher becomes a WSD solver with an optional random back-off for
//! sentences it cannot identify.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::inventory::{PartOfSpeech, SenseInventory};
use crate::reductions::ReductionError;
use crate::task::{TargetWord, WicInstance, WsdInstance, WsdSolver, WsdVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("dataset is empty")]
    EmptyDataset,
}

const QUOTES: [char; 7] = ['"', '\'', '`', '\u{201c}', '\u{201d}', '\u{2018}', '\u{2019}'];
const TERMINAL: [char; 4] = ['.', '!', '?', ';'];

/// Canonical form of a sentence for example matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizedSentence(String);

impl NormalizedSentence {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NormalizedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Lowercases, collapses whitespace, and strips terminal punctuation
/// (`. ! ? ;`) and surrounding quote characters. Idempotent.
pub fn normalize_sentence(text: &str) -> NormalizedSentence {
    let mut s = collapse_whitespace(&text.to_lowercase());
    loop {
        let stripped = s
            .trim_matches(|c: char| QUOTES.contains(&c) || c.is_whitespace())
            .trim_end_matches(|c: char| TERMINAL.contains(&c) || c.is_whitespace());
        if stripped.len() == s.len() {
            return NormalizedSentence(s);
        }
        s = stripped.to_string();
    }
}

/// Strength of sentence normalization, weakest first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Normalization {
    /// Surrounding whitespace trimmed, nothing else.
    Raw,
    /// Lowercased with whitespace collapsed.
    Casefold,
    /// [`normalize_sentence`].
    #[default]
    Standard,
    /// Lowercased alphanumeric characters only; insensitive to tokenization
    /// and all punctuation.
    Alphanumeric,
}

impl Normalization {
    pub const LADDER: [Normalization; 4] = [
        Normalization::Raw,
        Normalization::Casefold,
        Normalization::Standard,
        Normalization::Alphanumeric,
    ];

    pub fn apply(self, text: &str) -> String {
        match self {
            Normalization::Raw => text.trim().to_string(),
            Normalization::Casefold => collapse_whitespace(&text.to_lowercase()),
            Normalization::Standard => normalize_sentence(text).0,
            Normalization::Alphanumeric => text
                .to_lowercase()
                .chars()
                .filter(|c| c.is_alphanumeric())
                .collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::Casefold => "casefold",
            Normalization::Standard => "standard",
            Normalization::Alphanumeric => "alphanumeric",
        }
    }
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Normalization::LADDER
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| format!("unknown normalization {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexEntry {
    pub lemma: String,
    pub sense_key: String,
    pub pos: PartOfSpeech,
}

/// Normalized example sentence to the (lemma, sense) pairs whose synset
/// carries it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleIndex {
    normalization: Normalization,
    entries: BTreeMap<String, Vec<IndexEntry>>,
}

/// Result of looking a sentence up for a particular target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(String),
    /// The sentence is an example of several senses of the target.
    Ambiguous(usize),
    Miss,
}

pub fn build_example_index(inv: &SenseInventory) -> ExampleIndex {
    ExampleIndex::build(inv, Normalization::Standard)
}

impl ExampleIndex {
    /// One entry per (example, member sense) pair of every synset.
    pub fn build(inv: &SenseInventory, normalization: Normalization) -> Self {
        let mut entries: BTreeMap<String, Vec<IndexEntry>> = BTreeMap::new();
        for sense in inv.senses() {
            let examples = inv.examples_of(sense).expect("sense comes from this inventory");
            for example in examples {
                entries
                    .entry(normalization.apply(example))
                    .or_default()
                    .push(IndexEntry {
                        lemma: sense.lemma.clone(),
                        sense_key: sense.sense_key.clone(),
                        pos: sense.pos(),
                    });
            }
        }
        for list in entries.values_mut() {
            list.sort();
            list.dedup();
        }
        ExampleIndex {
            normalization,
            entries,
        }
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Entries for an already-normalized key; empty when absent.
    pub fn get(&self, key: &str) -> &[IndexEntry] {
        self.entries.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn key_count(&self) -> usize {
        self.entries.len()
    }

    pub fn entry_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn lookup(&self, sentence: &str, target: &TargetWord) -> MatchOutcome {
        let hits: Vec<&IndexEntry> = self
            .get(&self.normalization.apply(sentence))
            .iter()
            .filter(|e| e.lemma == target.lemma && e.pos.compatible(target.pos))
            .collect();
        match hits.as_slice() {
            [] => MatchOutcome::Miss,
            [only] => MatchOutcome::Matched(only.sense_key.clone()),
            many => MatchOutcome::Ambiguous(many.len()),
        }
    }
}

/// The sense whose example equals `sentence`, if exactly one sense of the
/// target has such an example.
pub fn match_sentence(idx: &ExampleIndex, sentence: &str, target: &TargetWord) -> Option<String> {
    match idx.lookup(sentence, target) {
        MatchOutcome::Matched(key) => Some(key),
        _ => None,
    }
}

/// What the matching solver does with sentences it cannot identify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BackoffPolicy {
    Abstain,
    /// Uniform choice among the target's senses, drawn from a generator
    /// seeded by `(seed, instance id)`.
    RandomUniform { seed: u64 },
}

/// Generator for one instance's back-off draw; independent of evaluation order.
pub fn instance_rng(seed: u64, instance_id: &str) -> ChaCha8Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(instance_id.as_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// WSD by example matching with a back-off policy.
#[derive(Clone, Copy, Debug)]
pub struct MatchingWsd<'a> {
    idx: &'a ExampleIndex,
    inv: &'a SenseInventory,
    policy: BackoffPolicy,
}

pub fn matching_wsd_solver<'a>(
    idx: &'a ExampleIndex,
    inv: &'a SenseInventory,
    policy: BackoffPolicy,
) -> MatchingWsd<'a> {
    MatchingWsd { idx, inv, policy }
}

impl MatchingWsd<'_> {
    pub fn outcome(&self, instance: &WsdInstance) -> MatchOutcome {
        self.idx.lookup(instance.context.text(), &instance.target)
    }

    pub fn policy(&self) -> BackoffPolicy {
        self.policy
    }
}

impl WsdSolver for MatchingWsd<'_> {
    fn disambiguate(&self, instance: &WsdInstance) -> Result<WsdVerdict, ReductionError> {
        if let MatchOutcome::Matched(key) = self.outcome(instance) {
            return Ok(WsdVerdict::Sense(key));
        }
        match self.policy {
            BackoffPolicy::Abstain => Ok(WsdVerdict::Abstain),
            BackoffPolicy::RandomUniform { seed } => {
                let senses = self.inv.senses_of(&instance.target.lemma, instance.target.pos);
                if senses.is_empty() {
                    return Err(ReductionError::UnknownLemma {
                        instance: instance.id.clone(),
                        lemma: instance.target.lemma.clone(),
                        pos: instance.target.pos,
                    });
                }
                let pick = instance_rng(seed, &instance.id).random_range(0..senses.len());
                Ok(WsdVerdict::Sense(senses[pick].sense_key.clone()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct MatchStats {
    pub n: usize,
    pub n_both_matched: usize,
    /// Sentences (not instances) whose lookup was ambiguous.
    pub n_ambiguous: usize,
    pub fraction: f64,
}

/// Per-instance result: whether each side matched.
pub fn match_sides(idx: &ExampleIndex, instance: &WicInstance) -> [MatchOutcome; 2] {
    [
        idx.lookup(instance.context1.text(), &instance.target),
        idx.lookup(instance.context2.text(), &instance.target),
    ]
}

pub fn match_stats(idx: &ExampleIndex, dataset: &[WicInstance]) -> Result<MatchStats, MatchError> {
    if dataset.is_empty() {
        return Err(MatchError::EmptyDataset);
    }
    let mut stats = MatchStats {
        n: dataset.len(),
        ..MatchStats::default()
    };
    for instance in dataset {
        let sides = match_sides(idx, instance);
        stats.n_ambiguous += sides
            .iter()
            .filter(|o| matches!(o, MatchOutcome::Ambiguous(_)))
            .count();
        if sides.iter().all(|o| matches!(o, MatchOutcome::Matched(_))) {
            stats.n_both_matched += 1;
        }
    }
    stats.fraction = stats.n_both_matched as f64 / stats.n as f64;
    Ok(stats)
}

/// Fraction of instances whose two sentences both identify a sense.
pub fn match_fraction(idx: &ExampleIndex, dataset: &[WicInstance]) -> Result<f64, MatchError> {
    match_stats(idx, dataset).map(|s| s.fraction)
}
