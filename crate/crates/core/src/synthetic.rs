//! Seeded miniature worlds: an inventory, one gold sense per context, and
//! WSD/TSV/WiC datasets whose labels follow from those gold senses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::inventory::{PartOfSpeech, Sense, SenseInventory, Synset, SynsetId};
use crate::reductions::locate_target;
use crate::task::{Context, SenseRef, TargetWord, TsvInstance, WicInstance, WsdInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntheticError {
    #[error("{name} must be at least 1, got {value}")]
    InvalidParameter { name: &'static str, value: usize },
}

const SYLLABLES: [&str; 12] = [
    "zor", "kel", "mip", "tav", "rud", "fen", "gol", "bix", "nar", "qua", "lem", "vos",
];
const FILLERS: [&str; 16] = [
    "the", "a", "quiet", "old", "bright", "near", "over", "under", "some", "every", "green",
    "small", "yesterday", "often", "north", "river",
];
const POS_CHOICES: [PartOfSpeech; 4] = [
    PartOfSpeech::Noun,
    PartOfSpeech::Verb,
    PartOfSpeech::Adjective,
    PartOfSpeech::Adverb,
];

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticWorld {
    pub seed: u64,
    pub inventory: SenseInventory,
    /// Gold sense key of every context, keyed by context text (unique per world).
    pub gold_sense_of_context: BTreeMap<String, String>,
    pub wsd: Vec<WsdInstance>,
    pub tsv: Vec<TsvInstance>,
    pub wic: Vec<WicInstance>,
}

/// Generates a world with `n_lemmas` lemmas, each with between 1 and
/// `max_senses` senses (the first lemma always has exactly `max_senses`),
/// and `examples_per_sense` contexts per sense.
///
/// Every context is also a gloss example of its sense's synset. The WiC set
/// holds every unordered pair of contexts sharing a lemma; the TSV set pairs
/// every context with every sense of its lemma.
pub fn generate_synthetic_world(
    seed: u64,
    n_lemmas: usize,
    max_senses: usize,
    examples_per_sense: usize,
) -> Result<SyntheticWorld, SyntheticError> {
    for (name, value) in [
        ("n_lemmas", n_lemmas),
        ("max_senses", max_senses),
        ("examples_per_sense", examples_per_sense),
    ] {
        if value == 0 {
            return Err(SyntheticError::InvalidParameter { name, value });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut synsets = Vec::new();
    let mut senses = Vec::new();
    let mut gold = BTreeMap::new();
    let mut wsd = Vec::new();
    let mut tsv = Vec::new();
    let mut wic = Vec::new();
    let mut offset = 1000u64;
    let mut context_no = 0usize;

    for lemma_no in 0..n_lemmas {
        let lemma = format!(
            "{}{}{lemma_no}",
            SYLLABLES[rng.random_range(0..SYLLABLES.len())],
            SYLLABLES[rng.random_range(0..SYLLABLES.len())]
        );
        let pos = POS_CHOICES[rng.random_range(0..POS_CHOICES.len())];
        let target = TargetWord::new(&lemma, pos);
        let n_senses = if lemma_no == 0 {
            max_senses
        } else {
            rng.random_range(1..=max_senses)
        };

        let mut lemma_contexts: Vec<(Context, String)> = Vec::new();
        let mut lemma_keys = Vec::new();
        for sense_no in 0..n_senses {
            let id = SynsetId::new(pos, offset);
            offset += 1;
            let key = format!("{lemma}%{}:00:{sense_no:02}::", pos.sense_key_type());
            let mut examples = Vec::new();
            for _ in 0..examples_per_sense {
                let mut pick = || FILLERS[rng.random_range(0..FILLERS.len())];
                let text = format!(
                    "{} {} {lemma} {} {} number {context_no}",
                    pick(),
                    pick(),
                    pick(),
                    pick()
                );
                context_no += 1;
                let span = locate_target(&text, &lemma).expect("lemma is in the text");
                let context = Context::new(text.clone(), span.start, span.end).expect("valid span");
                gold.insert(text.clone(), key.clone());
                lemma_contexts.push((context, key.clone()));
                examples.push(text);
            }
            synsets.push(Synset {
                id,
                lex_filenum: 0,
                lemmas: vec![lemma.clone()],
                gloss: format!("synthetic sense {sense_no} of {lemma}"),
                examples,
            });
            senses.push(Sense {
                sense_key: key.clone(),
                lemma: lemma.clone(),
                synset: id,
                sense_number: sense_no as u32 + 1,
            });
            lemma_keys.push(key);
        }

        for (i, (context, key)) in lemma_contexts.iter().enumerate() {
            let base = format!("{lemma}.{i}");
            wsd.push(WsdInstance {
                id: format!("wsd:{base}"),
                context: context.clone(),
                target: target.clone(),
                gold: Some(key.clone()),
            });
            for candidate in &lemma_keys {
                tsv.push(TsvInstance {
                    id: format!("tsv:{base}:{candidate}"),
                    context: context.clone(),
                    target: target.clone(),
                    candidate: SenseRef::Key(candidate.clone()),
                    gold: Some(candidate == key),
                });
            }
            for (j, (other, other_key)) in lemma_contexts.iter().enumerate().skip(i + 1) {
                wic.push(WicInstance {
                    id: format!("wic:{base}:{j}"),
                    context1: context.clone(),
                    context2: other.clone(),
                    target: target.clone(),
                    gold: Some(key == other_key),
                });
            }
        }
    }

    let inventory = SenseInventory::from_parts(synsets, senses)
        .expect("generated inventory satisfies its invariants");
    Ok(SyntheticWorld {
        seed,
        inventory,
        gold_sense_of_context: gold,
        wsd,
        tsv,
        wic,
    })
}

impl SyntheticWorld {
    /// The same world with the gloss examples of the given senses removed
    /// from the inventory. Contexts, gold senses and datasets are unchanged.
    pub fn withhold_examples(&self, sense_keys: &[&str]) -> SyntheticWorld {
        let withheld: Vec<SynsetId> = sense_keys
            .iter()
            .filter_map(|k| self.inventory.sense(k))
            .map(|s| s.synset)
            .collect();
        let synsets = self
            .inventory
            .synsets()
            .cloned()
            .map(|mut s| {
                if withheld.contains(&s.id) {
                    s.examples.clear();
                }
                s
            })
            .collect();
        let senses = self.inventory.senses().cloned().collect();
        SyntheticWorld {
            inventory: SenseInventory::from_parts(synsets, senses)
                .expect("removing examples keeps the inventory consistent"),
            ..self.clone()
        }
    }
}
