//! Solver adapters turning a solver for one task into a solver for another.
//!
//! * [`wic_via_wsd`]: same meaning iff both contexts get the same sense.
//! * [`wsd_via_tsv`]: ask the TSV solver about every sense of the target and
//!   return the one it accepts.
//! * [`tsv_via_wic`]: pair the context with an example context of the
//!   candidate sense and ask the WiC solver.
//!
//! Adapters add no randomness of their own and never guess: an abstention
//! or an ambiguous verification upstream surfaces as a [`ReductionError`].

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::inventory::{PartOfSpeech, Sense, SenseInventory};
use crate::synthetic::SyntheticWorld;
use crate::task::{
    Context, SenseRef, TsvInstance, TsvSolver, WicInstance, WicSolver, WsdInstance, WsdSolver,
    WsdVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{instance}: no candidate sense was verified")]
    ZeroTrue { instance: String },
    #[error("{instance}: several senses were verified: {}", sense_keys.join(", "))]
    MultiTrue {
        instance: String,
        sense_keys: Vec<String>,
    },
    #[error("no example context for sense {sense_key}")]
    NoExample { sense_key: String },
    #[error("{instance}: the wrapped solver abstained")]
    AbstainedUpstream { instance: String },
    #[error("{instance}: {lemma} has no {pos} senses in the inventory")]
    UnknownLemma {
        instance: String,
        lemma: String,
        pos: PartOfSpeech,
    },
    #[error("{instance}: sense key {sense_key} is not in the inventory")]
    UnknownSense { instance: String, sense_key: String },
    #[error("{instance}: definition matches no unique gloss: {definition:?}")]
    UnresolvedDefinition { instance: String, definition: String },
    #[error("{instance}: context is not part of the synthetic world")]
    UnknownContext { instance: String },
}

impl ReductionError {
    /// Stable name of the error class, used for report counters.
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionError::ZeroTrue { .. } => "ZeroTrue",
            ReductionError::MultiTrue { .. } => "MultiTrue",
            ReductionError::NoExample { .. } => "NoExample",
            ReductionError::AbstainedUpstream { .. } => "AbstainedUpstream",
            ReductionError::UnknownLemma { .. } => "UnknownLemma",
            ReductionError::UnknownSense { .. } => "UnknownSense",
            ReductionError::UnresolvedDefinition { .. } => "UnresolvedDefinition",
            ReductionError::UnknownContext { .. } => "UnknownContext",
        }
    }
}

/// Supplies an example context in which a sense's lemma is used in that sense.
pub trait ExampleProvider {
    fn example_context(&self, sense: &Sense) -> Option<Context>;
}

impl<P: ExampleProvider + ?Sized> ExampleProvider for &P {
    fn example_context(&self, sense: &Sense) -> Option<Context> {
        (**self).example_context(sense)
    }
}

/// Draws example contexts from the usage examples in the synset's gloss.
///
/// The first example in which the lemma (or a naive inflection of it) can be
/// located is used; the target span covers that occurrence.
#[derive(Clone, Copy, Debug)]
pub struct GlossExamples<'a> {
    inv: &'a SenseInventory,
}

impl<'a> GlossExamples<'a> {
    pub fn new(inv: &'a SenseInventory) -> Self {
        GlossExamples { inv }
    }
}

impl ExampleProvider for GlossExamples<'_> {
    fn example_context(&self, sense: &Sense) -> Option<Context> {
        let examples = self.inv.examples_of(sense).ok()?;
        examples.iter().find_map(|text| {
            let span = locate_target(text, &sense.lemma)?;
            Context::new(text.as_str(), span.start, span.end).ok()
        })
    }
}

/// Surface forms tried when looking for a lemma in running text.
fn inflections(lemma: &str) -> Vec<String> {
    let base = lemma.replace('_', " ").to_lowercase();
    let mut forms = vec![
        base.clone(),
        format!("{base}s"),
        format!("{base}es"),
        format!("{base}ed"),
        format!("{base}ing"),
    ];
    if let Some(stem) = base.strip_suffix('e') {
        forms.push(format!("{base}d"));
        forms.push(format!("{stem}ing"));
    }
    if let Some(stem) = base.strip_suffix('y') {
        forms.push(format!("{stem}ies"));
        forms.push(format!("{stem}ied"));
    }
    forms
}

/// Character span of the first whole-word, case-insensitive occurrence of
/// `lemma` or one of its naive inflections (`-s`, `-es`, `-ed`, `-ing`).
/// At a given position the longest form wins.
pub fn locate_target(text: &str, lemma: &str) -> Option<Range<usize>> {
    let chars: Vec<char> = text
        .chars()
        .map(|c| c.to_lowercase().next().unwrap_or(c))
        .collect();
    let forms: Vec<Vec<char>> = inflections(lemma)
        .iter()
        .map(|f| f.chars().collect())
        .filter(|f: &Vec<char>| !f.is_empty())
        .collect();
    let is_word = |c: char| c.is_alphanumeric();
    for start in 0..chars.len() {
        if start > 0 && is_word(chars[start - 1]) {
            continue;
        }
        let best = forms
            .iter()
            .filter(|f| chars[start..].starts_with(f))
            .map(|f| start + f.len())
            .filter(|&end| end == chars.len() || !is_word(chars[end]))
            .max();
        if let Some(end) = best {
            return Some(start..end);
        }
    }
    None
}

/// WiC from WSD: `WiC(C1, C2, w) <=> WSD(C1, w) = WSD(C2, w)`.
#[derive(Clone, Debug)]
pub struct WicViaWsd<S> {
    wsd: S,
}

pub fn wic_via_wsd<S: WsdSolver>(wsd: S) -> WicViaWsd<S> {
    WicViaWsd { wsd }
}

impl<S: WsdSolver> WicViaWsd<S> {
    /// The two WSD instances the adapter poses, with ids `<id>/1` and `<id>/2`.
    pub fn sides(instance: &WicInstance) -> [WsdInstance; 2] {
        [&instance.context1, &instance.context2]
            .into_iter()
            .enumerate()
            .map(|(i, context)| WsdInstance {
                id: format!("{}/{}", instance.id, i + 1),
                context: context.clone(),
                target: instance.target.clone(),
                gold: None,
            })
            .collect::<Vec<_>>()
            .try_into()
            .expect("two sides")
    }

    /// The wrapped solver's verdicts for both sides.
    pub fn verdicts(&self, instance: &WicInstance) -> Result<[WsdVerdict; 2], ReductionError> {
        let [a, b] = Self::sides(instance);
        Ok([self.wsd.disambiguate(&a)?, self.wsd.disambiguate(&b)?])
    }

    pub fn inner(&self) -> &S {
        &self.wsd
    }
}

impl<S: WsdSolver> WicSolver for WicViaWsd<S> {
    fn same_meaning(&self, instance: &WicInstance) -> Result<bool, ReductionError> {
        match self.verdicts(instance)? {
            [WsdVerdict::Sense(a), WsdVerdict::Sense(b)] => Ok(a == b),
            _ => Err(ReductionError::AbstainedUpstream {
                instance: instance.id.clone(),
            }),
        }
    }
}

/// WSD from TSV: `WSD(C, w) = s <=> TSV(C, e, s)`.
///
/// Every sense of the target is verified, in ascending sense number, so that
/// a violated uniqueness assumption is reported instead of hidden.
#[derive(Clone, Debug)]
pub struct WsdViaTsv<'a, T> {
    tsv: T,
    inv: &'a SenseInventory,
}

pub fn wsd_via_tsv<T: TsvSolver>(tsv: T, inv: &SenseInventory) -> WsdViaTsv<'_, T> {
    WsdViaTsv { tsv, inv }
}

impl<T: TsvSolver> WsdViaTsv<'_, T> {
    /// The TSV instances posed for `instance`, one per candidate sense.
    pub fn candidates(&self, instance: &WsdInstance) -> Vec<TsvInstance> {
        self.inv
            .senses_of(&instance.target.lemma, instance.target.pos)
            .into_iter()
            .map(|sense| TsvInstance {
                id: format!("{}#{}", instance.id, sense.sense_key),
                context: instance.context.clone(),
                target: instance.target.clone(),
                candidate: SenseRef::Key(sense.sense_key.clone()),
                gold: None,
            })
            .collect()
    }
}

impl<T: TsvSolver> WsdSolver for WsdViaTsv<'_, T> {
    fn disambiguate(&self, instance: &WsdInstance) -> Result<WsdVerdict, ReductionError> {
        let candidates = self.candidates(instance);
        if candidates.is_empty() {
            return Err(ReductionError::UnknownLemma {
                instance: instance.id.clone(),
                lemma: instance.target.lemma.clone(),
                pos: instance.target.pos,
            });
        }
        let mut verified = Vec::new();
        for candidate in candidates {
            if self.tsv.verify(&candidate)? {
                if let SenseRef::Key(key) = candidate.candidate {
                    verified.push(key);
                }
            }
        }
        match verified.len() {
            0 => Err(ReductionError::ZeroTrue {
                instance: instance.id.clone(),
            }),
            1 => Ok(WsdVerdict::Sense(verified.remove(0))),
            _ => Err(ReductionError::MultiTrue {
                instance: instance.id.clone(),
                sense_keys: verified,
            }),
        }
    }
}

/// TSV from WiC: `TSV(C, e, s) <=> WiC(C, C_s, w)`.
#[derive(Clone, Debug)]
pub struct TsvViaWic<'a, W, P> {
    wic: W,
    examples: P,
    inv: &'a SenseInventory,
}

pub fn tsv_via_wic<W: WicSolver, P: ExampleProvider>(
    wic: W,
    examples: P,
    inv: &SenseInventory,
) -> TsvViaWic<'_, W, P> {
    TsvViaWic { wic, examples, inv }
}

fn normalize_gloss(text: &str) -> String {
    text.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Resolves a free-text definition to the sense of `lemma` whose gloss is
/// equal to it after lowercasing and whitespace collapsing. All parts of
/// speech of the lemma are searched; the match must be unique.
pub fn resolve_definition<'a>(
    inv: &'a SenseInventory,
    lemma: &str,
    definition: &str,
) -> Option<&'a Sense> {
    let wanted = normalize_gloss(definition);
    let mut found: Option<&Sense> = None;
    let classes = [
        PartOfSpeech::Noun,
        PartOfSpeech::Verb,
        PartOfSpeech::Adjective,
        PartOfSpeech::Adverb,
    ];
    for pos in classes {
        for sense in inv.senses_of(lemma, pos) {
            let gloss = inv.synset_of(sense).map(|s| normalize_gloss(&s.gloss));
            if gloss.as_deref() == Some(wanted.as_str()) {
                if found.is_some() {
                    return None;
                }
                found = Some(sense);
            }
        }
    }
    found
}

impl<W: WicSolver, P: ExampleProvider> TsvViaWic<'_, W, P> {
    fn candidate_sense(&self, instance: &TsvInstance) -> Result<&Sense, ReductionError> {
        match &instance.candidate {
            SenseRef::Key(key) => self.inv.sense(key).ok_or_else(|| ReductionError::UnknownSense {
                instance: instance.id.clone(),
                sense_key: key.clone(),
            }),
            SenseRef::Definition(definition) => {
                resolve_definition(self.inv, &instance.target.lemma, definition).ok_or_else(|| {
                    ReductionError::UnresolvedDefinition {
                        instance: instance.id.clone(),
                        definition: definition.clone(),
                    }
                })
            }
        }
    }

    /// The WiC instance posed for `instance`, with id `<id>~<sense key>`.
    pub fn pair(&self, instance: &TsvInstance) -> Result<WicInstance, ReductionError> {
        let sense = self.candidate_sense(instance)?;
        let example = self
            .examples
            .example_context(sense)
            .ok_or_else(|| ReductionError::NoExample {
                sense_key: sense.sense_key.clone(),
            })?;
        Ok(WicInstance {
            id: format!("{}~{}", instance.id, sense.sense_key),
            context1: instance.context.clone(),
            context2: example,
            target: instance.target.clone(),
            gold: None,
        })
    }
}

impl<W: WicSolver, P: ExampleProvider> TsvSolver for TsvViaWic<'_, W, P> {
    fn verify(&self, instance: &TsvInstance) -> Result<bool, ReductionError> {
        self.wic.same_meaning(&self.pair(instance)?)
    }
}

/// Answers all three tasks from the recorded gold sense of every context of
/// a synthetic world. Contexts are identified by their text.
#[derive(Clone, Debug)]
pub struct GoldOracle {
    gold: Arc<BTreeMap<String, String>>,
}

impl GoldOracle {
    pub fn new(gold_sense_of_context: BTreeMap<String, String>) -> Self {
        GoldOracle {
            gold: Arc::new(gold_sense_of_context),
        }
    }

    fn sense_of(&self, id: &str, context: &Context) -> Result<&str, ReductionError> {
        self.gold
            .get(context.text())
            .map(String::as_str)
            .ok_or_else(|| ReductionError::UnknownContext {
                instance: id.to_string(),
            })
    }
}

impl WsdSolver for GoldOracle {
    fn disambiguate(&self, instance: &WsdInstance) -> Result<WsdVerdict, ReductionError> {
        self.sense_of(&instance.id, &instance.context)
            .map(|k| WsdVerdict::Sense(k.to_string()))
    }
}

impl TsvSolver for GoldOracle {
    fn verify(&self, instance: &TsvInstance) -> Result<bool, ReductionError> {
        let gold = self.sense_of(&instance.id, &instance.context)?;
        match &instance.candidate {
            SenseRef::Key(key) => Ok(key == gold),
            SenseRef::Definition(definition) => Err(ReductionError::UnresolvedDefinition {
                instance: instance.id.clone(),
                definition: definition.clone(),
            }),
        }
    }
}

impl WicSolver for GoldOracle {
    fn same_meaning(&self, instance: &WicInstance) -> Result<bool, ReductionError> {
        let a = self.sense_of(&instance.id, &instance.context1)?;
        let b = self.sense_of(&instance.id, &instance.context2)?;
        Ok(a == b)
    }
}

/// Gold WSD, TSV and WiC solvers for `world`.
pub fn make_gold_solvers(world: &SyntheticWorld) -> (GoldOracle, GoldOracle, GoldOracle) {
    let oracle = GoldOracle::new(world.gold_sense_of_context.clone());
    (oracle.clone(), oracle.clone(), oracle)
}
