//! Task instances for WSD, TSV and WiC, and the solver contracts over them.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inventory::{canonical_lemma, PartOfSpeech};
use crate::reductions::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid span {start}..{end} in a text of {len} characters")]
pub struct SpanError {
    pub start: usize,
    pub end: usize,
    pub len: usize,
}

/// A sentence with one marked target occurrence.
///
/// The span is a half-open range of character (not byte) offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    text: String,
    start: usize,
    end: usize,
    surface: String,
}

impl Context {
    pub fn new(text: impl Into<String>, start: usize, end: usize) -> Result<Self, SpanError> {
        let text = text.into();
        let len = text.chars().count();
        if start >= end || end > len {
            return Err(SpanError { start, end, len });
        }
        let surface: String = text.chars().skip(start).take(end - start).collect();
        Ok(Context {
            text,
            start,
            end,
            surface,
        })
    }

    /// Marks the `index`-th whitespace-separated token of `text`, without
    /// punctuation attached to either end (`bank.` marks `bank`).
    pub fn from_token_index(text: impl Into<String>, index: usize) -> Result<Self, SpanError> {
        let text = text.into();
        let span = token_spans(&text).into_iter().nth(index);
        match span {
            Some(span) => {
                let chars: Vec<char> = text.chars().collect();
                let (mut start, mut end) = (span.start, span.end);
                let edge = |c: char| !c.is_alphanumeric();
                while end > start && edge(chars[end - 1]) {
                    end -= 1;
                }
                while start < end && edge(chars[start]) {
                    start += 1;
                }
                if start == end {
                    (start, end) = (span.start, span.end);
                }
                Context::new(text, start, end)
            }
            None => Err(SpanError {
                start: index,
                end: index + 1,
                len: text.chars().count(),
            }),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn span(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }
}

/// Character-offset spans of the whitespace-separated tokens of `text`.
pub fn token_spans(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start = None;
    let mut count = 0;
    for (i, c) in text.chars().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                spans.push(s..i);
                start = None;
            }
            _ => {}
        }
        count = i + 1;
    }
    if let Some(s) = start {
        spans.push(s..count);
    }
    spans
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetWord {
    pub lemma: String,
    pub pos: PartOfSpeech,
}

impl TargetWord {
    /// The lemma is canonicalised (lowercase, underscores for spaces).
    pub fn new(lemma: &str, pos: PartOfSpeech) -> Self {
        TargetWord {
            lemma: canonical_lemma(lemma),
            pos,
        }
    }
}

impl fmt::Display for TargetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.lemma, self.pos)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WsdInstance {
    pub id: String,
    pub context: Context,
    pub target: TargetWord,
    pub gold: Option<String>,
}

/// The sense a TSV instance asks about.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SenseRef {
    Key(String),
    /// Free-text definition, as supplied by WiC-TSV.
    Definition(String),
}

impl fmt::Display for SenseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SenseRef::Key(k) => write!(f, "key:{k}"),
            SenseRef::Definition(d) => write!(f, "def:{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsvInstance {
    pub id: String,
    pub context: Context,
    pub target: TargetWord,
    pub candidate: SenseRef,
    pub gold: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WicInstance {
    pub id: String,
    pub context1: Context,
    pub context2: Context,
    pub target: TargetWord,
    pub gold: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WsdVerdict {
    Sense(String),
    Abstain,
}

impl WsdVerdict {
    pub fn sense_key(&self) -> Option<&str> {
        match self {
            WsdVerdict::Sense(k) => Some(k),
            WsdVerdict::Abstain => None,
        }
    }
}

/// Returns the sense of the target word in context, or abstains.
///
/// Implementations must be deterministic given their own configuration.
pub trait WsdSolver {
    fn disambiguate(&self, instance: &WsdInstance) -> Result<WsdVerdict, ReductionError>;
}

/// Decides whether the candidate sense is the sense of the target in context.
pub trait TsvSolver {
    fn verify(&self, instance: &TsvInstance) -> Result<bool, ReductionError>;
}

/// Decides whether the target word has the same meaning in both contexts.
pub trait WicSolver {
    fn same_meaning(&self, instance: &WicInstance) -> Result<bool, ReductionError>;
}

macro_rules! forward_solver {
    ($solver:ident, $method:ident, $instance:ty, $out:ty) => {
        impl<S: $solver + ?Sized> $solver for &S {
            fn $method(&self, instance: &$instance) -> Result<$out, ReductionError> {
                (**self).$method(instance)
            }
        }

        impl<S: $solver + ?Sized> $solver for Box<S> {
            fn $method(&self, instance: &$instance) -> Result<$out, ReductionError> {
                (**self).$method(instance)
            }
        }

        impl<S: $solver + ?Sized> $solver for std::sync::Arc<S> {
            fn $method(&self, instance: &$instance) -> Result<$out, ReductionError> {
                (**self).$method(instance)
            }
        }
    };
}

forward_solver!(WsdSolver, disambiguate, WsdInstance, WsdVerdict);
forward_solver!(TsvSolver, verify, TsvInstance, bool);
forward_solver!(WicSolver, same_meaning, WicInstance, bool);

/// Adapts a closure into a solver of any of the three kinds.
#[derive(Clone, Copy)]
pub struct FnSolver<F>(pub F);

impl<F> WsdSolver for FnSolver<F>
where
    F: Fn(&WsdInstance) -> Result<WsdVerdict, ReductionError>,
{
    fn disambiguate(&self, instance: &WsdInstance) -> Result<WsdVerdict, ReductionError> {
        (self.0)(instance)
    }
}

impl<F> TsvSolver for FnSolver<F>
where
    F: Fn(&TsvInstance) -> Result<bool, ReductionError>,
{
    fn verify(&self, instance: &TsvInstance) -> Result<bool, ReductionError> {
        (self.0)(instance)
    }
}

impl<F> WicSolver for FnSolver<F>
where
    F: Fn(&WicInstance) -> Result<bool, ReductionError>,
{
    fn same_meaning(&self, instance: &WicInstance) -> Result<bool, ReductionError> {
        (self.0)(instance)
    }
}

/// A TSV or WiC solver that always returns the same answer.
#[derive(Clone, Copy, Debug)]
pub struct ConstantSolver(pub bool);

impl TsvSolver for ConstantSolver {
    fn verify(&self, _: &TsvInstance) -> Result<bool, ReductionError> {
        Ok(self.0)
    }
}

impl WicSolver for ConstantSolver {
    fn same_meaning(&self, _: &WicInstance) -> Result<bool, ReductionError> {
        Ok(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn context_slices_by_characters() {
        let ctx = Context::new("café au lait", 5, 7).unwrap();
        assert_eq!(ctx.surface(), "au");
        let ctx = Context::new("naïve dog", 6, 9).unwrap();
        assert_eq!(ctx.surface(), "dog");
    }

    #[test]
    fn invalid_spans_are_rejected() {
        assert!(Context::new("dog", 1, 1).is_err());
        assert!(Context::new("dog", 2, 1).is_err());
        assert!(Context::new("dog", 0, 4).is_err());
        assert!(Context::new("", 0, 0).is_err());
    }

    #[test]
    fn token_index_conversion() {
        let ctx = Context::from_token_index("Room and  board .", 2).unwrap();
        assert_eq!(ctx.surface(), "board");
        assert_eq!(ctx.span(), 10..15);
        assert!(Context::from_token_index("Room and board .", 4).is_err());
        let ctx = Context::from_token_index("He sat on the \"bank.\"", 4).unwrap();
        assert_eq!((ctx.surface(), ctx.span()), ("bank", 15..19));
        assert_eq!(Context::from_token_index("so ... then", 1).unwrap().surface(), "...");
    }

    #[test]
    fn target_lemma_is_canonical() {
        let t = TargetWord::new("Hot Dog", PartOfSpeech::Noun);
        assert_eq!(t.lemma, "hot_dog");
    }

    proptest! {
        #[test]
        fn token_spans_cover_exactly_the_tokens(text in "[a-c \t\u{e9}]{0,30}") {
            let chars: Vec<char> = text.chars().collect();
            let spans = token_spans(&text);
            let rebuilt: Vec<String> = spans
                .iter()
                .map(|r| chars[r.clone()].iter().collect())
                .collect();
            let expected: Vec<String> = text.split_whitespace().map(str::to_string).collect();
            prop_assert_eq!(rebuilt, expected);
        }
    }
}
