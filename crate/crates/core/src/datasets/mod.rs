//! Loaders for the public WiC-family datasets and the unified instance dump.
//!
//! Nothing here downloads data; every loader takes paths to files from the
//! official releases.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::inventory::PartOfSpeech;
use crate::task::{Context, SpanError, TargetWord};

mod dump;
mod mclwic;
mod wic;
mod wictsv;

pub use dump::{write_tsv_dump, write_wic_dump, write_wsd_dump};
pub use mclwic::load_mclwic;
pub use wic::load_wic;
pub use wictsv::load_wictsv;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{file}:{line}: {reason}")]
    Format {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("{file}:{line}: {source}")]
    Span {
        file: String,
        line: usize,
        #[source]
        source: SpanError,
    },
    #[error("{data} has {data_lines} instances but {labels} has {label_lines} labels")]
    LengthMismatch {
        data: String,
        data_lines: usize,
        labels: String,
        label_lines: usize,
    },
    #[error("tag for unknown instance id {0}")]
    UnknownTagId(String),
    #[error("no tag for instance id {0}")]
    MissingTag(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Maps a dataset POS tag onto the inventory's parts of speech.
///
/// WiC uses `N`/`V`, MCL-WiC spells them out (`NOUN`, `VERB`, `ADJ`, `ADV`).
pub fn parse_pos_tag(tag: &str) -> Option<PartOfSpeech> {
    match tag.trim().to_ascii_uppercase().as_str() {
        "N" | "NOUN" => Some(PartOfSpeech::Noun),
        "V" | "VERB" => Some(PartOfSpeech::Verb),
        "ADJ" | "A" => Some(PartOfSpeech::Adjective),
        "ADV" | "R" => Some(PartOfSpeech::Adverb),
        _ => None,
    }
}

pub(crate) fn read_to_string(path: &Path) -> Result<String, DatasetError> {
    fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Non-empty lines with their 1-based line numbers, line endings stripped.
pub(crate) fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
}

pub(crate) fn parse_binary_label(label: &str) -> Option<bool> {
    match label.trim() {
        "T" | "t" | "True" | "true" | "1" => Some(true),
        "F" | "f" | "False" | "false" | "0" => Some(false),
        _ => None,
    }
}

/// Reads a one-label-per-line file.
pub(crate) fn read_labels(path: &Path) -> Result<Vec<bool>, DatasetError> {
    let file = file_label(path);
    let text = read_to_string(path)?;
    numbered_lines(&text)
        .map(|(line, l)| {
            parse_binary_label(l).ok_or_else(|| DatasetError::Format {
                file: file.clone(),
                line,
                reason: format!("expected T or F, found {l:?}"),
            })
        })
        .collect()
}

/// Logs contexts whose marked surface does not start with the target lemma.
///
/// Inflected and mis-tokenised targets are legitimate data, so this only
/// counts and reports them.
pub(crate) fn warn_surface_mismatches<'a>(
    file: &str,
    items: impl Iterator<Item = (&'a str, &'a TargetWord, &'a Context)>,
) {
    let mut mismatches = 0usize;
    for (id, target, ctx) in items {
        let surface = ctx.surface().to_lowercase();
        let stem: String = target.lemma.replace('_', " ").chars().take(3).collect();
        if !surface.starts_with(&stem) {
            log::debug!("{id}: surface {:?} differs from lemma {}", ctx.surface(), target.lemma);
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        log::warn!("{file}: {mismatches} target surfaces differ from their lemma");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pos_tags() {
        assert_eq!(parse_pos_tag("N"), Some(PartOfSpeech::Noun));
        assert_eq!(parse_pos_tag("VERB"), Some(PartOfSpeech::Verb));
        assert_eq!(parse_pos_tag("ADJ"), Some(PartOfSpeech::Adjective));
        assert_eq!(parse_pos_tag("ADV"), Some(PartOfSpeech::Adverb));
        assert_eq!(parse_pos_tag("X"), None);
    }
}
