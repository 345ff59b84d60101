//! WordNet 3.0 database reader and the immutable sense inventory built from it.
//!
//! Only the parts of the database needed for sense identity are read: the
//! four `data.*` files (synsets, member lemmas, glosses) and `index.sense`
//! (sense keys with their per-lemma frequency rank). Pointers and verb frames
//! are skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InventoryError {
    #[error("missing WordNet file: {}", .0.display())]
    MissingFile(PathBuf),
    #[error("{file}:{line}: {reason}")]
    Parse {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("sense {sense_key} references absent synset {synset}")]
    DanglingSense { sense_key: String, synset: SynsetId },
    #[error("unknown sense key {0}")]
    UnknownSense(String),
    #[error("inconsistent inventory: {0}")]
    Inconsistent(String),
    #[error("i/o error reading {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// A WordNet part of speech.
///
/// `AdjectiveSatellite` is kept distinct in synset identities (it is a
/// separate `ss_type` in the database) but folds into `Adjective` for lemma
/// lookups; see [`PartOfSpeech::lookup_class`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    AdjectiveSatellite,
    Adverb,
}

impl PartOfSpeech {
    pub const ALL: [PartOfSpeech; 5] = [
        PartOfSpeech::Noun,
        PartOfSpeech::Verb,
        PartOfSpeech::Adjective,
        PartOfSpeech::AdjectiveSatellite,
        PartOfSpeech::Adverb,
    ];

    /// Parses the one-letter `ss_type` used in `data.*` files.
    pub fn from_synset_type(c: char) -> Option<Self> {
        match c {
            'n' => Some(PartOfSpeech::Noun),
            'v' => Some(PartOfSpeech::Verb),
            'a' => Some(PartOfSpeech::Adjective),
            's' => Some(PartOfSpeech::AdjectiveSatellite),
            'r' => Some(PartOfSpeech::Adverb),
            _ => None,
        }
    }

    pub fn synset_type(self) -> char {
        match self {
            PartOfSpeech::Noun => 'n',
            PartOfSpeech::Verb => 'v',
            PartOfSpeech::Adjective => 'a',
            PartOfSpeech::AdjectiveSatellite => 's',
            PartOfSpeech::Adverb => 'r',
        }
    }

    /// Parses the numeric `ss_type` used inside sense keys (1..=5).
    pub fn from_sense_key_type(c: char) -> Option<Self> {
        match c {
            '1' => Some(PartOfSpeech::Noun),
            '2' => Some(PartOfSpeech::Verb),
            '3' => Some(PartOfSpeech::Adjective),
            '4' => Some(PartOfSpeech::Adverb),
            '5' => Some(PartOfSpeech::AdjectiveSatellite),
            _ => None,
        }
    }

    pub fn sense_key_type(self) -> char {
        match self {
            PartOfSpeech::Noun => '1',
            PartOfSpeech::Verb => '2',
            PartOfSpeech::Adjective => '3',
            PartOfSpeech::Adverb => '4',
            PartOfSpeech::AdjectiveSatellite => '5',
        }
    }

    /// The class used for lemma lookups: satellites are adjectives.
    pub fn lookup_class(self) -> Self {
        match self {
            PartOfSpeech::AdjectiveSatellite => PartOfSpeech::Adjective,
            other => other,
        }
    }

    pub fn compatible(self, other: PartOfSpeech) -> bool {
        self.lookup_class() == other.lookup_class()
    }

    /// Name of the data file holding synsets of this part of speech.
    pub fn data_file(self) -> &'static str {
        match self.lookup_class() {
            PartOfSpeech::Noun => "data.noun",
            PartOfSpeech::Verb => "data.verb",
            PartOfSpeech::Adverb => "data.adv",
            _ => "data.adj",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective => "adj",
            PartOfSpeech::AdjectiveSatellite => "adj_sat",
            PartOfSpeech::Adverb => "adv",
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.synset_type())
    }
}

impl FromStr for PartOfSpeech {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                PartOfSpeech::from_synset_type(c).ok_or_else(|| format!("bad part of speech {s:?}"))
            }
            _ => Err(format!("bad part of speech {s:?}")),
        }
    }
}

/// Identity of a synset: its part of speech and byte offset in the data file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SynsetId {
    pub pos: PartOfSpeech,
    pub offset: u64,
}

impl SynsetId {
    pub fn new(pos: PartOfSpeech, offset: u64) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synset {
    pub id: SynsetId,
    pub lex_filenum: u8,
    /// Member lemmas in database order, underscores for spaces.
    pub lemmas: Vec<String>,
    /// Definition text with the quoted usage examples removed.
    pub gloss: String,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sense {
    pub sense_key: String,
    pub lemma: String,
    pub synset: SynsetId,
    /// Frequency rank of this sense among the lemma's senses, from 1.
    pub sense_number: u32,
}

impl Sense {
    pub fn pos(&self) -> PartOfSpeech {
        self.synset.pos
    }
}

/// Canonical lookup form of a lemma: lowercase, spaces replaced by underscores.
pub fn canonical_lemma(lemma: &str) -> String {
    lemma.trim().to_lowercase().split_whitespace().collect::<Vec<_>>().join("_")
}

/// Splits a raw gloss into its definition and its quoted usage examples.
///
/// The gloss is cut into `;`-separated segments. Semicolons inside a quoted
/// example do not cut, unless the next non-blank character opens a new
/// quote (which repairs the handful of unterminated quotes in WordNet 3.0).
/// A segment that starts with `"` is an example: its text runs to the next
/// `"` (or the end of the segment), and anything after the closing quote,
/// typically an attribution such as `- Shakespeare`, is dropped. All other
/// segments make up the definition, rejoined with `"; "`.
pub fn split_gloss(raw: &str) -> (String, Vec<String>) {
    let mut segments = Vec::new();
    let mut start = 0;
    let mut in_quote = false;
    for (i, c) in raw.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            ';' => {
                let reopens = raw[i + 1..].trim_start().starts_with('"');
                if !in_quote || reopens {
                    segments.push(&raw[start..i]);
                    start = i + 1;
                    in_quote = false;
                }
            }
            _ => {}
        }
    }
    segments.push(&raw[start..]);

    let mut definition = Vec::new();
    let mut examples = Vec::new();
    for segment in segments {
        let segment = segment.trim();
        if segment.is_empty() {
            continue;
        }
        if let Some(rest) = segment.strip_prefix('"') {
            let inner = match rest.find('"') {
                Some(end) => &rest[..end],
                None => rest,
            };
            let inner = inner.trim();
            if !inner.is_empty() {
                examples.push(inner.to_string());
            }
        } else {
            definition.push(segment);
        }
    }
    (definition.join("; "), examples)
}

/// Immutable store of synsets and senses.
///
/// Every sense resolves to exactly one synset, sense keys are unique, and
/// the lemma index lists each lemma's senses in ascending sense number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SenseInventory {
    synsets: BTreeMap<SynsetId, Synset>,
    senses: BTreeMap<String, Sense>,
    lemma_index: BTreeMap<(String, PartOfSpeech), Vec<String>>,
}

const DATA_FILES: [(&str, PartOfSpeech); 4] = [
    ("data.noun", PartOfSpeech::Noun),
    ("data.verb", PartOfSpeech::Verb),
    ("data.adj", PartOfSpeech::Adjective),
    ("data.adv", PartOfSpeech::Adverb),
];

/// Loads a WordNet 3.0 `dict` directory.
pub fn load_inventory(dir: impl AsRef<Path>) -> Result<SenseInventory, InventoryError> {
    SenseInventory::load(dir)
}

fn read_lines(path: &Path) -> Result<Vec<String>, InventoryError> {
    let file = fs::File::open(path).map_err(|source| InventoryError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    io::BufReader::new(file)
        .lines()
        .collect::<Result<_, _>>()
        .map_err(|source| InventoryError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn is_header(line: &str) -> bool {
    line.starts_with("  ")
}

/// Strips the syntactic marker WordNet appends to some adjectives, e.g. `(p)`.
fn strip_adjective_marker(word: &str) -> &str {
    match word.find('(') {
        Some(i) if word.ends_with(')') => &word[..i],
        _ => word,
    }
}

fn parse_data_line(
    line: &str,
    file: &str,
    line_no: usize,
    file_pos: PartOfSpeech,
) -> Result<Synset, InventoryError> {
    let err = |reason: String| InventoryError::Parse {
        file: file.to_string(),
        line: line_no,
        reason,
    };
    let (head, raw_gloss) = match line.find(" | ") {
        Some(i) => (&line[..i], &line[i + 3..]),
        None => (line.trim_end().trim_end_matches('|'), ""),
    };
    let mut fields = head.split_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| err(format!("missing {what}")));

    let offset_field = next("synset offset")?;
    let offset: u64 = offset_field
        .parse()
        .map_err(|_| err(format!("bad synset offset {offset_field:?}")))?;
    let lex_field = next("lex_filenum")?;
    let lex_filenum: u8 = lex_field
        .parse()
        .map_err(|_| err(format!("bad lex_filenum {lex_field:?}")))?;
    let type_field = next("ss_type")?;
    let pos = type_field
        .parse::<PartOfSpeech>()
        .map_err(|_| err(format!("bad ss_type {type_field:?}")))?;
    if !pos.compatible(file_pos) {
        return Err(err(format!("ss_type {pos} does not belong in {file}")));
    }
    let count_field = next("w_cnt")?;
    let w_cnt = usize::from_str_radix(count_field, 16)
        .map_err(|_| err(format!("bad w_cnt {count_field:?}")))?;
    if w_cnt == 0 {
        return Err(err("synset has no lemmas".to_string()));
    }
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        let lex_id = next("lex_id")?;
        if u8::from_str_radix(lex_id, 16).is_err() {
            return Err(err(format!("bad lex_id {lex_id:?}")));
        }
        lemmas.push(strip_adjective_marker(word).to_string());
    }
    let p_field = next("p_cnt")?;
    p_field
        .parse::<u32>()
        .map_err(|_| err(format!("bad p_cnt {p_field:?}")))?;

    let (gloss, examples) = split_gloss(raw_gloss.trim());
    Ok(Synset {
        id: SynsetId::new(pos, offset),
        lex_filenum,
        lemmas,
        gloss,
        examples,
    })
}

fn parse_sense_line(line: &str, line_no: usize) -> Result<Sense, InventoryError> {
    let err = |reason: String| InventoryError::Parse {
        file: "index.sense".to_string(),
        line: line_no,
        reason,
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(err(format!("expected 4 fields, found {}", fields.len())));
    }
    let sense_key = fields[0];
    let (lemma, lex_sense) = sense_key
        .split_once('%')
        .ok_or_else(|| err(format!("sense key {sense_key:?} has no '%'")))?;
    if lemma.is_empty() {
        return Err(err(format!("sense key {sense_key:?} has an empty lemma")));
    }
    let pos = lex_sense
        .chars()
        .next()
        .and_then(PartOfSpeech::from_sense_key_type)
        .ok_or_else(|| err(format!("sense key {sense_key:?} has a bad ss_type")))?;
    let offset: u64 = fields[1]
        .parse()
        .map_err(|_| err(format!("bad synset offset {:?}", fields[1])))?;
    let sense_number: u32 = fields[2]
        .parse()
        .map_err(|_| err(format!("bad sense number {:?}", fields[2])))?;
    if sense_number == 0 {
        return Err(err("sense number must be positive".to_string()));
    }
    fields[3]
        .parse::<u32>()
        .map_err(|_| err(format!("bad tag count {:?}", fields[3])))?;
    Ok(Sense {
        sense_key: sense_key.to_string(),
        lemma: lemma.to_string(),
        synset: SynsetId::new(pos, offset),
        sense_number,
    })
}

impl SenseInventory {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, InventoryError> {
        let dir = dir.as_ref();
        let required = DATA_FILES
            .iter()
            .map(|(name, _)| *name)
            .chain(std::iter::once("index.sense"));
        for name in required {
            let path = dir.join(name);
            if !path.is_file() {
                return Err(InventoryError::MissingFile(path));
            }
        }

        let mut synsets = Vec::new();
        for (name, pos) in DATA_FILES {
            for (i, line) in read_lines(&dir.join(name))?.iter().enumerate() {
                if is_header(line) || line.trim().is_empty() {
                    continue;
                }
                synsets.push(parse_data_line(line, name, i + 1, pos)?);
            }
        }
        let mut senses = Vec::new();
        for (i, line) in read_lines(&dir.join("index.sense"))?.iter().enumerate() {
            if is_header(line) || line.trim().is_empty() {
                continue;
            }
            senses.push(parse_sense_line(line, i + 1)?);
        }
        Self::from_parts(synsets, senses)
    }

    /// Builds an inventory from already-parsed records, checking every
    /// structural invariant.
    pub fn from_parts(synsets: Vec<Synset>, senses: Vec<Sense>) -> Result<Self, InventoryError> {
        let mut by_id = BTreeMap::new();
        for synset in synsets {
            if synset.lemmas.is_empty() {
                return Err(InventoryError::Inconsistent(format!(
                    "synset {} has no lemmas",
                    synset.id
                )));
            }
            if let Some(bad) = synset.lemmas.iter().find(|l| l.is_empty() || l.contains(char::is_whitespace)) {
                return Err(InventoryError::Inconsistent(format!(
                    "synset {} has malformed lemma {bad:?}",
                    synset.id
                )));
            }
            if let Some(prev) = by_id.insert(synset.id, synset) {
                return Err(InventoryError::Inconsistent(format!(
                    "duplicate synset {}",
                    prev.id
                )));
            }
        }

        let mut by_key = BTreeMap::new();
        let mut lemma_synset = BTreeSet::new();
        for sense in senses {
            if !by_id.contains_key(&sense.synset) {
                return Err(InventoryError::DanglingSense {
                    sense_key: sense.sense_key,
                    synset: sense.synset,
                });
            }
            if !lemma_synset.insert((sense.lemma.clone(), sense.synset)) {
                return Err(InventoryError::Inconsistent(format!(
                    "lemma {} listed twice for synset {}",
                    sense.lemma, sense.synset
                )));
            }
            if by_key.contains_key(&sense.sense_key) {
                return Err(InventoryError::Inconsistent(format!(
                    "duplicate sense key {}",
                    sense.sense_key
                )));
            }
            by_key.insert(sense.sense_key.clone(), sense);
        }

        let mut lemma_index: BTreeMap<(String, PartOfSpeech), Vec<String>> = BTreeMap::new();
        for sense in by_key.values() {
            lemma_index
                .entry((sense.lemma.clone(), sense.pos().lookup_class()))
                .or_default()
                .push(sense.sense_key.clone());
        }
        for keys in lemma_index.values_mut() {
            keys.sort_by(|a, b| {
                let (sa, sb) = (&by_key[a], &by_key[b]);
                sa.sense_number.cmp(&sb.sense_number).then_with(|| a.cmp(b))
            });
        }

        Ok(SenseInventory {
            synsets: by_id,
            senses: by_key,
            lemma_index,
        })
    }

    /// All senses of `lemma` with the given part of speech, in ascending
    /// sense number. Unknown lemmas yield an empty list.
    pub fn senses_of(&self, lemma: &str, pos: PartOfSpeech) -> Vec<&Sense> {
        self.lemma_index
            .get(&(canonical_lemma(lemma), pos.lookup_class()))
            .map(|keys| keys.iter().map(|k| &self.senses[k]).collect())
            .unwrap_or_default()
    }

    /// Usage examples of the synset `sense` belongs to, in gloss order.
    pub fn examples_of(&self, sense: &Sense) -> Result<&[String], InventoryError> {
        let known = self
            .senses
            .get(&sense.sense_key)
            .ok_or_else(|| InventoryError::UnknownSense(sense.sense_key.clone()))?;
        Ok(&self.synsets[&known.synset].examples)
    }

    pub fn sense(&self, sense_key: &str) -> Option<&Sense> {
        self.senses.get(sense_key)
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synset_of(&self, sense: &Sense) -> Option<&Synset> {
        self.synsets.get(&sense.synset)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    pub fn senses(&self) -> impl Iterator<Item = &Sense> {
        self.senses.values()
    }

    pub fn synset_count(&self) -> usize {
        self.synsets.len()
    }

    pub fn sense_count(&self) -> usize {
        self.senses.len()
    }

    /// Per part of speech (satellites reported separately): synsets, senses
    /// and extracted example sentences.
    pub fn stats(&self) -> BTreeMap<PartOfSpeech, PosStats> {
        let mut stats: BTreeMap<PartOfSpeech, PosStats> =
            PartOfSpeech::ALL.iter().map(|p| (*p, PosStats::default())).collect();
        for synset in self.synsets.values() {
            let entry = stats.get_mut(&synset.id.pos).expect("all parts of speech present");
            entry.synsets += 1;
            entry.examples += synset.examples.len();
        }
        for sense in self.senses.values() {
            stats.get_mut(&sense.pos()).expect("all parts of speech present").senses += 1;
        }
        stats
    }

    /// Writes the canonical tab-separated dump: one `synset` record per
    /// synset followed by one `sense` record per sense, both in key order.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{DUMP_HEADER}")?;
        for s in self.synsets.values() {
            write!(
                out,
                "synset\t{}\t{}\t{}\t{}\t{}",
                s.id.pos,
                s.id.offset,
                s.lex_filenum,
                s.lemmas.join(" "),
                escape_field(&s.gloss)
            )?;
            for example in &s.examples {
                write!(out, "\t{}", escape_field(example))?;
            }
            writeln!(out)?;
        }
        for s in self.senses.values() {
            writeln!(
                out,
                "sense\t{}\t{}\t{}\t{}\t{}",
                escape_field(&s.sense_key),
                escape_field(&s.lemma),
                s.synset.pos,
                s.synset.offset,
                s.sense_number
            )?;
        }
        Ok(())
    }

    /// Reads a dump produced by [`SenseInventory::write_dump`].
    pub fn read_dump<R: BufRead>(input: R) -> Result<Self, InventoryError> {
        let err = |line: usize, reason: String| InventoryError::Parse {
            file: "<dump>".to_string(),
            line,
            reason,
        };
        let mut synsets = Vec::new();
        let mut senses = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|source| InventoryError::Io {
                path: PathBuf::from("<dump>"),
                source,
            })?;
            if line_no == 1 {
                if line != DUMP_HEADER {
                    return Err(err(line_no, "missing dump header".to_string()));
                }
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let pos_at = |idx: usize| {
                fields[idx]
                    .parse::<PartOfSpeech>()
                    .map_err(|reason| err(line_no, reason))
            };
            let num_at = |idx: usize| {
                fields[idx]
                    .parse::<u64>()
                    .map_err(|_| err(line_no, format!("bad number {:?}", fields[idx])))
            };
            match fields[0] {
                "synset" if fields.len() >= 6 => {
                    let lex_filenum = u8::try_from(num_at(3)?)
                        .map_err(|_| err(line_no, "lex_filenum out of range".to_string()))?;
                    synsets.push(Synset {
                        id: SynsetId::new(pos_at(1)?, num_at(2)?),
                        lex_filenum,
                        lemmas: fields[4].split(' ').map(str::to_string).collect(),
                        gloss: unescape_field(fields[5]),
                        examples: fields[6..].iter().map(|f| unescape_field(f)).collect(),
                    });
                }
                "sense" if fields.len() == 6 => {
                    let sense_number = u32::try_from(num_at(5)?)
                        .map_err(|_| err(line_no, "sense number out of range".to_string()))?;
                    senses.push(Sense {
                        sense_key: unescape_field(fields[1]),
                        lemma: unescape_field(fields[2]),
                        synset: SynsetId::new(pos_at(3)?, num_at(4)?),
                        sense_number,
                    });
                }
                other => {
                    return Err(err(
                        line_no,
                        format!("unrecognised record {other:?} with {} fields", fields.len()),
                    ))
                }
            }
        }
        Self::from_parts(synsets, senses)
    }
}

const DUMP_HEADER: &str = "#sense-reduce-inventory\tv1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PosStats {
    pub synsets: usize,
    pub senses: usize,
    pub examples: usize,
}

pub fn escape_field(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

pub fn unescape_field(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const DOG_LINE: &str = "02084071 05 n 03 dog 0 domestic_dog 0 Canis_familiaris 0 001 @ 02083346 n 0000 | a member of the genus Canis; \"the dog barked all night\"  ";

    #[test]
    fn parses_data_line() {
        let synset = parse_data_line(DOG_LINE, "data.noun", 30, PartOfSpeech::Noun).unwrap();
        assert_eq!(synset.id, SynsetId::new(PartOfSpeech::Noun, 2084071));
        assert_eq!(synset.lemmas, vec!["dog", "domestic_dog", "Canis_familiaris"]);
        assert_eq!(synset.gloss, "a member of the genus Canis");
        assert_eq!(synset.examples, vec!["the dog barked all night"]);
    }

    #[test]
    fn data_line_errors_carry_location() {
        let bad = "02084071 05 n 03 dog 0 | truncated";
        match parse_data_line(bad, "data.noun", 12, PartOfSpeech::Noun) {
            Err(InventoryError::Parse { file, line, .. }) => {
                assert_eq!(file, "data.noun");
                assert_eq!(line, 12);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let wrong_file = DOG_LINE.replacen(" n ", " v ", 1);
        assert!(parse_data_line(&wrong_file, "data.noun", 1, PartOfSpeech::Noun).is_err());
    }

    #[test]
    fn satellites_live_in_the_adjective_file() {
        let line = "00003553 00 s 02 emergent 0 emerging 0 003 & 00003356 a 0000 + 02625016 v 0102 + 00050693 n 0101 | coming into existence; \"an emergent republic\"  ";
        let synset = parse_data_line(line, "data.adj", 1, PartOfSpeech::Adjective).unwrap();
        assert_eq!(synset.id.pos, PartOfSpeech::AdjectiveSatellite);
        assert_eq!(synset.examples, vec!["an emergent republic"]);
    }

    #[test]
    fn strips_adjective_markers() {
        assert_eq!(strip_adjective_marker("galore(ip)"), "galore");
        assert_eq!(strip_adjective_marker("elect(p)"), "elect");
        assert_eq!(strip_adjective_marker("plain"), "plain");
    }

    #[test]
    fn parses_sense_line() {
        let sense = parse_sense_line("campaign%1:04:02:: 00798245 2 5", 7).unwrap();
        assert_eq!(sense.lemma, "campaign");
        assert_eq!(sense.synset, SynsetId::new(PartOfSpeech::Noun, 798245));
        assert_eq!(sense.sense_number, 2);

        let sat = parse_sense_line("emergent%5:00:00:emerging:00 00003553 1 0", 1).unwrap();
        assert_eq!(sat.synset.pos, PartOfSpeech::AdjectiveSatellite);

        assert!(parse_sense_line("campaign 00798245 2 5", 1).is_err());
        assert!(parse_sense_line("campaign%9:04:02:: 00798245 2 5", 1).is_err());
        assert!(parse_sense_line("campaign%1:04:02:: 00798245 0 5", 1).is_err());
    }

    #[test]
    fn gloss_without_examples() {
        let (definition, examples) = split_gloss("an entity that has physical existence");
        assert_eq!(definition, "an entity that has physical existence");
        assert!(examples.is_empty());
    }

    #[test]
    fn gloss_examples_keep_inner_semicolons_and_drop_attributions() {
        let raw = "a whole of the same kind; \"lard was used; butter was preferred\"; \"to be or not to be\" - Shakespeare";
        let (definition, examples) = split_gloss(raw);
        assert_eq!(definition, "a whole of the same kind");
        assert_eq!(
            examples,
            vec!["lard was used; butter was preferred", "to be or not to be"]
        );
    }

    #[test]
    fn gloss_recovers_from_unterminated_quote() {
        let raw = "under the control of a force; \"he was in bondage to fear:; \"he sought release\"";
        let (definition, examples) = split_gloss(raw);
        assert_eq!(definition, "under the control of a force");
        assert_eq!(examples, vec!["he was in bondage to fear:", "he sought release"]);
    }

    #[test]
    fn lookup_folds_satellites_and_canonicalises() {
        let inv = SenseInventory::from_parts(
            vec![
                Synset {
                    id: SynsetId::new(PartOfSpeech::Adjective, 10),
                    lex_filenum: 0,
                    lemmas: vec!["hot".into()],
                    gloss: "high temperature".into(),
                    examples: vec![],
                },
                Synset {
                    id: SynsetId::new(PartOfSpeech::AdjectiveSatellite, 20),
                    lex_filenum: 0,
                    lemmas: vec!["hot".into(), "red_hot".into()],
                    gloss: "very popular".into(),
                    examples: vec!["a hot item".into()],
                },
            ],
            vec![
                Sense {
                    sense_key: "hot%5:00:00:popular:00".into(),
                    lemma: "hot".into(),
                    synset: SynsetId::new(PartOfSpeech::AdjectiveSatellite, 20),
                    sense_number: 2,
                },
                Sense {
                    sense_key: "hot%3:00:01::".into(),
                    lemma: "hot".into(),
                    synset: SynsetId::new(PartOfSpeech::Adjective, 10),
                    sense_number: 1,
                },
                Sense {
                    sense_key: "red_hot%5:00:00:popular:00".into(),
                    lemma: "red_hot".into(),
                    synset: SynsetId::new(PartOfSpeech::AdjectiveSatellite, 20),
                    sense_number: 1,
                },
            ],
        )
        .unwrap();
        let keys: Vec<_> = inv
            .senses_of("hot", PartOfSpeech::Adjective)
            .iter()
            .map(|s| s.sense_key.as_str())
            .collect();
        assert_eq!(keys, vec!["hot%3:00:01::", "hot%5:00:00:popular:00"]);
        assert_eq!(inv.senses_of("Red hot", PartOfSpeech::AdjectiveSatellite).len(), 1);
        assert!(inv.senses_of("hot", PartOfSpeech::Noun).is_empty());
    }

    #[test]
    fn dangling_and_duplicate_senses_are_rejected() {
        let synset = Synset {
            id: SynsetId::new(PartOfSpeech::Noun, 1),
            lex_filenum: 5,
            lemmas: vec!["dog".into()],
            gloss: String::new(),
            examples: vec![],
        };
        let sense = |key: &str, offset| Sense {
            sense_key: key.into(),
            lemma: "dog".into(),
            synset: SynsetId::new(PartOfSpeech::Noun, offset),
            sense_number: 1,
        };
        assert!(matches!(
            SenseInventory::from_parts(vec![synset.clone()], vec![sense("dog%1:05:00::", 2)]),
            Err(InventoryError::DanglingSense { .. })
        ));
        assert!(matches!(
            SenseInventory::from_parts(
                vec![synset],
                vec![sense("dog%1:05:00::", 1), sense("dog%1:05:01::", 1)]
            ),
            Err(InventoryError::Inconsistent(_))
        ));
    }

    #[test]
    fn escaping_round_trips() {
        for s in ["plain", "tab\there", "back\\slash\\t", "new\nline\r", "\\"] {
            assert_eq!(unescape_field(&escape_field(s)), s);
        }
    }

    proptest! {
        #[test]
        fn extracted_examples_are_quote_free_substrings(raw in "[a-z ;\"\\-]{0,60}") {
            let (_, examples) = split_gloss(&raw);
            for example in examples {
                prop_assert!(!example.contains('"'));
                prop_assert!(!example.is_empty());
                prop_assert!(raw.contains(example.as_str()));
            }
        }
    }
}
