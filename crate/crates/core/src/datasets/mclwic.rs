use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::{
    file_label, numbered_lines, parse_binary_label, parse_pos_tag, read_to_string,
    warn_surface_mismatches, DatasetError,
};
use crate::task::{Context, TargetWord, WicInstance};

/// Offsets appear as numbers in some releases and as strings in others.
#[derive(Deserialize)]
#[serde(untagged)]
enum Offset {
    Number(usize),
    Text(String),
}

impl Offset {
    fn value(&self) -> Option<usize> {
        match self {
            Offset::Number(n) => Some(*n),
            Offset::Text(s) => s.trim().parse().ok(),
        }
    }
}

#[derive(Deserialize)]
struct Record {
    id: String,
    lemma: String,
    pos: String,
    sentence1: String,
    sentence2: String,
    start1: Offset,
    end1: Offset,
    start2: Offset,
    end2: Offset,
}

#[derive(Deserialize)]
struct TagRecord {
    id: String,
    tag: String,
}

/// Loads an MCL-WiC data file, attaching gold tags when `tags_path` is given.
///
/// The data file is a JSON array of records. Character offsets are used as
/// given. The tags file is either the official JSON (`[{"id", "tag"}]`) or
/// tab-separated `id<TAB>T|F` lines; every data id needs exactly one tag and
/// every tag must name a data id. Error locations count records from 1.
pub fn load_mclwic(json_path: &Path, tags_path: Option<&Path>) -> Result<Vec<WicInstance>, DatasetError> {
    let file = file_label(json_path);
    let text = read_to_string(json_path)?;
    let records: Vec<Record> = serde_json::from_str(&text).map_err(|e| DatasetError::Format {
        file: file.clone(),
        line: e.line(),
        reason: e.to_string(),
    })?;

    let mut instances = Vec::with_capacity(records.len());
    for (i, r) in records.into_iter().enumerate() {
        let record_no = i + 1;
        let format_err = |reason: String| DatasetError::Format {
            file: file.clone(),
            line: record_no,
            reason,
        };
        let pos = parse_pos_tag(&r.pos).ok_or_else(|| format_err(format!("unknown POS tag {:?}", r.pos)))?;
        let offsets = [&r.start1, &r.end1, &r.start2, &r.end2]
            .iter()
            .map(|o| o.value())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| format_err("non-numeric offset".to_string()))?;
        let span_err = |source| DatasetError::Span {
            file: file.clone(),
            line: record_no,
            source,
        };
        let context1 = Context::new(r.sentence1, offsets[0], offsets[1]).map_err(span_err)?;
        let context2 = Context::new(r.sentence2, offsets[2], offsets[3]).map_err(span_err)?;
        instances.push(WicInstance {
            id: r.id,
            context1,
            context2,
            target: TargetWord::new(&r.lemma, pos),
            gold: None,
        });
    }

    if let Some(tags_path) = tags_path {
        let mut tags = read_tags(tags_path)?;
        for inst in &mut instances {
            let tag = tags
                .remove(&inst.id)
                .ok_or_else(|| DatasetError::MissingTag(inst.id.clone()))?;
            inst.gold = Some(tag);
        }
        if let Some(id) = tags.into_keys().next() {
            return Err(DatasetError::UnknownTagId(id));
        }
    }

    warn_surface_mismatches(
        &file,
        instances
            .iter()
            .flat_map(|i| [(i.id.as_str(), &i.target, &i.context1), (i.id.as_str(), &i.target, &i.context2)]),
    );
    Ok(instances)
}

fn read_tags(path: &Path) -> Result<BTreeMap<String, bool>, DatasetError> {
    let file = file_label(path);
    let text = read_to_string(path)?;
    let format_err = |line: usize, reason: String| DatasetError::Format {
        file: file.clone(),
        line,
        reason,
    };

    let pairs: Vec<(usize, String, String)> = if text.trim_start().starts_with('[') {
        let records: Vec<TagRecord> =
            serde_json::from_str(&text).map_err(|e| format_err(e.line(), e.to_string()))?;
        records
            .into_iter()
            .enumerate()
            .map(|(i, r)| (i + 1, r.id, r.tag))
            .collect()
    } else {
        numbered_lines(&text)
            .map(|(line, row)| match row.split('\t').collect::<Vec<_>>()[..] {
                [id, tag] => Ok((line, id.trim().to_string(), tag.to_string())),
                _ => Err(format_err(line, "expected id<TAB>tag".to_string())),
            })
            .collect::<Result<_, _>>()?
    };

    let mut tags = BTreeMap::new();
    for (line, id, tag) in pairs {
        let value = parse_binary_label(&tag)
            .ok_or_else(|| format_err(line, format!("expected T or F, found {tag:?}")))?;
        if tags.insert(id.clone(), value).is_some() {
            return Err(format_err(line, format!("duplicate tag for {id}")));
        }
    }
    Ok(tags)
}
