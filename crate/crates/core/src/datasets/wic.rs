use std::path::Path;

use super::{
    file_label, numbered_lines, parse_pos_tag, read_labels, read_to_string,
    warn_surface_mismatches, DatasetError,
};
use crate::task::{Context, TargetWord, WicInstance};

/// Loads a WiC v1.0 split.
///
/// Each data line is `target<TAB>pos<TAB>i1-i2<TAB>sentence1<TAB>sentence2`,
/// where `i1`/`i2` are whitespace-token indices; they become character spans.
/// Instance ids are `<data file name>:<line>`. When `gold_path` is given it
/// must hold one `T`/`F` per data line.
pub fn load_wic(data_path: &Path, gold_path: Option<&Path>) -> Result<Vec<WicInstance>, DatasetError> {
    let file = file_label(data_path);
    let text = read_to_string(data_path)?;
    let format_err = |line: usize, reason: String| DatasetError::Format {
        file: file.clone(),
        line,
        reason,
    };
    let span_err = |line: usize, source| DatasetError::Span {
        file: file.clone(),
        line,
        source,
    };

    let mut instances = Vec::new();
    for (line, row) in numbered_lines(&text) {
        let mut cols: Vec<&str> = row.split('\t').collect();
        // Some redistributions end every row with a tab.
        if cols.len() == 6 && cols[5].is_empty() {
            cols.pop();
        }
        if cols.len() != 5 {
            return Err(format_err(line, format!("expected 5 columns, found {}", cols.len())));
        }
        let pos = parse_pos_tag(cols[1])
            .ok_or_else(|| format_err(line, format!("unknown POS tag {:?}", cols[1])))?;
        let (i1, i2) = cols[2]
            .split_once('-')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| format_err(line, format!("bad token indices {:?}", cols[2])))?;
        let context1 = Context::from_token_index(cols[3], i1).map_err(|e| span_err(line, e))?;
        let context2 = Context::from_token_index(cols[4], i2).map_err(|e| span_err(line, e))?;
        instances.push(WicInstance {
            id: format!("{file}:{line}"),
            context1,
            context2,
            target: TargetWord::new(cols[0], pos),
            gold: None,
        });
    }

    if let Some(gold_path) = gold_path {
        let labels = read_labels(gold_path)?;
        if labels.len() != instances.len() {
            return Err(DatasetError::LengthMismatch {
                data: file,
                data_lines: instances.len(),
                labels: file_label(gold_path),
                label_lines: labels.len(),
            });
        }
        for (inst, gold) in instances.iter_mut().zip(labels) {
            inst.gold = Some(gold);
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
