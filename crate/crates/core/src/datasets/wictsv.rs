use std::path::Path;

use super::{
    file_label, numbered_lines, read_labels, read_to_string, warn_surface_mismatches, DatasetError,
};
use crate::inventory::PartOfSpeech;
use crate::task::{Context, SenseRef, TargetWord, TsvInstance};

/// Loads a WiC-TSV split (definition sub-task).
///
/// `examples_path` holds `target<TAB>token position<TAB>context` rows,
/// `definitions_path` one definition per row, and `labels_path`, when the
/// split is not blind, one `T`/`F` per row. Any further columns, such as the
/// hypernym lists of the other sub-tasks, are ignored. The release carries no
/// POS column; targets are recorded as nouns.
pub fn load_wictsv(
    examples_path: &Path,
    definitions_path: &Path,
    labels_path: Option<&Path>,
) -> Result<Vec<TsvInstance>, DatasetError> {
    let file = file_label(examples_path);
    let text = read_to_string(examples_path)?;
    let defs_text = read_to_string(definitions_path)?;
    let definitions: Vec<&str> = numbered_lines(&defs_text).map(|(_, l)| l.trim()).collect();

    let mut instances = Vec::new();
    for (line, row) in numbered_lines(&text) {
        let cols: Vec<&str> = row.split('\t').collect();
        if cols.len() < 3 {
            return Err(DatasetError::Format {
                file: file.clone(),
                line,
                reason: format!("expected 3 columns, found {}", cols.len()),
            });
        }
        let position: usize = cols[1].trim().parse().map_err(|_| DatasetError::Format {
            file: file.clone(),
            line,
            reason: format!("bad token position {:?}", cols[1]),
        })?;
        let context = Context::from_token_index(cols[2], position).map_err(|source| DatasetError::Span {
            file: file.clone(),
            line,
            source,
        })?;
        instances.push((line, cols[0].to_string(), context));
    }

    if definitions.len() != instances.len() {
        return Err(DatasetError::LengthMismatch {
            data: file,
            data_lines: instances.len(),
            labels: file_label(definitions_path),
            label_lines: definitions.len(),
        });
    }
    let labels = match labels_path {
        Some(path) => {
            let labels = read_labels(path)?;
            if labels.len() != instances.len() {
                return Err(DatasetError::LengthMismatch {
                    data: file,
                    data_lines: instances.len(),
                    labels: file_label(path),
                    label_lines: labels.len(),
                });
            }
            labels.into_iter().map(Some).collect()
        }
        None => vec![None; instances.len()],
    };

    let instances: Vec<TsvInstance> = instances
        .into_iter()
        .zip(definitions)
        .zip(labels)
        .map(|(((line, target, context), definition), gold)| TsvInstance {
            id: format!("{file}:{line}"),
            context,
            target: TargetWord::new(&target, PartOfSpeech::Noun),
            candidate: SenseRef::Definition(definition.to_string()),
            gold,
        })
        .collect();
    warn_surface_mismatches(
        &file,
        instances.iter().map(|i| (i.id.as_str(), &i.target, &i.context)),
    );
    Ok(instances)
}
