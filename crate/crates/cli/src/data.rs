//! Loading the datasets named on the command line into named splits.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use sense_reduce::datasets::{load_mclwic, load_wic, load_wictsv};
use sense_reduce::synthetic::{generate_synthetic_world, SyntheticWorld};
use sense_reduce::task::{TsvInstance, WicInstance, WsdInstance};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Wic,
    Mclwic,
    Wictsv,
    Synthetic,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

/// `seed:lemmas:senses:examples` for a generated world.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorldSpec {
    pub seed: u64,
    pub lemmas: usize,
    pub senses: usize,
    pub examples: usize,
}

impl Default for WorldSpec {
    fn default() -> Self {
        WorldSpec {
            seed: 0,
            lemmas: 10,
            senses: 4,
            examples: 3,
        }
    }
}

impl FromStr for WorldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [seed, lemmas, senses, examples] = parts.as_slice() else {
            return Err(format!("expected seed:lemmas:senses:examples, got {s:?}"));
        };
        let num = |name: &str, v: &str| -> Result<usize, String> {
            v.trim().parse().map_err(|_| format!("bad {name} {v:?} in world spec"))
        };
        Ok(WorldSpec {
            seed: seed.trim().parse().map_err(|_| format!("bad seed {seed:?} in world spec"))?,
            lemmas: num("lemma count", lemmas)?,
            senses: num("sense count", senses)?,
            examples: num("example count", examples)?,
        })
    }
}

impl fmt::Display for WorldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.seed, self.lemmas, self.senses, self.examples)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instances {
    Wsd(Vec<WsdInstance>),
    Tsv(Vec<TsvInstance>),
    Wic(Vec<WicInstance>),
}

impl Instances {
    pub fn len(&self) -> usize {
        match self {
            Instances::Wsd(v) => v.len(),
            Instances::Tsv(v) => v.len(),
            Instances::Wic(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn task_name(&self) -> &'static str {
        match self {
            Instances::Wsd(_) => "wsd",
            Instances::Tsv(_) => "tsv",
            Instances::Wic(_) => "wic",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub name: String,
    pub instances: Instances,
}

/// Everything named by the dataset flags.
#[derive(Clone, Debug, Default)]
pub struct DataRequest {
    pub format: Option<Format>,
    pub data: Vec<PathBuf>,
    pub gold: Vec<PathBuf>,
    pub definitions: Vec<PathBuf>,
    pub world: Option<WorldSpec>,
}

pub struct Loaded {
    pub splits: Vec<Split>,
    pub world: Option<SyntheticWorld>,
}

/// Split name from a file name: `train.data.txt` -> `train`,
/// `dev_examples.txt` -> `dev`, `training.en-en.data` -> `training`.
pub fn split_name(path: &Path) -> String {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = file.split('.').next().unwrap_or_default();
    let stem = stem.strip_suffix("_examples").unwrap_or(stem);
    if stem.is_empty() {
        file
    } else {
        stem.to_string()
    }
}

fn unique_names(splits: &mut [Split]) {
    let names: Vec<String> = splits.iter().map(|s| s.name.clone()).collect();
    for (i, split) in splits.iter_mut().enumerate() {
        if names.iter().filter(|n| **n == split.name).count() > 1 {
            split.name = format!("{}#{}", split.name, i + 1);
        }
    }
}

impl DataRequest {
    pub fn load(&self) -> Result<Loaded, CliError> {
        let format = self
            .format
            .ok_or_else(|| CliError::Input("--format is required".into()))?;
        if format == Format::Synthetic {
            if !self.data.is_empty() {
                return Err(CliError::Input("--format synthetic takes --world, not --data".into()));
            }
            let spec = self.world.unwrap_or_default();
            let world = generate_synthetic_world(spec.seed, spec.lemmas, spec.senses, spec.examples)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let splits = vec![
                Split {
                    name: "wic".into(),
                    instances: Instances::Wic(world.wic.clone()),
                },
                Split {
                    name: "tsv".into(),
                    instances: Instances::Tsv(world.tsv.clone()),
                },
                Split {
                    name: "wsd".into(),
                    instances: Instances::Wsd(world.wsd.clone()),
                },
            ];
            return Ok(Loaded {
                splits,
                world: Some(world),
            });
        }

        if self.world.is_some() {
            return Err(CliError::Input("--world only applies to --format synthetic".into()));
        }
        if self.data.is_empty() {
            return Err(CliError::Input(format!("--format {format} needs at least one --data")));
        }
        if !self.gold.is_empty() && self.gold.len() != self.data.len() {
            return Err(CliError::Input(format!(
                "{} --gold files for {} --data files; give one per split or none",
                self.gold.len(),
                self.data.len()
            )));
        }
        if format == Format::Wictsv && self.definitions.len() != self.data.len() {
            return Err(CliError::Input(format!(
                "--format wictsv needs one --definitions per --data ({} for {})",
                self.definitions.len(),
                self.data.len()
            )));
        }
        if format != Format::Wictsv && !self.definitions.is_empty() {
            return Err(CliError::Input("--definitions only applies to --format wictsv".into()));
        }

        let mut splits = Vec::new();
        for (i, data) in self.data.iter().enumerate() {
            let gold = self.gold.get(i).map(PathBuf::as_path);
            let instances = match format {
                Format::Wic => Instances::Wic(load_wic(data, gold)?),
                Format::Mclwic => Instances::Wic(load_mclwic(data, gold)?),
                Format::Wictsv => Instances::Tsv(load_wictsv(data, &self.definitions[i], gold)?),
                Format::Synthetic => unreachable!("handled above"),
            };
            splits.push(Split {
                name: split_name(data),
                instances,
            });
        }
        unique_names(&mut splits);
        Ok(Loaded { splits, world: None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_names() {
        assert_eq!(split_name(Path::new("WiC/train/train.data.txt")), "train");
        assert_eq!(split_name(Path::new("Dev/dev_examples.txt")), "dev");
        assert_eq!(split_name(Path::new("x/training.en-en.data")), "training");
        assert_eq!(split_name(Path::new(".hidden")), ".hidden");
    }

    #[test]
    fn duplicate_names_are_numbered() {
        let mut splits = vec![
            Split {
                name: "train".into(),
                instances: Instances::Wic(vec![]),
            },
            Split {
                name: "train".into(),
                instances: Instances::Wic(vec![]),
            },
            Split {
                name: "dev".into(),
                instances: Instances::Wic(vec![]),
            },
        ];
        unique_names(&mut splits);
        let names: Vec<&str> = splits.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["train#1", "train#2", "dev"]);
    }

    #[test]
    fn world_specs() {
        let spec: WorldSpec = "3:5:2:1".parse().unwrap();
        assert_eq!(spec, WorldSpec { seed: 3, lemmas: 5, senses: 2, examples: 1 });
        assert_eq!(spec.to_string(), "3:5:2:1");
        assert!("3:5:2".parse::<WorldSpec>().is_err());
        assert!("3:x:2:1".parse::<WorldSpec>().unwrap_err().contains("lemma count"));
    }

    #[test]
    fn synthetic_splits() {
        let request = DataRequest {
            format: Some(Format::Synthetic),
            world: Some("1:3:2:2".parse().unwrap()),
            ..DataRequest::default()
        };
        let loaded = request.load().unwrap();
        let names: Vec<&str> = loaded.splits.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["wic", "tsv", "wsd"]);
        assert!(loaded.world.is_some());
    }

    #[test]
    fn mismatched_gold_is_an_input_error() {
        let request = DataRequest {
            format: Some(Format::Wic),
            data: vec!["a".into(), "b".into()],
            gold: vec!["g".into()],
            ..DataRequest::default()
        };
        assert!(matches!(request.load(), Err(CliError::Input(_))));
    }
}
