use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use sense_reduce::inventory::{InventoryError, PartOfSpeech, SenseInventory, SynsetId};
use sense_reduce::matcher::{build_example_index, Normalization};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// The full WordNet 3.0 `dict` directory, when `SENSE_REDUCE_WORDNET` points at one.
fn wordnet_dir() -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os("SENSE_REDUCE_WORDNET")?);
    if dir.join("index.sense").is_file() {
        Some(dir)
    } else {
        eprintln!("SENSE_REDUCE_WORDNET={} has no index.sense; skipping", dir.display());
        None
    }
}

const DATA_FILES: [&str; 4] = ["data.noun", "data.verb", "data.adj", "data.adv"];

fn raw_entry_lines(dir: &Path) -> Vec<(String, String)> {
    let mut lines = Vec::new();
    for name in DATA_FILES {
        for line in fs::read_to_string(dir.join(name)).unwrap().lines() {
            if !line.starts_with("  ") && !line.trim().is_empty() {
                lines.push((name.to_string(), line.to_string()));
            }
        }
    }
    lines
}

#[test]
fn dog_fixture() {
    let inv = SenseInventory::load(fixture("wn-dog")).unwrap();
    assert_eq!(inv.synset_count(), 1);
    assert_eq!(inv.sense_count(), 1);
    let dog = inv.senses_of("dog", PartOfSpeech::Noun);
    assert_eq!(dog.len(), 1);
    assert_eq!(inv.examples_of(dog[0]).unwrap(), &["the dog barked".to_string()]);
}

#[test]
fn empty_directory_is_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    match SenseInventory::load(dir.path()) {
        Err(InventoryError::MissingFile(path)) => assert!(path.ends_with("data.noun")),
        other => panic!("expected MissingFile, got {other:?}"),
    }
}

#[test]
fn missing_index_is_named() {
    let dir = tempfile::tempdir().unwrap();
    for name in DATA_FILES {
        fs::write(dir.path().join(name), "").unwrap();
    }
    match SenseInventory::load(dir.path()) {
        Err(InventoryError::MissingFile(path)) => assert!(path.ends_with("index.sense")),
        other => panic!("expected MissingFile, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    for name in DATA_FILES {
        fs::copy(fixture("wn-dog").join(name), dir.path().join(name)).unwrap();
    }
    fs::write(dir.path().join("index.sense"), "dog%1:05:00:: 02084071 1 42\ndog%1:05:01:: nope 2 0\n").unwrap();
    match SenseInventory::load(dir.path()) {
        Err(InventoryError::Parse { file, line, .. }) => {
            assert_eq!(file, "index.sense");
            assert_eq!(line, 2);
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn dangling_sense_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    for name in DATA_FILES {
        fs::copy(fixture("wn-dog").join(name), dir.path().join(name)).unwrap();
    }
    fs::write(dir.path().join("index.sense"), "dog%1:05:00:: 09999999 1 42\n").unwrap();
    match SenseInventory::load(dir.path()) {
        Err(InventoryError::DanglingSense { sense_key, synset }) => {
            assert_eq!(sense_key, "dog%1:05:00::");
            assert_eq!(synset, SynsetId::new(PartOfSpeech::Noun, 9999999));
        }
        other => panic!("expected DanglingSense, got {other:?}"),
    }
}

#[test]
fn unknown_lemma_and_unknown_sense() {
    let inv = SenseInventory::load(fixture("wn-mini")).unwrap();
    assert!(inv.senses_of("zzzz_unknown", PartOfSpeech::Noun).is_empty());
    let mut foreign = inv.senses_of("dog", PartOfSpeech::Noun)[0].clone();
    foreign.sense_key = "dog%1:99:99::".into();
    assert!(matches!(inv.examples_of(&foreign), Err(InventoryError::UnknownSense(_))));
}

fn check_campaign_and_breach(inv: &SenseInventory) {
    let campaign = inv.senses_of("campaign", PartOfSpeech::Noun);
    let keys: Vec<&str> = campaign.iter().map(|s| s.sense_key.as_str()).collect();
    // The electoral race and the series of actions toward an end.
    assert!(keys.contains(&"campaign%1:11:00::"));
    assert!(keys.contains(&"campaign%1:04:02::"));
    let synsets: BTreeSet<_> = campaign.iter().map(|s| s.synset).collect();
    assert_eq!(synsets.len(), campaign.len());
    assert!(campaign.windows(2).all(|w| w[0].sense_number < w[1].sense_number));

    let breach = inv.senses_of("breach", PartOfSpeech::Verb);
    assert!(!breach.is_empty());
    for sense in breach {
        let gloss = &inv.synset_of(sense).unwrap().gloss;
        assert!(
            !gloss.contains("water") && !gloss.contains("surface"),
            "unexpected breach sense {gloss:?}"
        );
    }
}

#[test]
fn mini_wordnet_sense_distinctions() {
    let inv = SenseInventory::load(fixture("wn-mini")).unwrap();
    check_campaign_and_breach(&inv);
    let race = inv.sense("campaign%1:11:00::").unwrap();
    assert_eq!(
        inv.examples_of(race).unwrap(),
        &[
            "I managed his campaign for governor".to_string(),
            "he is raising money for a Senate run".to_string()
        ]
    );
    // "an overland journey by hunters" has no quoted examples
    let safari = inv.sense("campaign%1:04:01::").unwrap();
    assert!(inv.examples_of(safari).unwrap().is_empty());
}

#[test]
fn dump_round_trip_and_determinism() {
    let inv = SenseInventory::load(fixture("wn-mini")).unwrap();
    assert_eq!(inv, SenseInventory::load(fixture("wn-mini")).unwrap());
    let mut dump = Vec::new();
    inv.write_dump(&mut dump).unwrap();
    let reread = SenseInventory::read_dump(dump.as_slice()).unwrap();
    assert_eq!(reread, inv);
    let mut again = Vec::new();
    reread.write_dump(&mut again).unwrap();
    assert_eq!(dump, again);
}

#[test]
fn dump_rejects_garbage() {
    assert!(SenseInventory::read_dump("not a dump\n".as_bytes()).is_err());
    let bad = "#sense-reduce-inventory\tv1\nsynset\tq\t1\t0\tdog\tgloss\n";
    assert!(matches!(
        SenseInventory::read_dump(bad.as_bytes()),
        Err(InventoryError::Parse { line: 2, .. })
    ));
}

// ---------------------------------------------------------------------------
// Full WordNet 3.0 (skipped unless SENSE_REDUCE_WORDNET is set)
// ---------------------------------------------------------------------------

#[test]
fn full_wordnet_counts_and_invariants() {
    let Some(dir) = wordnet_dir() else { return };
    let inv = SenseInventory::load(&dir).unwrap();

    let raw = raw_entry_lines(&dir);
    assert_eq!(inv.synset_count(), raw.len());

    let raw_senses: Vec<String> = fs::read_to_string(dir.join("index.sense"))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect();
    assert_eq!(inv.sense_count(), raw_senses.len());

    // Bijectivity: every sense resolves, keys are unique.
    let mut keys = BTreeSet::new();
    for sense in inv.senses() {
        assert!(inv.synset_of(sense).is_some());
        assert!(keys.insert(sense.sense_key.clone()));
    }

    // Examples are quote-free substrings of the raw gloss.
    let raw_by_id: BTreeMap<(String, u64), &str> = raw
        .iter()
        .map(|(file, line)| {
            let offset = line.split(' ').next().unwrap().parse().unwrap();
            ((file.clone(), offset), line.as_str())
        })
        .collect();
    for synset in inv.synsets() {
        let line = raw_by_id[&(synset.id.pos.data_file().to_string(), synset.id.offset)];
        let gloss = line.split_once(" | ").map(|(_, g)| g).unwrap_or("");
        for example in &synset.examples {
            assert!(!example.contains('"'), "{example:?}");
            assert!(gloss.contains(example.as_str()), "{example:?} not in {gloss:?}");
        }
    }

    check_campaign_and_breach(&inv);

    // A synset whose raw gloss has no quotes yields no examples.
    let (file, line) = raw.iter().find(|(_, l)| !l.contains('"')).unwrap();
    let offset: u64 = line[..8].parse().unwrap();
    let sense = inv
        .senses()
        .find(|s| s.synset.offset == offset && s.synset.pos.data_file() == file)
        .unwrap();
    assert!(inv.examples_of(sense).unwrap().is_empty());
}

#[test]
fn full_wordnet_loads_deterministically() {
    let Some(dir) = wordnet_dir() else { return };
    assert_eq!(SenseInventory::load(&dir).unwrap(), SenseInventory::load(&dir).unwrap());
}

#[test]
fn full_wordnet_example_index_entry_count() {
    let Some(dir) = wordnet_dir() else { return };
    let inv = SenseInventory::load(&dir).unwrap();
    let idx = build_example_index(&inv);

    // Single pass over the raw index.sense lines, pairing each sense key with
    // the examples of the synset it names.
    let mut expected = BTreeSet::new();
    for line in fs::read_to_string(dir.join("index.sense")).unwrap().lines() {
        let mut fields = line.split(' ');
        let key = fields.next().unwrap();
        let offset: u64 = fields.next().unwrap().parse().unwrap();
        let (lemma, rest) = key.split_once('%').unwrap();
        let pos = PartOfSpeech::from_sense_key_type(rest.chars().next().unwrap()).unwrap();
        let synset = inv.synset(SynsetId::new(pos, offset)).unwrap();
        for example in &synset.examples {
            expected.insert((Normalization::Standard.apply(example), lemma.to_string(), key.to_string()));
        }
    }
    assert_eq!(idx.entry_count(), expected.len());
    eprintln!("example index: {} keys, {} entries", idx.key_count(), idx.entry_count());
}
