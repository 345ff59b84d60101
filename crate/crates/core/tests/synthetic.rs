use std::collections::BTreeMap;

use sense_reduce::inventory::SenseInventory;
use sense_reduce::synthetic::{generate_synthetic_world, SyntheticError};
use sense_reduce::task::SenseRef;

/// Sense key of the synset example equal to `text`, found by scanning the
/// inventory rather than consulting the world's gold table.
fn owner_by_scan(inv: &SenseInventory) -> BTreeMap<String, String> {
    let mut owner = BTreeMap::new();
    for sense in inv.senses() {
        for example in inv.examples_of(sense).unwrap() {
            assert!(
                owner.insert(example.clone(), sense.sense_key.clone()).is_none(),
                "example {example:?} belongs to two senses"
            );
        }
    }
    owner
}

#[test]
fn gold_labels_agree_with_an_independent_scan() {
    let world = generate_synthetic_world(7, 50, 5, 3).unwrap();
    let owner = owner_by_scan(&world.inventory);
    assert_eq!(owner, world.gold_sense_of_context);

    let n_senses = world.inventory.sense_count();
    assert_eq!(owner.len(), n_senses * 3);
    assert_eq!(world.wsd.len(), n_senses * 3);

    for inst in &world.wsd {
        assert_eq!(inst.gold.as_deref(), Some(owner[inst.context.text()].as_str()));
        assert_eq!(inst.context.surface(), inst.target.lemma);
    }
    for inst in &world.tsv {
        let SenseRef::Key(key) = &inst.candidate else { panic!("definition candidate") };
        assert_eq!(inst.gold, Some(&owner[inst.context.text()] == key));
    }
    let mut positives = 0;
    for inst in &world.wic {
        let same = owner[inst.context1.text()] == owner[inst.context2.text()];
        assert_eq!(inst.gold, Some(same));
        positives += usize::from(same);
    }

    // Pair counts per lemma: C(k, 2) WiC pairs and k * senses TSV rows for k contexts.
    let mut per_lemma: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for sense in world.inventory.senses() {
        let entry = per_lemma.entry(sense.lemma.as_str()).or_default();
        entry.0 += 1;
        entry.1 += 3;
    }
    let wic_pairs: usize = per_lemma.values().map(|&(_, k)| k * (k - 1) / 2).sum();
    let tsv_rows: usize = per_lemma.values().map(|&(s, k)| s * k).sum();
    let same_pairs: usize = per_lemma.values().map(|&(s, _)| s * 3).sum();
    assert_eq!(world.wic.len(), wic_pairs);
    assert_eq!(world.tsv.len(), tsv_rows);
    assert_eq!(positives, same_pairs);
    assert_eq!(per_lemma.len(), 50);
    assert!(per_lemma.values().all(|&(s, _)| (1..=5).contains(&s)));
}

#[test]
fn first_lemma_has_max_senses() {
    for seed in 0..20 {
        let world = generate_synthetic_world(seed, 3, 4, 1).unwrap();
        let lemma = &world.wsd[0].target;
        assert_eq!(world.inventory.senses_of(&lemma.lemma, lemma.pos).len(), 4);
    }
}

#[test]
fn instance_ids_are_unique() {
    let world = generate_synthetic_world(11, 20, 4, 3).unwrap();
    let mut ids: Vec<&str> = world.wsd.iter().map(|i| i.id.as_str()).collect();
    ids.extend(world.tsv.iter().map(|i| i.id.as_str()));
    ids.extend(world.wic.iter().map(|i| i.id.as_str()));
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n);
}

#[test]
fn invalid_parameters_are_named() {
    assert_eq!(
        generate_synthetic_world(0, 2, 0, 1),
        Err(SyntheticError::InvalidParameter { name: "max_senses", value: 0 })
    );
}
