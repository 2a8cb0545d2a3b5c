use excoll::core::cohomology::CzTable;
use excoll::core::collection::enumerate_maximal;
use excoll::core::template::{match_templates, CollectionTemplate};
use excoll::core::{registry, VarietyDescriptor};
use excoll::data::{self, RegistryFile, Variant};

fn var(id: &str) -> VarietyDescriptor {
    excoll::core::variety::lookup(id).unwrap()
}

#[test]
fn registry_round_trips_through_json() {
    let file = RegistryFile {
        schema: 1,
        varieties: registry(),
    };
    let text = serde_json::to_string_pretty(&file).unwrap();
    let back: RegistryFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, file);
}

#[test]
fn stored_affine_members_match_the_text() {
    let file = data::templates().unwrap();
    for vt in &file.varieties {
        for t in &vt.types {
            let parsed = CollectionTemplate::parse(&t.type_id, t.effective()).unwrap();
            assert_eq!(t.from_affine().unwrap(), parsed, "{}", t.type_id);
        }
    }
}

#[test]
fn template_counts() {
    let file = data::templates().unwrap();
    let published: Vec<usize> = file.varieties.iter().map(|v| v.published_count()).collect();
    assert_eq!(published, vec![3, 17, 4, 4, 12, 66, 2, 3, 3, 3, 348]);
    assert_eq!(published.iter().sum::<usize>(), 465);
    let supplementary: usize = file.varieties.iter().map(|v| v.supplementary_count()).sum();
    assert_eq!(supplementary, 76);
}

#[test]
fn type_ids_follow_the_classification_label() {
    let file = data::templates().unwrap();
    for (v, vt) in registry().iter().zip(&file.varieties) {
        assert!(v.matches(&vt.variety));
        assert_eq!(vt.classification, v.classification);
        for t in &vt.types {
            let prefix = format!("{}/(", v.classification);
            assert!(
                t.type_id.starts_with(&prefix) && t.type_id.ends_with(')'),
                "{}",
                t.type_id
            );
            assert_eq!(
                t.is_supplementary(),
                t.type_id[prefix.len()..].starts_with('S'),
                "{}",
                t.type_id
            );
        }
    }
}

#[test]
fn p2xp1_enumeration_is_covered_by_its_types() {
    let v = var("P2xP1");
    let found = enumerate_maximal(&v, 5);
    let set = data::templates()
        .unwrap()
        .for_variety(&v)
        .unwrap()
        .build(Variant::Corrected);
    assert!(set.unparsed.is_empty());
    let report = match_templates(&found, &set.templates, 5);
    assert!(report.is_clean(), "{:?}", report.unmatched);
    let instances: usize = set.templates.iter().map(|t| t.instances(5).len()).sum();
    // a few collections are instances of two types at once
    assert!(report.per_type.values().sum::<usize>() >= found.len());
    assert!(instances >= found.len());
}

#[test]
fn pp1_o3_o1_matches_only_its_two_types() {
    let v = var("PP1_O3_O1");
    let found = enumerate_maximal(&v, 5);
    let set = data::templates()
        .unwrap()
        .for_variety(&v)
        .unwrap()
        .build(Variant::Corrected);
    let report = match_templates(&found, &set.templates, 5);
    assert!(report.is_clean());
    let mut hit: Vec<&str> = report
        .per_type
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(k, _)| k.as_str())
        .collect();
    hit.sort();
    assert_eq!(hit, vec!["cl7/(1)", "cl7/(2)"]);
}

#[test]
fn published_cz_lists_load() {
    let p = data::published().unwrap();
    assert_eq!(p.cz_lists.len(), 11);
    for rec in &p.cz_lists {
        let c = rec.classification().unwrap();
        assert!(
            !c.lines.is_empty() || !c.sporadic.is_empty(),
            "{}",
            rec.variety
        );
    }
    // the lines always agree with the oracle, only sporadic points differ
    for (rec, v) in p.cz_lists.iter().zip(registry()) {
        let ours = excoll::core::cohomology::cz_classification(&v, 8);
        assert_eq!(rec.classification().unwrap().lines, ours.lines, "{}", v.id);
    }
}

#[test]
fn pair_table_families_parse() {
    let file = data::pair_tables().unwrap();
    for t in &file.tables {
        let fams = t.families().unwrap();
        assert_eq!(t.cells.len(), fams.len());
        assert!(t.cells.iter().all(|row| row.len() == fams.len()));
        for cell in t.cells.iter().flatten() {
            assert_eq!(cell.corrected.is_some(), cell.reason.is_some());
        }
    }
}

#[test]
fn cz_table_is_shared_by_the_parallel_driver() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 12);
    assert_eq!(
        excoll::par::enumerate(&cz, 6, v.max_length),
        enumerate_maximal(&v, 6)
    );
}
