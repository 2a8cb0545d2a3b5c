use excoll_core::cohomology::{cz_classification, CzTable};
use excoll_core::collection::{
    brute_force, enumerate_maximal, is_exceptional, is_exceptional_collection, Enumerator,
};
use excoll_core::linear::{parse_linear, Assignment, LinExpr};
use excoll_core::pairs::{cell, pair_table, parse_cell, Constraint, Family};
use excoll_core::template::{
    difference_signature, match_templates, parse_member, parse_member_list, signature_groups,
    AffineDivisor, CollectionTemplate,
};
use excoll_core::variety::lookup;
use excoll_core::{registry, Collection, Divisor, VarietyDescriptor};
use proptest::prelude::*;

fn var(id: &str) -> VarietyDescriptor {
    lookup(id).unwrap()
}

fn c(p: &[(i64, i64)]) -> Collection {
    Collection::from_pairs(p)
}

#[test]
fn exceptionality_examples() {
    let v = var("PP2_Om1_O1");
    assert!(is_exceptional_collection(
        &v,
        &c(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (3, 1)])
    ));
    for w in registry() {
        assert!(is_exceptional_collection(&w, &c(&[(0, 0)])));
    }
    assert!(!is_exceptional_collection(
        &var("P2xP1"),
        &c(&[(0, 0), (0, 0)])
    ));
}

#[test]
fn ordering_direction_is_earlier_minus_later() {
    // (O, O(H)) on P2xP1 needs O(-H) acyclic, which it is; O(H) is not.
    let v = var("P2xP1");
    assert!(is_exceptional_collection(&v, &c(&[(0, 0), (1, 0)])));
    assert!(!is_exceptional_collection(&v, &c(&[(1, 0), (0, 0)])));
}

#[test]
fn enumeration_counts_at_box_six() {
    let counts: Vec<usize> = registry()
        .iter()
        .map(|v| enumerate_maximal(v, 6).len())
        .collect();
    assert_eq!(
        counts,
        vec![33, 393, 40, 48, 80, 4908, 3456, 363, 468, 471, 1926]
    );
}

#[test]
fn enumeration_is_sound_sorted_and_normalized() {
    for v in registry() {
        let found = enumerate_maximal(&v, 4);
        assert!(found.windows(2).all(|w| w[0] < w[1]), "{}", v.id);
        for x in &found {
            assert!(x.is_normalized() && x.in_box(4) && x.len() == v.max_length);
            assert!(is_exceptional_collection(&v, x), "{} {}", v.id, x);
        }
    }
}

#[test]
fn pruned_search_equals_brute_force_on_small_boxes() {
    for v in registry() {
        let cz = CzTable::new(&v, 6);
        for (radius, len) in [(1, v.max_length), (2, 4), (3, 3)] {
            let pruned = Enumerator::new(&cz, radius, len).run();
            let brute = brute_force(&cz, radius, len);
            assert_eq!(pruned, brute, "{} r={} len={}", v.id, radius, len);
        }
    }
}

#[test]
fn no_collection_exceeds_maximal_length() {
    for v in registry() {
        let cz = CzTable::new(&v, 8);
        assert!(
            Enumerator::new(&cz, 4, v.max_length + 1).run().is_empty(),
            "{}",
            v.id
        );
    }
}

#[test]
fn tiny_box_has_no_full_length_collection() {
    let v = var("P2xP2");
    assert!(enumerate_maximal(&v, 0).is_empty());
}

#[test]
fn member_parsing() {
    let m = parse_member("(a+1)H+2D").unwrap();
    let asg: Assignment = [("a".to_string(), 3)].into_iter().collect();
    assert_eq!(m.eval(&asg), Some(Divisor::new(4, 2)));
    assert_eq!(
        parse_member("H-D").unwrap(),
        AffineDivisor::constant(Divisor::new(1, -1))
    );
    assert_eq!(
        parse_member("0").unwrap(),
        AffineDivisor::constant(Divisor::ZERO)
    );
    assert_eq!(
        parse_member("H+(a+2)D").unwrap().d,
        parse_linear("a+2").unwrap()
    );
    assert_eq!(
        parse_member("\u{2212}H").unwrap(),
        AffineDivisor::constant(Divisor::new(-1, 0))
    );
    assert!(parse_member("2H+(b+2D)").is_err());
    assert!(parse_member_list("H,,2H").is_err());
}

#[test]
fn template_affine_round_trip() {
    let t = CollectionTemplate::parse("cl1/(1)", "H, 2H, aH+D, (a+1)H+D, (a+2)H+D").unwrap();
    assert_eq!(t.params, vec!["a".to_string()]);
    assert_eq!(t.members.len(), 6);
    assert_eq!(t.members[0], AffineDivisor::constant(Divisor::ZERO));
    for m in &t.members {
        let rows = m.to_affine(&t.params);
        assert_eq!(&AffineDivisor::from_affine(&rows, &t.params).unwrap(), m);
    }
    let asg: Assignment = [("a".to_string(), 1)].into_iter().collect();
    assert_eq!(
        t.instantiate(&asg).unwrap(),
        c(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (3, 1)])
    );
}

#[test]
fn template_instances_stay_in_box() {
    let t = CollectionTemplate::parse("t", "H, 2H, aH+D, (a+1)H+D, (a+2)H+D").unwrap();
    let inst = t.instances(6);
    let params: Vec<i64> = inst.iter().map(|(a, _)| a["a"]).collect();
    assert_eq!(params, (-6..=4).collect::<Vec<_>>());
    assert!(inst.iter().all(|(_, x)| x.in_box(6)));
}

#[test]
fn matching_reports_both_directions() {
    let v = var("PP2_Om1_O1");
    let found = enumerate_maximal(&v, 6);
    let t = CollectionTemplate::parse("cl1/(1)", "H, 2H, aH+D, (a+1)H+D, (a+2)H+D").unwrap();
    let report = match_templates(&found, std::slice::from_ref(&t), 6);
    assert!(report.missing.is_empty());
    assert_eq!(
        report.per_type["cl1/(1)"] + report.unmatched.len(),
        found.len()
    );
    assert!(!report.unmatched.is_empty());

    let fake = CollectionTemplate::parse("fake", "D, 2D, 3D, 4D, 5D").unwrap();
    let report = match_templates(&found, &[fake], 6);
    assert!(!report.missing.is_empty());

    let empty = match_templates(&[], &[], 6);
    assert!(empty.is_clean());
}

#[test]
fn signatures_are_shift_invariant() {
    let x = c(&[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (3, 1)]);
    let y = c(&[(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (4, 1)]);
    let shifted = x.shifted(Divisor::new(5, -2));
    assert_eq!(difference_signature(&x), difference_signature(&shifted));
    let groups = signature_groups(&[x.clone(), y]);
    assert_eq!(groups.values().sum::<usize>(), 2);
}

fn fam(label: &str, member: &str) -> Family {
    Family {
        label: label.into(),
        member: parse_member(member).unwrap(),
    }
}

#[test]
fn pair_table_examples() {
    let v = var("PP2_Om1_O1");
    let cz = cz_classification(&v, 8);
    let b0 = fam("B_0", "aH+D");
    assert_eq!(cell(&b0, &b0, &cz), parse_cell("a'=a+1, a+2").unwrap());
    assert_eq!(
        cell(&fam("B_4", "H"), &fam("B_2", "2H"), &cz),
        Constraint::Always
    );
    // a family against itself is never admissible at equal parameters
    let asg: Assignment = [("a".to_string(), 2), ("a'".to_string(), 2)]
        .into_iter()
        .collect();
    assert_eq!(cell(&b0, &b0, &cz).eval(&asg), Some(false));
    let fams = [b0, fam("B_1", "2H+2D")];
    let table = pair_table(&fams, &cz);
    assert_eq!(table[1][1], Constraint::Never);
}

#[test]
fn cell_parsing_and_display() {
    let k = parse_cell("a'=a+2, a+1").unwrap();
    assert_eq!(k.to_string(), "a'=a+1, a+2");
    assert_eq!(parse_cell("\\checkmark").unwrap(), Constraint::Always);
    assert_eq!(parse_cell("").unwrap(), Constraint::Never);
    let k = parse_cell("a=-1,0 or b'=2").unwrap();
    assert_eq!(k.to_string(), "a=-1, 0 or b'=2");
    // equal constraint sets written differently compare equal
    assert_eq!(parse_cell("b'=2 or a=0,-1").unwrap(), k);
}

#[test]
fn linear_expressions() {
    let e = parse_linear("a'-a-1").unwrap();
    assert_eq!(e.to_string(), "-a+a'-1");
    assert_eq!(e.coeff("a'"), 1);
    let s = e.clone() + LinExpr::constant(1);
    assert_eq!(s, parse_linear("a'-a").unwrap());
}

fn arb_small_variety() -> impl Strategy<Value = VarietyDescriptor> {
    let reg: Vec<VarietyDescriptor> = registry()
        .into_iter()
        .filter(|v| v.max_length <= 8)
        .collect();
    (0..reg.len()).prop_map(move |k| reg[k].clone())
}

proptest! {
    #[test]
    fn tensoring_preserves_exceptionality(
        v in arb_small_variety(),
        seed in 0usize..1000,
        ta in -5i64..5,
        tb in -5i64..5,
    ) {
        let found = enumerate_maximal(&v, 3);
        prop_assume!(!found.is_empty());
        let x = &found[seed % found.len()];
        let t = Divisor::new(ta, tb);
        prop_assert!(is_exceptional_collection(&v, &x.shifted(t)));
        prop_assert_eq!(x.shifted(t).normalized(), x.clone());
    }

    #[test]
    fn normalization_closure(v in arb_small_variety(), pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 1..6)) {
        let x = c(&pts);
        let cz = CzTable::new(&v, 8);
        prop_assert_eq!(is_exceptional(&cz, &x.members), is_exceptional(&cz, &x.normalized().members));
    }
}
