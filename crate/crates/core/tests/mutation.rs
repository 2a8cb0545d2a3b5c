use excoll_core::cohomology::{CzOracle, CzTable};
use excoll_core::collection::{enumerate_maximal, is_exceptional_collection};
use excoll_core::linear::Assignment;
use excoll_core::mutation::{
    apply_move, check_certificate, explore, is_orlov_seed, neighbors, orlov_seeds, verify_fullness,
    FullnessCertificate, MutationMove, DEFAULT_BUDGET,
};
use excoll_core::template::CollectionTemplate;
use excoll_core::variety::lookup;
use excoll_core::{registry, Collection, Divisor, Error, VarietyDescriptor};
use proptest::prelude::*;

use MutationMove::*;

fn var(id: &str) -> VarietyDescriptor {
    lookup(id).unwrap()
}

fn c(p: &[(i64, i64)]) -> Collection {
    Collection::from_pairs(p)
}

fn instance(listed: &str, params: &[(&str, i64)]) -> Collection {
    let asg: Assignment = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    CollectionTemplate::parse("t", listed)
        .unwrap()
        .instantiate(&asg)
        .unwrap()
}

const CL1_1: &str = "H,2H,aH+D,(a+1)H+D,(a+2)H+D";
const CL2_7: &str = "H+bD, 2H+bD, H+(b+1)D, 2H+(b+1)D,3H+D";
const CL2_12: &str = "H+D, 2H+D, H+2D, 3H+D, 2H+2D";
const CL6_13: &str = "bH+D, bH+2D, (b+1)H+D, (b+1)H+2D, dH+3D, (d+1)H+3D, H+4D";
const CL6_21: &str = "bH+D, (b+1)H+D, cH+2D, (c+1)H+2D, dH+3D, (d+1)H+3D, H+4D";
const CL8: [&str; 3] = [
    "H,2H,aH+D,(a+1)H+D,(a+2)H+D,bH+2D,(b+1)H+2D,(b+2)H+2D",
    "H,aH+D,(a+1)H+D,(a+2)H+D,bH+2D,(b+1)H+2D,(b+2)H+2D,4H+3D",
    "aH+D,(a+1)H+D,(a+2)H+D,bH+2D,(b+1)H+2D,(b+2)H+2D,3H+3D,4H+3D",
];

#[test]
fn helix_left_appends_minus_k() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 12);
    let x = instance(CL1_1, &[("a", 1)]);
    let y = apply_move(&cz, &x, HelixLeft).unwrap();
    assert_eq!(y.members.last(), Some(&Divisor::new(3, 2)));
    assert_eq!(&y.members[..5], &x.members[1..]);
    assert_eq!(apply_move(&cz, &y, HelixRight).unwrap(), x);
}

#[test]
fn tensor_round_trip() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 12);
    let x = instance(CL1_1, &[("a", 0)]);
    let y = apply_move(
        &cz,
        &x,
        Tensor {
            divisor: Divisor::new(-1, 0),
        },
    )
    .unwrap();
    assert_eq!(
        apply_move(
            &cz,
            &y,
            Tensor {
                divisor: Divisor::new(1, 0)
            }
        )
        .unwrap(),
        x
    );
}

#[test]
fn swap_turns_type_7_into_type_12() {
    let v = var("P2xP1");
    let cz = CzTable::new(&v, 12);
    let x = instance(CL2_7, &[("b", 1)]);
    assert_eq!(x.members[4..], [Divisor::new(2, 2), Divisor::new(3, 1)]);
    let y = apply_move(&cz, &x, SwapAt { index: 4 }).unwrap();
    assert_eq!(y, instance(CL2_12, &[]));
    let mut sorted_x = x.members.clone();
    let mut sorted_y = y.members.clone();
    sorted_x.sort();
    sorted_y.sort();
    assert_eq!(sorted_x, sorted_y);
}

#[test]
fn swap_is_refused_for_non_orthogonal_pairs() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 12);
    let x = instance(CL1_1, &[("a", 1)]);
    // (O, H): H itself has sections
    assert!(matches!(
        apply_move(&cz, &x, SwapAt { index: 0 }),
        Err(Error::MoveNotAdmissible(_))
    ));
    assert!(matches!(
        apply_move(&cz, &x, SwapAt { index: 5 }),
        Err(Error::MoveNotAdmissible(_))
    ));
    let bad = c(&[(1, 0), (0, 0)]);
    assert!(matches!(
        apply_move(&cz, &bad, HelixLeft),
        Err(Error::NotExceptional)
    ));
}

#[test]
fn type_21_with_c_equal_b_mutates_to_type_13() {
    let v = var("P1xP3");
    let cz = CzTable::new(&v, 12);
    let x = instance(CL6_21, &[("b", 1), ("c", 1), ("d", 2)]);
    assert!(is_exceptional_collection(&v, &x));
    let y = apply_move(&cz, &x, SwapAt { index: 2 }).unwrap();
    assert_eq!(y, instance(CL6_13, &[("b", 1), ("d", 2)]));
}

#[test]
fn cl8_chain_by_helix_and_normalization() {
    let v = var("PP2_O_O_O2");
    assert_eq!(v.canonical, Divisor::new(-5, -3));
    let cz = CzTable::new(&v, 16);
    let (a, b) = (1, 2);
    let start = instance(CL8[0], &[("a", a), ("b", b)]);
    let normalize = |x: Collection| {
        let t = -x.members[0];
        apply_move(&cz, &x, Tensor { divisor: t }).unwrap()
    };
    let two = normalize(apply_move(&cz, &start, HelixLeft).unwrap());
    assert_eq!(two, instance(CL8[1], &[("a", a - 1), ("b", b - 1)]));
    let three = normalize(apply_move(&cz, &two, HelixLeft).unwrap());
    assert_eq!(three, instance(CL8[2], &[("a", a - 2), ("b", b - 2)]));
    let back = normalize(apply_move(&cz, &three, HelixLeft).unwrap());
    assert_eq!(back, instance(CL8[0], &[("a", b - a), ("b", 5 - a)]));

    // the same chain as a certificate from an Orlov seed
    let cert = FullnessCertificate {
        variety: v.id.clone(),
        seed: start.clone(),
        moves: vec![
            HelixLeft,
            Tensor {
                divisor: Divisor::new(-1, 0),
            },
        ],
        target: two.clone(),
    };
    assert!(is_orlov_seed(&v, &start));
    assert!(check_certificate(&cz, &cert).ok);
}

#[test]
fn orlov_seed_examples() {
    let v = var("PP2_Om1_O1");
    let seeds = orlov_seeds(&v, 6);
    for a in -6..=4 {
        assert!(seeds.contains(&instance(CL1_1, &[("a", a)])));
    }
    let v = var("PP3_O_O3");
    let seeds = orlov_seeds(&v, 6);
    assert!(seeds.contains(&c(&[
        (0, 0),
        (1, 0),
        (2, 0),
        (3, 0),
        (2, 1),
        (3, 1),
        (4, 1),
        (5, 1)
    ])));
    for v in registry() {
        let cz = CzTable::new(&v, 12);
        let seeds = orlov_seeds(&v, 4);
        assert!(!seeds.is_empty());
        for s in &seeds {
            assert!(s.is_normalized() && s.len() == v.max_length);
            assert!(
                excoll_core::collection::is_exceptional(&cz, &s.members),
                "{} {}",
                v.id,
                s
            );
        }
    }
}

#[test]
fn product_seeds_use_both_factors() {
    let v = var("P2xP1");
    let seeds = orlov_seeds(&v, 4);
    assert!(seeds.contains(&c(&[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)])));
    assert!(seeds.contains(&c(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)])));
}

#[test]
fn seed_targets_need_no_moves() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 24);
    let x = instance(CL1_1, &[("a", 2)]);
    let cert = verify_fullness(&cz, &x, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    assert!(cert.moves.is_empty());
    let shifted = x.shifted(Divisor::new(1, 1));
    let cert = verify_fullness(&cz, &shifted, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    assert_eq!(
        cert.moves,
        vec![Tensor {
            divisor: Divisor::new(1, 1)
        }]
    );
    assert!(check_certificate(&cz, &cert).ok);
}

#[test]
fn type_12_certificate_through_type_7() {
    let v = var("P2xP1");
    let cz = CzTable::new(&v, 24);
    let target = instance(CL2_12, &[]);
    // the shortest path found by search is not the one through type (7)
    let cert = verify_fullness(&cz, &target, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    assert!(check_certificate(&cz, &cert).ok);
    assert!(
        cert.moves.iter().any(|m| matches!(m, SwapAt { .. })),
        "{:?}",
        cert.moves
    );

    let seven = instance(CL2_7, &[("b", 1)]);
    let mut via = verify_fullness(&cz, &seven, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    via.moves.push(SwapAt { index: 4 });
    via.target = target;
    assert!(check_certificate(&cz, &via).ok);
}

#[test]
fn perturbed_certificate_is_rejected() {
    let v = var("P2xP1");
    let cz = CzTable::new(&v, 24);
    let target = instance(CL2_12, &[]);
    let mut cert = verify_fullness(&cz, &target, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    let k = cert
        .moves
        .iter()
        .rposition(|m| matches!(m, SwapAt { .. }))
        .unwrap();
    if let SwapAt { index } = cert.moves[k] {
        cert.moves[k] = SwapAt {
            index: (index + 1) % 5,
        };
    }
    let check = check_certificate(&cz, &cert);
    assert!(!check.ok);
    assert!(check.reason.is_some());

    let mut wrong_seed = verify_fullness(&cz, &target, 6, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    wrong_seed.seed = target.clone();
    wrong_seed.moves.clear();
    assert!(!check_certificate(&cz, &wrong_seed).ok);
}

#[test]
fn verify_rejects_non_exceptional_targets() {
    let v = var("P2xP1");
    let cz = CzTable::new(&v, 24);
    let bad = c(&[(0, 0), (0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
    assert!(matches!(
        verify_fullness(&cz, &bad, 6, 10),
        Err(Error::NotExceptional)
    ));
}

#[test]
fn tiny_budget_reports_exhaustion() {
    let v = var("P2xP2");
    let cz = CzTable::new(&v, 24);
    let target = enumerate_maximal(&v, 3)
        .into_iter()
        .find(|x| !is_orlov_seed(&v, x))
        .unwrap();
    match verify_fullness(&cz, &target, 3, 5).unwrap() {
        Err(nf) => assert!(nf.budget_exhausted && nf.explored >= 5),
        Ok(cert) => panic!("found {:?} within 5 states", cert.moves),
    }
}

#[test]
fn every_cl1_collection_is_reachable() {
    let v = var("PP2_Om1_O1");
    let cz = CzTable::new(&v, 24);
    let tree = explore(&cz, &orlov_seeds(&v, 6), 6, DEFAULT_BUDGET);
    for x in enumerate_maximal(&v, 6) {
        let cert = tree.certificate(&v, &x).unwrap();
        assert!(check_certificate(&cz, &cert).ok);
    }
}

#[test]
fn neighbor_edges_are_admissible_and_ordered() {
    let v = var("PP3_O_O3");
    let cz = CzTable::new(&v, 24);
    let s = &orlov_seeds(&v, 6)[3];
    let edges = neighbors(&cz, s, 6);
    assert!(!edges.is_empty());
    let mut cur = 0;
    for e in &edges {
        let rank = match e.moves[0] {
            SwapAt { .. } => 0,
            HelixLeft => 1,
            HelixRight => 2,
            ReplaceAt { .. } => 3,
            Tensor { .. } => unreachable!(),
        };
        assert!(rank >= cur);
        cur = rank;
        let mut x = s.clone();
        for &m in &e.moves {
            x = apply_move(&cz, &x, m).unwrap();
        }
        assert_eq!(x, e.to);
        assert!(e.to.is_normalized() && e.to.in_box(6));
    }
}

fn arb_collection() -> impl Strategy<Value = (VarietyDescriptor, Collection)> {
    let reg = registry();
    let found: Vec<Vec<Collection>> = reg.iter().map(|v| enumerate_maximal(v, 3)).collect();
    (0..reg.len(), 0usize..10_000).prop_filter_map("variety with collections", move |(k, i)| {
        let f = &found[k];
        (!f.is_empty()).then(|| (reg[k].clone(), f[i % f.len()].clone()))
    })
}

proptest! {
    #[test]
    fn helix_involution((v, x) in arb_collection()) {
        let cz = CzTable::new(&v, 24);
        let y = apply_move(&cz, &x, HelixLeft).unwrap();
        prop_assert_eq!(apply_move(&cz, &y, HelixRight).unwrap(), x.clone());
        let z = apply_move(&cz, &x, HelixRight).unwrap();
        prop_assert_eq!(apply_move(&cz, &z, HelixLeft).unwrap(), x);
    }

    #[test]
    fn tensor_invariance((v, x) in arb_collection(), ta in -9i64..9, tb in -9i64..9) {
        let t = Divisor::new(ta, tb);
        prop_assert!(is_exceptional_collection(&v, &x.shifted(t)));
        let cz = CzTable::new(&v, 24);
        prop_assert_eq!(apply_move(&cz, &x, Tensor { divisor: t }).unwrap(), x.shifted(t));
    }

    #[test]
    fn swap_safety((v, x) in arb_collection(), i in 0usize..8) {
        prop_assume!(i + 1 < x.len());
        let cz = CzTable::new(&v, 24);
        let both = cz.is_cz(x.members[i] - x.members[i + 1]) && cz.is_cz(x.members[i + 1] - x.members[i]);
        let r = apply_move(&cz, &x, SwapAt { index: i });
        prop_assert_eq!(r.is_ok(), both);
        if let Ok(y) = r {
            prop_assert!(is_exceptional_collection(&v, &y));
        }
    }
}
