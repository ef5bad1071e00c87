mod common;

use std::collections::BTreeSet;

use common::*;
use evasion_core::graphcat::{is_isomorphic, Catalog, Member};
use evasion_core::VarId;

fn catalog() -> Catalog {
    Catalog::build(10).unwrap()
}

#[test]
fn twenty_two_classes() {
    let cat = catalog();
    assert_eq!(cat.len(), 22);
    assert_eq!(cat.variables().len(), 20);
}

#[test]
fn circulant_classes_are_multiplier_orbits() {
    let cat = catalog();
    let oracle: BTreeSet<_> = multiplier_classes().into_iter().collect();
    assert_eq!(oracle.len(), 18);
    // Empty and complete are circulants too; the oracle leaves them out.
    let trivial = |d: &Vec<usize>| d.is_empty() || d.len() == 5;
    let ours: BTreeSet<BTreeSet<Vec<usize>>> = cat
        .classes()
        .iter()
        .map(|c| {
            c.members
                .iter()
                .filter_map(|m| match m {
                    Member::Circulant(s) => Some(s.diffs()),
                    _ => None,
                })
                .filter(|d| !trivial(d))
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    assert_eq!(ours, oracle);
    let pairs = oracle.iter().filter(|o| o.len() == 2).count();
    let singles = oracle.iter().filter(|o| o.len() == 1).count();
    assert_eq!((pairs, singles), (12, 6));
}

#[test]
fn members_build_the_expected_circulants() {
    let cat = catalog();
    for c in cat.classes() {
        for m in &c.members {
            if let Member::Circulant(s) = m {
                assert_eq!(
                    from_graph(&m.graph()),
                    circulant_edges(10, &s.diffs()),
                    "{m}"
                );
            }
        }
    }
}

#[test]
fn stated_isomorphic_pairs() {
    let cat = catalog();
    let holds = [
        ("1", "3"),
        ("2345", "1245"),
        ("2", "4"),
        ("1235", "1345"),
        ("15", "35"),
        ("124", "234"),
        ("12", "34"),
        ("125", "345"),
        ("14", "23"),
        ("145", "235"),
        ("25", "45"),
    ];
    for (a, b) in holds {
        assert_eq!(cat.class_of_member(a), cat.class_of_member(b), "{a} ≅ {b}");
    }
    // The last caption pairs 123 with 145. They are not isomorphic; 123
    // pairs with 134 instead.
    assert_ne!(cat.class_of_member("123"), cat.class_of_member("145"));
    assert_eq!(cat.class_of_member("123"), cat.class_of_member("134"));
    let g123 = to_graph(10, &circulant_edges(10, &[1, 2, 3]));
    let g145 = to_graph(10, &circulant_edges(10, &[1, 4, 5]));
    assert!(is_isomorphic(&g123, &g145).is_none());
    // Different triangle counts separate them without any search.
    assert_ne!(g123.triangle_count(), g145.triangle_count());
}

#[test]
fn petersen_classes() {
    let cat = catalog();
    let kneser = kneser_edges();
    assert!(degrees(10, &kneser).iter().all(|&d| d == 3));
    assert_eq!(girth(10, &kneser), Some(5));
    let p = to_graph(10, &kneser);
    assert_eq!(cat.identify(&p), Some(&VarId::new("P")));
    assert_eq!(cat.identify(&p.complement()), Some(&VarId::new("Pbar")));
    // No cubic circulant has girth 5, so P is not a circulant.
    for d in 1..5 {
        let e = circulant_edges(10, &[d, 5]);
        assert!(girth(10, &e) != Some(5) || degrees(10, &e)[0] != 3);
    }
}

#[test]
fn complements_pair_up() {
    let cat = catalog();
    for v in cat.variables() {
        let c = cat.complement_class(&v).unwrap();
        assert_eq!(cat.complement_class(c), Some(&v));
        let g = &cat.get(&v).unwrap().representative;
        let h = &cat.get(c).unwrap().representative;
        assert!(is_isomorphic(&g.complement(), h).is_some());
    }
}

#[test]
fn identify_relabeled_members() {
    let cat = catalog();
    let sigma = [3, 7, 0, 9, 1, 5, 8, 2, 6, 4];
    for c in cat.classes() {
        for m in &c.members {
            let g = m.graph().relabel(&sigma).unwrap();
            assert_eq!(cat.identify(&g), Some(&c.id), "{m}");
        }
    }
    // A single edge is not vertex-transitive.
    let one = to_graph(10, &BTreeSet::from([(0, 1)]));
    assert_eq!(cat.identify(&one), None);
}

#[test]
fn five_vertices() {
    let cat = Catalog::build(5).unwrap();
    assert_eq!(cat.len(), 3);
    assert_eq!(cat.variables().len(), 1);
}
