mod common;

use std::collections::BTreeSet;

use common::*;
use evasion_core::graphcat::{is_isomorphic, Catalog, Graph};
use evasion_core::orbitcx::edge_orbits as library_orbits;
use evasion_core::perm::{CyclicHom, PermGroup, Permutation};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

/// Either one arbitrary permutation of ten points, or a few maps
/// `x ↦ a·x + b` mod 10; both keep the generated group small.
fn small_generators() -> impl Strategy<Value = Vec<Vec<usize>>> {
    let affine = (prop::sample::select(vec![1usize, 3, 7, 9]), 0usize..10)
        .prop_map(|(a, b)| (0..10).map(|x| (a * x + b) % 10).collect::<Vec<usize>>());
    prop_oneof![
        perm(10).prop_map(|p| vec![p]),
        proptest::collection::vec(affine, 1..4),
    ]
}

fn group_of(n: usize, gens: &[Vec<usize>]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|g| Permutation::from_images(g).unwrap())
        .collect();
    PermGroup::generate(n, gens).unwrap()
}

fn parity(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    (transpositions % 2) as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_matches_oracle_and_is_a_group(gens in proptest::collection::vec(perm(6), 1..3)) {
        let g = group_of(6, &gens);
        let oracle = closure(6, &gens);
        prop_assert_eq!(g.order(), oracle.len());
        for x in g.elements() {
            let images: Vec<usize> = x.images().collect();
            prop_assert!(oracle.contains(&images));
            prop_assert!(g.contains(&x.inverse()));
        }
        let el = g.elements();
        for a in el.iter().take(12) {
            for b in el.iter().take(12) {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn sign_map_kernel_times_image(gens in proptest::collection::vec(perm(6), 1..3)) {
        let g = group_of(6, &gens);
        let images: Vec<u64> = gens.iter().map(|p| parity(p)).collect();
        let h = CyclicHom::new(g.clone(), 2, images).unwrap();
        let k = h.kernel();
        prop_assert_eq!(k.order() * h.image_size(), g.order());
        prop_assert!(k.is_normal_in(&g).unwrap());
        let even = closure(6, &gens).into_iter().filter(|p| parity(p) == 0).count();
        prop_assert_eq!(k.order(), even);
    }

    #[test]
    fn accepted_homs_are_well_defined(
        gens in proptest::collection::vec(perm(5), 1..3),
        images in proptest::collection::vec(0u64..6, 2),
        m in 2u64..7,
    ) {
        let g = group_of(5, &gens);
        let images: Vec<u64> = images[..gens.len()].iter().map(|x| x % m).collect();
        if let Ok(h) = CyclicHom::new(g.clone(), m, images.clone()) {
            let oracle = hom_images(5, &gens, &images, m);
            for x in g.elements() {
                let key: Vec<usize> = x.images().collect();
                prop_assert_eq!(h.image_of(x), Some(oracle[&key]));
            }
            prop_assert_eq!(h.kernel().order() * h.image_size(), g.order());
        }
    }

    #[test]
    fn orbits_partition_the_edges(gens in small_generators()) {
        let g = group_of(10, &gens);
        let ours: BTreeSet<BTreeSet<Edge>> = library_orbits(&g)
            .orbits
            .iter()
            .map(from_graph)
            .collect();
        let oracle: BTreeSet<BTreeSet<Edge>> = edge_orbits(10, &gens).into_iter().collect();
        prop_assert_eq!(&ours, &oracle);
        let total: usize = ours.iter().map(|o| o.len()).sum();
        prop_assert_eq!(total, 45);
        for o in &ours {
            // Orbit–stabilizer: every orbit size divides the group order.
            prop_assert_eq!(g.order() % o.len(), 0);
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence_on_the_catalog(
        a in 0usize..22, b in 0usize..22, s in perm(10), t in perm(10),
    ) {
        let cat = Catalog::build(10).unwrap();
        let ga = cat.classes()[a].representative.relabel(&s).unwrap();
        let gb = cat.classes()[b].representative.relabel(&t).unwrap();
        let base_a = &cat.classes()[a].representative;
        prop_assert!(is_isomorphic(&ga, &ga).is_some());
        prop_assert!(is_isomorphic(&ga, base_a).is_some());
        let ab = is_isomorphic(&ga, &gb).is_some();
        prop_assert_eq!(ab, is_isomorphic(&gb, &ga).is_some());
        prop_assert_eq!(ab, a == b);
        if let Some(w) = is_isomorphic(&ga, &gb) {
            prop_assert_eq!(ga.relabel(&w).unwrap(), gb.clone());
        }
        // Transitivity through the unrelabeled representative.
        if a == b {
            prop_assert!(is_isomorphic(base_a, &gb).is_some());
        }
    }

    #[test]
    fn identify_is_relabeling_invariant(bits in 0u64..(1 << 45), s in perm(10)) {
        let cat = Catalog::build(10).unwrap();
        let g = Graph::from_bits(10, bits);
        let h = g.relabel(&s).unwrap();
        prop_assert_eq!(cat.identify(&g), cat.identify(&h));
    }
}
