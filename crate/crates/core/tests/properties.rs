use latskel_core::bipartite::{
    domination, exact_domination, exact_from_strong, strong_domination, strong_from_domination,
    BipartiteGraph,
};
use latskel_core::enumerate::lattice_certificate;
use latskel_core::iso::are_isomorphic;
use latskel_core::lattice::downset_lattice;
use latskel_core::reconstruct::reconstruct;
use latskel_core::skeleton::{herrmann_rank, skeleton};
use latskel_core::wds::{extract_wds, wds_isomorphic, WeightedDoubleSkeleton};
use latskel_core::{build_lattice, FiniteLattice, Poset};
use proptest::prelude::*;

fn poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut pairs = Vec::new();
                let mut it = bits.into_iter();
                for a in 0..n {
                    for b in a + 1..n {
                        if it.next().unwrap() {
                            pairs.push((a, b));
                        }
                    }
                }
                Poset::from_covers(n, &pairs).unwrap()
            },
        )
    })
}

fn relabelled(l: &FiniteLattice, perm: &[usize]) -> FiniteLattice {
    let covers: Vec<_> = l
        .covers()
        .into_iter()
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    build_lattice(l.len(), &covers).unwrap()
}

fn lattice_and_perm() -> impl Strategy<Value = (FiniteLattice, Vec<usize>)> {
    poset_strategy(6).prop_flat_map(|p| {
        let l = downset_lattice(&p).unwrap();
        let ids: Vec<usize> = (0..l.len()).collect();
        (Just(l), Just(ids).prop_shuffle())
    })
}

fn graph_strategy() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=6, 1usize..=8).prop_flat_map(|(u, x)| {
        proptest::collection::vec(any::<bool>(), u * x).prop_map(move |bits| {
            let edges: Vec<_> = (0..u * x)
                .filter(|&i| bits[i])
                .map(|i| (i / x, i % x))
                .collect();
            BipartiteGraph::new(u, x, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn downset_lattices_are_distributive(p in poset_strategy(7)) {
        let l = downset_lattice(&p).unwrap();
        prop_assert!(l.is_distributive());
        let (ji, _) = l.ji_poset();
        prop_assert!(ji.isomorphism_to(&p).is_some());
    }

    #[test]
    fn skeleton_shortens(p in poset_strategy(6)) {
        let l = downset_lattice(&p).unwrap();
        let s = skeleton(&l).unwrap().skeleton;
        if l.len() > 1 {
            prop_assert!(s.length() < l.length());
        } else {
            prop_assert_eq!(s.len(), 1);
        }
    }

    #[test]
    fn invariants_survive_relabelling((l, perm) in lattice_and_perm()) {
        let m = relabelled(&l, &perm);
        prop_assert_eq!(lattice_certificate(&l), lattice_certificate(&m));
        prop_assert_eq!(herrmann_rank(&l).unwrap(), herrmann_rank(&m).unwrap());
        let (a, b) = (extract_wds(&l).unwrap(), extract_wds(&m).unwrap());
        prop_assert!(wds_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn wds_json_round_trip(p in poset_strategy(6)) {
        let s = extract_wds(&downset_lattice(&p).unwrap()).unwrap();
        let back = WeightedDoubleSkeleton::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), s.to_json());
        prop_assert!(wds_isomorphic(&s, &back).is_some());
    }

    #[test]
    fn reconstruction_inverts_extraction(p in poset_strategy(6)) {
        prop_assume!(p.length() <= 1);
        let l = downset_lattice(&p).unwrap();
        let r = reconstruct(&extract_wds(&l).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&r.lattice, &l).is_some());
    }

    #[test]
    fn sieves_match_direct_counts(g in graph_strategy()) {
        let u = g.upper();
        let sigma = strong_from_domination(u, |q| domination(&g, q) as i64).unwrap();
        let eps = exact_from_strong(u, &sigma).unwrap();
        for v in 0..1u64 << u {
            prop_assert_eq!(sigma[v as usize], strong_domination(&g, v) as i64);
            prop_assert_eq!(eps[v as usize], exact_domination(&g, v) as i64);
        }
        prop_assert_eq!(eps.iter().sum::<i64>(), g.lower() as i64);
    }
}
