use twoweight::code::{nondegenerate_divisors, weight_distribution_enum, CodeSpec, EnumOptions, TwoRowCode};
use twoweight::graph::{
    coset_graph_for, cover_check, predicted_srg, verify_srg, verify_srg_all_pairs, CoverOptions, GraphError,
    SrgOptions, VerifyMode,
};
use twoweight::puncture::{dual_low_weight_witness, enumerate_code, projectivity_check, punctured_code, puncture_report};
use twoweight::ring::GaloisRing;

#[test]
fn projectivity_matrix() {
    for p in [3u64, 5, 7] {
        for h in 1..=3u32 {
            let ring = GaloisRing::new(p, h).unwrap();
            for d in nondegenerate_divisors(p) {
                let spec = CodeSpec::new(p, h, d).unwrap();
                let (gen, part, pc) = punctured_code(&spec, &ring).unwrap();
                assert_eq!(part.class_count() as u64, spec.punctured_length(), "{spec}");
                assert!(part.classes.iter().all(|c| c.len() as u64 == spec.m));
                assert_eq!(pc.len() as u64, spec.punctured_length());
                assert!(projectivity_check(&pc).projective, "{spec}");
                assert!(!projectivity_check(&gen).projective);
                if h <= 2 {
                    assert_eq!(dual_low_weight_witness(&pc), None, "{spec}");
                    assert!(dual_low_weight_witness(&gen).is_some());
                }
            }
        }
    }
}

#[test]
fn punctured_weights_are_full_weights_over_m() {
    for p in [3u64, 5, 7] {
        for h in 1..=3u32 {
            let ring = GaloisRing::new(p, h).unwrap();
            for d in nondegenerate_divisors(p) {
                let spec = CodeSpec::new(p, h, d).unwrap();
                let full = weight_distribution_enum(&spec, &ring, EnumOptions::naive()).unwrap();
                let rep = puncture_report(&spec, &ring, &full, None).unwrap();
                assert!(rep.matches_divided_full, "{spec}");
                let (n, size, weights) = rep.parameters();
                assert_eq!(size, spec.size());
                let nh = spec.punctured_length();
                assert_eq!(n, nh);
                assert!(weights.iter().all(|&w| w == nh || w + 1 == nh), "{spec}: {weights:?}");
                if d == 1 {
                    let g = rep.griesmer.unwrap();
                    assert!(g.equality);
                    assert!(rep.mdr.unwrap().mdr);
                }
            }
        }
    }
}

#[test]
fn coset_graphs_match_prediction() {
    for (p, h) in [(3u64, 2u32), (3, 3), (5, 2), (7, 2)] {
        for d in nondegenerate_divisors(p) {
            let spec = CodeSpec::new(p, h, d).unwrap();
            let (pc, graph) = coset_graph_for(&spec).unwrap();
            assert_eq!(graph.vertex_count(), spec.size());
            assert_eq!(graph.degree(), spec.punctured_length() * (spec.q() - 1));
            let found = verify_srg(&graph, &SrgOptions::default()).unwrap();
            assert!(found.params.invariants_hold());
            let pred = predicted_srg(&spec).unwrap().params;
            assert_eq!((found.params.eta, found.params.r, found.params.s), (pred.eta, pred.r, pred.s), "{spec}");
            let dist = enumerate_code(&pc, None).unwrap();
            let nh = pc.len() as u64;
            assert_eq!((found.params.f, found.params.g), (dist.frequency(nh - 1), dist.frequency(nh)));
        }
    }
}

#[test]
fn all_pairs_agrees_with_base_vertex() {
    for (p, h, d) in [(3u64, 2u32, 1u64), (3, 2, 2), (5, 1, 2), (5, 1, 3), (5, 2, 3), (2, 3, 1)] {
        let spec = CodeSpec::new(p, h, d).unwrap();
        let (_, graph) = coset_graph_for(&spec).unwrap();
        let a = verify_srg(&graph, &SrgOptions::default()).unwrap();
        let b = verify_srg_all_pairs(&graph).unwrap();
        assert_eq!(a.params, b.params);
        assert_eq!(b.mode, VerifyMode::AllPairs);
    }
}

#[test]
fn sampling_is_reproducible() {
    let spec = CodeSpec::new(5, 2, 1).unwrap();
    let (_, graph) = coset_graph_for(&spec).unwrap();
    let opts = SrgOptions { vertex_budget: 100, sample_size: 50, seed: 7 };
    let a = verify_srg(&graph, &opts).unwrap();
    let b = verify_srg(&graph, &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.mode, VerifyMode::Sampled { differences: 100, seed: 7 });
    assert_eq!(a.params, verify_srg(&graph, &SrgOptions::default()).unwrap().params);
}

#[test]
fn primitive_depth_one_graph_is_complete() {
    let spec = CodeSpec::new(3, 1, 1).unwrap();
    let (_, graph) = coset_graph_for(&spec).unwrap();
    assert_eq!(graph.vertex_count(), 9);
    assert_eq!(graph.degree(), 8);
    assert!(matches!(verify_srg(&graph, &SrgOptions::default()), Err(GraphError::Trivial(_))));
}

#[test]
fn covers_at_p5() {
    for d in [1u64, 2, 3] {
        let rep = cover_check(5, 1, d, &CoverOptions::default()).unwrap();
        let spec = CodeSpec::new(5, 1, d).unwrap();
        assert!(rep.columns_reduce);
        assert_eq!(rep.fiber_size, 25);
        assert_eq!(rep.collapsed_per_vertex, spec.punctured_length() * 4);
        assert_eq!(rep.neighbor_fiber_constant, 5);
        assert!(!rep.sampled);
    }
}

#[test]
fn sampled_cover_is_reproducible() {
    let opts = CoverOptions { vertex_budget: 100, sample_size: 64, seed: 11 };
    let a = cover_check(3, 2, 1, &opts).unwrap();
    assert_eq!(a, cover_check(3, 2, 1, &opts).unwrap());
    assert!(a.sampled);
    assert_eq!(a.vertices_checked, 64);
    assert_eq!((a.fiber_size, a.collapsed_per_vertex, a.neighbor_fiber_constant), (9, 8, 3));
}

#[test]
fn edgelist_is_sorted_and_complete() {
    let spec = CodeSpec::new(3, 2, 1).unwrap();
    let (_, graph) = coset_graph_for(&spec).unwrap();
    let mut buf = Vec::new();
    let edges = graph.write_edgelist(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let pairs: Vec<(u64, u64)> = text
        .lines()
        .map(|l| {
            let mut it = l.split(' ').map(|x| x.parse::<u64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(edges, 81 * 32 / 2);
    assert_eq!(pairs.len() as u64, edges);
    assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    assert!(pairs.iter().all(|&(u, w)| u < w && graph.is_adjacent(u, w)));
}
