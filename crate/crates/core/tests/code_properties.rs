use proptest::prelude::*;
use twoweight::code::{
    build_code, closed_form_distribution, codeword, codeword_by_trace, distribution_report, hamming_weight,
    moment_identity_holds, nondegenerate_divisors, two_weight_holds, weight_distribution_enum, CodeSpec, EnumOptions,
    Variant,
};
use twoweight::puncture::columns_dependent;
use twoweight::ring::GaloisRing;

/// `(p, h, d)` with `d` non-degenerate.
fn specs() -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for (p, h) in [(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 2)] {
        for d in nondegenerate_divisors(p) {
            out.push((p, h, d));
        }
    }
    out
}

fn case() -> impl Strategy<Value = (CodeSpec, GaloisRing, u64, u64, u64)> {
    let all = specs();
    (0..all.len(), any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(i, x, y, z)| {
        let (p, h, d) = all[i];
        let spec = CodeSpec::new(p, h, d).unwrap();
        let ring = GaloisRing::new(p, h).unwrap();
        (spec, ring, x, y, z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generator_matches_trace_oracle((spec, ring, x, y, _) in case()) {
        let a = ring.elem(x % ring.q(), y % ring.q());
        let gen = build_code(&spec, &ring).unwrap();
        prop_assert_eq!(codeword(a, &gen, &ring), codeword_by_trace(a, &spec, &ring).unwrap());
    }

    #[test]
    fn weight_invariant_under_units_and_rotation((spec, ring, x, y, z) in case()) {
        let q = ring.q();
        let a = ring.elem(x % q, y % q);
        let gen = build_code(&spec, &ring).unwrap();
        let w = hamming_weight(&codeword(a, &gen, &ring));
        let units: Vec<_> = ring.zq_units().collect();
        let u = units[(z % units.len() as u64) as usize];
        prop_assert_eq!(hamming_weight(&codeword(ring.scale(u, a), &gen, &ring)), w);
        let k = z % spec.n;
        let rotated = ring.mul(a, ring.xi_pow(k * spec.d));
        prop_assert_eq!(hamming_weight(&codeword(rotated, &gen, &ring)), w);
    }

    #[test]
    fn zero_locus_is_empty_or_m((spec, ring, x, y, _) in case()) {
        let a = ring.elem(x % ring.q(), y % ring.q());
        prop_assume!(a != ring.zero());
        let gen = build_code(&spec, &ring).unwrap();
        let zeros = spec.n - hamming_weight(&codeword(a, &gen, &ring));
        prop_assert!(zeros == 0 || zeros == spec.m, "{} zeros at {}", zeros, spec);
    }

    #[test]
    fn dependence_tests_agree((spec, ring, _, y, z) in case()) {
        let gen = build_code(&spec, &ring).unwrap();
        let n = spec.n;
        let (j, k) = (y % n, z % n);
        let exponent = ((j + n - k) % n) * spec.d % n * (spec.p - 1) % n;
        let by_exponent = ring.xi_pow(exponent) == ring.one();
        prop_assert_eq!(columns_dependent(&gen, j as usize, k as usize), by_exponent);
    }
}

#[test]
fn orbit_enumeration_equals_naive() {
    for (p, h, d) in specs().into_iter().filter(|&(p, h, _)| p <= 5 && h <= 3) {
        let spec = CodeSpec::new(p, h, d).unwrap();
        let ring = GaloisRing::new(p, h).unwrap();
        let naive = weight_distribution_enum(&spec, &ring, EnumOptions::naive()).unwrap();
        let orbits = weight_distribution_enum(&spec, &ring, EnumOptions::orbits()).unwrap();
        assert_eq!(naive.entries, orbits.entries, "{spec}");
    }
}

#[test]
fn invariants_over_matrix() {
    for p in [3u64, 5, 7] {
        for h in 1..=3u32 {
            for d in twoweight::code::divisors(p * p - 1) {
                let spec = CodeSpec::new(p, h, d).unwrap();
                let ring = GaloisRing::new(p, h).unwrap();
                let rep = distribution_report(&spec, &ring, EnumOptions::naive()).unwrap();
                assert!(rep.invariants_hold(), "{spec}");
                assert!(moment_identity_holds(&rep.enumerated, &spec));
                assert_eq!(rep.enumerated.total(), spec.size());
                if !spec.degenerate {
                    assert!(two_weight_holds(&rep.enumerated, &spec));
                    assert!(rep.comparison(Variant::ExamplesConsistent).unwrap().matches, "{spec}");
                }
            }
        }
    }
}

/// `p = 3, h = 4`: all `3^8` words enumerated directly.
#[test]
fn depth_four_enumeration() {
    let ring = GaloisRing::new(3, 4).unwrap();
    for d in nondegenerate_divisors(3) {
        let spec = CodeSpec::new(3, 4, d).unwrap();
        let dist = weight_distribution_enum(&spec, &ring, EnumOptions::naive()).unwrap();
        assert_eq!(dist.total(), 6561);
        assert!(moment_identity_holds(&dist, &spec));
        assert!(two_weight_holds(&dist, &spec));
        let closed = closed_form_distribution(&spec, Variant::ExamplesConsistent).unwrap();
        assert_eq!(dist.entries, closed.entries);
        if d == 1 {
            assert_eq!(dist.to_bracket_string(), "[ <0, 1>, <6, 320>, <8, 6240> ]");
            assert_eq!(closed_form_distribution(&spec, Variant::Theorem).unwrap().entries, dist.entries);
        }
    }
}

#[test]
fn closed_forms_disagree_exactly_when_m_exceeds_p_minus_one() {
    for p in [3u64, 5, 7] {
        for h in 1..=3 {
            for d in nondegenerate_divisors(p) {
                let spec = CodeSpec::new(p, h, d).unwrap();
                let t = closed_form_distribution(&spec, Variant::Theorem).unwrap();
                let e = closed_form_distribution(&spec, Variant::ExamplesConsistent).unwrap();
                assert_eq!(t.entries == e.entries, spec.m == p - 1, "{spec}");
            }
        }
    }
}
