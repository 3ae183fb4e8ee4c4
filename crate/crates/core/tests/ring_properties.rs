use proptest::prelude::*;
use twoweight::ring::{GaloisRing, GrElem, Zq};

const RINGS: &[(u64, u32)] = &[(3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 2), (7, 3), (11, 2)];

fn ring_and_elems(k: usize) -> impl Strategy<Value = (GaloisRing, Vec<GrElem>)> {
    (0..RINGS.len(), proptest::collection::vec((any::<u64>(), any::<u64>()), k)).prop_map(|(i, raw)| {
        let (p, h) = RINGS[i];
        let ring = GaloisRing::new(p, h).unwrap();
        let q = ring.q();
        let elems = raw.into_iter().map(|(a, b)| ring.elem(a % q, b % q)).collect();
        (ring, elems)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((r, e) in ring_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.zero()), a);
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.sub(a, b), r.add(a, r.neg(b)));
    }

    #[test]
    fn frobenius_is_an_involutive_automorphism((r, e) in ring_and_elems(2)) {
        let (a, b) = (e[0], e[1]);
        let f = |z| r.frobenius(z);
        prop_assert_eq!(f(r.add(a, b)), r.add(f(a), f(b)));
        prop_assert_eq!(f(r.mul(a, b)), r.mul(f(a), f(b)));
        prop_assert_eq!(f(f(a)), a);
        prop_assert_eq!(f(r.one()), r.one());
    }

    #[test]
    fn frobenius_fixes_exactly_the_scalars((r, e) in ring_and_elems(1)) {
        let a = e[0];
        prop_assert_eq!(r.frobenius(a) == a, a.c1.0 == 0);
    }

    #[test]
    fn trace_is_linear((r, e) in ring_and_elems(2), u in any::<u64>()) {
        let (a, b) = (e[0], e[1]);
        let u = r.zq(u % r.q());
        let t = |z| r.trace(z).unwrap();
        prop_assert_eq!(t(r.add(a, b)), r.zq_add(t(a), t(b)));
        prop_assert_eq!(t(r.scale(u, a)), r.zq_mul(u, t(a)));
    }

    #[test]
    fn digits_round_trip((r, e) in ring_and_elems(1)) {
        let a = e[0];
        let digits = r.teich_digits(a);
        prop_assert_eq!(digits.len(), r.h() as usize);
        for t in &digits {
            prop_assert!(r.is_teichmuller(*t));
        }
        prop_assert_eq!(r.recompose(&digits), a);
    }

    #[test]
    fn frobenius_in_xi_coordinates((r, e) in ring_and_elems(1)) {
        let (a, b) = (e[0].c0, e[0].c1);
        let xi = r.xi();
        let z = r.add(r.from_scalar(a), r.scale(b, xi));
        let expect = r.add(r.from_scalar(a), r.scale(b, r.pow(xi, r.p())));
        prop_assert_eq!(r.frobenius(z), expect);
        prop_assert_eq!(r.xi_coordinates(z), (a, b));
    }

    #[test]
    fn teichmuller_lift_is_multiplicative((r, e) in ring_and_elems(2)) {
        let (a, b) = (e[0], e[1]);
        let l = |z| r.teichmuller_lift(z);
        prop_assert_eq!(l(r.mul(a, b)), r.mul(l(a), l(b)));
        prop_assert_eq!(r.reduce_mod_p(l(a)), r.reduce_mod_p(a));
    }
}

fn exhaustive_rings() -> Vec<GaloisRing> {
    [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)].iter().map(|&(p, h)| GaloisRing::new(p, h).unwrap()).collect()
}

#[test]
fn frobenius_exhaustive_small_rings() {
    for r in exhaustive_rings() {
        let all: Vec<GrElem> = r.elements().collect();
        let mut fixed = 0;
        for &a in &all {
            let fa = r.frobenius(a);
            assert_eq!(r.frobenius(fa), a);
            if fa == a {
                fixed += 1;
            }
        }
        assert_eq!(fixed, r.q());
        if r.size() <= 81 {
            for &a in &all {
                for &b in &all {
                    assert_eq!(r.frobenius(r.mul(a, b)), r.mul(r.frobenius(a), r.frobenius(b)));
                    assert_eq!(r.frobenius(r.add(a, b)), r.add(r.frobenius(a), r.frobenius(b)));
                }
            }
        }
    }
}

#[test]
fn trace_kernel_and_image() {
    for (p, h) in [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
        let r = GaloisRing::new(p, h).unwrap();
        let mut counts = vec![0u64; r.q() as usize];
        for z in r.elements() {
            counts[r.trace(z).unwrap().0 as usize] += 1;
        }
        // Surjective, every fibre the size of the kernel.
        assert!(counts.iter().all(|&c| c == r.q()), "p={p} h={h}");
    }
}

#[test]
fn teichmuller_set_exhaustive() {
    for r in exhaustive_rings() {
        let teich: Vec<GrElem> = r.elements().filter(|&z| r.is_teichmuller(z)).collect();
        assert_eq!(teich.len() as u64, r.p() * r.p());
        let table = r.teich_table();
        assert_eq!(table.len() as u64, r.p() * r.p());
        for t in table {
            assert!(teich.contains(t));
        }
        for z in r.elements() {
            assert_eq!(r.recompose(&r.teich_digits(z)), z);
        }
    }
}

#[test]
fn xi_has_full_unit_order() {
    for &(p, h) in RINGS {
        let r = GaloisRing::new(p, h).unwrap();
        let n = p * p - 1;
        assert_eq!(r.pow(r.xi(), n), r.one());
        for f in twoweight::ring::prime_factors(n) {
            assert_ne!(r.pow(r.xi(), n / f), r.one(), "p={p} h={h}");
        }
        assert_eq!(r.trace(r.one()).unwrap(), Zq(2 % r.q()));
    }
}
