//! Randomized property checks for the ring and number-theory kernels.

use num_bigint::BigInt;
use proptest::prelude::*;

use fxhad::cyclotomic_ring::{reduce_mod, RingSpec};
use fxhad::diffsets::transform_index_set;
use fxhad::finite_field::{gcd, mod_inv};
use fxhad::invariants::{corollary_bound, digit_sum_reduce};

fn hist14() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 14)
}

proptest! {
    #[test]
    fn ring_axioms(a in hist14(), b in hist14(), c in hist14()) {
        let ring = RingSpec::new(14);
        let (a, b, c) = (ring.from_hist(&a), ring.from_hist(&b), ring.from_hist(&c));
        // Associativity and commutativity of both operations.
        prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
        prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        // Distributivity.
        prop_assert_eq!(
            ring.mul(&a, &ring.add(&b, &c)),
            ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
        );
        // Units.
        prop_assert_eq!(ring.add(&a, &ring.zero()), a.clone());
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
        prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
    }

    #[test]
    fn zeta_order(k in 0i64..100) {
        let ring = RingSpec::new(14);
        prop_assert_eq!(ring.zeta(k), ring.zeta(k + 14));
        prop_assert_eq!(ring.mul(&ring.zeta(k), &ring.zeta(-k)), ring.one());
    }

    #[test]
    fn modular_reduction_is_a_homomorphism(a in hist14(), b in hist14(), m in 1u64..400) {
        prop_assume!(m % 2 == 1 && m >= 3);
        let exact = RingSpec::new(14);
        let modular = exact.with_modulus(m).unwrap();
        let (a, b) = (exact.from_hist(&a), exact.from_hist(&b));
        let lhs = reduce_mod(&exact.mul(&a, &b), &modular).unwrap();
        let rhs = modular.mul(
            &reduce_mod(&a, &modular).unwrap(),
            &reduce_mod(&b, &modular).unwrap(),
        );
        prop_assert_eq!(lhs, rhs);
        let lhs = reduce_mod(&exact.add(&a, &b), &modular).unwrap();
        let rhs = modular.add(
            &reduce_mod(&a, &modular).unwrap(),
            &reduce_mod(&b, &modular).unwrap(),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn galois_is_multiplicative(a in hist14(), b in hist14(), s in 0usize..6) {
        let ring = RingSpec::new(14);
        let exps = [1i64, 3, 5, 9, 11, 13];
        let e = exps[s];
        let (a, b) = (ring.from_hist(&a), ring.from_hist(&b));
        let lhs = ring.galois(&ring.mul(&a, &b), e).unwrap();
        let rhs = ring.mul(&ring.galois(&a, e).unwrap(), &ring.galois(&b, e).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_integers_survive_roundtrip(v in -10_000i64..10_000) {
        let ring = RingSpec::new(14);
        let x = ring.from_int(BigInt::from(v));
        prop_assert_eq!(ring.as_rational_integer(&x).unwrap(), BigInt::from(v));
    }

    #[test]
    fn digit_sum_reduction_bounds(t in (1u64..100_000).prop_map(|v| 2 * v + 1)) {
        let p = 11u64;
        let r = digit_sum_reduce(t, p);
        prop_assert!(r <= p - 2);
        prop_assert_eq!(r % 2, 1, "odd t must reduce to an odd value");
        // Reduction is idempotent.
        prop_assert_eq!(digit_sum_reduce(r, p), r);
    }

    #[test]
    fn index_transform_roundtrip(s in 1u64..14, bits in 1u64..(1 << 14)) {
        prop_assume!(gcd(s, 14) == 1);
        let index_set: Vec<u64> = (0..14).filter(|i| bits >> i & 1 == 1).collect();
        let fwd = transform_index_set(&index_set, s, 14).unwrap();
        let back = transform_index_set(&fwd, mod_inv(s, 14).unwrap(), 14).unwrap();
        prop_assert_eq!(back, index_set);
    }

    #[test]
    fn corollary_bound_is_tight_ceiling(n in 2u64..40, q in 3u64..2_000_000) {
        let b = corollary_bound(n, q) as u128;
        let k = 4u128 * (n as u128).pow(3);
        let v = k * k * q as u128;
        prop_assert!(b * b >= v);
        prop_assert!((b - 1) * (b - 1) < v);
    }
}
