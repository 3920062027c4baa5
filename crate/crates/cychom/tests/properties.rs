//! Property tests: ring axioms in the free ring, shift automorphism laws,
//! canonical-form round-trips, and specialization being a homomorphism that
//! commutes with the shift.

use cychom::free_ring::{FreePoly, GenFamily};
use cychom::rings::{build_ring, RingElement, RingSpec};
use cychom::CyclicRing;
use proptest::prelude::*;

const N: u32 = 3;

fn arb_poly() -> impl Strategy<Value = FreePoly> {
    // up to 4 terms, words of length up to 3, coefficients in -9..=9
    let letter = (any::<bool>(), 0..N).prop_map(|(is_x, i)| {
        let family = if is_x { GenFamily::X } else { GenFamily::A };
        FreePoly::generator(family, i64::from(i), N).unwrap()
    });
    let word = prop::collection::vec(letter, 0..=3);
    let term = (word, -9i64..=9).prop_map(|(letters, coeff)| {
        letters
            .into_iter()
            .fold(FreePoly::scalar(N, coeff.into()), |acc, l| {
                acc.checked_mul(&l).unwrap()
            })
    });
    prop::collection::vec(term, 0..=4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(FreePoly::zero(N), |acc, t| acc.checked_add(&t).unwrap())
    })
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let ab_c = p.checked_add(&q).unwrap().checked_add(&r).unwrap();
        let a_bc = p.checked_add(&q.checked_add(&r).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);
        prop_assert_eq!(
            p.checked_add(&q).unwrap(),
            q.checked_add(&p).unwrap()
        );
    }

    #[test]
    fn multiplication_is_associative(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let ab_c = p.checked_mul(&q).unwrap().checked_mul(&r).unwrap();
        let a_bc = p.checked_mul(&q.checked_mul(&r).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn multiplication_distributes(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let lhs = p.checked_mul(&q.checked_add(&r).unwrap()).unwrap();
        let rhs = p
            .checked_mul(&q)
            .unwrap()
            .checked_add(&p.checked_mul(&r).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_laws(p in arb_poly()) {
        let one = FreePoly::one(N);
        prop_assert_eq!(&p.checked_mul(&one).unwrap(), &p);
        prop_assert_eq!(&one.checked_mul(&p).unwrap(), &p);
    }

    #[test]
    fn shift_composes_additively(p in arb_poly(), a in 0i64..6, b in 0i64..6) {
        prop_assert_eq!(p.shifted(a).shifted(b), p.shifted(a + b));
        prop_assert_eq!(p.shifted(i64::from(N)), p);
    }

    #[test]
    fn shift_is_a_ring_map(p in arb_poly(), q in arb_poly(), k in 0i64..6) {
        prop_assert_eq!(
            p.checked_mul(&q).unwrap().shifted(k),
            p.shifted(k).checked_mul(&q.shifted(k)).unwrap()
        );
        prop_assert_eq!(
            p.checked_add(&q).unwrap().shifted(k),
            p.shifted(k).checked_add(&q.shifted(k)).unwrap()
        );
    }

    #[test]
    fn canonical_text_round_trips(p in arb_poly()) {
        let text = p.to_string();
        prop_assert_eq!(FreePoly::parse(&text, N).unwrap(), p);
    }

    #[test]
    fn specialization_is_a_homomorphism(
        p in arb_poly(),
        q in arb_poly(),
        xc in prop::collection::vec(0u64..3, 3),
        ac in prop::collection::vec(0u64..3, 3),
    ) {
        // (Z/3)^3 with the cyclic coordinate shift, a noncommutative-free target
        // is not needed: the homomorphism laws are what is under test.
        let ring = build_ring(RingSpec::CyclicProduct { m: 3, k: 3, n: 3 }).unwrap();
        let x = RingElement::Coords(xc);
        let a = RingElement::Coords(ac);
        let f = |poly: &FreePoly| poly.specialize(&ring, &x, &a).unwrap();
        prop_assert_eq!(
            f(&p.checked_mul(&q).unwrap()),
            ring.mul(&f(&p), &f(&q))
        );
        prop_assert_eq!(
            f(&p.checked_add(&q).unwrap()),
            ring.add(&f(&p), &f(&q))
        );
        // commutes with the shift
        prop_assert_eq!(f(&p.shifted(1)), ring.shift(&f(&p)));
        // unit preservation
        prop_assert_eq!(f(&FreePoly::one(N)), ring.one());
    }
}

#[test]
fn specialization_rejects_incompatible_action() {
    // target action has order 3, polynomial claims n = 2
    let ring = build_ring(RingSpec::CyclicProduct { m: 2, k: 3, n: 3 }).unwrap();
    let p = FreePoly::generator(GenFamily::X, 0, 2).unwrap();
    let x = ring.parse_element("(1,0,0)").unwrap();
    let a = ring.zero();
    assert!(p.specialize(&ring, &x, &a).is_err());
}

#[test]
fn specialization_example_in_z5() {
    // X0.A1 at x=3, a=2 with the trivial action: 3*2 = 1 mod 5
    let ring = build_ring(RingSpec::ModularTrivial { m: 5, n: 2 }).unwrap();
    let p = FreePoly::parse("1*X0.A1", 2).unwrap();
    let x = ring.parse_element("3").unwrap();
    let a = ring.parse_element("2").unwrap();
    assert_eq!(p.specialize(&ring, &x, &a).unwrap(), ring.parse_element("1").unwrap());
}

#[test]
fn norm_polynomial_specializes_to_concrete_norm() {
    use cychom::free_ring::UniversalRing;
    use cychom::operators::norm;
    let n = 4;
    let u = UniversalRing::new(n).unwrap();
    let norm_poly = norm(&u, &u.generic_x());
    let ring = build_ring(RingSpec::CyclicProduct { m: 3, k: 4, n: 4 }).unwrap();
    for coords in [[1, 2, 0, 1], [0, 0, 0, 0], [2, 2, 1, 0]] {
        let x = RingElement::Coords(coords.to_vec());
        let via_poly = norm_poly.specialize(&ring, &x, &ring.zero()).unwrap();
        assert_eq!(via_poly, norm(&ring, &x));
    }
}
