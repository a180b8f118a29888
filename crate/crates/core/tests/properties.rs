use std::collections::BTreeSet;

use approx::assert_relative_eq;
use chern_realize::graded::{genus_class, Genus, Graded, MiddleIndex};
use chern_realize::numtheory::{binary_weight, coeff_m, factorial, two_adic_order};
use chern_realize::realize::{self, Congruence};
use chern_realize::relations::relation_set;
use chern_realize::{ExactRational, GradedClass, LatticeBasis};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = ExactRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ExactRational::new(n.into(), d.into()))
}

fn graded() -> impl Strategy<Value = GradedClass> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, d)| Graded::new(a, b, c, d))
}

fn dim() -> impl Strategy<Value = u64> {
    (2u64..=8).prop_map(|k| 4 * k)
}

proptest! {
    #[test]
    fn rationals_form_a_ring(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let z = &a - &a;
        prop_assert!(z.is_zero());
        prop_assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn graded_product_is_commutative_and_associative(u in graded(), v in graded(), w in graded()) {
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        prop_assert_eq!(&u * &GradedClass::one(), u.clone());
    }

    #[test]
    fn pairing_is_linear(u in graded(), v in graded(), r in rat()) {
        prop_assert_eq!((&u + &v).pair(), &u.pair() + &v.pair());
        prop_assert_eq!(u.scale(&r).pair(), u.pair().scale(&r));
    }

    #[test]
    fn coeff_m_divisible_by_l(l in 1u32..=12, k in 1u32..=12) {
        prop_assert!(coeff_m(l, k).is_multiple_of(&BigInt::from(l)));
    }

    #[test]
    fn legendre_two_adic_factorial(m in 1u32..=256) {
        let nu = two_adic_order(&factorial(m)).unwrap();
        prop_assert_eq!(nu, m as i64 - binary_weight(m as u64) as i64);
    }

    #[test]
    fn check_agrees_with_lattice_and_side_conditions(
        n in prop_oneof![Just(8u64), Just(12), Just(16)],
        sigma in -300i64..=300,
        chi in 3i64..=300,
    ) {
        let rs = relation_set(n).unwrap();
        let report = realize::characterize(n).unwrap();
        let (s, c) = (BigInt::from(sigma), BigInt::from(chi));
        let v = realize::check_with(&rs, &s, &c).unwrap();
        let expected = report.contains(&s, &c) && sigma.abs() <= chi - 2;
        prop_assert_eq!(v.realizable, expected, "({}, {}) in dim {}", sigma, chi, n);
    }

    #[test]
    fn realizable_pairs_are_consistent(n in dim(), sigma in -400i64..=400, chi in -10i64..=400) {
        let v = realize::check(n, &BigInt::from(sigma), &BigInt::from(chi)).unwrap();
        prop_assert_eq!(v.realizable, v.obstructions.is_empty());
        if v.realizable {
            prop_assert!(v.x.is_integer());
            prop_assert!(!v.a.is_zero() && !v.b.is_zero());
            let rs = relation_set(n).unwrap();
            let y = ExactRational::from_integer(chi.into());
            for cond in &rs.conditions {
                prop_assert!(cond.holds(&v.x, &y));
            }
        }
        if chi % 2 != 0 {
            prop_assert!(!v.realizable);
        }
    }

    #[test]
    fn congruence_normalization_keeps_solutions(
        p in -200i64..=200,
        q in -200i64..=200,
        d in 1i64..=300,
    ) {
        let c = Congruence::new(p.into(), q.into(), d.into()).unwrap();
        prop_assert!(c.d.is_positive_divisor_of(d));
        for s in -40i64..=40 {
            for x in -40i64..=40 {
                let direct = (p * s + q * x) % d == 0;
                prop_assert_eq!(c.holds(&s.into(), &x.into()), direct);
            }
        }
    }

    #[test]
    fn lattice_intersection_is_exact(
        conds in prop::collection::vec((-30i64..=30, -30i64..=30, 1i64..=40), 1..4),
    ) {
        let mut l = LatticeBasis::full();
        for &(p, q, d) in &conds {
            l = l.intersect_congruence(&p.into(), &q.into(), &d.into());
        }
        for s in -50i64..=50 {
            for x in -50i64..=50 {
                let direct = conds.iter().all(|&(p, q, d)| (p * s + q * x) % d == 0);
                prop_assert_eq!(l.contains(&s.into(), &x.into()), direct);
            }
        }
    }
}

trait DivisorOf {
    fn is_positive_divisor_of(&self, d: i64) -> bool;
}

impl DivisorOf for BigInt {
    fn is_positive_divisor_of(&self, d: i64) -> bool {
        self.to_i64().is_some_and(|v| v > 0 && d % v == 0)
    }
}

#[test]
fn enumerate_matches_brute_force_check() {
    for n in [8u64, 12, 16, 20] {
        let chi_max = 240i64;
        let listed: BTreeSet<(i64, i64)> = realize::enumerate(n, &BigInt::from(chi_max))
            .unwrap()
            .into_iter()
            .map(|r| (r.chi.to_i64().unwrap(), r.sigma.to_i64().unwrap()))
            .collect();
        let rs = relation_set(n).unwrap();
        let mut brute = BTreeSet::new();
        for chi in 3..=chi_max {
            for sigma in -(chi - 2)..=(chi - 2) {
                let v = realize::check_with(&rs, &sigma.into(), &chi.into()).unwrap();
                if v.realizable {
                    brute.insert((chi, sigma));
                }
            }
        }
        assert_eq!(listed, brute, "dimension {n}");
    }
}

#[test]
fn float_genus_tracks_exact() {
    for k in 2..=10 {
        let mid = MiddleIndex::new(k).unwrap();
        for kind in [Genus::Todd, Genus::Ahat, Genus::L] {
            let exact = genus_class::<ExactRational>(kind, mid).pair();
            let approx = genus_class::<f64>(kind, mid).pair();
            let ax = exact.ax.to_f64().unwrap();
            let ay = exact.ay.to_f64().unwrap();
            assert_relative_eq!(approx.ax, ax, max_relative = 1e-9, epsilon = 1e-15);
            assert_relative_eq!(approx.ay, ay, max_relative = 1e-9, epsilon = 1e-15);
        }
    }
}
