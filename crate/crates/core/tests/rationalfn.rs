use std::sync::OnceLock;

use betaforms::rationalfn::{
    build, build_uniform, partial_fractions, symmetry_check, LinearProductRep, PartialFractionTable,
};
use betaforms::{Profile, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn profiles() -> Vec<Profile> {
    vec![
        Profile::uniform(3, 2).unwrap(),
        Profile::uniform(5, 4).unwrap(),
        Profile::uniform(7, 6).unwrap(),
        Profile::general(vec![5, 1, 1, 1, 1, 1], 2).unwrap(),
        Profile::general(vec![5, 2, 2, 2, 2, 2], 2).unwrap(),
        Profile::six_beta(2).unwrap(),
    ]
}

fn cached() -> &'static [(Profile, LinearProductRep, PartialFractionTable)] {
    static CACHE: OnceLock<Vec<(Profile, LinearProductRep, PartialFractionTable)>> = OnceLock::new();
    CACHE.get_or_init(|| {
        profiles()
            .into_iter()
            .map(|p| {
                let rep = build(&p).unwrap();
                let table = partial_fractions(&rep).unwrap();
                (p, rep, table)
            })
            .collect()
    })
}

fn point() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..500).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reconstruction_at_random_points(t in point(), which in 0usize..6) {
        let (_, rep, table) = &cached()[which];
        if let Ok(v) = rep.eval(&t) {
            prop_assert_eq!(table.eval(&t).unwrap(), v);
        }
    }

    #[test]
    fn partial_fractions_are_linear(num in 1i64..10_000, den in 1i64..10_000, neg in any::<bool>(), n in prop::sample::select(vec![2u64, 4])) {
        let c = Rational::new(BigInt::from(if neg { -num } else { num }), BigInt::from(den));
        let rep = build_uniform(5, n).unwrap();
        let base = partial_fractions(&rep).unwrap();
        let scaled = partial_fractions(&rep.scaled(&c)).unwrap();
        for pole in base.poles() {
            for i in 1..=base.max_order() {
                prop_assert_eq!(scaled.coeff(i, pole.index), base.coeff(i, pole.index) * &c);
            }
        }
    }
}

#[test]
fn reflection_for_both_families() {
    for (p, _, table) in cached() {
        assert!(symmetry_check(table, p.reflection_index()), "{}", p.label());
    }
}

#[test]
fn degree_gaps() {
    for s in [3u32, 5, 7, 17] {
        for n in [2u64, 4, 6] {
            let rep = build_uniform(s, n).unwrap();
            // numerator (2t + n)·∏_{j<=3n} has degree 3n + 1
            assert_eq!(rep.numerator_degree(), 3 * n + 1);
            let gap = rep.degree_gap();
            assert_eq!(gap, (n as i64 + 1) * s as i64 - (3 * n as i64 + 1));
            assert!(gap >= 2);
        }
    }
    for (p, rep, _) in cached() {
        assert!(rep.degree_gap() >= 2, "{}", p.label());
    }
}

#[test]
fn every_pole_carries_a_coefficient() {
    for (p, rep, table) in cached() {
        assert_eq!(table.poles().len(), rep.denominator_roots().len(), "{}", p.label());
        for pole in table.poles() {
            assert!(pole.coeffs.iter().any(|c| !c.is_zero()), "{} at {}", p.label(), pole.index);
        }
    }
}
