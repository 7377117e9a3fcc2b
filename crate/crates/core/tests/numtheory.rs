use std::sync::OnceLock;

use betaforms::numtheory::carry::carry_min_value;
use betaforms::numtheory::phi::capital_phi_pointwise;
use betaforms::numtheory::{
    capital_phi, carry_min_table, carry_value, digamma_rational, digamma_series, lcm_up_to, sieve_primes, CarrySpec,
    StepFunction,
};
use betaforms::rationalfn::profile::SIX_BETA_ETA;
use betaforms::{Profile, Rational};
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;

fn specs() -> Vec<CarrySpec> {
    vec![CarrySpec::Uniform, CarrySpec::general(&SIX_BETA_ETA), CarrySpec::general(&[5, 2, 2, 2, 2, 2])]
}

fn tables() -> &'static [StepFunction] {
    static TABLES: OnceLock<Vec<StepFunction>> = OnceLock::new();
    TABLES.get_or_init(|| specs().iter().map(|s| carry_min_table(s).unwrap()).collect())
}

fn rat() -> impl Strategy<Value = Rational64> {
    (-500i64..500, 1i64..97).prop_map(|(p, q)| Rational64::new(p, q))
}

proptest! {
    #[test]
    fn carry_is_one_periodic(x in rat(), y in rat(), which in 0usize..3) {
        let spec = &specs()[which];
        let one = Rational64::from_integer(1);
        let v = carry_value(spec, x, y);
        prop_assert_eq!(v, carry_value(spec, x + one, y));
        prop_assert_eq!(v, carry_value(spec, x, y + one));
    }

    #[test]
    fn sampled_minimum_matches_table(x in rat(), seed in any::<u64>(), which in 0usize..3) {
        let spec = &specs()[which];
        let want = tables()[which].eval(x);
        prop_assert_eq!(want, carry_min_value(spec, x));
        // random y never beats the table value
        let mut state = seed | 1;
        for _ in 0..10_000 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let y = Rational64::new((state % 10_007) as i64, 10_007);
            prop_assert!(carry_value(spec, x, y) >= want);
        }
    }

    #[test]
    fn lcm_ratio_is_one_or_prime(m in 2u64..3000) {
        let a = lcm_up_to(m).to_rational();
        let b = lcm_up_to(m - 1).to_rational();
        let ratio = &a / &b;
        prop_assert!(ratio.is_integer());
        let r: u64 = ratio.to_integer().try_into().unwrap();
        prop_assert!(r == 1 || sieve_primes(r).last() == Some(&r));
    }

    #[test]
    fn digamma_doubling_nests(p in 1u64..60, q in 1u64..30) {
        let lo = digamma_rational(p, q, 64).unwrap();
        let hi = digamma_rational(p, q, 128).unwrap();
        prop_assert!(lo.overlaps(&hi));
        let direct = digamma_series(&Rational::new(BigInt::from(p), BigInt::from(q)), 64).unwrap();
        prop_assert!(direct.overlaps(&hi));
    }
}

#[test]
fn table_phi_equals_pointwise_phi() {
    for n in (2..=200).step_by(2) {
        let p = Profile::uniform(3, n).unwrap();
        assert_eq!(capital_phi(&p).unwrap(), capital_phi_pointwise(&p), "n = {n}");
    }
    for n in [2, 4, 6, 8] {
        let p = Profile::six_beta(n).unwrap();
        assert_eq!(capital_phi(&p).unwrap(), capital_phi_pointwise(&p), "n = {n}");
    }
}

#[test]
fn sieve_counts() {
    assert_eq!(sieve_primes(100).len(), 25);
    assert_eq!(sieve_primes(1_000_000).len(), 78_498);
}
