use betaforms::asymptotics::{
    exponent_ledger, critical_polynomial, cube_maximum, r_exponent, stationary_gradient, Verdict,
};
use betaforms::numerics::SeriesSetup;
use betaforms::rationalfn::profile::SIX_BETA_ETA;
use betaforms::{Error, Mode, Profile, Rational};
use num_traits::Zero;

fn shipped_etas() -> Vec<Vec<u64>> {
    let mut v = vec![SIX_BETA_ETA.to_vec(), vec![5, 1, 1, 1, 1, 1], vec![5, 2, 2, 2, 2, 2], vec![7, 2, 3, 3, 3, 3]];
    for s in [3usize, 5, 17] {
        let mut e = vec![3u64];
        e.extend(std::iter::repeat_n(1, s));
        v.push(e);
    }
    v
}

#[test]
fn unique_root_with_sign_change() {
    for eta in shipped_etas() {
        let d = cube_maximum(&eta, 128).unwrap();
        let p = critical_polynomial(&eta);
        assert_eq!(p.count_roots(&Rational::zero(), &Rational::from_integer(1.into())), 1);
        let (lo, hi) = &d.root_interval;
        let (a, b) = (p.eval(lo), p.eval(hi));
        assert!(lo == hi || (a.is_zero() || b.is_zero() || (a < Rational::zero()) != (b < Rational::zero())));
        assert!(d.x0.contains_rational(lo) || d.x0.contains_rational(hi));
    }
}

#[test]
fn non_unique_root_is_an_error() {
    // a profile whose polynomial has no root inside (0, 1) is reported, not guessed
    match cube_maximum(&[4, 3, 3], 64) {
        Err(Error::RootCount(c)) => assert_ne!(c, 1),
        other => panic!("expected a root-count error, got {other:?}"),
    }
}

#[test]
fn gradient_vanishes_at_back_substituted_point() {
    for eta in shipped_etas() {
        let d = cube_maximum(&eta, 256).unwrap();
        let g = stationary_gradient(&eta, &d.x, 256);
        assert!(g.to_f64() < 1e-20, "{eta:?}: {}", g.to_f64());
    }
}

#[test]
fn six_beta_trend_toward_limit() {
    let limit = r_exponent(&Profile::six_beta(2).unwrap(), 64).unwrap().to_f64();
    let mut prev_gap = f64::INFINITY;
    for n in [2u64, 4, 6] {
        let p = Profile::six_beta(n).unwrap();
        let r = SeriesSetup::new(&p).unwrap().sum(64, Mode::default()).unwrap();
        let rate = r.log2_abs_mid() * std::f64::consts::LN_2 / n as f64;
        let gap = (rate - limit).abs();
        assert!(rate < limit && gap < prev_gap, "n = {n}: {rate} vs {limit}");
        prev_gap = gap;
    }
}

#[test]
fn ledger_nests_across_precisions() {
    for p in [Profile::six_beta(2).unwrap(), Profile::uniform(17, 2).unwrap(), Profile::uniform(3, 2).unwrap()] {
        let lo = exponent_ledger(&p, 64).unwrap();
        let hi = exponent_ledger(&p, 128).unwrap();
        assert!(lo.total.overlaps(&hi.total));
        assert!(hi.total.rad() <= lo.total.rad());
        assert_eq!(lo.verdict, hi.verdict);
        assert_ne!(hi.verdict, Verdict::Inconclusive);
    }
}
