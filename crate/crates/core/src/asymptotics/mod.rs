//! Growth exponents: the cube maximum via a certified unique root, the decay
//! rate of `r_n`, the rates of `d` and `Φ_n`, and the criterion ledger.

mod poly;

pub use poly::{bisect, IntPoly};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numerics::ball::BallReal;
use crate::numerics::elementary::{ln, ln_int};
use crate::numerics::mag::Mag;
use crate::numtheory::phi_exponent;
use crate::{Error, Profile, Rational, Result};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `x ∏((η_0−η_j) − η_j x) − ∏(η_j − (η_0−η_j) x)`.
pub fn critical_polynomial(eta: &[u64]) -> IntPoly {
    let e0 = eta[0] as i64;
    let mut left = IntPoly::monomial(1, 1);
    let mut right = IntPoly::monomial(1, 0);
    for &ej in &eta[1..] {
        let ej = ej as i64;
        left = left.mul(&IntPoly::linear(e0 - ej, -ej));
        right = right.mul(&IntPoly::linear(ej, -(e0 - ej)));
    }
    left.sub(&right)
}

/// Certified root data for the maximum of
/// `∏ t_j^{η_j} (1−t_j)^{η_0−2η_j} / (1 + t_1⋯t_s)^{η_0}` over the unit cube.
#[derive(Debug, Clone)]
pub struct CubeMaximum {
    pub polynomial: IntPoly,
    /// Isolating interval of the unique root in `(0, 1)` after refinement.
    pub root_interval: (Rational, Rational),
    pub x0: BallReal,
    pub x: Vec<BallReal>,
    /// `log` of the maximum.
    pub log_max: BallReal,
}

/// Isolates the unique zero of the polynomial in `(0, 1)`; any other count is an error.
pub fn cube_maximum(eta: &[u64], prec: u32) -> Result<CubeMaximum> {
    if eta.len() < 2 || eta.contains(&0) {
        return Err(Error::InvalidArgument("eta needs positive entries eta_0, eta_1, ...".into()));
    }
    let p = critical_polynomial(eta);
    let (zero, one) = (Rational::zero(), Rational::one());
    if p.eval(&zero).is_zero() || p.eval(&one).is_zero() {
        return Err(Error::RootCount(usize::MAX));
    }
    let count = p.count_roots(&zero, &one);
    if count != 1 {
        return Err(Error::RootCount(count));
    }
    let wp = prec + 32;
    let (lo, hi) = bisect(&p, &zero, &one, wp + 8);
    let mid = (&lo + &hi) / q(2, 1);
    let half_width = (&hi - &lo) / q(2, 1);
    let x0 = BallReal::from_rational(&mid, wp).add_error(crate::numerics::ball::rational_mag_up(&half_width));

    let e0 = eta[0] as i64;
    let mut x = Vec::with_capacity(eta.len() - 1);
    for &ej in &eta[1..] {
        let ej = ej as i64;
        let num = &BallReal::from_int(ej, wp) - &x0.mul_rational(&q(e0 - ej, 1));
        let den = &BallReal::from_int(e0 - ej, wp) - &x0.mul_rational(&q(ej, 1));
        let xj = num
            .checked_div(&den)
            .ok_or_else(|| Error::Precision("x_j denominator straddles zero".into()))?;
        let one_b = BallReal::from_int(1, wp);
        if !xj.is_positive() || !(&one_b - &xj).is_positive() {
            return Err(Error::InvalidArgument(format!("x_j = {xj} is not inside (0, 1)")));
        }
        x.push(xj);
    }
    let log_max = log_objective(eta, &x, wp)?.with_prec(prec);
    Ok(CubeMaximum { polynomial: p, root_interval: (lo, hi), x0, x, log_max })
}

/// `Σ [η_j ln t_j + (η_0−2η_j) ln(1−t_j)] − η_0 ln(1 + ∏ t_j)`.
pub fn log_objective(eta: &[u64], t: &[BallReal], wp: u32) -> Result<BallReal> {
    let e0 = eta[0] as i64;
    let one = BallReal::from_int(1, wp);
    let mut acc = BallReal::zero(wp);
    let mut prod = one.clone();
    let bad = || Error::Precision("logarithm of a ball touching zero".into());
    for (&ej, tj) in eta[1..].iter().zip(t) {
        let ej = ej as i64;
        acc = &acc + &ln(tj).ok_or_else(bad)?.mul_rational(&q(ej, 1));
        acc = &acc + &ln(&(&one - tj)).ok_or_else(bad)?.mul_rational(&q(e0 - 2 * ej, 1));
        prod = &prod * tj;
    }
    Ok(&acc - &ln(&(&one + &prod)).ok_or_else(bad)?.mul_rational(&q(e0, 1)))
}

/// Largest gradient component magnitude of the log objective at `t`.
pub fn stationary_gradient(eta: &[u64], t: &[BallReal], wp: u32) -> Mag {
    let e0 = eta[0] as i64;
    let one = BallReal::from_int(1, wp);
    let prod = t.iter().fold(one.clone(), |acc, v| &acc * v);
    let ratio = prod.checked_div(&(&one + &prod)).expect("1 + T > 0");
    let mut worst = Mag::ZERO;
    for (&ej, tj) in eta[1..].iter().zip(t) {
        let ej = ej as i64;
        let a = BallReal::from_int(ej, wp).checked_div(tj).expect("t_j > 0");
        let b = BallReal::from_int(e0 - 2 * ej, wp).checked_div(&(&one - tj)).expect("t_j < 1");
        let c = ratio.mul_rational(&q(e0, 1)).checked_div(tj).expect("t_j > 0");
        let g = &(&a - &b) - &c;
        worst = worst.max(g.abs_upper());
    }
    worst
}

/// `η_0 ln(4η_0) − 2η_1 ln η_1 − (η_0−2η_1) ln(η_0−2η_1)`, the log of the prefactor.
pub fn log_prefactor(eta: &[u64], wp: u32) -> BallReal {
    let (e0, e1) = (eta[0], eta[1]);
    let a = ln_int(4 * e0, wp).mul_rational(&q(e0 as i64, 1));
    let b = ln_int(e1, wp).mul_rational(&q(2 * e1 as i64, 1));
    let c = ln_int(e0 - 2 * e1, wp).mul_rational(&q((e0 - 2 * e1) as i64, 1));
    &(&a - &b) - &c
}

/// `lim (1/n) log r_n`.
pub fn r_exponent(profile: &Profile, prec: u32) -> Result<BallReal> {
    exponent_for_eta(&profile.asymptotic_eta(), prec)
}

pub fn exponent_for_eta(eta: &[u64], prec: u32) -> Result<BallReal> {
    let wp = prec + 32;
    let data = cube_maximum(eta, wp)?;
    Ok((&log_prefactor(eta, wp) + &data.log_max).with_prec(prec))
}

/// `1 − 2t − 2t^s + t^{s+1}`, whose root in `(0, 1)` maximizes `t^s(1−t)^s/(1+t^s)^3`.
pub fn one_dim_polynomial(s: u32) -> IntPoly {
    let s = s as usize;
    let mut c = vec![BigInt::zero(); s + 2];
    c[0] = BigInt::one();
    c[1] = BigInt::from(-2);
    c[s] = BigInt::from(-2);
    c[s + 1] = BigInt::one();
    IntPoly::new(c)
}

/// `ln 12³ + max_t [s ln t + s ln(1−t) − 3 ln(1+t^s)]`, the one-variable form of the
/// uniform exponent.
pub fn uniform_one_dim_exponent(s: u32, prec: u32) -> Result<BallReal> {
    let wp = prec + 32;
    let p = one_dim_polynomial(s);
    let (zero, one) = (Rational::zero(), Rational::one());
    let count = p.count_roots(&zero, &one);
    if count != 1 {
        return Err(Error::RootCount(count));
    }
    let (lo, hi) = bisect(&p, &zero, &one, wp + 8);
    let t = BallReal::from_rational(&((&lo + &hi) / q(2, 1)), wp)
        .add_error(crate::numerics::ball::rational_mag_up(&((&hi - &lo) / q(2, 1))));
    let one_b = BallReal::from_int(1, wp);
    let bad = || Error::Precision("logarithm of a ball touching zero".into());
    let ts = t.pow(s);
    let body = &(&ln(&t).ok_or_else(bad)? + &ln(&(&one_b - &t)).ok_or_else(bad)?).mul_rational(&q(s as i64, 1))
        - &ln(&(&one_b + &ts)).ok_or_else(bad)?.mul_rational(&q(3, 1));
    Ok((&ln_int(1728, wp) + &body).with_prec(prec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The total exponent ball lies strictly below zero.
    Satisfied,
    /// The ball lies strictly above zero.
    Fails,
    /// The ball contains zero.
    Inconclusive,
}

/// `total = s·μ − phi_exponent + r_exponent`, the growth rate of `Φ^{-1} d^s r_n`.
#[derive(Debug, Clone)]
pub struct ExponentLedger {
    pub r_exponent: BallReal,
    pub d_exponent: BallReal,
    pub phi_exponent: BallReal,
    pub total: BallReal,
    pub verdict: Verdict,
}

pub fn exponent_ledger(profile: &Profile, prec: u32) -> Result<ExponentLedger> {
    let wp = prec + 16;
    let r = r_exponent(profile, wp)?;
    let d = BallReal::from_rational(&(profile.mu() * Rational::from_integer(BigInt::from(profile.s()))), wp);
    let phi = phi_exponent(profile, wp)?;
    let total = (&(&d - &phi) + &r).with_prec(prec);
    let verdict = if total.is_negative() {
        Verdict::Satisfied
    } else if total.is_positive() {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    };
    Ok(ExponentLedger {
        r_exponent: r.with_prec(prec),
        d_exponent: d.with_prec(prec),
        phi_exponent: phi.with_prec(prec),
        total,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_eta_gives_equal_x() {
        let d = cube_maximum(&[5, 2, 2, 2, 2, 2], 128).unwrap();
        for xj in &d.x[1..] {
            assert!(xj.overlaps(&d.x[0]));
        }
    }

    #[test]
    fn uniform_routes_agree() {
        for s in [3u32, 5, 17] {
            let p = Profile::uniform(s, 2).unwrap();
            let a = r_exponent(&p, 128).unwrap();
            let b = uniform_one_dim_exponent(s, 128).unwrap();
            assert!(a.overlaps(&b), "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn uniform_s17_value() {
        let p = Profile::uniform(17, 2).unwrap();
        let r = r_exponent(&p, 128).unwrap();
        assert!((r.to_f64() + 16.1123070755).abs() < 1e-9, "{r}");
    }

    #[test]
    fn six_beta_ledger() {
        let l = exponent_ledger(&Profile::six_beta(2).unwrap(), 128).unwrap();
        assert!((l.r_exponent.to_f64() + 100.73966317).abs() < 1e-7, "{}", l.r_exponent);
        assert!((l.phi_exponent.to_f64() - 42.76645651).abs() < 1e-7);
        assert!((l.total.to_f64() + 0.50611968).abs() < 1e-7, "{}", l.total);
        assert_eq!(l.verdict, Verdict::Satisfied);
    }

    #[test]
    fn stationary_point() {
        let eta = crate::rationalfn::profile::SIX_BETA_ETA;
        let d = cube_maximum(&eta, 256).unwrap();
        let g = stationary_gradient(&eta, &d.x, 256);
        assert!(g.log2() < -200.0, "{}", g.log2());
    }

    #[test]
    fn ledger_signs() {
        let l = exponent_ledger(&Profile::uniform(3, 2).unwrap(), 64).unwrap();
        assert_eq!(l.verdict, Verdict::Fails);
        let l = exponent_ledger(&Profile::uniform(17, 2).unwrap(), 64).unwrap();
        assert_eq!(l.verdict, Verdict::Satisfied);
    }
}
