//! Digamma values at positive rationals.
//!
//! Two independent routes:
//!
//! * [`digamma_series`]: recurrence up to a large argument followed by the
//!   asymptotic expansion `ψ(X) ~ ln X − 1/(2X) − Σ B_{2k}/(2k X^{2k})`. For real
//!   `X > 0` the expansion is enveloping, so the first omitted term bounds the
//!   remainder.
//! * [`digamma_rational`]: Gauss's closed form for `ψ(p/q)`, `0 < p < q`,
//!   in terms of `γ`, `π`, `cot` and `ln sin`, with the recurrence for
//!   arguments above 1.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numerics::ball::BallReal;
use crate::numerics::elementary::{ln, ln_int, pi, sin_cos_pi};
use crate::numerics::mag::Mag;
use crate::{Error, Rational, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while cache.len() <= n {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -acc / Rational::from_integer(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[n].clone()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `ψ(x)` for rational `x > 0` via recurrence and the asymptotic expansion.
pub fn digamma_series(x: &Rational, prec: u32) -> Result<BallReal> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!("digamma argument {x} must be positive")));
    }
    let wp = prec + 24;
    let target = Mag::pow2(-(wp as i64));
    let x_floor = x.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let want = (wp / 2 + 10) as u64;
    let shift = want.saturating_sub(x_floor);
    let big_x = x + Rational::from_integer(BigInt::from(shift));

    // ψ(x) = ψ(X) − Σ_{j<shift} 1/(x + j)
    let mut harmonic = Rational::zero();
    for j in 0..shift {
        harmonic += (x + Rational::from_integer(BigInt::from(j))).recip();
    }

    let bx = BallReal::from_rational(&big_x, wp);
    let inv = bx.recip().expect("positive");
    let inv2 = inv.sqr();
    let mut acc = &ln(&bx).expect("positive") - &inv.div_int(2);
    let mut pow = inv2.clone();
    let mut k = 1usize;
    let mut last_bound = None;
    loop {
        let coef = bernoulli(2 * k) / Rational::from_integer(BigInt::from(2 * k));
        let term = pow.mul_rational(&coef);
        acc = &acc - &term;
        // bound by the next term
        let next_coef = bernoulli(2 * k + 2) / Rational::from_integer(BigInt::from(2 * k + 2));
        let next = (&pow * &inv2).mul_rational(&next_coef);
        let bound = next.abs_upper();
        if bound < target {
            acc = acc.add_error(bound);
            break;
        }
        if let Some(prev) = last_bound {
            if bound >= prev {
                return Err(Error::Precision("asymptotic expansion stopped decreasing".into()));
            }
        }
        last_bound = Some(bound);
        pow = &pow * &inv2;
        k += 1;
    }
    let h = BallReal::from_rational(&harmonic, wp);
    Ok((&acc - &h).with_prec(prec))
}

fn gamma_cache() -> &'static Mutex<Vec<(u32, BallReal)>> {
    static CACHE: OnceLock<Mutex<Vec<(u32, BallReal)>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Euler's constant `γ = −ψ(1)`.
pub fn euler_gamma(prec: u32) -> BallReal {
    if let Some((_, g)) = gamma_cache().lock().unwrap().iter().find(|(p, _)| *p >= prec) {
        return g.clone().with_prec(prec);
    }
    let g = -digamma_series(&Rational::one(), prec).expect("ψ(1) is defined");
    gamma_cache().lock().unwrap().push((prec, g.clone()));
    g
}

/// `ψ(p/q)` by Gauss's digamma theorem; radius at most `2^(1-prec)·|ψ|`.
pub fn digamma_rational(p: u64, q_den: u64, prec: u32) -> Result<BallReal> {
    if q_den == 0 {
        return Err(Error::InvalidArgument("digamma denominator is zero".into()));
    }
    if p == 0 {
        return Err(Error::InvalidArgument("digamma argument must be positive".into()));
    }
    let wp = prec + 24;
    let g = p.gcd(&q_den);
    let (p, qd) = (p / g, q_den / g);
    let whole = p / qd;
    let rem = p % qd;
    let gamma = euler_gamma(wp);

    let (base, start) = if rem == 0 {
        // ψ(1) = −γ, then recur from 1
        (-gamma, Rational::one())
    } else {
        (gauss_proper(rem, qd, &gamma, wp), q(rem as i64, qd as i64))
    };
    let steps = if rem == 0 { whole - 1 } else { whole };
    let mut harmonic = Rational::zero();
    for j in 0..steps {
        harmonic += (&start + Rational::from_integer(BigInt::from(j))).recip();
    }
    Ok((&base + &BallReal::from_rational(&harmonic, wp)).with_prec(prec))
}

/// Gauss: ψ(p/q) = −γ − ln(2q) − (π/2)·cot(πp/q) + 2 Σ_{k=1}^{⌊(q−1)/2⌋} cos(2πkp/q)·ln sin(πk/q)
fn gauss_proper(p: u64, qd: u64, gamma: &BallReal, wp: u32) -> BallReal {
    let arg = q(p as i64, qd as i64);
    let (s, c) = sin_cos_pi(&arg, wp);
    let cot = c.checked_div(&s).expect("sin(πp/q) != 0 for 0 < p < q");
    let half_pi = pi(wp).mul_2exp(-1);
    let mut acc = &(-gamma) - &ln_int(2 * qd, wp);
    acc = &acc - &(&half_pi * &cot);
    let mut sum = BallReal::zero(wp);
    for k in 1..=(qd - 1) / 2 {
        let (_, ck) = sin_cos_pi(&q((2 * k * p) as i64, qd as i64), wp);
        let (sk, _) = sin_cos_pi(&q(k as i64, qd as i64), wp);
        let lsk = ln(&sk).expect("sin(πk/q) > 0");
        sum = &sum + &(&ck * &lsk);
    }
    &acc + &sum.mul_2exp(1)
}

/// `κ = (ψ(1/2) − ψ(1/3) − 1) + 2(ψ(1) − ψ(1/2) − 1)`, the growth exponent of `Φ_n`
/// in the uniform construction.
pub fn kappa(prec: u32) -> BallReal {
    let wp = prec + 8;
    let half = digamma_rational(1, 2, wp).unwrap();
    let third = digamma_rational(1, 3, wp).unwrap();
    let one = digamma_rational(1, 1, wp).unwrap();
    let unit = BallReal::from_int(1, wp);
    let a = &(&half - &third) - &unit;
    let b = &(&one - &half) - &unit;
    (&a + &b.mul_2exp(1)).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli(13), q(0, 1));
    }

    #[test]
    fn euler_gamma_digits() {
        let g = euler_gamma(200);
        assert_eq!(g.mid_to_decimal(30), "5.77215664901532860606512090082e-1");
        assert!(g.rad().log2() < -195.0);
    }

    #[test]
    fn digamma_one_and_half() {
        let one = digamma_rational(1, 1, 128).unwrap();
        assert!((one.to_f64() + 0.5772156649015329).abs() < 1e-15);
        let half = digamma_rational(1, 2, 128).unwrap();
        assert!((half.to_f64() + 1.9635100260214235).abs() < 1e-15);
        assert!(digamma_rational(1, 0, 64).is_err());
    }

    #[test]
    fn gauss_matches_series_oracle() {
        for (p, d) in [(1u64, 3u64), (2, 3), (1, 4), (5, 7), (3, 31), (29, 31), (7, 24), (43, 20), (9, 2)] {
            let g = digamma_rational(p, d, 160).unwrap();
            let s = digamma_series(&q(p as i64, d as i64), 160).unwrap();
            assert!(g.overlaps(&s), "ψ({p}/{d}): {g} vs {s}");
            assert!(g.rad().log2() < -150.0);
        }
    }

    #[test]
    fn precision_doubling_nests() {
        for (p, d) in [(1u64, 3u64), (11, 20)] {
            let lo = digamma_rational(p, d, 100).unwrap();
            let hi = digamma_rational(p, d, 200).unwrap();
            assert!(lo.overlaps(&hi));
            assert!(hi.rad() <= lo.rad());
        }
    }

    #[test]
    fn kappa_value() {
        let k = kappa(128);
        assert!((k.to_f64() - 0.9411124762).abs() < 1e-10);
    }
}
