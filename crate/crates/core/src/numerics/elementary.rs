//! Rigorous elementary functions on balls.
//!
//! Everything is evaluated in fixed point at `prec + GUARD` bits with an
//! explicit count of truncation errors in units of the last place, then
//! returned as a [`BallReal`] whose radius covers that count, the series tail
//! and the propagated input radius.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ball::BallReal;
use super::mag::Mag;
use crate::Rational;

const GUARD: u32 = 32;

fn ulps(count: u64, wp: u32) -> Mag {
    Mag::from_u64(count).mul_2exp(-(wp as i64))
}

fn fixed_ball(x: BigInt, err_ulps: u64, wp: u32, prec: u32) -> BallReal {
    BallReal::from_parts(x, -(wp as i64), ulps(err_ulps, wp), prec)
}

/// `atanh(z)` for a fixed-point `|z| <= 1/3 · 2^wp`; returns value and error in ulps.
fn atanh_fixed(z: &BigInt, wp: u32) -> (BigInt, u64) {
    let neg = z.is_negative();
    let z = z.abs();
    let z2 = (&z * &z) >> wp as usize;
    let mut term = z.clone();
    let mut sum = z;
    let mut iters = 0u64;
    let mut j = 1u64;
    loop {
        term = (&term * &z2) >> wp as usize;
        if term.is_zero() {
            break;
        }
        sum += &term / BigInt::from(2 * j + 1);
        j += 1;
        iters += 1;
    }
    (if neg { -sum } else { sum }, 4 * iters + 8)
}

/// `atan(1/k)` in fixed point for an integer `k >= 2`.
fn atan_inv_fixed(k: u64, wp: u32) -> (BigInt, u64) {
    let k2 = BigInt::from(k * k);
    let mut p = (BigInt::one() << wp as usize) / BigInt::from(k);
    let mut sum = p.clone();
    let mut j = 1u64;
    let mut iters = 0u64;
    loop {
        p = &p / &k2;
        if p.is_zero() {
            break;
        }
        let term = &p / BigInt::from(2 * j + 1);
        if j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        j += 1;
        iters += 1;
    }
    (sum, 3 * iters + 4)
}

fn pi_fixed(wp: u32) -> (BigInt, u64) {
    let (a, ea) = atan_inv_fixed(5, wp);
    let (b, eb) = atan_inv_fixed(239, wp);
    (a * 16 - b * 4, 16 * ea + 4 * eb)
}

fn ln2_fixed(wp: u32) -> (BigInt, u64) {
    let third = (BigInt::one() << wp as usize) / BigInt::from(3);
    let (v, e) = atanh_fixed(&third, wp);
    // derivative of 2·atanh at 1/3 is 9/4; one ulp of input error
    (v * 2, 2 * e + 3)
}

/// π as a ball.
pub fn pi(prec: u32) -> BallReal {
    let wp = prec + GUARD;
    let (v, e) = pi_fixed(wp);
    fixed_ball(v, e, wp, prec)
}

/// ln 2 as a ball.
pub fn ln2(prec: u32) -> BallReal {
    let wp = prec + GUARD;
    let (v, e) = ln2_fixed(wp);
    fixed_ball(v, e, wp, prec)
}

/// Natural logarithm; `None` unless the ball is strictly positive.
pub fn ln(x: &BallReal) -> Option<BallReal> {
    if !x.is_positive() {
        return None;
    }
    let prec = x.prec();
    let wp = prec + GUARD;
    let (m, e) = x.mid_parts();
    let b = m.bits() as i64;
    // y = m / 2^(b-1) in [1, 2); for y > 3/2 use y/2 so that |z| <= 1/5.
    let half_top = BigInt::one() << (b - 1) as usize;
    let (c, kexp) = if m * 2 > &half_top * 3 {
        (half_top << 1usize, e + b)
    } else {
        (half_top, e + b - 1)
    };
    let z = ((m - &c) << wp as usize) / (m + &c);
    let (at, eat) = atanh_fixed(&z, wp);
    let (l2, el2) = ln2_fixed(wp);
    let value = at * 2 + l2 * kexp;
    let err = 2 * (eat + 2) + el2 * kexp.unsigned_abs();
    let mut out = fixed_ball(value, err, wp, prec);
    if !x.rad().is_zero() {
        // |ln(x ± r) - ln x| <= r / (x - r)
        let lower = x.abs_lower();
        out = out.add_error(x.rad().div_up(lower));
    }
    Some(out)
}

pub fn ln_rational(q: &Rational, prec: u32) -> Option<BallReal> {
    ln(&BallReal::from_rational(q, prec + 8).with_prec(prec))
}

pub fn ln_int(k: u64, prec: u32) -> BallReal {
    ln(&BallReal::from_int(k, prec)).expect("positive integer")
}

/// Taylor sums of sin and cos for a fixed-point `0 <= theta <= 2^wp`.
fn sin_cos_fixed(theta: &BigInt, wp: u32) -> ((BigInt, u64), (BigInt, u64)) {
    let one = BigInt::one() << wp as usize;
    let t2 = (theta * theta) >> wp as usize;

    let mut term = theta.clone();
    let mut s = theta.clone();
    let mut j = 1u64;
    let mut it_s = 0u64;
    loop {
        term = ((&term * &t2) >> wp as usize) / BigInt::from((2 * j) * (2 * j + 1));
        if term.is_zero() {
            break;
        }
        if j % 2 == 1 {
            s -= &term;
        } else {
            s += &term;
        }
        j += 1;
        it_s += 1;
    }

    let mut term = one.clone();
    let mut c = one;
    let mut j = 1u64;
    let mut it_c = 0u64;
    loop {
        term = ((&term * &t2) >> wp as usize) / BigInt::from((2 * j - 1) * (2 * j));
        if term.is_zero() {
            break;
        }
        if j % 2 == 1 {
            c -= &term;
        } else {
            c += &term;
        }
        j += 1;
        it_c += 1;
    }
    ((s, 3 * it_s + 4), (c, 3 * it_c + 4))
}

/// `(sin(π t), cos(π t))` for a rational `t`.
pub fn sin_cos_pi(t: &Rational, prec: u32) -> (BallReal, BallReal) {
    let two = Rational::from_integer(BigInt::from(2));
    // t mod 2 in [0, 2)
    let mut r = t - (t / &two).floor() * &two;
    let mut sin_sign = 1i32;
    let mut cos_sign = 1i32;
    if r >= Rational::one() {
        r -= Rational::one();
        sin_sign = -sin_sign;
        cos_sign = -cos_sign;
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    if r > half {
        r = Rational::one() - r;
        cos_sign = -cos_sign;
    }
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let swap = r > quarter;
    if swap {
        r = half - r;
    }
    let wp = prec + GUARD;
    let (pv, pe) = pi_fixed(wp);
    // theta = π r, r in [0, 1/4]; error r·pe + 1 <= pe + 1 ulps
    let theta = (&pv * r.numer()).div_floor(r.denom());
    let te = pe + 1;
    let ((s, es), (c, ec)) = sin_cos_fixed(&theta, wp);
    let mut sb = fixed_ball(s, es + te, wp, prec);
    let mut cb = fixed_ball(c, ec + te, wp, prec);
    if swap {
        std::mem::swap(&mut sb, &mut cb);
    }
    if sin_sign < 0 {
        sb = -sb;
    }
    if cos_sign < 0 {
        cb = -cb;
    }
    (sb, cb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_digits() {
        let p = pi(256);
        assert_eq!(
            p.mid_to_decimal(40),
            "3.141592653589793238462643383279502884197e0"
        );
        assert!(p.rad().log2() < -250.0);
    }

    #[test]
    fn ln2_digits_and_precision_nesting() {
        let a = ln2(128);
        let b = ln2(512);
        assert!(a.overlaps(&b));
        assert_eq!(b.mid_to_decimal(30), "6.93147180559945309417232121458e-1");
    }

    #[test]
    fn ln_identities() {
        let l10 = ln_int(10, 200);
        let l2 = ln_int(2, 200);
        let l5 = ln_int(5, 200);
        assert!(l10.overlaps(&(&l2 + &l5)));
        let small = ln_rational(&q(1, 1_000_003), 200).unwrap();
        assert!(small.is_negative());
        assert!((small.to_f64() + (1_000_003f64).ln()).abs() < 1e-12);
        assert!(ln(&BallReal::from_int(-1, 64)).is_none());
    }

    #[test]
    fn sin_cos_special_values() {
        let (s, c) = sin_cos_pi(&q(1, 6), 200);
        assert!(s.contains_rational(&q(1, 2)));
        assert!((c.to_f64() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let (s, c) = sin_cos_pi(&q(1, 2), 200);
        assert!(s.contains_rational(&q(1, 1)));
        assert!(c.contains_rational(&q(0, 1)));
        let (s, c) = sin_cos_pi(&q(7, 4), 200);
        assert!((s.to_f64() + 0.5f64.sqrt()).abs() < 1e-15);
        assert!((c.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
        let (s, _) = sin_cos_pi(&q(-1, 3), 200);
        assert!((s.to_f64() + 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn pythagoras_holds_in_balls() {
        for (n, d) in [(1, 7), (3, 11), (5, 31), (13, 17)] {
            let (s, c) = sin_cos_pi(&q(n, d), 300);
            let one = &s.sqr() + &c.sqr();
            assert!(one.contains_rational(&q(1, 1)), "{n}/{d}");
        }
    }
}
