//! Midpoint-radius real balls with arbitrary-precision midpoints.
//!
//! A ball `mid · 2^exp ± rad` encloses one exact real. All arithmetic rounds the
//! midpoint to the ball's working precision and folds every rounding error and
//! every propagated input radius into the output radius.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReal {
    mid: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

fn bits_of(x: &BigInt) -> i64 {
    x.bits() as i64
}

impl BallReal {
    pub fn zero(prec: u32) -> Self {
        BallReal { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec }
    }

    pub fn from_int<T: Into<BigInt>>(x: T, prec: u32) -> Self {
        BallReal { mid: x.into(), exp: 0, rad: Mag::ZERO, prec }.trimmed()
    }

    /// The exact dyadic `mid · 2^exp` with zero radius (not trimmed).
    pub fn from_dyadic(mid: BigInt, exp: i64, prec: u32) -> Self {
        BallReal { mid, exp, rad: Mag::ZERO, prec }
    }

    /// Builds a ball from raw parts; `rad` must bound the error of `mid · 2^exp`.
    pub fn from_parts(mid: BigInt, exp: i64, rad: Mag, prec: u32) -> Self {
        BallReal { mid, exp, rad, prec }.trimmed()
    }

    pub fn from_f64_exact(x: f64, prec: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Self::from_dyadic(BigInt::from(man) * sign, e, prec).trimmed()
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (num, den) = (q.numer(), q.denom());
        if den.is_one() {
            return Self::from_int(num.clone(), prec);
        }
        if num.is_zero() {
            return Self::zero(prec);
        }
        // Quotient with at least prec + 2 bits; truncation error below one unit.
        let k = prec as i64 + 2 + bits_of(den) - bits_of(num);
        let (mid, exp) = if k >= 0 {
            ((num << k as usize).div_floor(den), -k)
        } else {
            (num.div_floor(&(den << (-k) as usize)), -k)
        };
        BallReal { mid, exp, rad: Mag::pow2(exp), prec }.trimmed()
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.trimmed()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid_parts(&self) -> (&BigInt, i64) {
        (&self.mid, self.exp)
    }

    /// Enlarges the radius by `extra`.
    pub fn add_error(mut self, extra: Mag) -> Self {
        self.rad = self.rad.add_up(extra);
        self
    }

    fn trimmed(mut self) -> Self {
        let bits = bits_of(&self.mid);
        let keep = self.prec.max(8) as i64;
        if bits > keep {
            let sh = (bits - keep) as usize;
            // Floor shift: the discarded part lies in [0, 2^(exp+sh)).
            self.mid >>= sh;
            self.exp += sh as i64;
            self.rad = self.rad.add_up(Mag::pow2(self.exp));
        }
        if self.mid.is_zero() {
            self.exp = self.exp.max(self.rad.exponent());
        }
        self
    }

    /// Upper bound of `|mid · 2^exp|`.
    pub fn mid_abs_upper(&self) -> Mag {
        Mag::from_biguint_up(self.mid.magnitude()).mul_2exp(self.exp)
    }

    fn mid_abs_lower(&self) -> Mag {
        Mag::from_biguint_down(self.mid.magnitude()).mul_2exp(self.exp)
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_upper().add_up(self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid_abs_lower().sub_down(self.rad)
    }

    /// Exact comparison of `|mid|` against `rad`.
    fn cmp_mid_rad(&self) -> Ordering {
        if self.rad.is_zero() {
            return if self.mid.is_zero() { Ordering::Equal } else { Ordering::Greater };
        }
        if self.mid.is_zero() {
            return Ordering::Less;
        }
        let e = self.exp.min(self.rad.exponent());
        let lhs = self.mid.magnitude() << (self.exp - e) as usize;
        let rhs = BigUint::from(self.rad.mantissa()) << (self.rad.exponent() - e) as usize;
        lhs.cmp(&rhs)
    }

    pub fn contains_zero(&self) -> bool {
        self.cmp_mid_rad() != Ordering::Greater
    }

    /// True if every point of the ball is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    /// True if every point of the ball is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    /// Relative accuracy in bits: `log2(|mid| / rad)`; +∞ for an exact ball.
    pub fn rel_accuracy_bits(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::INFINITY;
        }
        self.log2_abs_mid() - self.rad.log2()
    }

    /// Approximate `log2 |mid|`.
    pub fn log2_abs_mid(&self) -> f64 {
        if self.mid.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = bits_of(&self.mid);
        let sh = (b - 60).max(0) as usize;
        let top = (self.mid.magnitude() >> sh).to_f64().unwrap_or(1.0);
        top.log2() + (sh as i64 + self.exp) as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.mid.is_zero() {
            return 0.0;
        }
        let b = bits_of(&self.mid);
        let sh = (b - 60).max(0) as usize;
        let top = (&self.mid >> sh).to_f64().unwrap_or(0.0);
        let e = (sh as i64 + self.exp).clamp(-3000, 3000) as i32;
        if e < -1000 {
            // avoid a temporary underflow to zero before the product
            return top * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        }
        top * 2f64.powi(e)
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mid << self.exp as usize)
        } else {
            Rational::new(self.mid.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Rational upper bound of the radius.
    pub fn rad_rational(&self) -> Rational {
        let m = BigInt::from(self.rad.mantissa());
        let e = self.rad.exponent();
        if e >= 0 {
            Rational::from_integer(m << e as usize)
        } else {
            Rational::new(m, BigInt::one() << (-e) as usize)
        }
    }

    /// True if the two balls intersect.
    pub fn overlaps(&self, other: &BallReal) -> bool {
        let diff = (self.mid_rational() - other.mid_rational()).abs();
        diff <= self.rad_rational() + other.rad_rational()
    }

    /// True if `other` lies entirely inside `self`.
    pub fn contains(&self, other: &BallReal) -> bool {
        let diff = (self.mid_rational() - other.mid_rational()).abs();
        diff + other.rad_rational() <= self.rad_rational()
    }

    /// True if the exact rational `q` lies in the ball.
    pub fn contains_rational(&self, q: &Rational) -> bool {
        (self.mid_rational() - q).abs() <= self.rad_rational()
    }

    /// Upper bound of `|self - other|` over both balls.
    pub fn distance_upper(&self, other: &BallReal) -> Mag {
        let d = (self.mid_rational() - other.mid_rational()).abs();
        let dm = rational_mag_up(&d);
        dm.add_up(self.rad).add_up(other.rad)
    }

    pub fn mul_2exp(&self, e: i64) -> Self {
        BallReal { mid: self.mid.clone(), exp: self.exp + e, rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.mid.is_negative() {
            r.mid = -r.mid;
        }
        r
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BallReal::from_int(1, self.prec);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// `self / other`; `None` if the divisor ball contains zero.
    pub fn checked_div(&self, other: &BallReal) -> Option<BallReal> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let k = (prec as i64 + 2 + bits_of(&other.mid) - bits_of(&self.mid)).max(0);
        let q = (&self.mid << k as usize) / &other.mid;
        let exp = self.exp - k - other.exp;
        // Truncation error below one unit.
        let mut rad = Mag::pow2(exp);
        if !self.rad.is_zero() || !other.rad.is_zero() {
            let x_up = self.mid_abs_upper();
            let y_up = other.mid_abs_upper();
            let y_lo = other.mid_abs_lower();
            let num = x_up.mul_up(other.rad).add_up(y_up.mul_up(self.rad));
            let den = y_lo.mul_down(y_lo.sub_down(other.rad));
            rad = rad.add_up(num.div_up(den));
        }
        Some(BallReal { mid: q, exp, rad, prec }.trimmed())
    }

    pub fn recip(&self) -> Option<BallReal> {
        BallReal::from_int(1, self.prec).checked_div(self)
    }

    pub fn div_int(&self, k: i64) -> BallReal {
        self.checked_div(&BallReal::from_int(k, self.prec)).expect("division by zero integer")
    }

    pub fn mul_rational(&self, q: &Rational) -> BallReal {
        let prec = self.prec;
        let num = BallReal::from_int(q.numer().clone(), prec.max(q.numer().bits() as u32));
        let den = BallReal::from_int(q.denom().clone(), prec.max(q.denom().bits() as u32));
        (self * &num).with_prec(prec).checked_div(&den).expect("nonzero denominator").with_prec(prec)
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_to_decimal(&self, digits: usize) -> String {
        decimal_string(&self.mid, self.exp, digits)
    }

    /// Significant decimal digits that the working precision supports.
    pub fn default_digits(&self) -> usize {
        ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

/// Upper magnitude bound of a rational.
pub fn rational_mag_up(q: &Rational) -> Mag {
    if q.is_zero() {
        return Mag::ZERO;
    }
    let n = Mag::from_biguint_up(q.numer().magnitude());
    let d = Mag::from_biguint_down(q.denom().magnitude());
    n.div_up(d)
}

fn decimal_string(mid: &BigInt, exp: i64, digits: usize) -> String {
    if mid.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let neg = mid.sign() == Sign::Minus;
    let mag = mid.magnitude();
    // log10 estimate of |mid · 2^exp|
    let b = mag.bits() as i64;
    let sh = (b - 60).max(0) as usize;
    let top = (mag >> sh).to_f64().unwrap_or(1.0);
    let l10 = (top.log2() + (sh as i64 + exp) as f64) * std::f64::consts::LOG10_2;
    let mut e10 = l10.floor() as i64;
    let scaled = |e10: i64| -> BigUint {
        // round(|mid| · 2^exp · 10^(digits-1-e10))
        let p10 = digits as i64 - 1 - e10;
        let mut num = mag.clone();
        let mut den = BigUint::one();
        if p10 >= 0 {
            num *= BigUint::from(10u32).pow(p10 as u32);
        } else {
            den *= BigUint::from(10u32).pow((-p10) as u32);
        }
        if exp >= 0 {
            num <<= exp as usize;
        } else {
            den <<= (-exp) as usize;
        }
        (num * 2u32 + &den) / (den * 2u32)
    };
    let limit = BigUint::from(10u32).pow(digits as u32);
    let mut n = scaled(e10);
    if n >= limit {
        e10 += 1;
        n = scaled(e10);
    } else if n < BigUint::from(10u32).pow(digits as u32 - 1) {
        e10 -= 1;
        n = scaled(e10);
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

fn add_impl(a: &BallReal, b: &BallReal, negate_b: bool) -> BallReal {
    let prec = a.prec.max(b.prec);
    let mut rad = a.rad.add_up(b.rad);
    if b.mid.is_zero() {
        let mut r = a.clone();
        r.rad = rad;
        r.prec = prec;
        return r.trimmed();
    }
    if a.mid.is_zero() {
        let mut r = b.clone();
        if negate_b {
            r.mid = -r.mid;
        }
        r.rad = rad;
        r.prec = prec;
        return r.trimmed();
    }
    let top = (a.exp + bits_of(&a.mid)).max(b.exp + bits_of(&b.mid));
    let floor_exp = top - prec as i64 - 16;
    let e = a.exp.min(b.exp).max(floor_exp);
    let align = |x: &BigInt, xe: i64, rad: &mut Mag| -> BigInt {
        if xe >= e {
            x << (xe - e) as usize
        } else {
            *rad = rad.add_up(Mag::pow2(e));
            x >> (e - xe) as usize
        }
    };
    let ma = align(&a.mid, a.exp, &mut rad);
    let mut mb = align(&b.mid, b.exp, &mut rad);
    if negate_b {
        mb = -mb;
    }
    BallReal { mid: ma + mb, exp: e, rad, prec }.trimmed()
}

impl<'a> Add<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn add(self, rhs: &'a BallReal) -> BallReal {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn sub(self, rhs: &'a BallReal) -> BallReal {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a BallReal> for &'a BallReal {
    type Output = BallReal;
    fn mul(self, rhs: &'a BallReal) -> BallReal {
        let prec = self.prec.max(rhs.prec);
        let mut rad = Mag::ZERO;
        if !rhs.rad.is_zero() {
            rad = rad.add_up(self.mid_abs_upper().mul_up(rhs.rad));
        }
        if !self.rad.is_zero() {
            rad = rad.add_up(rhs.mid_abs_upper().mul_up(self.rad));
            rad = rad.add_up(self.rad.mul_up(rhs.rad));
        }
        BallReal { mid: &self.mid * &rhs.mid, exp: self.exp + rhs.exp, rad, prec }.trimmed()
    }
}

impl Add for BallReal {
    type Output = BallReal;
    fn add(self, rhs: BallReal) -> BallReal {
        &self + &rhs
    }
}

impl Sub for BallReal {
    type Output = BallReal;
    fn sub(self, rhs: BallReal) -> BallReal {
        &self - &rhs
    }
}

impl Mul for BallReal {
    type Output = BallReal;
    fn mul(self, rhs: BallReal) -> BallReal {
        &self * &rhs
    }
}

impl Neg for BallReal {
    type Output = BallReal;
    fn neg(mut self) -> BallReal {
        self.mid = -self.mid;
        self
    }
}

impl Neg for &BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        -(self.clone())
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "[{} +/- {}]", self.mid_to_decimal(digits), self.rad.to_sci_string())
    }
}
