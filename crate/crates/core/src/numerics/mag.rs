//! Low-precision unsigned magnitudes with directed rounding.
//!
//! A [`Mag`] is `man · 2^exp` with a mantissa of at most [`MAG_BITS`] bits and
//! an unbounded (i64) exponent. Operations named `*_up` round toward +∞ and
//! those named `*_down` toward 0, so a chain of `up` operations always yields an
//! upper bound of the exact result.

use std::cmp::Ordering;

use num_bigint::BigUint;

pub const MAG_BITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn normalize(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Mag { man: man as u64, exp };
        }
        let sh = bits - MAG_BITS;
        let mut m = man >> sh;
        if up && (man & ((1u128 << sh) - 1)) != 0 {
            m += 1;
        }
        Mag { man: m as u64, exp: exp + sh as i64 }
    }

    pub fn from_u64(x: u64) -> Mag {
        Mag::normalize(x as u128, 0, true)
    }

    /// Upper bound of a finite non-negative `f64`.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x.is_finite() && x >= 0.0);
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, e) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Mag::normalize(man as u128, e, true)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn from_biguint_up(x: &BigUint) -> Mag {
        Self::from_biguint(x, true)
    }

    pub fn from_biguint_down(x: &BigUint) -> Mag {
        Self::from_biguint(x, false)
    }

    fn from_biguint(x: &BigUint, up: bool) -> Mag {
        let bits = x.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= 64 {
            let v = x.iter_u64_digits().next().unwrap_or(0);
            return Mag::normalize(v as u128, 0, up);
        }
        let sh = bits - 64;
        let top: u64 = (x >> sh).iter_u64_digits().next().unwrap_or(0);
        let inexact = x.trailing_zeros().is_some_and(|tz| tz < sh);
        let m = Mag::normalize(top as u128, sh as i64, up);
        if up && inexact {
            m.add_ulp()
        } else {
            m
        }
    }

    fn add_ulp(self) -> Mag {
        Mag::normalize(self.man as u128 + 1, self.exp, true)
    }

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    pub fn mantissa(self) -> u64 {
        self.man
    }

    pub fn exponent(self) -> i64 {
        self.exp
    }

    /// Exponent of the leading bit plus one, i.e. `self < 2^top`.
    pub fn top(self) -> i64 {
        if self.man == 0 {
            i64::MIN / 4
        } else {
            self.exp + (64 - self.man.leading_zeros()) as i64
        }
    }

    pub fn add_up(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let shift = hi.exp - lo.exp;
        if shift > 90 {
            // lo < 2^(lo.exp + 31) <= 2^hi.exp, one unit of hi covers it.
            return hi.add_ulp();
        }
        Mag::normalize(((hi.man as u128) << shift) + lo.man as u128, lo.exp, true)
    }

    pub fn mul_up(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize(self.man as u128 * other.man as u128, self.exp + other.exp, true)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize(self.man as u128 * other.man as u128, self.exp + other.exp, false)
    }

    pub fn mul_u64_up(self, k: u64) -> Mag {
        self.mul_up(Mag::from_u64(k))
    }

    /// Upper bound of `self / den`; `den` must be a lower bound of the divisor.
    pub fn div_up(self, den: Mag) -> Mag {
        assert!(!den.is_zero(), "division by a zero magnitude");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let q = ((self.man as u128) << 64) / den.man as u128 + 1;
        Mag::normalize(q, self.exp - den.exp - 64, true)
    }

    /// Lower bound of `self - other`, clamped at zero.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.is_zero() {
            return self;
        }
        if self.cmp(&other) != Ordering::Greater {
            return Mag::ZERO;
        }
        let shift = self.exp - other.exp;
        if shift > 90 {
            // other < 2^self.exp, so one unit of self more than covers it.
            return Mag::normalize(self.man as u128 - 1, self.exp, false);
        }
        if shift >= 0 {
            let a = (self.man as u128) << shift;
            Mag::normalize(a - other.man as u128, other.exp, false)
        } else {
            // other.exp > self.exp but other < self: bring other down exactly.
            let a = self.man as u128;
            let b = (other.man as u128) << (-shift);
            Mag::normalize(a - b, self.exp, false)
        }
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            self
        } else {
            Mag { man: self.man, exp: self.exp + e }
        }
    }

    /// Approximate `log2(self)`; `-inf` for zero.
    pub fn log2(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    /// Approximate value; underflows to 0 and overflows to +∞ outside f64 range.
    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    /// Decimal rendering of an upper bound, e.g. `"3.71e-80"`.
    pub fn to_sci_string(self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let l10 = self.log2() * std::f64::consts::LOG10_2;
        let mut e10 = l10.floor();
        let mut m = 10f64.powf(l10 - e10);
        // Round the three-digit mantissa upward.
        m = (m * 100.0 * (1.0 + 1e-12)).ceil() / 100.0;
        if m >= 10.0 {
            m /= 10.0;
            e10 += 1.0;
        }
        format!("{:.2}e{}", m, e10 as i64)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = (self.man as u128) << (self.exp - e);
        let b = (other.man as u128) << (other.exp - e);
        a.cmp(&b)
    }
}
