//! Rational functions stored as products of monic linear factors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rationalfn::profile::{Family, Profile};
use crate::{Error, Rational, Result};

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn half(v: i64) -> Rational {
    Rational::new(BigInt::from(v), BigInt::from(2))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `scalar · ∏ (t − r)^m / ∏ (t − r')^{m'}` with rational roots.
///
/// Numerator and denominator are kept separately (common roots are not
/// cancelled), so structural degree counts match the defining products.
/// Poles are labelled by `k = −r' − pole_offset`, which must be an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProductRep {
    scalar: Rational,
    numerator: Vec<(Rational, u32)>,
    denominator: Vec<(Rational, u32)>,
    pole_offset: Rational,
}

fn merge(roots: Vec<(Rational, u32)>) -> Vec<(Rational, u32)> {
    let mut map: BTreeMap<Rational, u32> = BTreeMap::new();
    for (r, m) in roots {
        if m > 0 {
            *map.entry(r).or_insert(0) += m;
        }
    }
    map.into_iter().collect()
}

impl LinearProductRep {
    pub fn new(
        scalar: Rational,
        numerator: Vec<(Rational, u32)>,
        denominator: Vec<(Rational, u32)>,
        pole_offset: Rational,
    ) -> Result<Self> {
        let rep = LinearProductRep {
            scalar,
            numerator: merge(numerator),
            denominator: merge(denominator),
            pole_offset,
        };
        for (r, _) in &rep.denominator {
            let k = -r - &rep.pole_offset;
            if !k.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "pole {r} is not of the form -(k + {})",
                    rep.pole_offset
                )));
            }
        }
        Ok(rep)
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn numerator_roots(&self) -> &[(Rational, u32)] {
        &self.numerator
    }

    pub fn denominator_roots(&self) -> &[(Rational, u32)] {
        &self.denominator
    }

    pub fn pole_offset(&self) -> &Rational {
        &self.pole_offset
    }

    pub fn numerator_degree(&self) -> u64 {
        self.numerator.iter().map(|(_, m)| *m as u64).sum()
    }

    pub fn denominator_degree(&self) -> u64 {
        self.denominator.iter().map(|(_, m)| *m as u64).sum()
    }

    /// `deg(denominator) − deg(numerator)`.
    pub fn degree_gap(&self) -> i64 {
        self.denominator_degree() as i64 - self.numerator_degree() as i64
    }

    pub fn is_proper(&self) -> bool {
        self.degree_gap() >= 1
    }

    pub fn max_pole_order(&self) -> u32 {
        self.denominator.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }

    pub fn multiplicity_at(&self, root: &Rational) -> u32 {
        self.denominator.iter().find(|(r, _)| r == root).map_or(0, |(_, m)| *m)
    }

    pub fn pole_index(&self, root: &Rational) -> i64 {
        let k = -root - &self.pole_offset;
        i64::try_from(k.to_integer()).expect("pole index fits i64")
    }

    /// The same function multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        LinearProductRep { scalar: &self.scalar * c, ..self.clone() }
    }

    /// Exact value at a rational point that is not a pole.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if self.denominator.iter().any(|(r, _)| r == t) {
            return Err(Error::Pole(t.to_string()));
        }
        // Accumulate numerator and denominator separately, reduce once.
        let (tn, td) = (t.numer(), t.denom());
        let mut num = self.scalar.numer().clone();
        let mut den = self.scalar.denom().clone();
        for (r, m) in &self.numerator {
            // t − r = (tn·rd − rn·td) / (td·rd)
            let f_num = tn * r.denom() - r.numer() * td;
            let f_den = td * r.denom();
            for _ in 0..*m {
                num *= &f_num;
                den *= &f_den;
            }
        }
        for (r, m) in &self.denominator {
            let f_num = tn * r.denom() - r.numer() * td;
            let f_den = td * r.denom();
            for _ in 0..*m {
                num *= &f_den;
                den *= &f_num;
            }
        }
        Ok(Rational::new(num, den))
    }
}

/// `R_n(t) = 2^{6n} n!^{s−3} (2t+n) ∏_{j=1}^{3n} (t−n+j−½) / ∏_{j=0}^{n} (t+j)^s`.
///
/// The factor `2t + n` is stored as `2 · (t + n/2)`.
pub fn build_uniform(s: u32, n: u64) -> Result<LinearProductRep> {
    Profile::uniform(s, n)?;
    let n_i = n as i64;
    let scalar = Rational::from_integer((BigInt::one() << (6 * n) as usize) * factorial(n).pow(s - 3) * 2);
    let mut num = vec![(half(-n_i), 1)];
    for j in 1..=3 * n_i {
        // t − n + j − ½ = t − (n − j + ½)
        num.push((half(2 * (n_i - j) + 1), 1));
    }
    let den = (0..=n_i).map(|j| (int(-j), s)).collect();
    LinearProductRep::new(scalar, num, den, Rational::zero())
}

/// `γ_n = 4^{h_0−1} ∏_{j=2}^{s} (h_0−2h_j)! / (h_1−½)!²` for a general profile.
pub fn gamma_n(profile: &Profile) -> Rational {
    let h0 = profile.h0();
    let mut num = BigInt::one() << (2 * (h0 - 1)) as usize;
    for j in 2..=profile.s() as usize {
        num *= factorial(h0 - 1 - 2 * profile.h_half(j));
    }
    let den = factorial(profile.h_half(1)).pow(2);
    Rational::new(num, den)
}

/// `R_n(t) = γ_n (2t+h_0) (t+1)_{h_0−1} / ∏_j (t+h_j)_{1+h_0−2h_j}`.
pub fn build_general(profile: &Profile) -> Result<LinearProductRep> {
    profile.validate()?;
    if profile.family() != Family::General {
        return Err(Error::InvalidArgument("build_general needs a general-family profile".into()));
    }
    let h0 = profile.h0() as i64;
    let scalar = gamma_n(profile) * int(2);
    let mut num = vec![(half(-h0), 1)];
    for i in 1..h0 {
        num.push((int(-i), 1));
    }
    let mut den = Vec::new();
    for j in 1..=profile.s() as usize {
        let start = profile.h_half(j) as i64;
        // (t + h_j)_{1+h0−2h_j}: roots −(k + ½) for k = η_j n .. h0 − 1 − η_j n
        for k in start..=(h0 - 1 - start) {
            den.push((half(-(2 * k + 1)), 1));
        }
    }
    LinearProductRep::new(scalar, num, den, half(1))
}

/// Builds the profile's rational function.
pub fn build(profile: &Profile) -> Result<LinearProductRep> {
    match profile.family() {
        Family::Uniform => build_uniform(profile.s(), profile.n()),
        Family::General => build_general(profile),
    }
}

/// The comparison function
/// `2^{4n} n!^{s−2} (2t+n) ∏_{j=1}^n (t−n+j−½) ∏_{j=1}^n (t+n+j−½) / ∏_{j=0}^n (t+j)^s`.
pub fn build_companion(s: u32, n: u64) -> Result<LinearProductRep> {
    Profile::uniform(s, n)?;
    let n_i = n as i64;
    let scalar = Rational::from_integer((BigInt::one() << (4 * n) as usize) * factorial(n).pow(s - 2) * 2);
    let mut num = vec![(half(-n_i), 1)];
    for j in 1..=n_i {
        num.push((half(2 * (n_i - j) + 1), 1));
        num.push((half(-(2 * (n_i + j) - 1)), 1));
    }
    let den = (0..=n_i).map(|j| (int(-j), s)).collect();
    LinearProductRep::new(scalar, num, den, Rational::zero())
}

/// `R_n(t) = ŵR_n(t) · 2^{2n} ∏_{j=1}^n (t+j−½) / n!`, checked exactly at `t`.
pub fn companion_identity_check(s: u32, n: u64, t: &Rational) -> Result<bool> {
    let main = build_uniform(s, n)?;
    let alt = build_companion(s, n)?;
    let lhs = main.eval(t)?;
    let mut extra = Rational::from_integer(BigInt::one() << (2 * n) as usize) / Rational::from_integer(factorial(n));
    for j in 1..=n as i64 {
        extra *= t + half(2 * j - 1);
    }
    Ok(lhs == alt.eval(t)? * extra)
}
