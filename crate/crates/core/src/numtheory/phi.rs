//! The cancellation factor `Φ_n = ∏ p^{φ₀(n/p)}` and its growth exponent.

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::carry::{carry_min_table, carry_min_value, StepFunction};
use super::digamma::digamma_rational;
use super::factored::FactoredInteger;
use super::sieve::sieve_primes;
use crate::numerics::ball::BallReal;
use crate::{Profile, Rational, Result};

/// Primes in the profile's `Φ_n` range.
fn phi_primes(profile: &Profile) -> Vec<u64> {
    let (lower_sq, upper) = profile.phi_prime_range();
    // strict lower cutoff p² > L, exact integer comparison
    sieve_primes(upper).into_iter().filter(|&p| p * p > lower_sq).collect()
}

/// `Φ_n` for the profile, exponents read from the exact `φ₀` table.
pub fn capital_phi(profile: &Profile) -> Result<FactoredInteger> {
    let table = carry_min_table(&profile.carry_spec())?;
    Ok(capital_phi_with_table(profile, &table))
}

pub fn capital_phi_with_table(profile: &Profile, table: &StepFunction) -> FactoredInteger {
    let n = profile.n() as i64;
    let mut out = FactoredInteger::one();
    for p in phi_primes(profile) {
        let e = table.eval(Rational64::new(n, p as i64));
        out.set(p, e.max(0) as u32);
    }
    out
}

/// `Φ_n` with every exponent computed by direct minimization over `y`.
pub fn capital_phi_pointwise(profile: &Profile) -> FactoredInteger {
    let spec = profile.carry_spec();
    let n = profile.n() as i64;
    let mut out = FactoredInteger::one();
    for p in phi_primes(profile) {
        let e = carry_min_value(&spec, Rational64::new(n, p as i64));
        out.set(p, e.max(0) as u32);
    }
    out
}

fn r64_to_big(x: Rational64) -> Rational {
    Rational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// `lim (1/n) log Φ_n` from the profile's `φ₀` table.
pub fn phi_exponent(profile: &Profile, prec: u32) -> Result<BallReal> {
    let table = carry_min_table(&profile.carry_spec())?;
    Ok(phi_exponent_of_table(&table, &profile.mu(), prec))
}

/// `Σ_r c_r [ψ(1+v_r) − ψ(1+u_r)] + Σ_r c_r · max(0, min(1/u_r, μ) − max(1/v_r, 1))`
/// over the intervals `[u_r, v_r)` carrying value `c_r`.
///
/// The digamma part counts primes `p <= n` (where `n/p` runs over `[m+u, m+v)`,
/// `m >= 1`); the clipped part counts primes `n < p <= μn`.
pub fn phi_exponent_of_table(table: &StepFunction, mu: &Rational, prec: u32) -> BallReal {
    let wp = prec + 16;
    let mut acc = BallReal::zero(wp);
    let mut clipped = Rational::zero();
    let one = Rational::one();
    for (u, v, c) in table.intervals() {
        if c == 0 {
            continue;
        }
        let (u, v) = (r64_to_big(u), r64_to_big(v));
        let psi = |x: &Rational| {
            let y = x + &one;
            digamma_rational(y.numer().to_u64().unwrap(), y.denom().to_u64().unwrap(), wp).unwrap()
        };
        let diff = &psi(&v) - &psi(&u);
        acc = &acc + &diff.mul_rational(&Rational::from_integer(BigInt::from(c)));
        let upper = if u.is_zero() { mu.clone() } else { u.recip().min(mu.clone()) };
        let lower = v.recip().max(one.clone());
        let width = &upper - &lower;
        if width.is_positive() {
            clipped += width * Rational::from_integer(BigInt::from(c));
        }
    }
    (&acc + &BallReal::from_rational(&clipped, wp)).with_prec(prec)
}

/// `(1/n) log Φ_n` computed by brute force over the primes in `(√L, U]`.
pub fn sieved_log_phi_over_n(table: &StepFunction, n: u64, lower_sq: u64, upper: u64) -> f64 {
    let total: f64 = sieve_primes(upper)
        .into_iter()
        .filter(|&p| p * p > lower_sq)
        .map(|p| table.eval(Rational64::new(n as i64, p as i64)) as f64 * (p as f64).ln())
        .sum();
    total / n as f64
}
