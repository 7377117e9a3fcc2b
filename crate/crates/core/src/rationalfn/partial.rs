//! Exact partial fractions of a [`LinearProductRep`].
//!
//! At a pole `ρ` of order `m`, write `u = t − ρ`. Every other factor is
//! `(u + α) = α (1 + u/α)` with `α = ρ − r`, so
//! `R = u^{z−m} · C · exp(L(u))` where `C = scalar · ∏ α^{w_α}` and
//! `L(u) = Σ_j (−1)^{j+1}/j · (Σ_α w_α α^{−j}) u^j`. A numerator root equal
//! to `ρ` contributes the shift `u^z`. The power sums use one integer
//! numerator per `j` over a common denominator, and `C` is kept factored so
//! the final products cancel cheaply.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::product::LinearProductRep;
use crate::numtheory::sieve::sieve_primes;
use crate::{Error, Mode, Rational, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

/// Coefficients `a_{i,k}` of `Σ a_{i,k} / (t − ρ_k)^i`, `i = 1..=max_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractionTable {
    max_order: u32,
    pole_offset: Rational,
    poles: Vec<Pole>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub index: i64,
    pub root: Rational,
    pub multiplicity: u32,
    /// `coeffs[i − 1] = a_{i,k}`, zero above the multiplicity.
    pub coeffs: Vec<Rational>,
}

impl PartialFractionTable {
    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn pole_offset(&self) -> &Rational {
        &self.pole_offset
    }

    /// Pole indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.poles.iter().map(|p| p.index)
    }

    pub fn pole(&self, k: i64) -> Option<&Pole> {
        self.poles.binary_search_by_key(&k, |p| p.index).ok().map(|i| &self.poles[i])
    }

    /// `a_{i,k}`; zero for absent poles or orders.
    pub fn coeff(&self, i: u32, k: i64) -> Rational {
        if i == 0 || i > self.max_order {
            return Rational::zero();
        }
        self.pole(k).map_or_else(Rational::zero, |p| p.coeffs[i as usize - 1].clone())
    }

    pub fn set_coeff(&mut self, i: u32, k: i64, value: Rational) -> Result<()> {
        if i == 0 || i > self.max_order {
            return Err(Error::InvalidArgument(format!("order {i} outside 1..={}", self.max_order)));
        }
        let pos = self
            .poles
            .binary_search_by_key(&k, |p| p.index)
            .map_err(|_| Error::InvalidArgument(format!("no pole with index {k}")))?;
        self.poles[pos].coeffs[i as usize - 1] = value;
        Ok(())
    }

    /// Exact value of `Σ a_{i,k}/(t − ρ_k)^i`.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for p in &self.poles {
            let u = t - &p.root;
            if u.is_zero() {
                return Err(Error::Pole(t.to_string()));
            }
            let inv = u.recip();
            let mut pow = inv.clone();
            for c in &p.coeffs {
                if !c.is_zero() {
                    acc += c * &pow;
                }
                pow *= &inv;
            }
        }
        Ok(acc)
    }

    /// `Σ_{i,k} |a_{i,k}| / c_k^i` with `c_k = t_0 − ρ_k`, the total variation of
    /// the weight representing `ν ↦ R(t_0 + ν)` as a moment sequence.
    /// `None` if some `c_k <= 0`.
    pub fn moment_weight(&self, t0: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for p in &self.poles {
            let c = t0 - &p.root;
            if !c.is_positive() {
                return None;
            }
            let inv = c.recip();
            let mut pow = inv.clone();
            for a in &p.coeffs {
                if !a.is_zero() {
                    acc += a.abs() * &pow;
                }
                pow *= &inv;
            }
        }
        Some(acc)
    }
}

/// Prime factorization of a rational with a possibly unfactored cofactor.
#[derive(Debug, Clone)]
struct FactoredRational {
    sign: Sign,
    exps: BTreeMap<u64, i64>,
    cof_num: BigInt,
    cof_den: BigInt,
}

fn strip(value: &mut BigInt, p: u64) -> i64 {
    let bp = BigInt::from(p);
    let mut e = 0;
    loop {
        let (q, r) = value.div_rem(&bp);
        if !r.is_zero() {
            return e;
        }
        *value = q;
        e += 1;
    }
}

impl FactoredRational {
    fn trial(x: &Rational, primes: &[u64]) -> Self {
        let sign = x.numer().sign();
        let mut num = x.numer().abs();
        let mut den = x.denom().clone();
        let mut exps = BTreeMap::new();
        for &p in primes {
            let e = strip(&mut num, p) - strip(&mut den, p);
            if e != 0 {
                exps.insert(p, e);
            }
        }
        FactoredRational { sign, exps, cof_num: num, cof_den: den }
    }

    fn mul_small(&mut self, p: u64, e: i64) {
        let v = self.exps.entry(p).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exps.remove(&p);
        }
    }

    /// `α^w` for a rational `α` whose numerator and denominator factor over small primes.
    fn mul_pow(&mut self, alpha: &Rational, w: i64) {
        if alpha.is_negative() && w % 2 != 0 {
            self.sign = -self.sign;
        }
        for (v, s) in [(alpha.numer().abs(), 1i64), (alpha.denom().clone(), -1)] {
            let mut v = v;
            let mut p = 2u64;
            while !v.is_one() {
                let e = strip(&mut v, p);
                if e > 0 {
                    self.mul_small(p, s * e * w);
                }
                p += if p == 2 { 1 } else { 2 };
                if p > TRIAL_LIMIT && !v.is_one() {
                    // large prime factor of a root difference: keep as cofactor
                    let pow = v.pow(w.unsigned_abs() as u32);
                    if (s > 0) == (w > 0) {
                        self.cof_num *= pow;
                    } else {
                        self.cof_den *= pow;
                    }
                    break;
                }
            }
        }
    }

    fn parts(&self) -> (BigInt, BigInt) {
        let mut num = self.cof_num.clone();
        let mut den = self.cof_den.clone();
        for (&p, &e) in &self.exps {
            let pow = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pow;
            } else {
                den *= pow;
            }
        }
        (num, den)
    }
}

/// Largest power of `p` (at most `p^cap`) dividing `v`.
fn common_power(v: &BigInt, p: u64, cap: i64) -> BigInt {
    let bp = BigInt::from(p);
    let mut g = BigInt::one();
    let mut rest = v.clone();
    for _ in 0..cap {
        let (q, r) = rest.div_rem(&bp);
        if !r.is_zero() {
            break;
        }
        rest = q;
        g *= &bp;
    }
    g
}

struct PoleContext<'a> {
    rep: &'a LinearProductRep,
    scalar: &'a FactoredRational,
}

impl PoleContext<'_> {
    fn expand(&self, root: &Rational, mult: u32, max_order: u32) -> Pole {
        let rep = self.rep;
        let mut weights: BTreeMap<Rational, i64> = BTreeMap::new();
        let mut z = 0u32;
        for (r, e) in rep.numerator_roots() {
            if r == root {
                z = *e;
            } else {
                *weights.entry(root - r).or_insert(0) += *e as i64;
            }
        }
        for (r, e) in rep.denominator_roots() {
            if r != root {
                *weights.entry(root - r).or_insert(0) -= *e as i64;
            }
        }
        weights.retain(|_, w| *w != 0);

        let mut c = self.scalar.clone();
        for (alpha, &w) in &weights {
            c.mul_pow(alpha, w);
        }
        let (c_num, c_den) = c.parts();

        let terms = mult.saturating_sub(z) as usize;
        let mut coeffs = vec![Rational::zero(); max_order as usize];
        if terms > 0 {
            let e = exp_series(&weights, terms);
            for (j, ej) in e.iter().enumerate() {
                // coefficient of u^{z + j} in R · u^m belongs to order m − z − j
                let order = mult as usize - z as usize - j;
                coeffs[order - 1] = times_factored(ej, &c, &c_num, &c_den);
            }
        }
        if c.sign == Sign::Minus {
            for v in coeffs.iter_mut() {
                *v = -v.clone();
            }
        }
        Pole { index: rep.pole_index(root), root: root.clone(), multiplicity: mult, coeffs }
    }
}

/// Coefficients `E_0..E_{terms−1}` of `∏ (1 + u/α)^{w_α}`.
fn exp_series(weights: &BTreeMap<Rational, i64>, terms: usize) -> Vec<Rational> {
    // 1/α = N_α / D with D = lcm of |numer(α)|
    let den = weights.keys().fold(BigInt::one(), |acc, a| acc.lcm(&a.numer().abs()));
    let inv: Vec<(BigInt, i64)> = weights
        .iter()
        .map(|(a, &w)| (a.denom() * (&den / a.numer()), w))
        .collect();
    let mut lcoef = vec![Rational::zero(); terms];
    let mut pows: Vec<BigInt> = inv.iter().map(|(v, _)| v.clone()).collect();
    let mut den_pow = den.clone();
    for (j, slot) in lcoef.iter_mut().enumerate().skip(1) {
        let mut acc = BigInt::zero();
        for (p, (_, w)) in pows.iter().zip(&inv) {
            acc += p * BigInt::from(*w);
        }
        // (−1)^{j+1}/j · Σ w α^{−j}; stored as j·L_j for the recurrence
        let sign = if j % 2 == 1 { 1 } else { -1 };
        *slot = Rational::new(acc * sign, den_pow.clone());
        for (p, (v, _)) in pows.iter_mut().zip(&inv) {
            *p *= v;
        }
        den_pow *= &den;
    }
    // E_j = (1/j) Σ_{l=1}^{j} (l L_l) E_{j−l}
    let mut e = vec![Rational::one()];
    for j in 1..terms {
        let mut acc = Rational::zero();
        for l in 1..=j {
            if !lcoef[l].is_zero() && !e[j - l].is_zero() {
                acc += &lcoef[l] * &e[j - l];
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(j)));
    }
    e
}

/// `e · |C|` with the cancellation done through `C`'s factorization.
fn times_factored(e: &Rational, c: &FactoredRational, c_num: &BigInt, c_den: &BigInt) -> Rational {
    if e.is_zero() {
        return Rational::zero();
    }
    let (p, q) = (e.numer(), e.denom());
    let mut g1 = BigInt::one(); // gcd(p, c_den)
    let mut g2 = BigInt::one(); // gcd(q, c_num)
    for (&prime, &exp) in &c.exps {
        if exp < 0 {
            g1 *= common_power(p, prime, -exp);
        } else {
            g2 *= common_power(q, prime, exp);
        }
    }
    if !c.cof_den.is_one() {
        g1 *= (p / &g1).gcd(&c.cof_den);
    }
    if !c.cof_num.is_one() {
        g2 *= (q / &g2).gcd(&c.cof_num);
    }
    let num = (p / &g1) * (c_num / &g2);
    let den = (q / &g2) * (c_den / &g1);
    Rational::new_raw(num, den)
}

pub fn partial_fractions(rep: &LinearProductRep) -> Result<PartialFractionTable> {
    partial_fractions_with(rep, Mode::default())
}

/// Per-pole expansions, run through [`crate::exec::map_indexed`].
pub fn partial_fractions_with(rep: &LinearProductRep, mode: Mode) -> Result<PartialFractionTable> {
    if !rep.is_proper() {
        return Err(Error::Improper {
            numerator: rep.numerator_degree(),
            denominator: rep.denominator_degree(),
        });
    }
    let primes: Vec<u64> = sieve_primes(TRIAL_LIMIT);
    let scalar = FactoredRational::trial(rep.scalar(), &primes);
    let ctx = PoleContext { rep, scalar: &scalar };
    let max_order = rep.max_pole_order();
    let roots = rep.denominator_roots();
    let mut poles = crate::exec::map_indexed(mode, roots.len(), |i| {
        let (root, mult) = &roots[i];
        ctx.expand(root, *mult, max_order)
    });
    poles.sort_by_key(|p| p.index);
    debug_assert!(poles.iter().all(|p| p.index.to_i64().is_some()));
    Ok(PartialFractionTable { max_order, pole_offset: rep.pole_offset().clone(), poles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationalfn::product::{binomial, build_uniform};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simple_block() {
        // 2 / (t (t+1) (t+2)) = 1/t − 2/(t+1) + 1/(t+2)
        let rep = LinearProductRep::new(
            q(2, 1),
            vec![],
            (0..3).map(|j| (q(-j, 1), 1)).collect(),
            Rational::zero(),
        )
        .unwrap();
        let t = partial_fractions(&rep).unwrap();
        let got: Vec<_> = (0..3).map(|k| t.coeff(1, k)).collect();
        let want: Vec<_> = (0..3).map(|k| Rational::from_integer(binomial(2, k) * if k % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn double_pole_with_shift() {
        // t / (t^2 (t-1)) = 1/(t(t−1)): a_{1,0} = −1, a_{2,0} = 0, pole at 1 residue 1
        let rep = LinearProductRep::new(
            q(1, 1),
            vec![(q(0, 1), 1)],
            vec![(q(0, 1), 2), (q(1, 1), 1)],
            Rational::zero(),
        )
        .unwrap();
        let t = partial_fractions(&rep).unwrap();
        assert_eq!(t.coeff(1, 0), q(-1, 1));
        assert_eq!(t.coeff(2, 0), q(0, 1));
        assert_eq!(t.coeff(1, -1), q(1, 1));
        assert_eq!(t.eval(&q(3, 7)).unwrap(), rep.eval(&q(3, 7)).unwrap());
    }

    #[test]
    fn reconstruction_uniform() {
        let rep = build_uniform(5, 2).unwrap();
        let table = partial_fractions(&rep).unwrap();
        for t in [q(1, 3), q(-5, 7), q(22, 3)] {
            assert_eq!(table.eval(&t).unwrap(), rep.eval(&t).unwrap());
        }
    }

    #[test]
    fn improper_rejected() {
        let rep = LinearProductRep::new(q(1, 1), vec![(q(1, 1), 1)], vec![(q(0, 1), 1)], Rational::zero()).unwrap();
        assert!(matches!(partial_fractions(&rep), Err(Error::Improper { .. })));
    }

    #[test]
    fn sequential_equals_parallel() {
        let rep = build_uniform(7, 4).unwrap();
        let a = partial_fractions_with(&rep, Mode::Sequential).unwrap();
        let b = partial_fractions_with(&rep, Mode::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
