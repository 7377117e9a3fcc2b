//! The linear form `r_n = a_0 + Σ_{i even} a_i β(i)` assembled from a
//! partial-fraction table, and exact checks of its denominators.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numtheory::factored::valuation;
use crate::numtheory::{capital_phi, lcm_up_to, FactoredInteger};
use crate::rationalfn::{build_companion, partial_fractions, PartialFractionTable};
use crate::{Error, Family, Profile, Rational, Result};

/// `Σ_{ℓ=from}^{to} (−1)^ℓ / (ℓ+½)^i`; zero for an empty range.
pub fn inner_sum(i: u32, from: i64, to: i64) -> Rational {
    let mut acc = Rational::zero();
    for l in from..=to {
        acc += half_shift_term(i, l);
    }
    acc
}

fn half_shift_term(i: u32, l: i64) -> Rational {
    // (ℓ + ½)^{−i} = 2^i / (2ℓ+1)^i
    let num = BigInt::one() << i as usize;
    let den = BigInt::from(2 * l + 1).pow(i);
    let v = Rational::new(num, den);
    if l.rem_euclid(2) == 0 {
        v
    } else {
        -v
    }
}

/// How the alternating sum over `ν` is folded into `Σ_ℓ (−1)^ℓ/(ℓ+½)^i`.
///
/// Pole `k` carries the sign `(−1)^{k + sign_shift}`; its tail starts at
/// `ℓ = k − centre`, so a pole below the centre adds `Σ_{ℓ=k−centre}^{−1}` and one
/// above it subtracts `Σ_{ℓ=0}^{k−centre−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumConvention {
    pub sign_shift: i64,
    pub centre: i64,
}

impl SumConvention {
    /// The uniform family oriented so that `r_n = Σ_{ν>=1} R(ν−½)(−1)^{ν−1} > 0`:
    /// `(−1)^k`, centre `m = n/2`.
    pub fn uniform(n: u64) -> Self {
        SumConvention { sign_shift: 0, centre: n as i64 / 2 }
    }

    /// The general family: `(−1)^k`, centre `(h_0−1)/2`.
    pub fn general(h0: u64) -> Self {
        SumConvention { sign_shift: 0, centre: (h0 as i64 - 1) / 2 }
    }

    /// The comparison function summed from `ν = 1` with the same orientation:
    /// `(−1)^k`, centre 0.
    pub fn from_one() -> Self {
        SumConvention { sign_shift: 0, centre: 0 }
    }

    pub fn for_profile(profile: &Profile) -> Self {
        match profile.family() {
            Family::Uniform => Self::uniform(profile.n()),
            Family::General => Self::general(profile.h0()),
        }
    }

    fn sign(&self, k: i64) -> bool {
        (k + self.sign_shift).rem_euclid(2) == 0
    }

    /// The inner range attached to pole `k` and whether it is added.
    pub fn range(&self, k: i64) -> Option<(i64, i64, bool)> {
        match k.cmp(&self.centre) {
            std::cmp::Ordering::Less => Some((k - self.centre, -1, true)),
            std::cmp::Ordering::Greater => Some((0, k - self.centre - 1, false)),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// Exact coefficients `a_0, a_1, …, a_s` of the linear form.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionResult {
    pub profile: Option<Profile>,
    pub convention: SumConvention,
    /// `a[i]` for `i = 0..=s`.
    pub a: Vec<Rational>,
    /// `(k, from, to, added)` for every pole with a nonempty inner range.
    pub inner_ranges: Vec<(i64, i64, i64, bool)>,
}

impl DecompositionResult {
    pub fn s(&self) -> u32 {
        self.a.len() as u32 - 1
    }

    /// `a_i` for even `i >= 2`, the beta-value coefficients.
    pub fn beta_terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.a.iter().enumerate().skip(2).step_by(2).map(|(i, v)| (i as u32, v))
    }
}

pub fn beta_coefficients(table: &PartialFractionTable, profile: &Profile) -> Result<DecompositionResult> {
    let expected_offset = match profile.family() {
        Family::Uniform => Rational::zero(),
        Family::General => Rational::new(BigInt::one(), BigInt::from(2)),
    };
    if *table.pole_offset() != expected_offset || table.max_order() != profile.s() {
        return Err(Error::InvalidArgument(format!(
            "table (offset {}, order {}) does not belong to {}",
            table.pole_offset(),
            table.max_order(),
            profile.label()
        )));
    }
    let reflect = profile.reflection_index() as i64;
    if table.indices().any(|k| k < 0 || k > reflect) {
        return Err(Error::InvalidArgument(format!("pole index outside 0..={reflect}")));
    }
    let mut out = beta_coefficients_with(table, SumConvention::for_profile(profile));
    out.profile = Some(profile.clone());
    Ok(out)
}

/// The general fold: `a_i = 2^i Σ_k σ_k a_{i,k}` and `a_0` from the inner ranges.
pub fn beta_coefficients_with(table: &PartialFractionTable, conv: SumConvention) -> DecompositionResult {
    let s = table.max_order();
    let mut a = vec![Rational::zero(); s as usize + 1];
    let mut inner_ranges = Vec::new();

    // prefix sums over ℓ ≥ 0 and ℓ < 0, extended on demand
    let span = table.indices().map(|k| (k - conv.centre).abs()).max().unwrap_or(0) as usize;
    let mut above: Vec<Vec<Rational>> = Vec::with_capacity(s as usize);
    let mut below: Vec<Vec<Rational>> = Vec::with_capacity(s as usize);
    for i in 1..=s {
        let mut up = vec![Rational::zero()];
        let mut down = vec![Rational::zero()];
        for l in 0..span as i64 {
            let next_up = up.last().unwrap() + half_shift_term(i, l);
            up.push(next_up);
            let next_down = down.last().unwrap() + half_shift_term(i, -l - 1);
            down.push(next_down);
        }
        above.push(up);
        below.push(down);
    }

    for pole in table.poles() {
        let k = pole.index;
        let positive = conv.sign(k);
        let range = conv.range(k);
        if let Some((from, to, added)) = range {
            inner_ranges.push((k, from, to, added));
        }
        for i in 1..=s {
            let c = &pole.coeffs[i as usize - 1];
            if c.is_zero() {
                continue;
            }
            let signed = if positive { c.clone() } else { -c.clone() };
            a[i as usize] += &signed;
            if let Some((from, to, added)) = range {
                let inner = if added {
                    &below[i as usize - 1][(-from) as usize]
                } else {
                    &above[i as usize - 1][(to + 1) as usize]
                };
                let term = &signed * inner;
                if added {
                    a[0] += term;
                } else {
                    a[0] -= term;
                }
            }
        }
    }
    for (i, v) in a.iter_mut().enumerate().skip(1) {
        *v *= Rational::from_integer(BigInt::one() << i);
    }
    DecompositionResult { profile: None, convention: conv, a, inner_ranges }
}

/// `d` (the lcm `d_n` or `d_M`) and `Φ_n` for a profile, both factored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticFactors {
    pub d: FactoredInteger,
    pub d_index: u64,
    pub phi: FactoredInteger,
    pub s: u32,
}

impl ArithmeticFactors {
    pub fn for_profile(profile: &Profile) -> Result<Self> {
        let d_index = profile.d_index();
        Ok(ArithmeticFactors { d: lcm_up_to(d_index), d_index, phi: capital_phi(profile)?, s: profile.s() })
    }

    pub fn with_d_index(&self, d_index: u64) -> Self {
        ArithmeticFactors { d: lcm_up_to(d_index), d_index, ..self.clone() }
    }
}

/// One failed inclusion with the primes whose valuation falls short.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionViolation {
    pub i: u32,
    /// Pole index for coefficient checks, `None` for form coefficients.
    pub k: Option<i64>,
    /// `(p, deficit)` with `deficit = −ord_p(value) > 0`.
    pub deficits: Vec<(u64, i64)>,
    /// Denominator part free of the tracked primes, if not 1.
    pub residual: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InclusionReport {
    pub checked: usize,
    /// Odd-`i` form coefficients, which vanish exactly and pass trivially.
    pub vacuous: usize,
    pub violations: Vec<InclusionViolation>,
}

impl InclusionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Prime deficits and the untracked denominator part.
type Shortfall = (Vec<(u64, i64)>, Option<BigInt>);

/// Checks `Φ^{-1} d^{e} x ∈ ℤ`; returns the shortfall if it fails.
fn integrality(x: &Rational, d: &FactoredInteger, e: i64, phi: &FactoredInteger) -> Option<Shortfall> {
    if x.is_zero() {
        return None;
    }
    let mut primes: Vec<u64> = d.iter().map(|(p, _)| p).collect();
    primes.extend(phi.iter().map(|(p, _)| p));
    primes.sort_unstable();
    primes.dedup();
    let mut deficits = Vec::new();
    let mut residual = x.denom().clone();
    for p in primes {
        let vd = valuation(&residual, p) as i64;
        if vd > 0 {
            residual /= BigInt::from(p).pow(vd as u32);
        }
        let vn = if vd == 0 && (phi.exponent(p) > 0 || e < 0) { valuation(x.numer(), p) as i64 } else { 0 };
        let ord = vn - vd + e * d.exponent(p) as i64 - phi.exponent(p) as i64;
        if ord < 0 {
            deficits.push((p, -ord));
        }
    }
    let residual = if residual.is_one() { None } else { Some(residual) };
    if deficits.is_empty() && residual.is_none() {
        None
    } else {
        Some((deficits, residual))
    }
}

/// `Φ^{-1} d^{s−i} a_{i,k} ∈ ℤ` for every `(i, k)`.
pub fn verify_coefficient_inclusions(table: &PartialFractionTable, factors: &ArithmeticFactors) -> InclusionReport {
    verify_coefficient_inclusions_shifted(table, factors, 0, crate::Mode::default())
}

/// Same check with the exponent `s − i + shift` (a negative shift probes tightness).
pub fn verify_coefficient_inclusions_shifted(
    table: &PartialFractionTable,
    factors: &ArithmeticFactors,
    shift: i64,
    mode: crate::Mode,
) -> InclusionReport {
    let s = factors.s as i64;
    let poles = table.poles();
    let per_pole = crate::exec::map_indexed(mode, poles.len(), |idx| {
        let pole = &poles[idx];
        let mut out = Vec::new();
        for (i0, c) in pole.coeffs.iter().enumerate() {
            let i = i0 as u32 + 1;
            let e = s - i as i64 + shift;
            if let Some((deficits, residual)) = integrality(c, &factors.d, e, &factors.phi) {
                out.push(InclusionViolation { i, k: Some(pole.index), deficits, residual });
            }
        }
        out
    });
    InclusionReport {
        checked: poles.len() * table.max_order() as usize,
        vacuous: 0,
        violations: per_pole.into_iter().flatten().collect(),
    }
}

/// `Φ^{-1} d^{s−i} a_i ∈ ℤ` for `i = 0` and even `i`; odd `i` must vanish.
pub fn verify_form_inclusions(result: &DecompositionResult, factors: &ArithmeticFactors) -> InclusionReport {
    let s = factors.s as i64;
    let mut report = InclusionReport::default();
    for (i, a) in result.a.iter().enumerate() {
        if i % 2 == 1 {
            if a.is_zero() {
                report.vacuous += 1;
            } else {
                report.violations.push(InclusionViolation { i: i as u32, k: None, deficits: vec![], residual: None });
            }
            continue;
        }
        report.checked += 1;
        if let Some((deficits, residual)) = integrality(a, &factors.d, s - i as i64, &factors.phi) {
            report.violations.push(InclusionViolation { i: i as u32, k: None, deficits, residual });
        }
    }
    report
}

/// Whether `Φ^{-1} D^s · ŵa_0 ∈ ℤ` for `D = d_n` and `D = d_{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionReport {
    pub s: u32,
    pub n: u64,
    pub a0: Rational,
    pub passes_dn: bool,
    pub passes_d2n: bool,
    /// The smallest of `n`, `2n` whose lcm suffices.
    pub smallest_index: Option<u64>,
}

pub fn companion_denominator_probe(s: u32, n: u64) -> Result<CompanionReport> {
    let profile = Profile::uniform(s, n)?;
    let table = partial_fractions(&build_companion(s, n)?)?;
    let result = beta_coefficients_with(&table, SumConvention::from_one());
    let phi = capital_phi(&profile)?;
    let a0 = result.a[0].clone();
    let check = |idx: u64| integrality(&a0, &lcm_up_to(idx), s as i64, &phi).is_none();
    let passes_dn = check(n);
    let passes_d2n = check(2 * n);
    let smallest_index = if passes_dn {
        Some(n)
    } else if passes_d2n {
        Some(2 * n)
    } else {
        None
    };
    Ok(CompanionReport { s, n, a0, passes_dn, passes_d2n, smallest_index })
}

/// `(A_0, A_2, …, A_{s−1})` with `Φ^{-1} d^s r_n = A_0 + Σ A_i β(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLinearForm {
    pub indices: Vec<u32>,
    pub coefficients: Vec<BigInt>,
    pub scale: String,
}

pub fn integer_linear_form(result: &DecompositionResult, factors: &ArithmeticFactors) -> Result<IntegerLinearForm> {
    let report = verify_form_inclusions(result, factors);
    if !report.passed() {
        return Err(Error::Inclusion(format!("{} form coefficients fail the inclusion", report.violations.len())));
    }
    let scale = factors.d.pow(factors.s).to_rational() / factors.phi.to_rational();
    let mut indices = Vec::new();
    let mut coefficients = Vec::new();
    for (i, a) in result.a.iter().enumerate() {
        if i % 2 == 1 {
            continue;
        }
        let v = a * &scale;
        debug_assert!(v.is_integer());
        indices.push(i as u32);
        coefficients.push(v.to_integer());
    }
    Ok(IntegerLinearForm {
        indices,
        coefficients,
        scale: format!("Phi^-1 * d_{}^{}", factors.d_index, factors.s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationalfn::build;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inner_sum_examples() {
        assert_eq!(inner_sum(1, -2, -1), q(4, 3));
        assert_eq!(inner_sum(2, 0, 0), q(4, 1));
        assert_eq!(inner_sum(1, 0, -1), q(0, 1));
        assert!((inner_sum(1, -2, -1) * q(6, 1)).is_integer());
    }

    #[test]
    fn uniform_small_form() {
        let p = Profile::uniform(3, 2).unwrap();
        let table = partial_fractions(&build(&p).unwrap()).unwrap();
        let r = beta_coefficients(&table, &p).unwrap();
        assert!(r.a[1].is_zero() && r.a[3].is_zero());
        let direct: Rational = (0..=2).map(|k| table.coeff(2, k) * if k % 2 == 0 { q(1, 1) } else { q(-1, 1) }).sum();
        assert_eq!(r.a[2], direct * q(4, 1));
        let f = ArithmeticFactors::for_profile(&p).unwrap();
        assert!(verify_form_inclusions(&r, &f).passed());
        assert!(verify_coefficient_inclusions(&table, &f).passed());
        let form = integer_linear_form(&r, &f).unwrap();
        assert_eq!(form.indices, vec![0, 2]);
    }

    #[test]
    fn table_profile_mismatch() {
        let p = Profile::uniform(3, 2).unwrap();
        let other = Profile::uniform(5, 2).unwrap();
        let table = partial_fractions(&build(&p).unwrap()).unwrap();
        assert!(beta_coefficients(&table, &other).is_err());
    }

    #[test]
    fn weakened_exponent_reports_deficits() {
        let p = Profile::uniform(5, 4).unwrap();
        let table = partial_fractions(&build(&p).unwrap()).unwrap();
        let f = ArithmeticFactors::for_profile(&p).unwrap();
        // every a_{4,k} is already an integer, so one power less still passes
        let weak = verify_coefficient_inclusions_shifted(&table, &f, -1, crate::Mode::Sequential);
        assert!(weak.passed());
        let weaker = verify_coefficient_inclusions_shifted(&table, &f, -2, crate::Mode::Sequential);
        assert!(weaker.violations.iter().any(|v| v.i == 3 && v.deficits == vec![(3, 1)]));
    }
}
