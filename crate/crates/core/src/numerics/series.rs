//! `r_n` from its alternating series, and the series-vs-form consistency oracle.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::accel::{accelerated_sum, terms_for_bits, ChebyshevWeights};
use super::ball::{rational_mag_up, BallReal};
use super::beta::beta_value;
use crate::decomposition::{beta_coefficients, DecompositionResult};
use crate::rationalfn::{build, partial_fractions, LinearProductRep, PartialFractionTable};
use crate::{Error, Family, Mode, Profile, Rational, Result};

fn rational_log2(q: &Rational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    q.numer().abs().bits() as f64 - q.denom().bits() as f64
}

/// `r_n = Σ_{k>=0} (−1)^k R(t_0 + k)` with `t_0` to the right of every pole and
/// every vanishing term skipped.
#[derive(Debug, Clone)]
pub struct SeriesSetup {
    pub rep: LinearProductRep,
    pub table: PartialFractionTable,
    pub t0: Rational,
    /// `Σ |a_{i,k}| / (t_0 − ρ_k)^i`, the total variation of the moment weight.
    pub variation: Rational,
}

impl SeriesSetup {
    pub fn new(profile: &Profile) -> Result<Self> {
        let rep = build(profile)?;
        let table = partial_fractions(&rep)?;
        Self::with_table(profile, rep, table)
    }

    pub fn with_table(profile: &Profile, rep: LinearProductRep, table: PartialFractionTable) -> Result<Self> {
        let t0 = match profile.family() {
            // ν from n+1: t = ν − ½ = n + ½ + k, (−1)^{ν−1} = (−1)^k for even n
            Family::Uniform => Rational::new(BigInt::from(2 * profile.n() + 1), BigInt::from(2)),
            Family::General => Rational::zero(),
        };
        let variation = table
            .moment_weight(&t0)
            .ok_or_else(|| Error::InvalidArgument("series start is not right of every pole".into()))?;
        Ok(SeriesSetup { rep, table, t0, variation })
    }

    fn term(&self, k: usize, wp: u32) -> BallReal {
        let t = &self.t0 + Rational::from_integer(BigInt::from(k));
        let v = self.rep.eval(&t).expect("series points are not poles");
        BallReal::from_rational(&v, wp)
    }

    /// The accelerated sum from a fixed number of terms at working precision `wp`.
    pub fn sum_terms(&self, n_terms: usize, wp: u32, mode: Mode) -> BallReal {
        let weights = ChebyshevWeights::new(n_terms);
        let terms = crate::exec::map_indexed(mode, n_terms, |k| self.term(k, wp));
        let var = rational_mag_up(&self.variation);
        accelerated_sum(&terms, &weights, var, wp)
    }

    /// `r_n` with radius at most `2^{1−prec}·|r_n|`.
    pub fn sum(&self, prec: u32, mode: Mode) -> Result<BallReal> {
        let lw = rational_log2(&self.variation).max(0.0);
        let mut est = 0.0f64;
        for _ in 0..12 {
            let bits = lw - est + prec as f64 + 8.0;
            let n_terms = terms_for_bits(bits);
            let wp = (bits + (n_terms as f64).log2() + 24.0).ceil() as u32;
            let r = self.sum_terms(n_terms, wp, mode);
            if !r.contains_zero() && r.rel_accuracy_bits() >= prec as f64 {
                return Ok(r.with_prec(prec + 8));
            }
            est = if r.contains_zero() { est - bits.max(64.0) } else { r.log2_abs_mid() - 4.0 };
        }
        Err(Error::Precision("alternating series did not reach the requested relative precision".into()))
    }
}

/// `r_n` by the accelerated alternating series.
pub fn r_n_series(profile: &Profile, prec: u32) -> Result<BallReal> {
    SeriesSetup::new(profile)?.sum(prec, Mode::default())
}

/// Equality of the sums started at `ν = 1`, `ν = n+1` and `ν = −m−1` (uniform family),
/// or at `ν = 0` and `ν = −(h_0−1)/2` (general family): every skipped term is exactly zero.
pub fn summation_start_check(profile: &Profile) -> Result<bool> {
    let rep = build(profile)?;
    let points: Vec<Rational> = match profile.family() {
        Family::Uniform => {
            let n = profile.n() as i64;
            let m = n / 2;
            (-m - 1..=n).map(|nu| Rational::new(BigInt::from(2 * nu - 1), BigInt::from(2))).collect()
        }
        Family::General => {
            let c = (profile.h0() as i64 - 1) / 2;
            (-c..0).map(|nu| Rational::from_integer(BigInt::from(nu))).collect()
        }
    };
    for t in points {
        if !rep.eval(&t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a_0 + Σ a_i β(i)` with absolute radius about `2^{−abs_bits}`.
pub fn form_value(result: &DecompositionResult, abs_bits: i64) -> Result<BallReal> {
    let prec_for = |q: &Rational| (abs_bits as f64 + rational_log2(q).max(0.0) + 24.0).max(64.0) as u32;
    let mut acc = BallReal::from_rational(&result.a[0], prec_for(&result.a[0]));
    for (i, a) in result.beta_terms() {
        if a.is_zero() {
            continue;
        }
        let p = prec_for(a);
        let b = beta_value(i, p)?;
        acc = &acc + &b.with_prec(p).mul_rational(a);
    }
    for (i, a) in result.a.iter().enumerate().skip(1).step_by(2) {
        if !a.is_zero() {
            let p = prec_for(a);
            acc = &acc + &beta_value(i as u32, p)?.mul_rational(a);
        }
    }
    Ok(acc)
}

/// Both sides of the decomposition and how far apart they are.
#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub series: BallReal,
    pub form: BallReal,
    pub overlap: bool,
    /// `log2` of an upper bound for `|series − form|` over both balls.
    pub abs_gap_log2: f64,
    /// `−log2(|mid_series − mid_form| / |series|)`, capped by the radii.
    pub agreement_bits: f64,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.overlap
    }
}

pub fn consistency_check(profile: &Profile, prec: u32) -> Result<ConsistencyReport> {
    let setup = SeriesSetup::new(profile)?;
    let series = setup.sum(prec, Mode::default())?;
    let result = beta_coefficients(&setup.table, profile)?;
    consistency_of(&series, &result, prec)
}

/// Compares a series ball with the form of `result` evaluated to matching accuracy.
pub fn consistency_of(series: &BallReal, result: &DecompositionResult, prec: u32) -> Result<ConsistencyReport> {
    let scale = series.log2_abs_mid();
    let abs_bits = (prec as f64 - scale).ceil() as i64 + 8;
    let form = form_value(result, abs_bits)?;
    let overlap = series.overlaps(&form);
    let gap = series.distance_upper(&form);
    let mid_diff = (series.mid_rational() - form.mid_rational()).abs();
    let spread = series.rad().add_up(form.rad()).log2();
    let diff_log = if mid_diff.is_zero() { spread } else { rational_log2(&mid_diff).max(spread) };
    Ok(ConsistencyReport {
        series: series.clone(),
        form,
        overlap,
        abs_gap_log2: gap.log2(),
        agreement_bits: scale - diff_log,
    })
}

impl DecompositionResult {
    /// The same form with `a_0` moved by `delta`.
    pub fn perturbed_a0(&self, delta: &Rational) -> Self {
        let mut out = self.clone();
        out.a[0] = &out.a[0] + delta;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn uniform_small_series() {
        let p = Profile::uniform(3, 2).unwrap();
        let r = r_n_series(&p, 128).unwrap();
        assert!(r.is_positive());
        let rep = consistency_check(&p, 128).unwrap();
        assert!(rep.passed());
        assert!(rep.agreement_bits >= 100.0, "{}", rep.agreement_bits);
    }

    #[test]
    fn start_indices_agree() {
        for p in [Profile::uniform(3, 2).unwrap(), Profile::uniform(5, 4).unwrap(), Profile::six_beta(2).unwrap()] {
            assert!(summation_start_check(&p).unwrap());
        }
    }

    #[test]
    fn perturbation_breaks_consistency() {
        let p = Profile::uniform(3, 2).unwrap();
        let setup = SeriesSetup::new(&p).unwrap();
        let series = setup.sum(128, Mode::default()).unwrap();
        let res = beta_coefficients(&setup.table, &p).unwrap();
        let bad = res.perturbed_a0(&Rational::new(BigInt::one(), BigInt::from(10u64).pow(10)));
        assert!(!consistency_of(&series, &bad, 128).unwrap().passed());
    }

    #[test]
    fn radius_halves_when_terms_double() {
        let p = Profile::uniform(3, 2).unwrap();
        let setup = SeriesSetup::new(&p).unwrap();
        let a = setup.sum_terms(20, 400, Mode::Sequential);
        let b = setup.sum_terms(40, 400, Mode::Sequential);
        assert!(b.rad().log2() <= a.rad().log2() - 1.0);
        assert!(a.overlaps(&b));
    }
}
