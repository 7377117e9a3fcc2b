//! Report schema and the per-instance pipeline.

use betaforms::asymptotics::{exponent_ledger, cube_maximum, stationary_gradient, ExponentLedger, Verdict};
use betaforms::decomposition::{
    beta_coefficients, integer_linear_form, verify_coefficient_inclusions, verify_form_inclusions, ArithmeticFactors,
    InclusionReport,
};
use betaforms::numerics::series::consistency_of;
use betaforms::numerics::{mc_integral, summation_start_check, SeriesSetup};
use betaforms::numtheory::{phi_exponent, StepFunction};
use betaforms::rationalfn::symmetry_check;
use betaforms::{BallReal, Mode, Profile, Rational, Result};
use num_rational::Rational64;
use serde::Serialize;

use crate::profile_file::Checks;

pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rational64_string(q: &Rational64) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct Ball {
    pub mid: String,
    pub rad: String,
    pub prec: u32,
}

impl From<&BallReal> for Ball {
    fn from(b: &BallReal) -> Self {
        let digits = b.default_digits().min(b.rel_accuracy_bits().clamp(1.0, 1e6) as usize / 3 + 4);
        Ball { mid: b.mid_to_decimal(digits), rad: b.rad().to_sci_string(), prec: b.prec() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub i: u32,
    pub k: Option<i64>,
    pub deficits: Vec<(u64, i64)>,
    pub residual: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InclusionSummary {
    pub passed: bool,
    pub checked: usize,
    pub vacuous: usize,
    pub violations: Vec<Violation>,
}

impl From<&InclusionReport> for InclusionSummary {
    fn from(r: &InclusionReport) -> Self {
        InclusionSummary {
            passed: r.passed(),
            checked: r.checked,
            vacuous: r.vacuous,
            violations: r
                .violations
                .iter()
                .map(|v| Violation {
                    i: v.i,
                    k: v.k,
                    deficits: v.deficits.clone(),
                    residual: v.residual.as_ref().map(|x| x.to_string()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Factors {
    pub d_index: u64,
    pub d: String,
    pub phi: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegerForm {
    pub scale: String,
    pub indices: Vec<u32>,
    pub coefficients: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Consistency {
    pub passed: bool,
    pub form: Ball,
    pub abs_gap_log2: f64,
    pub agreement_bits: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarlo {
    pub passed: bool,
    pub samples: u64,
    pub seed: u64,
    pub estimate: Ball,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub label: String,
    pub n: u64,
    pub passed: bool,
    pub poles: usize,
    pub max_order: u32,
    pub factors: Factors,
    /// `a_0, a_1, …, a_{s−1}` as exact rationals.
    pub a: Vec<String>,
    pub symmetry: bool,
    pub summation_start: bool,
    pub coefficient_inclusions: Option<InclusionSummary>,
    pub form_inclusions: Option<InclusionSummary>,
    pub integer_form: Option<IntegerForm>,
    pub r_n: Ball,
    pub consistency: Option<Consistency>,
    pub monte_carlo: Option<MonteCarlo>,
}

pub fn run_instance(profile: &Profile, precision: u32, checks: &Checks) -> Result<InstanceReport> {
    let setup = SeriesSetup::new(profile)?;
    let table = &setup.table;
    let result = beta_coefficients(table, profile)?;
    let factors = ArithmeticFactors::for_profile(profile)?;
    let symmetry = symmetry_check(table, profile.reflection_index());
    let summation_start = summation_start_check(profile)?;

    let (coefficient_inclusions, form_inclusions, integer_form) = if checks.verify_inclusions {
        let c = verify_coefficient_inclusions(table, &factors);
        let f = verify_form_inclusions(&result, &factors);
        let form = integer_linear_form(&result, &factors).ok().map(|l| IntegerForm {
            scale: l.scale,
            indices: l.indices,
            coefficients: l.coefficients.iter().map(|c| c.to_string()).collect(),
        });
        (Some(InclusionSummary::from(&c)), Some(InclusionSummary::from(&f)), form)
    } else {
        (None, None, None)
    };

    let r_n = setup.sum(precision, Mode::default())?;
    let consistency = if checks.consistency {
        let c = consistency_of(&r_n, &result, precision)?;
        Some(Consistency {
            passed: c.passed(),
            form: Ball::from(&c.form),
            abs_gap_log2: c.abs_gap_log2,
            agreement_bits: c.agreement_bits,
        })
    } else {
        None
    };

    let monte_carlo = if checks.mc_samples > 0 {
        let eta = profile.asymptotic_eta();
        let est = mc_integral(&eta, profile.n(), checks.mc_samples, checks.seed)?;
        Some(MonteCarlo {
            passed: est.overlaps(&r_n) && est.mid_rational() > Rational::from_integer(0.into()),
            samples: checks.mc_samples,
            seed: checks.seed,
            estimate: Ball::from(&est),
        })
    } else {
        None
    };

    let passed = symmetry
        && summation_start
        && coefficient_inclusions.as_ref().is_none_or(|c| c.passed)
        && form_inclusions.as_ref().is_none_or(|c| c.passed)
        && consistency.as_ref().is_none_or(|c| c.passed)
        && monte_carlo.as_ref().is_none_or(|c| c.passed);

    Ok(InstanceReport {
        label: profile.label(),
        n: profile.n(),
        passed,
        poles: table.poles().len(),
        max_order: table.max_order(),
        factors: Factors { d_index: factors.d_index, d: factors.d.to_string(), phi: factors.phi.to_string() },
        a: result.a.iter().map(rational_string).collect(),
        symmetry,
        summation_start,
        coefficient_inclusions,
        form_inclusions,
        integer_form,
        r_n: Ball::from(&r_n),
        consistency,
        monte_carlo,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Ledger {
    pub passed: bool,
    pub eta: Vec<u64>,
    pub mu: String,
    pub x0: Ball,
    pub x: Vec<Ball>,
    pub gradient_bound: String,
    pub r_exponent: Ball,
    pub d_exponent: Ball,
    pub phi_exponent: Ball,
    pub total: Ball,
    pub verdict: &'static str,
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Satisfied => "satisfied",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

pub fn ledger(profile: &Profile, precision: u32) -> Result<Ledger> {
    let eta = profile.asymptotic_eta();
    let data = cube_maximum(&eta, precision)?;
    let grad = stationary_gradient(&eta, &data.x, precision);
    let l: ExponentLedger = exponent_ledger(profile, precision)?;
    Ok(Ledger {
        passed: l.verdict == Verdict::Satisfied,
        eta,
        mu: rational_string(&profile.mu()),
        x0: Ball::from(&data.x0),
        x: data.x.iter().map(Ball::from).collect(),
        gradient_bound: grad.to_sci_string(),
        r_exponent: Ball::from(&l.r_exponent),
        d_exponent: Ball::from(&l.d_exponent),
        phi_exponent: Ball::from(&l.phi_exponent),
        total: Ball::from(&l.total),
        verdict: verdict_name(l.verdict),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub passed: bool,
    pub family: String,
    pub precision: u32,
    pub instances: Vec<InstanceReport>,
    pub asymptotics: Option<Ledger>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Interval {
    pub from: String,
    pub to: String,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiTable {
    pub intervals: Vec<Interval>,
    pub max_value: i64,
    pub phi_exponent: Ball,
    pub capital_phi: Option<String>,
}

pub fn phi_table(profile: &Profile, table: &StepFunction, precision: u32, with_phi: bool) -> Result<PhiTable> {
    Ok(PhiTable {
        intervals: table
            .intervals()
            .iter()
            .map(|(a, b, v)| Interval { from: rational64_string(a), to: rational64_string(b), value: *v })
            .collect(),
        max_value: table.max_value(),
        phi_exponent: Ball::from(&phi_exponent(profile, precision)?),
        capital_phi: if with_phi {
            Some(betaforms::numtheory::phi::capital_phi_with_table(profile, table).to_string())
        } else {
            None
        },
    })
}
