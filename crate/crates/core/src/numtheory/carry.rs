//! The integer-valued floor sums `φ(x, y)` and their minima `φ₀(x)`.
//!
//! Both families' carry functions are sums `Σ c·⌊a·x + b·y⌋` with integer
//! coefficients, 1-periodic in `x` and in `y`. `φ₀(x) = min_{0<=y<1} φ(x, y)` is
//! piecewise constant with rational jumps; [`carry_min_table`] recovers it
//! exactly by enumerating every possible jump location as a Farey fraction.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::exec::{map_indexed, Mode};
use crate::{Error, Result};

/// One summand `coef · ⌊ax·x + by·y⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloorTerm {
    pub coef: i64,
    pub ax: i64,
    pub by: i64,
}

/// Which carry function to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarrySpec {
    /// The uniform function of the `s`-independent construction.
    Uniform,
    /// The general construction with parameters `η = (η_0, …, η_s)`.
    General(Vec<i64>),
}

impl CarrySpec {
    pub fn general(eta: &[u64]) -> Self {
        CarrySpec::General(eta.iter().map(|&e| e as i64).collect())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CarrySpec::Uniform => Ok(()),
            CarrySpec::General(eta) => {
                let mut errs = Vec::new();
                if eta.len() < 2 {
                    errs.push("eta needs eta_0 and at least one eta_j".to_string());
                } else {
                    let e0 = eta[0];
                    for (j, &e) in eta.iter().enumerate().skip(1) {
                        if !(e > 0 && 2 * e < e0) {
                            errs.push(format!("eta_{j} = {e} violates 0 < eta_j < eta_0/2 (eta_0 = {e0})"));
                        }
                    }
                    let s = (eta.len() - 1) as i64;
                    let sum: i64 = eta[1..].iter().sum();
                    if 2 * sum > (s - 1) * e0 {
                        errs.push(format!("sum of eta_j = {sum} exceeds (s-1)*eta_0/2 = {}", (s - 1) * e0 / 2));
                    }
                }
                if errs.is_empty() {
                    Ok(())
                } else {
                    Err(Error::InvalidProfile(errs))
                }
            }
        }
    }

    /// The floor-sum expansion.
    pub fn terms(&self) -> Vec<FloorTerm> {
        let t = |coef, ax, by| FloorTerm { coef, ax, by };
        match self {
            CarrySpec::Uniform => vec![
                t(1, 2, 2),
                t(1, 4, -2),
                t(-1, 1, 1),
                t(-1, 2, -1),
                t(-3, 0, 1),
                t(-3, 1, -1),
            ],
            CarrySpec::General(eta) => {
                let e0 = eta[0];
                let e1 = eta[1];
                let mut v = vec![
                    t(1, 2 * e0, -2),
                    t(1, 0, 2),
                    t(-1, e0, -1),
                    t(-1, 0, 1),
                    t(-2, e1, 0),
                    t(-1, e0 - 2 * e1, 0),
                ];
                for &ej in &eta[1..] {
                    v.push(t(1, e0 - 2 * ej, 0));
                    v.push(t(-1, -ej, 1));
                    v.push(t(-1, e0 - ej, -1));
                }
                v
            }
        }
    }

    /// Farey order that contains every jump denominator of `φ₀`.
    ///
    /// Uses `2η_0 + 2·max η_j` (12 for the uniform function), raised if the
    /// pairwise coincidence bound of the floor terms is larger.
    pub fn farey_order(&self) -> i64 {
        let nominal = match self {
            CarrySpec::Uniform => 12,
            CarrySpec::General(eta) => 2 * eta[0] + 2 * eta[1..].iter().copied().max().unwrap_or(0),
        };
        nominal.max(jump_denominator_bound(&self.terms()))
    }
}

/// Denominators of `x` where two y-breakpoints can coincide divide
/// `|a2·b1 − a1·b2| / gcd(b1, b2)`; x-only terms jump at denominators `|a|`.
fn jump_denominator_bound(terms: &[FloorTerm]) -> i64 {
    let mut bound = 1;
    for (i, t1) in terms.iter().enumerate() {
        if t1.by == 0 {
            bound = bound.max(t1.ax.abs());
            continue;
        }
        bound = bound.max(t1.ax.abs());
        for t2 in &terms[i + 1..] {
            if t2.by == 0 {
                continue;
            }
            let det = (t2.ax * t1.by - t1.ax * t2.by).abs();
            bound = bound.max(det / t1.by.gcd(&t2.by));
        }
    }
    bound
}

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// `φ({x}, {y})` for the selected family.
pub fn carry_value(spec: &CarrySpec, x: Rational64, y: Rational64) -> i64 {
    let (x, y) = (frac(x), frac(y));
    spec.terms()
        .iter()
        .map(|t| {
            let arg = x * t.ax + y * t.by;
            t.coef * arg.floor().to_integer()
        })
        .sum()
}

/// Evaluates the sum at `x = p/q`, `y = Y/D` where `D = q·lcm_b·4`, all integer.
fn eval_scaled(terms: &[FloorTerm], p: i64, scale_x: i64, y_num: i64, den: i64) -> i64 {
    terms
        .iter()
        .map(|t| t.coef * (t.ax * p * scale_x + t.by * y_num).div_euclid(den))
        .sum()
}

/// `min_{0<=y<1} φ(x, y)` by evaluating on every y-breakpoint and every
/// midpoint between consecutive breakpoints.
fn min_over_y(terms: &[FloorTerm], x: Rational64) -> i64 {
    let x = frac(x);
    let (p, q) = (*x.numer(), *x.denom());
    let lcm_b = terms.iter().filter(|t| t.by != 0).fold(1i64, |acc, t| acc.lcm(&t.by.abs()));
    // y = Y / den. Breakpoints (j − a·x)/b have denominator q·|b| and land on
    // even multiples, midpoints on integers.
    let den = 2 * q * lcm_b;
    let scale_x = 2 * lcm_b;
    let mut pts: Vec<i64> = vec![0];
    for t in terms.iter().filter(|t| t.by != 0) {
        let b = t.by;
        let unit = den / (q * b.abs());
        for j in 0..b.abs() {
            // y = (j − a p/q)/b  =>  Y = (j q − a p)·den/(q b)
            let num = (j * q - t.ax * p) * unit * b.signum();
            pts.push(num.rem_euclid(den));
        }
    }
    pts.sort_unstable();
    pts.dedup();
    let mut best = i64::MAX;
    // Evaluate on a doubled grid so midpoints are integral.
    let den2 = 2 * den;
    let sx2 = 2 * scale_x;
    for (i, &y) in pts.iter().enumerate() {
        let next = if i + 1 < pts.len() { pts[i + 1] } else { pts[0] + den };
        best = best.min(eval_scaled(terms, p, sx2, 2 * y, den2));
        best = best.min(eval_scaled(terms, p, sx2, y + next, den2));
    }
    best
}

/// `φ₀(x)` evaluated directly (no table).
pub fn carry_min_value(spec: &CarrySpec, x: Rational64) -> i64 {
    min_over_y(&spec.terms(), x)
}

/// A right-continuous step function on `[0, 1)`, extended with period 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational64>,
    values: Vec<i64>,
}

impl StepFunction {
    /// Builds a canonical step function; adjacent equal values are merged.
    pub fn new(breakpoints: Vec<Rational64>, values: Vec<i64>) -> Result<Self> {
        if breakpoints.len() != values.len() || breakpoints.is_empty() {
            return Err(Error::InvalidArgument("breakpoints and values must be non-empty and equal length".into()));
        }
        if breakpoints[0] != Rational64::zero() {
            return Err(Error::InvalidArgument("first breakpoint must be 0".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) || *breakpoints.last().unwrap() >= Rational64::one() {
            return Err(Error::InvalidArgument("breakpoints must be strictly increasing in [0, 1)".into()));
        }
        let mut bp = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<i64> = Vec::with_capacity(values.len());
        for (b, v) in breakpoints.into_iter().zip(values) {
            if vals.last() != Some(&v) {
                bp.push(b);
                vals.push(v);
            }
        }
        Ok(StepFunction { breakpoints: bp, values: vals })
    }

    pub fn constant(v: i64) -> Self {
        StepFunction { breakpoints: vec![Rational64::zero()], values: vec![v] }
    }

    pub fn eval(&self, x: Rational64) -> i64 {
        let x = frac(x);
        let idx = match self.breakpoints.binary_search(&x) {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        self.values[idx]
    }

    /// `(u, v, value)` triples for the half-open intervals `[u, v)`, `v <= 1`.
    pub fn intervals(&self) -> Vec<(Rational64, Rational64, i64)> {
        (0..self.values.len())
            .map(|i| {
                let end = self.breakpoints.get(i + 1).copied().unwrap_or_else(Rational64::one);
                (self.breakpoints[i], end, self.values[i])
            })
            .collect()
    }

    pub fn breakpoints(&self) -> &[Rational64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn max_value(&self) -> i64 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Farey sequence of order `n` restricted to `[0, 1)`, ascending.
pub fn farey(n: i64) -> Vec<Rational64> {
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    let mut out = vec![Rational64::new(a, b)];
    while c < d {
        out.push(Rational64::new(c, d));
        let k = (n + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    out
}

/// Exact piecewise table of `φ₀` on `[0, 1)`.
pub fn carry_min_table(spec: &CarrySpec) -> Result<StepFunction> {
    carry_min_table_with(spec, Mode::default())
}

pub fn carry_min_table_with(spec: &CarrySpec, mode: Mode) -> Result<StepFunction> {
    spec.validate()?;
    let terms = spec.terms();
    let pts = farey(spec.farey_order());
    let two = Rational64::from_integer(2);
    let results = map_indexed(mode, pts.len(), |i| {
        let left = pts[i];
        let right = pts.get(i + 1).copied().unwrap_or_else(Rational64::one);
        let at = min_over_y(&terms, left);
        let inside = min_over_y(&terms, (left + right) / two);
        (at, inside)
    });
    for (i, &(at, inside)) in results.iter().enumerate() {
        if at != inside {
            return Err(Error::NotRightContinuous(pts[i].to_string()));
        }
    }
    StepFunction::new(pts, results.into_iter().map(|r| r.1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    // Literal transcription of the uniform function.
    fn phi_uniform(x: Rational64, y: Rational64) -> i64 {
        let f = |v: Rational64| v.floor().to_integer();
        let two = r(2, 1);
        f(two * x + two * y) + f(r(4, 1) * x - two * y) - f(x + y) - f(two * x - y) - 3 * f(y) - 3 * f(x - y)
    }

    #[test]
    fn uniform_value() {
        assert_eq!(carry_value(&CarrySpec::Uniform, r(2, 5), r(1, 5)), 2);
        assert_eq!(phi_uniform(r(2, 5), r(1, 5)), 2);
        assert_eq!(carry_value(&CarrySpec::Uniform, r(7, 5), r(1, 5)), 2);
        assert_eq!(carry_value(&CarrySpec::Uniform, r(2, 5), r(-4, 5)), 2);
    }

    #[test]
    fn uniform_agrees_with_literal_formula() {
        for xd in 1..30 {
            for xn in 0..xd {
                for yd in [7, 12, 13] {
                    for yn in 0..yd {
                        let (x, y) = (r(xn, xd), r(yn, yd));
                        assert_eq!(carry_value(&CarrySpec::Uniform, x, y), phi_uniform(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn uniform_table() {
        let t = carry_min_table(&CarrySpec::Uniform).unwrap();
        assert_eq!(t.breakpoints(), &[r(0, 1), r(1, 3), r(1, 2)]);
        assert_eq!(t.values(), &[0, 1, 2]);
    }

    #[test]
    fn farey_sequence() {
        let f = farey(5);
        let expect: Vec<_> = [(0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5)]
            .iter()
            .map(|&(a, b)| r(a, b))
            .collect();
        assert_eq!(f, expect);
    }

    #[test]
    fn invalid_general_spec() {
        let spec = CarrySpec::General(vec![10, 5, 1, 1]);
        assert!(matches!(carry_min_table(&spec), Err(Error::InvalidProfile(_))));
    }

    #[test]
    fn step_function_eval_and_merge() {
        let s = StepFunction::new(vec![r(0, 1), r(1, 3), r(1, 2), r(3, 4)], vec![0, 1, 2, 2]).unwrap();
        assert_eq!(s.values(), &[0, 1, 2]);
        assert_eq!(s.eval(r(1, 3)), 1);
        assert_eq!(s.eval(r(5, 3)), 2);
        assert_eq!(s.eval(r(-1, 2)), 2);
        assert_eq!(s.eval(r(0, 1)), 0);
        assert!(StepFunction::new(vec![r(1, 2)], vec![0]).is_err());
    }
}
