//! Monte Carlo estimate of the `s`-fold integral representation of `r_n`:
//!
//! `r_n = 4^{h_0−1} Γ(1+h_0) / (Γ(h_1+½)² Γ(1+h_0−2h_1))
//!        · ∫_{[0,1]^s} ∏ t_j^{h_j−1}(1−t_j)^{h_0−2h_j} / (1+T)^{h_0} · (1−T)/(1+T) dt`,
//! `T = t_1⋯t_s`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ball::BallReal;
use super::mag::Mag;
use crate::{Error, Mode, Profile, Result};

/// Samples per independent random stream.
pub const CHUNK: u64 = 1 << 14;

fn ln_gamma_int(k: u64) -> f64 {
    (2..k).map(|j| (j as f64).ln()).sum()
}

/// Estimate with radius three standard errors. Deterministic in `(η, n, samples, seed)`
/// whatever the execution mode: chunk `c` always draws from stream `c` of the seed.
pub fn mc_integral(eta: &[u64], n: u64, samples: u64, seed: u64) -> Result<BallReal> {
    mc_integral_with(eta, n, samples, seed, Mode::default())
}

pub fn mc_integral_with(eta: &[u64], n: u64, samples: u64, seed: u64, mode: Mode) -> Result<BallReal> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let profile = Profile::general(eta.to_vec(), n)?;
    let h0 = profile.h0();
    let s = profile.s() as usize;
    let h1 = profile.h_half(1);
    // h_j − ½ = η_j n; exponents h_j − 1 and h_0 − 2h_j
    let a: Vec<f64> = (1..=s).map(|j| profile.h_half(j) as f64 - 0.5).collect();
    let b: Vec<f64> = (1..=s).map(|j| (h0 - 1 - 2 * profile.h_half(j)) as f64).collect();
    let ln_pref = (h0 - 1) as f64 * 4f64.ln() + ln_gamma_int(h0 + 1) - 2.0 * ln_gamma_int(h1 + 1) - ln_gamma_int(h0 - 2 * h1);

    let chunks = samples.div_ceil(CHUNK) as usize;
    let partial = crate::exec::map_indexed(mode, chunks, |c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let count = CHUNK.min(samples - c as u64 * CHUNK);
        let (mut sum, mut sq) = (0.0f64, 0.0f64);
        for _ in 0..count {
            let mut ln_f = 0.0;
            let mut prod = 1.0;
            for j in 0..s {
                let t: f64 = rng.random::<f64>();
                ln_f += a[j] * t.ln() + b[j] * (1.0 - t).ln();
                prod *= t;
            }
            let v = (ln_f - h0 as f64 * (1.0 + prod).ln() + ln_pref).exp() * (1.0 - prod) / (1.0 + prod);
            sum += v;
            sq += v * v;
        }
        (sum, sq)
    });
    let (sum, sq) = partial.iter().fold((0.0, 0.0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
    let m = samples as f64;
    let mean = sum / m;
    let var = ((sq / m - mean * mean) * m / (m - 1.0).max(1.0)).max(0.0);
    let se = (var / m).sqrt();
    Ok(BallReal::from_f64_exact(mean, 53).add_error(Mag::from_f64_up(3.0 * se)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_positive() {
        let eta = [5, 1, 1, 1, 1, 1];
        let a = mc_integral_with(&eta, 2, 40_000, 7, Mode::Sequential).unwrap();
        let b = mc_integral_with(&eta, 2, 40_000, 7, Mode::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.to_f64() > 0.0);
        assert!(mc_integral(&eta, 2, 0, 7).is_err());
    }

    #[test]
    fn matches_reference_value() {
        // reference from the series and the beta-function expansion of the integral
        let est = mc_integral(&[5, 1, 1, 1, 1, 1], 2, 200_000, 3).unwrap();
        assert!(est.contains_rational(&crate::Rational::new(4755045828u64.into(), 10_000_000_000u64.into())), "{est}");
    }
}
