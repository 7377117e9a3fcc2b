//! Dirichlet beta values `β(i) = Σ_{k>=0} (−1)^k / (2k+1)^i`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::accel::{accelerated_sum, terms_for_bits, ChebyshevWeights};
use super::ball::BallReal;
use super::mag::Mag;
use crate::{Error, Mode, Rational, Result};

type Cache = Mutex<Vec<(u32, u32, BallReal)>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `β(i)` with radius at most `2^{1−prec}`.
///
/// The terms `(2k+1)^{−i} = ∫ x^k dμ` come from a positive measure of mass 1,
/// so the accelerated sum carries the tail bound `1/d`.
pub fn beta_value(i: u32, prec: u32) -> Result<BallReal> {
    if i == 0 {
        return Err(Error::InvalidArgument("beta index must be at least 1".into()));
    }
    if let Some((_, _, b)) = cache().lock().unwrap().iter().find(|(j, p, _)| *j == i && *p >= prec) {
        return Ok(b.clone().with_prec(prec));
    }
    let b = beta_uncached(i, prec, Mode::default());
    cache().lock().unwrap().push((i, prec, b.clone()));
    Ok(b)
}

fn beta_uncached(i: u32, prec: u32, mode: Mode) -> BallReal {
    let n = terms_for_bits(prec as f64 + 2.0);
    let weights = ChebyshevWeights::new(n);
    let wp = prec + 16;
    let terms = crate::exec::map_indexed(mode, n, |k| {
        let den = BigInt::from(2 * k as u64 + 1).pow(i);
        BallReal::from_rational(&Rational::new(BigInt::one(), den), wp)
    });
    accelerated_sum(&terms, &weights, Mag::from_u64(1), wp).with_prec(prec)
}

/// `Σ_{k<terms} (−1)^k/(2k+1)^i` plus the alternating remainder bound `(2·terms+1)^{−i}`.
pub fn beta_truncated(i: u32, terms: u64, prec: u32) -> BallReal {
    let mut acc = Rational::from_integer(BigInt::from(0));
    for k in 0..terms {
        let t = Rational::new(BigInt::one(), BigInt::from(2 * k + 1).pow(i));
        if k % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let tail = Rational::new(BigInt::one(), BigInt::from(2 * terms + 1).pow(i));
    BallReal::from_rational(&acc, prec).add_error(super::ball::rational_mag_up(&tail))
}
