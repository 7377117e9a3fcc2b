use num_bigint::BigInt;

use crate::numtheory::carry::CarrySpec;
use crate::{Error, Rational, Result};

/// Parameters in the general construction used for the six-beta-value result.
pub const SIX_BETA_ETA: [u64; 14] = [31, 10, 10, 10, 10, 10, 11, 11, 11, 11, 12, 12, 12, 12];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// The uniform construction with `R_n(t) = 2^{6n} n!^{s−3} (2t+n) ∏(t−n+j−½) / ∏(t+j)^s`.
    Uniform,
    /// The very-well-poised construction driven by `η = (η_0, …, η_s)`.
    General,
}

/// One construction instance: family, `s`, `n` and (general family) `η`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    family: Family,
    s: u32,
    n: u64,
    eta: Vec<u64>,
}

impl Profile {
    pub fn uniform(s: u32, n: u64) -> Result<Self> {
        let p = Profile { family: Family::Uniform, s, n, eta: Vec::new() };
        p.validate()?;
        Ok(p)
    }

    pub fn general(eta: Vec<u64>, n: u64) -> Result<Self> {
        let s = eta.len().saturating_sub(1) as u32;
        let p = Profile { family: Family::General, s, n, eta };
        p.validate()?;
        Ok(p)
    }

    pub fn six_beta(n: u64) -> Result<Self> {
        Self::general(SIX_BETA_ETA.to_vec(), n)
    }

    /// Every violated condition, or `Ok` if the profile is admissible.
    pub fn validate(&self) -> Result<()> {
        let errs = self.violations();
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidProfile(errs))
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut errs = Vec::new();
        match self.family {
            Family::Uniform => {
                if self.s < 3 || self.s.is_multiple_of(2) {
                    errs.push(format!("s = {} must be odd and >= 3", self.s));
                }
                if self.n == 0 || self.n % 2 == 1 {
                    errs.push(format!("n = {} must be even and positive", self.n));
                }
            }
            Family::General => {
                if self.s < 5 || self.s.is_multiple_of(2) {
                    errs.push(format!("s = {} must be odd and >= 5", self.s));
                }
                if self.n == 0 {
                    errs.push("n must be positive".to_string());
                }
                if self.eta.len() >= 2 {
                    if let Err(Error::InvalidProfile(e)) = CarrySpec::general(&self.eta).validate() {
                        errs.extend(e);
                    }
                    if (self.eta[0] * self.n) % 2 == 1 {
                        errs.push(format!(
                            "eta_0 * n = {} must be even (eta_0 odd requires even n)",
                            self.eta[0] * self.n
                        ));
                    }
                } else {
                    errs.push("eta needs eta_0 and at least one eta_j".to_string());
                }
            }
        }
        errs
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn eta(&self) -> &[u64] {
        &self.eta
    }

    /// Same family and parameters at a different `n`.
    pub fn with_n(&self, n: u64) -> Result<Self> {
        let p = Profile { n, ..self.clone() };
        p.validate()?;
        Ok(p)
    }

    /// `h_0 = η_0 n + 1` (general family only).
    pub fn h0(&self) -> u64 {
        self.eta[0] * self.n + 1
    }

    /// `h_j − ½ = η_j n` (general family only).
    pub fn h_half(&self, j: usize) -> u64 {
        self.eta[j] * self.n
    }

    /// `N = min_j (h_j − ½)` (general family only).
    pub fn big_n(&self) -> u64 {
        (1..=self.s as usize).map(|j| self.h_half(j)).min().unwrap()
    }

    /// `M = max(h_0 − 2N − 1, h_1 − ½)` (general family only).
    pub fn big_m(&self) -> u64 {
        (self.h0() - 2 * self.big_n() - 1).max(self.h_half(1))
    }

    /// Index of the lcm `d` in the integrality statements: `n` or `M`.
    pub fn d_index(&self) -> u64 {
        match self.family {
            Family::Uniform => self.n,
            Family::General => self.big_m(),
        }
    }

    /// `L` in the reflection `a_{i,k} = (−1)^i a_{i, L−k}`: `n` or `h_0 − 1`.
    pub fn reflection_index(&self) -> u64 {
        match self.family {
            Family::Uniform => self.n,
            Family::General => self.h0() - 1,
        }
    }

    pub fn carry_spec(&self) -> CarrySpec {
        match self.family {
            Family::Uniform => CarrySpec::Uniform,
            Family::General => CarrySpec::general(&self.eta),
        }
    }

    /// Prime range of `Φ_n` as `(L, U)`: primes with `p² > L` and `p <= U`.
    pub fn phi_prime_range(&self) -> (u64, u64) {
        match self.family {
            Family::Uniform => (4 * self.n, self.n),
            Family::General => (2 * self.h0(), self.big_m()),
        }
    }

    /// `μ` with `d_index = μ·n`: 1 or `M/n`.
    pub fn mu(&self) -> Rational {
        Rational::new(BigInt::from(self.d_index()), BigInt::from(self.n))
    }

    /// `η` driving the exponent computation; `(3, 1, …, 1)` for the uniform family.
    pub fn asymptotic_eta(&self) -> Vec<u64> {
        match self.family {
            Family::Uniform => {
                let mut v = vec![3];
                v.extend(std::iter::repeat_n(1, self.s as usize));
                v
            }
            Family::General => self.eta.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Uniform => format!("uniform(s={}, n={})", self.s, self.n),
            Family::General => format!(
                "general(eta=({}), n={})",
                self.eta.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
                self.n
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_beta_derived_data() {
        for n in [1u64, 2, 3, 4] {
            let p = Profile::six_beta(n);
            if n % 2 == 1 {
                assert!(p.is_err(), "eta_0 = 31 needs even n");
                continue;
            }
            let p = p.unwrap();
            assert_eq!(p.s(), 13);
            assert_eq!(p.h0(), 31 * n + 1);
            assert_eq!(p.big_n(), 10 * n);
            assert_eq!(p.big_m(), 11 * n);
            assert_eq!(p.mu(), Rational::from_integer(BigInt::from(11)));
        }
    }

    #[test]
    fn uniform_conditions() {
        assert!(Profile::uniform(17, 2).is_ok());
        assert!(Profile::uniform(3, 3).is_err());
        assert!(Profile::uniform(4, 2).is_err());
        assert!(Profile::uniform(1, 2).is_err());
        let p = Profile::uniform(5, 4).unwrap();
        assert_eq!(p.asymptotic_eta(), vec![3, 1, 1, 1, 1, 1]);
        assert_eq!(p.phi_prime_range(), (16, 4));
    }

    #[test]
    fn general_conditions() {
        // eta_1 = eta_0 / 2 violates the strict inequality
        let err = Profile::general(vec![10, 5, 1, 1, 1, 1], 2).unwrap_err();
        match err {
            Error::InvalidProfile(v) => assert!(v.iter().any(|m| m.contains("eta_1"))),
            _ => panic!(),
        }
        // sum 15 exceeds (s-1)/2 * eta_0 = 14
        assert!(Profile::general(vec![7, 3, 3, 3, 3, 3], 2).is_err());
        assert!(Profile::general(vec![5, 2, 2, 2, 2, 2], 2).is_ok());
        assert!(Profile::general(vec![5, 1, 1, 1, 1, 1], 2).is_ok());
        assert!(Profile::general(vec![5, 1, 1, 1, 1, 1], 1).is_err());
        assert!(Profile::general(vec![4, 1, 1, 1], 1).is_err());
    }
}
