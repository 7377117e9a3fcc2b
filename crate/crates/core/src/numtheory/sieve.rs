use super::factored::FactoredInteger;

/// All primes `<= limit`, ascending (sieve of Eratosthenes over odd numbers).
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    // index i represents 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2u64];
    primes.extend(
        (1..half)
            .filter(|&i| !composite[i] && 2 * i < limit)
            .map(|i| (2 * i + 1) as u64),
    );
    primes
}

/// `d_m = lcm(1, …, m) = ∏_{p <= m} p^⌊log_p m⌋`.
pub fn lcm_up_to(m: u64) -> FactoredInteger {
    let mut out = FactoredInteger::one();
    for p in sieve_primes(m) {
        let mut e = 0u32;
        let mut pk = p;
        while pk <= m {
            e += 1;
            match pk.checked_mul(p) {
                Some(v) => pk = v,
                None => break,
            }
        }
        out.set(p, e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_integer::Integer;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
    }

    #[test]
    fn small_sieves() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert!(sieve_primes(1).is_empty());
        assert!(sieve_primes(0).is_empty());
        assert_eq!(sieve_primes(2), vec![2]);
        let p30 = sieve_primes(30);
        assert_eq!(p30.len(), 10);
        assert_eq!(*p30.last().unwrap(), 29);
        assert_eq!(sieve_primes(2000), trial_division_primes(2000));
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_up_to(1).value(), BigUint::from(1u32));
        assert_eq!(lcm_up_to(6).value(), BigUint::from(60u32));
        let fold = (1..=12u64).fold(1u64, |acc, k| acc.lcm(&k));
        assert_eq!(fold, 27720);
        assert_eq!(lcm_up_to(12).value(), BigUint::from(27720u32));
    }

    #[test]
    fn lcm_ratio_is_one_or_prime() {
        let primes = sieve_primes(300);
        let mut prev = lcm_up_to(1).value();
        for m in 2..=300u64 {
            let cur = lcm_up_to(m).value();
            assert_eq!(&cur % &prev, BigUint::from(0u32));
            let ratio = &cur / &prev;
            if ratio != BigUint::from(1u32) {
                let r: u64 = ratio.try_into().unwrap();
                assert!(primes.contains(&r), "m={m} ratio={r}");
            }
            prev = cur;
        }
    }
}
