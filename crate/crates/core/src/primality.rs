//! Deterministic ground-truth primality for `u64`.
//!
//! Trial division up to `10^6`, Miller-Rabin with the first twelve prime bases
//! above that (exact for every `n < 3.3·10^24`, so for all of `u64`).

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: u64) -> bool {
    if n <= TRIAL_DIVISION_LIMIT {
        is_prime_trial_division(n)
    } else {
        is_prime_miller_rabin(n)
    }
}

pub fn is_prime_trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`; `m` must be positive.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn is_prime_miller_rabin(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: all primes `≤ limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n ≥ 6
    let n = count.max(6) as f64;
    let bound = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1;
    let mut primes = primes_up_to(bound);
    primes.truncate(count);
    primes
}

/// Prime factorization by trial division, ascending with repetition.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            factors.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert_eq!(primes_up_to(59), primes);
        assert_eq!(first_primes(17), primes);
        assert_eq!(first_primes(1), vec![2]);
        assert!(first_primes(0).is_empty());
    }

    #[test]
    fn methods_agree_near_the_switch() {
        for n in 999_000..1_001_000 {
            assert_eq!(is_prime_trial_division(n), is_prime_miller_rabin(n), "{n}");
        }
    }

    #[test]
    fn large_values() {
        assert!(is_prime(1_000_003));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(!is_prime(3_825_123_056_546_413_051)); // spsp to bases up to 19
        assert!(!is_prime(1_000_000_007u64 * 998_244_353));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1905), vec![3, 5, 127]);
        assert_eq!(factorize(705), vec![3, 5, 47]);
        assert_eq!(factorize(1024), vec![2; 10]);
        assert_eq!(factorize(97), vec![97]);
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn modular_power() {
        assert_eq!(pow_mod(2, 340, 341), 1);
        assert_eq!(pow_mod(2, 4, 4), 0);
        assert_eq!(pow_mod(7, 0, 1), 0);
        assert_eq!(pow_mod(u64::MAX - 1, 2, u64::MAX), 1);
    }
}
