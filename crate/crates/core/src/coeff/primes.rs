/// Default working prime for modular runs: the largest prime below `2^62`.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Descending sequence of primes below `2^62`, starting at [`DEFAULT_PRIME`].
pub fn modular_primes() -> impl Iterator<Item = u64> {
    let mut next = DEFAULT_PRIME + 2;
    std::iter::from_fn(move || {
        next -= 2;
        while !is_prime_u64(next) {
            next -= 2;
        }
        Some(next)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_largest_below_2_62() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(((DEFAULT_PRIME + 1)..(1u64 << 62)).all(|n| !is_prime_u64(n)));
        let first: Vec<_> = modular_primes().take(3).collect();
        assert_eq!(first, vec![DEFAULT_PRIME, 4611686018427387817, 4611686018427387787]);
    }

    #[test]
    fn small_primes() {
        let found: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime_u64(3215031751));
    }
}
