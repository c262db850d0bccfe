//! Arithmetic in the prime field GF(p).
//!
//! Scalars are `u64` values reduced to the range `0..p`.  The modulus is
//! passed explicitly so that algebras over different primes can coexist.

/// Reduce an arbitrary integer (possibly negative) modulo `p`.
pub fn reduce_i64(a: i64, p: u64) -> u64 {
    let p = p as i64;
    (((a % p) + p) % p) as u64
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(a < p && b < p);
    a * b % p
}

/// Modular exponentiation.
pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of a nonzero scalar, via Fermat's little theorem.
///
/// Panics on zero input (division by zero).
pub fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "division by zero in GF({p})");
    pow(a, p - 2, p)
}

/// Binomial coefficient `C(a, b)` modulo the prime `p`, via Lucas' theorem.
///
/// The convention `C(a, b) = 0` for `b > a` falls out of the digit rule.
pub fn lucas_binom(mut a: u64, mut b: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while a > 0 || b > 0 {
        let (da, db) = (a % p, b % p);
        if db > da {
            return 0;
        }
        // C(da, db) with da, db < p: small enough to compute directly mod p.
        let mut num = 1u64;
        let mut den = 1u64;
        for k in 0..db {
            num = num * ((da - k) % p) % p;
            den = den * ((k + 1) % p) % p;
        }
        acc = acc * num % p * inv(den, p) % p;
        if acc == 0 {
            return 0;
        }
        a /= p;
        b /= p;
    }
    acc
}

/// Check that `p` is prime (trial division; moduli here are tiny).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn lucas_small_values() {
        // Against a direct Pascal triangle mod p.
        for p in [2u64, 3, 5, 7] {
            let n = 40usize;
            let mut row = vec![1u64];
            for a in 0..n {
                for b in 0..=a {
                    assert_eq!(lucas_binom(a as u64, b as u64, p), row[b] % p, "C({a},{b}) mod {p}");
                }
                let mut next = vec![1u64];
                for b in 1..=a {
                    next.push((row[b - 1] + row[b]) % p);
                }
                next.push(1);
                row = next;
            }
        }
    }

    #[test]
    fn lucas_out_of_range() {
        assert_eq!(lucas_binom(3, 5, 5), 0);
        // C(4, 2) = 6 == 0 mod 3: a carry in base 3.
        assert_eq!(lucas_binom(4, 2, 3), 0);
    }

    #[test]
    fn reduce_negative() {
        assert_eq!(reduce_i64(-1, 5), 4);
        assert_eq!(reduce_i64(-10, 5), 0);
        assert_eq!(reduce_i64(7, 5), 2);
    }
}
