//! Small integer helpers shared by the group and module code.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Result<(u32, u32)> {
    if n < 2 {
        return Err(Error::NotPrimePower(n));
    }
    let mut p = 2;
    while n % p != 0 {
        p += 1;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m != 1 {
        return Err(Error::NotPrimePower(n));
    }
    Ok((p as u32, k))
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer power overflow")
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

/// Returns `k` with `p^k == n`, or `None` when `n` is not a power of `p`.
pub fn log_exact(p: u64, mut n: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Multiplicative order of `r` modulo `m`, if `r` is a unit.
pub fn multiplicative_order(r: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let r = r % m;
    let mut x = r;
    for k in 1..=m {
        if x == 1 {
            return Some(k);
        }
        x = x * r % m;
        if x == r {
            return None;
        }
    }
    None
}

/// Turns omega counts into a primary decomposition type.
///
/// `logs[i]` is `log_p` of the number of elements killed by `p^(i+1)`,
/// for an abelian p-group (or section). Returns exponents in decreasing
/// order; the trivial group has the empty type.
pub fn invariants_from_omega_logs(logs: &[u32]) -> Vec<u32> {
    // jumps[i] = number of cyclic factors of exponent >= i+1
    let mut jumps = Vec::with_capacity(logs.len());
    let mut prev = 0;
    for &c in logs {
        jumps.push(c - prev);
        prev = c;
    }
    let factors = jumps.first().copied().unwrap_or(0);
    (1..=factors)
        .map(|j| jumps.iter().filter(|&&r| r >= j).count() as u32)
        .collect()
}
