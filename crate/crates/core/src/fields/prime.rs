//! Word-size modular arithmetic and prime utilities.

use crate::exec::Exec;

use super::FieldError;

/// Largest `prime_index` argument accepted unless the caller raises it.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1 << 32;

const SEGMENT: u64 = 1 << 18;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller–Rabin; the first twelve prime bases are a proven
/// witness set for every 64-bit input.
pub fn is_prime(m: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if m < 2 {
        return false;
    }
    for &b in &BASES {
        if m.is_multiple_of(b) {
            return m == b;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= m`.
///
/// Panics if no such prime fits in a `u64`.
pub fn next_prime(m: u64) -> u64 {
    let mut c = m.max(2);
    loop {
        if is_prime(c) {
            return c;
        }
        c = c.checked_add(1).expect("no 64-bit prime above input");
    }
}

/// Largest prime `<= m`, if any.
pub fn prev_prime(m: u64) -> Option<u64> {
    (2..=m).rev().find(|&c| is_prime(c))
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn count_segment(lo: u64, hi: u64, base: &[u64]) -> u64 {
    // counts primes in [lo, hi)
    let len = (hi - lo) as usize;
    let mut composite = vec![false; len];
    for &q in base {
        if q * q >= hi {
            break;
        }
        let mut start = lo.div_ceil(q) * q;
        if start < q * q {
            start = q * q;
        }
        let mut j = start;
        while j < hi {
            composite[(j - lo) as usize] = true;
            j += q;
        }
    }
    let mut count = 0;
    for (i, &c) in composite.iter().enumerate() {
        if !c && lo + i as u64 >= 2 {
            count += 1;
        }
    }
    count
}

/// Number of primes `<= m`, by a segmented sieve.
pub fn prime_count(m: u64, exec: &Exec) -> u64 {
    if m < 2 {
        return 0;
    }
    let base = small_primes(m.isqrt() + 1);
    let end = m + 1;
    exec.map_chunks(0..end, SEGMENT, |r| count_segment(r.start, r.end, &base))
        .into_iter()
        .sum()
}

/// Ordinal of the prime `m` (2 is the 1st prime).
pub fn prime_index(m: u64, limit: u64, exec: &Exec) -> Result<u64, FieldError> {
    if m > limit {
        return Err(FieldError::SieveBudgetExceeded { target: m, limit });
    }
    if !is_prime(m) {
        return Err(FieldError::NotPrime(m));
    }
    Ok(prime_count(m, exec))
}
