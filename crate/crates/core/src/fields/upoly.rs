//! Dense univariate polynomials over F_p, just enough to find and check
//! irreducible moduli. Coefficients are stored low degree first.

use super::prime::{add_mod, inv_mod, mul_mod, sub_mod};

pub(crate) fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    out
}

/// Remainder of `a` modulo `m` (any nonzero `m`).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p).expect("leading coefficient invertible");
    while r.len() > dm {
        let k = r.len() - 1;
        let c = mul_mod(r[k], lc_inv, p);
        for i in 0..=dm {
            r[k - dm + i] = sub_mod(r[k - dm + i], mul_mod(c, m[i], p), p);
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` (monic, degree n) is irreducible iff X^(p^n) = X mod f
/// and gcd(X^(p^(n/r)) - X, f) = 1 for every prime r dividing n.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    // frob[k] = X^(p^k) mod f
    let x = rem(&[0, 1], f, p);
    let mut frob = vec![x.clone()];
    for k in 1..=n {
        let next = powmod(&frob[k - 1], p, f, p);
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    for r in prime_factors(n) {
        let mut h = frob[n / r].clone();
        h.resize(h.len().max(2), 0);
        h[1] = sub_mod(h[1], 1, p);
        trim(&mut h);
        if gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_root(f: &[u64], p: u64) -> bool {
        (0..p).any(|x| {
            let mut acc = 0;
            for &c in f.iter().rev() {
                acc = add_mod(mul_mod(acc, x, p), c, p);
            }
            acc == 0
        })
    }

    #[test]
    fn cubics_irreducible_iff_rootless() {
        for p in [2u64, 3, 5, 7] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let f = [c0, c1, c2, 1];
                        assert_eq!(is_irreducible(&f, p), !has_root(&f, p), "{f:?} mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn quartic_product_of_quadratics_rejected() {
        // (x^2 + 1)(x^2 + x + 2) over F_3, both factors irreducible and rootless
        let f = mul(&[1, 0, 1], &[2, 1, 1], 3);
        assert!(!has_root(&f, 3));
        assert!(!is_irreducible(&f, 3));
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // number of monic irreducible quartics over F_3 is (3^4 - 3^2)/4 = 18
        let p = 3;
        let mut count = 0;
        for idx in 0..81u64 {
            let f = [idx % 3, idx / 3 % 3, idx / 9 % 3, idx / 27, 1];
            if is_irreducible(&f, p) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
