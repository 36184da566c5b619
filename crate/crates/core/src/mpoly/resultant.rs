//! Resultants and discriminants.
//!
//! Integer resultants are computed modulo word-size primes by evaluating the
//! Sylvester determinant on a grid of points for the remaining variables,
//! interpolating each prime's image densely, and lifting with the Chinese
//! remainder theorem. The formal degrees of the inputs are used for every
//! evaluation, so the determinant at a point is always the image of the
//! resultant there and no evaluation point is unlucky. The fraction-free
//! Bareiss determinant of the symbolic Sylvester matrix is kept as the
//! reference implementation.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntPoly, IntegerRing, Monomial, Ring, SparsePoly, MAX_VARS};
use crate::exec::Exec;
use crate::fields::prime::{inv_mod, is_prime};

/// Montgomery arithmetic modulo an odd prime below 2^62.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mont {
    p: u64,
    /// -p^(-1) mod 2^64
    pinv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Mont {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 62);
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont {
            p,
            pinv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub(crate) fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub(crate) fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub(crate) fn one(&self) -> u64 {
        self.to_mont(1)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn from_bigint(&self, c: &BigInt) -> u64 {
        let r = (c % BigInt::from(self.p)).to_i128().unwrap();
        self.to_mont(r.rem_euclid(self.p as i128) as u64)
    }
}

/// Primes below 2^62, largest first.
fn crt_primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

/// Determinant mod p of a square matrix in Montgomery form (destroyed).
fn det_mod(m: &mut [Vec<u64>], ar: &Mont) -> u64 {
    let n = m.len();
    let mut det = ar.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = ar.sub(0, det);
        }
        det = ar.mul(det, m[c][c]);
        let inv = ar.inv(m[c][c]);
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = ar.mul(m[r][c], inv);
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[c];
            for (x, &y) in bottom[0][c..].iter_mut().zip(&pivot_row[c..]) {
                *x = ar.sub(*x, ar.mul(f, y));
            }
        }
    }
    det
}

/// Sylvester determinant of univariate coefficient vectors (low degree
/// first) with formal degrees `a.len() - 1` and `b.len() - 1`.
fn sylvester_det(a: &[u64], b: &[u64], ar: &Mont) -> u64 {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return ar.one();
    }
    let mut mat = vec![vec![0u64; size]; size];
    for i in 0..n {
        for (k, &c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c;
        }
    }
    for i in 0..m {
        for (k, &c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c;
        }
    }
    det_mod(&mut mat, ar)
}

/// Coefficients of f in v, each as (coefficient mod p, exponents on the
/// grid variables).
struct Compiled {
    by_degree: Vec<Vec<(u64, [u16; MAX_VARS])>>,
}

impl Compiled {
    fn new(f: &IntPoly, v: usize, grid_vars: &[usize], ar: &Mont) -> Self {
        let by_degree = f
            .coefficients_in(v)
            .iter()
            .map(|c| {
                c.terms()
                    .iter()
                    .map(|(m, coef)| {
                        let mut e = [0u16; MAX_VARS];
                        for (slot, &w) in grid_vars.iter().enumerate() {
                            e[slot] = m.get(w);
                        }
                        (ar.from_bigint(coef), e)
                    })
                    .collect()
            })
            .collect();
        Compiled { by_degree }
    }

    fn eval(&self, pows: &[&[u64]], ar: &Mont) -> Vec<u64> {
        self.by_degree
            .iter()
            .map(|terms| {
                let mut acc = 0;
                for (c, e) in terms {
                    let mut t = *c;
                    for (slot, pw) in pows.iter().enumerate() {
                        let k = e[slot] as usize;
                        if k > 0 {
                            t = ar.mul(t, pw[k]);
                        }
                    }
                    acc = ar.add(acc, t);
                }
                acc
            })
            .collect()
    }
}

/// Converts values at 0, 1, ..., d (in place) to monomial coefficients.
fn interpolate_line(vals: &mut [u64], ar: &Mont, inv_table: &[u64]) {
    let d = vals.len();
    // Newton divided differences on the nodes 0..d
    for j in 1..d {
        for i in (j..d).rev() {
            let diff = ar.sub(vals[i], vals[i - 1]);
            vals[i] = ar.mul(diff, inv_table[j]);
        }
    }
    // Newton form to monomial form: p = c_0 + (x - 0)(c_1 + (x - 1)(c_2 + ...))
    let mut coeffs = vec![0u64; d];
    for k in (0..d).rev() {
        // coeffs <- coeffs * (x - k) + vals[k]
        let node = ar.to_mont(k as u64);
        let mut carry = 0;
        for c in coeffs.iter_mut() {
            let next = *c;
            *c = ar.sub(carry, ar.mul(node, next));
            carry = next;
        }
        coeffs[0] = ar.add(coeffs[0], vals[k]);
    }
    vals.copy_from_slice(&coeffs);
}

/// Res_v(f, g) over Z, using all available workers.
pub fn resultant(f: &IntPoly, g: &IntPoly, v: usize) -> IntPoly {
    resultant_with(f, g, v, &Exec::default())
}

pub fn resultant_with(f: &IntPoly, g: &IntPoly, v: usize, exec: &Exec) -> IntPoly {
    assert_eq!(f.vars(), g.vars(), "resultant operands must share variables");
    let vars = f.vars().clone();
    if f.is_zero() || g.is_zero() {
        return IntPoly::zero(IntegerRing, vars);
    }
    let m = f.degree_in(v) as u64;
    let n = g.degree_in(v) as u64;
    let grid_vars: Vec<usize> = (0..f.nvars())
        .filter(|&w| w != v && (f.degree_in(w) > 0 || g.degree_in(w) > 0))
        .collect();
    let bounds: Vec<usize> = grid_vars
        .iter()
        .map(|&w| (n * f.degree_in(w) as u64 + m * g.degree_in(w) as u64) as usize)
        .collect();
    let shape: Vec<usize> = bounds.iter().map(|b| b + 1).collect();
    let total: usize = shape.iter().product();
    // ||Res||_1 <= ||f||_1^n ||g||_1^m (product of Sylvester row sums)
    let bound = num_traits::pow(f.l1_norm(), n as usize) * num_traits::pow(g.l1_norm(), m as usize);
    let target = bound * 2u32 + 1u32;

    let mut primes = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut prime_iter = crt_primes();
    while modulus < target {
        let p = prime_iter.next().unwrap();
        let ar = Mont::new(p);
        images.push(image_mod_p(f, g, v, &grid_vars, &shape, total, &ar, exec));
        primes.push(p);
        modulus *= p;
    }

    let crt = exec.map_chunks(0..total as u64, 4096, |range| {
        range
            .map(|idx| lift(&images, &primes, idx as usize, &modulus))
            .collect::<Vec<_>>()
    });
    let mut terms = Vec::new();
    for (idx, c) in crt.into_iter().flatten().enumerate() {
        let Some(c) = c else { continue };
        let mut mono = Monomial::ONE;
        let mut rest = idx;
        for (axis, &w) in grid_vars.iter().enumerate().rev() {
            mono.set(w, (rest % shape[axis]) as u16);
            rest /= shape[axis];
        }
        terms.push((mono, c));
    }
    IntPoly::from_terms(IntegerRing, vars, terms)
}

/// Symmetric CRT lift of one coefficient; `None` if it is zero.
fn lift(images: &[Vec<u64>], primes: &[u64], idx: usize, modulus: &BigInt) -> Option<BigInt> {
    if images.iter().all(|img| img[idx] == 0) {
        return None;
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (img, &p) in images.iter().zip(primes) {
        let r = img[idx];
        let pb = BigInt::from(p);
        let xm = (&x % &pb).to_u64().unwrap();
        let mm = (&m % &pb).to_u64().unwrap();
        let diff = (r as u128 + p as u128 - xm as u128) % p as u128;
        let t = diff * inv_mod(mm, p).unwrap() as u128 % p as u128;
        x += &m * BigInt::from(t as u64);
        m *= pb;
    }
    if &x * 2 > *modulus {
        x -= modulus;
    }
    if x.is_zero() {
        None
    } else {
        Some(x)
    }
}

#[allow(clippy::too_many_arguments)]
fn image_mod_p(
    f: &IntPoly,
    g: &IntPoly,
    v: usize,
    grid_vars: &[usize],
    shape: &[usize],
    total: usize,
    ar: &Mont,
    exec: &Exec,
) -> Vec<u64> {
    let fc = Compiled::new(f, v, grid_vars, ar);
    let gc = Compiled::new(g, v, grid_vars, ar);
    // pow_tables[axis][value][k] = value^k
    let pow_tables: Vec<Vec<Vec<u64>>> = grid_vars
        .iter()
        .enumerate()
        .map(|(axis, &w)| {
            let maxk = f.degree_in(w).max(g.degree_in(w)) as usize;
            (0..shape[axis])
                .map(|val| {
                    let x = ar.to_mont(val as u64);
                    let mut row = vec![ar.one()];
                    for k in 1..=maxk {
                        row.push(ar.mul(row[k - 1], x));
                    }
                    row
                })
                .collect()
        })
        .collect();
    let mut values: Vec<u64> = exec
        .map_chunks(0..total as u64, 256, |range| {
            let mut out = Vec::with_capacity((range.end - range.start) as usize);
            for idx in range {
                let mut rest = idx as usize;
                let mut pows: Vec<&[u64]> = vec![&[]; grid_vars.len()];
                for axis in (0..grid_vars.len()).rev() {
                    pows[axis] = &pow_tables[axis][rest % shape[axis]];
                    rest /= shape[axis];
                }
                let a = fc.eval(&pows, ar);
                let b = gc.eval(&pows, ar);
                out.push(sylvester_det(&a, &b, ar));
            }
            out
        })
        .into_iter()
        .flatten()
        .collect();
    // interpolate along each axis in turn
    let max_len = shape.iter().copied().max().unwrap_or(1);
    let inv_table: Vec<u64> = (0..max_len.max(1))
        .map(|j| if j == 0 { 0 } else { ar.inv(ar.to_mont(j as u64)) })
        .collect();
    let mut stride = 1;
    for axis in (0..grid_vars.len()).rev() {
        let len = shape[axis];
        let block = stride * len;
        let mut line = vec![0u64; len];
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = values[outer + inner + k * stride];
                }
                interpolate_line(&mut line, ar, &inv_table);
                for (k, &c) in line.iter().enumerate() {
                    values[outer + inner + k * stride] = c;
                }
            }
        }
        stride = block;
    }
    for x in values.iter_mut() {
        *x = ar.from_mont(*x);
    }
    values
}

/// Res_v(f, g) as the determinant of the symbolic Sylvester matrix, by
/// fraction-free (Bareiss) elimination. Exact over any integral domain.
pub fn resultant_bareiss<R: Ring>(f: &SparsePoly<R>, g: &SparsePoly<R>, v: usize) -> SparsePoly<R> {
    let ring = f.ring().clone();
    let vars = f.vars().clone();
    let zero = SparsePoly::zero(ring.clone(), vars.clone());
    if f.is_zero() || g.is_zero() {
        return zero;
    }
    let a = f.coefficients_in(v);
    let b = g.coefficients_in(v);
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return SparsePoly::one(ring, vars);
    }
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + i][i + k] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev = SparsePoly::one(ring.clone(), vars.clone());
    for k in 0..size {
        let Some(pr) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return zero;
        };
        if pr != k {
            mat.swap(pr, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = zero.clone();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// disc_v(f) = (-1)^(d(d-1)/2) Res_v(f, ∂f/∂v) / lc_v(f), d = deg_v f.
pub fn discriminant(f: &IntPoly, v: usize) -> IntPoly {
    let d = f.degree_in(v);
    assert!(d >= 1, "discriminant needs positive degree");
    let res = resultant(f, &f.derivative(v), v);
    let lc = f.coefficients_in(v).pop().unwrap();
    let q = res.exact_div(&lc).expect("leading coefficient divides Res(f, f')");
    if (d as u64 * (d as u64 - 1) / 2) % 2 == 1 {
        q.neg()
    } else {
        q
    }
}

/// Whether `f` is divisible by `g`.
pub fn divides(g: &IntPoly, f: &IntPoly) -> bool {
    f.exact_div(g).is_ok()
}

/// Largest k with g^k | f (f nonzero), capped at `limit`.
pub fn multiplicity(g: &IntPoly, f: &IntPoly, limit: u32) -> u32 {
    let mut k = 0;
    let mut cur = f.clone();
    while k < limit {
        match cur.exact_div(g) {
            Ok(q) => {
                cur = q;
                k += 1;
            }
            Err(_) => break,
        }
    }
    k
}

impl IntPoly {
    /// The integer content with sign making the leading coefficient positive.
    pub fn signed_content(&self) -> BigInt {
        let c = self.content();
        if self.terms().first().is_some_and(|(_, x)| x.is_negative()) {
            -c
        } else {
            c
        }
    }
}
