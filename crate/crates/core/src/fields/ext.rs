//! Arithmetic in F_{p^n} = F_p[X]/(m(X)) in the polynomial basis 1, X, ..., X^{n-1}.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use super::prime::{add_mod, inv_mod, is_prime, mul_mod, pow_mod, sub_mod};
use super::upoly;
use super::FieldError;

pub const MAX_DEGREE: usize = 32;

/// An element of F_{p^n}: coordinates in the polynomial basis, each in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    coeffs: SmallVec<[u64; 8]>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as an F_p scalar, if the element lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

struct Inner {
    p: u64,
    n: usize,
    /// Monic modulus, low degree first, length n + 1.
    modulus: Vec<u64>,
    /// `frob[j]` = coordinates of (X^j)^p.
    frob: Vec<Vec<u64>>,
    /// `trace_basis[j]` = Tr(X^j).
    trace_basis: Vec<u64>,
}

/// A finite field F_{p^n} with a fixed irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldConfig {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p(), self.n(), self.modulus_string())
    }
}

impl PartialEq for FieldConfig {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldConfig {}

/// F_{p^n} with the smallest monic irreducible modulus, where moduli
/// X^n + c_{n-1}X^{n-1} + ... + c_0 are ordered by the integer
/// c_0 + c_1 p + ... + c_{n-1} p^{n-1}.
pub fn make_field(p: u64, n: usize) -> Result<FieldConfig, FieldError> {
    if !is_prime(p) || p >= 1 << 63 {
        return Err(FieldError::NotPrime(p));
    }
    if n == 0 || n > MAX_DEGREE {
        return Err(FieldError::DegreeOutOfRange(n));
    }
    if n == 1 {
        return FieldConfig::with_modulus(p, vec![0, 1]);
    }
    let mut low = vec![0u64; n];
    loop {
        // constant term 0 means X divides the modulus
        if low[0] != 0 {
            let mut f = low.clone();
            f.push(1);
            if upoly::is_irreducible(&f, p) {
                return FieldConfig::with_modulus(p, f);
            }
        }
        // increment as a base-p counter, c_0 least significant
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < n, "an irreducible polynomial of every degree exists");
        }
    }
}

impl FieldConfig {
    /// Field defined by an explicit modulus (low degree first, monic).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime(p) || p >= 1 << 63 {
            return Err(FieldError::NotPrime(p));
        }
        let n = modulus.len().saturating_sub(1);
        if n == 0 || n > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if modulus[n] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { expected: n });
        }
        if !upoly::is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus(p));
        }
        let mut cfg = FieldConfig {
            inner: Arc::new(Inner {
                p,
                n,
                modulus,
                frob: Vec::new(),
                trace_basis: Vec::new(),
            }),
        };
        let frob = if n == 1 {
            vec![vec![1]]
        } else {
            // images of X^j under Frobenius are the powers of X^p
            let xp = cfg.pow(&cfg.basis(1), p as u128);
            let mut cur = cfg.one();
            let mut frob = Vec::with_capacity(n);
            for _ in 0..n {
                frob.push(cur.coeffs.to_vec());
                cur = cfg.mul(&cur, &xp);
            }
            frob
        };
        Arc::get_mut(&mut cfg.inner).unwrap().frob = frob;
        let mut trace_basis = Vec::with_capacity(n);
        for j in 0..n {
            let xj = cfg.basis(j);
            let mut acc = xj.clone();
            let mut cur = xj;
            for _ in 1..n {
                cur = cfg.frobenius(&cur);
                acc = cfg.add(&acc, &cur);
            }
            debug_assert!(acc.as_prime().is_some());
            trace_basis.push(acc.coeffs[0]);
        }
        Arc::get_mut(&mut cfg.inner).unwrap().trace_basis = trace_basis;
        Ok(cfg)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Field size p^n, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.n() as u32)
    }

    /// Field size as u64, if it fits.
    pub fn size(&self) -> Option<u64> {
        self.order().and_then(|q| u64::try_from(q).ok())
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// The modulus written as a polynomial in X, highest degree first.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.inner.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    fn elem(&self, coeffs: SmallVec<[u64; 8]>) -> ExtElement {
        debug_assert_eq!(coeffs.len(), self.n());
        ExtElement { coeffs }
    }

    pub fn zero(&self) -> ExtElement {
        self.elem(SmallVec::from_elem(0, self.n()))
    }

    pub fn one(&self) -> ExtElement {
        self.from_u64(1)
    }

    /// The basis element X^j.
    pub fn basis(&self, j: usize) -> ExtElement {
        let mut e = self.zero();
        e.coeffs[j] = 1;
        e
    }

    /// Embedding of the prime-field value `c mod p`.
    pub fn from_u64(&self, c: u64) -> ExtElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p();
        e
    }

    pub fn from_i64(&self, c: i64) -> ExtElement {
        self.from_u64(c.rem_euclid(self.p() as i64) as u64)
    }

    /// Element with the given coordinates, which must be reduced.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<ExtElement, FieldError> {
        if coeffs.len() != self.n() || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(FieldError::Parse {
                input: format!("{coeffs:?}"),
                reason: format!("expected {} coordinates below {}", self.n(), self.p()),
            });
        }
        Ok(self.elem(coeffs.iter().copied().collect()))
    }

    /// Parses "c0,c1,...,c{n-1}" (decimal coordinates, each below p).
    pub fn parse(&self, s: &str) -> Result<ExtElement, FieldError> {
        let err = |reason: String| FieldError::Parse {
            input: s.to_string(),
            reason,
        };
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| err(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != self.n() {
            return Err(err(format!("expected {} coordinates, got {}", self.n(), coeffs.len())));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(err(format!("coordinate {c} not below p = {}", self.p())));
        }
        Ok(self.elem(coeffs.into_iter().collect()))
    }

    /// Position of `a` in the enumeration order: lexicographic on the
    /// coordinate vector with c0 most significant.
    pub fn index(&self, a: &ExtElement) -> u64 {
        a.coeffs.iter().fold(0, |acc, &c| acc * self.p() + c)
    }

    /// Inverse of [`index`](Self::index).
    pub fn element_at(&self, mut index: u64) -> ExtElement {
        let mut coeffs: SmallVec<[u64; 8]> = SmallVec::from_elem(0, self.n());
        for c in coeffs.iter_mut().rev() {
            *c = index % self.p();
            index /= self.p();
        }
        self.elem(coeffs)
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let p = self.p();
        self.elem(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, p))
                .collect(),
        )
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let p = self.p();
        self.elem(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, p))
                .collect(),
        )
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        let p = self.p();
        self.elem(
            a.coeffs
                .iter()
                .map(|&x| if x == 0 { 0 } else { p - x })
                .collect(),
        )
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, a: &ExtElement, c: u64) -> ExtElement {
        let p = self.p();
        let c = c % p;
        self.elem(a.coeffs.iter().map(|&x| mul_mod(x, c, p)).collect())
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let p = self.p();
        let n = self.n();
        if n == 1 {
            return self.elem(SmallVec::from_elem(mul_mod(a.coeffs[0], b.coeffs[0], p), 1));
        }
        let mut prod: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * n - 1);
        if p < 1 << 32 {
            // products fit in 64 bits; accumulate without intermediate reduction
            let mut acc: SmallVec<[u128; 16]> = SmallVec::from_elem(0, 2 * n - 1);
            for (i, &x) in a.coeffs.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.coeffs.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            for (d, s) in prod.iter_mut().zip(acc) {
                *d = (s % p as u128) as u64;
            }
        } else {
            for (i, &x) in a.coeffs.iter().enumerate() {
                for (j, &y) in b.coeffs.iter().enumerate() {
                    prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
                }
            }
        }
        let m = &self.inner.modulus;
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..n {
                prod[k - n + i] = sub_mod(prod[k - n + i], mul_mod(c, m[i], p), p);
            }
        }
        self.elem(prod[..n].iter().copied().collect())
    }

    pub fn square(&self, a: &ExtElement) -> ExtElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &ExtElement, mut e: u128) -> ExtElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// a^p, as a linear map on coordinates.
    pub fn frobenius(&self, a: &ExtElement) -> ExtElement {
        let p = self.p();
        let n = self.n();
        let mut out: SmallVec<[u64; 8]> = SmallVec::from_elem(0, n);
        for (j, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &f) in out.iter_mut().zip(&self.inner.frob[j]) {
                *o = add_mod(*o, mul_mod(c, f, p), p);
            }
        }
        self.elem(out)
    }

    /// a^(p^k).
    pub fn frobenius_pow(&self, a: &ExtElement, k: usize) -> ExtElement {
        let mut out = a.clone();
        for _ in 0..k % self.n() {
            out = self.frobenius(&out);
        }
        out
    }

    /// Tr_{p^n/p}(a) as a value in `0..p`.
    pub fn trace(&self, a: &ExtElement) -> u64 {
        let p = self.p();
        a.coeffs
            .iter()
            .zip(&self.inner.trace_basis)
            .fold(0, |s, (&c, &t)| add_mod(s, mul_mod(c, t, p), p))
    }

    /// N_{p^n/p}(a) as a value in `0..p`.
    pub fn norm(&self, a: &ExtElement) -> u64 {
        let conj = self.conjugate_product(a);
        self.mul(a, &conj).coeffs[0]
    }

    // a^p · a^(p^2) · ... · a^(p^(n-1))
    fn conjugate_product(&self, a: &ExtElement) -> ExtElement {
        let mut acc = self.one();
        let mut cur = a.clone();
        for _ in 1..self.n() {
            cur = self.frobenius(&cur);
            acc = self.mul(&acc, &cur);
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &ExtElement) -> Option<ExtElement> {
        let conj = self.conjugate_product(a);
        let norm = self.mul(a, &conj).coeffs[0];
        let ninv = inv_mod(norm, self.p())?;
        Some(self.scale(&conj, ninv))
    }

    pub fn div(&self, a: &ExtElement, b: &ExtElement) -> Option<ExtElement> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Whether `a` is a square (zero counts as a square).
    pub fn is_square(&self, a: &ExtElement) -> bool {
        if a.is_zero() || self.p() == 2 {
            return true;
        }
        let q = self.order().expect("field order fits in 128 bits");
        self.pow(a, (q - 1) / 2) == self.one()
    }

    /// One square root of `a` (Tonelli–Shanks), or `None` for non-squares.
    /// Which of the two roots is returned is deterministic but unspecified.
    pub fn sqrt(&self, a: &ExtElement) -> Option<ExtElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        let q = self.order().expect("field order fits in 128 bits");
        if self.p() == 2 {
            return Some(self.pow(a, q / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        let s = (q - 1).trailing_zeros();
        let odd = (q - 1) >> s;
        let nonresidue = (1..)
            .map(|i| self.element_at(i))
            .find(|c| !self.is_square(c))
            .expect("non-squares exist in odd characteristic");
        let mut m = s;
        let mut c = self.pow(&nonresidue, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = self.square(&t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..m - i - 1 {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Inverse of 2, panicking in characteristic 2.
    pub fn half(&self) -> ExtElement {
        assert!(self.p() != 2, "2 is not invertible in characteristic 2");
        self.from_u64(pow_mod(2, self.p() - 2, self.p()))
    }

    /// Every element, in enumeration order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let q = self.size().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_at(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(cfg: &FieldConfig, rng: &mut ChaCha8Rng) -> ExtElement {
        let c: Vec<u64> = (0..cfg.n()).map(|_| rng.gen_range(0..cfg.p())).collect();
        cfg.from_coeffs(&c).unwrap()
    }

    #[test]
    fn make_field_choices() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert!(matches!(make_field(4, 2), Err(FieldError::NotPrime(4))));
        assert!(matches!(make_field(5, 0), Err(FieldError::DegreeOutOfRange(0))));
        // every X^3 + c has a root mod 5 (cubing is a bijection), so the scan
        // moves on to X^3 + X + 1
        let f = make_field(5, 3).unwrap();
        let m = f.modulus();
        for x in 0..5u64 {
            let v = m.iter().rev().fold(0, |acc, &c| (acc * x + c) % 5);
            assert_ne!(v, 0);
        }
        assert_eq!(m, &[1, 1, 0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn with_modulus_rejects_reducible() {
        assert!(matches!(
            FieldConfig::with_modulus(5, vec![4, 0, 1]),
            Err(FieldError::ReducibleModulus(5))
        ));
        assert!(matches!(
            FieldConfig::with_modulus(5, vec![2, 0, 2]),
            Err(FieldError::BadModulus { .. })
        ));
    }

    #[test]
    fn index_roundtrip_and_order() {
        let f = make_field(3, 3).unwrap();
        for i in 0..27 {
            assert_eq!(f.index(&f.element_at(i)), i);
        }
        assert_eq!(f.element_at(1).coeffs(), &[0, 0, 1]);
        assert_eq!(f.element_at(9).coeffs(), &[1, 0, 0]);
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(5, 3), (7, 4), (2, 5), (1_000_000_007, 2), (9_223_372_036_854_775_783, 3)] {
            let f = make_field(p, n).unwrap();
            for _ in 0..1000 {
                let (a, b, c) = (random(&f, &mut rng), random(&f, &mut rng), random(&f, &mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
        let f = make_field(5, 2).unwrap();
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn frobenius_is_pth_power_of_order_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = make_field(5, 3).unwrap();
        for _ in 0..100 {
            let a = random(&f, &mut rng);
            let b = random(&f, &mut rng);
            assert_eq!(f.frobenius(&a), f.pow(&a, 5));
            assert_eq!(f.frobenius_pow(&a, 3), a);
            assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
            assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_subfield() {
        for (p, n) in [(2, 6), (3, 4), (5, 3), (7, 2), (101, 2)] {
            let f = make_field(p, n).unwrap();
            let fixed: Vec<_> = f.elements().filter(|a| f.frobenius(a) == *a).collect();
            assert_eq!(fixed.len() as u64, p);
            assert!(fixed.iter().all(|a| a.as_prime().is_some()));
        }
    }

    #[test]
    fn trace_linear_surjective_and_telescoping() {
        for (p, n) in [(5, 3), (3, 4), (2, 6), (97, 2)] {
            let f = make_field(p, n).unwrap();
            assert_eq!(f.trace(&f.one()), n as u64 % p);
            let mut hits = vec![0u64; p as usize];
            for a in f.elements() {
                hits[f.trace(&a) as usize] += 1;
                let ap = f.sub(&f.frobenius(&a), &a);
                assert_eq!(f.trace(&ap), 0);
            }
            // surjective with equal fibres, as for any nonzero linear form
            let q = f.size().unwrap();
            assert!(hits.iter().all(|&h| h == q / p));
            let a = f.element_at(q / 3);
            let b = f.element_at(q / 2 + 1);
            assert_eq!(
                f.trace(&f.add(&f.scale(&a, 3), &b)),
                (3 * f.trace(&a) + f.trace(&b)) % p
            );
        }
    }

    #[test]
    fn denominator_never_vanishes_when_trace_nonzero() {
        for (p, n) in [(5, 3), (3, 5), (7, 4), (2, 6)] {
            let f = make_field(p, n).unwrap();
            let bs: Vec<_> = f.elements().filter(|b| f.trace(b) != 0).take(3).collect();
            for b in &bs {
                for x in f.elements() {
                    let z = f.add(&f.sub(&f.frobenius(&x), &x), b);
                    assert!(!z.is_zero());
                }
            }
        }
    }

    #[test]
    fn norm_is_multiplicative_and_in_prime_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = make_field(7, 3).unwrap();
        for _ in 0..200 {
            let a = random(&f, &mut rng);
            let b = random(&f, &mut rng);
            assert_eq!(f.norm(&f.mul(&a, &b)), f.norm(&a) * f.norm(&b) % 7);
            assert_eq!(f.from_u64(f.norm(&a)), f.pow(&a, (343 - 1) / 6));
        }
    }

    #[test]
    fn square_roots() {
        for (p, n) in [(5, 3), (2, 4), (13, 2), (17, 2)] {
            let f = make_field(p, n).unwrap();
            let mut squares = 0;
            for a in f.elements() {
                match f.sqrt(&a) {
                    Some(r) => {
                        assert_eq!(f.square(&r), a);
                        squares += 1;
                    }
                    None => assert!(!f.is_square(&a)),
                }
            }
            let q = f.size().unwrap();
            let expect = if p == 2 { q } else { q.div_ceil(2) };
            assert_eq!(squares, expect);
        }
    }

    #[test]
    fn parse_and_display() {
        let f = make_field(5, 3).unwrap();
        let a = f.parse("1,0,4").unwrap();
        assert_eq!(a.to_string(), "1,0,4");
        assert!(f.parse("1,0").is_err());
        assert!(f.parse("1,0,5").is_err());
        assert!(f.parse("x,0,1").is_err());
        assert_eq!(f.modulus_string(), "X^3 + X + 1");
    }
}
