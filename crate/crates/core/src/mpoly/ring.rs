//! Coefficient domains for [`SparsePoly`](super::SparsePoly).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fields::prime::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::fields::{ExtElement, FieldConfig};

/// A commutative ring with identity whose elements are plain values; the
/// ring object carries whatever context (modulus, field tables) is needed.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, c: i64) -> Self::Elem;
    fn from_bigint(&self, c: &BigInt) -> Self::Elem;
    /// `a / b` when `b` divides `a` exactly, else `None`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// Short name of the domain, e.g. `Z` or `F_7`.
    fn describe(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    /// Whether the element is "negative" for display purposes.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
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
}

/// The integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn from_i64(&self, c: i64) -> BigInt {
        BigInt::from(c)
    }
    fn from_bigint(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn describe(&self) -> String {
        "Z".into()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &BigInt) -> bool {
        a.is_negative()
    }
}

/// Rings where every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Characteristic of the field.
    fn characteristic(&self) -> u64;
}

/// F_p with canonical representatives `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime; this is not rechecked.
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 63).contains(&p), "modulus out of range");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        sub_mod(0, *a, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn from_i64(&self, c: i64) -> u64 {
        (c as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced value fits")
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        inv_mod(*b, self.p).map(|bi| mul_mod(*a, bi, self.p))
    }
    fn describe(&self) -> String {
        format!("F_{}", self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl Ring for FieldConfig {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        FieldConfig::zero(self)
    }
    fn one(&self) -> ExtElement {
        FieldConfig::one(self)
    }
    fn is_zero(&self, a: &ExtElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        FieldConfig::add(self, a, b)
    }
    fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        FieldConfig::sub(self, a, b)
    }
    fn neg(&self, a: &ExtElement) -> ExtElement {
        FieldConfig::neg(self, a)
    }
    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        FieldConfig::mul(self, a, b)
    }
    fn from_i64(&self, c: i64) -> ExtElement {
        FieldConfig::from_i64(self, c)
    }
    fn from_bigint(&self, c: &BigInt) -> ExtElement {
        self.from_u64(PrimeField::new(self.p()).from_bigint(c))
    }
    fn div_exact(&self, a: &ExtElement, b: &ExtElement) -> Option<ExtElement> {
        self.div(a, b)
    }
    fn describe(&self) -> String {
        format!("F_{}^{}", self.p(), self.n())
    }
    fn format(&self, a: &ExtElement) -> String {
        match a.as_prime() {
            Some(c) => c.to_string(),
            None => format!("[{a}]"),
        }
    }
}

impl Field for FieldConfig {
    fn inv(&self, a: &ExtElement) -> Option<ExtElement> {
        FieldConfig::inv(self, a)
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_exact_division() {
        let z = IntegerRing;
        assert_eq!(z.div_exact(&BigInt::from(12), &BigInt::from(-4)), Some(BigInt::from(-3)));
        assert_eq!(z.div_exact(&BigInt::from(13), &BigInt::from(4)), None);
        assert_eq!(z.div_exact(&BigInt::from(1), &BigInt::from(0)), None);
    }

    #[test]
    fn prime_field_reduction() {
        let f = PrimeField::new(7);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_bigint(&BigInt::from(-15)), 6);
        assert_eq!(f.div_exact(&3, &5), Some(2));
        assert_eq!(f.pow(&3, 6), 1);
    }
}
