//! Coprimality certificates and a fallback gcd for integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IntPoly, IntegerRing, PrimeField};
use crate::fields::prime::{inv_mod, mul_mod, sub_mod};

const CERT_PRIME: u64 = 4_611_686_018_427_387_847; // largest prime below 2^62
const CERT_TRIALS: usize = 4;

/// Outcome of [`coprime_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoprimeCertificate {
    /// No nonconstant common factor exists.
    Coprime,
    /// Every sampled specialization left a common factor in this variable.
    Inconclusive { var: String },
}

/// Proves that f and g have no common factor of positive degree.
///
/// For each variable v occurring in both, the other variables are set to a
/// random point mod a large prime at which both leading coefficients in v
/// survive. A common factor h involving v would then specialize to a
/// factor of degree deg_v(h) > 0 of both univariate images, so a trivial
/// univariate gcd rules out every common factor involving v. The check is a
/// proof; only its success is probabilistic.
pub fn coprime_certificate(f: &IntPoly, g: &IntPoly, seed: u64) -> CoprimeCertificate {
    let fp = f.reduce_mod_p(CERT_PRIME);
    let gp = g.reduce_mod_p(CERT_PRIME);
    let field = PrimeField::new(CERT_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in 0..f.nvars() {
        if f.degree_in(v) == 0 || g.degree_in(v) == 0 {
            continue;
        }
        let fc = fp.coefficients_in(v);
        let gc = gp.coefficients_in(v);
        let mut certified = false;
        for _ in 0..CERT_TRIALS {
            let point: Vec<u64> = (0..f.nvars()).map(|_| rng.gen_range(0..CERT_PRIME)).collect();
            let fu: Vec<u64> = fc.iter().map(|c| c.evaluate(&point)).collect();
            let gu: Vec<u64> = gc.iter().map(|c| c.evaluate(&point)).collect();
            if fu.last() == Some(&0) || gu.last() == Some(&0) {
                continue;
            }
            if univariate_gcd_degree(fu, gu, field.p()) == 0 {
                certified = true;
                break;
            }
        }
        if !certified {
            return CoprimeCertificate::Inconclusive {
                var: f.vars().name(v).to_string(),
            };
        }
    }
    CoprimeCertificate::Coprime
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lc_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = mul_mod(*a.last().unwrap(), lc_inv, p);
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = sub_mod(a[shift + i], mul_mod(c, bi, p), p);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Greatest common divisor over Z, with positive leading coefficient.
/// Recursive primitive pseudo-remainder sequences: fine for moderate
/// inputs, meant as the fallback behind structural reductions.
pub fn poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let r = gcd_rec(f, g);
    if r.leading_sign_negative() {
        r.neg()
    } else {
        r
    }
}

fn gcd_rec(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let main = (0..f.nvars()).rev().find(|&v| f.degree_in(v) > 0 || g.degree_in(v) > 0);
    let Some(v) = main else {
        let c = f.terms()[0].1.gcd(&g.terms()[0].1);
        return IntPoly::constant(IntegerRing, f.vars().clone(), c);
    };
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let cont = gcd_rec(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    while b.degree_in(v) > 0 {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        a = b;
        b = primitive_in(&r, v);
    }
    let pp = if b.degree_in(v) == 0 {
        IntPoly::one(IntegerRing, f.vars().clone())
    } else {
        primitive_in(&b, v)
    };
    cont.mul(&pp)
}

/// gcd of the coefficients of f as a polynomial in v.
fn content_in(f: &IntPoly, v: usize) -> IntPoly {
    let mut acc = IntPoly::zero(IntegerRing, f.vars().clone());
    for c in f.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() && acc.terms()[0].1.abs().is_one() {
            break;
        }
    }
    if acc.leading_sign_negative() {
        acc.neg()
    } else {
        acc
    }
}

fn primitive_in(f: &IntPoly, v: usize) -> IntPoly {
    let c = content_in(f, v);
    let p = f.exact_div(&c).expect("content divides");
    if p.coefficients_in(v).last().is_some_and(|l| l.leading_sign_negative()) {
        p.neg()
    } else {
        p
    }
}

/// lc(b)^k · a mod b in v, for whatever k the elimination needs.
fn pseudo_rem(a: &IntPoly, b: &IntPoly, v: usize) -> IntPoly {
    let bc = b.coefficients_in(v);
    let db = bc.len() - 1;
    let lcb = &bc[db];
    let mut r = a.coefficients_in(v);
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bi) in bc.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&lr.mul(bi));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    if r.is_empty() {
        return IntPoly::zero(IntegerRing, a.vars().clone());
    }
    IntPoly::from_coefficients_in(v, &r)
}

/// Integer gcd of contents, as used when clearing fractions.
pub(crate) fn content_gcd(a: &IntPoly, b: &IntPoly) -> BigInt {
    let g = a.content().gcd(&b.content());
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::super::VarSet;
    use super::*;

    fn vars() -> VarSet {
        VarSet::indexed("Y", 3)
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let vs = vars();
        let y1 = IntPoly::int_var(&vs, "Y1");
        let y2 = IntPoly::int_var(&vs, "Y2");
        let y3 = IntPoly::int_var(&vs, "Y3");
        let one = IntPoly::int_const(&vs, 1);
        let h = y1.mul(&y2).sub(&y3.pow(2)).add(&one);
        let f = h.mul(&y1.add(&y3)).scale(&BigInt::from(6));
        let g = h.mul(&y2.pow(2).sub(&one)).scale(&BigInt::from(4));
        let d = poly_gcd(&f, &g);
        assert_eq!(d, h.scale(&BigInt::from(2)));
        assert!(matches!(coprime_certificate(&f, &g, 1), CoprimeCertificate::Inconclusive { .. }));
        assert_eq!(coprime_certificate(&y1.add(&y3), &y2.pow(2).sub(&one), 1), CoprimeCertificate::Coprime);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let vs = vars();
        let y1 = IntPoly::int_var(&vs, "Y1");
        let y2 = IntPoly::int_var(&vs, "Y2");
        let f = y1.pow(2).add(&y2);
        let g = y1.sub(&y2.pow(3));
        assert_eq!(poly_gcd(&f, &g), IntPoly::int_const(&vs, 1));
    }
}
