use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{delta_square, mismatch, DerivationError, DerivationLog, QuadExt};
use crate::mpoly::{coprime_certificate, CoprimeCertificate, IntPoly, IntegerRing, PrimeField, RationalExpr};
use crate::mpoly::{SparsePoly, VarSet};

/// P, Q, G for n = 3, over Z[T][Y1, Y2, Y3].
///
/// Δ_1 = P / (4T·Y1Y2Y3·Q) in lowest terms, and G is the numerator of
/// Δ_1² − D_1 over the denominator 16T²(Y1Y2Y3)²Q².
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSystem3 {
    pub p: IntPoly,
    pub q: IntPoly,
    pub g: IntPoly,
    pub log: DerivationLog,
}

impl DerivedSystem3 {
    pub fn vars(&self) -> &VarSet {
        self.g.vars()
    }

    pub fn components(&self) -> BTreeMap<u32, IntPoly> {
        self.g.homogeneous_components()
    }

    /// 4T·Y1Y2Y3, the structural part of the denominator of Δ_1.
    pub fn structural_denominator(&self) -> IntPoly {
        structural(self.vars())
    }

    /// Δ_1 = P / (4T·Y1Y2Y3·Q).
    pub fn delta1(&self) -> RationalExpr<IntegerRing> {
        RationalExpr::new(self.p.clone(), self.structural_denominator().mul(&self.q)).expect("nonzero")
    }
}

fn structural(vars: &VarSet) -> IntPoly {
    let mut m = IntPoly::int_const(vars, 4);
    for i in 0..vars.len() {
        m = m.mul(&IntPoly::var(IntegerRing, vars.clone(), i));
    }
    m
}

/// Sign convention: P carries +16·Y1⁴Y2².
const P_ANCHOR: [u16; 4] = [0, 4, 2, 0];

pub fn derive_n3() -> Result<DerivedSystem3, DerivationError> {
    let mut log = DerivationLog::default();
    let xv = VarSet::param_and_indexed("T", "X", 3);
    let x = |i: usize| IntPoly::var(IntegerRing, xv.clone(), i);
    let t = x(0);

    // Δ1 + Δ2 + Δ3 = T with d = Δ1, d² = X1: (T − d)² − X2 − X3 = 2Δ2Δ3,
    // and squaring once more leaves a relation linear in d.
    let r = x(1);
    let w = QuadExt::from_parts(t.clone(), IntPoly::int_const(&xv, -1));
    let s = w.square(&r).add_base(&x(2).add(&x(3)).neg());
    let rel = s.square(&r).add_base(&x(2).mul(&x(3)).scale(&BigInt::from(-4)));
    log.push(
        "eliminate",
        format!("Δ1 = -a/b with a: {} terms, b: {} terms", rel.a.len(), rel.b.len()),
    );

    let yv = VarSet::param_and_indexed("T", "Y", 3);
    let mut images = vec![RationalExpr::from_poly(IntPoly::var(IntegerRing, yv.clone(), 0))];
    images.extend((0..3).map(|i| delta_square(&yv, i)));
    let hints: Vec<IntPoly> = (0..4).map(|i| IntPoly::var(IntegerRing, yv.clone(), i)).collect();
    let delta1 = RationalExpr::new(rel.a.neg(), rel.b.clone())?
        .substitute_into(&images)?
        .reduce(&hints);
    let structural = structural(&yv);
    let (mut p, den) = delta1.into_parts();
    let mut q = den
        .exact_div(&structural)
        .map_err(|e| mismatch("delta1", format!("denominator is not 4T·Y1Y2Y3·Q: {e}")))?;
    match p.coeff_of(&P_ANCHOR) {
        c if c == BigInt::from(16) => {}
        c if c == BigInt::from(-16) => {
            p = p.neg();
            q = q.neg();
            log.push("normalize", "P and Q negated to give P the term +16*Y1^4*Y2^2");
        }
        c => return Err(mismatch("delta1", format!("P has coefficient {c} at Y1^4*Y2^2"))),
    }
    log.push(
        "delta1",
        format!(
            "Δ1 = P/(4T*Y1*Y2*Y3*Q) in lowest terms; P: {} terms, degree {}; Q: {} terms, degree {}",
            p.len(),
            p.degree(),
            q.len(),
            q.degree()
        ),
    );

    // G: numerator of Δ1² − D1 over 16T²(Y1Y2Y3)²Q².
    let delta1 = RationalExpr::new(p.clone(), structural.mul(&q))?;
    let diff = delta1.pow(2).sub(&delta_square(&yv, 0));
    let expected_den = structural.mul(&q).pow(2);
    let g = diff
        .num()
        .mul(&expected_den)
        .exact_div(diff.den())
        .map_err(|e| mismatch("G", format!("Δ1² − D1 does not have denominator 16T²(Y1Y2Y3)²Q²: {e}")))?;
    if coprime_certificate(&g, &expected_den, 0x6e33) != CoprimeCertificate::Coprime {
        return Err(mismatch("G", "numerator and 16T²(Y1Y2Y3)²Q² share a factor"));
    }
    if !g.is_cyclic() {
        return Err(mismatch("G", "G is not cyclic"));
    }
    let degrees: Vec<u32> = g.homogeneous_components().into_keys().collect();
    log.push(
        "G",
        format!("{} terms, degree {} in Y, components {:?}", g.len(), g.block_degree(), degrees),
    );

    // Cross-check: Δ1 + Δ2 + Δ3 − T over 4T·Y1Y2Y3·Q·Q^ρ·Q^ρ².
    let ps: Vec<IntPoly> = (0..3).map(|k| p.block_rotate(k)).collect();
    let qs: Vec<IntPoly> = (0..3).map(|k| q.block_rotate(k)).collect();
    let mut num = structural
        .mul(&IntPoly::var(IntegerRing, yv.clone(), 0))
        .mul(&qs[0])
        .mul(&qs[1])
        .mul(&qs[2])
        .neg();
    for i in 0..3 {
        num = num.add(&ps[i].mul(&qs[(i + 1) % 3]).mul(&qs[(i + 2) % 3]));
    }
    let den = structural.mul(&qs[0]).mul(&qs[1]).mul(&qs[2]);
    if coprime_certificate(&num, &den, 0x6e34) != CoprimeCertificate::Coprime {
        return Err(mismatch("cross-check", "sum numerator is not in lowest terms"));
    }
    let unit = if num == g {
        1
    } else if num == g.neg() {
        -1
    } else {
        return Err(mismatch("cross-check", "numerator of Δ1+Δ2+Δ3−T differs from ±G"));
    };
    log.push(
        "cross-check",
        format!("numerator of Δ1+Δ2+Δ3−T over 4T*Y1*Y2*Y3*Q*Q^ρ*Q^ρ² equals {unit}*G"),
    );
    Ok(DerivedSystem3 { p, q, g, log })
}

/// G, P, Q with T set to t, coefficients mod p, in Y1, Y2, Y3.
#[derive(Clone, Debug)]
pub struct Specialized3 {
    pub prime: u64,
    pub t: u64,
    pub g: SparsePoly<PrimeField>,
    pub p: SparsePoly<PrimeField>,
    pub q: SparsePoly<PrimeField>,
}

pub fn specialize_n3(sys: &DerivedSystem3, prime: u64, t: u64) -> Result<Specialized3, DerivationError> {
    let t = t % prime;
    if t == 0 {
        return Err(DerivationError::ZeroTrace);
    }
    let yv = VarSet::indexed("Y", 3);
    let map = [None, Some(0), Some(1), Some(2)];
    let spec = |f: &IntPoly| f.reduce_mod_p(prime).eval_var(0, &t).rename(yv.clone(), &map);
    Ok(Specialized3 {
        prime,
        t,
        g: spec(&sys.g),
        p: spec(&sys.p),
        q: spec(&sys.q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::prime::{inv_mod, mul_mod};

    #[test]
    fn specialization_rejects_zero_trace() {
        let vs = VarSet::param_and_indexed("T", "Y", 3);
        let one = IntPoly::int_const(&vs, 1);
        let sys = DerivedSystem3 {
            p: one.clone(),
            q: one.clone(),
            g: one,
            log: DerivationLog::default(),
        };
        assert!(matches!(specialize_n3(&sys, 7, 14), Err(DerivationError::ZeroTrace)));
        assert!(specialize_n3(&sys, 7, 6).is_ok());
    }

    // Independent oracle: Δ1 from the closed formula in Δ_i² = D_i(y).
    fn delta1_direct(y: [u64; 3], t: u64, p: u64) -> Option<u64> {
        let d = |i: usize| -> Option<u64> {
            let (a, c) = (y[i], y[(i + 1) % 3]);
            let inv = inv_mod(a, p)?;
            let v = (a * a + c * c + 2 * p * p - 2 * a * c % p + 4 * c % p * inv + 4 * p - 4) % p;
            Some(v)
        };
        let (x1, x2, x3) = (d(0)?, d(1)?, d(2)?);
        let u = (t * t + x1 + 2 * p - x2 - x3) % p;
        let num = (u * u + 4 * t % p * t % p * x1 + p * p - 4 * x2 % p * x3 % p) % p;
        let den = 4 * t % p * u % p;
        Some(mul_mod(num, inv_mod(den, p)?, p))
    }

    #[test]
    fn specialized_delta1_matches_direct_formula() {
        let sys = derive_n3().unwrap();
        let (prime, t) = (7u64, 6u64);
        let sp = specialize_n3(&sys, prime, t).unwrap();
        assert!(sp.g.is_cyclic());
        let mut checked = 0;
        'outer: for a in 1..prime {
            for b in 1..prime {
                for c in 1..prime {
                    let pt = [a, b, c];
                    let qv = sp.q.evaluate(&pt);
                    let Some(direct) = delta1_direct(pt, t, prime) else { continue };
                    if qv == 0 {
                        continue;
                    }
                    let den = mul_mod(4 * t % prime, mul_mod(a * b % prime, c, prime), prime);
                    let den = mul_mod(den, qv, prime);
                    let via = mul_mod(sp.p.evaluate(&pt), inv_mod(den, prime).unwrap(), prime);
                    assert_eq!(via, direct, "at {pt:?}");
                    checked += 1;
                    if checked == 50 {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(checked, 50);
    }
}
