use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{delta_square_numerator, mismatch, DerivationError, DerivationLog, QuadExt};
use crate::mpoly::{coprime_certificate, CoprimeCertificate, IntPoly, IntegerRing, VarSet};

/// A, B, P, Q over Z[X1..X4] and G, L over Z[Y1..Y4], for t = 4.
///
/// Δ_1 = A / (32B) at X_i = Δ_i², P = A² − 1024·X1·B², and
/// (Y1Y2Y3Y4)^8 P(D) = −2^16 G, (Y1Y2Y3Y4)^3 B(D) = −2^4 L.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedSystem4 {
    pub a: IntPoly,
    pub b: IntPoly,
    pub p: IntPoly,
    pub q: IntPoly,
    pub g: IntPoly,
    pub l: IntPoly,
    pub log: DerivationLog,
}

impl DerivedSystem4 {
    pub fn components(&self) -> BTreeMap<u32, IntPoly> {
        self.g.homogeneous_components()
    }
}

fn int(c: i64) -> BigInt {
    BigInt::from(c)
}

/// Σ A_i/(32B_i) − 4 = num / (den·ΠB_i) in lowest terms, with the B_i, A_i
/// the rotations of B, A.
pub(crate) fn trace_numerator(a: &IntPoly, b: &IntPoly) -> (IntPoly, BigInt) {
    let one = IntPoly::one(IntegerRing, a.vars().clone());
    let as_: Vec<IntPoly> = (0..4).map(|k| a.block_rotate(k)).collect();
    let bs: Vec<IntPoly> = (0..4).map(|k| b.block_rotate(k)).collect();
    let prod_b = bs.iter().fold(one.clone(), |acc, bi| acc.mul(bi));
    let mut n = prod_b.scale(&int(-128));
    for i in 0..4 {
        let others = (1..4).fold(one.clone(), |acc, k| acc.mul(&bs[(i + k) % 4]));
        n = n.add(&as_[i].mul(&others));
    }
    let common = n.content().gcd(&int(32));
    let num = n.div_scalar(&common).expect("content divides");
    (num, int(32) / &common)
}

/// (Y1Y2Y3Y4)^k f(D_1, …, D_4) for f over X1..X4 of degree at most k in
/// each variable.
pub(crate) fn clear_denominators(f: &IntPoly, k: u32) -> Result<IntPoly, DerivationError> {
    let yv = VarSet::indexed("Y", 4);
    let nums: Vec<IntPoly> = (0..4).map(|i| delta_square_numerator(&yv, i)).collect();
    let dens: Vec<IntPoly> = (0..4).map(|i| IntPoly::var(IntegerRing, yv.clone(), i)).collect();
    let (mut out, degs) = f.substitute_fractions(&nums, &dens);
    for (i, &d) in degs.iter().enumerate() {
        if d > k {
            return Err(mismatch("substitute", format!("degree {d} in X{} exceeds {k}", i + 1)));
        }
        out = out.mul(&dens[i].pow(k - d));
    }
    Ok(out)
}

pub fn derive_n4() -> Result<DerivedSystem4, DerivationError> {
    let mut log = DerivationLog::default();
    let xv = VarSet::indexed("X", 4);
    let x = |i: usize| IntPoly::var(IntegerRing, xv.clone(), i);
    let c = |k: i64| IntPoly::int_const(&xv, k);

    // With d = Δ1, d² = X1 and w = 4 − d = Δ2 + Δ3 + Δ4:
    // s1 = w² + X2 − X3 − X4 = 2wΔ2 + 2Δ3Δ4,
    // s2 = s1² − 4w²X2 − 4X3X4 = 8wΔ2Δ3Δ4,
    // and s2² − 64w²X2X3X4 = 0 is linear in d.
    let r = x(0);
    let w = QuadExt::from_parts(c(4), c(-1));
    let w2 = w.square(&r);
    let s1 = w2.add_base(&x(1).sub(&x(2)).sub(&x(3)));
    let s2 = s1
        .square(&r)
        .add(&w2.scale_base(&x(1).scale(&int(-4))))
        .add_base(&x(2).mul(&x(3)).scale(&int(-4)));
    let rel = s2
        .square(&r)
        .add(&w2.scale_base(&x(1).mul(&x(2)).mul(&x(3)).scale(&int(-64))));
    let a = rel.a;
    let b = rel
        .b
        .div_scalar(&int(-32))
        .map_err(|e| mismatch("B", format!("Δ1-coefficient not divisible by 32: {e}")))?;
    log.push(
        "eliminate",
        format!("Δ1 = A/(32B); A: {} terms, degree {}; B: {} terms, degree {}", a.len(), a.degree(), b.len(), b.degree()),
    );

    let p = a.pow(2).sub(&x(0).mul(&b.pow(2)).scale(&int(1024)));
    log.push("P", format!("P = A² − 1024*X1*B²: {} terms, degree {}", p.len(), p.degree()));

    let (num, den_const) = trace_numerator(&a, &b);
    let prod_b = (0..4).fold(c(1), |acc, k| acc.mul(&b.block_rotate(k)));
    if coprime_certificate(&num, &prod_b, 0x6e44) != CoprimeCertificate::Coprime {
        return Err(mismatch("Q", "numerator of ΣΔ_i − 4 shares a factor with ΠB_i"));
    }
    let q = num
        .exact_div(&p)
        .map_err(|e| mismatch("Q", format!("P does not divide the numerator of ΣΔ_i − 4: {e}")))?;
    log.push(
        "Q",
        format!(
            "ΣΔ_i − 4 = P*Q/({den_const}*ΠB_i) in lowest terms; Q: {} terms, degree {}, constant term {}",
            q.len(),
            q.degree(),
            q.coeff_of(&[0, 0, 0, 0])
        ),
    );

    let yv = VarSet::indexed("Y", 4);
    let nums: Vec<IntPoly> = (0..4).map(|i| delta_square_numerator(&yv, i)).collect();
    let dens: Vec<IntPoly> = (0..4).map(|i| IntPoly::var(IntegerRing, yv.clone(), i)).collect();
    let clear = |f: &IntPoly, k: u32| clear_denominators(f, k);
    let g = clear(&p, 8)?
        .div_scalar(&int(-65536))
        .map_err(|e| mismatch("G", format!("(ΠY)^8 P(D) not divisible by 2^16: {e}")))?;
    let a_bar = clear(&a, 4)?;
    let b_bar = clear(&b, 3)?;
    let l = b_bar
        .div_scalar(&int(-16))
        .map_err(|e| mismatch("L", format!("(ΠY)^3 B(D) not divisible by 2^4: {e}")))?;
    let y234 = dens[1].mul(&dens[2]).mul(&dens[3]);
    let via_ab = a_bar
        .pow(2)
        .sub(&nums[0].mul(&dens[0]).mul(&y234.pow(2)).mul(&b_bar.pow(2)).scale(&int(1024)));
    if via_ab != g.scale(&int(-65536)) {
        return Err(mismatch("G", "A(D)² − 1024*D1*B(D)² disagrees with P(D)"));
    }
    log.push("cross-check", "(ΠY)^8 (A(D)² − 1024*D1*B(D)²) equals −2^16*G");
    if !g.is_cyclic() {
        return Err(mismatch("G", "G is not cyclic"));
    }
    let degrees: Vec<u32> = g.homogeneous_components().into_keys().collect();
    log.push(
        "G",
        format!("{} terms, degree {}, components {:?}", g.len(), g.degree(), degrees),
    );
    log.push(
        "L",
        format!(
            "{} terms, degree {}, {}",
            l.len(),
            l.degree(),
            if l.is_cyclic() { "cyclic" } else { "not cyclic" }
        ),
    );
    Ok(DerivedSystem4 { a, b, p, q, g, l, log })
}
