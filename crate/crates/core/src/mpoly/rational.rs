use num_bigint::BigInt;
use num_traits::One;

use super::gcd::content_gcd;
use super::{coprime_certificate, poly_gcd, CoprimeCertificate, IntPoly, Monomial, MpolyError};
use super::{Ring, SparsePoly, VarSet};

/// A quotient of polynomials with nonzero denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalExpr<R: Ring> {
    num: SparsePoly<R>,
    den: SparsePoly<R>,
    reduced: bool,
}

impl<R: Ring> RationalExpr<R> {
    pub fn new(num: SparsePoly<R>, den: SparsePoly<R>) -> Result<Self, MpolyError> {
        if den.is_zero() {
            return Err(MpolyError::ZeroDenominator);
        }
        if num.vars() != den.vars() || num.ring() != den.ring() {
            return Err(MpolyError::DomainMismatch {
                left: format!("{:?}", num.vars()),
                right: format!("{:?}", den.vars()),
            });
        }
        let reduced = den.is_constant() && den.terms()[0].1 == den.ring().one();
        Ok(RationalExpr { num, den, reduced })
    }

    pub fn from_poly(f: SparsePoly<R>) -> Self {
        let den = SparsePoly::one(f.ring().clone(), f.vars().clone());
        RationalExpr {
            num: f,
            den,
            reduced: true,
        }
    }

    pub fn num(&self) -> &SparsePoly<R> {
        &self.num
    }

    pub fn den(&self) -> &SparsePoly<R> {
        &self.den
    }

    pub fn into_parts(self) -> (SparsePoly<R>, SparsePoly<R>) {
        (self.num, self.den)
    }

    /// Whether numerator and denominator are known to be coprime.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::unreduced(self.num.add(&other.num), self.den.clone());
        }
        Self::unreduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalExpr {
            num: self.num.neg(),
            den: self.den.clone(),
            reduced: self.reduced,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::unreduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, MpolyError> {
        if other.num.is_zero() {
            return Err(MpolyError::ZeroDenominator);
        }
        Ok(Self::unreduced(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalExpr {
            num: self.num.pow(e),
            den: self.den.pow(e),
            reduced: self.reduced,
        }
    }

    fn unreduced(num: SparsePoly<R>, den: SparsePoly<R>) -> Self {
        RationalExpr {
            num,
            den,
            reduced: false,
        }
    }

    /// Substitutes `images[i]` for variable i of `f`. With images
    /// n_i / d_i the result is Σ c Π n_i^{e_i} d_i^{D_i - e_i} over Π d_i^{D_i},
    /// D_i = deg_{x_i} f; nothing is reduced.
    pub fn substitute(f: &SparsePoly<R>, images: &[Self]) -> Result<Self, MpolyError> {
        if images.len() != f.nvars() {
            return Err(MpolyError::DomainMismatch {
                left: format!("{} variables", f.nvars()),
                right: format!("{} images", images.len()),
            });
        }
        if images.iter().any(|r| r.den.is_zero()) {
            return Err(MpolyError::ZeroDenominator);
        }
        let nums: Vec<_> = images.iter().map(|r| r.num.clone()).collect();
        let dens: Vec<_> = images.iter().map(|r| r.den.clone()).collect();
        let (num, degs) = f.substitute_fractions(&nums, &dens);
        let den = den_product(&dens, &degs, None);
        Ok(Self::unreduced(num, den))
    }

    /// Substitution into a quotient: the common powers of the image
    /// denominators cancel before anything is multiplied out.
    pub fn substitute_into(&self, images: &[Self]) -> Result<Self, MpolyError> {
        if images.iter().any(|r| r.den.is_zero()) {
            return Err(MpolyError::ZeroDenominator);
        }
        let nums: Vec<_> = images.iter().map(|r| r.num.clone()).collect();
        let dens: Vec<_> = images.iter().map(|r| r.den.clone()).collect();
        let (a, da) = self.num.substitute_fractions(&nums, &dens);
        let (b, db) = self.den.substitute_fractions(&nums, &dens);
        let num = a.mul(&den_product(&dens, &db, Some(&da)));
        let den = b.mul(&den_product(&dens, &da, Some(&db)));
        if den.is_zero() {
            return Err(MpolyError::ZeroDenominator);
        }
        Ok(Self::unreduced(num, den))
    }
}

/// Π dens[i]^(degs[i] - min(degs[i], other[i])).
fn den_product<R: Ring>(dens: &[SparsePoly<R>], degs: &[u32], other: Option<&[u32]>) -> SparsePoly<R> {
    let first = &dens[0];
    let mut acc = SparsePoly::one(first.ring().clone(), first.vars().clone());
    for (i, d) in dens.iter().enumerate() {
        let k = degs[i] - other.map_or(0, |o| o[i].min(degs[i]));
        if k > 0 {
            acc = acc.mul(&d.pow(k));
        }
    }
    acc
}

impl RationalExpr<super::IntegerRing> {
    /// Lowest terms with a positive leading denominator coefficient.
    ///
    /// Cancels the integer content and the largest common monomial, then
    /// tries each hint (and its powers) as a common factor, then proves
    /// what is left coprime; only when that proof fails does it fall back
    /// to a full polynomial gcd.
    pub fn reduce(&self, hints: &[IntPoly]) -> Self {
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        if num.is_zero() {
            let one = IntPoly::one(super::IntegerRing, num.vars().clone());
            return RationalExpr {
                num,
                den: one,
                reduced: true,
            };
        }
        let g = content_gcd(&num, &den);
        if !g.is_one() {
            num = num.div_scalar(&g).expect("content divides");
            den = den.div_scalar(&g).expect("content divides");
        }
        let m = common_monomial(&num, &den);
        if !m.is_one() {
            num = num.exact_div(&monomial_poly(&num, m)).expect("monomial divides");
            den = den.exact_div(&monomial_poly(&den, m)).expect("monomial divides");
        }
        for h in hints {
            if h.is_constant() {
                continue;
            }
            loop {
                match (num.exact_div(h), den.exact_div(h)) {
                    (Ok(a), Ok(b)) => {
                        num = a;
                        den = b;
                    }
                    _ => break,
                }
            }
        }
        if let CoprimeCertificate::Inconclusive { .. } = coprime_certificate(&num, &den, 0x5eed) {
            let g = poly_gcd(&num, &den);
            num = num.exact_div(&g).expect("gcd divides");
            den = den.exact_div(&g).expect("gcd divides");
        }
        if den.leading_sign_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalExpr {
            num,
            den,
            reduced: true,
        }
    }
}

fn common_monomial(a: &IntPoly, b: &IntPoly) -> Monomial {
    let mut it = a.terms().iter().chain(b.terms()).map(|(m, _)| *m);
    let first = it.next().unwrap_or(Monomial::ONE);
    it.fold(first, |acc, m| acc.gcd(&m))
}

fn monomial_poly(like: &IntPoly, m: Monomial) -> IntPoly {
    IntPoly::monomial(super::IntegerRing, like.vars().clone(), m, BigInt::one())
}
