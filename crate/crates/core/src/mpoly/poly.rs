use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{IntegerRing, PrimeField, Ring};
use super::{Monomial, MpolyError, VarSet};
use crate::fields::FieldConfig;

/// A sparse polynomial: nonzero terms sorted descending in graded-lex order.
#[derive(Clone, PartialEq)]
pub struct SparsePoly<R: Ring> {
    ring: R,
    vars: VarSet,
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: Ring> fmt::Debug for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> SparsePoly<R> {
    pub fn zero(ring: R, vars: VarSet) -> Self {
        SparsePoly {
            ring,
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: R, vars: VarSet, c: R::Elem) -> Self {
        let terms = if ring.is_zero(&c) {
            Vec::new()
        } else {
            vec![(Monomial::ONE, c)]
        };
        SparsePoly { ring, vars, terms }
    }

    pub fn one(ring: R, vars: VarSet) -> Self {
        let one = ring.one();
        Self::constant(ring, vars, one)
    }

    pub fn from_i64(ring: R, vars: VarSet, c: i64) -> Self {
        let c = ring.from_i64(c);
        Self::constant(ring, vars, c)
    }

    /// The variable with index `i`.
    pub fn var(ring: R, vars: VarSet, i: usize) -> Self {
        assert!(i < vars.len());
        let one = ring.one();
        SparsePoly {
            ring,
            vars,
            terms: vec![(Monomial::var(i, 1), one)],
        }
    }

    pub fn monomial(ring: R, vars: VarSet, m: Monomial, c: R::Elem) -> Self {
        Self::from_terms(ring, vars, [(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined and
    /// zeros dropped.
    pub fn from_terms(
        ring: R,
        vars: VarSet,
        terms: impl IntoIterator<Item = (Monomial, R::Elem)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert!((vars.len()..super::MAX_VARS).all(|i| m.get(i) == 0));
            match acc.get_mut(&m) {
                Some(e) => ring.add_assign(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, vars, acc)
    }

    fn from_map(ring: R, vars: VarSet, acc: HashMap<Monomial, R::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly { ring, vars, terms }
    }

    /// Terms already sorted descending, distinct and nonzero.
    pub(crate) fn from_sorted(ring: R, vars: VarSet, terms: Vec<(Monomial, R::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !ring.is_zero(c)));
        SparsePoly { ring, vars, terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, R::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, R::Elem)> {
        self.terms.first()
    }

    /// Coefficient of monomial `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.zero(),
        }
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coeff_of(&self, exps: &[u16]) -> R::Elem {
        assert_eq!(exps.len(), self.nvars());
        self.coeff(&Monomial::new(exps))
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.get(var) as u32).max().unwrap_or(0)
    }

    /// Degree counted over the non-parameter block only.
    pub fn block_degree(&self) -> u32 {
        let b = self.vars.block();
        self.terms.iter().map(|(m, _)| m.degree_in(b.clone())).max().unwrap_or(0)
    }

    /// Lowest total degree among the terms (0 for the zero polynomial).
    pub fn low_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).min().unwrap_or(0)
    }

    fn same_domain(&self, other: &Self) -> Result<(), MpolyError> {
        if self.ring != other.ring || self.vars != other.vars {
            return Err(MpolyError::DomainMismatch {
                left: format!("{} {:?}", self.ring.describe(), self.vars),
                right: format!("{} {:?}", other.ring.describe(), other.vars),
            });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let fix = |c: &R::Elem| if negate_other { ring.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, fix(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        ring.sub(&a[i].1, &b[j].1)
                    } else {
                        ring.add(&a[i].1, &b[j].1)
                    };
                    if !ring.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, fix(c))));
        Self::from_sorted(self.ring.clone(), self.vars.clone(), out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MpolyError> {
        self.same_domain(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MpolyError> {
        self.same_domain(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MpolyError> {
        self.same_domain(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Panics on domain mismatch; see [`checked_add`](Self::checked_add).
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, self.ring.neg(c)))
            .collect();
        Self::from_sorted(self.ring.clone(), self.vars.clone(), terms)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let ring = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Self::zero(ring.clone(), self.vars.clone());
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, R::Elem> =
            HashMap::with_capacity(large.len().saturating_mul(2));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ring.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => ring.add_assign(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(ring.clone(), self.vars.clone(), acc)
    }

    /// Multiplication by the single term `c·m`.
    pub fn mul_term(&self, m: &Monomial, c: &R::Elem) -> Self {
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.mul(m), ring.mul(d, c)))
            .filter(|(_, d)| !ring.is_zero(d))
            .collect();
        // multiplying by a monomial preserves the order; a zero divisor
        // coefficient can only remove terms
        Self::from_sorted(ring.clone(), self.vars.clone(), terms)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(m, &self.ring.one())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.vars.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / g` by multivariate division in graded-lex
    /// order. Fails with the first remainder term that the leading term of
    /// `g` cannot cancel.
    pub fn exact_div(&self, g: &Self) -> Result<Self, MpolyError> {
        self.same_domain(g)?;
        let ring = &self.ring;
        let Some((lm, lc)) = g.terms.first() else {
            return Err(MpolyError::ZeroDenominator);
        };
        if g.is_monomial() {
            let mut out = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                let (Some(q), Some(d)) = (m.div(lm), ring.div_exact(c, lc)) else {
                    return Err(self.obstruction(m, c));
                };
                out.push((q, d));
            }
            return Ok(Self::from_sorted(ring.clone(), self.vars.clone(), out));
        }
        let mut rem: BTreeMap<Monomial, R::Elem> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let (Some(qm), Some(qc)) = (m.div(lm), ring.div_exact(&c, lc)) else {
                return Err(self.obstruction(&m, &c));
            };
            for (gm, gc) in &g.terms[1..] {
                let key = qm.mul(gm);
                let sub = ring.mul(&qc, gc);
                match rem.get_mut(&key) {
                    Some(e) => {
                        *e = ring.sub(e, &sub);
                        if ring.is_zero(e) {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, ring.neg(&sub));
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(Self::from_sorted(ring.clone(), self.vars.clone(), quotient))
    }

    fn obstruction(&self, m: &Monomial, c: &R::Elem) -> MpolyError {
        let t = Self::from_sorted(self.ring.clone(), self.vars.clone(), vec![(*m, c.clone())]);
        MpolyError::NotDivisible {
            term: t.to_string(),
        }
    }

    /// Divides every coefficient exactly by the scalar `c`.
    pub fn div_scalar(&self, c: &R::Elem) -> Result<Self, MpolyError> {
        let mut out = Vec::with_capacity(self.len());
        for (m, d) in &self.terms {
            let q = self
                .ring
                .div_exact(d, c)
                .ok_or_else(|| self.obstruction(m, d))?;
            out.push((*m, q));
        }
        Ok(Self::from_sorted(self.ring.clone(), self.vars.clone(), out))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let ring = &self.ring;
        let terms = self.terms.iter().filter(|(m, _)| m.get(var) > 0).map(|(m, c)| {
            let k = m.get(var);
            let mut m2 = *m;
            m2.set(var, k - 1);
            (m2, ring.mul(c, &ring.from_i64(k as i64)))
        });
        Self::from_terms(ring.clone(), self.vars.clone(), terms)
    }

    /// Coefficients with respect to `var`: entry k is the coefficient of
    /// var^k, a polynomial in the same variables not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, R::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2.set(var, 0);
            buckets[m.get(var) as usize].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // removing one variable can reorder terms but cannot merge them
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Self::from_sorted(self.ring.clone(), self.vars.clone(), t)
            })
            .collect()
    }

    /// Σ coeffs[k] · var^k.
    pub fn from_coefficients_in(var: usize, coeffs: &[Self]) -> Self {
        let first = &coeffs[0];
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                assert_eq!(m.get(var), 0);
                let mut m2 = *m;
                m2.set(var, k as u16);
                terms.push((m2, v.clone()));
            }
        }
        Self::from_terms(first.ring.clone(), first.vars.clone(), terms)
    }

    /// Sets variable `var` to `value`, keeping the variable set.
    pub fn eval_var(&self, var: usize, value: &R::Elem) -> Self {
        let ring = &self.ring;
        let d = self.degree_in(var) as usize;
        let mut pows = vec![ring.one()];
        for k in 1..=d {
            pows.push(ring.mul(&pows[k - 1], value));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = *m;
            m2.set(var, 0);
            (m2, ring.mul(c, &pows[m.get(var) as usize]))
        });
        Self::from_terms(ring.clone(), self.vars.clone(), terms)
    }

    /// Applies ρ to the variable block: the exponent of block variable i
    /// moves to block variable i+1 (cyclically), i.e. Y_i ↦ Y_{i+1}.
    pub fn cyclic_shift(&self) -> Self {
        self.block_rotate(1)
    }

    /// ρ^k.
    pub fn block_rotate(&self, k: usize) -> Self {
        let b = self.vars.block();
        let n = b.len();
        if n == 0 {
            return self.clone();
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = *m;
            for i in 0..n {
                m2.set(b.start + (i + k) % n, m.get(b.start + i));
            }
            (m2, c.clone())
        });
        Self::from_terms(self.ring.clone(), self.vars.clone(), terms)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_shift() == *self
    }

    /// Terms grouped by their degree in the variable block.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Self> {
        let b = self.vars.block();
        let mut groups: BTreeMap<u32, Vec<(Monomial, R::Elem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(m.degree_in(b.clone())).or_default().push((*m, c.clone()));
        }
        groups
            .into_iter()
            .map(|(d, t)| (d, Self::from_sorted(self.ring.clone(), self.vars.clone(), t)))
            .collect()
    }

    /// With f = f_d + f_{d-1} + ... (block-homogeneous parts), returns
    /// f_d - f_{d-1} + f_{d-2} - ..., i.e. the dehomogenization of the
    /// homogenized f at the extra variable -1.
    pub fn tilde(&self) -> Self {
        let b = self.vars.block();
        let top = self.block_degree();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                if (top - m.degree_in(b.clone())) % 2 == 1 {
                    (*m, self.ring.neg(c))
                } else {
                    (*m, c.clone())
                }
            })
            .collect();
        Self::from_sorted(self.ring.clone(), self.vars.clone(), terms)
    }

    /// Maps coefficients into another ring, dropping those that become zero.
    pub fn map_ring<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> SparsePoly<S> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        SparsePoly::from_sorted(ring, self.vars.clone(), terms)
    }

    /// Moves the polynomial into `vars`, sending variable i to `map[i]`.
    /// Variables mapped to `None` must not occur.
    pub fn rename(&self, vars: VarSet, map: &[Option<usize>]) -> Self {
        assert_eq!(map.len(), self.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = Monomial::ONE;
            for (i, target) in map.iter().enumerate() {
                match target {
                    Some(j) => m2.set(*j, m2.get(*j) + m.get(i)),
                    None => assert_eq!(m.get(i), 0, "dropped variable occurs"),
                }
            }
            (m2, c.clone())
        });
        Self::from_terms(self.ring.clone(), vars, terms)
    }

    /// Substitutes `images[i]` (polynomials over a common variable set) for
    /// variable i.
    pub fn compose(&self, images: &[Self]) -> Self {
        let ones: Vec<Self> = images
            .iter()
            .map(|g| Self::one(self.ring.clone(), g.vars.clone()))
            .collect();
        self.substitute_fractions(images, &ones).0
    }

    /// With x_i = nums[i] / dens[i] and D_i = deg_{x_i}(self), returns
    /// (N, [D_0, ..]) where N = self(x) · Π dens[i]^{D_i}, computed by
    /// Horner's rule one variable at a time.
    pub fn substitute_fractions(&self, nums: &[Self], dens: &[Self]) -> (Self, Vec<u32>) {
        assert_eq!(nums.len(), self.nvars());
        assert_eq!(dens.len(), self.nvars());
        let target = nums
            .first()
            .map(|g| g.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let degs: Vec<u32> = (0..self.nvars()).map(|i| self.degree_in(i)).collect();
        let order: Vec<usize> = (0..self.nvars()).collect();
        let mut den_pows: Vec<Vec<Self>> = dens
            .iter()
            .zip(&degs)
            .map(|(d, &k)| {
                let mut v = vec![Self::one(self.ring.clone(), target.clone())];
                for j in 1..=k as usize {
                    let next = v[j - 1].mul(d);
                    v.push(next);
                }
                v
            })
            .collect();
        let n = horner(self, &order, nums, &mut den_pows, &degs, &target);
        (n, degs)
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn evaluate(&self, point: &[R::Elem]) -> R::Elem {
        Evaluator::new(self).eval(point)
    }
}

fn horner<R: Ring>(
    f: &SparsePoly<R>,
    order: &[usize],
    nums: &[SparsePoly<R>],
    den_pows: &mut [Vec<SparsePoly<R>>],
    degs: &[u32],
    target: &VarSet,
) -> SparsePoly<R> {
    let ring = f.ring.clone();
    let Some((&v, rest)) = order.split_first() else {
        // all variables substituted: f is a constant
        debug_assert!(f.is_constant());
        let c = f.terms.first().map_or_else(|| ring.zero(), |(_, c)| c.clone());
        return SparsePoly::constant(ring, target.clone(), c);
    };
    if f.is_zero() {
        return SparsePoly::zero(ring, target.clone());
    }
    let coeffs = f.coefficients_in(v);
    let d = degs[v] as usize;
    let mut h = SparsePoly::zero(ring.clone(), target.clone());
    for k in (0..=d).rev() {
        if !h.is_zero() {
            h = h.mul(&nums[v]);
        }
        if k < coeffs.len() && !coeffs[k].is_zero() {
            let inner = horner(&coeffs[k], rest, nums, den_pows, degs, target);
            h = h.add(&inner.mul(&den_pows[v][d - k]));
        }
    }
    h
}

/// Compiled evaluation by per-variable power tables.
#[derive(Clone, Debug)]
pub struct Evaluator<R: Ring> {
    ring: R,
    nvars: usize,
    max_deg: Vec<usize>,
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: Ring> Evaluator<R> {
    pub fn new(f: &SparsePoly<R>) -> Self {
        Evaluator {
            ring: f.ring.clone(),
            nvars: f.nvars(),
            max_deg: (0..f.nvars()).map(|i| f.degree_in(i) as usize).collect(),
            terms: f.terms.clone(),
        }
    }

    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let ring = &self.ring;
        let pows: Vec<Vec<R::Elem>> = point
            .iter()
            .zip(&self.max_deg)
            .map(|(x, &d)| {
                let mut v = Vec::with_capacity(d + 1);
                v.push(ring.one());
                for k in 1..=d {
                    let next = ring.mul(&v[k - 1], x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in pows.iter().enumerate() {
                let k = m.get(i) as usize;
                if k > 0 {
                    t = ring.mul(&t, &pw[k]);
                }
            }
            ring.add_assign(&mut acc, &t);
        }
        acc
    }
}

impl SparsePoly<IntegerRing> {
    pub fn int_zero(vars: VarSet) -> Self {
        Self::zero(IntegerRing, vars)
    }

    pub fn int_var(vars: &VarSet, name: &str) -> Self {
        let i = vars.index_of(name).unwrap_or_else(|e| panic!("{e}"));
        Self::var(IntegerRing, vars.clone(), i)
    }

    pub fn int_const(vars: &VarSet, c: i64) -> Self {
        Self::from_i64(IntegerRing, vars.clone(), c)
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    pub fn reduce_mod_p(&self, p: u64) -> SparsePoly<PrimeField> {
        let f = PrimeField::new(p);
        self.map_ring(f, |c| f.from_bigint(c))
    }

    /// Image in F_{p^n} (coefficients land in the prime subfield).
    pub fn to_field(&self, cfg: &FieldConfig) -> SparsePoly<FieldConfig> {
        self.map_ring(cfg.clone(), |c| cfg.from_bigint(c))
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.terms.first().is_some_and(|(_, c)| c.is_negative())
    }
}

impl<R: Ring> fmt::Display for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = self.ring.is_negative(c);
            let abs = if neg { self.ring.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !self.ring.is_one(&abs) || m.is_one() {
                factors.push(self.ring.format(&abs));
            }
            for i in 0..self.nvars() {
                match m.get(i) {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    k => factors.push(format!("{}^{k}", self.vars.name(i))),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y3() -> VarSet {
        VarSet::indexed("Y", 3)
    }

    fn v(vars: &VarSet, name: &str) -> SparsePoly<IntegerRing> {
        SparsePoly::int_var(vars, name)
    }

    #[test]
    fn basic_arithmetic() {
        let vs = y3();
        let (y1, y2, y3) = (v(&vs, "Y1"), v(&vs, "Y2"), v(&vs, "Y3"));
        let prod = y1.add(&y2).mul(&y1.sub(&y2));
        assert_eq!(prod.to_string(), "Y1^2 - Y2^2");
        assert!(prod.add(&prod.neg()).is_zero());
        let cube = y1.add(&y2).add(&y3).pow(3);
        assert_eq!(cube.len(), 10);
        assert_eq!(cube.coeff_of(&[1, 1, 1]), BigInt::from(6));
        assert_eq!(cube.coeff_of(&[2, 1, 0]), BigInt::from(3));
    }

    #[test]
    fn domain_mismatch() {
        let a = v(&y3(), "Y1");
        let b = SparsePoly::int_var(&VarSet::indexed("X", 3), "X1");
        assert!(matches!(a.checked_add(&b), Err(MpolyError::DomainMismatch { .. })));
        let c = a.reduce_mod_p(7);
        let d = b.reduce_mod_p(7);
        assert!(c.checked_mul(&d).is_err());
    }

    #[test]
    fn exact_division() {
        let vs = y3();
        let (y1, y2) = (v(&vs, "Y1"), v(&vs, "Y2"));
        let f = y1.pow(2).sub(&y2.pow(2));
        assert_eq!(f.exact_div(&y1.sub(&y2)).unwrap(), y1.add(&y2));
        assert_eq!(f.exact_div(&f).unwrap(), SparsePoly::int_const(&vs, 1));
        let one = SparsePoly::int_const(&vs, 1);
        let err = y1.pow(2).add(&one).exact_div(&y1.add(&one)).unwrap_err();
        assert!(matches!(err, MpolyError::NotDivisible { .. }));
        // integer coefficients must divide too
        let two_y1 = y1.scale(&BigInt::from(2));
        assert!(y1.exact_div(&two_y1).is_err());
    }

    #[test]
    fn cyclic_and_components() {
        let vs = y3();
        let (y1, y2, y3) = (v(&vs, "Y1"), v(&vs, "Y2"), v(&vs, "Y3"));
        assert!(y1.add(&y2).add(&y3).is_cyclic());
        assert!(!y1.is_cyclic());
        assert_eq!(y1.cyclic_shift(), y2);
        let one = SparsePoly::int_const(&vs, 1);
        let f = one.add(&y1);
        assert_eq!(f.tilde(), y1.sub(&one));
        let comps = f.homogeneous_components();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![0, 1]);
        let c = SparsePoly::int_const(&vs, 5).homogeneous_components();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn parameters_excluded_from_block_degree() {
        let vs = VarSet::param_and_indexed("T", "Y", 2);
        let t = v(&vs, "T");
        let y1 = v(&vs, "Y1");
        let y2 = v(&vs, "Y2");
        let f = t.pow(2).mul(&y1).add(&y2);
        assert_eq!(f.block_degree(), 1);
        assert_eq!(f.homogeneous_components().len(), 1);
        assert_eq!(f.cyclic_shift(), t.pow(2).mul(&y2).add(&y1));
    }

    #[test]
    fn substitution_and_evaluation() {
        let vs = y3();
        let (y1, y2) = (v(&vs, "Y1"), v(&vs, "Y2"));
        let f = y1.pow(2);
        // Y1 -> Y2/Y1 in Y1^2 gives Y2^2 with denominator Y1^2
        let (num, degs) = f.substitute_fractions(
            &[y2.clone(), y2.clone(), v(&vs, "Y3")],
            &[y1.clone(), SparsePoly::int_const(&vs, 1), SparsePoly::int_const(&vs, 1)],
        );
        assert_eq!(num, y2.pow(2));
        assert_eq!(degs, vec![2, 0, 0]);
        let g = y1.mul(&y2).reduce_mod_p(7);
        assert_eq!(g.evaluate(&[2, 3, 0]), 6);
    }

    #[test]
    fn coefficients_roundtrip() {
        let vs = y3();
        let (y1, y2, y3) = (v(&vs, "Y1"), v(&vs, "Y2"), v(&vs, "Y3"));
        let f = y1.add(&y2).pow(3).add(&y3.mul(&y1));
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 4);
        assert_eq!(SparsePoly::from_coefficients_in(0, &cs), f);
        assert_eq!(f.derivative(2), y1);
    }
}
