use std::cmp::Ordering;

/// Most variables a polynomial may have.
pub const MAX_VARS: usize = 8;

/// Exponent vector. Slots past the owning polynomial's variable count are
/// always zero, so comparisons never need the count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    e: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; MAX_VARS] };

    pub fn new(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { e }
    }

    /// x_i^k.
    pub fn var(i: usize, k: u16) -> Self {
        let mut m = Self::ONE;
        m.e[i] = k;
        m
    }

    #[inline]
    pub fn get(&self, i: usize) -> u16 {
        self.e[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: u16) {
        self.e[i] = k;
    }

    pub fn exps(&self, nvars: usize) -> &[u16] {
        &self.e[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(|&x| x as u32).sum()
    }

    /// Degree counted over the variables in `range`.
    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.e[range].iter().map(|&x| x as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(other.e) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial { e }
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut e = self.e;
        for a in e.iter_mut() {
            *a = a.checked_mul(k).expect("exponent overflow");
        }
        Monomial { e }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(other.e).all(|(a, b)| *a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(other.e) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial { e })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(other.e) {
            *a = (*a).min(b);
        }
        Monomial { e }
    }

    pub fn is_one(&self) -> bool {
        self.e == [0; MAX_VARS]
    }
}

/// Graded lexicographic: total degree first, then the first variable that
/// differs decides, the larger exponent being the larger monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.e.cmp(&other.e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(&[0, 2]);
        let b = Monomial::new(&[1, 0]);
        let c = Monomial::new(&[1, 1]);
        let d = Monomial::new(&[2, 0]);
        assert!(a > b);
        assert!(d > c && c > a);
        assert_eq!(c.div(&b), Some(Monomial::new(&[0, 1])));
        assert_eq!(b.div(&a), None);
        assert_eq!(d.gcd(&c), b);
    }
}
