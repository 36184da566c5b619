use num_bigint::BigUint;
use serde::Serialize;

use crate::fields::next_prime;

/// Least prime p with p − coeff·√p − (5·d^{13/3} + d²) > 0.
#[derive(Clone, Debug, Serialize)]
pub struct Threshold {
    pub d: u64,
    pub coeff: u64,
    /// Decimal enclosure of C = 5·d^{13/3} + d².
    pub c_lower: String,
    pub c_upper: String,
    /// The real root ¼[coeff + (coeff² + 4C)^{1/2}]², for display.
    pub root: f64,
    /// The same expression with coeff − 1 outside the square root.
    pub root_minus_one: f64,
    /// Least integer satisfying the inequality.
    pub least_integer: u64,
    pub prime: u64,
}

/// Enclosure [lo, hi] / 10^k of C, with hi − lo = 5.
fn c_enclosure(d: u64, k: u32) -> (BigUint, BigUint) {
    let scale = BigUint::from(10u32).pow(k);
    let r = (BigUint::from(d).pow(13) * scale.pow(3)).cbrt();
    let d2 = BigUint::from(d * d) * &scale;
    (BigUint::from(5u32) * &r + &d2, BigUint::from(5u32) * (r + 1u32) + d2)
}

/// p − coeff·√p − c/10^k > 0, decided over the integers.
fn holds(p: u64, coeff: u64, c: &BigUint, scale: &BigUint) -> bool {
    let ps = BigUint::from(p) * scale;
    if ps <= *c {
        return false;
    }
    let lhs = (ps - c).pow(2);
    lhs > BigUint::from(coeff).pow(2) * BigUint::from(p) * scale * scale
}

fn decimal(c: &BigUint, k: u32) -> String {
    let s = c.to_string();
    let (int, frac) = s.split_at(s.len() - k as usize);
    format!("{int}.{frac}")
}

pub fn lang_weil_threshold(d: u64, coeff: u64) -> Threshold {
    let mut k = 9;
    loop {
        let scale = BigUint::from(10u32).pow(k);
        let (lo, hi) = c_enclosure(d, k);
        let c_approx = 5.0 * (d as f64).powf(13.0 / 3.0) + (d * d) as f64;
        let disc = ((coeff * coeff) as f64 + 4.0 * c_approx).sqrt();
        let root = 0.25 * (coeff as f64 + disc).powi(2);
        let root_minus_one = 0.25 * ((coeff - 1) as f64 + disc).powi(2);
        let mut p = (root as u64).saturating_sub(16);
        while holds(p, coeff, &lo, &scale) && p > 0 {
            p -= 16.min(p);
        }
        // p fails even for the smaller C, so it fails for C itself.
        let mut ambiguous = false;
        while !holds(p, coeff, &hi, &scale) {
            if holds(p, coeff, &lo, &scale) {
                ambiguous = true;
                break;
            }
            p += 1;
        }
        if ambiguous {
            k += 6;
            continue;
        }
        return Threshold {
            d,
            coeff,
            c_lower: decimal(&lo, k),
            c_upper: decimal(&hi, k),
            root,
            root_minus_one,
            least_integer: p,
            prime: next_prime(p),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enclosure_brackets_float_value() {
        let (lo, hi) = c_enclosure(18, 9);
        let c = 5.0 * 18f64.powf(13.0 / 3.0) + 324.0;
        let lo: f64 = decimal(&lo, 9).parse().unwrap();
        let hi: f64 = decimal(&hi, 9).parse().unwrap();
        assert!(lo <= c + 1e-3 && c - 1e-3 <= hi);
        assert!(hi - lo < 1e-6);
    }

    #[test]
    fn least_integer_is_sharp() {
        let t = lang_weil_threshold(5, 12);
        let scale = BigUint::from(10u32).pow(9);
        let (lo, hi) = c_enclosure(5, 9);
        assert!(holds(t.least_integer, 12, &hi, &scale));
        assert!(!holds(t.least_integer - 1, 12, &lo, &scale));
    }
}
