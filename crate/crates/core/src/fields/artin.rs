//! Solving x^p - x = c over F_{p^n} as an F_p-linear system.

use super::{linalg, ExtElement, FieldConfig, FieldError};

/// One solution of x^p - x = c. The full solution set is x + F_p; the
/// returned representative is the unique one with coordinate 0 equal to 0.
pub fn artin_schreier_solve(cfg: &FieldConfig, c: &ExtElement) -> Result<ExtElement, FieldError> {
    let trace = cfg.trace(c);
    if trace != 0 {
        return Err(FieldError::NoSolution { trace });
    }
    let p = cfg.p();
    let n = cfg.n();
    // column j of the map restricted to coordinates 1..n: (X^j)^p - X^j
    let cols: Vec<Vec<u64>> = (1..n)
        .map(|j| {
            let e = cfg.basis(j);
            cfg.sub(&cfg.frobenius(&e), &e).coeffs().to_vec()
        })
        .collect();
    let a: Vec<Vec<u64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let mut x = vec![0];
    if n > 1 {
        let sol = linalg::solve(&a, c.coeffs(), p).ok_or(FieldError::NoSolution { trace })?;
        x.extend(sol);
    }
    cfg.from_coeffs(&x)
}

#[cfg(test)]
mod tests {
    use super::super::make_field;
    use super::*;

    #[test]
    fn zero_maps_to_zero() {
        let cfg = make_field(5, 3).unwrap();
        assert_eq!(artin_schreier_solve(&cfg, &cfg.zero()).unwrap(), cfg.zero());
    }

    #[test]
    fn solves_every_trace_zero_target() {
        for (p, n) in [(5, 3), (3, 4), (2, 5), (7, 2), (5, 1)] {
            let cfg = make_field(p, n).unwrap();
            for y in cfg.elements() {
                let c = cfg.sub(&cfg.frobenius(&y), &y);
                let x = artin_schreier_solve(&cfg, &c).unwrap();
                assert_eq!(cfg.sub(&cfg.frobenius(&x), &x), c);
                assert_eq!(x.coeffs()[0], 0);
                // y and x differ by a prime-field constant
                assert!(cfg.sub(&y, &x).as_prime().is_some());
            }
        }
    }

    #[test]
    fn nonzero_trace_has_no_solution() {
        let cfg = make_field(5, 3).unwrap();
        let one = cfg.one();
        assert!(matches!(
            artin_schreier_solve(&cfg, &one),
            Err(FieldError::NoSolution { trace: 3 })
        ));
    }
}
