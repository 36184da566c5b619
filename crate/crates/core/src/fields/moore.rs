//! Moore matrices M(z)[i][j] = z^(p^((i+j) mod n)) and normal elements.

use super::{ExtElement, FieldConfig, FieldError};

/// The Moore matrix of a generator `z`. Row i+1 is the entry-wise Frobenius
/// of row i, which is row i rotated left by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMatrix {
    generator: ExtElement,
    /// z, z^p, ..., z^(p^(n-1))
    orbit: Vec<ExtElement>,
}

pub fn moore_matrix(cfg: &FieldConfig, z: &ExtElement) -> MooreMatrix {
    let mut orbit = Vec::with_capacity(cfg.n());
    let mut cur = z.clone();
    for _ in 0..cfg.n() {
        orbit.push(cur.clone());
        cur = cfg.frobenius(&cur);
    }
    MooreMatrix {
        generator: z.clone(),
        orbit,
    }
}

impl MooreMatrix {
    pub fn generator(&self) -> &ExtElement {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.orbit.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExtElement {
        &self.orbit[(i + j) % self.dim()]
    }

    pub fn rows(&self) -> Vec<Vec<ExtElement>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    pub fn determinant(&self, cfg: &FieldConfig) -> ExtElement {
        determinant(cfg, self.rows())
    }

    pub fn is_invertible(&self, cfg: &FieldConfig) -> bool {
        !self.determinant(cfg).is_zero()
    }

    /// M(z)^(-1), which is again a Moore matrix M(w); returned in that form.
    pub fn inverse(&self, cfg: &FieldConfig) -> Result<MooreMatrix, FieldError> {
        let inv = invert(cfg, self.rows()).ok_or_else(|| FieldError::NotInvertible {
            det: self.determinant(cfg).to_string(),
        })?;
        let w = moore_matrix(cfg, &inv[0][0]);
        debug_assert_eq!(w.rows(), inv);
        Ok(w)
    }
}

/// Product of two square matrices over F_{p^n}.
pub fn mat_mul(
    cfg: &FieldConfig,
    a: &[Vec<ExtElement>],
    b: &[Vec<ExtElement>],
) -> Vec<Vec<ExtElement>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = cfg.zero();
                    for (k, bk) in b.iter().enumerate() {
                        acc = cfg.add(&acc, &cfg.mul(&a[i][k], &bk[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn determinant(cfg: &FieldConfig, mut m: Vec<Vec<ExtElement>>) -> ExtElement {
    let n = m.len();
    let mut det = cfg.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return cfg.zero();
        };
        if pr != c {
            m.swap(pr, c);
            det = cfg.neg(&det);
        }
        det = cfg.mul(&det, &m[c][c]);
        let inv = cfg.inv(&m[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = cfg.mul(&m[r][c], &inv);
            for j in c..n {
                let sub = cfg.mul(&f, &m[c][j]);
                m[r][j] = cfg.sub(&m[r][j], &sub);
            }
        }
    }
    det
}

fn invert(cfg: &FieldConfig, mut m: Vec<Vec<ExtElement>>) -> Option<Vec<Vec<ExtElement>>> {
    let n = m.len();
    let mut inv: Vec<Vec<ExtElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { cfg.one() } else { cfg.zero() })
                .collect()
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(pr, c);
        inv.swap(pr, c);
        let pinv = cfg.inv(&m[c][c]).expect("nonzero pivot");
        for j in 0..n {
            m[c][j] = cfg.mul(&m[c][j], &pinv);
            inv[c][j] = cfg.mul(&inv[c][j], &pinv);
        }
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in 0..n {
                let s = cfg.mul(&f, &m[c][j]);
                m[r][j] = cfg.sub(&m[r][j], &s);
                let s = cfg.mul(&f, &inv[c][j]);
                inv[r][j] = cfg.sub(&inv[r][j], &s);
            }
        }
    }
    Some(inv)
}

/// First element in enumeration order whose Moore matrix is invertible.
pub fn find_normal_element(cfg: &FieldConfig) -> ExtElement {
    (1..)
        .map(|i| cfg.element_at(i))
        .find(|z| moore_matrix(cfg, z).is_invertible(cfg))
        .expect("normal elements exist in every finite extension")
}

#[cfg(test)]
mod tests {
    use super::super::{linalg, make_field};
    use super::*;

    fn shift(cfg: &FieldConfig, n: usize) -> Vec<Vec<ExtElement>> {
        // C with C·M = rows of M shifted up by one
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if j == (i + 1) % n { cfg.one() } else { cfg.zero() })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn prime_subfield_elements_are_singular() {
        let cfg = make_field(5, 3).unwrap();
        let m = moore_matrix(&cfg, &cfg.from_u64(3));
        assert!(m.determinant(&cfg).is_zero());
        assert!(matches!(m.inverse(&cfg), Err(FieldError::NotInvertible { .. })));
    }

    #[test]
    fn inverse_is_moore_and_frobenius_shifts_rows() {
        let cfg = make_field(5, 3).unwrap();
        let z = find_normal_element(&cfg);
        let m = moore_matrix(&cfg, &z);
        let w = m.inverse(&cfg).unwrap();
        let prod = mat_mul(&cfg, &m.rows(), &w.rows());
        for (i, row) in prod.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*e, if i == j { cfg.one() } else { cfg.zero() });
            }
        }
        let sigma: Vec<Vec<_>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(|e| cfg.frobenius(e)).collect())
            .collect();
        assert_eq!(sigma, mat_mul(&cfg, &shift(&cfg, 3), &m.rows()));
    }

    #[test]
    fn degree_one_normal_element_is_one() {
        let cfg = make_field(5, 1).unwrap();
        assert_eq!(find_normal_element(&cfg), cfg.one());
    }

    #[test]
    fn invertible_iff_orbit_independent() {
        for (p, n) in [(5, 3), (3, 4), (2, 4), (7, 2)] {
            let cfg = make_field(p, n).unwrap();
            for z in cfg.elements() {
                let m = moore_matrix(&cfg, &z);
                let coords: Vec<Vec<u64>> =
                    (0..n).map(|i| m.entry(0, i).coeffs().to_vec()).collect();
                let independent = linalg::rank(&coords, p) == n;
                assert_eq!(m.is_invertible(&cfg), independent, "z = {z}");
            }
        }
    }

    #[test]
    fn normal_element_not_in_subfield() {
        for (p, n) in [(5, 3), (3, 4), (2, 6), (7, 4)] {
            let cfg = make_field(p, n).unwrap();
            let z = find_normal_element(&cfg);
            for d in (1..n).filter(|d| n % d == 0) {
                assert_ne!(cfg.frobenius_pow(&z, d), z);
            }
        }
    }
}
