//! Linear changes of variables over F_{p^n}, g(Y) = f(Y·M).

use super::{PrimeField, SparsePoly};
use crate::fields::{ExtElement, FieldConfig};

/// Lifts a polynomial over F_p into F_{p^n}.
pub fn to_extension(f: &SparsePoly<PrimeField>, cfg: &FieldConfig) -> SparsePoly<FieldConfig> {
    assert_eq!(f.ring().p(), cfg.p(), "characteristics differ");
    f.map_ring(cfg.clone(), |c| cfg.from_u64(*c))
}

/// The polynomial over F_p with the same coefficients, or the first
/// coefficient that lies outside F_p.
pub fn to_prime_field(g: &SparsePoly<FieldConfig>) -> Result<SparsePoly<PrimeField>, ExtElement> {
    let ring = PrimeField::new(g.ring().p());
    let mut terms = Vec::with_capacity(g.len());
    for (m, c) in g.terms() {
        terms.push((*m, c.as_prime().ok_or_else(|| c.clone())?));
    }
    Ok(SparsePoly::from_terms(ring, g.vars().clone(), terms))
}

/// g(Y) = f(Y·M) for the row vector Y of block variables: block variable j
/// is replaced by Σ_i M[i][j]·Y_i. Parameters are left alone.
pub fn substitute_linear(f: &SparsePoly<FieldConfig>, m: &[Vec<ExtElement>]) -> SparsePoly<FieldConfig> {
    let cfg = f.ring().clone();
    let vars = f.vars().clone();
    let block = vars.block();
    assert_eq!(m.len(), block.len(), "matrix size must match the variable block");
    let images: Vec<SparsePoly<FieldConfig>> = (0..vars.len())
        .map(|v| {
            if !block.contains(&v) {
                return SparsePoly::var(cfg.clone(), vars.clone(), v);
            }
            let j = v - block.start;
            let terms = m.iter().enumerate().map(|(i, row)| {
                let var = SparsePoly::var(cfg.clone(), vars.clone(), block.start + i);
                var.scale(&row[j])
            });
            terms.fold(SparsePoly::zero(cfg.clone(), vars.clone()), |acc, t| acc.add(&t))
        })
        .collect();
    f.compose(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{find_normal_element, make_field, moore_matrix};
    use crate::mpoly::VarSet;

    #[test]
    fn identity_matrix_is_identity() {
        let cfg = make_field(5, 2).unwrap();
        let vs = VarSet::indexed("Y", 2);
        let f = SparsePoly::var(cfg.clone(), vs.clone(), 0)
            .pow(2)
            .add(&SparsePoly::var(cfg.clone(), vs.clone(), 1));
        let id = vec![vec![cfg.one(), cfg.zero()], vec![cfg.zero(), cfg.one()]];
        assert_eq!(substitute_linear(&f, &id), f);
    }

    #[test]
    fn moore_change_keeps_cyclic_polynomial_rational() {
        let cfg = make_field(5, 3).unwrap();
        let vs = VarSet::indexed("Y", 3);
        let fp = PrimeField::new(5);
        let y = |i| SparsePoly::var(fp, vs.clone(), i);
        // Y1*Y2 + Y2*Y3 + Y3*Y1 + 2
        let f = y(0)
            .mul(&y(1))
            .add(&y(1).mul(&y(2)))
            .add(&y(2).mul(&y(0)))
            .add(&SparsePoly::from_i64(fp, vs.clone(), 2));
        let z = find_normal_element(&cfg);
        let m = moore_matrix(&cfg, &z);
        let g = substitute_linear(&to_extension(&f, &cfg), &m.rows());
        assert!(g.is_cyclic());
        let g = to_prime_field(&g).expect("coefficients in F_p");
        let back = substitute_linear(&to_extension(&g, &cfg), &m.inverse(&cfg).unwrap().rows());
        assert_eq!(to_prime_field(&back).unwrap(), f);
    }
}
