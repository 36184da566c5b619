use serde::Serialize;

use super::{ProblemInstance, SearchError};
use crate::derivation::{specialize_n3, DerivedSystem3};
use crate::exec::Exec;
use crate::fields::{find_normal_element, ExtElement, FieldConfig};
use crate::mpoly::{substitute_linear, to_extension, to_prime_field, Evaluator, IntPoly, PrimeField, SparsePoly, VarSet};

const CHUNK: u64 = 4096;

/// An exact point count with the quantities it is compared against.
#[derive(Clone, Debug, Serialize)]
pub struct CountRecord {
    pub id: String,
    pub p: u64,
    pub vars: usize,
    pub count: u64,
    /// p^(vars − 1), the size of a hypersurface to leading order.
    pub hypersurface: u64,
    /// Upper bound the count is compared against, if any.
    pub bound: Option<u64>,
}

impl CountRecord {
    pub fn within_bound(&self) -> Option<bool> {
        self.bound.map(|b| self.count <= b)
    }
}

fn check_budget(p: u64, k: usize, budget: u64) -> Result<u64, SearchError> {
    let size = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(SearchError::BudgetExceeded { size, budget });
    }
    Ok(size as u64)
}

/// |{a ∈ F_p^k : f(a) = 0}| by exhaustive evaluation.
pub fn count_points(f: &SparsePoly<PrimeField>, budget: u64, exec: &Exec) -> Result<u64, SearchError> {
    count_common_points(std::slice::from_ref(f), budget, exec)
}

/// Common zeros in F_p^k of polynomials over the same variables.
pub fn count_common_points(polys: &[SparsePoly<PrimeField>], budget: u64, exec: &Exec) -> Result<u64, SearchError> {
    let Some(first) = polys.first() else {
        return Err(SearchError::NotApplicable("no polynomials".into()));
    };
    let p = first.ring().p();
    let k = first.nvars();
    if polys.iter().any(|f| f.nvars() != k || f.ring().p() != p) {
        return Err(SearchError::NotApplicable("polynomials over different spaces".into()));
    }
    let size = check_budget(p, k, budget)?;
    let evs: Vec<Evaluator<PrimeField>> = polys.iter().map(Evaluator::new).collect();
    let counts = exec.map_chunks(0..size, CHUNK, |r| {
        let mut point = vec![0u64; k];
        r.filter(|&i| {
            let mut rest = i;
            for c in point.iter_mut().rev() {
                *c = rest % p;
                rest /= p;
            }
            evs.iter().all(|ev| ev.eval(&point) == 0)
        })
        .count() as u64
    });
    Ok(counts.into_iter().sum())
}

/// f((Y_1, …, Y_n)·M(z)) for f over F_p. Errors if a coefficient of the
/// result lies outside F_p, which for cyclic f and normal z cannot happen.
pub fn moore_transform(
    f: &SparsePoly<PrimeField>,
    cfg: &FieldConfig,
    z: &ExtElement,
) -> Result<SparsePoly<PrimeField>, SearchError> {
    let m = crate::fields::moore_matrix(cfg, z);
    if !m.is_invertible(cfg) {
        return Err(SearchError::NotApplicable("z is not a normal element".into()));
    }
    let g = substitute_linear(&to_extension(f, cfg), &m.rows());
    to_prime_field(&g).map_err(|c| SearchError::CoefficientLeak(format!("{c:?}")))
}

/// |{y ∈ F_{p^n} : f(y, y^p, …, y^{p^{n−1}}) = 0 for every f}|, where n is
/// the number of variables. Equals the number of common zeros in F_p^n of
/// the f((Y)·M(z)) for any normal z, rational or not.
pub fn count_on_conjugates(
    polys: &[SparsePoly<PrimeField>],
    cfg: &FieldConfig,
    budget: u64,
    exec: &Exec,
) -> Result<u64, SearchError> {
    let n = cfg.n();
    if polys.iter().any(|f| f.nvars() != n) {
        return Err(SearchError::NotApplicable(format!("polynomials must have {n} variables")));
    }
    let size = check_budget(cfg.p(), n, budget)?;
    let evs: Vec<Evaluator<FieldConfig>> = polys.iter().map(|f| Evaluator::new(&to_extension(f, cfg))).collect();
    let counts = exec.map_chunks(0..size, CHUNK, |r| {
        r.filter(|&i| {
            let mut ys = vec![cfg.element_at(i)];
            for _ in 1..n {
                let next = cfg.frobenius(ys.last().expect("nonempty"));
                ys.push(next);
            }
            evs.iter().all(|ev| ev.eval(&ys).is_zero())
        })
        .count() as u64
    });
    Ok(counts.into_iter().sum())
}

/// f mod p with its parameters set to `params`, as a polynomial in the
/// variable block alone.
pub fn specialize_params(f: &IntPoly, p: u64, params: &[u64]) -> Result<SparsePoly<PrimeField>, SearchError> {
    let vars = f.vars();
    if params.len() != vars.params() {
        return Err(SearchError::NotApplicable(format!(
            "{} parameter values given for {} parameters",
            params.len(),
            vars.params()
        )));
    }
    let mut g = f.reduce_mod_p(p);
    for (i, v) in params.iter().enumerate() {
        g = g.eval_var(i, &(v % p));
    }
    let names = &vars.names()[vars.params()..];
    let map: Vec<Option<usize>> = (0..vars.len()).map(|i| i.checked_sub(vars.params())).collect();
    Ok(g.rename(VarSet::with_params(names, 0), &map))
}

/// |V(G_1) ∩ V(Q_1)| over F_p^3 for the n = 3 system at b, with the bound
/// 18²·p. A point a ↦ y = a_1 z + a_2 z^p + a_3 z^{p²} maps F_p^3 onto
/// F_{p^3} and (a)·M(z) = (y, y^p, y^{p²}), so this counts
/// y ∈ F_{p^3} with G(y, y^p, y^{p²}) = Q(y, y^p, y^{p²}) = 0.
pub fn count_intersection_n3(
    inst: &ProblemInstance,
    sys: &DerivedSystem3,
    budget: u64,
    exec: &Exec,
) -> Result<CountRecord, SearchError> {
    let cfg = &inst.cfg;
    if cfg.n() != 3 {
        return Err(SearchError::NotApplicable(format!("n = {}", cfg.n())));
    }
    let p = cfg.p();
    let sp = specialize_n3(sys, p, inst.t)?;
    let count = count_on_conjugates(&[sp.g, sp.q], cfg, budget, exec)?;
    Ok(CountRecord {
        id: "V(G1) ∩ V(Q1)".into(),
        p,
        vars: 3,
        count,
        hypersurface: p * p,
        bound: Some(18 * 18 * p),
    })
}

/// |V(G_1)| over F_p^3 for G_1 = G((Y)·M(z)), z the first normal element,
/// compared against p².
pub fn count_g1_n3(
    inst: &ProblemInstance,
    sys: &DerivedSystem3,
    budget: u64,
    exec: &Exec,
) -> Result<CountRecord, SearchError> {
    let cfg = &inst.cfg;
    if cfg.n() != 3 {
        return Err(SearchError::NotApplicable(format!("n = {}", cfg.n())));
    }
    let p = cfg.p();
    check_budget(p, 3, budget)?;
    let sp = specialize_n3(sys, p, inst.t)?;
    let g1 = moore_transform(&sp.g, cfg, &find_normal_element(cfg))?;
    Ok(CountRecord {
        id: "V(G1)".into(),
        p,
        vars: 3,
        count: count_points(&g1, budget, exec)?,
        hypersurface: p * p,
        bound: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    #[test]
    fn hyperplane_has_p_squared_points() {
        let fp = PrimeField::new(7);
        let f = SparsePoly::var(fp, VarSet::indexed("Y", 3), 0);
        assert_eq!(count_points(&f, 1000, &Exec::sequential()).unwrap(), 49);
        assert!(matches!(count_points(&f, 100, &Exec::sequential()), Err(SearchError::BudgetExceeded { .. })));
    }

    #[test]
    fn worker_count_does_not_change_count() {
        let fp = PrimeField::new(11);
        let vs = VarSet::indexed("Y", 3);
        let y = |i| SparsePoly::var(fp, vs.clone(), i);
        let f = y(0).pow(2).add(&y(1).pow(2)).sub(&y(2).pow(2)).add(&SparsePoly::from_i64(fp, vs.clone(), 3));
        let counts: Vec<u64> = [1, 2, 8]
            .iter()
            .map(|&w| count_points(&f, 10_000, &Exec::with_workers(w)).unwrap())
            .collect();
        assert!(counts.iter().all(|&c| c == counts[0]));
    }

    #[test]
    fn g1_points_match_roots_of_g_on_conjugates() {
        let sys = crate::derivation::derive_n3().unwrap();
        let cfg = make_field(7, 3).unwrap();
        let inst = ProblemInstance::new(cfg.clone(), cfg.one()).unwrap();
        let exec = Exec::sequential();
        let rec = count_g1_n3(&inst, &sys, 1000, &exec).unwrap();
        let sp = specialize_n3(&sys, 7, inst.t).unwrap();
        let g = Evaluator::new(&to_extension(&sp.g, &cfg));
        let roots = (0..343)
            .filter(|&i| {
                let y = cfg.element_at(i);
                let y2 = cfg.frobenius(&y);
                g.eval(&[y.clone(), y2.clone(), cfg.frobenius(&y2)]).is_zero()
            })
            .count() as u64;
        assert_eq!(rec.count, roots);
    }

    #[test]
    fn moore_transform_of_non_cyclic_leaks() {
        let cfg = make_field(5, 3).unwrap();
        let z = find_normal_element(&cfg);
        let fp = PrimeField::new(5);
        let f = SparsePoly::var(fp, VarSet::indexed("Y", 3), 0);
        assert!(matches!(moore_transform(&f, &cfg, &z), Err(SearchError::CoefficientLeak(_))));
    }
}
