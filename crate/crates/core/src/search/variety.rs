use serde::Serialize;

use super::perm::complete;
use super::{Method, ProblemInstance, SearchError, Witness};
use crate::derivation::{specialize_n3, DerivedSystem3, DerivedSystem4};
use crate::exec::Exec;
use crate::fields::{artin_schreier_solve, ExtElement, FieldConfig};
use crate::mpoly::{to_extension, Evaluator, IntPoly, SparsePoly};

/// The derived system matching the extension degree.
#[derive(Clone, Copy)]
pub enum Derived<'a> {
    N3(&'a DerivedSystem3),
    N4(&'a DerivedSystem4),
}

fn lift(f: &IntPoly, cfg: &FieldConfig) -> Evaluator<FieldConfig> {
    Evaluator::new(&to_extension(&f.reduce_mod_p(cfg.p()), cfg))
}

fn lift_prime(f: &SparsePoly<crate::mpoly::PrimeField>, cfg: &FieldConfig) -> Evaluator<FieldConfig> {
    Evaluator::new(&to_extension(f, cfg))
}

enum Polys {
    /// G, P, Q at T = t; Δ = P / (4t·y1y2y3·Q).
    N3 {
        g: Evaluator<FieldConfig>,
        p: Evaluator<FieldConfig>,
        q: Evaluator<FieldConfig>,
    },
    /// G, L in Y and A, B in X; Δ = A(D) / (32·B(D)).
    N4 {
        g: Evaluator<FieldConfig>,
        l: Evaluator<FieldConfig>,
        a: Evaluator<FieldConfig>,
        b: Evaluator<FieldConfig>,
    },
}

/// Scans y ∈ F_{p^n}* for points of the variety and turns them into
/// collisions of f_b.
pub struct VarietyScanner {
    inst: ProblemInstance,
    polys: Polys,
}

impl VarietyScanner {
    pub fn new(inst: &ProblemInstance, sys: Derived<'_>) -> Result<Self, SearchError> {
        let cfg = &inst.cfg;
        if cfg.p() == 2 {
            return Err(SearchError::NotApplicable("p = 2".into()));
        }
        let polys = match sys {
            Derived::N3(s) => {
                if cfg.n() != 3 {
                    return Err(SearchError::NotApplicable(format!("n = {} with the n = 3 system", cfg.n())));
                }
                let sp = specialize_n3(s, cfg.p(), inst.t)?;
                Polys::N3 {
                    g: lift_prime(&sp.g, cfg),
                    p: lift_prime(&sp.p, cfg),
                    q: lift_prime(&sp.q, cfg),
                }
            }
            Derived::N4(s) => {
                if cfg.n() != 4 {
                    return Err(SearchError::NotApplicable(format!("n = {} with the n = 4 system", cfg.n())));
                }
                if inst.b != cfg.half() {
                    return Err(SearchError::NotApplicable("the n = 4 system assumes b = 1/2".into()));
                }
                Polys::N4 {
                    g: lift(&s.g, cfg),
                    l: lift(&s.l, cfg),
                    a: lift(&s.a, cfg),
                    b: lift(&s.b, cfg),
                }
            }
        };
        Ok(VarietyScanner {
            inst: inst.clone(),
            polys,
        })
    }

    /// y, y^p, …, y^{p^{n−1}}.
    fn conjugates(&self, y: &ExtElement) -> Vec<ExtElement> {
        let cfg = &self.inst.cfg;
        let mut out = vec![y.clone()];
        for _ in 1..cfg.n() {
            let next = cfg.frobenius(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }

    fn rotated(ys: &[ExtElement], k: usize) -> Vec<ExtElement> {
        (0..ys.len()).map(|i| ys[(i + k) % ys.len()].clone()).collect()
    }

    /// G(y, y^p, …) = 0 with the denominators of Δ nonzero.
    pub fn qualifies(&self, y: &ExtElement) -> bool {
        if y.is_zero() {
            return false;
        }
        let ys = self.conjugates(y);
        match &self.polys {
            Polys::N3 { g, q, .. } => g.eval(&ys).is_zero() && !q.eval(&ys).is_zero(),
            Polys::N4 { g, l, .. } => {
                g.eval(&ys).is_zero() && (0..4).all(|k| !l.eval(&Self::rotated(&ys, k)).is_zero())
            }
        }
    }

    /// Δ from y, then z and x; every step is checked.
    pub fn reconstruct(&self, y: &ExtElement) -> Result<Witness, SearchError> {
        let inst = &self.inst;
        let cfg = &inst.cfg;
        let fail = |what: &str| SearchError::ReconstructionFailure(format!("{what} at y = {y:?}"));
        if y.is_zero() {
            return Err(fail("y = 0"));
        }
        let ys = self.conjugates(y);
        let delta = match &self.polys {
            Polys::N3 { g, p, q } => {
                if !g.eval(&ys).is_zero() {
                    return Err(fail("G != 0"));
                }
                let prod = ys.iter().fold(cfg.from_u64(4 * inst.t), |acc, v| cfg.mul(&acc, v));
                let den = cfg.mul(&prod, &q.eval(&ys));
                cfg.div(&p.eval(&ys), &den).ok_or_else(|| fail("Q = 0"))?
            }
            Polys::N4 { g, a, b, .. } => {
                if !g.eval(&ys).is_zero() {
                    return Err(fail("G != 0"));
                }
                let ds: Vec<ExtElement> = (0..4).map(|i| d_value(cfg, &ys[i], &ys[(i + 1) % 4])).collect();
                let den = cfg.scale(&b.eval(&ds), 32);
                cfg.div(&a.eval(&ds), &den).ok_or_else(|| fail("B(D) = 0"))?
            }
        };
        if cfg.trace(&delta) != inst.t {
            return Err(fail("trace(Δ) != 2 trace(b)"));
        }
        if cfg.square(&delta) != inst.delta_square(y) {
            return Err(fail("Δ² != y^2p + y^2 - 2y^(1+p) + 4y^(p-1) - 4"));
        }
        // z = (−(y^p − y) + Δ)/2, and x solves x^p − x = z − b.
        let z = cfg.mul(&cfg.sub(&delta, &cfg.sub(&cfg.frobenius(y), y)), &cfg.half());
        let c = cfg.sub(&z, &inst.b);
        if cfg.trace(&c) != 0 {
            return Err(fail("trace(z - b) != 0"));
        }
        let x = artin_schreier_solve(cfg, &c)?;
        let w = complete(inst, x, y.clone(), Method::Variety);
        if w.delta != delta || w.z != z {
            return Err(fail("Δ or z disagrees with the collision"));
        }
        let bad = w.violations(inst);
        if !bad.is_empty() {
            return Err(fail(&bad.join(", ")));
        }
        Ok(w)
    }
}

/// D(u, v) = u² + v² − 2uv + 4v/u − 4.
fn d_value(cfg: &FieldConfig, u: &ExtElement, v: &ExtElement) -> ExtElement {
    let diff = cfg.sub(u, v);
    let ratio = cfg.div(&cfg.scale(v, 4), u).expect("u != 0");
    cfg.sub(&cfg.add(&cfg.square(&diff), &ratio), &cfg.from_u64(4))
}

/// The first y in enumeration order on the variety, turned into a witness.
pub fn variety_witness(
    inst: &ProblemInstance,
    sys: Derived<'_>,
    budget: u64,
    exec: &Exec,
) -> Result<Witness, SearchError> {
    inst.check_budget(inst.field_size(), budget)?;
    let scanner = VarietyScanner::new(inst, sys)?;
    let cfg = &inst.cfg;
    let q = inst.field_size() as u64;
    let i = exec
        .find_first(1..q, |i| scanner.qualifies(&cfg.element_at(i)))
        .ok_or(SearchError::NoVarietyPoint { p: cfg.p() })?;
    scanner.reconstruct(&cfg.element_at(i))
}

/// Counts from the forward direction of the n = 3 equivalence: every
/// solution (y, Δ) of Δ² = D(y) with trace(Δ) = t and nonzero denominator
/// in the elimination of Δ gives a zero of G(y, y^p, y^{p²}).
#[derive(Clone, Debug, Serialize)]
pub struct ForwardCheck {
    pub p: u64,
    pub solutions: u64,
    pub on_variety: u64,
}

impl ForwardCheck {
    pub fn holds(&self) -> bool {
        self.solutions == self.on_variety
    }
}

pub fn forward_check_n3(inst: &ProblemInstance, sys: &DerivedSystem3, exec: &Exec) -> Result<ForwardCheck, SearchError> {
    let cfg = &inst.cfg;
    if cfg.n() != 3 {
        return Err(SearchError::NotApplicable(format!("n = {}", cfg.n())));
    }
    let sp = specialize_n3(sys, cfg.p(), inst.t)?;
    let g = lift_prime(&sp.g, cfg);
    let t = cfg.from_u64(inst.t);
    let q = inst.field_size() as u64;
    let counts = exec.map(1..q, |i| {
        let y = cfg.element_at(i);
        let Some(root) = cfg.sqrt(&inst.delta_square(&y)) else {
            return (0, 0);
        };
        let roots = if root.is_zero() { vec![root] } else { vec![root.clone(), cfg.neg(&root)] };
        let y2 = cfg.frobenius(&y);
        let ys = [y.clone(), y2.clone(), cfg.frobenius(&y2)];
        let mut out = (0, 0);
        for d1 in roots {
            if cfg.trace(&d1) != inst.t {
                continue;
            }
            let d2 = cfg.frobenius(&d1);
            let d3 = cfg.frobenius(&d2);
            // 4t(t² + Δ1² − Δ2² − Δ3²)
            let inner = cfg.sub(&cfg.sub(&cfg.add(&cfg.square(&t), &cfg.square(&d1)), &cfg.square(&d2)), &cfg.square(&d3));
            if cfg.mul(&cfg.scale(&t, 4), &inner).is_zero() {
                continue;
            }
            out.0 += 1;
            out.1 += g.eval(&ys).is_zero() as u64;
        }
        out
    });
    let (solutions, on_variety) = counts.iter().fold((0, 0), |a, c| (a.0 + c.0, a.1 + c.1));
    Ok(ForwardCheck {
        p: cfg.p(),
        solutions,
        on_variety,
    })
}
