use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run, Outcome, Report};
use crate::fields::{make_field, mat_mul, moore_matrix, ExtElement, FieldConfig};
use crate::mpoly::{substitute_linear, to_extension, to_prime_field, Monomial, PrimeField, SparsePoly, VarSet};

fn random_element(cfg: &FieldConfig, rng: &mut ChaCha8Rng) -> ExtElement {
    let coeffs: Vec<u64> = (0..cfg.n()).map(|_| rng.gen_range(0..cfg.p())).collect();
    cfg.from_coeffs(&coeffs).expect("reduced coefficients")
}

fn random_normal(cfg: &FieldConfig, rng: &mut ChaCha8Rng) -> ExtElement {
    loop {
        let z = random_element(cfg, rng);
        if moore_matrix(cfg, &z).is_invertible(cfg) {
            return z;
        }
    }
}

/// Sum of a few random ρ-orbits of terms of degree at most 3.
fn random_cyclic(fp: PrimeField, vars: &VarSet, rng: &mut ChaCha8Rng) -> SparsePoly<PrimeField> {
    let n = vars.len();
    let mut f = SparsePoly::zero(fp, vars.clone());
    for _ in 0..4 {
        let exps: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=3u16)).collect();
        let c = rng.gen_range(1..fp.p());
        let term = SparsePoly::monomial(fp, vars.clone(), Monomial::new(&exps), c);
        for k in 0..n {
            f = f.add(&term.block_rotate(k));
        }
    }
    f
}

/// Randomized check that Y ↦ Y·M(z), z normal, preserves cyclicity and
/// F_p-rationality, and that M(z)⁻¹ = M(w) undoes it.
pub fn verify_lemma21(p: u64, n: usize, trials: usize, seed: u64) -> Report {
    let suite = format!("lemma21 p={p} n={n}");
    let cfg = match make_field(p, n) {
        Ok(cfg) => cfg,
        Err(e) => {
            let check = run("lemma21.field", || Outcome::fail(e.to_string()));
            return Report::new(&suite, seed, vec![check]);
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarSet::indexed("Y", n);
    let fp = PrimeField::new(p);
    let (mut forward, mut converse, mut inverse) = (Vec::new(), Vec::new(), Vec::new());
    for trial in 0..trials {
        let z = random_normal(&cfg, &mut rng);
        let m = moore_matrix(&cfg, &z);
        let w = m.inverse(&cfg).expect("normal element");
        let id = mat_mul(&cfg, &m.rows(), &w.rows());
        let is_identity = id
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, e)| *e == if i == j { cfg.one() } else { cfg.zero() }));
        if !is_identity {
            inverse.push(trial);
        }
        let f = random_cyclic(fp, &vars, &mut rng);
        let g = substitute_linear(&to_extension(&f, &cfg), &m.rows());
        match to_prime_field(&g) {
            Ok(g_p) if g.is_cyclic() => {
                let back = substitute_linear(&to_extension(&g_p, &cfg), &w.rows());
                if !(back.is_cyclic() && to_prime_field(&back).is_ok_and(|b| b == f)) {
                    converse.push(trial);
                }
            }
            _ => forward.push(trial),
        }
    }
    let summary = |bad: &Vec<usize>, what: &str| {
        Outcome::from_bool(
            bad.is_empty(),
            if bad.is_empty() {
                format!("{trials} trials: {what}")
            } else {
                format!("{what} fails in trials {bad:?}")
            },
        )
    };
    let mut checks = vec![
        run("lemma21.forward", || summary(&forward, "f(Y·M(z)) is cyclic with coefficients in F_p")),
        run("lemma21.converse", || summary(&converse, "g(Y·M(w)) recovers f")),
        run("lemma21.inverse", || summary(&inverse, "M(z)·M(w) = I")),
    ];
    checks.push(run("lemma21.contrapositive", || {
        if n == 1 {
            return Outcome::pass("n = 1: every polynomial is cyclic");
        }
        let z = random_normal(&cfg, &mut rng);
        let y1 = SparsePoly::var(fp, vars.clone(), 0);
        let g = substitute_linear(&to_extension(&y1, &cfg), &moore_matrix(&cfg, &z).rows());
        Outcome::from_bool(!g.is_cyclic(), format!("Y1 (not cyclic) maps to a non-cyclic g: {}", !g.is_cyclic()))
    }));
    Report::new(&suite, seed, checks)
}

/// f_b(x) = x + 1/(x^p − x + b).
fn f_b(cfg: &FieldConfig, b: &ExtElement, x: &ExtElement) -> ExtElement {
    let z = z_of(cfg, b, x);
    cfg.add(x, &cfg.inv(&z).expect("trace(b) != 0 keeps Z nonzero"))
}

fn z_of(cfg: &FieldConfig, b: &ExtElement, x: &ExtElement) -> ExtElement {
    cfg.add(&cfg.sub(&cfg.frobenius(x), x), b)
}

/// Right side Y(Z(x)² + (y^p − y)Z(x) + 1 − y^{p−1}) / (Z(x)Z(x+y)).
fn difference_rhs(cfg: &FieldConfig, b: &ExtElement, x: &ExtElement, y: &ExtElement) -> ExtElement {
    let zx = z_of(cfg, b, x);
    let zxy = z_of(cfg, b, &cfg.add(x, y));
    let num = cfg.mul(y, &quadratic_at(cfg, y, &zx));
    cfg.div(&num, &cfg.mul(&zx, &zxy)).expect("nonzero denominators")
}

/// z² + (y^p − y)z + 1 − y^{p−1}.
fn quadratic_at(cfg: &FieldConfig, y: &ExtElement, z: &ExtElement) -> ExtElement {
    let a = cfg.sub(&cfg.frobenius(y), y);
    let c = cfg.sub(&cfg.one(), &cfg.pow(y, (cfg.p() - 1) as u128));
    cfg.add(&cfg.add(&cfg.square(z), &cfg.mul(&a, z)), &c)
}

/// Randomized check of the difference identity for f_b and of the
/// quadratic-formula description of its roots in z.
pub fn verify_difference_identity(p: u64, n: usize, b: &ExtElement, trials: usize, seed: u64) -> Report {
    let suite = format!("difference p={p} n={n}");
    let cfg = match make_field(p, n) {
        Ok(cfg) => cfg,
        Err(e) => {
            let check = run("diff.field", || Outcome::fail(e.to_string()));
            return Report::new(&suite, seed, vec![check]);
        }
    };
    if cfg.trace(b) == 0 {
        let check = run("diff.trace", || Outcome::fail("trace(b) = 0"));
        return Report::new(&suite, seed, vec![check]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    checks.push(run("diff.identity", || {
        for _ in 0..trials {
            let x = random_element(&cfg, &mut rng);
            let y = random_element(&cfg, &mut rng);
            let lhs = cfg.sub(&f_b(&cfg, b, &cfg.add(&x, &y)), &f_b(&cfg, b, &x));
            if lhs != difference_rhs(&cfg, b, &x, &y) {
                return Outcome::fail(format!("sides differ at x = {x:?}, y = {y:?}"));
            }
        }
        Outcome::pass(format!("{trials} random (x, y) agree"))
    }));
    checks.push(run("diff.y_zero", || {
        let x = random_element(&cfg, &mut rng);
        let y = cfg.zero();
        let lhs = cfg.sub(&f_b(&cfg, b, &cfg.add(&x, &y)), &f_b(&cfg, b, &x));
        let rhs = difference_rhs(&cfg, b, &x, &y);
        Outcome::from_bool(lhs.is_zero() && rhs.is_zero(), "both sides vanish at y = 0")
    }));
    checks.push(run("diff.quadratic", || {
        if p == 2 {
            return Outcome::pass("p = 2: the quadratic formula does not apply");
        }
        let mut squares = 0;
        for _ in 0..trials {
            let y = random_element(&cfg, &mut rng);
            let a = cfg.sub(&cfg.frobenius(&y), &y);
            let c = cfg.sub(&cfg.one(), &cfg.pow(&y, (p - 1) as u128));
            let disc = cfg.sub(&cfg.square(&a), &cfg.scale(&c, 4));
            let Some(root) = cfg.sqrt(&disc) else { continue };
            squares += 1;
            for delta in [root.clone(), cfg.neg(&root)] {
                let z = cfg.mul(&cfg.sub(&delta, &a), &cfg.half());
                if !quadratic_at(&cfg, &y, &z).is_zero() {
                    return Outcome::fail(format!("z = (−(y^p−y)+Δ)/2 is not a root at y = {y:?}"));
                }
            }
        }
        Outcome::pass(format!("{squares} of {trials} random y gave a square discriminant; both roots check"))
    }));
    Report::new(&suite, seed, checks)
}
