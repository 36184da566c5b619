use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compare, expr, multiplicity, printed_terms, run, Outcome, Report};
use crate::derivation::{clear_denominators, trace_numerator, DerivedSystem4};
use crate::exec::Exec;
use crate::mpoly::{discriminant, resultant_with, IntPoly, VarSet};

const ALPHA: &str = "Y1^2 - Y1*Y2 + Y1^2*Y2 + Y2^2 - Y1*Y2^2";
const BETA: &str = "4*Y1 - 8*Y2 + Y1^2*Y2 - 2*Y1*Y2^2 + Y2^3";

const RES_GL: &str = "2^112 * (-1+Y3)^8 * Y3^56 * (3+Y3)^8 * (-19+2*Y3+Y3^2)^8 \
    * (-1+8*Y3-26*Y3^2+3*Y3^4)^4 \
    * (-16+11*Y3+88*Y3^2-16*Y3^3-98*Y3^4+5*Y3^5+10*Y3^6)^4 \
    * (16+8*Y3-204*Y3^2+369*Y3^3+30*Y3^4-76*Y3^5-2*Y3^6+3*Y3^7)^4 \
    * (256+672*Y3+505*Y3^2-4456*Y3^3+5718*Y3^4-364*Y3^5-1139*Y3^6+52*Y3^7+52*Y3^8)^2 \
    * (-256-256*Y3+832*Y3^2+672*Y3^3-1056*Y3^4-392*Y3^5+431*Y3^6+76*Y3^7-66*Y3^8-4*Y3^9+3*Y3^10)^2";

/// Printed cofactor and terms of each middle component.
const COMPONENTS: [(u32, &str, &[&str]); 7] = [
    (44, "(Y1*Y2*Y3*Y4)^6", &["Y1^10*Y2^6*Y3^4", "-4*Y1^9*Y2^7*Y3^4", "Y2^4*Y3^6*Y4^10"]),
    (42, "2*(Y1*Y2*Y3*Y4)^5", &["Y1^11*Y2^7*Y3^4", "-4*Y1^10*Y2^8*Y3^4", "-Y1^2*Y2^2*Y3^7*Y4^11"]),
    (40, "(Y1*Y2*Y3*Y4)^4", &["Y1^12*Y2^8*Y3^4", "-4*Y1^11*Y2^9*Y3^4", "Y1^4*Y3^8*Y4^12"]),
    (38, "2*(Y1*Y2*Y3*Y4)^3", &["2*Y1^13*Y2^8*Y3^5", "-6*Y1^12*Y2^9*Y3^5", "-2*Y1^5*Y2^2*Y3^6*Y4^13"]),
    (36, "2*(Y1*Y2*Y3*Y4)^2", &["3*Y1^14*Y2^8*Y3^6", "-6*Y1^13*Y2^9*Y3^6", "3*Y1^6*Y2^4*Y3^4*Y4^14"]),
    (34, "4*Y1*Y2*Y3*Y4", &["Y1^15*Y2^8*Y3^7", "-Y1^14*Y2^9*Y3^7", "-Y1^7*Y2^6*Y3^2*Y4^15"]),
    (32, "1", &["Y1^16*Y2^8*Y3^8", "-16*Y1^15*Y2^8*Y3^8*Y4", "Y1^8*Y2^8*Y4^16"]),
];

/// The identity suite for the n = 4 system.
pub fn verify_n4(sys: &DerivedSystem4, seed: u64, exec: &Exec) -> Report {
    let yv = sys.g.vars().clone();
    let g = &sys.g;
    let comps = sys.components();
    let comp = |d: u32| comps.get(&d).cloned().unwrap_or_else(|| IntPoly::int_zero(yv.clone()));
    let e = |s: &str| expr(&yv, s);
    let mut checks = Vec::new();

    checks.push(run("n4.a.structure", || {
        let degrees: Vec<u32> = comps.keys().copied().collect();
        let per_var: Vec<u32> = (0..4).map(|i| g.degree_in(i)).collect();
        Outcome::all(vec![
            Outcome::from_bool(g.degree() == 46, format!("degree {}", g.degree())),
            Outcome::from_bool(per_var == [16; 4], format!("degree in each Y_i {per_var:?}")),
            Outcome::from_bool(
                degrees == [32, 34, 36, 38, 40, 42, 44, 46],
                format!("components {degrees:?}"),
            ),
            Outcome::from_bool(g.is_cyclic(), format!("cyclic: {}", g.is_cyclic())),
        ])
    }));
    checks.push(run("n4.a.tilde", || compare("tilde(G) vs G", &g.tilde(), g)));

    checks.push(run("n4.b.g46", || {
        compare(
            "g46",
            &comp(46),
            &e("-4*(Y1*Y2*Y3*Y4)^8*((Y1-Y2)*(Y2-Y3)*(Y3-Y4)*(Y4-Y1))^2*((Y1-Y3)*(Y2-Y4))^2*(Y1-Y2+Y3-Y4)^2"),
        )
    }));

    checks.push(run("n4.c.A", || constant_and_terms("A", &sys.a, &[("65536", "1"), ("114688", "X1")])));
    checks.push(run("n4.c.B", || {
        constant_and_terms("B", &sys.b, &[("4096", "1"), ("1792", "X1"), ("-1", "X4^3")])
    }));
    checks.push(run("n4.c.P", || {
        let consistency = BigInt::from(2 * 65536i64 * 114688) - BigInt::from(1024i64 * 4096 * 4096);
        Outcome::all(vec![
            constant_and_terms("P", &sys.p, &[("4294967296", "1"), ("-2147483648", "X1"), ("1", "X4^8")]),
            Outcome::from_bool(
                consistency == BigInt::from(-2147483648i64),
                format!("2*65536*114688 - 1024*4096^2 = {consistency}"),
            ),
        ])
    }));
    checks.push(run("n4.c.Q", || {
        let c0 = sys.q.coeff_of(&[0, 0, 0, 0]);
        let top = Outcome::all(vec![
            printed_terms("Q", &sys.q, &["-196608*X1", "X4^5"]),
            Outcome::from_bool(sys.q.degree() == 5, format!("degree {}", sys.q.degree())),
        ]);
        let constant = if c0 == BigInt::from(-209715) {
            Outcome::pass("constant term -209715")
        } else {
            Outcome::warn(format!("constant term {c0}; the printed -209715 is a truncation of it"))
        };
        Outcome::all(vec![top, constant])
    }));
    checks.push(run("n4.c.G_terms", || {
        printed_terms(
            "G",
            g,
            &["-Y1^16*Y2^8*Y3^8", "16*Y1^15*Y2^8*Y3^8*Y4", "4*Y1^8*Y2^10*Y3^12*Y4^16"],
        )
    }));
    checks.push(run("n4.c.L", || {
        Outcome::all(vec![
            Outcome::from_bool(sys.l.degree() == 18, format!("degree {}", sys.l.degree())),
            printed_terms("L", &sys.l, &["4*Y1^6*Y2^3*Y3^3", "-10*Y1^4*Y2^3*Y3^3*Y4", "Y1^3*Y2^3*Y3^5*Y4^7"]),
        ])
    }));
    checks.push(run("n4.c.L_cyclic", || {
        if sys.l.is_cyclic() {
            Outcome::pass("L is cyclic")
        } else {
            Outcome::warn("L is not cyclic: its rotations are the cleared B(D_i, D_{i+1}, D_{i+2}, D_{i+3})")
        }
    }));
    for (d, cofactor, terms) in COMPONENTS {
        let id = format!("n4.c.g{d}");
        checks.push(run(&id, || {
            let c = comp(d);
            let cof = e(cofactor);
            match c.exact_div(&cof) {
                Ok(q) if d == 32 => printed_terms("g32", &q, terms),
                Ok(q) => Outcome::all(vec![
                    Outcome::pass(format!("g{d} divisible by {cofactor}")),
                    printed_terms(&format!("g{d} / ({cofactor})"), &q, terms),
                ]),
                Err(err) => Outcome::fail(format!("g{d} not divisible by {cofactor}: {err}")),
            }
        }));
    }
    checks.push(run("n4.c.relations", || relations(sys)));

    checks.push(run("n4.d.res_GL", || {
        let one = BigInt::from(1);
        let g11 = g.eval_var(0, &one).eval_var(1, &one);
        let l11 = sys.l.eval_var(0, &one).eval_var(1, &one);
        let r = resultant_with(&g11, &l11, 3, exec);
        if r.is_zero() {
            return Outcome::fail("Res(G(1,1,Y3,Y4), L(1,1,Y3,Y4); Y4) = 0");
        }
        let mut parts = vec![divisibility(
            &r,
            &[("Y3-1", 8), ("Y3", 56), ("Y3+3", 8), ("Y3^2+2*Y3-19", 8)],
            &yv,
        )];
        let printed = e(RES_GL);
        parts.push(if r == printed {
            Outcome::pass("equals the printed factorization")
        } else if proportional(&r, &printed) {
            Outcome::warn(format!(
                "equals the printed factorization up to the constant: computed content {}, printed 2^112",
                r.signed_content()
            ))
        } else {
            compare("Res vs printed factorization", &r, &printed)
        });
        parts.push(Outcome::pass(format!("degree {}", r.degree())));
        Outcome::all(parts)
    }));

    checks.push(run("n4.e.g32_squarefree", || {
        let h = comp(32).eval_var(0, &BigInt::from(1)).eval_var(1, &BigInt::from(-1));
        let r = resultant_with(&h, &h.derivative(3), 3, exec);
        if r.is_zero() {
            return Outcome::fail("Res(g32, dg32/dY4; Y4) = 0 at Y1 = 1, Y2 = -1");
        }
        let content = r.content();
        let printed_content = BigInt::from(2).pow(256) * BigInt::from(3).pow(8);
        Outcome::all(vec![
            divisibility(&r, &[("Y3", 148), ("1-Y3", 8), ("1+Y3", 8)], &yv),
            if content == printed_content {
                Outcome::pass(format!("content 2^256*3^8, degree {}", r.degree()))
            } else {
                Outcome::warn(format!("content {content}, printed 2^256*3^8"))
            },
        ])
    }));

    checks.push(run("n4.f.specialization", || {
        let images = [e("Y1"), e("Y2"), e("Y1"), e("Y2")];
        let lhs = g.compose(&images);
        let swap = |s: &str| s.replace("Y1", "Z").replace("Y2", "Y1").replace('Z', "Y2");
        let rhs = e(&format!(
            "-2^8*(Y1*Y2)^12*({ALPHA})*({})*({BETA})^2*({})^2",
            swap(ALPHA),
            swap(BETA)
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bad = None;
        for _ in 0..200 {
            let pt: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
            if lhs.evaluate(&pt) != rhs.evaluate(&pt) {
                bad = Some(pt);
                break;
            }
        }
        let pre = match bad {
            None => Outcome::pass("agrees at 200 random integer points"),
            Some(pt) => Outcome::fail(format!("disagrees at {pt:?}")),
        };
        Outcome::all(vec![pre, compare("G(Y1,Y2,Y1,Y2)", &lhs, &rhs)])
    }));

    checks.push(run("n4.g.disc_alpha", || {
        compare("disc_Y1 α", &discriminant(&e(ALPHA), 0), &e("Y2^2*(-3+Y2)*(1+Y2)"))
    }));
    checks.push(run("n4.g.disc_beta", || {
        compare("disc_Y1 β", &discriminant(&e(BETA), 0), &e("16*(1+Y2^2)"))
    }));

    Report::new("n4", seed, checks)
}

fn constant_and_terms(label: &str, f: &IntPoly, terms: &[(&str, &str)]) -> Outcome {
    let owned: Vec<String> = terms.iter().map(|(c, m)| format!("{c}*{m}")).collect();
    let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
    printed_terms(label, f, &refs)
}

/// Each factor's multiplicity in r reaches the printed exponent.
fn divisibility(r: &IntPoly, factors: &[(&str, u32)], vars: &VarSet) -> Outcome {
    let parts = factors
        .iter()
        .map(|&(f, k)| {
            let m = multiplicity(r, &expr(vars, f), k);
            Outcome::from_bool(m >= k, format!("({f})^{k} divides: {}", m >= k))
        })
        .collect();
    Outcome::all(parts)
}

fn proportional(a: &IntPoly, b: &IntPoly) -> bool {
    let (Some((_, ca)), Some((_, cb))) = (a.leading_term(), b.leading_term()) else {
        return false;
    };
    a.scale(cb) == b.scale(ca)
}

/// The stored polynomials against each other: P from A and B, Q from the
/// trace condition, G and L from P and B.
fn relations(sys: &DerivedSystem4) -> Outcome {
    let xv = sys.a.vars();
    let x1 = IntPoly::var(crate::mpoly::IntegerRing, xv.clone(), 0);
    let p = sys.a.pow(2).sub(&x1.mul(&sys.b.pow(2)).scale(&BigInt::from(1024)));
    let (num, den) = trace_numerator(&sys.a, &sys.b);
    let mut parts = vec![
        compare("A² − 1024*X1*B² vs P", &p, &sys.p),
        compare("numerator of ΣΔ_i − 4 vs P*Q", &num, &sys.p.mul(&sys.q)),
        Outcome::from_bool(den == BigInt::from(16), format!("denominator {den}*ΠB_i")),
    ];
    match (clear_denominators(&sys.p, 8), clear_denominators(&sys.b, 3)) {
        (Ok(pd), Ok(bd)) => {
            parts.push(compare("(ΠY)^8 P(D) vs −2^16*G", &pd, &sys.g.scale(&BigInt::from(-65536))));
            parts.push(compare("(ΠY)^3 B(D) vs −2^4*L", &bd, &sys.l.scale(&BigInt::from(-16))));
        }
        (Err(e), _) | (_, Err(e)) => parts.push(Outcome::fail(e.to_string())),
    }
    Outcome::all(parts)
}
