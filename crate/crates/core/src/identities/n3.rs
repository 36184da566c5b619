use super::{compare, expr, printed_terms, run, Outcome, Report};
use crate::derivation::{delta_square_numerator, DerivedSystem3};
use crate::exec::Exec;
use crate::mpoly::{coprime_certificate, discriminant, resultant_with, CoprimeCertificate, IntPoly, Monomial, VarSet};

const ALPHA: &str = "4*Y1 + 4*T*Y1*Y2 + 4*Y1^2*Y2 + T^2*Y1*Y2^2 + 2*T*Y1^2*Y2^2 - 4*Y2^3 - 2*T*Y1*Y2^3";
const DISC: &str = "16 + 32*T*Y2 + 24*T^2*Y2^2 - 16*T*Y2^3 + 8*T^3*Y2^3 + 64*Y2^4 - 16*T^2*Y2^4 \
                    + T^4*Y2^4 + 32*T*Y2^5 - 4*T^3*Y2^5 + 4*T^2*Y2^6";

/// The identity suite for the n = 3 system.
pub fn verify_n3(sys: &DerivedSystem3, seed: u64, exec: &Exec) -> Report {
    let vars = sys.vars().clone();
    let g = &sys.g;
    let comps = sys.components();
    let comp = |d: u32| comps.get(&d).cloned().unwrap_or_else(|| IntPoly::int_zero(vars.clone()));
    let e = |s: &str| expr(&vars, s);
    let mut checks = Vec::new();

    checks.push(run("n3.a.structure", || {
        let degrees: Vec<u32> = comps.keys().copied().collect();
        Outcome::all(vec![
            Outcome::from_bool(g.block_degree() == 18, format!("degree in Y {}", g.block_degree())),
            Outcome::from_bool(degrees == [12, 14, 16, 18], format!("components {degrees:?}")),
            Outcome::from_bool(g.is_cyclic(), format!("cyclic: {}", g.is_cyclic())),
        ])
    }));

    checks.push(run("n3.b.g18", || {
        compare("g18", &comp(18), &e("-64*T^2*Y1^4*Y2^4*Y3^4*(Y1-Y2)^2*(Y2-Y3)^2*(Y3-Y1)^2"))
    }));

    checks.push(run("n3.c.P_terms", || {
        printed_terms("P", &sys.p, &["16*Y1^4*Y2^2", "32*Y1^3*Y2^2*Y3", "-16*Y1*Y2^3*Y3^4"])
    }));
    checks.push(run("n3.c.Q_terms", || {
        printed_terms("Q", &sys.q, &["-4*Y1^2*Y2", "4*Y1*Y2*Y3", "-2*Y1*Y2*Y3^3"])
    }));
    checks.push(run("n3.c.g16", || {
        cofactor_terms("g16", &comp(16), &e("16*Y1^2*Y2^2*Y3^2"), &["16*Y1^6*Y2^4", "-32*Y1^5*Y2^5", "16*Y2^4*Y3^6"])
    }));
    checks.push(run("n3.c.g14", || {
        cofactor_terms(
            "g14",
            &comp(14),
            &e("8*Y1*Y2*Y3"),
            &["64*Y1^7*Y2^4", "-64*Y1^6*Y2^5", "-64*Y1^2*Y2^2*Y3^7"],
        )
    }));
    checks.push(run("n3.c.g12", || {
        printed_terms("g12", &comp(12), &["256*Y1^8*Y2^4", "1024*Y1^7*Y2^4*Y3", "256*Y1^4*Y3^8"])
    }));
    checks.push(run("n3.c.relations", || relations(sys)));

    checks.push(run("n3.d.resultant", || {
        let r = resultant_with(g, &sys.q, 3, exec);
        if r.is_zero() {
            return Outcome::fail("Res(G, Q; Y3) = 0");
        }
        let low = r.terms().iter().fold(r.terms()[0].0, |acc, (m, _)| acc.gcd(m));
        let need = Monomial::new(&[0, 14, 8, 0]);
        Outcome::from_bool(
            need.divides(&low),
            format!(
                "Res(G, Q; Y3) nonzero, {} terms, degree {}; content {}; monomial factor {:?}; Y1^14*Y2^8 divides: {}",
                r.len(),
                r.degree(),
                r.content(),
                low.exps(4),
                need.divides(&low)
            ),
        )
    }));
    checks.push(run("n3.d.gcd", || {
        let cert = coprime_certificate(g, &sys.q, seed);
        Outcome::from_bool(cert == CoprimeCertificate::Coprime, format!("gcd(G, Q) = 1: {cert:?}"))
    }));

    checks.push(run("n3.e.a8", || {
        let a8 = g.coefficients_in(3).get(8).cloned().unwrap_or_else(|| IntPoly::int_zero(vars.clone()));
        let alpha_plus = e(ALPHA);
        let alpha_minus = e(&ALPHA.replace('T', "(-T)"));
        let expected = alpha_plus.mul(&alpha_minus).mul(&e("16*Y1^2"));
        Outcome::all(vec![
            Outcome::from_bool(g.degree_in(3) == 8, format!("deg_Y3 G = {}", g.degree_in(3))),
            compare("a8 = 16*Y1^2*α(Y1,Y2,T)*α(Y1,Y2,-T)", &a8, &expected),
        ])
    }));

    checks.push(run("n3.f.discriminant", || {
        let d = discriminant(&e(ALPHA), 1);
        let printed = e(DISC);
        if d == printed {
            Outcome::pass("disc_Y1 α = D exactly, with disc = (-1)^(d(d-1)/2) Res(f, f')/lc; unit 1")
        } else {
            compare("disc_Y1 α", &d, &printed)
        }
    }));
    checks.push(run("n3.f.remainders", remainder_identities));

    Report::new("n3", seed, checks)
}

/// Divisibility by the printed cofactor, then the printed terms of the
/// quotient (those free of T).
fn cofactor_terms(label: &str, comp: &IntPoly, cofactor: &IntPoly, terms: &[&str]) -> Outcome {
    match comp.exact_div(cofactor) {
        Ok(q) => printed_terms(&format!("{label} / ({cofactor})"), &q, terms),
        Err(e) => Outcome::fail(format!("{label} not divisible by {cofactor}: {e}")),
    }
}

/// G against the cached P and Q: the numerator of Δ1² − D1 over
/// 16T²(Y1Y2Y3)²Q², and of Δ1 + Δ2 + Δ3 − T over 4T·Y1Y2Y3·QQ^ρQ^ρ².
fn relations(sys: &DerivedSystem3) -> Outcome {
    let vars = sys.vars();
    let e = |s: &str| expr(vars, s);
    let (p, q, g) = (&sys.p, &sys.q, &sys.g);
    let n1 = delta_square_numerator(vars, 0);
    let square = p.pow(2).sub(&e("16*T^2*Y1*Y2^2*Y3^2").mul(&q.pow(2)).mul(&n1));
    let qs: Vec<IntPoly> = (0..3).map(|k| q.block_rotate(k)).collect();
    let mut sum = e("-4*T^2*Y1*Y2*Y3").mul(&qs[0]).mul(&qs[1]).mul(&qs[2]);
    for i in 0..3 {
        sum = sum.add(&p.block_rotate(i).mul(&qs[(i + 1) % 3]).mul(&qs[(i + 2) % 3]));
    }
    Outcome::all(vec![
        compare("numerator of Δ1² − D1", &square, g),
        Outcome::from_bool(
            sum == g.neg(),
            format!("numerator of Δ1+Δ2+Δ3−T equals −G: {}", sum == g.neg()),
        ),
    ])
}

/// D − (2TY2³ + aY2² + bY2 ± 4)² for indeterminate a, b.
fn remainder_identities() -> Outcome {
    let vars = VarSet::new(&["T", "A", "B", "Y2"]);
    let e = |s: &str| expr(&vars, s);
    let d = e(DISC);
    let mut parts = Vec::new();
    let cases = [
        (
            "4",
            "-8*(B-4*T)*Y2",
            "4*T",
            "-8*(A-T^2)*Y2^2 + 8*T*(-4-A+T^2)*Y2^3 + (64-A^2-32*T^2+T^4)*Y2^4 - 4*T*(-8+A+T^2)*Y2^5",
        ),
        (
            "-4",
            "8*(B+4*T)*Y2",
            "-4*T",
            "8*(A+T^2)*Y2^2 + 8*T*(A+T^2)*Y2^3 + (64-A^2+T^4)*Y2^4 - 4*T*(-8+A+T^2)*Y2^5",
        ),
    ];
    for (c, low, b_value, full) in cases {
        let rem = d.sub(&e(&format!("(2*T*Y2^3 + A*Y2^2 + B*Y2 + ({c}))^2")));
        let mod_y2sq = IntPoly::from_terms(
            crate::mpoly::IntegerRing,
            vars.clone(),
            rem.terms().iter().filter(|(m, _)| m.get(3) < 2).cloned(),
        );
        parts.push(compare(&format!("c = {c}, mod Y2^2"), &mod_y2sq, &e(low)));
        let images = [e("T"), e("A"), e(b_value), e("Y2")];
        parts.push(compare(&format!("c = {c}, b = {b_value}"), &rem.compose(&images), &e(full)));
    }
    Outcome::all(parts)
}
