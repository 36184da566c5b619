//! The `.poly` text format for integer polynomials.
//!
//! ```text
//! vars: T Y1 Y2 Y3
//! -64 2 8 6 4
//! 16 0 4 2 0
//! ```
//!
//! The header lists the variables in order. Each following line is one term:
//! a signed decimal coefficient and one exponent per variable. Terms are
//! written in descending graded-lex order, so the text of a polynomial is
//! unique. Leading variables whose names carry no numeric index (like `T`)
//! are parameters of the variable set; the indexed ones form the block.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::{IntPoly, IntegerRing, Monomial, MpolyError, VarSet, MAX_VARS};

pub fn to_text(f: &IntPoly) -> String {
    let mut out = String::with_capacity(32 * (f.len() + 1));
    out.push_str("vars:");
    for name in f.vars().names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (m, c) in f.terms() {
        write!(out, "{c}").unwrap();
        for e in m.exps(f.nvars()) {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn is_indexed(name: &str) -> bool {
    name.chars().last().is_some_and(|c| c.is_ascii_digit())
}

pub fn parse(text: &str) -> Result<IntPoly, MpolyError> {
    let err = |line: usize, reason: String| MpolyError::Parse { line, reason };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let names: Vec<&str> = header
        .strip_prefix("vars:")
        .ok_or_else(|| err(1, "expected `vars:` header".into()))?
        .split_whitespace()
        .collect();
    if names.len() > MAX_VARS {
        return Err(err(1, format!("at most {MAX_VARS} variables supported")));
    }
    let mut seen_names = HashSet::new();
    if let Some(d) = names.iter().find(|n| !seen_names.insert(**n)) {
        return Err(err(1, format!("duplicate variable {d}")));
    }
    let params = names.iter().take_while(|n| !is_indexed(n)).count();
    let params = if params == names.len() { 0 } else { params };
    let vars = VarSet::with_params(&names, params);
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let coeff: BigInt = fields
            .next()
            .unwrap()
            .parse()
            .map_err(|e| err(lineno, format!("bad coefficient: {e}")))?;
        if coeff == BigInt::from(0) {
            return Err(err(lineno, "zero coefficient".into()));
        }
        let exps = fields
            .map(|t| t.parse::<u16>().map_err(|e| err(lineno, format!("bad exponent {t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != names.len() {
            return Err(err(
                lineno,
                format!("expected {} exponents, got {}", names.len(), exps.len()),
            ));
        }
        let m = Monomial::new(&exps);
        if !seen.insert(m) {
            return Err(err(lineno, "duplicate exponent vector".into()));
        }
        terms.push((m, coeff));
    }
    Ok(IntPoly::from_terms(IntegerRing, vars, terms))
}

/// Parses an expression such as `-64*T^2*(Y1-Y2)^2 + 3` over `vars`.
/// Products need an explicit `*`; exponents are nonnegative integers.
pub fn parse_expr(vars: &VarSet, input: &str) -> Result<IntPoly, MpolyError> {
    let mut p = ExprParser {
        vars,
        src: input.as_bytes(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct ExprParser<'a> {
    vars: &'a VarSet,
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn error(&self, reason: &str) -> MpolyError {
        MpolyError::Parse {
            line: 1,
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly, MpolyError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly, MpolyError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPoly, MpolyError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.digits()?;
            let e: u32 = e.parse().map_err(|_| self.error("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<&str, MpolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn atom(&mut self) -> Result<IntPoly, MpolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let c: BigInt = self.digits()?.parse().unwrap();
                Ok(IntPoly::constant(IntegerRing, self.vars.clone(), c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v = self.vars.index_of(name)?;
                Ok(IntPoly::var(IntegerRing, self.vars.clone(), v))
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let vs = VarSet::param_and_indexed("T", "Y", 2);
        let t = IntPoly::int_var(&vs, "T");
        let y1 = IntPoly::int_var(&vs, "Y1");
        let y2 = IntPoly::int_var(&vs, "Y2");
        let f = t.mul(&y1).sub(&y2.pow(3).scale(&BigInt::from(-12345678901234567890i128)));
        let s = to_text(&f);
        let g = parse(&s).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.vars().params(), 1);
        assert_eq!(to_text(&g), s);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse("").is_err());
        assert!(parse("variables: Y1\n").is_err());
        assert!(matches!(parse("vars: Y1 Y2\n3 1 0\n4 1 0\n"), Err(MpolyError::Parse { line: 3, .. })));
        assert!(parse("vars: Y1 Y2\n0 1 0\n").is_err());
        assert!(parse("vars: Y1 Y2\n3 1\n").is_err());
        assert!(parse("vars: Y1 Y2\n3x 1 0\n").is_err());
        assert!(parse("vars: Y1 Y1\n").is_err());
    }

    #[test]
    fn expressions() {
        let vs = VarSet::param_and_indexed("T", "Y", 2);
        let f = parse_expr(&vs, "-2*T^2*(Y1 - Y2)^2 + 3").unwrap();
        let t = IntPoly::int_var(&vs, "T");
        let d = IntPoly::int_var(&vs, "Y1").sub(&IntPoly::int_var(&vs, "Y2"));
        assert_eq!(f, t.pow(2).mul(&d.pow(2)).scale(&BigInt::from(-2)).add(&IntPoly::int_const(&vs, 3)));
        assert_eq!(parse_expr(&vs, "-(-Y1)").unwrap(), IntPoly::int_var(&vs, "Y1"));
        assert!(parse_expr(&vs, "Y3").is_err());
        assert!(parse_expr(&vs, "Y1 Y2").is_err());
        assert!(parse_expr(&vs, "(Y1").is_err());
    }

    #[test]
    fn reduce_mod_p_drops_multiples() {
        let f = parse("vars: Y1\n5 1\n").unwrap();
        assert!(f.reduce_mod_p(5).is_zero());
    }
}
