//! Arithmetic expressions over `x1 .. xd` evaluated exactly as truncated
//! series.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" uint)?
//! atom   := uint | "x" uint | "(" expr ")" | "-" factor
//! ```
//!
//! Whitespace is ignored and juxtaposition is not multiplication. Integer
//! literals only; fractions and residues come from division.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formal_map::FormalMap;
use crate::ring::Ring;
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// Zero-based variable index (`x1` is `Var(0)`).
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl fmt::Display for Expr {
    /// Fully parenthesised; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(j) => write!(f, "x{}", j + 1),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, e) => write!(f, "({a}^{e})"),
        }
    }
}

/// Parses one expression in `dim` variables.
pub fn parse(text: &str, dim: usize) -> Result<Expr> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, dim };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a comma-separated list of expressions.
pub fn parse_list(text: &str, dim: usize) -> Result<Vec<Expr>> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, dim };
    let mut out = vec![p.expr()?];
    while p.eat(b',') {
        out.push(p.expr()?);
    }
    p.finish()?;
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn unexpected<T>(&mut self, wanted: &str) -> Result<T> {
        match self.peek() {
            None => self.err(self.s.len(), format!("expected {wanted}, found end of input")),
            Some(_) => {
                let rest = std::str::from_utf8(&self.s[self.pos..]).unwrap_or("?");
                let c = rest.chars().next().unwrap_or('?');
                self.err(self.pos, format!("expected {wanted}, found {c:?}"))
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.unexpected("an operator or end of input");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        match self.peek() {
            Some(b'-') => return self.err(self.pos, "negative exponents are not allowed"),
            Some(c) if c.is_ascii_digit() => {}
            _ => return self.unexpected("a nonnegative integer exponent"),
        }
        let start = self.pos;
        let digits = self.digits();
        if self.s.get(self.pos) == Some(&b'.') {
            return self.err(self.pos, "exponent must be an integer");
        }
        match digits.parse::<u32>() {
            Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
            Err(_) => self.err(start, "exponent too large"),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                if self.s.get(self.pos) == Some(&b'.') {
                    return self.err(self.pos, "only integer literals are allowed");
                }
                Ok(Expr::Int(n))
            }
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                if !self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err(self.pos, "expected a variable index after x");
                }
                let idx = self.digits().parse::<usize>().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.dim {
                    return Err(Error::VariableOutOfRange {
                        index: idx,
                        offset: start,
                        dim: self.dim,
                    });
                }
                Ok(Expr::Var(idx - 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.unexpected("\")\"");
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => self.unexpected("a number, variable, \"(\" or \"-\""),
        }
    }
}

/// Evaluates in `K[[x1..xd]] / M^(k+1)`. Division needs a unit
/// denominator; the error names the offending subexpression.
pub fn eval_series(e: &Expr, dim: usize, trunc: u32, ring: Ring) -> Result<Series> {
    let ev = |x: &Expr| eval_series(x, dim, trunc, ring);
    Ok(match e {
        Expr::Int(n) => Series::constant(dim, trunc, ring.from_bigint(n)),
        Expr::Var(j) => {
            if *j >= dim {
                return Err(Error::VariableOutOfRange {
                    index: j + 1,
                    offset: 0,
                    dim,
                });
            }
            Series::variable(dim, *j, trunc, ring)
        }
        Expr::Neg(a) => ev(a)?.neg(),
        Expr::Add(a, b) => ev(a)?.add(&ev(b)?)?,
        Expr::Sub(a, b) => ev(a)?.sub(&ev(b)?)?,
        Expr::Mul(a, b) => ev(a)?.mul(&ev(b)?)?,
        Expr::Div(a, b) => {
            let den = ev(b)?.inverse().map_err(|_| Error::NotAUnit(b.to_string()))?;
            ev(a)?.mul(&den)?
        }
        Expr::Pow(a, n) => ev(a)?.pow(*n),
    })
}

/// Parses and evaluates one series.
pub fn series(text: &str, dim: usize, trunc: u32, ring: Ring) -> Result<Series> {
    eval_series(&parse(text, dim)?, dim, trunc, ring)
}

/// Parses and evaluates a formal map given as `d` comma-separated
/// components.
pub fn formal_map(text: &str, dim: usize, trunc: u32, ring: Ring) -> Result<FormalMap> {
    let comps = parse_list(text, dim)?
        .iter()
        .map(|e| eval_series(e, dim, trunc, ring))
        .collect::<Result<Vec<_>>>()?;
    if comps.len() != dim {
        return Err(Error::Format(format!(
            "expected {dim} map components, found {}",
            comps.len()
        )));
    }
    FormalMap::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    const Z: Ring = Ring::Integer;

    #[test]
    fn precedence_and_rendering() {
        let cases = [
            ("1+2*x1^2", "(1 + (2 * (x1^2)))"),
            ("1/(1-x1)", "(1 / (1 - x1))"),
            ("1 - x1 - x2", "((1 - x1) - x2)"),
            ("-x1^2", "(-(x1^2))"),
            ("(-x1)^2", "((-x1)^2)"),
            ("2*-x1", "(2 * (-x1))"),
            ("x1^2*x2 + 3", "(((x1^2) * x2) + 3)"),
        ];
        for (src, want) in cases {
            let e = parse(src, 2).unwrap();
            assert_eq!(&e.to_string(), want, "{src}");
            assert_eq!(parse(&e.to_string(), 2).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("x3", 2),
            Err(Error::VariableOutOfRange { index: 3, offset: 0, dim: 2 })
        );
        assert!(matches!(parse("1 + ", 1), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse("x1 x1", 1), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse("x1^-1", 1), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse("x1^1.5", 1), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse("(1", 1), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse("2^3^4", 1), Err(Error::Parse { offset: 3, .. })));
    }

    #[test]
    fn evaluation() {
        let g = series("1/(1-x1)", 1, 3, Z).unwrap();
        let want = Series::from_terms(1, 3, Z, (0..4).map(|i| (Monomial::new(vec![i]), Z.one()))).unwrap();
        assert_eq!(g, want);
        assert_eq!(
            series("(1+x1)^2 - 1 - 2*x1", 1, 4, Z).unwrap(),
            Series::from_terms(1, 4, Z, [(Monomial::new(vec![2]), Z.one())]).unwrap()
        );
        assert_eq!(
            series("1/(x1+x2)", 2, 3, Z),
            Err(Error::NotAUnit("(x1 + x2)".into()))
        );
        assert!(series("1/2", 1, 2, Z).is_err());
        assert_eq!(series("1/2", 1, 2, Ring::Rational).unwrap().to_string(), "1/2");
        assert_eq!(series("1/2", 1, 2, Ring::mod_prime(7).unwrap()).unwrap().to_string(), "4");
    }

    #[test]
    fn maps() {
        let g = formal_map("x1 + x2^2, x2", 2, 3, Z).unwrap();
        assert_eq!(g.components()[1], Series::variable(2, 1, 3, Z));
        assert!(matches!(formal_map("x1", 2, 3, Z), Err(Error::Format(_))));
        assert_eq!(formal_map("1+x1", 1, 3, Z), Err(Error::ConstantTerm(0)));
    }
}
