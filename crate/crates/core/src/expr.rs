//! Element expressions such as `e1 + e2 + e6`, `2*h3` or `[e8, [e6, e7]]`.
//!
//! ```text
//! expr := ['+'|'-'] term (('+' | '-') term)*
//! term := [int '*'] atom
//! atom := gen | '[' expr ',' expr ']' | '(' expr ')'
//! gen  := ('e'|'f'|'h') ['_'] int
//! ```

use crate::algebra::ModularSuperAlgebra;
use crate::error::{Error, Result};
use crate::field::FpVector;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementExpr {
    Gen { kind: char, index: u64 },
    Scaled(i64, Box<ElementExpr>),
    Sum(Vec<ElementExpr>),
    Bracket(Box<ElementExpr>, Box<ElementExpr>),
}

impl ElementExpr {
    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementExpr::Gen { .. } | ElementExpr::Bracket(..) => write!(f, "{self}"),
            _ => write!(f, "({self})"),
        }
    }

    fn fmt_scaled(c: i64, e: &ElementExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match c {
            1 => e.fmt_atom(f),
            -1 => {
                write!(f, "-")?;
                e.fmt_atom(f)
            }
            _ if c < 0 => {
                write!(f, "-{}*", -c)?;
                e.fmt_atom(f)
            }
            _ => {
                write!(f, "{c}*")?;
                e.fmt_atom(f)
            }
        }
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementExpr::Gen { kind, index } => write!(f, "{kind}{index}"),
            ElementExpr::Scaled(c, e) => Self::fmt_scaled(*c, e, f),
            ElementExpr::Sum(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    match t {
                        ElementExpr::Scaled(c, e) if *c < 0 && i > 0 => {
                            write!(f, " - ")?;
                            Self::fmt_scaled(-c, e, f)?;
                        }
                        ElementExpr::Sum(_) => {
                            if i > 0 {
                                write!(f, " + ")?;
                            }
                            t.fmt_atom(f)?;
                        }
                        _ => {
                            if i > 0 {
                                write!(f, " + ")?;
                            }
                            write!(f, "{t}")?;
                        }
                    }
                }
                Ok(())
            }
            ElementExpr::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer too large".into(),
        })
    }

    fn expr(&mut self) -> Result<ElementExpr> {
        let mut terms = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            terms.push(match (sign, t) {
                (1, t) => t,
                (_, ElementExpr::Scaled(c, a)) => ElementExpr::Scaled(-c, a),
                (_, t) => ElementExpr::Scaled(-1, Box::new(t)),
            });
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { ElementExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<ElementExpr> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.int()?;
            self.expect(b'*')?;
            let a = self.atom()?;
            return Ok(ElementExpr::Scaled(c as i64, Box::new(a)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ElementExpr> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(ElementExpr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(a)
            }
            Some(c @ (b'e' | b'f' | b'h')) => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                }
                if !self.src.get(self.pos).is_some_and(|d| d.is_ascii_digit()) {
                    return self.err("expected a generator index");
                }
                let index = self.int()?;
                Ok(ElementExpr::Gen { kind: c as char, index })
            }
            Some(_) => self.err("expected a generator, `[` or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<ElementExpr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl ElementExpr {
    pub fn eval(&self, g: &ModularSuperAlgebra) -> Result<FpVector> {
        match self {
            ElementExpr::Gen { kind, index } => {
                let name = format!("{kind}{index}");
                g.named(&name).map(|i| g.basis_vector(i)).ok_or(Error::UnknownGenerator(name))
            }
            ElementExpr::Scaled(c, e) => Ok(e.eval(g)?.scale(crate::field::reduce(*c, g.modulus()))),
            ElementExpr::Sum(ts) => {
                let mut acc = FpVector::zeros(g.dim(), g.modulus());
                for t in ts {
                    acc.axpy(1, &t.eval(g)?);
                }
                Ok(acc)
            }
            ElementExpr::Bracket(a, b) => Ok(g.bracket(&a.eval(g)?, &b.eval(g)?)),
        }
    }
}

/// Parses and evaluates in one step.
pub fn parse_element(src: &str, g: &ModularSuperAlgebra) -> Result<(ElementExpr, FpVector)> {
    let e = parse(src)?;
    let v = e.eval(g)?;
    Ok((e, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{chevalley_by_name, reduce_mod_p};

    #[test]
    fn sums_and_brackets() {
        let g = reduce_mod_p(&chevalley_by_name("e6").unwrap(), 3).unwrap();
        let (_, v) = parse_element("e1 + e2 + e6", &g).unwrap();
        let mut want = FpVector::zeros(g.dim(), 3);
        for n in ["e1", "e2", "e6"] {
            want.axpy(1, &g.basis_vector(g.named(n).unwrap()));
        }
        assert_eq!(v, want);
        let (_, v) = parse_element("e_1 + e1", &g).unwrap();
        assert_eq!(v, g.basis_vector(g.named("e1").unwrap()).scale(2));
        let (_, v) = parse_element("-[e3, e1] + 2*(h1 - h1)", &g).unwrap();
        let b = g.bracket(&g.basis_vector(g.named("e1").unwrap()), &g.basis_vector(g.named("e3").unwrap()));
        assert_eq!(v, b);
    }

    #[test]
    fn nested_bracket_is_root_vector() {
        let g = reduce_mod_p(&chevalley_by_name("e8").unwrap(), 3).unwrap();
        let (_, v) = parse_element("[e8, [e6, e7]]", &g).unwrap();
        let supp: Vec<_> = v.support().collect();
        assert_eq!(supp.len(), 1);
        assert_eq!(g.label(supp[0].0), "e@[0, 0, 0, 0, 0, 1, 1, 1]");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("e1 +"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("[e1 e2]"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x1"), Err(Error::Parse { pos: 0, .. })));
        let g = reduce_mod_p(&chevalley_by_name("a2").unwrap(), 3).unwrap();
        assert_eq!(parse_element("e3", &g).unwrap_err(), Error::UnknownGenerator("e3".into()));
    }

    #[test]
    fn display_roundtrip() {
        for src in ["[e1, 2*f2] - h3", "-2*e1 + (e2 - f3)", "[-e1, [e2, h1]]", "3*(e1 + e2)"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
